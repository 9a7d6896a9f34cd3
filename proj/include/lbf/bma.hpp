// Copyright 2026 The lbf Authors
// SPDX-License-Identifier: Apache-2.0
//
// Block-matching motion estimation under a mean-absolute-error criterion,
// used as the comparison baseline: exhaustive full search and the
// large/small-diamond fast search, plus motion-compensated reconstruction.

#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <vector>

#include "lbf/error.hpp"
#include "lbf/video.hpp"

namespace lbf {

struct BmaConfig {
  std::uint32_t block_size = 16;
  int search_range = 7;  // +/- pixels, both directions

  void validate() const {
    if (block_size < 1) throw InvalidArgument("bma config: block_size must be >= 1");
    if (search_range < 0) throw InvalidArgument("bma config: search_range must be >= 0");
  }
};

struct MotionVector {
  int dx = 0;
  int dy = 0;

  friend bool operator==(const MotionVector&, const MotionVector&) = default;
};

// One displacement per block, blocks in raster order on a
// ceil(W/bs) x ceil(H/bs) grid. Edge blocks are clipped, not padded.
struct MotionField {
  std::uint32_t blocks_x = 0;
  std::uint32_t blocks_y = 0;
  std::vector<MotionVector> vectors;

  const MotionVector& at(std::uint32_t bx, std::uint32_t by) const {
    return vectors[static_cast<std::size_t>(by) * blocks_x + bx];
  }
};

// Mean absolute sample difference between two equally-shaped blocks.
inline double block_mae(const Frame& cur, const Frame& ref_candidate) {
  if (!cur.same_geometry(ref_candidate))
    throw InvalidArgument("block_mae: block shape mismatch");
  std::uint64_t sad = 0;
  for (std::size_t i = 0; i < cur.samples.size(); ++i) {
    sad += static_cast<std::uint64_t>(
        std::abs(static_cast<int>(cur.samples[i]) - static_cast<int>(ref_candidate.samples[i])));
  }
  return static_cast<double>(sad) / static_cast<double>(cur.samples.size());
}

namespace detail {

inline void check_bma_frames(const Frame& ref, const Frame& cur) {
  if (!ref.same_geometry(cur))
    throw InvalidArgument("bma: frame geometry mismatch");
  if (ref.channels != 1)
    throw InvalidArgument("bma: block matching runs on 1-channel frames");
}

// Sum of absolute differences between the clipped current block at
// (x0, y0, bw, bh) and the reference block displaced by (dx, dy). Integer,
// so candidate comparisons are exact.
inline std::uint64_t block_sad(const Frame& ref, const Frame& cur, std::uint32_t x0,
                               std::uint32_t y0, std::uint32_t bw, std::uint32_t bh,
                               int dx, int dy) {
  std::uint64_t sad = 0;
  for (std::uint32_t y = 0; y < bh; ++y) {
    const Sample* c = cur.samples.data() + static_cast<std::size_t>(y0 + y) * cur.width + x0;
    const Sample* r = ref.samples.data() +
                      static_cast<std::size_t>(static_cast<int>(y0 + y) + dy) * ref.width +
                      (static_cast<int>(x0) + dx);
    for (std::uint32_t x = 0; x < bw; ++x) {
      sad += static_cast<std::uint64_t>(std::abs(static_cast<int>(c[x]) - static_cast<int>(r[x])));
    }
  }
  return sad;
}

inline bool candidate_in_bounds(const Frame& ref, std::uint32_t x0, std::uint32_t y0,
                                std::uint32_t bw, std::uint32_t bh, int dx, int dy) {
  const int x = static_cast<int>(x0) + dx;
  const int y = static_cast<int>(y0) + dy;
  return x >= 0 && y >= 0 && x + static_cast<int>(bw) <= static_cast<int>(ref.width) &&
         y + static_cast<int>(bh) <= static_cast<int>(ref.height);
}

// Candidate ranking: lowest SAD, then smallest |dx|+|dy|, then raster
// order of (dy, dx).
struct Candidate {
  std::uint64_t sad = 0;
  int dx = 0;
  int dy = 0;

  bool better_than(const Candidate& other) const {
    if (sad != other.sad) return sad < other.sad;
    const int cost = std::abs(dx) + std::abs(dy);
    const int other_cost = std::abs(other.dx) + std::abs(other.dy);
    if (cost != other_cost) return cost < other_cost;
    if (dy != other.dy) return dy < other.dy;
    return dx < other.dx;
  }
};

struct BlockGeometry {
  std::uint32_t x0, y0, bw, bh;
};

template <typename PerBlock>
MotionField search_blocks(const Frame& ref, const Frame& cur, const BmaConfig& config,
                          PerBlock&& per_block) {
  check_bma_frames(ref, cur);
  config.validate();
  MotionField field;
  field.blocks_x = (cur.width + config.block_size - 1) / config.block_size;
  field.blocks_y = (cur.height + config.block_size - 1) / config.block_size;
  field.vectors.reserve(static_cast<std::size_t>(field.blocks_x) * field.blocks_y);
  for (std::uint32_t by = 0; by < field.blocks_y; ++by) {
    for (std::uint32_t bx = 0; bx < field.blocks_x; ++bx) {
      BlockGeometry block;
      block.x0 = bx * config.block_size;
      block.y0 = by * config.block_size;
      block.bw = std::min(config.block_size, cur.width - block.x0);
      block.bh = std::min(config.block_size, cur.height - block.y0);
      field.vectors.push_back(per_block(block));
    }
  }
  return field;
}

}  // namespace detail

// Exhaustive search over the whole +/- search_range window.
inline MotionField full_search(const Frame& ref, const Frame& cur, const BmaConfig& config) {
  return detail::search_blocks(ref, cur, config, [&](const detail::BlockGeometry& b) {
    detail::Candidate best{detail::block_sad(ref, cur, b.x0, b.y0, b.bw, b.bh, 0, 0), 0, 0};
    for (int dy = -config.search_range; dy <= config.search_range; ++dy) {
      for (int dx = -config.search_range; dx <= config.search_range; ++dx) {
        if (!detail::candidate_in_bounds(ref, b.x0, b.y0, b.bw, b.bh, dx, dy)) continue;
        detail::Candidate candidate{
            detail::block_sad(ref, cur, b.x0, b.y0, b.bw, b.bh, dx, dy), dx, dy};
        if (candidate.better_than(best)) best = candidate;
      }
    }
    return MotionVector{best.dx, best.dy};
  });
}

// Large-diamond pattern iterated until the center stays best, then one
// small-diamond refinement. Candidates leaving the window or the frame
// are skipped; (0,0) is always available.
inline MotionField diamond_search(const Frame& ref, const Frame& cur, const BmaConfig& config) {
  static constexpr int kLarge[9][2] = {{0, 0}, {-2, 0}, {2, 0}, {0, -2}, {0, 2},
                                       {-1, -1}, {1, -1}, {-1, 1}, {1, 1}};
  static constexpr int kSmall[5][2] = {{0, 0}, {-1, 0}, {1, 0}, {0, -1}, {0, 1}};

  return detail::search_blocks(ref, cur, config, [&](const detail::BlockGeometry& b) {
    const auto admissible = [&](int dx, int dy) {
      return std::abs(dx) <= config.search_range && std::abs(dy) <= config.search_range &&
             detail::candidate_in_bounds(ref, b.x0, b.y0, b.bw, b.bh, dx, dy);
    };
    const auto evaluate = [&](int dx, int dy) {
      return detail::Candidate{detail::block_sad(ref, cur, b.x0, b.y0, b.bw, b.bh, dx, dy),
                               dx, dy};
    };

    detail::Candidate center = evaluate(0, 0);
    for (;;) {
      detail::Candidate best = center;
      for (const auto& offset : kLarge) {
        const int dx = center.dx + offset[0];
        const int dy = center.dy + offset[1];
        if (!admissible(dx, dy)) continue;
        const detail::Candidate candidate = evaluate(dx, dy);
        if (candidate.better_than(best)) best = candidate;
      }
      if (best.dx == center.dx && best.dy == center.dy) break;
      center = best;
    }
    detail::Candidate best = center;
    for (const auto& offset : kSmall) {
      const int dx = center.dx + offset[0];
      const int dy = center.dy + offset[1];
      if (!admissible(dx, dy)) continue;
      const detail::Candidate candidate = evaluate(dx, dy);
      if (candidate.better_than(best)) best = candidate;
    }
    return MotionVector{best.dx, best.dy};
  });
}

// Motion-compensated prediction: every block copied from the reference at
// its displaced position. Open loop; the reference is the original frame.
inline Frame reconstruct(const Frame& ref, const MotionField& field, const BmaConfig& config) {
  config.validate();
  if (ref.channels != 1)
    throw InvalidArgument("bma: block matching runs on 1-channel frames");
  const std::uint32_t blocks_x = (ref.width + config.block_size - 1) / config.block_size;
  const std::uint32_t blocks_y = (ref.height + config.block_size - 1) / config.block_size;
  if (field.blocks_x != blocks_x || field.blocks_y != blocks_y ||
      field.vectors.size() != static_cast<std::size_t>(blocks_x) * blocks_y)
    throw InvalidArgument("bma: motion field grid disagrees with frame geometry");

  Frame out(ref.width, ref.height, 1);
  for (std::uint32_t by = 0; by < blocks_y; ++by) {
    for (std::uint32_t bx = 0; bx < blocks_x; ++bx) {
      const MotionVector mv = field.at(bx, by);
      const std::uint32_t x0 = bx * config.block_size;
      const std::uint32_t y0 = by * config.block_size;
      const std::uint32_t bw = std::min(config.block_size, ref.width - x0);
      const std::uint32_t bh = std::min(config.block_size, ref.height - y0);
      if (std::abs(mv.dx) > config.search_range || std::abs(mv.dy) > config.search_range ||
          !detail::candidate_in_bounds(ref, x0, y0, bw, bh, mv.dx, mv.dy))
        throw InvalidArgument("bma: motion vector leaves the window or the frame");
      for (std::uint32_t y = 0; y < bh; ++y) {
        const Sample* src = ref.samples.data() +
                            static_cast<std::size_t>(static_cast<int>(y0 + y) + mv.dy) * ref.width +
                            (static_cast<int>(x0) + mv.dx);
        Sample* dst = out.samples.data() + static_cast<std::size_t>(y0 + y) * out.width + x0;
        std::memcpy(dst, src, bw);
      }
    }
  }
  return out;
}

}  // namespace lbf
