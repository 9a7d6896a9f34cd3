// Copyright 2026 The lbf Authors
// SPDX-License-Identifier: Apache-2.0
//
// Error-bounded piecewise-linear fitting of one pixel's temporal samples.
//
// A trajectory is the sequence of values a single pixel takes across the
// frames of a video, one point per frame with 1 (intensity) or 3 (RGB)
// channels. fit_trajectory() approximates it by straight segments between
// retained frames ("keypixels") so that every segment's mean squared error
// stays at or below a user bound, splitting the worst segment at its
// worst frame until the bound holds everywhere.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <span>
#include <vector>

#include "lbf/error.hpp"

namespace lbf {

using Sample = std::uint8_t;

// Temporal samples of one pixel: frame-major, channel-interleaved.
struct Trajectory {
  int channels = 1;
  std::vector<Sample> samples;

  Trajectory() = default;
  Trajectory(int channel_count, std::vector<Sample> data)
      : channels(channel_count), samples(std::move(data)) {
    if (channels < 1) throw InvalidArgument("trajectory: channels must be >= 1");
    if (samples.size() % static_cast<std::size_t>(channels) != 0)
      throw InvalidArgument("trajectory: sample count not a multiple of channels");
  }

  // Single-channel convenience, used heavily in tests.
  static Trajectory gray(std::vector<Sample> data) {
    return Trajectory(1, std::move(data));
  }

  std::size_t frame_count() const {
    return samples.size() / static_cast<std::size_t>(channels);
  }

  std::span<const Sample> point(std::size_t frame) const {
    return {samples.data() + frame * static_cast<std::size_t>(channels),
            static_cast<std::size_t>(channels)};
  }
};

struct FitConfig {
  double lambda_limit = 100.0;  // max per-segment MSE, squared-intensity units
  std::uint32_t delta = 12;     // initial keypixel spacing, frames

  void validate() const {
    if (!(lambda_limit >= 0.0))
      throw InvalidArgument("fit config: lambda_limit must be >= 0");
    if (delta < 1) throw InvalidArgument("fit config: delta must be >= 1");
  }
};

// One fitted piece: inclusive frame bounds (both keypixels) and its MSE.
struct Segment {
  std::uint32_t start = 0;
  std::uint32_t end = 0;
  double mse = 0.0;
};

// Keypixel frame indices (strictly increasing, 0 and n-1 always present)
// plus the original sample values at those frames.
struct FitResult {
  int channels = 1;
  std::vector<std::uint32_t> keypixels;
  std::vector<Sample> values;  // keypixel-major, channel-interleaved

  std::size_t keypixel_count() const { return keypixels.size(); }
  std::size_t segment_count() const {
    return keypixels.size() < 2 ? 0 : keypixels.size() - 1;
  }
};

// Nearest integer, halves up, clamped to the 8-bit sample range.
inline Sample quantize(double value) {
  double rounded = std::floor(value + 0.5);
  if (rounded < 0.0) return 0;
  if (rounded > 255.0) return 255;
  return static_cast<Sample>(rounded);
}

// Straight-line interpolation between two points, endpoints exact.
// Returns num_points real-valued points (channel-interleaved), the k-th
// at parameter t = k / (num_points - 1).
inline std::vector<double> interpolate_segment(std::span<const Sample> p_start,
                                               std::span<const Sample> p_end,
                                               std::size_t num_points) {
  if (num_points < 2)
    throw InvalidArgument("interpolate_segment: need at least 2 points");
  if (p_start.size() != p_end.size() || p_start.empty())
    throw InvalidArgument("interpolate_segment: endpoint channel mismatch");

  const std::size_t channels = p_start.size();
  std::vector<double> out(num_points * channels);
  const double last = static_cast<double>(num_points - 1);
  for (std::size_t k = 0; k < num_points; ++k) {
    const double t = static_cast<double>(k) / last;
    for (std::size_t c = 0; c < channels; ++c) {
      out[k * channels + c] =
          (1.0 - t) * static_cast<double>(p_start[c]) + t * static_cast<double>(p_end[c]);
    }
  }
  // Force bit-exact endpoints regardless of floating rounding.
  for (std::size_t c = 0; c < channels; ++c) {
    out[c] = static_cast<double>(p_start[c]);
    out[(num_points - 1) * channels + c] = static_cast<double>(p_end[c]);
  }
  return out;
}

// Frames {0, delta, 2*delta, ...} clipped to [0, n-1], with the last frame
// always included.
inline std::vector<std::uint32_t> initial_keypixels(std::size_t n, std::uint32_t delta) {
  if (n < 1) throw InvalidArgument("initial_keypixels: empty trajectory");
  if (delta < 1) throw InvalidArgument("initial_keypixels: delta must be >= 1");
  std::vector<std::uint32_t> kps;
  const std::uint32_t last = static_cast<std::uint32_t>(n - 1);
  for (std::uint64_t f = 0; f <= last; f += delta) {
    kps.push_back(static_cast<std::uint32_t>(f));
  }
  if (kps.back() != last) kps.push_back(last);
  return kps;
}

namespace detail {

// Error scan of one segment against the quantized interpolant of its
// endpoints: total squared distance plus the worst frame (ties break to
// the smallest index; endpoints contribute zero exactly).
struct SegmentScan {
  double sse = 0.0;
  std::uint32_t worst_frame = 0;  // absolute frame index
  double worst_sq = 0.0;
};

inline SegmentScan scan_segment(const Trajectory& traj, std::uint32_t start,
                                std::uint32_t end) {
  const int channels = traj.channels;
  const Sample* data = traj.samples.data();
  const std::size_t stride = static_cast<std::size_t>(channels);
  const Sample* a = data + static_cast<std::size_t>(start) * stride;
  const Sample* b = data + static_cast<std::size_t>(end) * stride;

  SegmentScan scan;
  scan.worst_frame = start;
  scan.worst_sq = -1.0;
  const double last = static_cast<double>(end - start);
  for (std::uint32_t f = start; f <= end; ++f) {
    const double t = static_cast<double>(f - start) / last;
    const Sample* p = data + static_cast<std::size_t>(f) * stride;
    double sq = 0.0;
    for (int c = 0; c < channels; ++c) {
      const double v = (1.0 - t) * static_cast<double>(a[c]) + t * static_cast<double>(b[c]);
      const double d = static_cast<double>(p[c]) - static_cast<double>(quantize(v));
      sq += d * d;
    }
    scan.sse += sq;
    if (sq > scan.worst_sq) {
      scan.worst_sq = sq;
      scan.worst_frame = f;
    }
  }
  return scan;
}

inline double segment_mse_of(const Trajectory& traj, std::uint32_t start,
                             std::uint32_t end) {
  return scan_segment(traj, start, end).sse / static_cast<double>(end - start + 1);
}

}  // namespace detail

// Mean squared distance between a trajectory slice and the quantized
// straight-line interpolant of the two keypixel values. Endpoint frames
// are included in the mean and contribute zero.
inline double segment_mse(std::span<const Sample> slice,
                          std::span<const Sample> keypixel_start,
                          std::span<const Sample> keypixel_end) {
  const std::size_t channels = keypixel_start.size();
  if (channels == 0 || keypixel_end.size() != channels)
    throw InvalidArgument("segment_mse: keypixel channel mismatch");
  if (slice.size() % channels != 0 || slice.size() / channels < 2)
    throw InvalidArgument("segment_mse: slice must hold at least 2 points");

  const std::size_t m = slice.size() / channels;
  const std::vector<double> line = interpolate_segment(keypixel_start, keypixel_end, m);
  double sse = 0.0;
  for (std::size_t i = 0; i < slice.size(); ++i) {
    const double d =
        static_cast<double>(slice[i]) - static_cast<double>(quantize(line[i]));
    sse += d * d;
  }
  return sse / static_cast<double>(m);
}

// In-slice index of the largest squared distance between the original
// points and the already-quantized interpolant; ties break to the
// smallest index. Both slices are channel-interleaved with equal layout.
inline std::uint32_t find_split_point(std::span<const Sample> original,
                                      std::span<const Sample> decoded,
                                      int channels = 1) {
  if (channels < 1) throw InvalidArgument("find_split_point: bad channel count");
  const std::size_t stride = static_cast<std::size_t>(channels);
  if (original.size() != decoded.size() || original.size() % stride != 0)
    throw InvalidArgument("find_split_point: slice layout mismatch");
  const std::size_t m = original.size() / stride;
  if (m < 3)
    throw InvalidArgument("find_split_point: segment too short to split");

  std::uint32_t worst = 0;
  double worst_sq = -1.0;
  for (std::size_t i = 0; i < m; ++i) {
    double sq = 0.0;
    for (std::size_t c = 0; c < stride; ++c) {
      const double d = static_cast<double>(original[i * stride + c]) -
                       static_cast<double>(decoded[i * stride + c]);
      sq += d * d;
    }
    if (sq > worst_sq) {
      worst_sq = sq;
      worst = static_cast<std::uint32_t>(i);
    }
  }
  return worst;
}

// Break-and-fit with an explicit starting keypixel set. Segments are kept
// in a worst-first priority queue; a split touches only the two children,
// so queue entries never go stale. Ties pick the segment with the smallest
// start index, which makes the whole split sequence data-determined: the
// error bound only decides where that sequence stops.
inline FitResult fit_trajectory(const Trajectory& traj,
                                std::vector<std::uint32_t> initial,
                                double lambda_limit) {
  if (!(lambda_limit >= 0.0))
    throw InvalidArgument("fit_trajectory: lambda_limit must be >= 0");
  const std::size_t n = traj.frame_count();
  if (n == 0) throw InvalidArgument("fit_trajectory: empty trajectory");
  if (initial.empty() || initial.front() != 0 ||
      initial.back() != static_cast<std::uint32_t>(n - 1) ||
      !std::is_sorted(initial.begin(), initial.end()) ||
      std::adjacent_find(initial.begin(), initial.end()) != initial.end())
    throw InvalidArgument("fit_trajectory: initial keypixels must strictly increase from 0 to n-1");

  struct Pending {
    double mse;
    std::uint32_t start;
    std::uint32_t end;
  };
  struct WorstFirst {
    bool operator()(const Pending& a, const Pending& b) const {
      if (a.mse != b.mse) return a.mse < b.mse;
      return a.start > b.start;
    }
  };

  std::vector<std::uint32_t> keypixels = std::move(initial);
  std::priority_queue<Pending, std::vector<Pending>, WorstFirst> queue;
  for (std::size_t i = 0; i + 1 < keypixels.size(); ++i) {
    queue.push({detail::segment_mse_of(traj, keypixels[i], keypixels[i + 1]),
                keypixels[i], keypixels[i + 1]});
  }

  while (!queue.empty()) {
    const Pending worst = queue.top();
    if (!(worst.mse > lambda_limit)) break;
    queue.pop();

    const std::uint32_t split = detail::scan_segment(traj, worst.start, worst.end).worst_frame;
    keypixels.push_back(split);
    queue.push({detail::segment_mse_of(traj, worst.start, split), worst.start, split});
    queue.push({detail::segment_mse_of(traj, split, worst.end), split, worst.end});
  }

  std::sort(keypixels.begin(), keypixels.end());

  FitResult result;
  result.channels = traj.channels;
  result.keypixels = std::move(keypixels);
  result.values.reserve(result.keypixels.size() * static_cast<std::size_t>(traj.channels));
  for (std::uint32_t kp : result.keypixels) {
    const auto point = traj.point(kp);
    result.values.insert(result.values.end(), point.begin(), point.end());
  }
  return result;
}

// Break-and-fit seeded with the regular delta grid.
inline FitResult fit_trajectory(const Trajectory& traj, const FitConfig& config) {
  config.validate();
  const std::size_t n = traj.frame_count();
  if (n == 0) throw InvalidArgument("fit_trajectory: empty trajectory");
  return fit_trajectory(traj, initial_keypixels(n, config.delta), config.lambda_limit);
}

// Reconstruct all n frames from a fit: straight-line interpolation between
// consecutive keypixels, quantized; keypixel frames come back exactly.
inline std::vector<Sample> decode_trajectory(const FitResult& result, std::size_t n) {
  const std::size_t channels = static_cast<std::size_t>(result.channels);
  if (result.channels < 1 || result.keypixels.empty() ||
      result.values.size() != result.keypixels.size() * channels)
    throw CorruptInput("decode_trajectory: malformed fit result");
  if (result.keypixels.front() != 0 ||
      result.keypixels.back() != static_cast<std::uint32_t>(n - 1) ||
      !std::is_sorted(result.keypixels.begin(), result.keypixels.end()) ||
      std::adjacent_find(result.keypixels.begin(), result.keypixels.end()) !=
          result.keypixels.end())
    throw CorruptInput("decode_trajectory: keypixels must strictly increase from 0 to n-1");

  std::vector<Sample> out(n * channels);
  for (std::size_t c = 0; c < channels; ++c) out[c] = result.values[c];
  for (std::size_t i = 0; i + 1 < result.keypixels.size(); ++i) {
    const std::uint32_t a = result.keypixels[i];
    const std::uint32_t b = result.keypixels[i + 1];
    const Sample* va = result.values.data() + i * channels;
    const Sample* vb = result.values.data() + (i + 1) * channels;
    const double last = static_cast<double>(b - a);
    for (std::uint32_t f = a; f <= b; ++f) {
      const double t = static_cast<double>(f - a) / last;
      for (std::size_t c = 0; c < channels; ++c) {
        const double v =
            (1.0 - t) * static_cast<double>(va[c]) + t * static_cast<double>(vb[c]);
        out[static_cast<std::size_t>(f) * channels + c] = quantize(v);
      }
    }
    // Keypixels are stored verbatim; pin them against rounding noise.
    for (std::size_t c = 0; c < channels; ++c) {
      out[static_cast<std::size_t>(a) * channels + c] = va[c];
      out[static_cast<std::size_t>(b) * channels + c] = vb[c];
    }
  }
  return out;
}

}  // namespace lbf
