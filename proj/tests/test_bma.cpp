// Copyright 2026 The lbf Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch.hpp>

#include <random>

#include "lbf/bma.hpp"
#include "lbf/metrics.hpp"
#include "support/generators.hpp"

using lbf::BmaConfig;
using lbf::Frame;
using lbf::MotionField;
using lbf::MotionVector;

namespace {

Frame random_frame(lbf_test::Rng& rng, std::uint32_t w, std::uint32_t h) {
  Frame frame(w, h, 1);
  std::uniform_int_distribution<int> value(0, 255);
  for (auto& s : frame.samples) s = static_cast<lbf::Sample>(value(rng));
  return frame;
}

// cur(x, y) = ref(x - dx, y - dy); uncovered borders copy the original.
Frame translate(const Frame& ref, int dx, int dy) {
  Frame cur = ref;
  for (std::uint32_t y = 0; y < ref.height; ++y) {
    for (std::uint32_t x = 0; x < ref.width; ++x) {
      const int sx = static_cast<int>(x) - dx;
      const int sy = static_cast<int>(y) - dy;
      if (sx >= 0 && sy >= 0 && sx < static_cast<int>(ref.width) &&
          sy < static_cast<int>(ref.height))
        cur.at(x, y) = ref.at(static_cast<std::uint32_t>(sx), static_cast<std::uint32_t>(sy));
    }
  }
  return cur;
}

Frame extract_block(const Frame& frame, std::uint32_t x0, std::uint32_t y0,
                    std::uint32_t bw, std::uint32_t bh) {
  Frame block(bw, bh, 1);
  for (std::uint32_t y = 0; y < bh; ++y)
    for (std::uint32_t x = 0; x < bw; ++x) block.at(x, y) = frame.at(x0 + x, y0 + y);
  return block;
}

}  // namespace

TEST_CASE("block MAE of simple pairs") {
  Frame a(2, 2, 1);
  Frame b(2, 2, 1);
  REQUIRE(lbf::block_mae(a, b) == 0.0);

  for (auto& s : b.samples) s = 1;
  REQUIRE(lbf::block_mae(a, b) == 1.0);

  Frame c(2, 2, 1);
  Frame d(2, 2, 1);
  d.at(0, 0) = 255;
  REQUIRE(lbf::block_mae(c, d) == Approx(63.75));

  Frame e(3, 2, 1);
  REQUIRE_THROWS_AS(lbf::block_mae(a, e), lbf::InvalidArgument);
}

TEST_CASE("full search returns zero vectors on identical frames") {
  lbf_test::Rng rng(811);
  const Frame ref = random_frame(rng, 24, 16);
  const auto field = lbf::full_search(ref, ref, BmaConfig{8, 3});
  REQUIRE(field.blocks_x == 3);
  REQUIRE(field.blocks_y == 2);
  for (const auto& mv : field.vectors) REQUIRE(mv == MotionVector{0, 0});
}

TEST_CASE("full search compensates a one-pixel shift exactly") {
  lbf_test::Rng rng(912);
  const Frame ref = random_frame(rng, 32, 32);
  const Frame cur = translate(ref, 1, 0);
  const BmaConfig config{8, 2};
  const auto field = lbf::full_search(ref, cur, config);
  // interior blocks (not in the leftmost column) can reach the exact match
  for (std::uint32_t by = 0; by < field.blocks_y; ++by) {
    for (std::uint32_t bx = 1; bx < field.blocks_x; ++bx) {
      const auto mv = field.at(bx, by);
      REQUIRE(mv == MotionVector{-1, 0});
      const Frame cur_block = extract_block(cur, bx * 8, by * 8, 8, 8);
      const Frame ref_block =
          extract_block(ref, bx * 8 + static_cast<std::uint32_t>(mv.dx + 0), by * 8, 8, 8);
      REQUIRE(lbf::block_mae(cur_block, ref_block) == 0.0);
    }
  }
}

TEST_CASE("zero search range degenerates to frame differencing") {
  lbf_test::Rng rng(1013);
  const Frame ref = random_frame(rng, 16, 16);
  const Frame cur = random_frame(rng, 16, 16);
  const auto field = lbf::full_search(ref, cur, BmaConfig{8, 0});
  for (const auto& mv : field.vectors) REQUIRE(mv == MotionVector{0, 0});
  const auto recon = lbf::reconstruct(ref, field, BmaConfig{8, 0});
  REQUIRE(recon == ref);
}

TEST_CASE("full search is optimal within the window") {
  lbf_test::Rng rng(1114);
  const BmaConfig config{8, 3};
  for (int round = 0; round < 5; ++round) {
    const Frame ref = random_frame(rng, 32, 32);
    const Frame cur = random_frame(rng, 32, 32);
    const auto field = lbf::full_search(ref, cur, config);
    for (std::uint32_t by = 0; by < field.blocks_y; ++by) {
      for (std::uint32_t bx = 0; bx < field.blocks_x; ++bx) {
        const auto mv = field.at(bx, by);
        const Frame cur_block = extract_block(cur, bx * 8, by * 8, 8, 8);
        const double best = lbf::block_mae(
            cur_block, extract_block(ref, static_cast<std::uint32_t>(bx * 8 + mv.dx),
                                     static_cast<std::uint32_t>(by * 8 + mv.dy), 8, 8));
        for (int dy = -3; dy <= 3; ++dy) {
          for (int dx = -3; dx <= 3; ++dx) {
            const int x = static_cast<int>(bx * 8) + dx;
            const int y = static_cast<int>(by * 8) + dy;
            if (x < 0 || y < 0 || x + 8 > 32 || y + 8 > 32) continue;
            const double candidate = lbf::block_mae(
                cur_block, extract_block(ref, static_cast<std::uint32_t>(x),
                                         static_cast<std::uint32_t>(y), 8, 8));
            REQUIRE(best <= candidate);
          }
        }
      }
    }
  }
}

TEST_CASE("diamond search returns zero vectors on identical frames") {
  lbf_test::Rng rng(1215);
  const Frame ref = random_frame(rng, 24, 24);
  const auto field = lbf::diamond_search(ref, ref, BmaConfig{8, 3});
  for (const auto& mv : field.vectors) REQUIRE(mv == MotionVector{0, 0});
}

TEST_CASE("diamond search never beats full search") {
  lbf_test::Rng rng(1316);
  const BmaConfig config{8, 5};
  for (int round = 0; round < 5; ++round) {
    const Frame ref = random_frame(rng, 40, 24);
    Frame cur = translate(ref, round % 3 - 1, round % 2);
    // add a little noise so matches are imperfect
    std::uniform_int_distribution<int> noise(-2, 2);
    for (auto& s : cur.samples)
      s = static_cast<lbf::Sample>(std::clamp(static_cast<int>(s) + noise(rng), 0, 255));

    const auto full = lbf::full_search(ref, cur, config);
    const auto diamond = lbf::diamond_search(ref, cur, config);
    for (std::uint32_t by = 0; by < full.blocks_y; ++by) {
      for (std::uint32_t bx = 0; bx < full.blocks_x; ++bx) {
        const std::uint32_t x0 = bx * 8;
        const std::uint32_t y0 = by * 8;
        const std::uint32_t bw = std::min(8u, cur.width - x0);
        const std::uint32_t bh = std::min(8u, cur.height - y0);
        const Frame cur_block = extract_block(cur, x0, y0, bw, bh);
        const auto mv_full = full.at(bx, by);
        const auto mv_ds = diamond.at(bx, by);
        const double mae_full = lbf::block_mae(
            cur_block, extract_block(ref, static_cast<std::uint32_t>(x0 + mv_full.dx),
                                     static_cast<std::uint32_t>(y0 + mv_full.dy), bw, bh));
        const double mae_ds = lbf::block_mae(
            cur_block, extract_block(ref, static_cast<std::uint32_t>(x0 + mv_ds.dx),
                                     static_cast<std::uint32_t>(y0 + mv_ds.dy), bw, bh));
        REQUIRE(mae_ds >= mae_full);
      }
    }
  }
}

TEST_CASE("diamond search recovers two-pixel translations") {
  lbf_test::Rng rng(1417);
  const Frame ref = random_frame(rng, 32, 32);
  for (int dx : {-2, 2}) {
    const Frame cur = translate(ref, dx, 0);
    const auto field = lbf::diamond_search(ref, cur, BmaConfig{8, 3});
    const std::uint32_t first = dx > 0 ? 1u : 0u;
    const std::uint32_t last = dx > 0 ? field.blocks_x : field.blocks_x - 1;
    for (std::uint32_t by = 0; by < field.blocks_y; ++by) {
      for (std::uint32_t bx = first; bx < last; ++bx) {
        const auto mv = field.at(bx, by);
        const Frame cur_block = extract_block(cur, bx * 8, by * 8, 8, 8);
        const Frame match =
            extract_block(ref, static_cast<std::uint32_t>(bx * 8 + mv.dx),
                          static_cast<std::uint32_t>(by * 8 + mv.dy), 8, 8);
        REQUIRE(lbf::block_mae(cur_block, match) == 0.0);
      }
    }
  }
}

TEST_CASE("all vectors stay inside the window and the frame") {
  lbf_test::Rng rng(1518);
  const BmaConfig config{16, 7};
  const Frame ref = random_frame(rng, 50, 34);  // clipped edge blocks
  const Frame cur = random_frame(rng, 50, 34);
  for (const auto& field : {lbf::full_search(ref, cur, config),
                            lbf::diamond_search(ref, cur, config)}) {
    for (std::uint32_t by = 0; by < field.blocks_y; ++by) {
      for (std::uint32_t bx = 0; bx < field.blocks_x; ++bx) {
        const auto mv = field.at(bx, by);
        REQUIRE(std::abs(mv.dx) <= 7);
        REQUIRE(std::abs(mv.dy) <= 7);
        const std::uint32_t x0 = bx * 16;
        const std::uint32_t y0 = by * 16;
        const std::uint32_t bw = std::min(16u, ref.width - x0);
        const std::uint32_t bh = std::min(16u, ref.height - y0);
        REQUIRE(static_cast<int>(x0) + mv.dx >= 0);
        REQUIRE(static_cast<int>(y0) + mv.dy >= 0);
        REQUIRE(static_cast<int>(x0 + bw) + mv.dx <= static_cast<int>(ref.width));
        REQUIRE(static_cast<int>(y0 + bh) + mv.dy <= static_cast<int>(ref.height));
      }
    }
  }
}

TEST_CASE("searches are deterministic") {
  lbf_test::Rng rng(1619);
  const Frame ref = random_frame(rng, 33, 17);
  const Frame cur = random_frame(rng, 33, 17);
  const BmaConfig config{8, 4};
  const auto a = lbf::full_search(ref, cur, config);
  const auto b = lbf::full_search(ref, cur, config);
  REQUIRE(a.vectors == b.vectors);
  const auto c = lbf::diamond_search(ref, cur, config);
  const auto d = lbf::diamond_search(ref, cur, config);
  REQUIRE(c.vectors == d.vectors);
}

TEST_CASE("reconstruct copies displaced blocks from the reference") {
  lbf_test::Rng rng(1720);
  const Frame ref = random_frame(rng, 32, 32);

  SECTION("zero field reproduces the reference") {
    const auto field = lbf::full_search(ref, ref, BmaConfig{8, 0});
    REQUIRE(lbf::reconstruct(ref, field, BmaConfig{8, 0}) == ref);
  }

  SECTION("translation field reproduces interior blocks of the target") {
    const Frame cur = translate(ref, 1, 1);
    const BmaConfig config{8, 2};
    const auto field = lbf::full_search(ref, cur, config);
    const Frame recon = lbf::reconstruct(ref, field, config);
    for (std::uint32_t y = 8; y < 32; ++y)
      for (std::uint32_t x = 8; x < 32; ++x) REQUIRE(recon.at(x, y) == cur.at(x, y));
    // composition contract: the prediction error is measurable
    REQUIRE(lbf::frame_mse(cur, recon) >= 0.0);
  }

  SECTION("inconsistent fields are rejected") {
    MotionField bad;
    bad.blocks_x = 1;
    bad.blocks_y = 1;
    bad.vectors = {MotionVector{0, 0}};
    REQUIRE_THROWS_AS(lbf::reconstruct(ref, bad, BmaConfig{8, 2}), lbf::InvalidArgument);

    MotionField out_of_window;
    out_of_window.blocks_x = 4;
    out_of_window.blocks_y = 4;
    out_of_window.vectors.assign(16, MotionVector{0, 0});
    out_of_window.vectors[0] = MotionVector{5, 0};  // window is +/-2
    REQUIRE_THROWS_AS(lbf::reconstruct(ref, out_of_window, BmaConfig{8, 2}),
                      lbf::InvalidArgument);
  }
}
