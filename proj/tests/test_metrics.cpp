// Copyright 2026 The lbf Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch.hpp>

#include <cmath>
#include <random>

#include "lbf/metrics.hpp"
#include "support/generators.hpp"

using lbf::Frame;
using lbf::SymbolHistogram;
using lbf::VideoSequence;

TEST_CASE("entropy of degenerate and uniform distributions") {
  SymbolHistogram single;
  single.add(7, 1234);
  REQUIRE(lbf::entropy(single) == 0.0);

  SymbolHistogram pair;
  pair.add(0, 10);
  pair.add(lbf::SymbolStream::kSentinel, 10);
  REQUIRE(lbf::entropy(pair) == Approx(1.0).margin(1e-12));

  SymbolHistogram uniform;
  for (int s = 0; s < 256; ++s) uniform.add(static_cast<std::uint16_t>(s), 3);
  REQUIRE(lbf::entropy(uniform) == Approx(8.0).margin(1e-9));

  REQUIRE_THROWS_AS(lbf::entropy(SymbolHistogram{}), lbf::InvalidArgument);
}

TEST_CASE("entropy never exceeds the alphabet size") {
  SymbolHistogram all;
  for (int s = 0; s <= 256; ++s) all.add(static_cast<std::uint16_t>(s), 1);
  REQUIRE(lbf::entropy(all) == Approx(std::log2(257.0)).margin(1e-12));
  REQUIRE(lbf::entropy(all) <= std::log2(257.0) + 1e-12);
}

TEST_CASE("frame MSE is the mean squared sample distance") {
  Frame a(1, 1, 1);
  Frame b(1, 1, 1);
  REQUIRE(lbf::frame_mse(a, b) == 0.0);

  b.at(0, 0) = 255;
  REQUIRE(lbf::frame_mse(a, b) == 65025.0);

  Frame c(2, 1, 1);
  Frame d(2, 1, 1);
  c.samples = {0, 10};
  d.samples = {3, 14};
  REQUIRE(lbf::frame_mse(c, d) == Approx(12.5));

  REQUIRE_THROWS_AS(lbf::frame_mse(a, c), lbf::InvalidArgument);
}

TEST_CASE("multi-channel MSE sums the squared channel distances per pixel") {
  Frame a(1, 1, 3);
  Frame b(1, 1, 3);
  a.samples = {0, 0, 0};
  b.samples = {1, 2, 2};
  REQUIRE(lbf::frame_mse(a, b) == 9.0);
}

TEST_CASE("psnr evaluates the peak ratio and handles lossless") {
  REQUIRE(lbf::psnr(65025.0) == Approx(0.0).margin(1e-9));
  REQUIRE(lbf::psnr(100.0) == Approx(28.13).margin(0.01));
  REQUIRE(std::isinf(lbf::psnr(0.0)));
  REQUIRE_THROWS_AS(lbf::psnr(-1.0), lbf::InvalidArgument);
}

TEST_CASE("psnr strictly decreases in mse") {
  lbf_test::Rng rng(191);
  std::uniform_real_distribution<double> mse(1e-6, 70000.0);
  for (int round = 0; round < 200; ++round) {
    double a = mse(rng);
    double b = mse(rng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    REQUIRE(lbf::psnr(a) > lbf::psnr(b));
  }
}

TEST_CASE("report of an all-keypixel encode matches the raw stream") {
  lbf_test::Rng rng(292);
  const auto video = lbf_test::random_video(rng, 6, 12, 1);
  const auto encoded = lbf::encode_video(video, lbf::FitConfig{0.0, 1});
  const auto reconstructed = lbf::decode_video(encoded);
  const auto report = lbf::video_report(video, reconstructed, encoded);

  SymbolHistogram raw;
  for (const auto& frame : video.frames)
    for (lbf::Sample s : frame.samples) raw.add(s);

  REQUIRE(report.entropy_bpp.has_value());
  REQUIRE(*report.entropy_bpp == lbf::entropy(raw));
  REQUIRE(std::isinf(report.aggregate_psnr_db));
  REQUIRE(*report.keypixel_fraction == 1.0);
  REQUIRE(report.aggregate_mse == 0.0);
}

TEST_CASE("constant video at a loose bound gives a two-symbol distribution") {
  VideoSequence video(4, 4, 1, 80);
  for (auto& frame : video.frames)
    for (auto& s : frame.samples) s = 123;
  const auto encoded = lbf::encode_video(video, lbf::FitConfig{100.0, 12});
  const auto reconstructed = lbf::decode_video(encoded);
  const auto report = lbf::video_report(video, reconstructed, encoded);

  // 8 grid keypixels out of 80 frames, per pixel
  const double p_value = 8.0 / 80.0;
  const double expected =
      -p_value * std::log2(p_value) - (1.0 - p_value) * std::log2(1.0 - p_value);
  REQUIRE(*report.entropy_bpp == Approx(expected).margin(1e-12));
  REQUIRE(*report.keypixel_fraction == Approx(p_value));
  REQUIRE(std::isinf(report.aggregate_psnr_db));
}

TEST_CASE("the worked single-pixel video keeps 3 of 7 frames") {
  VideoSequence video(1, 1, 1, 7);
  const int values[] = {0, 10, 20, 30, 20, 10, 0};
  for (std::size_t f = 0; f < 7; ++f)
    video.frames[f].at(0, 0) = static_cast<lbf::Sample>(values[f]);
  const auto encoded = lbf::encode_video(video, lbf::FitConfig{1.0, 6});
  const auto reconstructed = lbf::decode_video(encoded);
  const auto report = lbf::video_report(video, reconstructed, encoded);
  REQUIRE(*report.keypixel_fraction == Approx(3.0 / 7.0));
}

TEST_CASE("entropy depends only on the histogram, not symbol order") {
  lbf_test::Rng rng(393);
  const auto video = lbf_test::random_video(rng, 6, 15, 1);
  const auto encoded = lbf::encode_video(video, lbf::FitConfig{25.0, 6});
  auto stream = lbf::symbol_stream(encoded);
  const double before = lbf::entropy(SymbolHistogram::of(stream));
  std::shuffle(stream.symbols.begin(), stream.symbols.end(), rng);
  REQUIRE(lbf::entropy(SymbolHistogram::of(stream)) == before);
}

TEST_CASE("aggregate mse averages the per-frame values") {
  lbf_test::Rng rng(494);
  const auto video = lbf_test::random_video(rng, 6, 10, 3);
  const auto encoded = lbf::encode_video(video, lbf::FitConfig{25.0, 4});
  const auto reconstructed = lbf::decode_video(encoded);
  const auto report = lbf::video_report(video, reconstructed, encoded);

  REQUIRE(report.per_frame_mse.size() == video.frame_count());
  double sum = 0.0;
  for (std::size_t f = 0; f < video.frame_count(); ++f) {
    REQUIRE(report.per_frame_mse[f] ==
            lbf::frame_mse(video.frames[f], reconstructed.frames[f]));
    sum += report.per_frame_mse[f];
  }
  REQUIRE(report.aggregate_mse == sum / static_cast<double>(video.frame_count()));
  REQUIRE(report.aggregate_psnr_db == lbf::psnr(report.aggregate_mse));
}

TEST_CASE("geometry mismatches are rejected") {
  lbf_test::Rng rng(595);
  const auto a = lbf_test::random_video(rng, 4, 5, 1);
  VideoSequence b(a.width + 1, a.height, 1, a.frame_count());
  REQUIRE_THROWS_AS(lbf::video_report(a, b), lbf::InvalidArgument);
}

TEST_CASE("keypixel fraction stays between the grid floor and one") {
  lbf_test::Rng rng(696);
  const double lambdas[] = {0.0, 5.0, 100.0, 1e9};
  for (int round = 0; round < 8; ++round) {
    const auto video = lbf_test::random_video(rng, 8, 30, 1);
    const std::uint32_t delta = 6;
    const double lambda = lambdas[static_cast<std::size_t>(round) % 4];
    const auto encoded = lbf::encode_video(video, lbf::FitConfig{lambda, delta});
    const auto reconstructed = lbf::decode_video(encoded);
    const auto report = lbf::video_report(video, reconstructed, encoded);
    const double n = static_cast<double>(video.frame_count());
    const double grid =
        static_cast<double>(lbf::initial_keypixels(video.frame_count(), delta).size());
    REQUIRE(*report.keypixel_fraction >= grid / n - 1e-12);
    REQUIRE(*report.keypixel_fraction <= 1.0);
  }
}
