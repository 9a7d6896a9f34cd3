// Copyright 2026 The lbf Authors
// SPDX-License-Identifier: Apache-2.0
//
// Rate and quality measures: symbol-stream entropy as the rate proxy,
// per-frame and aggregate MSE/PSNR as the distortion side.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "lbf/codec.hpp"
#include "lbf/error.hpp"
#include "lbf/video.hpp"

namespace lbf {

// Occurrence counts over the 257-symbol alphabet (0..255 plus sentinel).
struct SymbolHistogram {
  std::array<std::uint64_t, 257> counts{};
  std::uint64_t total = 0;

  void add(std::uint16_t symbol, std::uint64_t count = 1) {
    counts[symbol] += count;
    total += count;
  }

  static SymbolHistogram of(const SymbolStream& stream) {
    SymbolHistogram hist;
    for (std::uint16_t s : stream.symbols) hist.add(s);
    return hist;
  }
};

// Shannon entropy in bits per symbol; empty symbols contribute nothing.
inline double entropy(const SymbolHistogram& hist) {
  if (hist.total == 0) throw InvalidArgument("entropy: empty histogram");
  double h = 0.0;
  const double total = static_cast<double>(hist.total);
  for (std::uint64_t count : hist.counts) {
    if (count == 0) continue;
    const double p = static_cast<double>(count) / total;
    h -= p * std::log2(p);
  }
  return h;
}

// Mean over all pixels of the squared Euclidean distance across channels.
inline double frame_mse(const Frame& original, const Frame& reconstructed) {
  if (!original.same_geometry(reconstructed))
    throw InvalidArgument("frame_mse: geometry mismatch");
  double sse = 0.0;
  for (std::size_t i = 0; i < original.samples.size(); ++i) {
    const double d = static_cast<double>(original.samples[i]) -
                     static_cast<double>(reconstructed.samples[i]);
    sse += d * d;
  }
  return sse / static_cast<double>(original.pixel_count());
}

// Peak signal-to-noise ratio against the 8-bit peak; lossless comes back
// as +infinity.
inline double psnr(double mse) {
  if (!(mse >= 0.0)) throw InvalidArgument("psnr: mse must be >= 0");
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

struct MetricsReport {
  std::optional<double> entropy_bpp;
  std::vector<double> per_frame_mse;
  double aggregate_mse = 0.0;
  std::vector<double> per_frame_psnr_db;
  double aggregate_psnr_db = 0.0;
  std::optional<double> keypixel_fraction;
};

namespace detail {

inline MetricsReport distortion_report(const VideoSequence& original,
                                       const VideoSequence& reconstructed) {
  original.validate();
  reconstructed.validate();
  if (original.width != reconstructed.width || original.height != reconstructed.height ||
      original.channels != reconstructed.channels ||
      original.frame_count() != reconstructed.frame_count())
    throw InvalidArgument("metrics: geometry mismatch");

  MetricsReport report;
  double mse_sum = 0.0;
  for (std::size_t f = 0; f < original.frame_count(); ++f) {
    const double mse = frame_mse(original.frames[f], reconstructed.frames[f]);
    report.per_frame_mse.push_back(mse);
    report.per_frame_psnr_db.push_back(psnr(mse));
    mse_sum += mse;
  }
  report.aggregate_mse = mse_sum / static_cast<double>(original.frame_count());
  report.aggregate_psnr_db = psnr(report.aggregate_mse);
  return report;
}

}  // namespace detail

// Distortion-only report (no encoding at hand).
inline MetricsReport video_report(const VideoSequence& original,
                                  const VideoSequence& reconstructed) {
  return detail::distortion_report(original, reconstructed);
}

// Full report: adds symbol-stream entropy and the fraction of retained
// pixels from the encoding.
inline MetricsReport video_report(const VideoSequence& original,
                                  const VideoSequence& reconstructed,
                                  const EncodedVideo& encoded) {
  if (original.width != encoded.width || original.height != encoded.height ||
      original.channels != encoded.channels ||
      original.frame_count() != encoded.frame_count)
    throw InvalidArgument("metrics: encoding geometry mismatch");
  MetricsReport report = detail::distortion_report(original, reconstructed);
  report.entropy_bpp = entropy(SymbolHistogram::of(symbol_stream(encoded)));
  report.keypixel_fraction =
      static_cast<double>(encoded.keypixel_total()) /
      (static_cast<double>(encoded.frame_count) * static_cast<double>(original.pixel_count()));
  return report;
}

}  // namespace lbf
