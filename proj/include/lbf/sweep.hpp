// Copyright 2026 The lbf Authors
// SPDX-License-Identifier: Apache-2.0
//
// Rate-distortion sweep: encode the same video at a list of error bounds
// and collect one entropy/PSNR/keypixel row per bound.

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "lbf/codec.hpp"
#include "lbf/error.hpp"
#include "lbf/metrics.hpp"

namespace lbf {

struct SweepRow {
  double lambda_limit = 0.0;
  double entropy_bpp = 0.0;
  double aggregate_psnr_db = 0.0;
  double keypixel_fraction = 0.0;
  double encode_seconds = 0.0;
};

// Rows come back sorted by lambda ascending, duplicates collapsed.
inline std::vector<SweepRow> run_sweep(const VideoSequence& video,
                                       std::vector<double> lambdas, std::uint32_t delta,
                                       unsigned workers = 1) {
  if (lambdas.empty()) throw InvalidArgument("sweep: lambda list is empty");
  for (double lambda : lambdas) {
    if (!(lambda >= 0.0)) throw InvalidArgument("sweep: lambda values must be >= 0");
  }
  std::sort(lambdas.begin(), lambdas.end());
  lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());

  std::vector<SweepRow> rows;
  rows.reserve(lambdas.size());
  for (double lambda : lambdas) {
    const FitConfig config{lambda, delta};
    const auto start = std::chrono::steady_clock::now();
    const EncodedVideo encoded = encode_video(video, config, workers);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    const VideoSequence reconstructed = decode_video(encoded);
    const MetricsReport report = video_report(video, reconstructed, encoded);

    SweepRow row;
    row.lambda_limit = lambda;
    row.entropy_bpp = *report.entropy_bpp;
    row.aggregate_psnr_db = report.aggregate_psnr_db;
    row.keypixel_fraction = *report.keypixel_fraction;
    row.encode_seconds = elapsed.count();
    rows.push_back(row);
  }
  return rows;
}

// Numbers render with fixed precision so identical inputs give identical
// bytes; infinity prints as the bare token "inf".
inline std::string format_metric(double value, int decimals) {
  if (std::isinf(value)) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  return buf;
}

inline std::string sweep_csv(const std::vector<SweepRow>& rows, bool with_timing) {
  std::string csv = with_timing
                        ? "lambda,entropy_bpp,psnr_db,keypixel_fraction,encode_seconds\n"
                        : "lambda,entropy_bpp,psnr_db,keypixel_fraction\n";
  for (const SweepRow& row : rows) {
    char lambda[64];
    std::snprintf(lambda, sizeof(lambda), "%g", row.lambda_limit);
    csv += lambda;
    csv += "," + format_metric(row.entropy_bpp, 6);
    csv += "," + format_metric(row.aggregate_psnr_db, 6);
    csv += "," + format_metric(row.keypixel_fraction, 6);
    if (with_timing) csv += "," + format_metric(row.encode_seconds, 3);
    csv += "\n";
  }
  return csv;
}

}  // namespace lbf
