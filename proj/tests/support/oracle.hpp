// Copyright 2026 The lbf Authors
// SPDX-License-Identifier: Apache-2.0
//
// Test-only reference implementations, written from the definitions and
// kept independent of the library code paths they check:
//  - a brute-force segment MSE (own interpolation and rounding),
//  - an exhaustive dynamic-programming segmenter that minimizes the
//    keypixel count subject to the per-segment error bound.

#pragma once

#include <cstdint>
#include <vector>

namespace lbf_test {

// Round half up, clamp to [0, 255]. Deliberately re-derived here rather
// than pulled from the library: floor(v + 0.5) via truncation.
inline int oracle_round(double v) {
  const double shifted = v + 0.5;
  int r = static_cast<int>(shifted);
  if (static_cast<double>(r) > shifted) --r;
  if (r < 0) r = 0;
  if (r > 255) r = 255;
  return r;
}

// MSE of frames [start, end] of a 1-channel trajectory against the
// rounded straight line between the endpoint values.
inline double oracle_segment_mse(const std::vector<std::uint8_t>& traj, std::size_t start,
                                 std::size_t end) {
  const double a = static_cast<double>(traj[start]);
  const double b = static_cast<double>(traj[end]);
  const double span = static_cast<double>(end - start);
  double sse = 0.0;
  for (std::size_t i = start; i <= end; ++i) {
    double ideal;
    if (i == start) {
      ideal = a;
    } else if (i == end) {
      ideal = b;
    } else {
      const double t = static_cast<double>(i - start) / span;
      ideal = (1.0 - t) * a + t * b;
    }
    const double diff = static_cast<double>(traj[i]) - static_cast<double>(oracle_round(ideal));
    sse += diff * diff;
  }
  return sse / static_cast<double>(end - start + 1);
}

// Multi-channel variant for re-checking fitted segments independently.
inline double oracle_segment_mse_nd(const std::vector<std::uint8_t>& samples, int channels,
                                    std::size_t start, std::size_t end) {
  const std::size_t c_count = static_cast<std::size_t>(channels);
  const double span = static_cast<double>(end - start);
  double sse = 0.0;
  for (std::size_t i = start; i <= end; ++i) {
    for (std::size_t c = 0; c < c_count; ++c) {
      const double a = static_cast<double>(samples[start * c_count + c]);
      const double b = static_cast<double>(samples[end * c_count + c]);
      double ideal;
      if (i == start) {
        ideal = a;
      } else if (i == end) {
        ideal = b;
      } else {
        const double t = static_cast<double>(i - start) / span;
        ideal = (1.0 - t) * a + t * b;
      }
      const double diff = static_cast<double>(samples[i * c_count + c]) -
                          static_cast<double>(oracle_round(ideal));
      sse += diff * diff;
    }
  }
  return sse / static_cast<double>(end - start + 1);
}

// Minimum-keypixel segmentation of a 1-channel trajectory subject to
// per-segment MSE <= lambda. Frames 0 and n-1 are always keypixels;
// adjacent frames always form a feasible segment, so a solution exists.
inline std::vector<std::size_t> dp_optimal_keypixels(const std::vector<std::uint8_t>& traj,
                                                     double lambda) {
  const std::size_t n = traj.size();
  if (n == 1) return {0};

  constexpr std::size_t kUnreachable = static_cast<std::size_t>(-1);
  std::vector<std::size_t> best_count(n, kUnreachable);
  std::vector<std::size_t> parent(n, kUnreachable);
  best_count[0] = 1;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (best_count[i] == kUnreachable) continue;
      if (oracle_segment_mse(traj, i, j) > lambda) continue;
      if (best_count[i] + 1 < best_count[j]) {
        best_count[j] = best_count[i] + 1;
        parent[j] = i;
      }
    }
  }

  std::vector<std::size_t> keypixels;
  for (std::size_t j = n - 1; j != 0; j = parent[j]) keypixels.push_back(j);
  keypixels.push_back(0);
  for (std::size_t i = 0, k = keypixels.size() - 1; i < k; ++i, --k)
    std::swap(keypixels[i], keypixels[k]);
  return keypixels;
}

}  // namespace lbf_test
