// Copyright 2026 The lbf Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "lbf/error.hpp"
#include "lbf/trajectory.hpp"

namespace lbf {

// One rectangular image: row-major, channel-interleaved, 8-bit samples.
struct Frame {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  int channels = 1;
  std::vector<Sample> samples;

  Frame() = default;
  Frame(std::uint32_t w, std::uint32_t h, int c)
      : width(w), height(h), channels(c),
        samples(static_cast<std::size_t>(w) * h * static_cast<std::size_t>(c), 0) {
    if (w == 0 || h == 0) throw InvalidArgument("frame: empty dimensions");
    if (c != 1 && c != 3) throw InvalidArgument("frame: channels must be 1 or 3");
  }

  std::size_t pixel_count() const {
    return static_cast<std::size_t>(width) * height;
  }

  Sample at(std::uint32_t x, std::uint32_t y, int c = 0) const {
    return samples[(static_cast<std::size_t>(y) * width + x) *
                       static_cast<std::size_t>(channels) +
                   static_cast<std::size_t>(c)];
  }
  Sample& at(std::uint32_t x, std::uint32_t y, int c = 0) {
    return samples[(static_cast<std::size_t>(y) * width + x) *
                       static_cast<std::size_t>(channels) +
                   static_cast<std::size_t>(c)];
  }

  bool same_geometry(const Frame& other) const {
    return width == other.width && height == other.height && channels == other.channels;
  }

  friend bool operator==(const Frame&, const Frame&) = default;
};

struct VideoSequence {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  int channels = 1;
  std::vector<Frame> frames;

  VideoSequence() = default;
  VideoSequence(std::uint32_t w, std::uint32_t h, int c, std::size_t frame_count)
      : width(w), height(h), channels(c) {
    if (frame_count < 1) throw InvalidArgument("video: needs at least one frame");
    frames.reserve(frame_count);
    for (std::size_t i = 0; i < frame_count; ++i) frames.emplace_back(w, h, c);
  }

  std::size_t frame_count() const { return frames.size(); }
  std::size_t pixel_count() const {
    return static_cast<std::size_t>(width) * height;
  }

  void validate() const {
    if (frames.empty()) throw InvalidArgument("video: needs at least one frame");
    if (width == 0 || height == 0) throw InvalidArgument("video: empty dimensions");
    if (channels != 1 && channels != 3)
      throw InvalidArgument("video: channels must be 1 or 3");
    for (const Frame& f : frames) {
      if (f.width != width || f.height != height || f.channels != channels)
        throw InvalidArgument("video: frames disagree on geometry");
      if (f.samples.size() != pixel_count() * static_cast<std::size_t>(channels))
        throw InvalidArgument("video: frame sample buffer has wrong size");
    }
  }

  // Temporal samples of the pixel at raster index p, across all frames.
  Trajectory pixel_trajectory(std::size_t p) const {
    Trajectory traj;
    traj.channels = channels;
    traj.samples.reserve(frames.size() * static_cast<std::size_t>(channels));
    const std::size_t base = p * static_cast<std::size_t>(channels);
    for (const Frame& f : frames) {
      for (int c = 0; c < channels; ++c)
        traj.samples.push_back(f.samples[base + static_cast<std::size_t>(c)]);
    }
    return traj;
  }

  friend bool operator==(const VideoSequence&, const VideoSequence&) = default;
};

}  // namespace lbf
