// Copyright 2026 The lbf Authors
// SPDX-License-Identifier: Apache-2.0
//
// Whole-video encoder/decoder on top of per-pixel trajectory fitting, plus
// the LBF1 container. The encoding keeps, per frame, a one-bit-per-pixel
// keypixel mask and the raw sample values of the masked pixels; everything
// between keypixels is rebuilt by interpolation at decode time.

#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <span>
#include <vector>

#include "lbf/error.hpp"
#include "lbf/parallel.hpp"
#include "lbf/trajectory.hpp"
#include "lbf/video.hpp"

namespace lbf {

struct EncodedVideo {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  int channels = 1;
  std::uint32_t frame_count = 0;
  std::uint32_t delta = 12;
  double lambda_limit = 100.0;
  // Per frame: row-major pixel mask, 8 pixels per byte, MSB first, final
  // byte zero-padded. Set bit = keypixel.
  std::vector<std::vector<std::uint8_t>> masks;
  // Per frame: samples of the masked pixels in raster order, channels
  // interleaved per pixel.
  std::vector<std::vector<Sample>> values;

  std::size_t mask_bytes() const {
    return (static_cast<std::size_t>(width) * height + 7) / 8;
  }

  bool keypixel(std::uint32_t frame, std::size_t pixel) const {
    return (masks[frame][pixel / 8] >> (7 - pixel % 8)) & 1u;
  }

  std::size_t keypixel_total() const {
    std::size_t total = 0;
    for (const auto& mask : masks)
      for (std::uint8_t byte : mask) total += std::popcount(byte);
    return total;
  }

  friend bool operator==(const EncodedVideo&, const EncodedVideo&) = default;
};

// The conceptual output stream: one symbol per (frame, pixel, channel),
// either a sample value or the out-of-range marker for skipped positions.
struct SymbolStream {
  static constexpr std::uint16_t kSentinel = 256;
  std::vector<std::uint16_t> symbols;
};

namespace detail {

inline void set_mask_bit(std::vector<std::uint8_t>& mask, std::size_t pixel) {
  mask[pixel / 8] |= static_cast<std::uint8_t>(1u << (7 - pixel % 8));
}

}  // namespace detail

// Fit every pixel's temporal trajectory and pack the results. Fitting is
// per-pixel independent; `workers` > 1 splits the pixel range across
// threads with output identical to a sequential run.
inline EncodedVideo encode_video(const VideoSequence& video, const FitConfig& config,
                                 unsigned workers = 1) {
  config.validate();
  video.validate();

  const std::size_t pixels = video.pixel_count();
  const std::size_t n = video.frame_count();
  const std::size_t channels = static_cast<std::size_t>(video.channels);

  std::vector<std::vector<std::uint32_t>> pixel_keypixels(pixels);
  parallel_for(pixels, workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t p = begin; p < end; ++p) {
      pixel_keypixels[p] = fit_trajectory(video.pixel_trajectory(p), config).keypixels;
    }
  });

  EncodedVideo encoded;
  encoded.width = video.width;
  encoded.height = video.height;
  encoded.channels = video.channels;
  encoded.frame_count = static_cast<std::uint32_t>(n);
  encoded.delta = config.delta;
  encoded.lambda_limit = config.lambda_limit;
  encoded.masks.assign(n, std::vector<std::uint8_t>(encoded.mask_bytes(), 0));
  encoded.values.resize(n);

  for (std::size_t p = 0; p < pixels; ++p) {
    for (std::uint32_t f : pixel_keypixels[p]) {
      detail::set_mask_bit(encoded.masks[f], p);
    }
  }
  for (std::size_t f = 0; f < n; ++f) {
    const Frame& frame = video.frames[f];
    auto& out = encoded.values[f];
    for (std::size_t p = 0; p < pixels; ++p) {
      if (!encoded.keypixel(static_cast<std::uint32_t>(f), p)) continue;
      const Sample* sample = frame.samples.data() + p * channels;
      out.insert(out.end(), sample, sample + channels);
    }
  }
  return encoded;
}

namespace detail {

inline void validate_encoded(const EncodedVideo& encoded) {
  if (encoded.width == 0 || encoded.height == 0 || encoded.frame_count == 0)
    throw CorruptInput("encoded video: empty geometry");
  if (encoded.channels != 1 && encoded.channels != 3)
    throw CorruptInput("encoded video: channels must be 1 or 3");
  if (encoded.delta < 1) throw CorruptInput("encoded video: delta must be >= 1");
  if (!(encoded.lambda_limit >= 0.0))
    throw CorruptInput("encoded video: negative error bound");
  if (encoded.masks.size() != encoded.frame_count ||
      encoded.values.size() != encoded.frame_count)
    throw CorruptInput("encoded video: frame table sizes disagree with header");

  const std::size_t pixels = static_cast<std::size_t>(encoded.width) * encoded.height;
  for (std::uint32_t f = 0; f < encoded.frame_count; ++f) {
    if (encoded.masks[f].size() != encoded.mask_bytes())
      throw CorruptInput("encoded video: bitmask has wrong size");
    std::size_t popcount = 0;
    for (std::uint8_t byte : encoded.masks[f]) popcount += std::popcount(byte);
    if (encoded.values[f].size() !=
        popcount * static_cast<std::size_t>(encoded.channels))
      throw CorruptInput("encoded video: value array length mismatch");
    for (std::size_t p = pixels; p < encoded.mask_bytes() * 8; ++p) {
      if (encoded.keypixel(f, p))
        throw CorruptInput("encoded video: padding bits must be zero");
    }
  }
  for (std::uint32_t f : {std::uint32_t{0}, encoded.frame_count - 1}) {
    for (std::size_t p = 0; p < pixels; ++p) {
      if (!encoded.keypixel(f, p))
        throw CorruptInput("encoded video: first/last frame must be all keypixels");
    }
  }
}

}  // namespace detail

// Rebuild the full video: per pixel, interpolate between its keypixel
// frames. Geometry comes from the header.
inline VideoSequence decode_video(const EncodedVideo& encoded) {
  detail::validate_encoded(encoded);

  const std::size_t pixels = static_cast<std::size_t>(encoded.width) * encoded.height;
  const std::size_t n = encoded.frame_count;
  const std::size_t channels = static_cast<std::size_t>(encoded.channels);

  // Scatter each frame's packed values back onto (pixel, frame) slots.
  std::vector<std::vector<std::uint32_t>> kp_frames(pixels);
  std::vector<std::vector<Sample>> kp_values(pixels);
  for (std::size_t f = 0; f < n; ++f) {
    const Sample* cursor = encoded.values[f].data();
    for (std::size_t p = 0; p < pixels; ++p) {
      if (!encoded.keypixel(static_cast<std::uint32_t>(f), p)) continue;
      kp_frames[p].push_back(static_cast<std::uint32_t>(f));
      kp_values[p].insert(kp_values[p].end(), cursor, cursor + channels);
      cursor += channels;
    }
  }

  VideoSequence video(encoded.width, encoded.height, encoded.channels, n);
  for (std::size_t p = 0; p < pixels; ++p) {
    FitResult fit;
    fit.channels = encoded.channels;
    fit.keypixels = std::move(kp_frames[p]);
    fit.values = std::move(kp_values[p]);
    const std::vector<Sample> decoded = decode_trajectory(fit, n);
    for (std::size_t f = 0; f < n; ++f) {
      Sample* out = video.frames[f].samples.data() + p * channels;
      std::memcpy(out, decoded.data() + f * channels, channels);
    }
  }
  return video;
}

// Frame-major, raster-order, channel-interleaved symbol stream: keypixels
// emit their sample values, everything else the sentinel.
inline SymbolStream symbol_stream(const EncodedVideo& encoded) {
  detail::validate_encoded(encoded);
  const std::size_t pixels = static_cast<std::size_t>(encoded.width) * encoded.height;
  const std::size_t channels = static_cast<std::size_t>(encoded.channels);

  SymbolStream stream;
  stream.symbols.reserve(encoded.frame_count * pixels * channels);
  for (std::uint32_t f = 0; f < encoded.frame_count; ++f) {
    const Sample* cursor = encoded.values[f].data();
    for (std::size_t p = 0; p < pixels; ++p) {
      if (encoded.keypixel(f, p)) {
        for (std::size_t c = 0; c < channels; ++c)
          stream.symbols.push_back(*cursor++);
      } else {
        for (std::size_t c = 0; c < channels; ++c)
          stream.symbols.push_back(SymbolStream::kSentinel);
      }
    }
  }
  return stream;
}

// Original frame with every non-keypixel blanked to white, for visualizing
// which pixels the fit retained.
inline Frame keypixel_mask_frame(const VideoSequence& video, const EncodedVideo& encoded,
                                 std::uint32_t frame_index) {
  video.validate();
  detail::validate_encoded(encoded);
  if (video.width != encoded.width || video.height != encoded.height ||
      video.channels != encoded.channels || video.frame_count() != encoded.frame_count)
    throw InvalidArgument("keypixel_mask_frame: video and encoding disagree on geometry");
  if (frame_index >= encoded.frame_count)
    throw InvalidArgument("keypixel_mask_frame: frame index out of range");

  Frame mask = video.frames[frame_index];
  const std::size_t channels = static_cast<std::size_t>(mask.channels);
  for (std::size_t p = 0; p < mask.pixel_count(); ++p) {
    if (encoded.keypixel(frame_index, p)) continue;
    for (std::size_t c = 0; c < channels; ++c) mask.samples[p * channels + c] = 255;
  }
  return mask;
}

namespace detail {

inline void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

inline void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

inline void put_f64(std::vector<std::uint8_t>& out, double v) {
  const std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
}

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint8_t u8() { return take(1)[0]; }
  std::uint16_t u16() {
    auto b = take(2);
    return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
  }
  std::uint32_t u32() {
    auto b = take(4);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) |
           (static_cast<std::uint32_t>(b[3]) << 24);
  }
  double f64() {
    auto b = take(8);
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return std::bit_cast<double>(bits);
  }
  std::span<const std::uint8_t> take(std::size_t count) {
    if (bytes_.size() - pos_ < count)
      throw CorruptInput("LBF1: truncated payload");
    auto out = bytes_.subspan(pos_, count);
    pos_ += count;
    return out;
  }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline constexpr char kLbfMagic[4] = {'L', 'B', 'F', '1'};
inline constexpr std::uint8_t kLbfVersion = 1;

// LBF1 container, little-endian, byte-stable for a given encoding.
inline std::vector<std::uint8_t> serialize(const EncodedVideo& encoded) {
  detail::validate_encoded(encoded);
  std::vector<std::uint8_t> out;
  std::size_t payload = 0;
  for (std::uint32_t f = 0; f < encoded.frame_count; ++f)
    payload += encoded.masks[f].size() + encoded.values[f].size();
  out.reserve(32 + payload);

  out.insert(out.end(), kLbfMagic, kLbfMagic + 4);
  out.push_back(kLbfVersion);
  out.push_back(static_cast<std::uint8_t>(encoded.channels));
  detail::put_u16(out, 0);  // reserved
  detail::put_u32(out, encoded.width);
  detail::put_u32(out, encoded.height);
  detail::put_u32(out, encoded.frame_count);
  detail::put_u32(out, encoded.delta);
  detail::put_f64(out, encoded.lambda_limit);
  for (std::uint32_t f = 0; f < encoded.frame_count; ++f) {
    out.insert(out.end(), encoded.masks[f].begin(), encoded.masks[f].end());
    out.insert(out.end(), encoded.values[f].begin(), encoded.values[f].end());
  }
  return out;
}

inline EncodedVideo deserialize(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4) throw CorruptInput("LBF1: truncated payload");
  if (std::memcmp(bytes.data(), kLbfMagic, 4) != 0)
    throw WrongFormat("LBF1: bad magic");

  detail::ByteReader reader(bytes.subspan(4));
  const std::uint8_t version = reader.u8();
  if (version != kLbfVersion)
    throw UnsupportedVersion("LBF1: unsupported container version " +
                             std::to_string(version));

  EncodedVideo encoded;
  encoded.channels = reader.u8();
  if (encoded.channels != 1 && encoded.channels != 3)
    throw CorruptInput("LBF1: channels must be 1 or 3");
  if (reader.u16() != 0) throw CorruptInput("LBF1: reserved field must be zero");
  encoded.width = reader.u32();
  encoded.height = reader.u32();
  encoded.frame_count = reader.u32();
  encoded.delta = reader.u32();
  encoded.lambda_limit = reader.f64();
  if (encoded.width == 0 || encoded.height == 0 || encoded.frame_count == 0)
    throw CorruptInput("LBF1: empty geometry");
  if (encoded.delta < 1) throw CorruptInput("LBF1: delta must be >= 1");
  if (!(encoded.lambda_limit >= 0.0))
    throw CorruptInput("LBF1: negative error bound");

  const std::size_t mask_bytes = encoded.mask_bytes();
  // every frame carries at least its mask, so an oversized frame count
  // cannot be honest; fail before reserving anything
  if (reader.remaining() / mask_bytes < encoded.frame_count)
    throw CorruptInput("LBF1: truncated payload");
  encoded.masks.reserve(encoded.frame_count);
  encoded.values.reserve(encoded.frame_count);
  for (std::uint32_t f = 0; f < encoded.frame_count; ++f) {
    auto mask = reader.take(mask_bytes);
    encoded.masks.emplace_back(mask.begin(), mask.end());
    std::size_t popcount = 0;
    for (std::uint8_t byte : encoded.masks.back()) popcount += std::popcount(byte);
    auto values = reader.take(popcount * static_cast<std::size_t>(encoded.channels));
    encoded.values.emplace_back(values.begin(), values.end());
  }
  if (reader.remaining() != 0)
    throw CorruptInput("LBF1: trailing bytes after last frame");
  detail::validate_encoded(encoded);
  return encoded;
}

}  // namespace lbf
