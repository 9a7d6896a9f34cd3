// Copyright 2026 The lbf Authors
// SPDX-License-Identifier: Apache-2.0
//
// Byte-level readers and writers: YUV4MPEG2 (luma plane only), headerless
// raw 8-bit video and PGM frame export.

#pragma once

#include <charconv>
#include <cstdint>
#include <cstring>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lbf/error.hpp"
#include "lbf/video.hpp"

namespace lbf {

struct RawVideoSpec {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  int channels = 1;
  std::optional<std::size_t> frame_count;  // inferred from size when absent
};

namespace detail {

struct Y4mHeader {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::size_t chroma_plane_bytes = 0;  // per plane; 0 for mono
};

inline std::uint32_t parse_y4m_uint(std::string_view token, const char* what) {
  std::uint32_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || value == 0)
    throw CorruptInput(std::string("y4m: bad ") + what + " parameter");
  return value;
}

inline Y4mHeader parse_y4m_header(std::string_view line) {
  Y4mHeader header;
  bool mono = false;
  bool have_colorspace = false;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && line[pos] == ' ') ++pos;
    if (pos >= line.size()) break;
    const std::size_t end = std::min(line.find(' ', pos), line.size());
    const std::string_view token = line.substr(pos, end - pos);
    pos = end;

    const char tag = token.front();
    const std::string_view arg = token.substr(1);
    switch (tag) {
      case 'W':
        header.width = parse_y4m_uint(arg, "width");
        break;
      case 'H':
        header.height = parse_y4m_uint(arg, "height");
        break;
      case 'C':
        have_colorspace = true;
        if (arg == "mono") {
          mono = true;
        } else if (arg == "420" || arg == "420jpeg" || arg == "420paldv") {
          mono = false;
        } else {
          throw UnsupportedFormat("y4m: unsupported colorspace C" + std::string(arg));
        }
        break;
      // Framerate, interlacing, aspect and comments don't affect decoding
      // of individual frames; pass them through.
      case 'F':
      case 'I':
      case 'A':
      case 'X':
        break;
      default:
        break;
    }
  }
  if (header.width == 0 || header.height == 0)
    throw CorruptInput("y4m: header is missing W or H");
  if (!have_colorspace) mono = false;  // bare headers default to 4:2:0
  if (!mono) {
    const std::size_t cw = (header.width + 1) / 2;
    const std::size_t ch = (header.height + 1) / 2;
    header.chroma_plane_bytes = cw * ch;
  }
  return header;
}

}  // namespace detail

// Parse a YUV4MPEG2 stream and keep the luma plane of every frame; chroma
// planes of the 4:2:0 variants are skipped.
inline VideoSequence read_y4m(std::span<const std::uint8_t> bytes) {
  static constexpr std::string_view kSignature = "YUV4MPEG2";
  if (bytes.size() < kSignature.size() ||
      std::memcmp(bytes.data(), kSignature.data(), kSignature.size()) != 0)
    throw WrongFormat("y4m: missing YUV4MPEG2 signature");

  const std::string_view text(reinterpret_cast<const char*>(bytes.data()), bytes.size());
  const std::size_t header_end = text.find('\n');
  if (header_end == std::string_view::npos)
    throw CorruptInput("y4m: unterminated stream header");
  const detail::Y4mHeader header =
      detail::parse_y4m_header(text.substr(kSignature.size(), header_end - kSignature.size()));

  const std::size_t luma_bytes =
      static_cast<std::size_t>(header.width) * header.height;
  VideoSequence video;
  video.width = header.width;
  video.height = header.height;
  video.channels = 1;

  std::size_t pos = header_end + 1;
  while (pos < bytes.size()) {
    static constexpr std::string_view kFrame = "FRAME";
    if (text.compare(pos, kFrame.size(), kFrame) != 0)
      throw CorruptInput("y4m: expected FRAME marker");
    const std::size_t marker_end = text.find('\n', pos);
    if (marker_end == std::string_view::npos)
      throw CorruptInput("y4m: unterminated FRAME header");
    pos = marker_end + 1;

    if (bytes.size() - pos < luma_bytes + 2 * header.chroma_plane_bytes)
      throw CorruptInput("y4m: truncated frame payload");
    Frame frame(header.width, header.height, 1);
    std::memcpy(frame.samples.data(), bytes.data() + pos, luma_bytes);
    video.frames.push_back(std::move(frame));
    pos += luma_bytes + 2 * header.chroma_plane_bytes;
  }
  if (video.frames.empty()) throw CorruptInput("y4m: stream holds no frames");
  return video;
}

// Monochrome YUV4MPEG2 writer; read_y4m(write_y4m(v)) reproduces v.
inline std::vector<std::uint8_t> write_y4m(const VideoSequence& video) {
  video.validate();
  if (video.channels != 1)
    throw InvalidArgument("write_y4m: only 1-channel video can be written as Cmono");
  std::string header = "YUV4MPEG2 W" + std::to_string(video.width) + " H" +
                       std::to_string(video.height) + " F25:1 Ip A1:1 Cmono\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  for (const Frame& frame : video.frames) {
    static constexpr std::string_view kFrame = "FRAME\n";
    out.insert(out.end(), kFrame.begin(), kFrame.end());
    out.insert(out.end(), frame.samples.begin(), frame.samples.end());
  }
  return out;
}

inline VideoSequence read_raw(std::span<const std::uint8_t> bytes, const RawVideoSpec& spec) {
  if (spec.width == 0 || spec.height == 0)
    throw InvalidArgument("read_raw: empty dimensions");
  if (spec.channels != 1 && spec.channels != 3)
    throw InvalidArgument("read_raw: channels must be 1 or 3");

  const std::size_t frame_bytes = static_cast<std::size_t>(spec.width) * spec.height *
                                  static_cast<std::size_t>(spec.channels);
  std::size_t frame_count;
  if (spec.frame_count.has_value()) {
    frame_count = *spec.frame_count;
    if (bytes.size() != frame_count * frame_bytes)
      throw CorruptInput("raw: size does not match width*height*channels*frames");
  } else {
    if (bytes.size() % frame_bytes != 0)
      throw CorruptInput("raw: size is not a multiple of the frame size");
    frame_count = bytes.size() / frame_bytes;
  }
  if (frame_count == 0) throw CorruptInput("raw: stream holds no frames");

  VideoSequence video;
  video.width = spec.width;
  video.height = spec.height;
  video.channels = spec.channels;
  for (std::size_t f = 0; f < frame_count; ++f) {
    Frame frame(spec.width, spec.height, spec.channels);
    std::memcpy(frame.samples.data(), bytes.data() + f * frame_bytes, frame_bytes);
    video.frames.push_back(std::move(frame));
  }
  return video;
}

inline std::vector<std::uint8_t> write_raw(const VideoSequence& video) {
  video.validate();
  std::vector<std::uint8_t> out;
  const std::size_t frame_bytes =
      video.pixel_count() * static_cast<std::size_t>(video.channels);
  out.reserve(video.frame_count() * frame_bytes);
  for (const Frame& frame : video.frames)
    out.insert(out.end(), frame.samples.begin(), frame.samples.end());
  return out;
}

// Binary PGM (P5, maxval 255).
inline std::vector<std::uint8_t> write_pgm(const Frame& frame) {
  if (frame.channels != 1)
    throw InvalidArgument("write_pgm: only 1-channel frames fit the PGM format");
  std::string header = "P5\n" + std::to_string(frame.width) + " " +
                       std::to_string(frame.height) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), frame.samples.begin(), frame.samples.end());
  return out;
}

}  // namespace lbf
