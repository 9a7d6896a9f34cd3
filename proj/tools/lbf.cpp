// Copyright 2026 The lbf Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: encode/decode the LBF1 container, quality
// metrics, rate-distortion sweeps, keypixel mask export and the
// block-matching baseline.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lbf/lbf.hpp"

namespace {

using json = nlohmann::json;

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw lbf::Error("cannot open input '" + path + "'");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw lbf::Error("failed reading '" + path + "'");
  return bytes;
}

void write_file(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw lbf::Error("cannot open output '" + path + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw lbf::Error("failed writing '" + path + "'");
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  write_file(path, {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
}

// Video input selection shared by the commands that read video files.
struct InputOptions {
  std::string path;
  std::string format = "auto";  // auto | y4m | raw
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  int channels = 1;
  std::size_t frames = 0;  // 0 = infer from file size

  void attach(CLI::App* cmd, bool as_flag_input = true) {
    if (as_flag_input) {
      cmd->add_option("--input,-i", path, "input video file")->required();
    }
    cmd->add_option("--format", format, "input format: auto, y4m or raw")
        ->check(CLI::IsMember({"auto", "y4m", "raw"}));
    cmd->add_option("--width", width, "frame width (raw input)");
    cmd->add_option("--height", height, "frame height (raw input)");
    cmd->add_option("--channels", channels, "sample channels, 1 or 3 (raw input)")
        ->check(CLI::IsMember({1, 3}));
    cmd->add_option("--frames", frames, "frame count (raw input; 0 = from file size)");
  }

  std::string resolved_format(const std::string& file) const {
    if (format != "auto") return format;
    const std::string ext = std::filesystem::path(file).extension().string();
    if (ext == ".y4m") return "y4m";
    return "raw";
  }

  lbf::VideoSequence load() const { return load_from(path); }

  lbf::VideoSequence load_from(const std::string& file) const {
    const auto bytes = read_file(file);
    if (resolved_format(file) == "y4m") return lbf::read_y4m(bytes);
    if (width == 0 || height == 0)
      throw lbf::InvalidArgument("raw input '" + file + "' needs --width and --height");
    lbf::RawVideoSpec spec;
    spec.width = width;
    spec.height = height;
    spec.channels = channels;
    if (frames > 0) spec.frame_count = frames;
    return lbf::read_raw(bytes, spec);
  }
};

json metric_value(double v) {
  if (std::isinf(v)) return "inf";
  return v;
}

int run_encode(const InputOptions& input, double lambda, std::uint32_t delta,
               const std::string& output, bool no_timing) {
  const lbf::VideoSequence video = input.load();
  const lbf::FitConfig config{lambda, delta};
  const unsigned workers = lbf::worker_count_from_env();

  const auto start = std::chrono::steady_clock::now();
  const lbf::EncodedVideo encoded = lbf::encode_video(video, config, workers);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

  write_file(output, lbf::serialize(encoded));

  const double fraction =
      static_cast<double>(encoded.keypixel_total()) /
      (static_cast<double>(encoded.frame_count) * static_cast<double>(video.pixel_count()));
  std::printf("keypixel_fraction %.6f\n", fraction);
  if (!no_timing) std::printf("encode_seconds %.3f\n", elapsed.count());
  return 0;
}

int run_decode(const std::string& input, const std::string& output,
               const std::string& format) {
  const lbf::EncodedVideo encoded = lbf::deserialize(read_file(input));
  const lbf::VideoSequence video = lbf::decode_video(encoded);
  if (format == "y4m") {
    write_file(output, lbf::write_y4m(video));
  } else {
    write_file(output, lbf::write_raw(video));
  }
  return 0;
}

int run_metrics(const InputOptions& input, const std::string& original,
                const std::string& reconstructed, const std::string& encoded_path) {
  const lbf::VideoSequence original_video = input.load_from(original);
  const lbf::VideoSequence reconstructed_video = input.load_from(reconstructed);

  lbf::MetricsReport report;
  if (!encoded_path.empty()) {
    const lbf::EncodedVideo encoded = lbf::deserialize(read_file(encoded_path));
    report = lbf::video_report(original_video, reconstructed_video, encoded);
  } else {
    report = lbf::video_report(original_video, reconstructed_video);
  }

  json out;
  if (report.entropy_bpp) out["entropy_bpp"] = *report.entropy_bpp;
  out["per_frame_mse"] = report.per_frame_mse;
  out["aggregate_mse"] = report.aggregate_mse;
  out["per_frame_psnr_db"] = json::array();
  for (double p : report.per_frame_psnr_db) out["per_frame_psnr_db"].push_back(metric_value(p));
  out["aggregate_psnr_db"] = metric_value(report.aggregate_psnr_db);
  if (report.keypixel_fraction) out["keypixel_fraction"] = *report.keypixel_fraction;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_sweep(const InputOptions& input, const std::vector<double>& lambdas,
              std::uint32_t delta, const std::string& output, bool no_timing) {
  const lbf::VideoSequence video = input.load();
  const unsigned workers = lbf::worker_count_from_env();
  const auto rows = lbf::run_sweep(video, lambdas, delta, workers);
  write_text(output, lbf::sweep_csv(rows, !no_timing));
  return 0;
}

int run_mask(const InputOptions& input, double lambda, std::uint32_t delta,
             std::uint32_t frame_index, const std::string& output) {
  const lbf::VideoSequence video = input.load();
  if (video.channels != 1)
    throw lbf::InvalidArgument("mask export writes PGM and needs 1-channel input");
  const unsigned workers = lbf::worker_count_from_env();
  const lbf::EncodedVideo encoded =
      lbf::encode_video(video, lbf::FitConfig{lambda, delta}, workers);
  const lbf::Frame mask = lbf::keypixel_mask_frame(video, encoded, frame_index);
  write_file(output, lbf::write_pgm(mask));
  return 0;
}

int run_bma(const InputOptions& input, const std::string& method, std::uint32_t block,
            int range, const std::string& output, const std::string& recon_dir) {
  const lbf::VideoSequence video = input.load();
  if (video.channels != 1)
    throw lbf::InvalidArgument("block matching needs 1-channel input");
  if (video.frame_count() < 2)
    throw lbf::InvalidArgument("block matching needs at least 2 frames");
  const lbf::BmaConfig config{block, range};

  if (!recon_dir.empty()) std::filesystem::create_directories(recon_dir);

  std::string csv = "frame,mse,psnr_db\n";
  for (std::size_t f = 1; f < video.frame_count(); ++f) {
    const lbf::Frame& ref = video.frames[f - 1];
    const lbf::Frame& cur = video.frames[f];
    const lbf::MotionField field = method == "full" ? lbf::full_search(ref, cur, config)
                                                    : lbf::diamond_search(ref, cur, config);
    const lbf::Frame predicted = lbf::reconstruct(ref, field, config);
    const double mse = lbf::frame_mse(cur, predicted);
    csv += std::to_string(f);
    csv += "," + lbf::format_metric(mse, 6);
    csv += "," + lbf::format_metric(lbf::psnr(mse), 6);
    csv += "\n";
    if (!recon_dir.empty()) {
      char name[32];
      std::snprintf(name, sizeof(name), "pred_%05zu.pgm", f);
      write_file((std::filesystem::path(recon_dir) / name).string(),
                 lbf::write_pgm(predicted));
    }
  }
  write_text(output, csv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"temporal video approximation by error-bounded piecewise-linear fitting"};
  app.require_subcommand(1);

  // encode
  auto* encode = app.add_subcommand("encode", "fit a video and write an LBF1 file");
  InputOptions encode_input;
  encode_input.attach(encode);
  double lambda = 100.0;
  std::uint32_t delta = 12;
  std::string output;
  bool no_timing = false;
  encode->add_option("--lambda", lambda, "max per-segment mean squared error")
      ->check(CLI::NonNegativeNumber);
  encode->add_option("--delta", delta, "initial keypixel interval in frames")
      ->check(CLI::PositiveNumber);
  encode->add_option("--output,-o", output, "output .lbf file")->required();
  encode->add_flag("--no-timing", no_timing, "omit timing from the report");

  // decode
  auto* decode = app.add_subcommand("decode", "decode an LBF1 file back to video");
  std::string decode_input;
  std::string decode_output;
  std::string decode_format = "raw";
  decode->add_option("--input,-i", decode_input, "input .lbf file")->required();
  decode->add_option("--output,-o", decode_output, "output video file")->required();
  decode->add_option("--format", decode_format, "output format: raw or y4m")
      ->check(CLI::IsMember({"raw", "y4m"}));

  // metrics
  auto* metrics = app.add_subcommand("metrics", "quality report as JSON on stdout");
  InputOptions metrics_input;
  metrics_input.attach(metrics, false);
  std::string metrics_original;
  std::string metrics_reconstructed;
  std::string metrics_encoded;
  metrics->add_option("--original", metrics_original, "original video file")->required();
  metrics->add_option("--reconstructed", metrics_reconstructed, "reconstructed video file")
      ->required();
  metrics->add_option("--encoded", metrics_encoded,
                      "matching .lbf file (adds entropy and keypixel fraction)");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "rate-distortion sweep over lambda values");
  InputOptions sweep_input;
  sweep_input.attach(sweep);
  std::vector<double> lambdas;
  std::uint32_t sweep_delta = 12;
  std::string sweep_output = "-";
  bool sweep_no_timing = false;
  sweep->add_option("--lambdas", lambdas, "comma-separated lambda values")
      ->required()
      ->delimiter(',')
      ->check(CLI::NonNegativeNumber);
  sweep->add_option("--delta", sweep_delta, "initial keypixel interval in frames")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--output,-o", sweep_output, "CSV output file, - for stdout");
  sweep->add_flag("--no-timing", sweep_no_timing, "omit the encode_seconds column");

  // mask
  auto* mask = app.add_subcommand("mask", "export a keypixel visualization frame as PGM");
  InputOptions mask_input;
  mask_input.attach(mask);
  double mask_lambda = 100.0;
  std::uint32_t mask_delta = 12;
  std::uint32_t mask_frame = 0;
  std::string mask_output;
  mask->add_option("--lambda", mask_lambda, "max per-segment mean squared error")
      ->check(CLI::NonNegativeNumber);
  mask->add_option("--delta", mask_delta, "initial keypixel interval in frames")
      ->check(CLI::PositiveNumber);
  mask->add_option("--frame", mask_frame, "frame index to render")->required();
  mask->add_option("--output,-o", mask_output, "output .pgm file")->required();

  // bma
  auto* bma = app.add_subcommand("bma", "block-matching baseline, per-frame CSV");
  InputOptions bma_input;
  bma_input.attach(bma);
  std::string bma_method = "full";
  std::uint32_t bma_block = 16;
  int bma_range = 7;
  std::string bma_output = "-";
  std::string bma_recon_dir;
  bma->add_option("--method", bma_method, "search method: full or ds")
      ->check(CLI::IsMember({"full", "ds"}));
  bma->add_option("--block", bma_block, "block size in pixels")->check(CLI::PositiveNumber);
  bma->add_option("--range", bma_range, "search window, +/- pixels")
      ->check(CLI::NonNegativeNumber);
  bma->add_option("--output,-o", bma_output, "CSV output file, - for stdout");
  bma->add_option("--recon-dir", bma_recon_dir, "directory for predicted frames as PGM");

  CLI11_PARSE(app, argc, argv);

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (encode->parsed())
      return run_encode(encode_input, lambda, delta, output, no_timing);
    if (decode->parsed()) return run_decode(decode_input, decode_output, decode_format);
    if (metrics->parsed())
      return run_metrics(metrics_input, metrics_original, metrics_reconstructed,
                         metrics_encoded);
    if (sweep->parsed())
      return run_sweep(sweep_input, lambdas, sweep_delta, sweep_output, sweep_no_timing);
    if (mask->parsed())
      return run_mask(mask_input, mask_lambda, mask_delta, mask_frame, mask_output);
    if (bma->parsed())
      return run_bma(bma_input, bma_method, bma_block, bma_range, bma_output, bma_recon_dir);
  } catch (const lbf::InvalidArgument& e) {
    std::cerr << command << ": invalid-argument: " << e.what() << "\n";
    return 1;
  } catch (const lbf::WrongFormat& e) {
    std::cerr << command << ": wrong-format: " << e.what() << "\n";
    return 1;
  } catch (const lbf::CorruptInput& e) {
    std::cerr << command << ": corrupt-input: " << e.what() << "\n";
    return 1;
  } catch (const lbf::UnsupportedVersion& e) {
    std::cerr << command << ": unsupported-version: " << e.what() << "\n";
    return 1;
  } catch (const lbf::UnsupportedFormat& e) {
    std::cerr << command << ": unsupported-format: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << command << ": " << e.what() << "\n";
    return 1;
  }
  return 0;
}
