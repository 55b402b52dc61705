#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "densify/kitti_io.hpp"
#include "densify/metrics.hpp"
#include "densify/pipeline.hpp"

namespace densify::cli {

namespace fs = std::filesystem;

// ---- complete -------------------------------------------------------------

struct CompleteRequest {
  fs::path input;  // a PNG or a directory of PNGs
  fs::path output_dir;
  PipelineConfig config;
  int jobs = 1;
};

struct FrameResult {
  fs::path input;
  fs::path output;
  bool ok = false;
  std::string error;
  RunStats stats;
  double read_ms = 0.0;
  double write_ms = 0.0;
};

/// Completes every input frame; frames are distributed over `jobs` threads.
/// Results are in input order.
std::vector<FrameResult> complete_batch(const CompleteRequest& request);

int cmd_complete(const CompleteRequest& request, std::ostream& out, std::ostream& err);

// ---- eval -----------------------------------------------------------------

struct EvalRequest {
  fs::path pred_dir;
  fs::path gt_dir;
  std::optional<fs::path> per_frame_csv;
  bool per_frame_average = false;
};

struct FrameMetrics {
  std::string name;
  MetricsReport report;
};

struct EvalResult {
  MetricsReport aggregate;
  std::vector<FrameMetrics> frames;
  std::vector<std::string> failures;  // "name: reason"
  PairListing listing;
};

/// Throws IoError when nothing pairs up. Per-pair failures are collected.
EvalResult evaluate_dirs(const EvalRequest& request);

int cmd_eval(const EvalRequest& request, std::ostream& out, std::ostream& err);

// ---- sweep ----------------------------------------------------------------

struct SweepSpec {
  std::vector<int> sizes{5};
  std::vector<KernelShape> shapes{KernelShape::Diamond};
  std::vector<BlurMode> blur_modes{BlurMode::MedianGaussian};
};

/// "kernel-size" (Full 3/5/7, no blur), "kernel-shape" (all shapes at 5, no
/// blur) or "blur" (Diamond 5, all six blur modes).
SweepSpec sweep_preset(std::string_view name);

/// Throws ArgumentError for sizes outside {3,5,7} or empty axes.
void validate_sweep(const SweepSpec& spec);

struct SweepRow {
  PipelineConfig config;
  MetricsReport metrics;
  double mean_runtime_ms = 0.0;
  std::size_t frames = 0;
};

struct SweepRequest {
  fs::path input_dir;
  fs::path gt_dir;
  SweepSpec spec;
  PipelineConfig base;
  int jobs = 1;
  std::size_t max_frames = 0;  // 0 = all
};

/// Rows in declared order: sizes outermost, then shapes, then blur modes.
std::vector<SweepRow> run_sweep(const SweepRequest& request);

std::string sweep_csv_header();
std::string sweep_csv_row(const SweepRow& row);

int cmd_sweep(const SweepRequest& request, const std::optional<fs::path>& csv_path,
              std::ostream& out, std::ostream& err);

// ---- bench ----------------------------------------------------------------

struct TimingSummary {
  std::string label;
  double mean_ms = 0.0;
  double p50_ms = 0.0;
  double p95_ms = 0.0;
};

/// Mean plus nearest-rank p50 and p95.
TimingSummary summarize(std::string label, std::vector<double> samples);

struct BenchRequest {
  fs::path input;
  PipelineConfig config;
  int repetitions = 10;
};

struct BenchReport {
  std::vector<TimingSummary> stages;  // one per pipeline stage
  TimingSummary total;
  TimingSummary io;                   // PNG decode, reported separately
  double frames_per_second = 0.0;
  std::size_t frames = 0;
  std::size_t samples = 0;
};

/// One untimed warm-up pass over the inputs, then `repetitions` timed passes.
BenchReport run_bench(const BenchRequest& request);

std::string format_bench(const BenchReport& report);

int cmd_bench(const BenchRequest& request, std::ostream& out, std::ostream& err);

// ---- viz ------------------------------------------------------------------

enum class VizMode { Depth, Error };

struct VizRequest {
  VizMode mode = VizMode::Depth;
  fs::path input;               // depth map (depth mode) or prediction (error mode)
  std::optional<fs::path> gt;   // required in error mode
  fs::path output;
  std::optional<double> range_min;
  std::optional<double> range_max;
};

/// Depth mode renders 0-80 m; error mode renders |pred - gt| over 0-5 m.
void render_viz(const VizRequest& request);

int cmd_viz(const VizRequest& request, std::ostream& out, std::ostream& err);

}  // namespace densify::cli
