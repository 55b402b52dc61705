#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config_document.hpp"
#include "densify/error.hpp"

namespace {

using densify::PipelineConfig;
namespace cli = densify::cli;

/// Pipeline flags shared by complete, sweep and bench: --config FILE plus one
/// flag per config key. Flags override values from the file.
struct ConfigFlags {
  std::string file;
  std::vector<std::pair<std::string, std::string>> overrides;

  void attach(CLI::App* app) {
    app->add_option("--config", file, "Key-value pipeline config file")->check(CLI::ExistingFile);
    for (const auto& key : cli::config_keys()) {
      app->add_option_function<std::string>(
          cli::flag_name(key),
          [this, key](const std::string& value) { overrides.emplace_back(key, value); },
          "Override config key " + key);
    }
  }

  PipelineConfig resolve() const {
    PipelineConfig config = file.empty() ? PipelineConfig{} : cli::load_config_file(file);
    for (const auto& [key, value] : overrides) cli::apply_config_value(config, key, value);
    config.validate();
    return config;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"densify: CPU depth completion for sparse LIDAR depth maps"};
  app.require_subcommand(1);

  // complete
  cli::CompleteRequest complete_req;
  ConfigFlags complete_flags;
  auto* complete = app.add_subcommand("complete", "Complete sparse depth PNGs");
  complete->add_option("input", complete_req.input, "Sparse depth PNG or directory")->required();
  complete->add_option("output_dir", complete_req.output_dir, "Output directory")->required();
  complete->add_option("-j,--jobs", complete_req.jobs, "Frames processed in parallel")
      ->check(CLI::PositiveNumber);
  complete_flags.attach(complete);

  // eval
  cli::EvalRequest eval_req;
  std::string eval_csv;
  auto* eval = app.add_subcommand("eval", "Evaluate predictions against ground truth");
  eval->add_option("pred_dir", eval_req.pred_dir, "Prediction directory")->required();
  eval->add_option("gt_dir", eval_req.gt_dir, "Ground-truth directory")->required();
  eval->add_option("--per-frame-csv", eval_csv, "Write per-frame metrics to this CSV");
  eval->add_flag("--per-frame-average", eval_req.per_frame_average,
                 "Average per-frame metrics instead of aggregating per pixel");

  // sweep
  cli::SweepRequest sweep_req;
  ConfigFlags sweep_flags;
  std::string preset;
  std::vector<int> sizes;
  std::vector<std::string> shapes;
  std::vector<std::string> blurs;
  std::string sweep_csv;
  auto* sweep = app.add_subcommand("sweep", "Ablation sweep over kernel size, shape and blur");
  sweep->add_option("input_dir", sweep_req.input_dir, "Sparse input directory")->required();
  sweep->add_option("gt_dir", sweep_req.gt_dir, "Ground-truth directory")->required();
  sweep->add_option("--preset", preset, "kernel-size, kernel-shape or blur");
  sweep->add_option("--sizes", sizes, "Dilation kernel sizes")->delimiter(',');
  sweep->add_option("--shapes", shapes, "Dilation kernel shapes")->delimiter(',');
  sweep->add_option("--blur-modes", blurs, "Blur modes")->delimiter(',');
  sweep->add_option("--max-frames", sweep_req.max_frames, "Use at most this many frames");
  sweep->add_option("-o,--output", sweep_csv, "Also write the CSV to this file");
  sweep->add_option("-j,--jobs", sweep_req.jobs, "Frames processed in parallel")
      ->check(CLI::PositiveNumber);
  sweep_flags.attach(sweep);

  // bench
  cli::BenchRequest bench_req;
  ConfigFlags bench_flags;
  auto* bench = app.add_subcommand("bench", "Time the pipeline per stage");
  bench->add_option("input", bench_req.input, "Sparse depth PNG or directory")->required();
  bench->add_option("-n,--repetitions", bench_req.repetitions, "Timed passes")
      ->check(CLI::PositiveNumber);
  bench_flags.attach(bench);

  // viz
  cli::VizRequest viz_req;
  std::string viz_mode = "depth";
  std::string viz_gt;
  double range_min = 0.0;
  double range_max = 0.0;
  auto* viz = app.add_subcommand("viz", "Render a depth or error map as a color PNG");
  viz->add_option("input", viz_req.input, "Depth PNG (prediction in error mode)")->required();
  viz->add_option("output", viz_req.output, "Output RGB PNG")->required();
  viz->add_option("--mode", viz_mode, "depth or error")
      ->check(CLI::IsMember({"depth", "error"}));
  viz->add_option("--gt", viz_gt, "Ground truth (error mode)");
  auto* min_opt = viz->add_option("--range-min", range_min, "Value mapped to blue");
  auto* max_opt = viz->add_option("--range-max", range_max, "Value mapped to red");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*complete) {
      complete_req.config = complete_flags.resolve();
      return cli::cmd_complete(complete_req, std::cout, std::cerr);
    }
    if (*eval) {
      if (!eval_csv.empty()) eval_req.per_frame_csv = eval_csv;
      return cli::cmd_eval(eval_req, std::cout, std::cerr);
    }
    if (*sweep) {
      sweep_req.base = sweep_flags.resolve();
      if (!preset.empty()) sweep_req.spec = cli::sweep_preset(preset);
      if (!sizes.empty()) sweep_req.spec.sizes = sizes;
      if (!shapes.empty()) {
        sweep_req.spec.shapes.clear();
        for (const auto& s : shapes) sweep_req.spec.shapes.push_back(densify::parse_kernel_shape(s));
      }
      if (!blurs.empty()) {
        sweep_req.spec.blur_modes.clear();
        for (const auto& b : blurs) sweep_req.spec.blur_modes.push_back(densify::parse_blur_mode(b));
      }
      std::optional<std::filesystem::path> csv;
      if (!sweep_csv.empty()) csv = sweep_csv;
      return cli::cmd_sweep(sweep_req, csv, std::cout, std::cerr);
    }
    if (*bench) {
      bench_req.config = bench_flags.resolve();
      return cli::cmd_bench(bench_req, std::cout, std::cerr);
    }
    if (*viz) {
      viz_req.mode = viz_mode == "error" ? cli::VizMode::Error : cli::VizMode::Depth;
      if (!viz_gt.empty()) viz_req.gt = viz_gt;
      if (min_opt->count() > 0) viz_req.range_min = range_min;
      if (max_opt->count() > 0) viz_req.range_max = range_max;
      return cli::cmd_viz(viz_req, std::cout, std::cerr);
    }
  } catch (const densify::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
