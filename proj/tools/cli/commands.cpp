#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <thread>

#include "densify/error.hpp"
#include "densify/morphology.hpp"

namespace densify::cli {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string fixed(double v, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

/// Runs fn(i) for i in [0, n) on up to `jobs` threads.
template <class Fn>
void parallel_for(std::size_t n, int jobs, Fn fn) {
  const auto workers = static_cast<std::size_t>(std::max(1, jobs));
  if (workers == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < std::min(workers, n); ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

// ---- complete -------------------------------------------------------------

std::vector<FrameResult> complete_batch(const CompleteRequest& request) {
  request.config.validate();
  const auto inputs = list_depth_pngs(request.input);
  std::error_code ec;
  fs::create_directories(request.output_dir, ec);
  if (!fs::is_directory(request.output_dir)) {
    throw IoError("cannot create output directory '" + request.output_dir.string() + "'");
  }

  std::vector<FrameResult> results(inputs.size());
  parallel_for(inputs.size(), request.jobs, [&](std::size_t i) {
    FrameResult& r = results[i];
    r.input = inputs[i];
    r.output = request.output_dir / inputs[i].filename();
    try {
      auto t0 = Clock::now();
      const DepthMap sparse = read_depth_png(r.input);
      r.read_ms = ms_since(t0);
      auto [dense, stats] = complete_with_stats(sparse, request.config);
      r.stats = stats;
      t0 = Clock::now();
      write_depth_png(dense, r.output);
      r.write_ms = ms_since(t0);
      r.ok = true;
    } catch (const std::exception& e) {
      r.error = e.what();
    }
  });
  return results;
}

int cmd_complete(const CompleteRequest& request, std::ostream& out, std::ostream& err) {
  std::vector<FrameResult> results;
  try {
    results = complete_batch(request);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  if (results.empty()) {
    err << "error: no .png inputs found in '" << request.input.string() << "'\n";
    return 1;
  }
  std::size_t failed = 0;
  double pipeline_ms = 0.0;
  double io_ms = 0.0;
  for (const auto& r : results) {
    const std::string name = r.input.filename().string();
    if (!r.ok) {
      ++failed;
      err << name << ": FAILED: " << r.error << '\n';
      continue;
    }
    pipeline_ms += r.stats.total_ms;
    io_ms += r.read_ms + r.write_ms;
    out << name << ": " << fixed(r.stats.total_ms) << " ms, density "
        << fixed(r.stats.input_density, 4) << " -> " << fixed(r.stats.output_density, 4) << '\n';
  }
  const std::size_t done = results.size() - failed;
  if (done > 0) {
    out << "completed " << done << "/" << results.size() << " frames, "
        << fixed(pipeline_ms / static_cast<double>(done)) << " ms/frame pipeline, "
        << fixed(io_ms / static_cast<double>(done)) << " ms/frame I/O\n";
  }
  return failed == 0 ? 0 : 1;
}

// ---- eval -----------------------------------------------------------------

EvalResult evaluate_dirs(const EvalRequest& request) {
  EvalResult result;
  result.listing = enumerate_pairs(request.pred_dir, request.gt_dir, kitti_pair_key);
  MetricsAccumulator total;
  std::vector<MetricsReport> per_frame;
  for (const auto& pair : result.listing.pairs) {
    const std::string name = pair.pred.filename().string();
    try {
      const DepthMap pred = read_depth_png(pair.pred);
      const DepthMap gt = read_depth_png(pair.gt);
      MetricsAccumulator frame;
      frame.add(pred, gt);
      total.merge(frame);
      if (frame.evaluated_pixels() > 0) {
        result.frames.push_back({name, frame.finalize()});
        per_frame.push_back(result.frames.back().report);
      }
    } catch (const std::exception& e) {
      result.failures.push_back(name + ": " + e.what());
    }
  }
  if (total.evaluated_pixels() > 0) {
    result.aggregate = request.per_frame_average ? average_reports(per_frame) : total.finalize();
  }
  return result;
}

int cmd_eval(const EvalRequest& request, std::ostream& out, std::ostream& err) {
  EvalResult result;
  try {
    result = evaluate_dirs(request);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  for (const auto& p : result.listing.unmatched_pred) {
    err << "warning: no ground truth for " << p.filename().string() << '\n';
  }
  for (const auto& p : result.listing.unmatched_gt) {
    err << "warning: no prediction for " << p.filename().string() << '\n';
  }
  for (const auto& f : result.failures) err << "error: " << f << '\n';

  if (request.per_frame_csv) {
    std::ofstream csv(*request.per_frame_csv);
    if (!csv) {
      err << "error: cannot write '" << request.per_frame_csv->string() << "'\n";
      return 1;
    }
    csv << "name," << csv_header() << '\n';
    for (const auto& f : result.frames) csv << f.name << ',' << to_csv_row(f.report) << '\n';
  }
  if (result.frames.empty()) {
    err << "error: no pixel was valid in both prediction and ground truth\n";
    return 1;
  }
  out << "frames = " << result.frames.size() << '\n'
      << "aggregation = " << (request.per_frame_average ? "per_frame" : "per_pixel") << '\n'
      << to_key_value(result.aggregate);
  return result.failures.empty() ? 0 : 1;
}

// ---- sweep ----------------------------------------------------------------

SweepSpec sweep_preset(std::string_view name) {
  if (name == "kernel-size") {
    return {{3, 5, 7}, {KernelShape::Full}, {BlurMode::None}};
  }
  if (name == "kernel-shape") {
    return {{5},
            {KernelShape::Full, KernelShape::Circle, KernelShape::Cross, KernelShape::Diamond},
            {BlurMode::None}};
  }
  if (name == "blur") {
    return {{5},
            {KernelShape::Diamond},
            {BlurMode::None, BlurMode::Bilateral, BlurMode::Median, BlurMode::MedianBilateral,
             BlurMode::Gaussian, BlurMode::MedianGaussian}};
  }
  throw ArgumentError("unknown sweep preset '" + std::string(name) +
                      "' (expected kernel-size, kernel-shape or blur)");
}

void validate_sweep(const SweepSpec& spec) {
  if (spec.sizes.empty() || spec.shapes.empty() || spec.blur_modes.empty()) {
    throw ArgumentError("sweep axes must not be empty");
  }
  for (int s : spec.sizes) {
    if (s != 3 && s != 5 && s != 7) {
      throw ArgumentError("sweep kernel size " + std::to_string(s) + " not in {3, 5, 7}");
    }
  }
}

std::vector<SweepRow> run_sweep(const SweepRequest& request) {
  validate_sweep(request.spec);
  PairListing listing = enumerate_pairs(request.input_dir, request.gt_dir, kitti_pair_key);
  auto& pairs = listing.pairs;
  if (request.max_frames > 0 && pairs.size() > request.max_frames) {
    pairs.resize(request.max_frames);
  }

  std::vector<SweepRow> rows;
  for (int size : request.spec.sizes) {
    for (KernelShape shape : request.spec.shapes) {
      for (BlurMode blur : request.spec.blur_modes) {
        PipelineConfig config = request.base;
        config.dilation_size = size;
        config.dilation_shape = shape;
        config.blur_mode = blur;
        config.validate();

        std::vector<MetricsAccumulator> acc(pairs.size());
        std::vector<double> runtime(pairs.size(), 0.0);
        std::vector<std::string> errors(pairs.size());
        parallel_for(pairs.size(), request.jobs, [&](std::size_t i) {
          try {
            const DepthMap sparse = read_depth_png(pairs[i].pred);
            const DepthMap gt = read_depth_png(pairs[i].gt);
            auto [dense, stats] = complete_with_stats(sparse, config);
            runtime[i] = stats.total_ms;
            acc[i].add(dense, gt);
          } catch (const std::exception& e) {
            errors[i] = pairs[i].pred.filename().string() + ": " + e.what();
          }
        });
        for (const auto& e : errors) {
          if (!e.empty()) throw Error("sweep failed on " + e);
        }
        MetricsAccumulator total;
        for (const auto& a : acc) total.merge(a);
        SweepRow row;
        row.config = config;
        row.metrics = total.finalize();
        row.frames = pairs.size();
        row.mean_runtime_ms =
            std::accumulate(runtime.begin(), runtime.end(), 0.0) / static_cast<double>(pairs.size());
        rows.push_back(row);
      }
    }
  }
  return rows;
}

std::string sweep_csv_header() {
  return "dilation_shape,dilation_size,blur_mode,rmse_mm,mae_mm,irmse_invkm,imae_invkm,"
         "mean_runtime_ms";
}

std::string sweep_csv_row(const SweepRow& row) {
  std::string out;
  out += to_string(row.config.dilation_shape);
  out += ',' + std::to_string(row.config.dilation_size) + ',';
  out += to_string(row.config.blur_mode);
  out += ',' + fixed(row.metrics.rmse_mm) + ',' + fixed(row.metrics.mae_mm) + ',' +
         fixed(row.metrics.irmse_invkm) + ',' + fixed(row.metrics.imae_invkm) + ',' +
         fixed(row.mean_runtime_ms);
  return out;
}

int cmd_sweep(const SweepRequest& request, const std::optional<fs::path>& csv_path,
              std::ostream& out, std::ostream& err) {
  std::vector<SweepRow> rows;
  try {
    rows = run_sweep(request);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  std::ostringstream csv;
  csv << sweep_csv_header() << '\n';
  for (const auto& row : rows) csv << sweep_csv_row(row) << '\n';
  if (csv_path) {
    std::ofstream file(*csv_path);
    if (!file) {
      err << "error: cannot write '" << csv_path->string() << "'\n";
      return 1;
    }
    file << csv.str();
  }
  out << csv.str();
  return 0;
}

// ---- bench ----------------------------------------------------------------

TimingSummary summarize(std::string label, std::vector<double> samples) {
  TimingSummary s;
  s.label = std::move(label);
  if (samples.empty()) return s;
  std::sort(samples.begin(), samples.end());
  const auto rank = [&](double q) {
    const auto k = static_cast<std::size_t>(std::ceil(q * static_cast<double>(samples.size())));
    return samples[std::clamp<std::size_t>(k, 1, samples.size()) - 1];
  };
  s.mean_ms = std::accumulate(samples.begin(), samples.end(), 0.0) /
              static_cast<double>(samples.size());
  s.p50_ms = rank(0.5);
  s.p95_ms = rank(0.95);
  return s;
}

BenchReport run_bench(const BenchRequest& request) {
  if (request.repetitions < 1) throw ArgumentError("repetitions must be >= 1");
  request.config.validate();
  const auto inputs = list_depth_pngs(request.input);
  if (inputs.empty()) throw IoError("no .png inputs in '" + request.input.string() + "'");

  std::vector<DepthMap> frames;
  std::vector<double> io;
  for (const auto& p : inputs) {
    const auto t0 = Clock::now();
    frames.push_back(read_depth_png(p));
    io.push_back(ms_since(t0));
  }
  for (const auto& f : frames) (void)complete(f, request.config);  // warm-up

  std::array<std::vector<double>, kStageCount> stage_samples;
  std::vector<double> totals;
  for (int rep = 0; rep < request.repetitions; ++rep) {
    for (const auto& f : frames) {
      const auto stats = complete_with_stats(f, request.config).second;
      for (std::size_t s = 0; s < kStageCount; ++s) stage_samples[s].push_back(stats.stages[s].ms);
      totals.push_back(stats.total_ms);
    }
  }

  BenchReport report;
  for (std::size_t s = 0; s < kStageCount; ++s) {
    report.stages.push_back(
        summarize(std::string(to_string(static_cast<Stage>(s))), std::move(stage_samples[s])));
  }
  report.total = summarize("total", totals);
  report.io = summarize("png_read", std::move(io));
  report.frames = frames.size();
  report.samples = totals.size();
  report.frames_per_second = report.total.mean_ms > 0.0 ? 1000.0 / report.total.mean_ms : 0.0;
  return report;
}

std::string format_bench(const BenchReport& r) {
  std::ostringstream out;
  out << "frames = " << r.frames << ", samples = " << r.samples << '\n';
  out << "stage            mean_ms    p50_ms    p95_ms\n";
  auto line = [&](const TimingSummary& s) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%-14s %9.3f %9.3f %9.3f\n", s.label.c_str(), s.mean_ms,
                  s.p50_ms, s.p95_ms);
    out << buf;
  };
  for (const auto& s : r.stages) line(s);
  line(r.total);
  line(r.io);
  out << "frames_per_second = " << fixed(r.frames_per_second, 1) << '\n';
  return out.str();
}

int cmd_bench(const BenchRequest& request, std::ostream& out, std::ostream& err) {
  try {
    out << format_bench(run_bench(request));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

// ---- viz ------------------------------------------------------------------

void render_viz(const VizRequest& request) {
  const DepthMap input = read_depth_png(request.input);
  if (request.mode == VizMode::Depth) {
    write_colormap_png(input, request.output, request.range_min.value_or(0.0),
                       request.range_max.value_or(80.0));
    return;
  }
  if (!request.gt) throw ArgumentError("error mode needs a ground-truth map (--gt)");
  const DepthMap gt = read_depth_png(*request.gt);
  write_colormap_png(error_map(input, gt), request.output, request.range_min.value_or(0.0),
                     request.range_max.value_or(5.0));
}

int cmd_viz(const VizRequest& request, std::ostream& out, std::ostream& err) {
  try {
    render_viz(request);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  out << "wrote " << request.output.string() << '\n';
  return 0;
}

}  // namespace densify::cli
