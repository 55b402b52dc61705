// Acceptance checks, one line per criterion:
//   [PASS|FAIL|SKIP] <n> <name>: <detail>
// Exit status is nonzero when any criterion fails. The dataset checks (11,
// 12) run only when DENSIFY_KITTI_VAL points at a directory holding
// velodyne_raw/ and groundtruth_depth/.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iterator>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "commands.hpp"
#include "densify/kitti_io.hpp"
#include "densify/metrics.hpp"
#include "densify/morphology.hpp"
#include "densify/pipeline.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"
#include "temp_dir.hpp"

using namespace densify;

namespace {

enum class Verdict { Pass, Fail, Skip };

struct Outcome {
  Verdict verdict;
  std::string detail;
};

Outcome pass(std::string d) { return {Verdict::Pass, std::move(d)}; }
Outcome fail(std::string d) { return {Verdict::Fail, std::move(d)}; }
Outcome skip(std::string d) { return {Verdict::Skip, std::move(d)}; }

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

constexpr std::array<KernelShape, 4> kShapes = {KernelShape::Full, KernelShape::Circle,
                                                KernelShape::Cross, KernelShape::Diamond};
constexpr std::array<BlurMode, 6> kModes = {BlurMode::None,     BlurMode::Bilateral,
                                            BlurMode::Median,   BlurMode::MedianBilateral,
                                            BlurMode::Gaussian, BlurMode::MedianGaussian};

// ---- 1 --------------------------------------------------------------------

Outcome morphology_oracle() {
  struct Config {
    KernelShape shape;
    int size;
  };
  std::vector<Config> configs;
  for (KernelShape s : kShapes) {
    for (int size : {3, 5, 7}) configs.push_back({s, size});
  }
  configs.push_back({KernelShape::Full, 31});

  std::mt19937 rng(101);
  std::uniform_real_distribution<double> fill(0.01, 0.9);
  const int grids = 1040;
  for (int g = 0; g < grids; ++g) {
    const Config c = configs[static_cast<std::size_t>(g) % configs.size()];
    const int r = c.size / 2;
    std::uniform_int_distribution<std::size_t> dim(static_cast<std::size_t>(std::max(1, r)), 64);
    const std::size_t w = dim(rng);
    const std::size_t h = dim(rng);
    const DepthMap m = synthetic::random_map(rng, w, h, fill(rng));
    const Kernel k = make_kernel(c.shape, c.size);
    const auto where = [&](const char* op) {
      return std::string(op) + " mismatch on grid " + std::to_string(g) + " (" +
             std::string(to_string(c.shape)) + " " + std::to_string(c.size) + ", " +
             std::to_string(w) + "x" + std::to_string(h) + ")";
    };
    if (dilate(m, k) != oracle::dilate(m, c.shape, c.size)) return fail(where("dilate"));
    if (erode(m, k) != oracle::erode(m, c.shape, c.size)) return fail(where("erode"));
    if (close(m, k) != oracle::close(m, c.shape, c.size)) return fail(where("close"));
    if (masked_fill_dilate(m, k) != oracle::masked_fill(m, c.shape, c.size)) {
      return fail(where("masked_fill_dilate"));
    }
    if (median_filter(m, c.size) != oracle::median(m, c.size)) return fail(where("median"));
  }
  return pass(std::to_string(grids) + " grids up to 64x64, 13 kernel configs, 5 ops, bit-exact");
}

// ---- 2 --------------------------------------------------------------------

Outcome smoothing_oracle() {
  std::mt19937 rng(202);
  std::uniform_real_distribution<double> sigma(0.5, 3.0);
  std::uniform_int_distribution<int> half(1, 3);
  double worst_g = 0;
  double worst_b = 0;
  const int grids = 200;
  for (int g = 0; g < grids; ++g) {
    const DepthMap m = synthetic::random_map(rng, 32, 32, 0.6);
    const int size = 2 * half(rng) + 1;
    const double sg = sigma(rng);
    const double sv = sigma(rng);
    const double ss = sigma(rng);
    const DepthMap gm = gaussian_filter(m, size, sg);
    const DepthMap bm = bilateral_filter(m, size, sv, ss);
    const auto go = oracle::gaussian_2d(m, size, sg);
    const auto bo = oracle::bilateral(m, size, sv, ss);
    for (std::size_t i = 0; i < m.size(); ++i) {
      // A DepthMap stores values at or below the validity threshold as 0.
      const double gw = go[i] > kValidityThreshold ? go[i] : 0.0;
      const double bw = bo[i] > kValidityThreshold ? bo[i] : 0.0;
      if (gw != 0.0) worst_g = std::max(worst_g, std::abs(gm.values()[i] - gw) / std::abs(gw));
      else if (gm.values()[i] != 0.0) worst_g = 1.0;
      if (bw != 0.0) worst_b = std::max(worst_b, std::abs(bm.values()[i] - bw) / std::abs(bw));
      else if (bm.values()[i] != 0.0) worst_b = 1.0;
    }
  }
  const std::string detail =
      fmt("%.0f grids 32x32; worst relative error gaussian %.3g, bilateral %.3g", grids, worst_g,
          worst_b);
  return worst_g <= 1e-5 && worst_b <= 1e-5 ? pass(detail) : fail(detail);
}

// ---- 3, 4 -----------------------------------------------------------------

struct RandomCase {
  DepthMap input;
  PipelineConfig config;
};

std::vector<RandomCase> random_cases() {
  std::mt19937 rng(303);
  std::uniform_int_distribution<std::size_t> dim(1, 160);
  std::uniform_real_distribution<double> fill(0.01, 0.3);
  std::uniform_int_distribution<int> pick_shape(0, 3);
  std::uniform_int_distribution<int> pick_mode(0, 5);
  std::uniform_int_distribution<int> pick_size(1, 3);
  std::vector<RandomCase> cases;
  while (cases.size() < 1000) {
    const std::size_t w = dim(rng);
    const std::size_t h = dim(rng);
    DepthMap m = synthetic::random_map(rng, w, h, fill(rng));
    if (density(m) < 0.01) continue;
    PipelineConfig c;
    // Half the cases keep the defaults, the rest vary shape, size and blur.
    if (cases.size() % 2 == 1) {
      c.dilation_shape = kShapes[static_cast<std::size_t>(pick_shape(rng))];
      c.dilation_size = 2 * pick_size(rng) + 1;
      c.blur_mode = kModes[static_cast<std::size_t>(pick_mode(rng))];
    }
    cases.push_back({std::move(m), c});
  }
  return cases;
}

Outcome pipeline_density(const std::vector<RandomCase>& cases) {
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const DepthMap out = complete(cases[i].input, cases[i].config);
    if (density(out) != 1.0) {
      return fail("case " + std::to_string(i) + " (" + std::to_string(out.width()) + "x" +
                  std::to_string(out.height()) + ") density " + std::to_string(density(out)));
    }
  }
  DepthMap single(1242, 375);
  single.set(621, 200, 42.0);
  const auto [out, stats] = complete_with_stats(single);
  if (density(out) != 1.0) return fail("single valid pixel at 1242x375 not filled");
  return pass(std::to_string(cases.size()) + " random inputs plus single pixel at 1242x375 (" +
              std::to_string(stats.large_fill_iterations) + " large-fill passes)");
}

Outcome range_envelope(const std::vector<RandomCase>& cases) {
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const DepthMap& in = cases[i].input;
    double lo = 1e300;
    double hi = -1e300;
    for (double v : in.values()) {
      if (is_valid_depth(v)) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
    const DepthMap out = complete(in, cases[i].config);
    for (double v : out.values()) {
      if (v < lo || v > hi) {
        return fail("case " + std::to_string(i) + ": " + fmt("%.17g outside [%.17g, %.17g]", v, lo, hi));
      }
    }
  }
  return pass(std::to_string(cases.size()) + " Full-mode outputs inside input [min, max], exact");
}

// ---- 5 --------------------------------------------------------------------

bool keeps_valid(const DepthMap& before, const DepthMap& after) {
  for (std::size_t i = 0; i < before.size(); ++i) {
    if (is_valid_depth(before.values()[i]) && after.values()[i] != before.values()[i]) return false;
  }
  return true;
}

Outcome valid_preservation() {
  std::mt19937 rng(505);
  std::uniform_int_distribution<std::size_t> dim(8, 120);
  std::uniform_real_distribution<double> fill(0.01, 0.5);
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    const DepthMap m = synthetic::random_map(rng, dim(rng), dim(rng), fill(rng));
    for (int size : {3, 5, 7}) {
      const Kernel k = make_kernel(KernelShape::Full, size);
      if (static_cast<std::size_t>(size) > 2 * std::min(m.width(), m.height()) + 1) continue;
      if (!keeps_valid(m, masked_fill_dilate(m, k))) return fail("masked_fill_dilate changed a valid pixel");
    }
    if (density(m) == 0.0) continue;

    // Pipeline fill stages, observed in place.
    std::vector<DepthMap> seen;
    complete_observed(m, {}, [&](Stage, const DepthMap& s) { seen.push_back(s); });
    const auto stage = [&](Stage s) { return seen[static_cast<std::size_t>(s)]; };
    if (!keeps_valid(stage(Stage::Close), stage(Stage::SmallFill)) ||
        !keeps_valid(stage(Stage::ExtendTop), stage(Stage::LargeFill))) {
      return fail("a pipeline fill stage changed a valid pixel (case " + std::to_string(i) + ")");
    }

    for (BlurMode mode : kModes) {
      PipelineConfig c;
      c.fill_mode = FillMode::Partial;
      c.blur_mode = mode;
      const DepthMap out = complete(m, c);
      for (std::size_t p = 0; p < m.size(); ++p) {
        if (is_valid_depth(m.values()[p]) && !is_valid_depth(out.values()[p])) {
          return fail("Partial mode (" + std::string(to_string(mode)) + ") lost a valid pixel");
        }
      }
    }
    ++checked;
  }
  return pass(std::to_string(checked) +
              " maps: masked fills exact on valid pixels, Partial mask superset of input");
}

// ---- 6 --------------------------------------------------------------------

Outcome involution() {
  std::mt19937 rng(606);
  std::uniform_int_distribution<std::size_t> dim(1, 200);
  for (int i = 0; i < 500; ++i) {
    const DepthMap m = synthetic::random_map(rng, dim(rng), dim(rng), 0.5, 0.11f, 99.89f);
    if (invert_back(invert(m)) != m) return fail("round trip differs on map " + std::to_string(i));
  }
  return pass("500 random maps, bit-exact");
}

// ---- 7 --------------------------------------------------------------------

Outcome metrics_oracle() {
  const MetricsReport r = evaluate(DepthMap(2, 1, {2.0, 4.0}), DepthMap(2, 1, {1.0, 5.0}));
  if (std::abs(r.rmse_mm - 1000) > 1e-9 || std::abs(r.mae_mm - 1000) > 1e-9 ||
      std::abs(r.imae_invkm - 275) > 1e-9 || std::abs(r.irmse_invkm - 355.317) > 5e-4) {
    return fail(fmt("two-pixel example gave rmse %.6f mae %.6f irmse %.6f imae %.6f", r.rmse_mm,
                    r.mae_mm, r.irmse_invkm, r.imae_invkm));
  }
  std::mt19937 rng(707);
  std::uniform_int_distribution<std::size_t> dim(1, 40);
  int pairs = 0;
  while (pairs < 1000) {
    const std::size_t w = dim(rng);
    const std::size_t h = dim(rng);
    const DepthMap pred = synthetic::random_map(rng, w, h, 0.8);
    const DepthMap gt = synthetic::random_map(rng, w, h, 0.5);
    if (oracle::metrics(pred, gt).count == 0) continue;
    const MetricsReport m = evaluate(pred, gt);
    if (m.rmse_mm < m.mae_mm) return fail("RMSE < MAE on pair " + std::to_string(pairs));
    ++pairs;
  }
  return pass(fmt("two-pixel example (irmse %.3f) and RMSE >= MAE on %.0f random pairs",
                  r.irmse_invkm, pairs));
}

// ---- 8 --------------------------------------------------------------------

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome determinism() {
  TempDir dir;
  std::filesystem::create_directories(dir / "in");
  for (unsigned i = 0; i < 16; ++i) {
    write_depth_png(synthetic::kitti_like_frame(i + 1, 400, 150),
                    dir / ("in/frame_" + std::to_string(i) + ".png"));
  }
  const auto one = cli::complete_batch({dir / "in", dir / "one", {}, 1});
  const auto eight = cli::complete_batch({dir / "in", dir / "eight", {}, 8});
  if (one.size() != 16 || eight.size() != 16) return fail("missing outputs");
  for (std::size_t i = 0; i < one.size(); ++i) {
    if (!one[i].ok || !eight[i].ok) return fail("frame failed: " + one[i].error + eight[i].error);
    if (slurp(one[i].output) != slurp(eight[i].output)) {
      return fail(one[i].output.filename().string() + " differs between 1 and 8 threads");
    }
  }
  return pass("16 frames byte-identical at 1 vs 8 threads");
}

// ---- 9 --------------------------------------------------------------------

Outcome codec() {
  TempDir dir;
  std::mt19937 rng(909);
  std::uniform_int_distribution<int> raw_value(0, 65535);
  std::uniform_int_distribution<std::size_t> dim(1, 300);
  double worst = 0;
  for (int i = 0; i < 40; ++i) {
    RawDepthImage raw{dim(rng), dim(rng), {}};
    for (std::size_t p = 0; p < raw.width * raw.height; ++p) {
      raw.pixels.push_back(static_cast<std::uint16_t>(raw_value(rng)));
    }
    write_png16(raw, dir / "raw.png");
    if (read_png16(dir / "raw.png") != raw) return fail("raw round trip differs");

    const DepthMap m = synthetic::random_map(rng, raw.width, raw.height, 0.3, 0.11f, 255.9f);
    write_depth_png(m, dir / "depth.png");
    const DepthMap back = read_depth_png(dir / "depth.png");
    for (std::size_t p = 0; p < m.size(); ++p) {
      worst = std::max(worst, std::abs(back.values()[p] - m.values()[p]));
    }
  }
  const std::string detail = fmt("40 images: raw exact, worst depth error %.6f m", worst);
  return worst <= 1.0 / 512.0 ? pass(detail) : fail(detail);
}

// ---- 10 -------------------------------------------------------------------

Outcome runtime() {
  const DepthMap frame = synthetic::kitti_like_frame(1010);
  for (int i = 0; i < 3; ++i) (void)complete(frame);
  std::vector<double> ms;
  for (int i = 0; i < 20; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    const DepthMap out = complete(frame);
    ms.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
  }
  std::sort(ms.begin(), ms.end());
  const double median = ms[ms.size() / 2];
  double mean = 0;
  for (double v : ms) mean += v;
  mean /= static_cast<double>(ms.size());
  const std::string detail = fmt("1242x375 default config, single thread: median %.2f ms, mean %.2f ms, min %.2f ms (limit 30 ms)", median, mean, ms.front());
  return median <= 30.0 ? pass(detail) : fail(detail);
}

// ---- 11, 12 ---------------------------------------------------------------

struct Dataset {
  std::filesystem::path raw;
  std::filesystem::path gt;
};

std::optional<Dataset> kitti_val() {
  const char* root = std::getenv("DENSIFY_KITTI_VAL");
  if (!root || !*root) return std::nullopt;
  Dataset d{std::filesystem::path(root) / "velodyne_raw",
            std::filesystem::path(root) / "groundtruth_depth"};
  if (!std::filesystem::is_directory(d.raw) || !std::filesystem::is_directory(d.gt)) {
    return std::nullopt;
  }
  return d;
}

bool within(double got, double want, double tol = 0.05) {
  return std::abs(got - want) <= tol * want;
}

std::vector<cli::SweepRow> sweep(const Dataset& d, const cli::SweepSpec& spec) {
  cli::SweepRequest req;
  req.input_dir = d.raw;
  req.gt_dir = d.gt;
  req.spec = spec;
  req.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return cli::run_sweep(req);
}

Outcome kitti_default(const std::optional<Dataset>& d) {
  if (!d) return skip("set DENSIFY_KITTI_VAL to the depth-completion val selection");
  const auto rows = sweep(*d, cli::SweepSpec{});
  const MetricsReport& m = rows.at(0).metrics;
  const std::string detail = fmt("%.0f frames: RMSE %.2f mm (1350.93), MAE %.2f mm (305.35)",
                                 static_cast<double>(rows[0].frames), m.rmse_mm, m.mae_mm);
  return within(m.rmse_mm, 1350.93) && within(m.mae_mm, 305.35) ? pass(detail) : fail(detail);
}

Outcome kitti_ablation(const std::optional<Dataset>& d) {
  if (!d) return skip("set DENSIFY_KITTI_VAL to the depth-completion val selection");
  std::ostringstream detail;
  bool ok = true;
  auto check = [&](const std::vector<cli::SweepRow>& rows, const std::vector<double>& want,
                   const char* label) {
    detail << label << ":";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      detail << ' ' << fmt("%.2f", rows[i].metrics.rmse_mm);
      ok = ok && within(rows[i].metrics.rmse_mm, want[i]);
    }
    detail << "; ";
  };
  auto rmse = [](const std::vector<cli::SweepRow>& rows, std::size_t i) {
    return rows[i].metrics.rmse_mm;
  };

  // Rows follow the preset order: sizes 3,5,7; shapes full,circle,cross,diamond;
  // blurs none,bilateral,median,median-bilateral,gaussian,median-gaussian.
  const auto sizes = sweep(*d, cli::sweep_preset("kernel-size"));
  check(sizes, {1649.97, 1545.85, 1720.79}, "size 3/5/7");
  ok = ok && rmse(sizes, 1) < rmse(sizes, 0) && rmse(sizes, 0) < rmse(sizes, 2);

  const auto shapes = sweep(*d, cli::sweep_preset("kernel-shape"));
  check(shapes, {1545.85, 1528.45, 1521.95, 1512.18}, "full/circle/cross/diamond");
  ok = ok && rmse(shapes, 3) < rmse(shapes, 2) && rmse(shapes, 2) < rmse(shapes, 1) &&
       rmse(shapes, 1) < rmse(shapes, 0);

  const auto blurs = sweep(*d, cli::sweep_preset("blur"));
  check(blurs, {1512.18, 1511.80, 1461.54, 1456.69, 1360.06, 1350.93},
        "none/bil/med/med-bil/gauss/med-gauss");
  const double none = rmse(blurs, 0), bil = rmse(blurs, 1), med = rmse(blurs, 2),
               med_bil = rmse(blurs, 3), gauss = rmse(blurs, 4), med_gauss = rmse(blurs, 5);
  // "Bilateral ~ no blur": both above Median and within 1% of each other.
  ok = ok && med_gauss < gauss && gauss < med_bil && med_bil < med && med < std::min(bil, none) &&
       std::abs(bil - none) <= 0.01 * none;
  return ok ? pass(detail.str()) : fail(detail.str());
}

}  // namespace

int main() {
  const auto cases = random_cases();
  const auto dataset = kitti_val();
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"morphology matches brute-force oracle", morphology_oracle},
      {"gaussian and bilateral match direct sums", smoothing_oracle},
      {"full-mode output is dense", [&] { return pipeline_density(cases); }},
      {"output inside input depth range", [&] { return range_envelope(cases); }},
      {"valid pixels preserved", valid_preservation},
      {"inversion round trip", involution},
      {"metrics oracle", metrics_oracle},
      {"thread-count determinism", determinism},
      {"16-bit PNG codec round trip", codec},
      {"single-thread frame time", runtime},
      {"KITTI val default config", [&] { return kitti_default(dataset); }},
      {"KITTI val ablation ordering", [&] { return kitti_ablation(dataset); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    const char* tag = o.verdict == Verdict::Pass ? "PASS" : o.verdict == Verdict::Fail ? "FAIL" : "SKIP";
    std::printf("[%s] %2zu %s: %s\n", tag, i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
    failures += o.verdict == Verdict::Fail;
  }
  return failures == 0 ? 0 : 1;
}
