#include "densify/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <memory>
#include <vector>
#include <string>

#include "densify/error.hpp"
#include "densify/morphology.hpp"
#include "raster.hpp"

namespace densify {

namespace {

constexpr std::array<BlurMode, 6> kBlurModes = {
    BlurMode::None,     BlurMode::Bilateral,       BlurMode::Median,
    BlurMode::Gaussian, BlurMode::MedianBilateral, BlurMode::MedianGaussian};

void require_kernel_size(const char* field, int size) {
  if (size < 3 || size % 2 == 0) {
    throw ArgumentError(std::string(field) + " must be odd and >= 3, got " +
                        std::to_string(size));
  }
}

// Square kernels wider than 2 * min(w, h) + 1 are rejected by the morphology
// primitives; tiny maps get the widest kernel that still fits.
Kernel fitted_kernel(KernelShape shape, int size, std::size_t width, std::size_t height) {
  const auto limit = 2 * std::min(width, height) + 1;
  return make_kernel(shape, static_cast<int>(std::min<std::size_t>(size, limit)));
}

bool has_empty(detail::ConstPlane p) {
  const std::size_t n = p.width * p.height;
  bool empty = false;
  for (std::size_t i = 0; i < n; ++i) empty |= !is_valid_depth(p.data[i]);
  return empty;
}

// Empty pixels of `before` stay empty; valid ones stay valid, falling back to
// their pre-blur value if the blur pulled them under the threshold.
void reimpose_mask(detail::ConstPlane before, detail::Plane blurred) {
  const std::size_t n = before.width * before.height;
  for (std::size_t i = 0; i < n; ++i) {
    const double pre = before.data[i];
    const double post = blurred.data[i];
    blurred.data[i] = !is_valid_depth(pre) ? 0.0 : (is_valid_depth(post) ? post : pre);
  }
}

// Frame-sized planes and scratch kept per thread across calls: fresh
// multi-megabyte allocations cost more in page faults than the filters do.
struct Workspace {
  std::array<std::vector<double>, 3> storage;
  detail::Scratch scratch;
  std::size_t width = 0;
  std::size_t height = 0;
  bool busy = false;

  void prepare(std::size_t w, std::size_t h) {
    width = w;
    height = h;
    for (auto& b : storage) {
      if (b.size() < w * h) b.resize(w * h);
    }
  }
  detail::Plane get(int i) { return {storage[static_cast<std::size_t>(i)].data(), width, height}; }
};

Workspace& thread_workspace() {
  thread_local Workspace workspace;
  return workspace;
}

DepthMap snapshot(detail::ConstPlane p, Encoding encoding) {
  return DepthMapBuilder(p.width, p.height, encoding,
                         std::vector<double>(p.data, p.data + p.width * p.height))
      .build();
}

DepthMap run(const DepthMap& sparse, const PipelineConfig& config, RunStats* stats,
             const StageObserver* observer) {
  config.validate();
  if (sparse.encoding() != Encoding::Direct) {
    throw EncodingError("complete: input must be in the direct encoding");
  }
  const double input_density = density(sparse);
  if (input_density == 0.0) {
    throw DegenerateInputError("complete: input has no valid depth pixel");
  }

  const std::size_t w = sparse.width();
  const std::size_t h = sparse.height();
  const std::size_t n = w * h;
  const bool observed = observer && *observer;

  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto mark = start;
  std::size_t stage_index = 0;
  auto finish = [&](Stage stage, detail::ConstPlane p, Encoding encoding) {
    const auto now = Clock::now();
    if (stats) {
      stats->stages[stage_index] = {
          stage, std::chrono::duration<double, std::milli>(now - mark).count()};
    }
    ++stage_index;
    if (observed) (*observer)(stage, snapshot(p, encoding));
    mark = Clock::now();
  };

  // An observer may itself call complete(); nested runs get their own buffers.
  Workspace nested;
  Workspace& planes = thread_workspace().busy ? nested : thread_workspace();
  planes.busy = true;
  struct Release {
    Workspace& ws;
    ~Release() { ws.busy = false; }
  } release{planes};
  planes.prepare(w, h);
  detail::Scratch& scratch = planes.scratch;
  int cur = 0;
  auto other = [&](int k) { return (cur + k) % 3; };

  {
    const double* src = sparse.values().data();
    double* dst = planes.get(cur).data;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = src[i];
      if (v > kValidityThreshold && v >= kInversionOffset) {
        throw RangeError("invert: depth " + std::to_string(v) + " m is not below " +
                         std::to_string(kInversionOffset) + " m");
      }
      dst[i] = v > kValidityThreshold ? kInversionOffset - v : 0.0;
    }
  }
  finish(Stage::Invert, planes.get(cur), Encoding::Inverted);

  auto extreme = [&](const Kernel& k, detail::Extreme which) {
    const int next = other(1);
    detail::extreme_filter(planes.get(cur), planes.get(next), k, which, scratch);
    cur = next;
  };
  auto fill = [&](const Kernel& k) {
    const int next = other(1);
    detail::masked_fill(planes.get(cur), planes.get(next), k, scratch);
    cur = next;
  };

  extreme(fitted_kernel(config.dilation_shape, config.dilation_size, w, h), detail::Extreme::Max);
  finish(Stage::Dilate, planes.get(cur), Encoding::Inverted);

  const Kernel closure = fitted_kernel(KernelShape::Full, config.closure_size, w, h);
  extreme(closure, detail::Extreme::Max);
  extreme(closure, detail::Extreme::Min);
  finish(Stage::Close, planes.get(cur), Encoding::Inverted);

  fill(fitted_kernel(KernelShape::Full, config.small_fill_size, w, h));
  finish(Stage::SmallFill, planes.get(cur), Encoding::Inverted);

  int iterations = 0;
  if (config.fill_mode == FillMode::Full) {
    detail::extend_columns_up(planes.get(cur));
    finish(Stage::ExtendTop, planes.get(cur), Encoding::Inverted);

    const Kernel large = fitted_kernel(KernelShape::Full, config.large_fill_size, w, h);
    while (iterations < config.large_fill_max_iters && has_empty(planes.get(cur))) {
      fill(large);
      ++iterations;
    }
    finish(Stage::LargeFill, planes.get(cur), Encoding::Inverted);
  } else {
    finish(Stage::ExtendTop, planes.get(cur), Encoding::Inverted);
    finish(Stage::LargeFill, planes.get(cur), Encoding::Inverted);
  }

  {
    const int pre = cur;
    const bool masked = has_empty(planes.get(pre));
    const BlurMode mode = config.blur_mode;
    auto step = [&](auto&& filter) {
      const int next = cur == pre ? other(1) : (3 - pre - cur);
      filter(planes.get(cur), planes.get(next));
      if (masked) reimpose_mask(planes.get(pre), planes.get(next));
      cur = next;
    };
    if (mode == BlurMode::Median || mode == BlurMode::MedianGaussian ||
        mode == BlurMode::MedianBilateral) {
      step([&](detail::ConstPlane s, detail::Plane d) {
        detail::median(s, d, config.median_size, scratch);
      });
    }
    if (mode == BlurMode::Gaussian || mode == BlurMode::MedianGaussian) {
      const auto taps = gaussian_taps(config.gaussian_size, config.gaussian_sigma);
      step([&](detail::ConstPlane s, detail::Plane d) { detail::gaussian(s, d, taps, scratch); });
    }
    if (mode == BlurMode::Bilateral || mode == BlurMode::MedianBilateral) {
      step([&](detail::ConstPlane s, detail::Plane d) {
        detail::bilateral(s, d, config.bilateral_size, config.bilateral_sigma_value,
                          config.bilateral_sigma_space);
      });
    }
  }
  finish(Stage::Blur, planes.get(cur), Encoding::Inverted);

  std::vector<double> direct(n);
  {
    const double* src = planes.get(cur).data;
    for (std::size_t i = 0; i < n; ++i) {
      direct[i] = src[i] > kValidityThreshold ? kInversionOffset - src[i] : 0.0;
    }
  }
  DepthMap result = DepthMapBuilder(w, h, Encoding::Direct, std::move(direct)).build();
  const auto end = Clock::now();
  if (stats) {
    stats->stages[stage_index] = {
        Stage::InvertBack, std::chrono::duration<double, std::milli>(end - mark).count()};
  }
  if (observed) (*observer)(Stage::InvertBack, result);

  if (stats) {
    stats->total_ms = std::chrono::duration<double, std::milli>(end - start).count();
    stats->input_density = input_density;
    stats->output_density = density(result);
    stats->large_fill_iterations = iterations;
  }
  return result;
}

}  // namespace

std::string_view to_string(BlurMode mode) {
  switch (mode) {
    case BlurMode::None: return "none";
    case BlurMode::Bilateral: return "bilateral";
    case BlurMode::Median: return "median";
    case BlurMode::MedianBilateral: return "median-bilateral";
    case BlurMode::Gaussian: return "gaussian";
    case BlurMode::MedianGaussian: return "median-gaussian";
  }
  return "unknown";
}

BlurMode parse_blur_mode(std::string_view name) {
  for (BlurMode mode : kBlurModes) {
    if (name == to_string(mode)) return mode;
  }
  throw ArgumentError("unknown blur mode '" + std::string(name) +
                      "' (expected none, bilateral, median, median-bilateral, gaussian or "
                      "median-gaussian)");
}

std::string_view to_string(FillMode mode) {
  return mode == FillMode::Full ? "full" : "partial";
}

FillMode parse_fill_mode(std::string_view name) {
  if (name == "full") return FillMode::Full;
  if (name == "partial") return FillMode::Partial;
  throw ArgumentError("unknown fill mode '" + std::string(name) + "' (expected full or partial)");
}

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::Invert: return "invert";
    case Stage::Dilate: return "dilate";
    case Stage::Close: return "close";
    case Stage::SmallFill: return "small_fill";
    case Stage::ExtendTop: return "extend_top";
    case Stage::LargeFill: return "large_fill";
    case Stage::Blur: return "blur";
    case Stage::InvertBack: return "invert_back";
  }
  return "unknown";
}

void PipelineConfig::validate() const {
  require_kernel_size("dilation_size", dilation_size);
  require_kernel_size("closure_size", closure_size);
  require_kernel_size("small_fill_size", small_fill_size);
  require_kernel_size("large_fill_size", large_fill_size);
  require_kernel_size("median_size", median_size);
  require_kernel_size("gaussian_size", gaussian_size);
  require_kernel_size("bilateral_size", bilateral_size);
  if (large_fill_max_iters < 1) {
    throw ArgumentError("large_fill_max_iters must be >= 1");
  }
  if (!(gaussian_sigma > 0.0)) throw ArgumentError("gaussian_sigma must be positive");
  if (!(bilateral_sigma_value > 0.0)) {
    throw ArgumentError("bilateral_sigma_value must be positive");
  }
  if (!(bilateral_sigma_space > 0.0)) {
    throw ArgumentError("bilateral_sigma_space must be positive");
  }
}

DepthMap complete(const DepthMap& sparse, const PipelineConfig& config) {
  return run(sparse, config, nullptr, nullptr);
}

std::pair<DepthMap, RunStats> complete_with_stats(const DepthMap& sparse,
                                                  const PipelineConfig& config) {
  RunStats stats;
  DepthMap out = run(sparse, config, &stats, nullptr);
  return {std::move(out), stats};
}

DepthMap complete_observed(const DepthMap& sparse, const PipelineConfig& config,
                           const StageObserver& observer) {
  return run(sparse, config, nullptr, &observer);
}

}  // namespace densify
