#pragma once

#include <array>
#include <functional>
#include <string>
#include <string_view>
#include <utility>

#include "densify/depth_map.hpp"
#include "densify/kernel.hpp"

namespace densify {

/// Post-fill smoothing. Combined modes run the median first.
enum class BlurMode { None, Bilateral, Median, MedianBilateral, Gaussian, MedianGaussian };

/// Full runs every stage; Partial skips top extension and the large fill and
/// keeps unobserved regions empty.
enum class FillMode { Full, Partial };

std::string_view to_string(BlurMode mode);
BlurMode parse_blur_mode(std::string_view name);
std::string_view to_string(FillMode mode);
FillMode parse_fill_mode(std::string_view name);

struct PipelineConfig {
  KernelShape dilation_shape = KernelShape::Diamond;
  int dilation_size = 5;
  int closure_size = 5;
  int small_fill_size = 7;
  int large_fill_size = 31;
  // Enough 31x31 passes to cross a 1242-px-wide frame from a single return.
  int large_fill_max_iters = 128;
  BlurMode blur_mode = BlurMode::MedianGaussian;
  int median_size = 5;
  int gaussian_size = 5;
  double gaussian_sigma = 1.1;
  int bilateral_size = 5;
  double bilateral_sigma_value = 1.5;
  double bilateral_sigma_space = 2.0;
  FillMode fill_mode = FillMode::Full;

  /// Throws ArgumentError describing the first invalid field.
  void validate() const;

  friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

enum class Stage { Invert, Dilate, Close, SmallFill, ExtendTop, LargeFill, Blur, InvertBack };
inline constexpr std::size_t kStageCount = 8;
std::string_view to_string(Stage stage);

struct StageTiming {
  Stage stage;
  double ms;
};

struct RunStats {
  std::array<StageTiming, kStageCount> stages{};
  double total_ms = 0.0;
  double input_density = 0.0;
  double output_density = 0.0;
  int large_fill_iterations = 0;
};

/// Sparse Direct map -> completed Direct map.
///
/// Throws DegenerateInputError when the input has no valid pixel,
/// EncodingError for an Inverted input, RangeError for depths >= 100 m and
/// ArgumentError for an invalid config. Working buffers are cached per thread
/// and reused by later calls on that thread.
DepthMap complete(const DepthMap& sparse, const PipelineConfig& config = {});

/// complete() plus per-stage wall-clock timings.
std::pair<DepthMap, RunStats> complete_with_stats(const DepthMap& sparse,
                                                  const PipelineConfig& config = {});

/// Called after every stage with the intermediate map (Inverted encoding
/// for all stages but the last).
using StageObserver = std::function<void(Stage, const DepthMap&)>;
DepthMap complete_observed(const DepthMap& sparse, const PipelineConfig& config,
                           const StageObserver& observer);

}  // namespace densify
