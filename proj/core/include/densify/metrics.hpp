#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "densify/depth_map.hpp"

namespace densify {

/// Depth-completion error statistics over pixels where both ground truth and
/// prediction are valid.
struct MetricsReport {
  double rmse_mm = 0.0;
  double mae_mm = 0.0;
  double irmse_invkm = 0.0;
  double imae_invkm = 0.0;
  std::size_t evaluated_pixels = 0;
  std::size_t skipped_pixels = 0;  // ground truth valid, prediction empty
};

/// Running per-pixel sums. Dataset-level metrics add every frame and finalize
/// once, so each pixel carries equal weight regardless of its frame.
class MetricsAccumulator {
 public:
  /// Throws DimensionError on mismatched sizes, EncodingError on Inverted maps.
  void add(const DepthMap& pred, const DepthMap& gt);
  void merge(const MetricsAccumulator& other);

  std::size_t evaluated_pixels() const { return count_; }

  /// Throws DegenerateInputError when no pixel was evaluated.
  MetricsReport finalize() const;

 private:
  double sq_ = 0.0;
  double abs_ = 0.0;
  double inv_sq_ = 0.0;
  double inv_abs_ = 0.0;
  std::size_t count_ = 0;
  std::size_t skipped_ = 0;
};

MetricsReport evaluate(const DepthMap& pred, const DepthMap& gt);

/// Unweighted mean of per-frame reports; pixel counts are summed.
MetricsReport average_reports(const std::vector<MetricsReport>& reports);

/// Plain scalar grid; unlike DepthMap it keeps values below the validity
/// threshold.
struct ScalarGrid {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<double> values;
};

/// |pred - gt| in meters where both are valid, 0 elsewhere.
ScalarGrid error_map(const DepthMap& pred, const DepthMap& gt);

/// "key = value" lines: rmse_mm, mae_mm, irmse_invkm, imae_invkm,
/// evaluated_pixels, skipped_pixels.
std::string to_key_value(const MetricsReport& report);
std::string csv_header();
std::string to_csv_row(const MetricsReport& report);

}  // namespace densify
