#include "densify/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "densify/error.hpp"

namespace densify {

namespace {

void check_pair(const DepthMap& pred, const DepthMap& gt) {
  if (pred.width() != gt.width() || pred.height() != gt.height()) {
    throw DimensionError("prediction is " + std::to_string(pred.width()) + "x" +
                         std::to_string(pred.height()) + " but ground truth is " +
                         std::to_string(gt.width()) + "x" + std::to_string(gt.height()));
  }
  if (pred.encoding() != Encoding::Direct || gt.encoding() != Encoding::Direct) {
    throw EncodingError("metrics require direct-encoded maps");
  }
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

void MetricsAccumulator::add(const DepthMap& pred, const DepthMap& gt) {
  check_pair(pred, gt);
  const auto p = pred.values();
  const auto g = gt.values();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!is_valid_depth(g[i])) continue;
    if (!is_valid_depth(p[i])) {
      ++skipped_;
      continue;
    }
    const double d = p[i] - g[i];
    const double inv = 1.0 / p[i] - 1.0 / g[i];
    sq_ += d * d;
    abs_ += std::abs(d);
    inv_sq_ += inv * inv;
    inv_abs_ += std::abs(inv);
    ++count_;
  }
}

void MetricsAccumulator::merge(const MetricsAccumulator& other) {
  sq_ += other.sq_;
  abs_ += other.abs_;
  inv_sq_ += other.inv_sq_;
  inv_abs_ += other.inv_abs_;
  count_ += other.count_;
  skipped_ += other.skipped_;
}

MetricsReport MetricsAccumulator::finalize() const {
  if (count_ == 0) {
    throw DegenerateInputError("no pixel is valid in both prediction and ground truth");
  }
  const auto n = static_cast<double>(count_);
  MetricsReport r;
  r.rmse_mm = std::sqrt(sq_ / n) * 1000.0;
  r.mae_mm = abs_ / n * 1000.0;
  r.irmse_invkm = std::sqrt(inv_sq_ / n) * 1000.0;
  r.imae_invkm = inv_abs_ / n * 1000.0;
  r.evaluated_pixels = count_;
  r.skipped_pixels = skipped_;
  return r;
}

MetricsReport evaluate(const DepthMap& pred, const DepthMap& gt) {
  MetricsAccumulator acc;
  acc.add(pred, gt);
  return acc.finalize();
}

MetricsReport average_reports(const std::vector<MetricsReport>& reports) {
  if (reports.empty()) throw DegenerateInputError("no reports to average");
  MetricsReport out;
  for (const auto& r : reports) {
    out.rmse_mm += r.rmse_mm;
    out.mae_mm += r.mae_mm;
    out.irmse_invkm += r.irmse_invkm;
    out.imae_invkm += r.imae_invkm;
    out.evaluated_pixels += r.evaluated_pixels;
    out.skipped_pixels += r.skipped_pixels;
  }
  const auto n = static_cast<double>(reports.size());
  out.rmse_mm /= n;
  out.mae_mm /= n;
  out.irmse_invkm /= n;
  out.imae_invkm /= n;
  return out;
}

ScalarGrid error_map(const DepthMap& pred, const DepthMap& gt) {
  check_pair(pred, gt);
  ScalarGrid grid{gt.width(), gt.height(), std::vector<double>(gt.size(), 0.0)};
  const auto p = pred.values();
  const auto g = gt.values();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (is_valid_depth(g[i]) && is_valid_depth(p[i])) grid.values[i] = std::abs(p[i] - g[i]);
  }
  return grid;
}

std::string to_key_value(const MetricsReport& r) {
  return "rmse_mm = " + format_double(r.rmse_mm) + "\n" +
         "mae_mm = " + format_double(r.mae_mm) + "\n" +
         "irmse_invkm = " + format_double(r.irmse_invkm) + "\n" +
         "imae_invkm = " + format_double(r.imae_invkm) + "\n" +
         "evaluated_pixels = " + std::to_string(r.evaluated_pixels) + "\n" +
         "skipped_pixels = " + std::to_string(r.skipped_pixels) + "\n";
}

std::string csv_header() {
  return "rmse_mm,mae_mm,irmse_invkm,imae_invkm,evaluated_pixels,skipped_pixels";
}

std::string to_csv_row(const MetricsReport& r) {
  return format_double(r.rmse_mm) + "," + format_double(r.mae_mm) + "," +
         format_double(r.irmse_invkm) + "," + format_double(r.imae_invkm) + "," +
         std::to_string(r.evaluated_pixels) + "," + std::to_string(r.skipped_pixels);
}

}  // namespace densify
