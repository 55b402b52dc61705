#include "densify/morphology.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "densify/error.hpp"
#include "raster.hpp"

namespace densify {

namespace {

void check_kernel_fits(const DepthMap& map, const Kernel& kernel, const char* op) {
  const std::size_t limit = 2 * std::min(map.width(), map.height()) + 1;
  if (static_cast<std::size_t>(kernel.size()) > limit) {
    throw DimensionError(std::string(op) + ": " + std::to_string(kernel.size()) + "x" +
                         std::to_string(kernel.size()) + " kernel does not fit a " +
                         std::to_string(map.width()) + "x" + std::to_string(map.height()) +
                         " map (limit " + std::to_string(limit) + ")");
  }
}

void check_window(const char* op, int size) {
  if (size < 3 || size % 2 == 0) {
    throw ArgumentError(std::string(op) + " size must be odd and >= 3, got " +
                        std::to_string(size));
  }
}

detail::ConstPlane view(const DepthMap& map) {
  return {map.values().data(), map.width(), map.height()};
}

/// Runs fn(src_plane, dst_plane) into a fresh map shaped like `map`.
template <class Fn>
DepthMap produce(const DepthMap& map, Fn fn) {
  DepthMapBuilder out(map);
  fn(view(map), detail::Plane{out.values().data(), map.width(), map.height()});
  return std::move(out).build();
}

}  // namespace

DepthMap dilate(const DepthMap& map, const Kernel& kernel) {
  check_kernel_fits(map, kernel, "dilate");
  detail::Scratch scratch;
  return produce(map, [&](auto src, auto dst) {
    detail::extreme_filter(src, dst, kernel, detail::Extreme::Max, scratch);
  });
}

DepthMap erode(const DepthMap& map, const Kernel& kernel) {
  check_kernel_fits(map, kernel, "erode");
  detail::Scratch scratch;
  return produce(map, [&](auto src, auto dst) {
    detail::extreme_filter(src, dst, kernel, detail::Extreme::Min, scratch);
  });
}

DepthMap close(const DepthMap& map, const Kernel& kernel) {
  return erode(dilate(map, kernel), kernel);
}

DepthMap masked_fill_dilate(const DepthMap& map, const Kernel& kernel) {
  check_kernel_fits(map, kernel, "masked_fill_dilate");
  detail::Scratch scratch;
  return produce(map, [&](auto src, auto dst) { detail::masked_fill(src, dst, kernel, scratch); });
}

DepthMap extend_to_top(const DepthMap& map) {
  return produce(map, [](auto src, auto dst) {
    std::copy_n(src.data, src.width * src.height, dst.data);
    detail::extend_columns_up(dst);
  });
}

DepthMap median_filter(const DepthMap& map, int size) {
  check_window("median", size);
  detail::Scratch scratch;
  return produce(map, [&](auto src, auto dst) { detail::median(src, dst, size, scratch); });
}

double default_gaussian_sigma(int size) { return 0.3 * ((size - 1) * 0.5 - 1.0) + 0.8; }

std::vector<double> gaussian_taps(int size, double sigma) {
  check_window("gaussian", size);
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ArgumentError("gaussian sigma must be positive");
  }
  const int r = size / 2;
  std::vector<double> taps(static_cast<std::size_t>(size));
  double sum = 0.0;
  for (int i = -r; i <= r; ++i) {
    taps[static_cast<std::size_t>(i + r)] = std::exp(-(i * i) / (2.0 * sigma * sigma));
    sum += taps[static_cast<std::size_t>(i + r)];
  }
  for (double& t : taps) t /= sum;
  return taps;
}

DepthMap gaussian_filter(const DepthMap& map, int size, double sigma) {
  const auto taps = gaussian_taps(size, sigma);
  detail::Scratch scratch;
  return produce(map, [&](auto src, auto dst) { detail::gaussian(src, dst, taps, scratch); });
}

DepthMap bilateral_filter(const DepthMap& map, int size, double sigma_value, double sigma_space) {
  check_window("bilateral", size);
  if (!(sigma_value > 0.0) || !(sigma_space > 0.0) || !std::isfinite(sigma_value) ||
      !std::isfinite(sigma_space)) {
    throw ArgumentError("bilateral sigmas must be positive");
  }
  return produce(map, [&](auto src, auto dst) {
    detail::bilateral(src, dst, size, sigma_value, sigma_space);
  });
}

}  // namespace densify
