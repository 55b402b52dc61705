#include "densify/depth_map.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "densify/error.hpp"

namespace densify {

namespace {

constexpr std::size_t kMaxSide = std::size_t{1} << 20;
constexpr std::size_t kMaxPixels = std::size_t{1} << 28;

void check_dims(std::size_t width, std::size_t height) {
  if (width == 0 || height == 0) {
    throw DimensionError("depth map dimensions must be positive, got " + std::to_string(width) +
                         "x" + std::to_string(height));
  }
  if (width > kMaxSide || height > kMaxSide || width * height > kMaxPixels) {
    throw DimensionError("depth map dimensions too large: " + std::to_string(width) + "x" +
                         std::to_string(height));
  }
}

void snap_empty(std::vector<double>& values) {
  for (double& v : values) {
    if (!(v > kValidityThreshold)) v = 0.0;
  }
}

}  // namespace

ValidityMask::ValidityMask(std::size_t width, std::size_t height)
    : width_(width), height_(height), bits_(width * height, 0) {
  check_dims(width, height);
}

std::size_t ValidityMask::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

DepthMap::DepthMap(std::size_t width, std::size_t height)
    : width_(width), height_(height), encoding_(Encoding::Direct) {
  check_dims(width, height);
  values_.assign(width * height, 0.0);
}

DepthMap::DepthMap(std::size_t width, std::size_t height, std::vector<double> values,
                   Encoding encoding)
    : width_(width), height_(height), encoding_(encoding), values_(std::move(values)) {
  check_dims(width, height);
  if (values_.size() != width * height) {
    throw DimensionError("expected " + std::to_string(width * height) + " values, got " +
                         std::to_string(values_.size()));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double v = values_[i];
    if (!std::isfinite(v) || v < 0.0) {
      throw RangeError("depth at pixel " + std::to_string(i) + " is negative or not finite");
    }
  }
  snap_empty(values_);
}

DepthMap::DepthMap(std::size_t width, std::size_t height, std::vector<double> values,
                   Encoding encoding, bool /*trusted*/)
    : width_(width), height_(height), encoding_(encoding), values_(std::move(values)) {
  snap_empty(values_);
}

void DepthMap::set(std::size_t x, std::size_t y, double value) {
  if (!std::isfinite(value) || value < 0.0) {
    throw RangeError("depth must be finite and non-negative");
  }
  values_[y * width_ + x] = value > kValidityThreshold ? value : 0.0;
}

DepthMapBuilder::DepthMapBuilder(std::size_t width, std::size_t height, Encoding encoding)
    : width_(width), height_(height), encoding_(encoding) {
  check_dims(width, height);
  values_.assign(width * height, 0.0);
}

DepthMapBuilder::DepthMapBuilder(const DepthMap& like)
    : DepthMapBuilder(like.width(), like.height(), like.encoding()) {}

DepthMapBuilder::DepthMapBuilder(std::size_t width, std::size_t height, Encoding encoding,
                                 std::vector<double> values)
    : width_(width), height_(height), encoding_(encoding), values_(std::move(values)) {
  check_dims(width, height);
  if (values_.size() != width * height) {
    throw DimensionError("expected " + std::to_string(width * height) + " values, got " +
                         std::to_string(values_.size()));
  }
}

DepthMap DepthMapBuilder::build() && {
  return DepthMap(width_, height_, std::move(values_), encoding_, true);
}

DepthMap new_depth_map(std::size_t width, std::size_t height) { return DepthMap(width, height); }

DepthMap invert(const DepthMap& map) {
  if (map.encoding() != Encoding::Direct) {
    throw EncodingError("invert: map is already in the inverted encoding");
  }
  DepthMapBuilder out(map.width(), map.height(), Encoding::Inverted);
  auto dst = out.values();
  auto src = map.values();
  for (std::size_t i = 0; i < src.size(); ++i) {
    const double v = src[i];
    if (v > kValidityThreshold) {
      if (v >= kInversionOffset) {
        throw RangeError("invert: depth " + std::to_string(v) + " m is not below " +
                         std::to_string(kInversionOffset) + " m");
      }
      dst[i] = kInversionOffset - v;
    }
  }
  return std::move(out).build();
}

DepthMap invert_back(const DepthMap& map) {
  if (map.encoding() != Encoding::Inverted) {
    throw EncodingError("invert_back: map is not in the inverted encoding");
  }
  DepthMapBuilder out(map.width(), map.height(), Encoding::Direct);
  auto dst = out.values();
  auto src = map.values();
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (src[i] > kValidityThreshold) dst[i] = kInversionOffset - src[i];
  }
  return std::move(out).build();
}

ValidityMask validity_mask(const DepthMap& map) {
  ValidityMask mask(map.width(), map.height());
  for (std::size_t y = 0; y < map.height(); ++y) {
    for (std::size_t x = 0; x < map.width(); ++x) mask.set(x, y, map.valid(x, y));
  }
  return mask;
}

double density(const DepthMap& map) {
  const auto vals = map.values();
  const auto n = std::count_if(vals.begin(), vals.end(), is_valid_depth);
  return static_cast<double>(n) / static_cast<double>(vals.size());
}

}  // namespace densify
