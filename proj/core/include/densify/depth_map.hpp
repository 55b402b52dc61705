#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace densify {

/// Pixels at or below this depth (meters) are empty.
inline constexpr double kValidityThreshold = 0.1;

/// Valid Direct depths must stay below this; inverted value = offset - depth.
inline constexpr double kInversionOffset = 100.0;

enum class Encoding { Direct, Inverted };

/// Per-pixel "holds a measurement" flags.
class ValidityMask {
 public:
  ValidityMask(std::size_t width, std::size_t height);

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }

  bool operator()(std::size_t x, std::size_t y) const { return bits_[y * width_ + x] != 0; }
  void set(std::size_t x, std::size_t y, bool valid) { bits_[y * width_ + x] = valid ? 1 : 0; }

  std::size_t count() const;
  std::span<const unsigned char> bits() const { return bits_; }

  friend bool operator==(const ValidityMask&, const ValidityMask&) = default;

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<unsigned char> bits_;
};

/// Row-major grid of depths in meters, tagged with its encoding.
///
/// Empty pixels always hold exactly 0.0: the constructor from raw values
/// snaps anything at or below kValidityThreshold to zero. Values are stored
/// as double so that the 100 - d inversion round-trips bit-exactly for every
/// float-representable depth.
class DepthMap {
 public:
  /// All-empty Direct map. Throws DimensionError on zero or oversized dims.
  DepthMap(std::size_t width, std::size_t height);

  /// Takes ownership of values; rejects negative or non-finite entries.
  DepthMap(std::size_t width, std::size_t height, std::vector<double> values,
           Encoding encoding = Encoding::Direct);

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  std::size_t size() const { return values_.size(); }
  Encoding encoding() const { return encoding_; }

  double operator()(std::size_t x, std::size_t y) const { return values_[y * width_ + x]; }

  /// Writes one pixel; values at or below the threshold are stored as 0.
  void set(std::size_t x, std::size_t y, double value);

  std::span<const double> values() const { return values_; }
  std::span<const double> row(std::size_t y) const {
    return std::span<const double>(values_).subspan(y * width_, width_);
  }

  bool valid(std::size_t x, std::size_t y) const {
    return values_[y * width_ + x] > kValidityThreshold;
  }

  friend bool operator==(const DepthMap&, const DepthMap&) = default;

 private:
  friend class DepthMapBuilder;
  DepthMap(std::size_t width, std::size_t height, std::vector<double> values,
           Encoding encoding, bool trusted);

  std::size_t width_;
  std::size_t height_;
  Encoding encoding_;
  std::vector<double> values_;
};

/// Mutable staging buffer for library code that fills a map pixel by pixel.
/// build() applies the empty-snapping rule without re-validating every value.
class DepthMapBuilder {
 public:
  DepthMapBuilder(std::size_t width, std::size_t height, Encoding encoding);
  explicit DepthMapBuilder(const DepthMap& like);
  /// Adopts `values` as the staging buffer; its size must be width * height.
  DepthMapBuilder(std::size_t width, std::size_t height, Encoding encoding,
                  std::vector<double> values);

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  std::span<double> values() { return values_; }
  std::span<double> row(std::size_t y) {
    return std::span<double>(values_).subspan(y * width_, width_);
  }

  DepthMap build() &&;

 private:
  std::size_t width_;
  std::size_t height_;
  Encoding encoding_;
  std::vector<double> values_;
};

inline bool is_valid_depth(double v) { return v > kValidityThreshold; }

/// Empty map of the given size (Direct encoding).
DepthMap new_depth_map(std::size_t width, std::size_t height);

/// Valid pixels v -> 100 - v; empties stay 0. Direct -> Inverted.
DepthMap invert(const DepthMap& map);

/// Inverse of invert(). Inverted -> Direct.
DepthMap invert_back(const DepthMap& map);

ValidityMask validity_mask(const DepthMap& map);

/// Fraction of valid pixels, in [0, 1].
double density(const DepthMap& map);

}  // namespace densify
