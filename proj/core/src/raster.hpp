#pragma once

// Buffer-level implementations behind the public morphology API. Every
// function writes a full destination plane and never aliases src and dst
// unless noted.

#include <cstddef>
#include <span>
#include <vector>

#include "densify/kernel.hpp"

namespace densify::detail {

struct ConstPlane {
  const double* data;
  std::size_t width;
  std::size_t height;
  const double* row(std::size_t y) const { return data + y * width; }
};

struct Plane {
  double* data;
  std::size_t width;
  std::size_t height;
  double* row(std::size_t y) const { return data + y * width; }
  operator ConstPlane() const { return {data, width, height}; }
};

/// Replicate-border index: clamps i into [0, n).
inline std::size_t clamp_index(std::ptrdiff_t i, std::ptrdiff_t n) {
  return static_cast<std::size_t>(i < 0 ? 0 : (i >= n ? n - 1 : i));
}

/// Grow-only scratch buffers, reused across calls.
class Scratch {
 public:
  double* get(std::size_t slot, std::size_t count) {
    if (slots_.size() <= slot) slots_.resize(slot + 1);
    auto& v = slots_[slot];
    if (v.size() < count) v.resize(count);
    return v.data();
  }

 private:
  std::vector<std::vector<double>> slots_;
};

enum class Extreme { Max, Min };

/// Flat-kernel max (dilation) or min (erosion), replicate borders.
void extreme_filter(ConstPlane src, Plane dst, const Kernel& kernel, Extreme which,
                    Scratch& scratch);

/// dst = src at valid pixels, dilation of src elsewhere.
void masked_fill(ConstPlane src, Plane dst, const Kernel& kernel, Scratch& scratch);

/// In place: copy each column's topmost valid value upwards.
void extend_columns_up(Plane map);

void median(ConstPlane src, Plane dst, int size, Scratch& scratch);

void gaussian(ConstPlane src, Plane dst, std::span<const double> taps, Scratch& scratch);

void bilateral(ConstPlane src, Plane dst, int size, double sigma_value, double sigma_space);

}  // namespace densify::detail
