#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace densify {

enum class KernelShape { Full, Circle, Cross, Diamond };

/// Lowercase CLI spelling: full, circle, cross, diamond.
std::string_view to_string(KernelShape shape);
/// Throws ArgumentError on an unknown name.
KernelShape parse_kernel_shape(std::string_view name);

/// Contiguous run of set bits [begin, end] (inclusive, as x offsets from the
/// anchor) within one kernel row.
struct KernelRun {
  int begin;
  int end;
  friend bool operator==(const KernelRun&, const KernelRun&) = default;
};

/// Binary flat structuring element with a centered anchor.
class Kernel {
 public:
  KernelShape shape() const { return shape_; }
  int size() const { return size_; }
  int radius() const { return size_ / 2; }

  /// Offsets relative to the anchor, each in [-radius, radius].
  bool at(int dx, int dy) const;
  std::size_t popcount() const;

  /// Runs of set bits in the row at vertical offset dy.
  const std::vector<KernelRun>& runs(int dy) const { return runs_[dy + radius()]; }

  /// True when every bit is set; such kernels are separable.
  bool is_rectangular() const { return popcount() == static_cast<std::size_t>(size_ * size_); }

  friend bool operator==(const Kernel& a, const Kernel& b) {
    return a.shape_ == b.shape_ && a.size_ == b.size_;
  }

 private:
  friend Kernel make_kernel(KernelShape, int);
  Kernel(KernelShape shape, int size, std::vector<unsigned char> bits);

  KernelShape shape_;
  int size_;
  std::vector<unsigned char> bits_;
  std::vector<std::vector<KernelRun>> runs_;
};

/// Builds one of the four named kernels. `size` must be odd and >= 3.
///
///   Full     every bit
///   Diamond  |dx| + |dy| <= r
///   Cross    dx == 0 or dy == 0
///   Circle   5x5: the full square minus its four corners; otherwise dx^2 + dy^2 <= r^2
Kernel make_kernel(KernelShape shape, int size);

}  // namespace densify
