#include "densify/kernel.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <string>

#include "densify/error.hpp"

namespace densify {

std::string_view to_string(KernelShape shape) {
  switch (shape) {
    case KernelShape::Full: return "full";
    case KernelShape::Circle: return "circle";
    case KernelShape::Cross: return "cross";
    case KernelShape::Diamond: return "diamond";
  }
  return "unknown";
}

KernelShape parse_kernel_shape(std::string_view name) {
  for (auto shape : {KernelShape::Full, KernelShape::Circle, KernelShape::Cross,
                     KernelShape::Diamond}) {
    if (name == to_string(shape)) return shape;
  }
  throw ArgumentError("unknown kernel shape '" + std::string(name) +
                      "' (expected full, circle, cross or diamond)");
}

Kernel::Kernel(KernelShape shape, int size, std::vector<unsigned char> bits)
    : shape_(shape), size_(size), bits_(std::move(bits)), runs_(static_cast<std::size_t>(size)) {
  const int r = radius();
  for (int dy = -r; dy <= r; ++dy) {
    auto& row_runs = runs_[dy + r];
    int dx = -r;
    while (dx <= r) {
      if (!at(dx, dy)) {
        ++dx;
        continue;
      }
      const int begin = dx;
      while (dx <= r && at(dx, dy)) ++dx;
      row_runs.push_back({begin, dx - 1});
    }
  }
}

bool Kernel::at(int dx, int dy) const {
  const int r = radius();
  if (dx < -r || dx > r || dy < -r || dy > r) return false;
  return bits_[static_cast<std::size_t>((dy + r) * size_ + (dx + r))] != 0;
}

std::size_t Kernel::popcount() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

Kernel make_kernel(KernelShape shape, int size) {
  if (size < 3 || size % 2 == 0) {
    throw ArgumentError("kernel size must be odd and >= 3, got " + std::to_string(size));
  }
  const int r = size / 2;
  // (r + 1/2)^2 scaled by 4 to stay in integers.
  // The 5x5 circle is the full square minus its corners; other sizes use the
  // disc dx^2 + dy^2 <= r^2.
  const bool square_minus_corners = size == 5;
  std::vector<unsigned char> bits(static_cast<std::size_t>(size * size), 0);
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      bool on = false;
      switch (shape) {
        case KernelShape::Full: on = true; break;
        case KernelShape::Diamond: on = std::abs(dx) + std::abs(dy) <= r; break;
        case KernelShape::Cross: on = dx == 0 || dy == 0; break;
        case KernelShape::Circle:
          on = square_minus_corners ? !(std::abs(dx) == r && std::abs(dy) == r)
                                    : dx * dx + dy * dy <= r * r;
          break;
      }
      bits[static_cast<std::size_t>((dy + r) * size + (dx + r))] = on ? 1 : 0;
    }
  }
  return Kernel(shape, size, std::move(bits));
}

}  // namespace densify
