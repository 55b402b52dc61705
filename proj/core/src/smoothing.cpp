#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "raster.hpp"

namespace densify::detail {

// Each output is a convex combination of its window, so it is clamped to the
// window's [min, max]; the clamp only removes rounding excursions and keeps
// results inside the input range exactly. rows[i] is the i-th window line,
// already offset so that element x lines up with output x.
template <int R>
void convolve_line(const double* const* rows, std::span<const double> taps, double* out,
                   std::size_t w) {
  constexpr int n = 2 * R + 1;
  double t[n];
  for (int i = 0; i < n; ++i) t[i] = taps[static_cast<std::size_t>(i)];
  for (std::size_t x = 0; x < w; ++x) {
    double acc = 0.0;
    double lo = rows[R][x];
    double hi = lo;
    for (int i = 0; i < n; ++i) {
      const double v = rows[i][x];
      acc += t[i] * v;
      lo = v < lo ? v : lo;
      hi = v > hi ? v : hi;
    }
    out[x] = acc < lo ? lo : (acc > hi ? hi : acc);
  }
}

void convolve_line_any(const double* const* rows, std::span<const double> taps, double* out,
                       std::size_t w, double* lo, double* hi) {
  const int n = static_cast<int>(taps.size());
  const int r = n / 2;
  std::fill_n(out, w, 0.0);
  std::copy_n(rows[r], w, lo);
  std::copy_n(rows[r], w, hi);
  for (int i = 0; i < n; ++i) {
    const double t = taps[static_cast<std::size_t>(i)];
    const double* p = rows[i];
    for (std::size_t x = 0; x < w; ++x) {
      out[x] += t * p[x];
      lo[x] = p[x] < lo[x] ? p[x] : lo[x];
      hi[x] = p[x] > hi[x] ? p[x] : hi[x];
    }
  }
  for (std::size_t x = 0; x < w; ++x) out[x] = std::clamp(out[x], lo[x], hi[x]);
}

void gaussian(ConstPlane src, Plane dst, std::span<const double> taps, Scratch& scratch) {
  const int r = static_cast<int>(taps.size() / 2);
  const std::size_t w = src.width;
  const std::size_t h = src.height;
  const auto wi = static_cast<std::ptrdiff_t>(w);
  const auto hi_rows = static_cast<std::ptrdiff_t>(h);

  double* tmp = scratch.get(0, w * h);
  double* padded = scratch.get(1, w + 2 * static_cast<std::size_t>(r));
  double* lo = scratch.get(2, w);
  double* hi = scratch.get(3, w);
  std::vector<const double*> rows(static_cast<std::size_t>(2 * r + 1));

  auto line = [&](double* out) {
    switch (r) {
      case 1: convolve_line<1>(rows.data(), taps, out, w); break;
      case 2: convolve_line<2>(rows.data(), taps, out, w); break;
      case 3: convolve_line<3>(rows.data(), taps, out, w); break;
      default: convolve_line_any(rows.data(), taps, out, w, lo, hi); break;
    }
  };

  for (std::size_t y = 0; y < h; ++y) {
    const double* in = src.row(y);
    for (std::ptrdiff_t j = 0; j < r; ++j) {
      padded[j] = in[clamp_index(j - r, wi)];
      padded[wi + r + j] = in[clamp_index(wi + j, wi)];
    }
    std::copy_n(in, w, padded + r);
    for (int i = 0; i <= 2 * r; ++i) rows[static_cast<std::size_t>(i)] = padded + i;
    line(tmp + y * w);
  }

  for (std::ptrdiff_t y = 0; y < hi_rows; ++y) {
    for (int i = -r; i <= r; ++i) {
      rows[static_cast<std::size_t>(i + r)] = tmp + clamp_index(y + i, hi_rows) * w;
    }
    line(dst.row(static_cast<std::size_t>(y)));
  }
}

void bilateral(ConstPlane src, Plane dst, int size, double sigma_value, double sigma_space) {
  const int r = size / 2;
  const auto w = static_cast<std::ptrdiff_t>(src.width);
  const auto h = static_cast<std::ptrdiff_t>(src.height);

  std::vector<double> spatial(static_cast<std::size_t>(size * size));
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      spatial[static_cast<std::size_t>((dy + r) * size + (dx + r))] =
          std::exp(-(dx * dx + dy * dy) / (2.0 * sigma_space * sigma_space));
    }
  }
  const double range_scale = -1.0 / (2.0 * sigma_value * sigma_value);

  for (std::ptrdiff_t y = 0; y < h; ++y) {
    double* out = dst.row(static_cast<std::size_t>(y));
    for (std::ptrdiff_t x = 0; x < w; ++x) {
      const double centre = src.row(static_cast<std::size_t>(y))[x];
      double num = 0.0;
      double den = 0.0;
      double lo = centre;
      double hi = centre;
      const double* wt = spatial.data();
      for (int dy = -r; dy <= r; ++dy) {
        const double* row = src.row(clamp_index(y + dy, h));
        for (int dx = -r; dx <= r; ++dx) {
          const double v = row[clamp_index(x + dx, w)];
          const double diff = v - centre;
          const double k = *wt++ * std::exp(diff * diff * range_scale);
          num += k * v;
          den += k;
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
      }
      out[x] = std::clamp(num / den, lo, hi);
    }
  }
}

}  // namespace densify::detail
