#pragma once

// Brute-force reference implementations. Everything here is written from the
// definitions with nested loops and clamped indices, sharing no code with the
// library beyond the DepthMap container.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <ostream>
#include <vector>

#include "densify/depth_map.hpp"
#include "densify/kernel.hpp"

namespace densify {

// Readable failure output for EXPECT_EQ on maps.
inline void PrintTo(const DepthMap& m, std::ostream* os) {
  *os << m.width() << "x" << m.height() << (m.encoding() == Encoding::Inverted ? " inverted" : "")
      << " [";
  const std::size_t shown = std::min<std::size_t>(m.size(), 16);
  for (std::size_t i = 0; i < shown; ++i) *os << (i ? ", " : "") << m.values()[i];
  *os << (shown < m.size() ? ", ...]" : "]");
}

}  // namespace densify

namespace oracle {

using densify::DepthMap;
using densify::KernelShape;

inline bool in_footprint(KernelShape shape, int size, int dx, int dy) {
  const int r = size / 2;
  switch (shape) {
    case KernelShape::Full: return true;
    case KernelShape::Cross: return dx == 0 || dy == 0;
    case KernelShape::Diamond: return std::abs(dx) + std::abs(dy) <= r;
    case KernelShape::Circle:
      if (size == 5) return !(std::abs(dx) == 2 && std::abs(dy) == 2);
      return dx * dx + dy * dy <= r * r;
  }
  return false;
}

inline long clampi(long i, long n) { return i < 0 ? 0 : (i >= n ? n - 1 : i); }

inline double at(const DepthMap& m, long x, long y) {
  const long w = static_cast<long>(m.width());
  const long h = static_cast<long>(m.height());
  return m(static_cast<std::size_t>(clampi(x, w)), static_cast<std::size_t>(clampi(y, h)));
}

template <class F>
DepthMap per_pixel(const DepthMap& m, F f) {
  std::vector<double> out(m.size());
  for (std::size_t y = 0; y < m.height(); ++y) {
    for (std::size_t x = 0; x < m.width(); ++x) {
      out[y * m.width() + x] = f(static_cast<long>(x), static_cast<long>(y));
    }
  }
  return DepthMap(m.width(), m.height(), std::move(out), m.encoding());
}

inline DepthMap dilate(const DepthMap& m, KernelShape shape, int size) {
  const int r = size / 2;
  return per_pixel(m, [&](long x, long y) {
    double best = -1.0;
    for (int dy = -r; dy <= r; ++dy) {
      for (int dx = -r; dx <= r; ++dx) {
        if (in_footprint(shape, size, dx, dy)) best = std::max(best, at(m, x + dx, y + dy));
      }
    }
    return best;
  });
}

inline DepthMap erode(const DepthMap& m, KernelShape shape, int size) {
  const int r = size / 2;
  return per_pixel(m, [&](long x, long y) {
    double best = 1e300;
    for (int dy = -r; dy <= r; ++dy) {
      for (int dx = -r; dx <= r; ++dx) {
        if (in_footprint(shape, size, dx, dy)) best = std::min(best, at(m, x + dx, y + dy));
      }
    }
    return best;
  });
}

inline DepthMap close(const DepthMap& m, KernelShape shape, int size) {
  return erode(dilate(m, shape, size), shape, size);
}

inline DepthMap masked_fill(const DepthMap& m, KernelShape shape, int size) {
  const DepthMap d = dilate(m, shape, size);
  return per_pixel(m, [&](long x, long y) {
    const double v = at(m, x, y);
    return v > densify::kValidityThreshold ? v : at(d, x, y);
  });
}

inline DepthMap median(const DepthMap& m, int size) {
  const int r = size / 2;
  return per_pixel(m, [&](long x, long y) {
    std::vector<double> window;
    for (int dy = -r; dy <= r; ++dy) {
      for (int dx = -r; dx <= r; ++dx) window.push_back(at(m, x + dx, y + dy));
    }
    std::sort(window.begin(), window.end());
    return window[window.size() / 2];
  });
}

inline DepthMap extend_to_top(const DepthMap& m) {
  std::vector<double> out(m.values().begin(), m.values().end());
  for (std::size_t x = 0; x < m.width(); ++x) {
    for (std::size_t y = 0; y < m.height(); ++y) {
      if (m.valid(x, y)) {
        for (std::size_t above = 0; above < y; ++above) out[above * m.width() + x] = m(x, y);
        break;
      }
    }
  }
  return DepthMap(m.width(), m.height(), std::move(out), m.encoding());
}

/// Raw (unsnapped) 2-D Gaussian by direct summation over the full window.
inline std::vector<double> gaussian_2d(const DepthMap& m, int size, double sigma) {
  const int r = size / 2;
  std::vector<long double> taps;
  long double sum = 0;
  for (int i = -r; i <= r; ++i) {
    taps.push_back(std::exp(-static_cast<long double>(i * i) / (2.0L * sigma * sigma)));
    sum += taps.back();
  }
  std::vector<double> out(m.size());
  for (long y = 0; y < static_cast<long>(m.height()); ++y) {
    for (long x = 0; x < static_cast<long>(m.width()); ++x) {
      long double acc = 0;
      for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
          acc += taps[dy + r] * taps[dx + r] * at(m, x + dx, y + dy);
        }
      }
      out[y * m.width() + x] = static_cast<double>(acc / (sum * sum));
    }
  }
  return out;
}

/// Raw bilateral: sum w_s * w_v * v / sum w_s * w_v over the full window.
inline std::vector<double> bilateral(const DepthMap& m, int size, double sigma_value,
                                     double sigma_space) {
  const int r = size / 2;
  std::vector<double> out(m.size());
  for (long y = 0; y < static_cast<long>(m.height()); ++y) {
    for (long x = 0; x < static_cast<long>(m.width()); ++x) {
      const long double c = at(m, x, y);
      long double num = 0;
      long double den = 0;
      for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
          const long double v = at(m, x + dx, y + dy);
          const long double ws =
              std::exp(-static_cast<long double>(dx * dx + dy * dy) / (2.0L * sigma_space * sigma_space));
          const long double wv = std::exp(-(v - c) * (v - c) / (2.0L * sigma_value * sigma_value));
          num += ws * wv * v;
          den += ws * wv;
        }
      }
      out[y * m.width() + x] = static_cast<double>(num / den);
    }
  }
  return out;
}

struct Errors {
  double rmse_mm;
  double mae_mm;
  double irmse_invkm;
  double imae_invkm;
  std::size_t count;
};

inline Errors metrics(const DepthMap& pred, const DepthMap& gt) {
  long double sq = 0, ab = 0, isq = 0, iab = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < gt.size(); ++i) {
    const double g = gt.values()[i];
    const double p = pred.values()[i];
    if (g <= densify::kValidityThreshold || p <= densify::kValidityThreshold) continue;
    const long double e = (static_cast<long double>(p) - g) * 1000.0L;
    const long double ie = (1.0L / p - 1.0L / g) * 1000.0L;
    sq += e * e;
    ab += std::fabs(e);
    isq += ie * ie;
    iab += std::fabs(ie);
    ++n;
  }
  return {static_cast<double>(std::sqrt(sq / n)), static_cast<double>(ab / n),
          static_cast<double>(std::sqrt(isq / n)), static_cast<double>(iab / n), n};
}

}  // namespace oracle
