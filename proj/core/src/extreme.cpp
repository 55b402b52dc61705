#include <algorithm>
#include <cstddef>
#include <map>
#include <utility>

#include "densify/depth_map.hpp"
#include "raster.hpp"

namespace densify::detail {

namespace {

template <Extreme E>
inline double pick(double a, double b) {
  if constexpr (E == Extreme::Max) {
    return a > b ? a : b;
  } else {
    return a < b ? a : b;
  }
}

template <Extreme E>
void combine(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = pick<E>(a[i], b[i]);
}

/// out[i] = extreme(out[i], in[i]); in must not overlap out.
template <Extreme E>
void fold(double* __restrict out, const double* __restrict in, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = pick<E>(out[i], in[i]);
}

/// Sliding extreme over a padded 1-D signal: out[i] = extreme(p[i], ..., p[i + len - 1])
/// for i in [0, n). Doubling: after pass k, t[i] covers 2^k samples.
template <Extreme E>
void sliding_extreme(const double* p, std::size_t n, std::size_t len, double* out, double* t0,
                     double* t1) {
  if (len == 1) {
    std::copy_n(p, n, out);
    return;
  }
  const std::size_t total = n + len - 1;
  const double* cur = p;
  std::size_t span = 1;
  double* bufs[2] = {t0, t1};
  int which = 0;
  while (span * 2 <= len) {
    double* next = bufs[which];
    which ^= 1;
    const std::size_t count = total - 2 * span + 1;
    combine<E>(cur, cur + span, next, count);
    cur = next;
    span *= 2;
  }
  combine<E>(cur, cur + (len - span), out, n);
}

/// Row-wise window extreme over x offsets [a, b] with replicate borders.
template <Extreme E>
void horizontal(ConstPlane src, Plane dst, int a, int b, Scratch& scratch) {
  const auto w = static_cast<std::ptrdiff_t>(src.width);
  const std::size_t len = static_cast<std::size_t>(b - a + 1);
  const std::size_t padded = src.width + len - 1;
  double* p = scratch.get(0, padded);
  double* t0 = scratch.get(1, padded);
  double* t1 = scratch.get(2, padded);
  for (std::size_t y = 0; y < src.height; ++y) {
    const double* in = src.row(y);
    // p[j] = in[clamp(j + a)], j in [0, padded)
    for (std::size_t j = 0; j < padded; ++j) {
      p[j] = in[clamp_index(static_cast<std::ptrdiff_t>(j) + a, w)];
    }
    sliding_extreme<E>(p, src.width, len, dst.row(y), t0, t1);
  }
}

/// Column-wise window extreme over rows [y - r, y + r].
template <Extreme E>
void vertical(ConstPlane src, Plane dst, int r, Scratch& scratch) {
  const auto h = static_cast<std::ptrdiff_t>(src.height);
  const std::size_t width = src.width;
  const std::ptrdiff_t len = 2 * r + 1;
  auto in_row = [&](std::ptrdiff_t y) { return src.row(clamp_index(y, h)); };

  if (len <= 9) {
    for (std::ptrdiff_t y = 0; y < h; ++y) {
      double* out = dst.row(static_cast<std::size_t>(y));
      combine<E>(in_row(y - r), in_row(y - r + 1), out, width);
      for (std::ptrdiff_t d = -r + 2; d <= r; ++d) fold<E>(out, in_row(y + d), width);
    }
    return;
  }

  // van Herk / Gil-Werman over padded rows j = y + r, blocks of `len` rows.
  const auto rows = static_cast<std::size_t>(h + 2 * r);
  double* g = scratch.get(3, rows * width);
  double* hh = scratch.get(4, rows * width);
  for (std::size_t j = 0; j < rows; ++j) {
    const double* in = in_row(static_cast<std::ptrdiff_t>(j) - r);
    double* gj = g + j * width;
    if (j % static_cast<std::size_t>(len) == 0) {
      std::copy_n(in, width, gj);
    } else {
      combine<E>(gj - width, in, gj, width);
    }
  }
  for (std::size_t j = rows; j-- > 0;) {
    const double* in = in_row(static_cast<std::ptrdiff_t>(j) - r);
    double* hj = hh + j * width;
    if (j == rows - 1 || (j + 1) % static_cast<std::size_t>(len) == 0) {
      std::copy_n(in, width, hj);
    } else {
      combine<E>(hj + width, in, hj, width);
    }
  }
  for (std::ptrdiff_t y = 0; y < h; ++y) {
    combine<E>(hh + y * width, g + (y + len - 1) * width, dst.row(static_cast<std::size_t>(y)),
               width);
  }
}

/// Small kernels: per output row, fold every footprint offset in directly.
/// Interior columns read the source rows in place; the r columns at each
/// edge go through clamped indices.
template <Extreme E>
void direct(ConstPlane src, Plane dst, const Kernel& kernel) {
  const int r = kernel.radius();
  const std::size_t w = src.width;
  const auto wi = static_cast<std::ptrdiff_t>(w);
  const auto h = static_cast<std::ptrdiff_t>(src.height);
  const std::size_t edge = std::min<std::size_t>(static_cast<std::size_t>(r), w);
  for (std::ptrdiff_t y = 0; y < h; ++y) {
    double* out = dst.row(static_cast<std::size_t>(y));
    const double* centre = src.row(static_cast<std::size_t>(y));
    std::copy_n(centre, w, out);
    if (w > 2 * edge) {
      double* inner = out + edge;
      const std::size_t n = w - 2 * edge;
      for (int dy = -r; dy <= r; ++dy) {
        const double* row = src.row(clamp_index(y + dy, h)) + edge;
        for (const KernelRun& run : kernel.runs(dy)) {
          for (int dx = run.begin; dx <= run.end; ++dx) {
            if (dx != 0 || dy != 0) fold<E>(inner, row + dx, n);
          }
        }
      }
    }
    auto border = [&](std::ptrdiff_t x) {
      double v = out[x];
      for (int dy = -r; dy <= r; ++dy) {
        const double* row = src.row(clamp_index(y + dy, h));
        for (const KernelRun& run : kernel.runs(dy)) {
          for (int dx = run.begin; dx <= run.end; ++dx) v = pick<E>(v, row[clamp_index(x + dx, wi)]);
        }
      }
      out[x] = v;
    };
    for (std::size_t x = 0; x < edge; ++x) border(static_cast<std::ptrdiff_t>(x));
    for (std::size_t x = std::max(edge, w - edge); x < w; ++x) border(static_cast<std::ptrdiff_t>(x));
  }
}

template <Extreme E>
void extreme_impl(ConstPlane src, Plane dst, const Kernel& kernel, Scratch& scratch) {
  const int r = kernel.radius();
  const std::size_t n = src.width * src.height;
  if (kernel.is_rectangular()) {
    double* tmp = scratch.get(5, n);
    horizontal<E>(src, {tmp, src.width, src.height}, -r, r, scratch);
    vertical<E>(ConstPlane{tmp, src.width, src.height}, dst, r, scratch);
    return;
  }

  if (r <= 3) {
    direct<E>(src, dst, kernel);
    return;
  }

  // Row-run decomposition: one horizontal pass per distinct run, then the
  // extreme over the kernel rows. The single-pixel run [0, 0] is src itself.
  std::map<std::pair<int, int>, const double*> passes;
  std::size_t next_slot = 6;
  const auto h = static_cast<std::ptrdiff_t>(src.height);
  std::vector<unsigned char> started(src.height, 0);
  for (int dy = -r; dy <= r; ++dy) {
    for (const KernelRun& run : kernel.runs(dy)) {
      const double* plane = src.data;
      if (run.begin != 0 || run.end != 0) {
        auto [it, inserted] = passes.emplace(std::make_pair(run.begin, run.end), nullptr);
        if (inserted) {
          double* buf = scratch.get(next_slot++, n);
          horizontal<E>(src, {buf, src.width, src.height}, run.begin, run.end, scratch);
          it->second = buf;
        }
        plane = it->second;
      }
      for (std::ptrdiff_t y = 0; y < h; ++y) {
        const double* in = plane + clamp_index(y + dy, h) * src.width;
        double* out = dst.row(static_cast<std::size_t>(y));
        if (!started[y]) {
          std::copy_n(in, src.width, out);
          started[y] = 1;
        } else {
          fold<E>(out, in, src.width);
        }
      }
    }
  }
}

}  // namespace

void extreme_filter(ConstPlane src, Plane dst, const Kernel& kernel, Extreme which,
                    Scratch& scratch) {
  if (which == Extreme::Max) {
    extreme_impl<Extreme::Max>(src, dst, kernel, scratch);
  } else {
    extreme_impl<Extreme::Min>(src, dst, kernel, scratch);
  }
}

void masked_fill(ConstPlane src, Plane dst, const Kernel& kernel, Scratch& scratch) {
  extreme_impl<Extreme::Max>(src, dst, kernel, scratch);
  const std::size_t n = src.width * src.height;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = src.data[i];
    dst.data[i] = v > kValidityThreshold ? v : dst.data[i];
  }
}

void extend_columns_up(Plane map) {
  const std::size_t w = map.width;
  const std::size_t h = map.height;
  std::vector<std::size_t> top(w, h);
  std::size_t open = w;
  for (std::size_t y = 0; y < h && open > 0; ++y) {
    const double* row = map.row(y);
    for (std::size_t x = 0; x < w; ++x) {
      if (top[x] == h && row[x] > kValidityThreshold) {
        top[x] = y;
        --open;
      }
    }
  }
  for (std::size_t y = 0; y < h; ++y) {
    double* row = map.row(y);
    for (std::size_t x = 0; x < w; ++x) {
      if (y < top[x] && top[x] < h) row[x] = map.data[top[x] * w + x];
    }
  }
}

}  // namespace densify::detail
