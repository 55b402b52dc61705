#include <algorithm>
#include <cstddef>
#include <cstring>
#include <utility>
#include <vector>

#include "median_network.hpp"
#include "raster.hpp"

namespace densify::detail {

namespace {

// Eight doubles per lane group; lowers to AVX-512, AVX2 or SSE2 registers.
using Lanes = double __attribute__((vector_size(64)));
constexpr std::size_t kLanes = 8;

inline Lanes load(const double* p) {
  Lanes v;
  std::memcpy(&v, p, sizeof v);
  return v;
}

inline void store(double* p, Lanes v) { std::memcpy(p, &v, sizeof v); }

inline void sort2(Lanes& a, Lanes& b) {
  const Lanes lo = a < b ? a : b;
  const Lanes hi = a < b ? b : a;
  a = lo;
  b = hi;
}

inline Lanes vmin(Lanes a, Lanes b) { return a < b ? a : b; }
inline Lanes vmax(Lanes a, Lanes b) { return a < b ? b : a; }

template <std::size_t... I>
inline void run_median_network(Lanes* w, std::index_sequence<I...>) {
  (sort2(w[kMedian25Network[I].first], w[kMedian25Network[I].second]), ...);
}

/// Fills sorted[k][j] (k = rank within the column) for padded columns j of
/// the band of `Size` rows centred on y. Each array gets kLanes slack.
template <int Size>
void sort_columns(ConstPlane src, std::ptrdiff_t y, double* const* sorted) {
  constexpr int r = Size / 2;
  const auto w = static_cast<std::ptrdiff_t>(src.width);
  const auto h = static_cast<std::ptrdiff_t>(src.height);
  const std::ptrdiff_t padded = w + 2 * r;
  for (int k = 0; k < Size; ++k) {
    const double* row = src.row(clamp_index(y + k - r, h));
    double* out = sorted[k];
    for (std::ptrdiff_t j = 0; j < r; ++j) out[j] = row[0];
    std::copy_n(row, src.width, out + r);
    for (std::ptrdiff_t j = w + r; j < padded + static_cast<std::ptrdiff_t>(kLanes); ++j) {
      out[j] = row[w - 1];
    }
  }
  for (std::ptrdiff_t j = 0; j < padded; j += kLanes) {
    Lanes c[Size];
    for (int k = 0; k < Size; ++k) c[k] = load(sorted[k] + j);
    if constexpr (Size == 3) {
      sort2(c[0], c[1]);
      sort2(c[1], c[2]);
      sort2(c[0], c[1]);
    } else {
      sort2(c[0], c[1]);
      sort2(c[3], c[4]);
      sort2(c[2], c[4]);
      sort2(c[2], c[3]);
      sort2(c[0], c[3]);
      sort2(c[0], c[2]);
      sort2(c[1], c[4]);
      sort2(c[1], c[3]);
      sort2(c[1], c[2]);
    }
    for (int k = 0; k < Size; ++k) store(sorted[k] + j, c[k]);
  }
}

inline Lanes median3(Lanes a, Lanes b, Lanes c) { return vmax(vmin(a, b), vmin(vmax(a, b), c)); }

template <int Size>
void median_small(ConstPlane src, Plane dst, Scratch& scratch) {
  constexpr int r = Size / 2;
  const auto h = static_cast<std::ptrdiff_t>(src.height);
  const std::size_t w = src.width;
  // Column arrays need room for the padded width, one vector of slack for
  // the final partial block and the sort pass overrun.
  const std::size_t stride = w + 2 * r + 2 * kLanes;
  double* sorted[Size];
  for (int k = 0; k < Size; ++k) sorted[k] = scratch.get(static_cast<std::size_t>(k), stride);
  alignas(64) double tail[kLanes];

  for (std::ptrdiff_t y = 0; y < h; ++y) {
    sort_columns<Size>(src, y, sorted);
    double* out = dst.row(static_cast<std::size_t>(y));
    for (std::size_t x = 0; x < w; x += kLanes) {
      Lanes m;
      if constexpr (Size == 3) {
        const Lanes lo = vmax(vmax(load(sorted[0] + x), load(sorted[0] + x + 1)),
                              load(sorted[0] + x + 2));
        const Lanes mid =
            median3(load(sorted[1] + x), load(sorted[1] + x + 1), load(sorted[1] + x + 2));
        const Lanes hi = vmin(vmin(load(sorted[2] + x), load(sorted[2] + x + 1)),
                              load(sorted[2] + x + 2));
        m = median3(lo, mid, hi);
      } else {
        Lanes wires[25];
        for (int k = 0; k < 5; ++k) {
          for (int c = 0; c < 5; ++c) wires[k * 5 + c] = load(sorted[k] + x + c);
        }
        run_median_network(wires, std::make_index_sequence<kMedian25Network.size()>{});
        m = wires[kMedian25Wire];
      }
      if (x + kLanes <= w) {
        store(out + x, m);
      } else {
        store(tail, m);
        std::copy_n(tail, w - x, out + x);
      }
    }
  }
}

void median_generic(ConstPlane src, Plane dst, int size) {
  const int r = size / 2;
  const auto w = static_cast<std::ptrdiff_t>(src.width);
  const auto h = static_cast<std::ptrdiff_t>(src.height);
  std::vector<double> window(static_cast<std::size_t>(size * size));
  const auto mid = window.begin() + static_cast<std::ptrdiff_t>(window.size() / 2);
  for (std::ptrdiff_t y = 0; y < h; ++y) {
    for (std::ptrdiff_t x = 0; x < w; ++x) {
      std::size_t i = 0;
      for (int dy = -r; dy <= r; ++dy) {
        const double* row = src.row(clamp_index(y + dy, h));
        for (int dx = -r; dx <= r; ++dx) window[i++] = row[clamp_index(x + dx, w)];
      }
      std::nth_element(window.begin(), mid, window.end());
      dst.row(static_cast<std::size_t>(y))[x] = *mid;
    }
  }
}

}  // namespace

void median(ConstPlane src, Plane dst, int size, Scratch& scratch) {
  switch (size) {
    case 3: median_small<3>(src, dst, scratch); break;
    case 5: median_small<5>(src, dst, scratch); break;
    default: median_generic(src, dst, size); break;
  }
}

}  // namespace densify::detail
