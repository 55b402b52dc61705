#pragma once

#include <array>
#include <utility>

namespace densify::detail {

// Per-window selection network for the 5x5 median. Wire k * 5 + c holds the
// k-th smallest value of window column c; kMedian25Wire ends up holding the
// median of all 25 values.
// Generated by tools/gen_median25.py; do not edit.
inline constexpr int kMedian25Wire = 12;
inline constexpr std::array<std::pair<int, int>, 65> kMedian25Network = {{
    {3, 4}, {2, 4}, {2, 3}, {0, 3}, {1, 4}, {1, 3},
    {7, 9}, {5, 8}, {5, 7}, {6, 9}, {6, 8}, {6, 7},
    {10, 11}, {13, 14}, {12, 14}, {10, 13}, {10, 12}, {11, 14},
    {18, 19}, {17, 19}, {17, 18}, {15, 18}, {16, 19}, {16, 18},
    {22, 24}, {20, 23}, {20, 22}, {21, 24}, {21, 23}, {21, 22},
    {3, 4}, {7, 8}, {3, 7}, {4, 8}, {4, 7}, {9, 11},
    {12, 13}, {9, 12}, {11, 13}, {11, 12}, {3, 9}, {7, 12},
    {7, 9}, {4, 11}, {8, 13}, {8, 11}, {8, 9}, {11, 12},
    {15, 16}, {17, 20}, {15, 17}, {16, 20}, {16, 17}, {17, 21},
    {16, 17}, {20, 21}, {9, 15}, {7, 17}, {12, 17}, {12, 15},
    {4, 16}, {11, 16}, {8, 20}, {8, 11}, {11, 12},
}};

}  // namespace densify::detail
