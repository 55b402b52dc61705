#pragma once

#include "densify/depth_map.hpp"
#include "densify/kernel.hpp"

namespace densify {

/// Out-of-bounds neighbors take the value of the nearest in-bounds pixel.
enum class BorderPolicy { Replicate };

// All operations below return a fresh map in the input's encoding and never
// modify their argument. Neighborhoods use BorderPolicy::Replicate.

/// Grayscale dilation: per-pixel max over the kernel footprint. Rejects
/// kernels larger than 2 * min(width, height) + 1.
DepthMap dilate(const DepthMap& map, const Kernel& kernel);

/// Grayscale erosion: per-pixel min over the kernel footprint.
DepthMap erode(const DepthMap& map, const Kernel& kernel);

/// erode(dilate(map, kernel), kernel).
DepthMap close(const DepthMap& map, const Kernel& kernel);

/// Fills empty pixels with dilate(map, kernel); valid pixels pass through.
DepthMap masked_fill_dilate(const DepthMap& map, const Kernel& kernel);

/// Copies the topmost valid value of every column into the empty rows above
/// it. Columns without any valid pixel are left alone.
DepthMap extend_to_top(const DepthMap& map);

/// size x size median. `size` must be odd and >= 3.
DepthMap median_filter(const DepthMap& map, int size);

/// Conventional sigma for a Gaussian of the given odd size:
/// 0.3 * ((size - 1) / 2 - 1) + 0.8, i.e. 1.1 for size 5.
double default_gaussian_sigma(int size);

/// Separable normalized Gaussian blur (horizontal pass, then vertical).
DepthMap gaussian_filter(const DepthMap& map, int size, double sigma);

/// Edge-preserving blur; sigma_value is in depth units, sigma_space in pixels.
DepthMap bilateral_filter(const DepthMap& map, int size, double sigma_value, double sigma_space);

/// Normalized 1-D Gaussian taps for offsets -size/2 .. size/2.
std::vector<double> gaussian_taps(int size, double sigma);

}  // namespace densify
