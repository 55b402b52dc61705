#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "densify/depth_map.hpp"
#include "densify/metrics.hpp"

namespace densify {

/// KITTI depth PNG convention: depth_m = raw / 256, raw 0 = no measurement.
inline constexpr double kDepthPngScale = 256.0;

/// Decoded single-channel 16-bit image.
struct RawDepthImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint16_t> pixels;

  friend bool operator==(const RawDepthImage&, const RawDepthImage&) = default;
};

/// round(depth * 256) clamped to [0, 65535].
std::uint16_t depth_to_raw(double depth_m);
inline double raw_to_depth(std::uint16_t raw) { return raw / kDepthPngScale; }

RawDepthImage to_raw(const DepthMap& map);
DepthMap from_raw(const RawDepthImage& raw);

/// Throws IoError for unreadable files or anything but 16-bit grayscale.
RawDepthImage read_png16(const std::filesystem::path& path);
void write_png16(const RawDepthImage& image, const std::filesystem::path& path);

DepthMap read_depth_png(const std::filesystem::path& path);

/// Requires a Direct map with every value below 256 m.
void write_depth_png(const DepthMap& map, const std::filesystem::path& path);

/// Blue-to-red ramp used by write_colormap_png: piecewise linear through
/// blue, cyan, green, yellow and red at t = 0, 1/4, 1/2, 3/4, 1.
std::array<std::uint8_t, 3> ramp_color(double t);

/// 8-bit RGB rendering of a scalar grid. Values <= 0 are black; others map
/// linearly from [range_min, range_max] onto the ramp, clamped at the ends.
void write_colormap_png(const ScalarGrid& grid, const std::filesystem::path& path,
                        double range_min, double range_max);
void write_colormap_png(const DepthMap& map, const std::filesystem::path& path,
                        double range_min, double range_max);

/// 8-bit RGB decode, for checking rendered images.
struct RgbImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> pixels;  // interleaved RGB
};
RgbImage read_rgb_png(const std::filesystem::path& path);

struct FilePair {
  std::filesystem::path pred;
  std::filesystem::path gt;
};

struct PairListing {
  std::vector<FilePair> pairs;  // sorted by key
  std::vector<std::filesystem::path> unmatched_pred;
  std::vector<std::filesystem::path> unmatched_gt;
};

/// Maps a file name to its matching key; identical keys pair up.
using PairKey = std::function<std::string(std::string_view)>;

/// Key that ignores KITTI's "velodyne_raw" / "groundtruth_depth" name tokens,
/// so raw inputs (and predictions named after them) pair with ground truth.
std::string kitti_pair_key(std::string_view file_name);

/// Pairs the .png files of two directories by key (file name by default).
/// Throws IoError when a directory is missing or no pair matches.
PairListing enumerate_pairs(const std::filesystem::path& pred_dir,
                            const std::filesystem::path& gt_dir, const PairKey& key = {});

/// Sorted .png files of a directory, or the path itself if it is a file.
std::vector<std::filesystem::path> list_depth_pngs(const std::filesystem::path& path);

}  // namespace densify
