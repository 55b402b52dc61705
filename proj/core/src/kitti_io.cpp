#include "densify/kitti_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <map>
#include <memory>

#include "densify/error.hpp"

namespace densify {

namespace fs = std::filesystem;

namespace {

// libpng reports failures by longjmp; only trivially destructible locals
// live between setjmp and the libpng calls.
constexpr int kCompressionLevel = 6;

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const fs::path& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) throw IoError("cannot open '" + path.string() + "'");
  return f;
}

struct ReadHandles {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~ReadHandles() { png_destroy_read_struct(&png, info ? &info : nullptr, nullptr); }
};

struct WriteHandles {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~WriteHandles() { png_destroy_write_struct(&png, info ? &info : nullptr); }
};

bool little_endian() {
  const std::uint16_t probe = 1;
  return *reinterpret_cast<const std::uint8_t*>(&probe) == 1;
}

struct Decoded {
  std::size_t width = 0;
  std::size_t height = 0;
  int bit_depth = 0;
  int color_type = 0;
};

// Reads the header, lets `accept` veto the format, then decodes into `buffer`
// (rows of `bytes_per_row(width)` bytes each).
template <class Accept, class RowBytes>
Decoded decode(const fs::path& path, std::vector<std::uint8_t>& buffer, Accept accept,
               RowBytes bytes_per_row) {
  FilePtr file = open_file(path, "rb");
  png_byte sig[8];
  if (std::fread(sig, 1, 8, file.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0) {
    throw IoError("'" + path.string() + "' is not a PNG file");
  }
  ReadHandles h;
  h.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!h.png) throw IoError("png_create_read_struct failed");
  h.info = png_create_info_struct(h.png);
  if (!h.info) throw IoError("png_create_info_struct failed");

  Decoded d;
  std::vector<png_bytep> rows;
  bool rejected = false;
  if (setjmp(png_jmpbuf(h.png))) {
    throw IoError("corrupt PNG '" + path.string() + "'");
  }
  png_init_io(h.png, file.get());
  png_set_sig_bytes(h.png, 8);
  png_read_info(h.png, h.info);
  d.width = png_get_image_width(h.png, h.info);
  d.height = png_get_image_height(h.png, h.info);
  d.bit_depth = png_get_bit_depth(h.png, h.info);
  d.color_type = png_get_color_type(h.png, h.info);
  if (d.width == 0 || d.height == 0 || !accept(d)) {
    rejected = true;
  } else {
    if (d.bit_depth == 16 && little_endian()) png_set_swap(h.png);
    png_read_update_info(h.png, h.info);
    const std::size_t stride = bytes_per_row(d.width);
    buffer.assign(stride * d.height, 0);
    rows.resize(d.height);
    for (std::size_t y = 0; y < d.height; ++y) rows[y] = buffer.data() + y * stride;
    png_read_image(h.png, rows.data());
    png_read_end(h.png, nullptr);
  }
  if (rejected) {
    throw IoError("'" + path.string() + "': unsupported PNG format (bit depth " +
                  std::to_string(d.bit_depth) + ", color type " + std::to_string(d.color_type) +
                  ", " + std::to_string(d.width) + "x" + std::to_string(d.height) + ")");
  }
  return d;
}

void encode(const fs::path& path, std::size_t width, std::size_t height, int bit_depth,
            int color_type, const std::uint8_t* data, std::size_t stride) {
  FilePtr file = open_file(path, "wb");
  WriteHandles h;
  h.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!h.png) throw IoError("png_create_write_struct failed");
  h.info = png_create_info_struct(h.png);
  if (!h.info) throw IoError("png_create_info_struct failed");

  std::vector<png_bytep> rows(height);
  for (std::size_t y = 0; y < height; ++y) {
    rows[y] = const_cast<png_bytep>(data + y * stride);
  }
  if (setjmp(png_jmpbuf(h.png))) {
    throw IoError("failed to write PNG '" + path.string() + "'");
  }
  png_init_io(h.png, file.get());
  png_set_compression_level(h.png, kCompressionLevel);
  png_set_IHDR(h.png, h.info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height),
               bit_depth, color_type, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(h.png, h.info);
  if (bit_depth == 16 && little_endian()) png_set_swap(h.png);
  png_write_image(h.png, rows.data());
  png_write_end(h.png, nullptr);
  if (std::fflush(file.get()) != 0) throw IoError("failed to flush '" + path.string() + "'");
}

}  // namespace

std::uint16_t depth_to_raw(double depth_m) {
  const double raw = std::round(depth_m * kDepthPngScale);
  return static_cast<std::uint16_t>(std::clamp(raw, 0.0, 65535.0));
}

RawDepthImage to_raw(const DepthMap& map) {
  RawDepthImage img{map.width(), map.height(), std::vector<std::uint16_t>(map.size())};
  const auto v = map.values();
  std::transform(v.begin(), v.end(), img.pixels.begin(), depth_to_raw);
  return img;
}

DepthMap from_raw(const RawDepthImage& raw) {
  std::vector<double> values(raw.pixels.size());
  std::transform(raw.pixels.begin(), raw.pixels.end(), values.begin(), raw_to_depth);
  return DepthMap(raw.width, raw.height, std::move(values));
}

RawDepthImage read_png16(const fs::path& path) {
  std::vector<std::uint8_t> buffer;
  const Decoded d = decode(
      path, buffer,
      [](const Decoded& h) { return h.bit_depth == 16 && h.color_type == PNG_COLOR_TYPE_GRAY; },
      [](std::size_t w) { return w * 2; });
  RawDepthImage img{d.width, d.height, std::vector<std::uint16_t>(d.width * d.height)};
  std::memcpy(img.pixels.data(), buffer.data(), buffer.size());
  return img;
}

void write_png16(const RawDepthImage& image, const fs::path& path) {
  if (image.width == 0 || image.height == 0 ||
      image.pixels.size() != image.width * image.height) {
    throw DimensionError("write_png16: inconsistent image dimensions");
  }
  encode(path, image.width, image.height, 16, PNG_COLOR_TYPE_GRAY,
         reinterpret_cast<const std::uint8_t*>(image.pixels.data()), image.width * 2);
}

DepthMap read_depth_png(const fs::path& path) { return from_raw(read_png16(path)); }

void write_depth_png(const DepthMap& map, const fs::path& path) {
  if (map.encoding() != Encoding::Direct) {
    throw EncodingError("write_depth_png: map must be direct-encoded");
  }
  const auto v = map.values();
  const auto worst = std::max_element(v.begin(), v.end());
  if (*worst >= 256.0) {
    throw RangeError("write_depth_png: depth " + std::to_string(*worst) +
                     " m is not representable (limit 256 m)");
  }
  write_png16(to_raw(map), path);
}

std::array<std::uint8_t, 3> ramp_color(double t) {
  static constexpr std::array<std::array<double, 3>, 5> kStops = {{
      {0, 0, 255},
      {0, 255, 255},
      {0, 255, 0},
      {255, 255, 0},
      {255, 0, 0},
  }};
  t = std::clamp(t, 0.0, 1.0) * 4.0;
  const auto i = std::min<std::size_t>(static_cast<std::size_t>(t), 3);
  const double f = t - static_cast<double>(i);
  std::array<std::uint8_t, 3> rgb{};
  for (std::size_t c = 0; c < 3; ++c) {
    const double v = kStops[i][c] + (kStops[i + 1][c] - kStops[i][c]) * f;
    rgb[c] = static_cast<std::uint8_t>(std::lround(v));
  }
  return rgb;
}

void write_colormap_png(const ScalarGrid& grid, const fs::path& path, double range_min,
                        double range_max) {
  if (!(range_max > range_min)) {
    throw ArgumentError("colormap range must satisfy max > min");
  }
  if (grid.width == 0 || grid.height == 0 || grid.values.size() != grid.width * grid.height) {
    throw DimensionError("write_colormap_png: inconsistent grid dimensions");
  }
  std::vector<std::uint8_t> rgb(grid.values.size() * 3, 0);
  const double span = range_max - range_min;
  for (std::size_t i = 0; i < grid.values.size(); ++i) {
    const double v = grid.values[i];
    if (!(v > 0.0)) continue;
    const auto c = ramp_color((v - range_min) / span);
    std::copy(c.begin(), c.end(), rgb.begin() + static_cast<std::ptrdiff_t>(i * 3));
  }
  encode(path, grid.width, grid.height, 8, PNG_COLOR_TYPE_RGB, rgb.data(), grid.width * 3);
}

void write_colormap_png(const DepthMap& map, const fs::path& path, double range_min,
                        double range_max) {
  const auto v = map.values();
  write_colormap_png(ScalarGrid{map.width(), map.height(), {v.begin(), v.end()}}, path,
                     range_min, range_max);
}

RgbImage read_rgb_png(const fs::path& path) {
  std::vector<std::uint8_t> buffer;
  const Decoded d = decode(
      path, buffer,
      [](const Decoded& h) { return h.bit_depth == 8 && h.color_type == PNG_COLOR_TYPE_RGB; },
      [](std::size_t w) { return w * 3; });
  return RgbImage{d.width, d.height, std::move(buffer)};
}

std::string kitti_pair_key(std::string_view file_name) {
  std::string key(file_name);
  for (std::string_view token : {"velodyne_raw", "groundtruth_depth"}) {
    const auto pos = key.find(token);
    if (pos != std::string::npos) key.replace(pos, token.size(), "*");
  }
  return key;
}

std::vector<fs::path> list_depth_pngs(const fs::path& path) {
  std::error_code ec;
  if (fs::is_regular_file(path, ec)) return {path};
  if (!fs::is_directory(path, ec)) {
    throw IoError("'" + path.string() + "' is neither a file nor a directory");
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(path)) {
    if (entry.is_regular_file() && entry.path().extension() == ".png") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

PairListing enumerate_pairs(const fs::path& pred_dir, const fs::path& gt_dir,
                            const PairKey& key) {
  for (const auto& dir : {pred_dir, gt_dir}) {
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) {
      throw IoError("'" + dir.string() + "' is not a directory");
    }
  }
  auto key_of = [&](const fs::path& p) {
    const std::string name = p.filename().string();
    return key ? key(name) : name;
  };
  std::map<std::string, fs::path> gt_by_key;
  for (auto& p : list_depth_pngs(gt_dir)) gt_by_key.emplace(key_of(p), std::move(p));

  std::map<std::string, FilePair> matched;
  PairListing listing;
  for (auto& p : list_depth_pngs(pred_dir)) {
    const std::string k = key_of(p);
    auto it = gt_by_key.find(k);
    if (it == gt_by_key.end()) {
      listing.unmatched_pred.push_back(std::move(p));
    } else {
      matched.emplace(k, FilePair{std::move(p), std::move(it->second)});
      gt_by_key.erase(it);
    }
  }
  for (auto& [k, p] : gt_by_key) listing.unmatched_gt.push_back(std::move(p));
  for (auto& [k, pair] : matched) listing.pairs.push_back(std::move(pair));
  if (listing.pairs.empty()) {
    throw IoError("no matching depth PNGs between '" + pred_dir.string() + "' and '" +
                  gt_dir.string() + "'");
  }
  return listing;
}

}  // namespace densify
