#include "config_document.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "densify/error.hpp"

namespace densify::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

int parse_int(std::string_view key, std::string_view value) {
  int out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ArgumentError("config key '" + std::string(key) + "': '" + std::string(value) +
                        "' is not an integer");
  }
  return out;
}

double parse_double(std::string_view key, std::string_view value) {
  const std::string copy(value);
  char* end = nullptr;
  const double out = std::strtod(copy.c_str(), &end);
  if (copy.empty() || end != copy.c_str() + copy.size() || !std::isfinite(out)) {
    throw ArgumentError("config key '" + std::string(key) + "': '" + copy +
                        "' is not a number");
  }
  return out;
}

std::string render_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "dilation_shape",   "dilation_size",         "closure_size",
      "small_fill_size",  "large_fill_size",       "large_fill_max_iters",
      "blur_mode",        "median_size",           "gaussian_size",
      "gaussian_sigma",   "bilateral_size",        "bilateral_sigma_value",
      "bilateral_sigma_space", "fill_mode",
  };
  return keys;
}

std::string flag_name(std::string_view key) {
  std::string flag = "--" + std::string(key);
  for (char& c : flag) {
    if (c == '_') c = '-';
  }
  return flag;
}

void apply_config_value(PipelineConfig& c, std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "dilation_shape") c.dilation_shape = parse_kernel_shape(value);
  else if (key == "dilation_size") c.dilation_size = parse_int(key, value);
  else if (key == "closure_size") c.closure_size = parse_int(key, value);
  else if (key == "small_fill_size") c.small_fill_size = parse_int(key, value);
  else if (key == "large_fill_size") c.large_fill_size = parse_int(key, value);
  else if (key == "large_fill_max_iters") c.large_fill_max_iters = parse_int(key, value);
  else if (key == "blur_mode") c.blur_mode = parse_blur_mode(value);
  else if (key == "median_size") c.median_size = parse_int(key, value);
  else if (key == "gaussian_size") c.gaussian_size = parse_int(key, value);
  else if (key == "gaussian_sigma") c.gaussian_sigma = parse_double(key, value);
  else if (key == "bilateral_size") c.bilateral_size = parse_int(key, value);
  else if (key == "bilateral_sigma_value") c.bilateral_sigma_value = parse_double(key, value);
  else if (key == "bilateral_sigma_space") c.bilateral_sigma_space = parse_double(key, value);
  else if (key == "fill_mode") c.fill_mode = parse_fill_mode(value);
  else throw ArgumentError("unknown config key '" + std::string(key) + "'");
}

PipelineConfig parse_config_document(std::string_view text, PipelineConfig base) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ArgumentError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    apply_config_value(base, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  base.validate();
  return base;
}

std::string render_config_document(const PipelineConfig& c) {
  std::ostringstream out;
  out << "dilation_shape = " << to_string(c.dilation_shape) << '\n'
      << "dilation_size = " << c.dilation_size << '\n'
      << "closure_size = " << c.closure_size << '\n'
      << "small_fill_size = " << c.small_fill_size << '\n'
      << "large_fill_size = " << c.large_fill_size << '\n'
      << "large_fill_max_iters = " << c.large_fill_max_iters << '\n'
      << "blur_mode = " << to_string(c.blur_mode) << '\n'
      << "median_size = " << c.median_size << '\n'
      << "gaussian_size = " << c.gaussian_size << '\n'
      << "gaussian_sigma = " << render_double(c.gaussian_sigma) << '\n'
      << "bilateral_size = " << c.bilateral_size << '\n'
      << "bilateral_sigma_value = " << render_double(c.bilateral_sigma_value) << '\n'
      << "bilateral_sigma_space = " << render_double(c.bilateral_sigma_space) << '\n'
      << "fill_mode = " << to_string(c.fill_mode) << '\n';
  return out.str();
}

PipelineConfig load_config_file(const std::string& path, PipelineConfig base) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_document(buf.str(), base);
}

}  // namespace densify::cli
