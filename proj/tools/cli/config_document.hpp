#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "densify/pipeline.hpp"

namespace densify::cli {

/// Keys of the flat "key = value" config document, in rendering order. Each
/// is also a kebab-case command-line flag (dilation_shape -> --dilation-shape).
const std::vector<std::string>& config_keys();

/// Sets one field from its textual value. Throws ArgumentError on an unknown
/// key or unparsable value.
void apply_config_value(PipelineConfig& config, std::string_view key, std::string_view value);

/// Parses a document on top of `base`. Blank lines and '#' comments are
/// ignored. The result is validated.
PipelineConfig parse_config_document(std::string_view text, PipelineConfig base = {});

/// Renders every key; parse_config_document(render_config_document(c)) == c.
std::string render_config_document(const PipelineConfig& config);

PipelineConfig load_config_file(const std::string& path, PipelineConfig base = {});

std::string flag_name(std::string_view key);

}  // namespace densify::cli
