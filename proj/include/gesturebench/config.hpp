#pragma once

#include "gesturebench/descriptors.hpp"
#include "gesturebench/mask.hpp"
#include "gesturebench/matching.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace gesturebench {

/// Tunable pipeline constants. Defaults: alpha 0.17, beta 1.0, w_M 100, M_SC 20.
struct PipelineParams {
    NormalizationConfig normalization;
    DescriptorConfig descriptors;
    CombineWeights weights;
};

/// Keys accepted in a `key=value` config file.
const std::vector<std::string_view>& config_keys();

/// Applies `key=value` lines onto params. Blank lines and '#' comments are
/// ignored; unknown keys and unparsable values throw InvalidConfig.
void apply_config_text(const std::string& text, PipelineParams& params);
void apply_config_file(const std::filesystem::path& path, PipelineParams& params);
void apply_config_value(std::string_view key, std::string_view value, PipelineParams& params);

/// Cross-key checks; apply_config_text and apply_config_file call it once at the end.
void validate_params(const PipelineParams& params);

} // namespace gesturebench
