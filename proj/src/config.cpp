#include "gesturebench/config.hpp"

#include "gesturebench/error.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace gesturebench {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
    T value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
        throw Error(ErrorCode::InvalidConfig, std::string(key) + " = '" + std::string(text) + "' is not a number");
    return value;
}

} // namespace

const std::vector<std::string_view>& config_keys() {
    static const std::vector<std::string_view> keys{"alpha",           "beta",           "w_M",
                                                    "M_SC",            "sc_radial_bins", "sc_angular_bins",
                                                    "sc_inner_radius", "sc_outer_radius", "dt_bins",
                                                    "orientation_bins"};
    return keys;
}

void apply_config_value(std::string_view key, std::string_view value, PipelineParams& p) {
    if (key == "alpha") p.weights.alpha = parse_number<double>(key, value);
    else if (key == "beta") p.weights.beta = parse_number<double>(key, value);
    else if (key == "w_M") p.normalization.target_width = parse_number<int>(key, value);
    else if (key == "M_SC") p.descriptors.sc_points = parse_number<std::size_t>(key, value);
    else if (key == "sc_radial_bins") p.descriptors.radial_bins = parse_number<int>(key, value);
    else if (key == "sc_angular_bins") p.descriptors.angular_bins = parse_number<int>(key, value);
    else if (key == "sc_inner_radius") p.descriptors.inner_radius = parse_number<double>(key, value);
    else if (key == "sc_outer_radius") p.descriptors.outer_radius = parse_number<double>(key, value);
    else if (key == "dt_bins") p.descriptors.dt_bins = parse_number<int>(key, value);
    else if (key == "orientation_bins") p.descriptors.orientation_bins = parse_number<int>(key, value);
    else throw Error(ErrorCode::InvalidConfig, "unknown key '" + std::string(key) + "'");

    if (p.weights.alpha < 0 || p.weights.beta < 0 || !(p.weights.alpha + p.weights.beta > 0))
        throw Error(ErrorCode::InvalidConfig, "alpha and beta must be >= 0 with a positive sum");
    if (p.normalization.target_width < 8) throw Error(ErrorCode::InvalidConfig, "w_M must be >= 8");
    if (p.descriptors.sc_points < 4) throw Error(ErrorCode::InvalidConfig, "M_SC must be >= 4");
    if (p.descriptors.radial_bins < 1 || p.descriptors.angular_bins < 1 || p.descriptors.dt_bins < 1 ||
        p.descriptors.orientation_bins < 1)
        throw Error(ErrorCode::InvalidConfig, "bin counts must be >= 1");
}

void validate_params(const PipelineParams& p) {
    const auto& d = p.descriptors;
    if (!(d.inner_radius > 0.0) || !(d.outer_radius > d.inner_radius))
        throw Error(ErrorCode::InvalidConfig, "need 0 < sc_inner_radius < sc_outer_radius");
}

void apply_config_text(const std::string& text, PipelineParams& params) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const std::string_view t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string_view::npos) throw Error(ErrorCode::InvalidConfig, "expected key=value, got '" + std::string(t) + "'");
        apply_config_value(trim(t.substr(0, eq)), trim(t.substr(eq + 1)), params);
    }
    validate_params(params);
}

void apply_config_file(const std::filesystem::path& path, PipelineParams& params) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::FileNotFound, path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    apply_config_text(buf.str(), params);
}

} // namespace gesturebench
