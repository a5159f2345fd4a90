#pragma once

#include "gesturebench/mask.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace gesturebench {

/// One row of a dataset manifest (`id,class,path`); path is relative to
/// the manifest's directory unless absolute.
struct ManifestEntry {
    std::string id;
    std::string label;
    std::string path;

    friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

inline constexpr const char* kManifestName = "manifest.csv";
inline constexpr const char* kWristName = "wrists.csv";

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& manifest_csv);
void write_manifest(const std::filesystem::path& manifest_csv, const std::vector<ManifestEntry>& entries);

struct LabeledMask {
    std::string id;
    std::string label;
    NormalizedMask mask;
};

/// Loads every mask listed in `dir`/manifest.csv as an already-normalized
/// mask. Throws WidthMismatch if the masks do not share one width.
std::vector<LabeledMask> load_normalized_dataset(const std::filesystem::path& dir);

} // namespace gesturebench
