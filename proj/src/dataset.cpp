#include "gesturebench/dataset.hpp"

#include "gesturebench/error.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace gesturebench {

namespace {

std::string strip(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

} // namespace

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& manifest_csv) {
    std::ifstream in(manifest_csv);
    if (!in) throw Error(ErrorCode::FileNotFound, manifest_csv.string());
    std::vector<ManifestEntry> entries;
    std::set<std::string> ids;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip(line);
        if (line.empty() || line.front() == '#') continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        for (std::string f; std::getline(ss, f, ',');) fields.push_back(strip(f));
        if (!header_seen) {
            if (fields != std::vector<std::string>{"id", "class", "path"})
                throw Error(ErrorCode::ParseFailure, manifest_csv.string() + ": expected header 'id,class,path'");
            header_seen = true;
            continue;
        }
        if (fields.size() != 3 || fields[0].empty() || fields[1].empty() || fields[2].empty())
            throw Error(ErrorCode::ParseFailure, manifest_csv.string() + ":" + std::to_string(line_no) + ": expected 3 fields");
        if (!ids.insert(fields[0]).second) throw Error(ErrorCode::DuplicateId, "'" + fields[0] + "' in manifest");
        entries.push_back({fields[0], fields[1], fields[2]});
    }
    if (!header_seen) throw Error(ErrorCode::ParseFailure, manifest_csv.string() + ": missing header");
    return entries;
}

void write_manifest(const std::filesystem::path& manifest_csv, const std::vector<ManifestEntry>& entries) {
    std::ofstream out(manifest_csv, std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoFailure, "cannot open " + manifest_csv.string());
    out << "id,class,path\n";
    for (const auto& e : entries) out << e.id << ',' << e.label << ',' << e.path << '\n';
    if (!out) throw Error(ErrorCode::IoFailure, "write failed for " + manifest_csv.string());
}

std::vector<LabeledMask> load_normalized_dataset(const std::filesystem::path& dir) {
    const auto entries = read_manifest(dir / kManifestName);
    std::vector<LabeledMask> out;
    out.reserve(entries.size());
    for (const auto& e : entries) {
        const std::filesystem::path p(e.path);
        BinaryMask m = load_mask(p.is_absolute() ? p : dir / p);
        if (!out.empty() && m.width() != out.front().mask.mask.width())
            throw Error(ErrorCode::WidthMismatch, "'" + e.id + "' is " + std::to_string(m.width()) +
                                                      " pixels wide; dataset masks must be normalized");
        out.push_back({e.id, e.label, as_normalized(std::move(m), e.id)});
    }
    return out;
}

} // namespace gesturebench
