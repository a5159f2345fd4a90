#pragma once

#include "gesturebench/descriptors.hpp"
#include "gesturebench/matching.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gesturebench {

enum class MethodId { SC, SCDT, SCH, HOG, DT, TM, HD, HM };

inline constexpr std::array<MethodId, 8> kAllMethods{MethodId::SC, MethodId::SCDT, MethodId::SCH, MethodId::HOG,
                                                     MethodId::DT, MethodId::TM,   MethodId::HD,  MethodId::HM};

/// Upper-case display name ("SCDT").
std::string_view method_name(MethodId m);
/// Case-insensitive parse of the eight method ids.
std::optional<MethodId> parse_method(std::string_view text);
/// Features a bundle must carry for `m` to score it.
FeatureSet required_features(MethodId m);

/// Cost between two bundles under method m; lower is more similar.
/// Throws MissingFeature when either bundle lacks what m needs.
double score(const DescriptorBundle& probe, const DescriptorBundle& entry, MethodId m, const CombineWeights& w = {});

/// A labeled image with its (shared, immutable) features.
struct LabeledBundle {
    std::string id;
    std::string label;
    std::shared_ptr<const DescriptorBundle> bundle;
};

/// Immutable labeled reference set with exactly g entries per class.
class Gallery {
public:
    /// Throws InvalidGallery when empty or when class sizes differ.
    explicit Gallery(std::vector<LabeledBundle> entries);

    const std::vector<LabeledBundle>& entries() const noexcept { return entries_; }
    /// Sorted distinct class labels.
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    /// Class index (into labels()) of each entry.
    const std::vector<std::size_t>& entry_class() const noexcept { return entry_class_; }
    std::size_t per_class() const noexcept { return per_class_; }

private:
    std::vector<LabeledBundle> entries_;
    std::vector<std::string> labels_;
    std::vector<std::size_t> entry_class_;
    std::size_t per_class_ = 0;
};

struct ProbeResult {
    std::string probe_id;
    std::string true_label;
    std::vector<std::string> candidates; // class labels, best first
    std::vector<double> candidate_costs; // per-class best cost, aligned with candidates
    std::size_t rank = 0;                // 1-based position of true_label

    friend bool operator==(const ProbeResult&, const ProbeResult&) = default;
};

/// Outcome of one probe in a batch: either a result or a tagged error.
struct ProbeOutcome {
    std::string probe_id;
    std::optional<ProbeResult> result;
    std::string error;

    friend bool operator==(const ProbeOutcome&, const ProbeOutcome&) = default;
};

/// Collapses per-entry costs to per-class minima and sorts classes by
/// (cost, label). Exposed so every ranking path shares one rule.
ProbeResult rank_classes(std::string probe_id, std::string true_label, const std::vector<std::string>& labels,
                         std::span<const std::size_t> entry_class, std::span<const double> entry_costs);

ProbeResult classify_one(const LabeledBundle& probe, const Gallery& gallery, MethodId m, const CombineWeights& w = {},
                         int threads = 1);

/// Results come back in probe order regardless of `threads`.
std::vector<ProbeOutcome> classify_batch(std::span<const LabeledBundle> probes, const Gallery& gallery, MethodId m,
                                         int threads, const CombineWeights& w = {});

struct CrcReport {
    MethodId method = MethodId::SC;
    std::size_t g = 1;
    std::size_t repeats = 0;
    std::vector<std::string> labels;
    std::vector<std::vector<double>> per_repeat; // repeats x ranks, percentages
    std::vector<double> mean;                    // CR(r) for r = 1..classes
    std::vector<double> sigma;                   // population standard deviation

    friend bool operator==(const CrcReport&, const CrcReport&) = default;
};

struct EvaluateOptions {
    std::size_t g = 1;
    std::size_t repeats = 1;
    std::uint64_t seed = 0;
    int threads = 1;
    CombineWeights weights;
};

/// Gallery/probe protocol: each repeat draws g gallery images per class and
/// ranks every remaining image. With g = 1 and repeats not exceeding the
/// smallest class, the per-repeat galleries are disjoint.
CrcReport evaluate(std::span<const LabeledBundle> dataset, MethodId m, const EvaluateOptions& opts);

/// Per-repeat gallery indices into `dataset`, grouped by class. Exposed for tests.
std::vector<std::vector<std::size_t>> draw_galleries(std::span<const LabeledBundle> dataset, std::size_t g,
                                                     std::size_t repeats, std::uint64_t seed);

/// `probe_id,true_label,rank,top1,top1_cost`; failed probes are skipped.
void write_results_csv(const std::filesystem::path& path, std::span<const ProbeOutcome> outcomes);
/// `method,g,rank,cr_mean,cr_sigma`.
void write_crc_csv(const std::filesystem::path& path, std::span<const CrcReport> reports);

} // namespace gesturebench
