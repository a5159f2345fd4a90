#include "gesturebench/classify.hpp"

#include "gesturebench/error.hpp"
#include "gesturebench/parallel.hpp"
#include "gesturebench/rng.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>

namespace gesturebench {

std::string_view method_name(MethodId m) {
    switch (m) {
    case MethodId::SC: return "SC";
    case MethodId::SCDT: return "SCDT";
    case MethodId::SCH: return "SCH";
    case MethodId::HOG: return "HOG";
    case MethodId::DT: return "DT";
    case MethodId::TM: return "TM";
    case MethodId::HD: return "HD";
    case MethodId::HM: return "HM";
    }
    return "?";
}

std::optional<MethodId> parse_method(std::string_view text) {
    std::string upper(text);
    std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
    for (MethodId m : kAllMethods)
        if (method_name(m) == upper) return m;
    return std::nullopt;
}

FeatureSet required_features(MethodId m) {
    switch (m) {
    case MethodId::SC: return Feature::ShapeContext;
    case MethodId::SCDT: return Feature::ShapeContext | Feature::DistanceHistogram;
    case MethodId::SCH: return Feature::ShapeContext | Feature::Orientation;
    case MethodId::HOG: return Feature::Orientation;
    case MethodId::DT: return Feature::DistanceHistogram;
    case MethodId::TM: return Feature::Template;
    case MethodId::HD: return Feature::Contour;
    case MethodId::HM: return Feature::Hu;
    }
    return {};
}

namespace {

template <typename T>
const T& require(const std::optional<T>& member, const char* feature, MethodId m) {
    if (!member)
        throw Error(ErrorCode::MissingFeature,
                    std::string(method_name(m)) + " needs feature '" + feature + "'");
    return *member;
}

} // namespace

double score(const DescriptorBundle& probe, const DescriptorBundle& entry, MethodId m, const CombineWeights& w) {
    auto sc = [&] { return sc_cost(require(probe.sc, "shape_contexts", m), require(entry.sc, "shape_contexts", m)); };
    auto dt = [&] {
        return chi_square(require(probe.dt_hist, "dt_histogram", m).bins, require(entry.dt_hist, "dt_histogram", m).bins) / 2.0;
    };
    auto hog = [&] {
        return chi_square(require(probe.ohist, "orientation_histogram", m).bins,
                          require(entry.ohist, "orientation_histogram", m).bins) / 2.0;
    };
    switch (m) {
    case MethodId::SC: return sc();
    case MethodId::SCDT: return combined_cost(sc(), dt(), w);
    case MethodId::SCH: return combined_cost(sc(), hog(), w);
    case MethodId::HOG: return hog();
    case MethodId::DT: return dt();
    case MethodId::TM: return template_ssd(require(probe.mask, "mask", m), require(entry.mask, "mask", m));
    case MethodId::HD:
        return hausdorff(require(probe.contour, "contour", m).points, require(entry.contour, "contour", m).points);
    case MethodId::HM: return hu_distance(require(probe.hu, "hu_moments", m), require(entry.hu, "hu_moments", m));
    }
    throw Error(ErrorCode::InvalidArgument, "unknown method");
}

Gallery::Gallery(std::vector<LabeledBundle> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw Error(ErrorCode::InvalidGallery, "gallery is empty");
    std::map<std::string, std::size_t> counts;
    for (const auto& e : entries_) {
        if (!e.bundle) throw Error(ErrorCode::InvalidGallery, "entry '" + e.id + "' has no features");
        ++counts[e.label];
    }
    per_class_ = counts.begin()->second;
    for (const auto& [label, n] : counts) {
        if (n != per_class_)
            throw Error(ErrorCode::InvalidGallery, "class '" + label + "' has " + std::to_string(n) +
                                                       " entries, expected " + std::to_string(per_class_));
        labels_.push_back(label);
    }
    entry_class_.reserve(entries_.size());
    for (const auto& e : entries_)
        entry_class_.push_back(static_cast<std::size_t>(
            std::lower_bound(labels_.begin(), labels_.end(), e.label) - labels_.begin()));
}

ProbeResult rank_classes(std::string probe_id, std::string true_label, const std::vector<std::string>& labels,
                         std::span<const std::size_t> entry_class, std::span<const double> entry_costs) {
    std::vector<double> best(labels.size(), std::numeric_limits<double>::infinity());
    for (std::size_t e = 0; e < entry_costs.size(); ++e)
        best[entry_class[e]] = std::min(best[entry_class[e]], entry_costs[e]);

    // labels are sorted, so a stable sort on cost breaks ties by label.
    std::vector<std::size_t> order(labels.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return best[a] < best[b]; });

    ProbeResult r;
    r.probe_id = std::move(probe_id);
    r.true_label = std::move(true_label);
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        r.candidates.push_back(labels[order[pos]]);
        r.candidate_costs.push_back(best[order[pos]]);
        if (labels[order[pos]] == r.true_label) r.rank = pos + 1;
    }
    if (r.rank == 0)
        throw Error(ErrorCode::UnknownLabel, "probe '" + r.probe_id + "' has label '" + r.true_label +
                                                 "' which is not in the gallery");
    return r;
}

ProbeResult classify_one(const LabeledBundle& probe, const Gallery& gallery, MethodId m, const CombineWeights& w,
                         int threads) {
    if (!probe.bundle) throw Error(ErrorCode::MissingFeature, "probe '" + probe.id + "' has no features");
    const auto& entries = gallery.entries();
    std::vector<double> costs(entries.size());
    parallel_for(entries.size(), threads,
                 [&](std::size_t e) { costs[e] = score(*probe.bundle, *entries[e].bundle, m, w); });
    return rank_classes(probe.id, probe.label, gallery.labels(), gallery.entry_class(), costs);
}

std::vector<ProbeOutcome> classify_batch(std::span<const LabeledBundle> probes, const Gallery& gallery, MethodId m,
                                         int threads, const CombineWeights& w) {
    if (threads < 1) throw Error(ErrorCode::InvalidArgument, "thread count must be >= 1");
    std::vector<ProbeOutcome> out(probes.size());
    // Spare threads go to the gallery loop when there are fewer probes than threads.
    const int inner = std::max(1, threads / static_cast<int>(std::max<std::size_t>(1, probes.size())));
    parallel_for(probes.size(), threads, [&](std::size_t i) {
        out[i].probe_id = probes[i].id;
        try {
            out[i].result = classify_one(probes[i], gallery, m, w, inner);
        } catch (const Error& e) {
            out[i].error = probes[i].id + ": " + e.what();
        }
    });
    return out;
}

namespace {

struct ClassGroups {
    std::vector<std::string> labels;
    std::vector<std::vector<std::size_t>> members; // dataset indices per class, dataset order
};

ClassGroups group_by_label(std::span<const LabeledBundle> dataset) {
    std::map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < dataset.size(); ++i) groups[dataset[i].label].push_back(i);
    ClassGroups out;
    for (auto& [label, idx] : groups) {
        out.labels.push_back(label);
        out.members.push_back(std::move(idx));
    }
    return out;
}

constexpr std::uint64_t kDisjointStream = 0x5eed000000000000ULL;

} // namespace

std::vector<std::vector<std::size_t>> draw_galleries(std::span<const LabeledBundle> dataset, std::size_t g,
                                                     std::size_t repeats, std::uint64_t seed) {
    if (g < 1 || repeats < 1) throw Error(ErrorCode::InvalidArgument, "g and repeats must be >= 1");
    const ClassGroups groups = group_by_label(dataset);
    if (groups.labels.empty()) throw Error(ErrorCode::InsufficientImages, "dataset is empty");
    std::size_t smallest = std::numeric_limits<std::size_t>::max();
    for (std::size_t c = 0; c < groups.labels.size(); ++c) {
        const std::size_t n = groups.members[c].size();
        if (n <= g)
            throw Error(ErrorCode::InsufficientImages, "class '" + groups.labels[c] + "' has " + std::to_string(n) +
                                                           " images, needs more than g = " + std::to_string(g));
        smallest = std::min(smallest, n);
    }

    std::vector<std::vector<std::size_t>> galleries(repeats);
    const bool disjoint = g == 1 && repeats <= smallest;
    for (std::size_t c = 0; c < groups.labels.size(); ++c) {
        const auto& members = groups.members[c];
        if (disjoint) {
            CounterRng rng(seed, kDisjointStream + c);
            const auto order = shuffled_indices(members.size(), rng);
            for (std::size_t r = 0; r < repeats; ++r) galleries[r].push_back(members[order[r]]);
        } else {
            for (std::size_t r = 0; r < repeats; ++r) {
                CounterRng rng(seed, (static_cast<std::uint64_t>(r) << 24) + c);
                const auto order = shuffled_indices(members.size(), rng);
                for (std::size_t k = 0; k < g; ++k) galleries[r].push_back(members[order[k]]);
            }
        }
    }
    return galleries;
}

CrcReport evaluate(std::span<const LabeledBundle> dataset, MethodId m, const EvaluateOptions& opts) {
    for (const auto& item : dataset)
        if (!item.bundle) throw Error(ErrorCode::MissingFeature, "image '" + item.id + "' has no features");
    const auto galleries = draw_galleries(dataset, opts.g, opts.repeats, opts.seed);
    const std::size_t n = dataset.size();

    CrcReport report;
    report.method = m;
    report.g = opts.g;
    report.repeats = opts.repeats;
    report.labels = group_by_label(dataset).labels;
    const std::size_t ranks = report.labels.size();

    // Costs are pure functions of the pair, so one cache serves every repeat.
    std::vector<double> cache(n * n, std::numeric_limits<double>::quiet_NaN());
    for (const auto& gallery_idx : galleries) {
        std::vector<char> in_gallery(n, 0);
        for (std::size_t e : gallery_idx) in_gallery[e] = 1;
        std::vector<std::pair<std::size_t, std::size_t>> missing;
        for (std::size_t p = 0; p < n; ++p) {
            if (in_gallery[p]) continue;
            for (std::size_t e : gallery_idx)
                if (std::isnan(cache[p * n + e])) missing.emplace_back(p, e);
        }
        parallel_for(missing.size(), opts.threads, [&](std::size_t k) {
            const auto [p, e] = missing[k];
            cache[p * n + e] = score(*dataset[p].bundle, *dataset[e].bundle, m, opts.weights);
        });

        std::vector<std::size_t> entry_class;
        for (std::size_t e : gallery_idx)
            entry_class.push_back(static_cast<std::size_t>(
                std::lower_bound(report.labels.begin(), report.labels.end(), dataset[e].label) - report.labels.begin()));

        std::vector<std::size_t> hits(ranks + 1, 0);
        std::size_t probes = 0;
        std::vector<double> costs(gallery_idx.size());
        for (std::size_t p = 0; p < n; ++p) {
            if (in_gallery[p]) continue;
            for (std::size_t k = 0; k < gallery_idx.size(); ++k) costs[k] = cache[p * n + gallery_idx[k]];
            const auto r = rank_classes(dataset[p].id, dataset[p].label, report.labels, entry_class, costs);
            ++hits[r.rank];
            ++probes;
        }
        std::vector<double> curve(ranks);
        std::size_t cumulative = 0;
        for (std::size_t r = 1; r <= ranks; ++r) {
            cumulative += hits[r];
            curve[r - 1] = 100.0 * static_cast<double>(cumulative) / static_cast<double>(probes);
        }
        report.per_repeat.push_back(std::move(curve));
    }

    report.mean.assign(ranks, 0.0);
    report.sigma.assign(ranks, 0.0);
    const double count = static_cast<double>(report.per_repeat.size());
    for (std::size_t r = 0; r < ranks; ++r) {
        double sum = 0.0;
        for (const auto& curve : report.per_repeat) sum += curve[r];
        const double mean = sum / count;
        double var = 0.0;
        for (const auto& curve : report.per_repeat) var += (curve[r] - mean) * (curve[r] - mean);
        report.mean[r] = mean;
        report.sigma[r] = std::sqrt(var / count);
    }
    return report;
}

void write_results_csv(const std::filesystem::path& path, std::span<const ProbeOutcome> outcomes) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
    out << "probe_id,true_label,rank,top1,top1_cost\n";
    char cost[64];
    for (const auto& o : outcomes) {
        if (!o.result) continue;
        const auto& r = *o.result;
        std::snprintf(cost, sizeof cost, "%.9g", r.candidate_costs.front());
        out << r.probe_id << ',' << r.true_label << ',' << r.rank << ',' << r.candidates.front() << ',' << cost << '\n';
    }
    if (!out) throw Error(ErrorCode::IoFailure, "write failed for " + path.string());
}

void write_crc_csv(const std::filesystem::path& path, std::span<const CrcReport> reports) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
    out << "method,g,rank,cr_mean,cr_sigma\n";
    char line[128];
    for (const auto& rep : reports)
        for (std::size_t r = 0; r < rep.mean.size(); ++r) {
            std::snprintf(line, sizeof line, "%s,%zu,%zu,%.4f,%.4f\n", std::string(method_name(rep.method)).c_str(),
                          rep.g, r + 1, rep.mean[r], rep.sigma[r]);
            out << line;
        }
    if (!out) throw Error(ErrorCode::IoFailure, "write failed for " + path.string());
}

} // namespace gesturebench
