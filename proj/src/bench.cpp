#include "gesturebench/bench.hpp"

#include "gesturebench/error.hpp"
#include "gesturebench/parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <tuple>

namespace gesturebench {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t mid = v.size() / 2;
    return v.size() % 2 ? v[mid] : (v[mid - 1] + v[mid]) / 2.0;
}

} // namespace

std::vector<LabeledBundle> extract_features(std::span<const LabeledMask> dataset, const DescriptorConfig& cfg,
                                            FeatureSet features, int threads) {
    std::vector<LabeledBundle> out(dataset.size());
    parallel_for(dataset.size(), threads, [&](std::size_t i) {
        out[i] = {dataset[i].id, dataset[i].label,
                  std::make_shared<const DescriptorBundle>(build_bundle(dataset[i].mask, cfg, features, 1))};
    });
    return out;
}

std::vector<ProbeOutcome> run_pipeline(std::span<const LabeledMask> dataset, MethodId m, std::size_t g, int threads,
                                       const PipelineParams& params, PhaseTimes* times) {
    if (dataset.empty()) throw Error(ErrorCode::InsufficientData, "dataset is empty");
    if (g < 1) throw Error(ErrorCode::InvalidArgument, "g must be >= 1");

    // First g images of each class (dataset order) form the gallery.
    std::map<std::string, std::size_t> seen;
    std::vector<char> is_gallery(dataset.size(), 0);
    for (std::size_t i = 0; i < dataset.size(); ++i)
        if (seen[dataset[i].label]++ < g) is_gallery[i] = 1;
    for (const auto& [label, n] : seen)
        if (n < g)
            throw Error(ErrorCode::InsufficientData,
                        "class '" + label + "' has " + std::to_string(n) + " images, gallery needs " + std::to_string(g));
    if (std::count(is_gallery.begin(), is_gallery.end(), 0) == 0)
        throw Error(ErrorCode::InsufficientData, "no probe images remain after drawing the gallery");

    auto start = Clock::now();
    const auto bundles = extract_features(dataset, params.descriptors, required_features(m), threads);
    const double tau_f = seconds_since(start);

    start = Clock::now();
    std::vector<LabeledBundle> gallery_entries, probes;
    for (std::size_t i = 0; i < dataset.size(); ++i)
        (is_gallery[i] ? gallery_entries : probes).push_back(bundles[i]);
    const Gallery gallery(std::move(gallery_entries));
    auto outcomes = classify_batch(probes, gallery, m, threads, params.weights);
    const double tau_c = seconds_since(start);

    if (times) *times = {tau_f, tau_c};
    return outcomes;
}

BenchRecord time_analysis(std::span<const LabeledMask> dataset, MethodId m, std::size_t g, int threads,
                          const BenchOptions& opts, std::optional<double> baseline_tau) {
    if (opts.repetitions < 3) throw Error(ErrorCode::InvalidArgument, "at least 3 repetitions are required");
    if (threads < 1) throw Error(ErrorCode::InvalidArgument, "thread count must be >= 1");
    if (threads > 1 && !baseline_tau)
        throw Error(ErrorCode::InvalidArgument, "speedup needs a T = 1 baseline from the same session");

    PhaseTimes times;
    run_pipeline(dataset, m, g, threads, opts.params, &times); // warm-up
    std::vector<double> tf, tc;
    for (int rep = 0; rep < opts.repetitions; ++rep) {
        run_pipeline(dataset, m, g, threads, opts.params, &times);
        tf.push_back(times.features);
        tc.push_back(times.classification);
        if (opts.log) {
            nlohmann::json row{{"method", method_name(m)}, {"g", g},
                               {"T", threads},            {"rep", rep},
                               {"tau_f", times.features}, {"tau_c", times.classification}};
            *opts.log << row.dump() << '\n';
        }
    }

    BenchRecord r;
    r.method = m;
    r.g = g;
    r.threads = threads;
    r.tau_f = median(tf);
    r.tau_c = median(tc);
    r.tau = r.tau_f + r.tau_c;
    if (!(r.tau > 0.0)) r.tau = 1e-6; // below clock resolution
    r.speedup = threads == 1 ? 1.0 : *baseline_tau / r.tau;
    r.efficiency = r.speedup / threads;
    return r;
}

std::vector<BenchRecord> bench_series(std::span<const LabeledMask> dataset, MethodId m, std::size_t g,
                                      std::span<const int> threads, const BenchOptions& opts) {
    if (std::find(threads.begin(), threads.end(), 1) == threads.end())
        throw Error(ErrorCode::InvalidArgument, "thread list must contain 1 as the baseline");
    std::vector<BenchRecord> out{time_analysis(dataset, m, g, 1, opts)};
    for (int t : threads)
        if (t != 1) out.push_back(time_analysis(dataset, m, g, t, opts, out.front().tau));
    return out;
}

bool superlinear_flag(const BenchRecord& r) { return r.speedup > static_cast<double>(r.threads); }

void emit_bench_table(std::span<const BenchRecord> records, std::ostream& out) {
    if (records.empty()) throw Error(ErrorCode::InvalidArgument, "no bench records");
    std::vector<BenchRecord> sorted(records.begin(), records.end());
    std::stable_sort(sorted.begin(), sorted.end(), [](const BenchRecord& a, const BenchRecord& b) {
        return std::tuple(a.g, static_cast<int>(a.method), a.threads) <
               std::tuple(b.g, static_cast<int>(b.method), b.threads);
    });
    out << "method,g,T,tau_f_s,tau_c_s,tau_s,speedup,efficiency\n";
    char line[256];
    for (const auto& r : sorted) {
        std::snprintf(line, sizeof line, "%s,%zu,%d,%.6f,%.6f,%.6f,%.4f,%.4f\n",
                      std::string(method_name(r.method)).c_str(), r.g, r.threads, r.tau_f, r.tau_c, r.tau, r.speedup,
                      r.efficiency);
        out << line;
    }
}

void emit_bench_table(std::span<const BenchRecord> records, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
    emit_bench_table(records, static_cast<std::ostream&>(out));
    if (!out) throw Error(ErrorCode::IoFailure, "write failed for " + path.string());
}

} // namespace gesturebench
