#pragma once

#include "gesturebench/classify.hpp"
#include "gesturebench/config.hpp"
#include "gesturebench/dataset.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

namespace gesturebench {

/// One timing row: seconds per phase, speedup against T = 1, efficiency.
struct BenchRecord {
    MethodId method = MethodId::SC;
    std::size_t g = 1;
    int threads = 1;
    double tau_f = 0.0; // feature extraction
    double tau_c = 0.0; // classification
    double tau = 0.0;   // tau_f + tau_c
    double speedup = 1.0;
    double efficiency = 1.0;
};

struct PhaseTimes {
    double features = 0.0;
    double classification = 0.0;
};

struct BenchOptions {
    int repetitions = 3;
    PipelineParams params;
    /// Optional JSONL audit log, one object per measured repetition.
    std::ostream* log = nullptr;
};

/// Bundles for every image, computed in parallel over images; order follows `dataset`.
std::vector<LabeledBundle> extract_features(std::span<const LabeledMask> dataset, const DescriptorConfig& cfg,
                                            FeatureSet features, int threads);

/// Features for every image (parallel over images), then classify_batch of
/// the probes against a gallery of the first g images of each class.
/// Wall-clock per phase goes to `times` when given.
std::vector<ProbeOutcome> run_pipeline(std::span<const LabeledMask> dataset, MethodId m, std::size_t g, int threads,
                                       const PipelineParams& params, PhaseTimes* times = nullptr);

/// One warm-up plus `repetitions` timed runs; records per-phase medians.
/// Speedup is baseline_tau / tau, and exactly 1 when threads == 1.
BenchRecord time_analysis(std::span<const LabeledMask> dataset, MethodId m, std::size_t g, int threads,
                          const BenchOptions& opts, std::optional<double> baseline_tau = std::nullopt);

/// Measures T = 1 first and uses it as the baseline for the other counts.
/// `threads` must contain 1.
std::vector<BenchRecord> bench_series(std::span<const LabeledMask> dataset, MethodId m, std::size_t g,
                                      std::span<const int> threads, const BenchOptions& opts);

/// Speedup above the thread count (efficiency > 1).
bool superlinear_flag(const BenchRecord& r);

/// `method,g,T,tau_f_s,tau_c_s,tau_s,speedup,efficiency`, sorted by (g, method, T).
void emit_bench_table(std::span<const BenchRecord> records, const std::filesystem::path& path);
void emit_bench_table(std::span<const BenchRecord> records, std::ostream& out);

} // namespace gesturebench
