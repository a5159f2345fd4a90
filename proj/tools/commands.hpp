#pragma once

#include "gesturebench/classify.hpp"
#include "gesturebench/config.hpp"
#include "gesturebench/synthgen.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace gesturebench::cli {

struct NormalizeArgs {
    std::filesystem::path input;
    std::filesystem::path wrists; // defaults to <input>/wrists.csv
    std::filesystem::path output;
    std::filesystem::path log;    // defaults to <output>/normalize_log.csv
};

struct ClassifyArgs {
    std::filesystem::path gallery;
    std::filesystem::path probes;
    MethodId method = MethodId::SC;
    std::filesystem::path output;
    int threads = 1;
};

struct EvaluateArgs {
    std::filesystem::path dataset;
    std::vector<MethodId> methods;
    std::size_t g = 1;
    std::size_t repeats = 1;
    std::uint64_t seed = 0;
    std::filesystem::path output;
    int threads = 1;
};

struct BenchArgs {
    std::filesystem::path dataset;
    std::vector<MethodId> methods;
    std::size_t g = 3;
    std::vector<int> threads{1};
    int repetitions = 3;
    std::filesystem::path output;
    std::filesystem::path log;
};

// Each command returns the process exit code; diagnostics go to `err`,
// human-readable summaries to `out`.
int cmd_normalize(const NormalizeArgs& a, const PipelineParams& p, std::ostream& out, std::ostream& err);
int cmd_synth(const SynthConfig& cfg, const std::filesystem::path& out_dir, int threads, std::ostream& out);
int cmd_classify(const ClassifyArgs& a, const PipelineParams& p, std::ostream& out, std::ostream& err);
int cmd_evaluate(const EvaluateArgs& a, const PipelineParams& p, std::ostream& out);
int cmd_bench(const BenchArgs& a, const PipelineParams& p, std::ostream& out);

} // namespace gesturebench::cli
