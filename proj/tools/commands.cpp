#include "commands.hpp"

#include "gesturebench/bench.hpp"
#include "gesturebench/dataset.hpp"
#include "gesturebench/error.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>

namespace gesturebench::cli {

namespace fs = std::filesystem;

namespace {

struct InputImage {
    std::string id;
    std::string label; // empty when the input has no manifest
    fs::path path;
};

std::vector<InputImage> list_inputs(const fs::path& dir) {
    std::vector<InputImage> inputs;
    if (fs::exists(dir / kManifestName)) {
        for (const auto& e : read_manifest(dir / kManifestName)) {
            fs::path p(e.path);
            inputs.push_back({e.id, e.label, p.is_absolute() ? p : dir / p});
        }
        return inputs;
    }
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(dir, ec))
        if (entry.is_regular_file() && entry.path().extension() == ".pgm")
            inputs.push_back({entry.path().stem().string(), {}, entry.path()});
    if (ec) throw Error(ErrorCode::FileNotFound, "cannot read directory " + dir.string() + ": " + ec.message());
    std::sort(inputs.begin(), inputs.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    return inputs;
}

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

} // namespace

int cmd_normalize(const NormalizeArgs& a, const PipelineParams& p, std::ostream& out, std::ostream& err) {
    if (!fs::is_directory(a.input)) {
        err << "error: input directory " << a.input << " does not exist\n";
        return 1;
    }
    const auto inputs = list_inputs(a.input);
    if (inputs.empty()) {
        err << "error: no inputs in " << a.input << '\n';
        return 1;
    }
    const fs::path wrist_path = a.wrists.empty() ? a.input / kWristName : a.wrists;
    const WristTable wrists = load_wrist_annotations(wrist_path);

    fs::create_directories(a.output);
    const fs::path log_path = a.log.empty() ? a.output / "normalize_log.csv" : a.log;
    std::ofstream log(log_path, std::ios::trunc);
    if (!log) throw Error(ErrorCode::IoFailure, "cannot write " + log_path.string());
    log << "id,rotation_applied,scale_applied,status\n";

    std::vector<ManifestEntry> written;
    std::size_t failures = 0;
    for (const auto& in : inputs) {
        try {
            const auto w = wrists.find(in.id);
            if (w == wrists.end())
                throw Error(ErrorCode::InvalidWrist, "no wrist annotation for '" + in.id + "'");
            const NormalizedMask nm = normalize(load_mask(in.path), w->second, p.normalization, in.id);
            const std::string rel = in.id + ".pgm";
            save_mask(nm.mask, a.output / rel);
            written.push_back({in.id, in.label, rel});
            log << in.id << ',' << fmt("%.9g", nm.rotation_applied) << ',' << fmt("%.9g", nm.scale_applied) << ",ok\n";
        } catch (const Error& e) {
            ++failures;
            err << "error: " << in.id << ": " << e.what() << '\n';
            log << in.id << ",,," << to_string(e.code()) << '\n';
        }
    }
    if (!inputs.front().label.empty()) write_manifest(a.output / kManifestName, written);
    out << "normalized " << written.size() << " of " << inputs.size() << " masks into " << a.output.string() << '\n';
    if (failures) err << failures << " mask(s) failed\n";
    return failures ? 1 : 0;
}

int cmd_synth(const SynthConfig& cfg, const fs::path& out_dir, int threads, std::ostream& out) {
    const auto entries = generate(cfg, out_dir, threads);
    out << "wrote " << entries.size() << " masks (" << cfg.classes << " classes x " << cfg.per_class << ") to "
        << out_dir.string() << '\n';
    return 0;
}

int cmd_classify(const ClassifyArgs& a, const PipelineParams& p, std::ostream& out, std::ostream& err) {
    const auto gallery_masks = load_normalized_dataset(a.gallery);
    const auto probe_masks = load_normalized_dataset(a.probes);
    const FeatureSet features = required_features(a.method);
    auto gallery_bundles = extract_features(gallery_masks, p.descriptors, features, a.threads);
    const auto probes = extract_features(probe_masks, p.descriptors, features, a.threads);
    const Gallery gallery(std::move(gallery_bundles));

    const auto outcomes = classify_batch(probes, gallery, a.method, a.threads, p.weights);
    write_results_csv(a.output, outcomes);
    std::size_t correct = 0, failed = 0;
    for (const auto& o : outcomes) {
        if (!o.result) {
            ++failed;
            err << "error: probe " << o.probe_id << ": " << o.error << '\n';
        } else if (o.result->rank == 1) {
            ++correct;
        }
    }
    out << method_name(a.method) << ": " << correct << '/' << outcomes.size() << " probes at rank 1\n";
    return failed ? 1 : 0;
}

int cmd_evaluate(const EvaluateArgs& a, const PipelineParams& p, std::ostream& out) {
    const auto masks = load_normalized_dataset(a.dataset);
    FeatureSet features;
    for (MethodId m : a.methods) features = features | required_features(m);
    const auto bundles = extract_features(masks, p.descriptors, features, a.threads);

    EvaluateOptions opts;
    opts.g = a.g;
    opts.repeats = a.repeats;
    opts.seed = a.seed;
    opts.threads = a.threads;
    opts.weights = p.weights;

    std::vector<CrcReport> reports;
    for (MethodId m : a.methods) reports.push_back(evaluate(bundles, m, opts));
    write_crc_csv(a.output, reports);

    out << "method   g  repeats";
    for (int r = 1; r <= 4; ++r) out << "          rank " << r;
    out << '\n';
    for (const auto& rep : reports) {
        char head[64];
        std::snprintf(head, sizeof head, "%-6s %3zu %8zu", std::string(method_name(rep.method)).c_str(), rep.g,
                      rep.repeats);
        out << head;
        for (std::size_t r = 0; r < 4 && r < rep.mean.size(); ++r) {
            char cell[32];
            std::snprintf(cell, sizeof cell, "  %6.2f +/- %5.2f", rep.mean[r], rep.sigma[r]);
            out << cell;
        }
        out << '\n';
    }
    return 0;
}

int cmd_bench(const BenchArgs& a, const PipelineParams& p, std::ostream& out) {
    if (std::find(a.threads.begin(), a.threads.end(), 1) == a.threads.end())
        throw Error(ErrorCode::InvalidArgument, "threads list must contain 1 (speedup baseline)");
    const auto masks = load_normalized_dataset(a.dataset);

    std::ofstream log;
    BenchOptions opts;
    opts.repetitions = a.repetitions;
    opts.params = p;
    if (!a.log.empty()) {
        log.open(a.log, std::ios::trunc);
        if (!log) throw Error(ErrorCode::IoFailure, "cannot write " + a.log.string());
        opts.log = &log;
    }

    std::vector<BenchRecord> records;
    for (MethodId m : a.methods) {
        auto series = bench_series(masks, m, a.g, a.threads, opts);
        for (const auto& r : series)
            if (superlinear_flag(r))
                out << "note: superlinear speedup for " << method_name(r.method) << " at T=" << r.threads << '\n';
        records.insert(records.end(), series.begin(), series.end());
    }
    emit_bench_table(records, a.output);
    emit_bench_table(records, out);
    return 0;
}

} // namespace gesturebench::cli
