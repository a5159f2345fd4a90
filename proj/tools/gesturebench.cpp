// gesturebench: hand-shape classification and benchmark driver.
#include "commands.hpp"

#include "gesturebench/error.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <iostream>

using namespace gesturebench;

namespace {

int default_threads() {
    const char* env = std::getenv("GESTUREBENCH_THREADS");
    if (!env || !*env) return 1;
    int t = 0;
    const char* end = env + std::char_traits<char>::length(env);
    auto [ptr, ec] = std::from_chars(env, end, t);
    if (ec != std::errc{} || ptr != end || t < 1) {
        std::cerr << "warning: ignoring GESTUREBENCH_THREADS='" << env << "'\n";
        return 1;
    }
    return t;
}

std::string method_list() {
    std::string s;
    for (MethodId m : kAllMethods) {
        if (!s.empty()) s += ", ";
        for (char c : method_name(m)) s += static_cast<char>(c - 'A' + 'a');
    }
    return s;
}

std::vector<MethodId> parse_methods(const std::vector<std::string>& names) {
    std::vector<MethodId> out;
    for (const auto& n : names) {
        auto m = parse_method(n);
        if (!m) throw CLI::ValidationError("--method", "unknown method '" + n + "'; valid ids: " + method_list());
        if (std::find(out.begin(), out.end(), *m) == out.end()) out.push_back(*m);
    }
    return out;
}

struct ParamFlags {
    std::string config;
    std::vector<std::pair<std::string, std::string>> overrides;
};

// Adds --config plus one flag per whitelisted key to `sub`.
void add_param_flags(CLI::App* sub, ParamFlags& flags) {
    sub->add_option("--config", flags.config, "key=value parameter file")->check(CLI::ExistingFile);
    for (std::string_view key : config_keys()) {
        std::string name = "--" + std::string(key);
        std::replace(name.begin(), name.end(), '_', '-');
        sub->add_option_function<std::string>(
            name, [&flags, key = std::string(key)](const std::string& v) { flags.overrides.emplace_back(key, v); },
            "override " + std::string(key));
    }
}

PipelineParams resolve_params(const ParamFlags& flags) {
    PipelineParams p;
    if (!flags.config.empty()) apply_config_file(flags.config, p);
    for (const auto& [k, v] : flags.overrides) apply_config_value(k, v, p);
    validate_params(p);
    return p;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hand-shape classification engine and benchmark harness"};
    app.require_subcommand(1);
    const int env_threads = default_threads();

    ParamFlags params;

    cli::NormalizeArgs norm;
    auto* s_norm = app.add_subcommand("normalize", "rotate, cut at the wrist, crop and rescale masks");
    s_norm->add_option("--input,-i", norm.input, "directory of PGM masks (manifest.csv optional)")->required();
    s_norm->add_option("--wrists,-w", norm.wrists, "wrist CSV (default <input>/wrists.csv)");
    s_norm->add_option("--output,-o", norm.output, "output directory")->required();
    s_norm->add_option("--log", norm.log, "per-image log CSV (default <output>/normalize_log.csv)");
    add_param_flags(s_norm, params);

    SynthConfig synth;
    std::string synth_out;
    double jitter_scale = 1.0;
    int threads = env_threads;
    auto* s_synth = app.add_subcommand("synth", "generate a synthetic hand-mask dataset");
    s_synth->add_option("--output,-o", synth_out, "output directory")->required();
    s_synth->add_option("--classes", synth.classes, "gesture classes")->capture_default_str();
    s_synth->add_option("--per-class", synth.per_class, "images per class")->capture_default_str();
    s_synth->add_option("--seed", synth.seed, "random seed")->capture_default_str();
    s_synth->add_option("--rotation", synth.rotation_deg, "rotation jitter, +/- degrees")->capture_default_str();
    s_synth->add_option("--scale", synth.scale_pct, "scale jitter, +/- percent")->capture_default_str();
    s_synth->add_option("--noise", synth.noise_px, "boundary noise amplitude, pixels")->capture_default_str();
    s_synth->add_option("--splay", synth.splay_deg, "finger angle jitter, +/- degrees")->capture_default_str();
    s_synth->add_option("--length", synth.length_pct, "finger length jitter, +/- percent")->capture_default_str();
    s_synth->add_option("--palm", synth.palm_pct, "palm radius jitter, +/- percent")->capture_default_str();
    s_synth->add_option("--translate", synth.translate_px, "translation jitter, +/- pixels")->capture_default_str();
    s_synth->add_option("--jitter", jitter_scale, "multiplier applied to every jitter amplitude")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    s_synth->add_option("--threads,-t", threads, "worker threads")->check(CLI::PositiveNumber);

    cli::ClassifyArgs cls;
    std::vector<std::string> cls_method{"sc"};
    auto* s_cls = app.add_subcommand("classify", "rank every probe against a gallery");
    s_cls->add_option("--gallery,-g", cls.gallery, "normalized gallery dataset")->required();
    s_cls->add_option("--probes,-p", cls.probes, "normalized probe dataset")->required();
    s_cls->add_option("--method,-m", cls_method, "one of " + method_list())->expected(1);
    s_cls->add_option("--output,-o", cls.output, "results CSV")->required();
    s_cls->add_option("--threads,-t", threads, "worker threads")->check(CLI::PositiveNumber);
    add_param_flags(s_cls, params);

    cli::EvaluateArgs ev;
    std::vector<std::string> ev_methods{"sc", "scdt", "sch", "hog", "dt", "tm", "hd", "hm"};
    auto* s_ev = app.add_subcommand("evaluate", "gallery/probe protocol, cumulative response curves");
    s_ev->add_option("--dataset,-d", ev.dataset, "normalized dataset")->required();
    s_ev->add_option("--methods,-m", ev_methods, "comma-separated method ids")->delimiter(',');
    s_ev->add_option("--g", ev.g, "gallery images per class")->capture_default_str()->check(CLI::PositiveNumber);
    s_ev->add_option("--repeats,-r", ev.repeats, "gallery draws")->capture_default_str()->check(CLI::PositiveNumber);
    s_ev->add_option("--seed", ev.seed, "random seed")->capture_default_str();
    s_ev->add_option("--output,-o", ev.output, "CRC CSV")->required();
    s_ev->add_option("--threads,-t", threads, "worker threads")->check(CLI::PositiveNumber);
    add_param_flags(s_ev, params);

    cli::BenchArgs bn;
    std::vector<std::string> bn_methods{"sc", "scdt", "sch", "hog", "dt", "tm", "hd", "hm"};
    auto* s_bn = app.add_subcommand("bench", "analysis time, speedup and efficiency");
    s_bn->add_option("--dataset,-d", bn.dataset, "normalized dataset")->required();
    s_bn->add_option("--methods,-m", bn_methods, "comma-separated method ids")->delimiter(',');
    s_bn->add_option("--g", bn.g, "gallery images per class")->capture_default_str()->check(CLI::PositiveNumber);
    s_bn->add_option("--threads,-t", bn.threads, "thread counts, must include 1")
        ->delimiter(',')
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    s_bn->add_option("--repetitions", bn.repetitions, "timed runs after one warm-up")
        ->capture_default_str()
        ->check(CLI::Range(3, 1000));
    s_bn->add_option("--output,-o", bn.output, "bench CSV")->required();
    s_bn->add_option("--log", bn.log, "JSONL log of every timed run");
    add_param_flags(s_bn, params);

    try {
        app.parse(argc, argv);
        if (s_cls->parsed()) cls.method = parse_methods(cls_method).at(0);
        if (s_ev->parsed()) ev.methods = parse_methods(ev_methods);
        if (s_bn->parsed()) {
            bn.methods = parse_methods(bn_methods);
            if (std::find(bn.threads.begin(), bn.threads.end(), 1) == bn.threads.end())
                throw CLI::ValidationError("--threads", "list must contain 1 as the speedup baseline");
        }
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (s_norm->parsed()) return cli::cmd_normalize(norm, resolve_params(params), std::cout, std::cerr);
        if (s_synth->parsed()) return cli::cmd_synth(synth.with_jitter_scale(jitter_scale), synth_out, threads, std::cout);
        cls.threads = ev.threads = threads;
        if (s_cls->parsed()) return cli::cmd_classify(cls, resolve_params(params), std::cout, std::cerr);
        if (s_ev->parsed()) return cli::cmd_evaluate(ev, resolve_params(params), std::cout);
        if (s_bn->parsed()) return cli::cmd_bench(bn, resolve_params(params), std::cout);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
