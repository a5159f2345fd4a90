#pragma once
// In-memory synthetic datasets for tests: render, normalize, extract.

#include "gesturebench/bench.hpp"
#include "gesturebench/synthgen.hpp"

#include <cstdio>
#include <vector>

namespace testsupport {

inline std::vector<gesturebench::LabeledMask> synthetic_masks(const gesturebench::SynthConfig& cfg) {
    using namespace gesturebench;
    std::vector<LabeledMask> out;
    for (int c = 0; c < cfg.classes; ++c)
        for (int i = 0; i < cfg.per_class; ++i) {
            const SynthInstance inst = render_instance(cfg, c, i);
            char id[32];
            const std::string label = gesture_prototype(c).class_id;
            std::snprintf(id, sizeof id, "%s_%03d", label.c_str(), i);
            out.push_back({id, label, normalize(inst.mask, inst.wrist, {}, id)});
        }
    return out;
}

inline gesturebench::SynthConfig small_config(int classes, int per_class, std::uint64_t seed = 7) {
    gesturebench::SynthConfig cfg;
    cfg.classes = classes;
    cfg.per_class = per_class;
    cfg.seed = seed;
    return cfg;
}

inline std::vector<gesturebench::LabeledBundle> synthetic_bundles(const gesturebench::SynthConfig& cfg, int threads = 1) {
    const auto masks = synthetic_masks(cfg);
    return gesturebench::extract_features(masks, {}, gesturebench::FeatureSet::all(), threads);
}

} // namespace testsupport
