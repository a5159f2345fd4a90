#pragma once

#include "gesturebench/dataset.hpp"
#include "gesturebench/mask.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace gesturebench {

/// Prototype of one synthetic gesture. Fingers are ordered thumb, index,
/// middle, ring, little; lengths and widths are in prototype units, which
/// SynthConfig::hand_scale maps to canvas pixels.
struct GestureSpec {
    std::string class_id;
    std::array<bool, 5> extended{};
    std::array<double, 5> finger_length{};
    std::array<double, 5> finger_width{};
    std::array<double, 5> splay_deg{}; // direction offset from vertical
    double palm_rx = 30.0;
    double palm_ry = 36.0;
};

struct SynthConfig {
    int classes = 15;
    int per_class = 30;
    std::uint64_t seed = 7;
    // Per-instance jitter; all zero gives identical instances per class.
    double rotation_deg = 20.0;   // whole hand, wrist points follow
    double scale_pct = 10.0;
    double noise_px = 0.75;         // boundary perturbation amplitude, prototype units
    double splay_deg = 8.0;       // per-finger direction
    double length_pct = 12.0;     // per-finger length
    double palm_pct = 6.0;        // palm ellipse radii
    double translate_px = 6.0;    // prototype units
    double hand_scale = 2.0;      // canvas pixels per prototype unit
    int width = 400;
    int height = 480;

    /// Copy with every jitter amplitude multiplied by k (k = 0 disables jitter).
    SynthConfig with_jitter_scale(double k) const {
        SynthConfig c = *this;
        for (double* v : {&c.rotation_deg, &c.scale_pct, &c.noise_px, &c.splay_deg, &c.length_pct, &c.palm_pct,
                          &c.translate_px})
            *v *= k;
        return c;
    }
    SynthConfig without_jitter() const { return with_jitter_scale(0.0); }
};

struct SynthInstance {
    BinaryMask mask;
    WristAnnotation wrist;
};

/// Number of distinct prototypes available.
int max_gesture_classes();
GestureSpec gesture_prototype(int class_index);

/// Renders instance `instance` of class `class_index`; a pure function of
/// (cfg, class_index, instance).
SynthInstance render_instance(const SynthConfig& cfg, int class_index, int instance);

/// Writes masks/<id>.pgm, wrists.csv and manifest.csv under out_dir and
/// returns the manifest rows (class-major order).
std::vector<ManifestEntry> generate(const SynthConfig& cfg, const std::filesystem::path& out_dir, int threads = 1);

} // namespace gesturebench
