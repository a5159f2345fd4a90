#include "gesturebench/synthgen.hpp"

#include "gesturebench/error.hpp"
#include "gesturebench/parallel.hpp"
#include "gesturebench/rng.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>

namespace gesturebench {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

enum Finger { Thumb, Index, Middle, Ring, Little };

// Base positions on the palm ellipse (polar angle from the palm centre).
constexpr std::array<double, 5> kBaseAngle{-5.0, 66.0, 90.0, 114.0, 138.0};
constexpr std::array<double, 5> kLength{34.0, 42.0, 48.0, 44.0, 34.0};
constexpr std::array<double, 5> kWidth{17.0, 15.0, 15.0, 14.0, 13.0};
constexpr std::array<double, 5> kSpread{-55.0, -14.0, 0.0, 14.0, 30.0};
constexpr std::array<double, 5> kTogether{-28.0, -4.0, 0.0, 4.0, 8.0};

struct Recipe {
    unsigned fingers; // bit k set = finger k extended
    bool spread;
};

std::vector<Recipe> build_recipes() {
    auto bits = [](std::initializer_list<Finger> f) {
        unsigned b = 0;
        for (Finger x : f) b |= 1u << x;
        return b;
    };
    std::vector<Recipe> r{
        {0, true},
        {bits({Index}), true},
        {bits({Index, Middle}), false},
        {bits({Index, Middle}), true},
        {bits({Index, Middle, Ring}), true},
        {bits({Index, Middle, Ring, Little}), true},
        {bits({Thumb, Index, Middle, Ring, Little}), true},
        {bits({Thumb}), true},
        {bits({Thumb, Index}), true},
        {bits({Thumb, Little}), true},
        {bits({Index, Little}), true},
        {bits({Thumb, Index, Middle}), true},
        {bits({Little}), true},
        {bits({Index, Middle, Ring, Little}), false},
        {bits({Thumb, Index, Little}), true},
    };
    std::set<std::pair<unsigned, bool>> have;
    for (const auto& x : r) have.insert({x.fingers, x.spread});
    for (bool spread : {true, false})
        for (unsigned f = 0; f < 32; ++f) {
            // "Together" only differs from "spread" with two or more non-thumb fingers.
            if (!spread && std::popcount(f & ~1u) < 2) continue;
            if (have.insert({f, spread}).second) r.push_back({f, spread});
        }
    return r;
}

const std::vector<Recipe>& recipes() {
    static const std::vector<Recipe> r = build_recipes();
    return r;
}

struct Vec {
    double x, y;
};

double sdf_capsule(Vec p, Vec a, Vec b, double radius) {
    const double bx = b.x - a.x, by = b.y - a.y;
    const double px = p.x - a.x, py = p.y - a.y;
    const double t = std::clamp((px * bx + py * by) / (bx * bx + by * by), 0.0, 1.0);
    const double dx = px - bx * t, dy = py - by * t;
    return std::sqrt(dx * dx + dy * dy) - radius;
}

double sdf_ellipse(Vec p, Vec c, double rx, double ry) {
    const double u = (p.x - c.x) / rx, v = (p.y - c.y) / ry;
    const double k = std::sqrt(u * u + v * v);
    return (k - 1.0) * std::min(rx, ry);
}

double sdf_box(Vec p, double x0, double x1, double y0, double y1) {
    const double dx = std::max(x0 - p.x, p.x - x1);
    const double dy = std::max(y0 - p.y, p.y - y1);
    return std::max(dx, dy) < 0.0 ? std::max(dx, dy) : std::sqrt(std::max(dx, 0.0) * std::max(dx, 0.0) + std::max(dy, 0.0) * std::max(dy, 0.0));
}

} // namespace

int max_gesture_classes() { return static_cast<int>(recipes().size()); }

GestureSpec gesture_prototype(int class_index) {
    if (class_index < 0 || class_index >= max_gesture_classes())
        throw Error(ErrorCode::InvalidConfig, "gesture class " + std::to_string(class_index) + " out of range");
    const Recipe& r = recipes()[static_cast<std::size_t>(class_index)];
    GestureSpec g;
    char id[16];
    std::snprintf(id, sizeof id, "g%02d", class_index + 1);
    g.class_id = id;
    for (std::size_t k = 0; k < 5; ++k) {
        g.extended[k] = (r.fingers >> k) & 1u;
        g.finger_length[k] = kLength[k];
        g.finger_width[k] = kWidth[k];
        g.splay_deg[k] = r.spread ? kSpread[k] : kTogether[k];
    }
    return g;
}

SynthInstance render_instance(const SynthConfig& cfg, int class_index, int instance) {
    const GestureSpec spec = gesture_prototype(class_index);
    CounterRng rng(cfg.seed, (static_cast<std::uint64_t>(class_index) << 32) | static_cast<std::uint32_t>(instance));
    auto jitter = [&](double amplitude) { return amplitude > 0.0 ? rng.uniform(-amplitude, amplitude) : 0.0; };

    const double rotation = jitter(cfg.rotation_deg) * kDeg;
    const double scale = cfg.hand_scale * (1.0 + jitter(cfg.scale_pct / 100.0));
    const Vec wrist_mid{cfg.width / 2.0 + cfg.hand_scale * jitter(cfg.translate_px),
                        cfg.height * 0.75 + cfg.hand_scale * jitter(cfg.translate_px)};
    const double rx = spec.palm_rx * (1.0 + jitter(cfg.palm_pct / 100.0));
    const double ry = spec.palm_ry * (1.0 + jitter(cfg.palm_pct / 100.0));
    const Vec palm{0.0, ry * 0.94};
    constexpr double forearm_half = 20.0;

    struct Capsule {
        Vec a, b;
        double radius;
    };
    std::vector<Capsule> fingers;
    for (std::size_t k = 0; k < 5; ++k) {
        const double direction = (90.0 + spec.splay_deg[k] + jitter(cfg.splay_deg)) * kDeg;
        const double length = spec.finger_length[k] * (1.0 + jitter(cfg.length_pct / 100.0));
        if (!spec.extended[k]) continue;
        const double base_angle = kBaseAngle[k] * kDeg;
        const Vec base{palm.x + 0.8 * rx * std::cos(base_angle), palm.y + 0.8 * ry * std::sin(base_angle)};
        fingers.push_back({base, {base.x + length * std::cos(direction), base.y + length * std::sin(direction)},
                           spec.finger_width[k] / 2.0});
    }

    std::array<double, 3> kx{}, ky{}, phase{};
    for (std::size_t k = 0; k < 3; ++k) {
        const double freq = rng.uniform(0.15, 0.45);
        phase[k] = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const double heading = rng.uniform(0.0, std::numbers::pi);
        kx[k] = freq * std::cos(heading);
        ky[k] = freq * std::sin(heading);
    }

    // Image pixel -> hand frame (origin at wrist midpoint, y up, unit scale).
    const double c = std::cos(rotation), s = std::sin(rotation);
    auto to_hand = [&](double x, double y) {
        const double dx = (x - wrist_mid.x) / scale;
        const double dy = (wrist_mid.y - y) / scale;
        return Vec{c * dx + s * dy, -s * dx + c * dy};
    };
    auto to_image = [&](Vec h) {
        const double dx = c * h.x - s * h.y;
        const double dy = s * h.x + c * h.y;
        return Vec{wrist_mid.x + dx * scale, wrist_mid.y - dy * scale};
    };

    SynthInstance out{BinaryMask(cfg.width, cfg.height), {}};
    for (int y = 0; y < cfg.height; ++y)
        for (int x = 0; x < cfg.width; ++x) {
            const Vec p = to_hand(x, y);
            double d = std::min(sdf_ellipse(p, palm, rx, ry), sdf_box(p, -forearm_half, forearm_half, -80.0, 10.0));
            for (const auto& f : fingers) d = std::min(d, sdf_capsule(p, f.a, f.b, f.radius));
            // The noise term is bounded by noise_px, so far pixels skip it.
            if (cfg.noise_px > 0.0 && std::abs(d) < cfg.noise_px) {
                double n = 0.0;
                for (std::size_t k = 0; k < 3; ++k)
                    n += std::sin(kx[k] * p.x + ky[k] * p.y + phase[k]) / static_cast<double>(k + 1);
                d += cfg.noise_px * n / (11.0 / 6.0);
            }
            if (d < 0.0) out.mask.set(x, y, true);
        }

    auto snap = [&](Vec v) {
        return Point2d{std::clamp(std::round(v.x), 0.0, cfg.width - 1.0), std::clamp(std::round(v.y), 0.0, cfg.height - 1.0)};
    };
    out.wrist.left = snap(to_image({-forearm_half, 0.0}));
    out.wrist.right = snap(to_image({forearm_half, 0.0}));
    return out;
}

std::vector<ManifestEntry> generate(const SynthConfig& cfg, const std::filesystem::path& out_dir, int threads) {
    if (cfg.classes < 2 || cfg.classes > max_gesture_classes())
        throw Error(ErrorCode::InvalidConfig,
                    "classes must be in [2, " + std::to_string(max_gesture_classes()) + "]");
    if (cfg.per_class < 2) throw Error(ErrorCode::InvalidConfig, "per_class must be >= 2");
    if (cfg.width < 64 || cfg.height < 64) throw Error(ErrorCode::InvalidConfig, "canvas must be at least 64x64");
    if (!(cfg.hand_scale > 0.0)) throw Error(ErrorCode::InvalidConfig, "hand_scale must be > 0");
    for (double j : {cfg.rotation_deg, cfg.scale_pct, cfg.noise_px, cfg.splay_deg, cfg.length_pct, cfg.palm_pct,
                     cfg.translate_px})
        if (!(j >= 0.0)) throw Error(ErrorCode::InvalidConfig, "jitter amplitudes must be >= 0");
    for (double pct : {cfg.scale_pct, cfg.length_pct, cfg.palm_pct})
        if (pct >= 50.0) throw Error(ErrorCode::InvalidConfig, "percentage jitter must be < 50");

    std::error_code ec;
    std::filesystem::create_directories(out_dir / "masks", ec);
    if (ec) throw Error(ErrorCode::IoFailure, "cannot create " + (out_dir / "masks").string() + ": " + ec.message());

    const std::size_t total = static_cast<std::size_t>(cfg.classes) * static_cast<std::size_t>(cfg.per_class);
    std::vector<ManifestEntry> entries(total);
    std::vector<WristAnnotation> wrists(total);
    parallel_for(total, threads, [&](std::size_t i) {
        const int cls = static_cast<int>(i / static_cast<std::size_t>(cfg.per_class));
        const int inst = static_cast<int>(i % static_cast<std::size_t>(cfg.per_class));
        const std::string label = gesture_prototype(cls).class_id;
        char id[32];
        std::snprintf(id, sizeof id, "%s_%03d", label.c_str(), inst);
        SynthInstance s = render_instance(cfg, cls, inst);
        const std::string rel = std::string("masks/") + id + ".pgm";
        save_mask(s.mask, out_dir / rel);
        entries[i] = {id, label, rel};
        wrists[i] = s.wrist;
    });

    std::ofstream w(out_dir / kWristName, std::ios::trunc);
    if (!w) throw Error(ErrorCode::IoFailure, "cannot write " + (out_dir / kWristName).string());
    w << "id,lx,ly,rx,ry\n";
    for (std::size_t i = 0; i < total; ++i)
        w << entries[i].id << ',' << static_cast<long>(wrists[i].left.x) << ',' << static_cast<long>(wrists[i].left.y)
          << ',' << static_cast<long>(wrists[i].right.x) << ',' << static_cast<long>(wrists[i].right.y) << '\n';
    if (!w) throw Error(ErrorCode::IoFailure, "write failed for wrist table");
    write_manifest(out_dir / kManifestName, entries);
    return entries;
}

} // namespace gesturebench
