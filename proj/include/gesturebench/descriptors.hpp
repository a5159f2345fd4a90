#pragma once

#include "gesturebench/geometry.hpp"
#include "gesturebench/mask.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gesturebench {

/// Bin layouts for every descriptor. Defaults follow the original
/// shape-context formulation (5 log-radial x 12 angular bins).
struct DescriptorConfig {
    std::size_t sc_points = 20; // M_SC
    int radial_bins = 5;
    int angular_bins = 12;
    double inner_radius = 0.125; // in units of the mean pairwise distance
    double outer_radius = 2.0;
    int dt_bins = 32;
    int orientation_bins = 36;
};

/// One unit-sum log-polar histogram per sampled contour point.
struct ShapeContextSet {
    std::size_t points = 0;
    std::size_t bins = 0;
    std::vector<double> data; // points x bins, row-major

    std::span<const double> row(std::size_t i) const { return {data.data() + i * bins, bins}; }

    friend bool operator==(const ShapeContextSet&, const ShapeContextSet&) = default;
};

struct DTHistogram {
    std::vector<double> bins;
    std::size_t pixel_count = 0;
};

struct OrientationHistogram {
    std::vector<double> bins;
    double total_magnitude = 0.0;
};

using HuVector = std::array<double, 7>;

ShapeContextSet shape_contexts(const SampledContour& sampled, const DescriptorConfig& cfg = {});

/// Bins in-domain distances uniformly over [0, range]; overflow goes to the
/// last bin. A non-positive range means half the field width (w_M / 2).
DTHistogram dt_histogram(const DistanceField& field, int bins = 32, double range = 0.0);

/// Magnitude-weighted histogram of Sobel orientations folded into [0, 180).
/// Borders replicate, so a uniform image has no gradient at all.
OrientationHistogram orientation_histogram(const BinaryMask& mask, int bins = 36);

/// The seven Hu invariants. Pixels are unit squares, so the second-order
/// central moments include each pixel's own 1/12 spread.
HuVector hu_moments(const BinaryMask& mask);

enum class Feature : std::uint8_t {
    Contour = 1 << 0,
    ShapeContext = 1 << 1,
    DistanceHistogram = 1 << 2,
    Orientation = 1 << 3,
    Hu = 1 << 4,
    Template = 1 << 5,
};

class FeatureSet {
public:
    constexpr FeatureSet() = default;
    constexpr FeatureSet(Feature f) : bits_(static_cast<std::uint8_t>(f)) {}

    static constexpr FeatureSet all() { return FeatureSet(0x3f); }

    constexpr bool has(Feature f) const { return (bits_ & static_cast<std::uint8_t>(f)) != 0; }
    constexpr FeatureSet operator|(FeatureSet o) const { return FeatureSet(static_cast<std::uint8_t>(bits_ | o.bits_)); }
    constexpr bool operator==(const FeatureSet&) const = default;

private:
    constexpr explicit FeatureSet(std::uint8_t bits) : bits_(bits) {}
    std::uint8_t bits_ = 0;
};

constexpr FeatureSet operator|(Feature a, Feature b) { return FeatureSet(a) | FeatureSet(b); }

/// Per-image features. Members absent from the requested FeatureSet stay empty.
struct DescriptorBundle {
    std::optional<Contour> contour;
    std::optional<SampledContour> sampled;
    std::optional<ShapeContextSet> sc;
    std::optional<DTHistogram> dt_hist;
    std::optional<OrientationHistogram> ohist;
    std::optional<HuVector> hu;
    std::optional<BinaryMask> mask;
};

/// Computes the requested features. The four independent feature groups
/// (shape contexts, DT histogram, orientation histogram, Hu moments) run
/// concurrently when threads > 1; the result does not depend on threads.
/// Failures are rethrown as FeatureError naming the feature.
DescriptorBundle build_bundle(const NormalizedMask& mask, const DescriptorConfig& cfg = {},
                              FeatureSet features = FeatureSet::all(), int threads = 1);

} // namespace gesturebench
