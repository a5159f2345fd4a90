#include "gesturebench/descriptors.hpp"

#include "gesturebench/error.hpp"
#include "gesturebench/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gesturebench {

namespace {

// Values landing exactly on a bin edge must not fall below it through rounding.
constexpr double kEdgeNudge = 1e-9;

int clamp_bin(double position, int bins) {
    if (!(position > 0.0)) return 0;
    return std::min(bins - 1, static_cast<int>(std::floor(position + kEdgeNudge)));
}

void normalize_unit_sum(std::vector<double>& h) {
    double total = 0.0;
    for (double v : h) total += v;
    if (total > 0.0)
        for (double& v : h) v /= total;
}

} // namespace

ShapeContextSet shape_contexts(const SampledContour& sampled, const DescriptorConfig& cfg) {
    const auto& pts = sampled.points;
    const std::size_t n = pts.size();
    if (n < 4) throw Error(ErrorCode::TooFewPoints, "shape contexts need at least 4 points");
    if (cfg.radial_bins < 1 || cfg.angular_bins < 1 || !(cfg.inner_radius > 0.0) ||
        !(cfg.outer_radius > cfg.inner_radius))
        throw Error(ErrorCode::InvalidConfig, "bad shape-context bin geometry");

    std::vector<double> dist(n * n, 0.0);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = std::hypot(pts[j].x - pts[i].x, pts[j].y - pts[i].y);
            dist[i * n + j] = dist[j * n + i] = d;
            sum += d;
        }
    const double mean = sum / static_cast<double>(n * (n - 1) / 2);
    if (!(mean > 0.0)) throw Error(ErrorCode::DegeneratePoints, "all contour points coincide");

    // Interior log-spaced radial edges; bin k covers [edge[k-1], edge[k]).
    const int radial = cfg.radial_bins;
    const int angular = cfg.angular_bins;
    std::vector<double> edges;
    for (int k = 1; k < radial; ++k)
        edges.push_back(cfg.inner_radius * std::pow(cfg.outer_radius / cfg.inner_radius, static_cast<double>(k) / radial));

    ShapeContextSet out;
    out.points = n;
    out.bins = static_cast<std::size_t>(radial * angular);
    out.data.assign(out.points * out.bins, 0.0);
    const double mass = 1.0 / static_cast<double>(n - 1);
    constexpr double two_pi = 2.0 * std::numbers::pi;
    for (std::size_t i = 0; i < n; ++i) {
        double* row = out.data.data() + i * out.bins;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double r = dist[i * n + j] / mean;
            const int rb = static_cast<int>(std::upper_bound(edges.begin(), edges.end(), r) - edges.begin());
            double theta = std::atan2(pts[j].y - pts[i].y, pts[j].x - pts[i].x);
            if (theta < 0.0) theta += two_pi;
            const int ab = clamp_bin(theta / two_pi * angular, angular) % angular;
            row[rb * angular + ab] += mass;
        }
    }
    return out;
}

DTHistogram dt_histogram(const DistanceField& field, int bins, double range) {
    if (bins < 1) throw Error(ErrorCode::InvalidConfig, "dt histogram needs at least one bin");
    if (!(range > 0.0)) range = field.width / 2.0;
    DTHistogram h;
    h.bins.assign(static_cast<std::size_t>(bins), 0.0);
    for (std::size_t i = 0; i < field.values.size(); ++i) {
        if (!field.in_domain[i]) continue;
        h.bins[static_cast<std::size_t>(clamp_bin(field.values[i] / range * bins, bins))] += 1.0;
        ++h.pixel_count;
    }
    if (h.pixel_count == 0) throw Error(ErrorCode::EmptyField, "distance field has no in-mask pixels");
    normalize_unit_sum(h.bins);
    return h;
}

OrientationHistogram orientation_histogram(const BinaryMask& mask, int bins) {
    if (mask.empty()) throw Error(ErrorCode::EmptyMask, "orientation histogram of an empty raster");
    if (bins < 1) throw Error(ErrorCode::InvalidConfig, "orientation histogram needs at least one bin");
    const int w = mask.width();
    const int h = mask.height();
    auto px = [&](int x, int y) {
        return mask.at(std::clamp(x, 0, w - 1), std::clamp(y, 0, h - 1)) ? 1.0 : 0.0;
    };

    OrientationHistogram out;
    out.bins.assign(static_cast<std::size_t>(bins), 0.0);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double gx = (px(x + 1, y - 1) + 2.0 * px(x + 1, y) + px(x + 1, y + 1)) -
                              (px(x - 1, y - 1) + 2.0 * px(x - 1, y) + px(x - 1, y + 1));
            const double gy = (px(x - 1, y + 1) + 2.0 * px(x, y + 1) + px(x + 1, y + 1)) -
                              (px(x - 1, y - 1) + 2.0 * px(x, y - 1) + px(x + 1, y - 1));
            if (gx == 0.0 && gy == 0.0) continue;
            const double magnitude = std::hypot(gx, gy);
            double degrees = std::atan2(gy, gx) * 180.0 / std::numbers::pi;
            if (degrees < 0.0) degrees += 180.0;
            if (degrees >= 180.0) degrees -= 180.0;
            out.bins[static_cast<std::size_t>(clamp_bin(degrees / 180.0 * bins, bins) % bins)] += magnitude;
            out.total_magnitude += magnitude;
        }
    if (out.total_magnitude == 0.0) throw Error(ErrorCode::NoGradient, "image has no gradient");
    normalize_unit_sum(out.bins);
    return out;
}

HuVector hu_moments(const BinaryMask& mask) {
    double n = 0.0, sx = 0.0, sy = 0.0;
    for (int y = 0; y < mask.height(); ++y)
        for (int x = 0; x < mask.width(); ++x)
            if (mask.at(x, y)) {
                n += 1.0;
                sx += x;
                sy += y;
            }
    if (n == 0.0) throw Error(ErrorCode::EmptyMask, "Hu moments of an empty mask");
    const double cx = sx / n;
    const double cy = sy / n;

    double m20 = 0, m02 = 0, m11 = 0, m30 = 0, m03 = 0, m21 = 0, m12 = 0;
    for (int y = 0; y < mask.height(); ++y) {
        const double dy = y - cy;
        for (int x = 0; x < mask.width(); ++x) {
            if (!mask.at(x, y)) continue;
            const double dx = x - cx;
            m20 += dx * dx;
            m02 += dy * dy;
            m11 += dx * dy;
            m30 += dx * dx * dx;
            m03 += dy * dy * dy;
            m21 += dx * dx * dy;
            m12 += dx * dy * dy;
        }
    }
    // Integrating over each unit pixel adds 1/12 per pixel to the second
    // moments; the odd terms of the third moments cancel around the centroid.
    m20 += n / 12.0;
    m02 += n / 12.0;

    const double s2 = n * n;
    const double s3 = std::pow(n, 2.5);
    const double n20 = m20 / s2, n02 = m02 / s2, n11 = m11 / s2;
    const double n30 = m30 / s3, n03 = m03 / s3, n21 = m21 / s3, n12 = m12 / s3;

    const double a = n30 + n12;
    const double b = n21 + n03;
    const double c = n30 - 3.0 * n12;
    const double d = 3.0 * n21 - n03;
    HuVector hu{};
    hu[0] = n20 + n02;
    hu[1] = (n20 - n02) * (n20 - n02) + 4.0 * n11 * n11;
    hu[2] = c * c + d * d;
    hu[3] = a * a + b * b;
    hu[4] = c * a * (a * a - 3.0 * b * b) + d * b * (3.0 * a * a - b * b);
    hu[5] = (n20 - n02) * (a * a - b * b) + 4.0 * n11 * a * b;
    hu[6] = d * a * (a * a - 3.0 * b * b) - c * b * (3.0 * a * a - b * b);
    return hu;
}

DescriptorBundle build_bundle(const NormalizedMask& normalized, const DescriptorConfig& cfg, FeatureSet features,
                              int threads) {
    const BinaryMask& mask = normalized.mask;
    DescriptorBundle bundle;

    auto guarded = [](const char* name, auto&& fn) {
        try {
            fn();
        } catch (const FeatureError&) {
            throw;
        } catch (const Error& e) {
            throw FeatureError(name, e);
        }
    };

    const bool need_contour = features.has(Feature::Contour) || features.has(Feature::ShapeContext) ||
                              features.has(Feature::DistanceHistogram);
    if (need_contour) guarded("contour", [&] { bundle.contour = extract_contour(mask); });

    // Fixed task order: the lowest failing task wins, independent of scheduling.
    parallel_for(4, threads, [&](std::size_t task) {
        switch (task) {
        case 0:
            if (features.has(Feature::ShapeContext))
                guarded("shape_contexts", [&] {
                    bundle.sampled = resample_contour(*bundle.contour, cfg.sc_points);
                    bundle.sc = shape_contexts(*bundle.sampled, cfg);
                });
            break;
        case 1:
            if (features.has(Feature::DistanceHistogram))
                guarded("dt_histogram", [&] {
                    bundle.dt_hist = dt_histogram(distance_transform(mask, *bundle.contour), cfg.dt_bins);
                });
            break;
        case 2:
            if (features.has(Feature::Orientation))
                guarded("orientation_histogram",
                        [&] { bundle.ohist = orientation_histogram(mask, cfg.orientation_bins); });
            break;
        case 3:
            if (features.has(Feature::Hu)) guarded("hu_moments", [&] { bundle.hu = hu_moments(mask); });
            break;
        }
    });
    if (!features.has(Feature::Contour)) bundle.contour.reset(); // intermediate only
    if (features.has(Feature::Template)) bundle.mask = mask;
    return bundle;
}

} // namespace gesturebench
