#include "gesturebench/geometry.hpp"

#include "gesturebench/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace gesturebench {

namespace {

struct Pixel {
    int x = 0;
    int y = 0;
    friend bool operator==(const Pixel&, const Pixel&) = default;
    friend Pixel operator+(Pixel a, Pixel b) { return {a.x + b.x, a.y + b.y}; }
};

// Clockwise on screen (y grows downwards), starting west.
constexpr std::array<Pixel, 8> kRing{{{-1, 0}, {-1, -1}, {0, -1}, {1, -1}, {1, 0}, {1, 1}, {0, 1}, {-1, 1}}};

int ring_index(Pixel offset) {
    for (int k = 0; k < 8; ++k)
        if (kRing[static_cast<std::size_t>(k)] == offset) return k;
    return -1;
}

// Labels 8-connected components; returns the label grid (0 = background)
// together with the label and seed of the largest component.
struct Components {
    std::vector<int> labels;
    int largest = 0;
    Pixel seed;
};

Components label_components(const BinaryMask& mask) {
    const int w = mask.width();
    const int h = mask.height();
    Components out;
    out.labels.assign(static_cast<std::size_t>(w) * h, 0);
    std::size_t best_size = 0;
    int next_label = 0;
    std::vector<Pixel> stack;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            if (!mask.at(x, y) || out.labels[static_cast<std::size_t>(y) * w + x] != 0) continue;
            const int label = ++next_label;
            std::size_t size = 0;
            stack.assign(1, {x, y});
            out.labels[static_cast<std::size_t>(y) * w + x] = label;
            while (!stack.empty()) {
                const Pixel p = stack.back();
                stack.pop_back();
                ++size;
                for (const Pixel& d : kRing) {
                    const int nx = p.x + d.x, ny = p.y + d.y;
                    if (!mask.get(nx, ny)) continue;
                    int& l = out.labels[static_cast<std::size_t>(ny) * w + nx];
                    if (l != 0) continue;
                    l = label;
                    stack.push_back({nx, ny});
                }
            }
            if (size > best_size) {
                best_size = size;
                out.largest = label;
                out.seed = {x, y};
            }
        }
    return out;
}

// Felzenszwalb-Huttenlocher 1D squared distance transform of sampled function f.
void squared_dt_1d(const std::vector<double>& f, std::vector<double>& d, std::vector<int>& v, std::vector<double>& z) {
    const int n = static_cast<int>(f.size());
    constexpr double inf = std::numeric_limits<double>::infinity();
    int k = 0;
    v[0] = 0;
    z[0] = -inf;
    z[1] = inf;
    auto intersect = [&](int q, int r) {
        return ((f[static_cast<std::size_t>(q)] + static_cast<double>(q) * q) -
                (f[static_cast<std::size_t>(r)] + static_cast<double>(r) * r)) /
               (2.0 * (q - r));
    };
    for (int q = 1; q < n; ++q) {
        double s = intersect(q, v[static_cast<std::size_t>(k)]);
        // z[0] is -inf, so k never drops below zero.
        while (s <= z[static_cast<std::size_t>(k)]) {
            --k;
            s = intersect(q, v[static_cast<std::size_t>(k)]);
        }
        ++k;
        v[static_cast<std::size_t>(k)] = q;
        z[static_cast<std::size_t>(k)] = s;
        z[static_cast<std::size_t>(k) + 1] = inf;
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
        while (z[static_cast<std::size_t>(k) + 1] < q) ++k;
        const int r = v[static_cast<std::size_t>(k)];
        d[static_cast<std::size_t>(q)] = static_cast<double>(q - r) * (q - r) + f[static_cast<std::size_t>(r)];
    }
}

} // namespace

double signed_area(const std::vector<Point2d>& polygon) {
    double twice = 0.0;
    for (std::size_t i = 0; i < polygon.size(); ++i) {
        const Point2d& a = polygon[i];
        const Point2d& b = polygon[(i + 1) % polygon.size()];
        twice += a.x * b.y - b.x * a.y;
    }
    return twice / 2.0;
}

Contour extract_contour(const BinaryMask& mask) {
    if (mask.empty() || mask.count() == 0) throw Error(ErrorCode::EmptyMask, "no foreground pixels");
    const Components comps = label_components(mask);
    const int w = mask.width();
    auto inside = [&](Pixel p) {
        return mask.get(p.x, p.y) && comps.labels[static_cast<std::size_t>(p.y) * w + p.x] == comps.largest;
    };

    // The tracer state is (pixel, direction of the backtrack pixel). Moore
    // tracing is deterministic in that state, so the walk is eventually
    // periodic; the contour is the first cycle. Revisits through one-pixel
    // necks carry a different backtrack direction and stay in the trace.
    const Pixel start = comps.seed;
    std::vector<Pixel> trace;
    std::vector<int> seen(mask.raw().size() * 8, -1);
    Pixel current = start;
    int from = ring_index({-1, 0});
    std::size_t cycle_start = 0;
    for (;;) {
        int& slot = seen[(static_cast<std::size_t>(current.y) * w + current.x) * 8 + static_cast<std::size_t>(from)];
        if (slot >= 0) {
            cycle_start = static_cast<std::size_t>(slot);
            break;
        }
        slot = static_cast<int>(trace.size());
        trace.push_back(current);
        Pixel found{};
        Pixel previous = current + kRing[static_cast<std::size_t>(from)];
        bool any = false;
        for (int k = 1; k <= 8; ++k) {
            const Pixel q = current + kRing[static_cast<std::size_t>((from + k) % 8)];
            if (inside(q)) {
                found = q;
                any = true;
                break;
            }
            previous = q;
        }
        if (!any) break; // isolated pixel
        from = ring_index({previous.x - found.x, previous.y - found.y});
        current = found;
    }
    trace.erase(trace.begin(), trace.begin() + static_cast<std::ptrdiff_t>(cycle_start));
    // Keep the topmost-leftmost pixel first.
    const auto first = std::find(trace.begin(), trace.end(), start);
    if (first != trace.end()) std::rotate(trace.begin(), first, trace.end());

    Contour contour;
    contour.points.reserve(trace.size());
    for (const Pixel& p : trace) contour.points.push_back({static_cast<double>(p.x), static_cast<double>(p.y)});
    if (contour.points.size() < 3)
        throw Error(ErrorCode::TooSmall, "contour has " + std::to_string(contour.points.size()) + " points");
    if (signed_area(contour.points) < 0.0) std::reverse(contour.points.begin() + 1, contour.points.end());
    return contour;
}

SampledContour resample_contour(const Contour& contour, std::size_t count) {
    const std::size_t n = contour.points.size();
    if (n < 3) throw Error(ErrorCode::TooFewPoints, "contour needs at least 3 points");
    if (count < 3) throw Error(ErrorCode::TooFewPoints, "sample count must be at least 3");

    std::size_t first = 0;
    for (std::size_t i = 1; i < n; ++i) {
        const Point2d& p = contour.points[i];
        const Point2d& b = contour.points[first];
        if (p.y < b.y || (p.y == b.y && p.x < b.x)) first = i;
    }
    std::vector<Point2d> ring(n);
    for (std::size_t i = 0; i < n; ++i) ring[i] = contour.points[(first + i) % n];

    // cumulative[i] = arc length at ring[i]; cumulative[n] = perimeter.
    std::vector<double> cumulative(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const Point2d& a = ring[i];
        const Point2d& b = ring[(i + 1) % n];
        cumulative[i + 1] = cumulative[i] + std::hypot(b.x - a.x, b.y - a.y);
    }
    const double perimeter = cumulative[n];
    if (!(perimeter > 0.0)) throw Error(ErrorCode::TooFewPoints, "contour has zero length");

    SampledContour out;
    out.source_length = n;
    out.points.reserve(count);
    std::size_t seg = 0;
    for (std::size_t k = 0; k < count; ++k) {
        const double target = perimeter * static_cast<double>(k) / static_cast<double>(count);
        while (seg + 1 < n && cumulative[seg + 1] <= target) ++seg;
        const Point2d& a = ring[seg];
        const Point2d& b = ring[(seg + 1) % n];
        const double len = cumulative[seg + 1] - cumulative[seg];
        const double t = len > 0.0 ? (target - cumulative[seg]) / len : 0.0;
        out.points.push_back({a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t});
    }
    return out;
}

DistanceField distance_transform(const BinaryMask& mask, const Contour& contour) {
    if (mask.empty() || mask.count() == 0 || contour.points.empty())
        throw Error(ErrorCode::EmptyMask, "distance transform needs a non-empty mask and contour");
    const int w = mask.width();
    const int h = mask.height();
    // Large but finite so the envelope arithmetic never produces inf - inf.
    constexpr double far = 1e20;

    std::vector<double> grid(static_cast<std::size_t>(w) * h, far);
    for (const Point2d& p : contour.points) {
        const long x = std::lround(p.x);
        const long y = std::lround(p.y);
        if (x < 0 || y < 0 || x >= w || y >= h) throw Error(ErrorCode::InvalidArgument, "contour point outside mask");
        grid[static_cast<std::size_t>(y) * w + static_cast<std::size_t>(x)] = 0.0;
    }

    const int longest = std::max(w, h);
    std::vector<double> f(static_cast<std::size_t>(longest)), d(static_cast<std::size_t>(longest));
    std::vector<int> v(static_cast<std::size_t>(longest));
    std::vector<double> z(static_cast<std::size_t>(longest) + 1);

    f.resize(static_cast<std::size_t>(h));
    d.resize(static_cast<std::size_t>(h));
    for (int x = 0; x < w; ++x) {
        for (int y = 0; y < h; ++y) f[static_cast<std::size_t>(y)] = grid[static_cast<std::size_t>(y) * w + x];
        squared_dt_1d(f, d, v, z);
        for (int y = 0; y < h; ++y) grid[static_cast<std::size_t>(y) * w + x] = d[static_cast<std::size_t>(y)];
    }
    f.resize(static_cast<std::size_t>(w));
    d.resize(static_cast<std::size_t>(w));
    for (int y = 0; y < h; ++y) {
        std::copy_n(grid.begin() + static_cast<std::ptrdiff_t>(y) * w, w, f.begin());
        squared_dt_1d(f, d, v, z);
        std::copy_n(d.begin(), w, grid.begin() + static_cast<std::ptrdiff_t>(y) * w);
    }

    DistanceField field;
    field.width = w;
    field.height = h;
    field.values.assign(grid.size(), 0.0);
    field.in_domain.assign(grid.size(), 0);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            if (!mask.at(x, y)) continue;
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            field.in_domain[i] = 1;
            field.values[i] = std::sqrt(grid[i]);
        }
    return field;
}

} // namespace gesturebench
