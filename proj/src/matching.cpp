#include "gesturebench/matching.hpp"

#include "gesturebench/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>

namespace gesturebench {

CostMatrix CostMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    CostMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size())
            throw Error(ErrorCode::NonSquare, "row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                                                  " entries, expected " + std::to_string(rows.size()));
        for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

CostMatrix CostMatrix::transposed() const {
    CostMatrix t(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

double chi_square(std::span<const double> h1, std::span<const double> h2) {
    if (h1.size() != h2.size())
        throw Error(ErrorCode::BinCountMismatch,
                    std::to_string(h1.size()) + " vs " + std::to_string(h2.size()) + " bins");
    double total = 0.0;
    for (std::size_t b = 0; b < h1.size(); ++b) {
        const double mass = h1[b] + h2[b];
        if (mass == 0.0) continue;
        const double diff = h1[b] - h2[b];
        total += diff * diff / mass;
    }
    return total;
}

Assignment hungarian(const CostMatrix& costs) {
    const std::size_t n = costs.size();
    if (n == 0) throw Error(ErrorCode::NonSquare, "empty cost matrix");
    double scale = 1.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double c = costs(i, j);
            if (!std::isfinite(c)) throw Error(ErrorCode::NonFiniteEntry, "entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
            scale = std::max(scale, std::abs(c));
        }

    // Shortest augmenting paths with row potentials u and column potentials v
    // (1-based; column 0 is the virtual source). Reduced cost c - u - v >= 0.
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
    std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
    std::vector<char> used(n + 1);
    for (std::size_t i = 1; i <= n; ++i) {
        match[0] = i;
        std::size_t j0 = 0;
        std::fill(minv.begin(), minv.end(), inf);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = match[j0];
            double delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = costs(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<std::size_t> col_of_row(n), row_of_col(n);
    for (std::size_t j = 1; j <= n; ++j) {
        row_of_col[j - 1] = match[j] - 1;
        col_of_row[match[j] - 1] = j - 1;
    }

    // Every optimal permutation lives on the tight edges of the optimal dual.
    // Walk rows in order and pin each to its smallest tight column that still
    // admits a perfect matching, re-routing along alternating paths.
    const double tol = 1e-11 * scale;
    auto tight = [&](std::size_t i, std::size_t j) { return costs(i, j) - u[i + 1] - v[j + 1] <= tol; };
    std::vector<char> pinned(n, 0), visited(n);
    std::function<bool(std::size_t, std::size_t, std::size_t)> reroute =
        [&](std::size_t row, std::size_t target, std::size_t banned) -> bool {
        for (std::size_t c = 0; c < n; ++c) {
            if (pinned[c] || visited[c] || c == banned || !tight(row, c)) continue;
            visited[c] = 1;
            if (c == target || reroute(row_of_col[c], target, banned)) {
                col_of_row[row] = c;
                row_of_col[c] = row;
                return true;
            }
        }
        return false;
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (pinned[j] || !tight(i, j)) continue;
            if (col_of_row[i] == j) break;
            std::fill(visited.begin(), visited.end(), 0);
            const std::size_t freed = col_of_row[i];
            if (reroute(row_of_col[j], freed, j)) {
                col_of_row[i] = j;
                row_of_col[j] = i;
                break;
            }
        }
        pinned[col_of_row[i]] = 1;
    }

    Assignment out;
    out.permutation = std::move(col_of_row);
    for (std::size_t i = 0; i < n; ++i) out.total_cost += costs(i, out.permutation[i]);
    return out;
}

double sc_cost(const ShapeContextSet& a, const ShapeContextSet& b) {
    if (a.points != b.points)
        throw Error(ErrorCode::PointCountMismatch, std::to_string(a.points) + " vs " + std::to_string(b.points));
    if (a.bins != b.bins) throw Error(ErrorCode::BinCountMismatch, "shape-context layouts differ");
    if (a.points == 0) throw Error(ErrorCode::EmptySet, "empty shape-context set");
    CostMatrix costs(a.points);
    for (std::size_t i = 0; i < a.points; ++i)
        for (std::size_t j = 0; j < b.points; ++j) costs(i, j) = chi_square(a.row(i), b.row(j)) / 2.0;
    return hungarian(costs).total_cost / static_cast<double>(a.points);
}

double combined_cost(double c_sc, double d_app, const CombineWeights& w) {
    if (!(w.alpha >= 0.0) || !(w.beta >= 0.0) || !(w.alpha + w.beta > 0.0))
        throw Error(ErrorCode::InvalidConfig, "weights must be non-negative with a positive sum");
    // Normalized chi-square values can overshoot 1 by a few ulps.
    constexpr double slack = 1e-9;
    for (double x : {c_sc, d_app})
        if (!(x >= -slack && x <= 1.0 + slack))
            throw Error(ErrorCode::OutOfRangeInput, "cost " + std::to_string(x) + " outside [0, 1]");
    return w.alpha * std::clamp(c_sc, 0.0, 1.0) + w.beta * std::clamp(d_app, 0.0, 1.0);
}

namespace {

// Rows packed 64 columns per word so the squared difference of binary
// rasters becomes popcount(a ^ b).
struct PackedRows {
    std::size_t words = 0;
    int rows = 0;
    std::vector<std::uint64_t> bits;

    explicit PackedRows(const BinaryMask& m)
        : words((static_cast<std::size_t>(m.width()) + 63) / 64), rows(m.height()),
          bits(words * static_cast<std::size_t>(m.height()), 0) {
        const std::uint8_t* px = m.raw().data();
        const auto w = static_cast<std::size_t>(m.width());
        for (std::size_t y = 0; y < static_cast<std::size_t>(rows); ++y, px += w) {
            std::uint64_t* row = bits.data() + y * words;
            for (std::size_t x = 0; x < w; ++x) row[x / 64] |= std::uint64_t{px[x] != 0} << (x % 64);
        }
    }

    bool any() const {
        return std::any_of(bits.begin(), bits.end(), [](std::uint64_t v) { return v != 0; });
    }
};

} // namespace

double template_ssd(const BinaryMask& a, const BinaryMask& b) {
    if (a.width() != b.width())
        throw Error(ErrorCode::WidthMismatch, std::to_string(a.width()) + " vs " + std::to_string(b.width()));
    const bool a_is_template = a.height() <= b.height();
    const PackedRows templ(a_is_template ? a : b);
    const PackedRows image(a_is_template ? b : a);
    if (!templ.any() || !image.any()) throw Error(ErrorCode::EmptyMask, "template matching needs non-empty masks");

    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    for (int offset = 0; offset + templ.rows <= image.rows; ++offset) {
        std::uint64_t sum = 0;
        const std::uint64_t* t = templ.bits.data();
        const std::uint64_t* s = image.bits.data() + static_cast<std::size_t>(offset) * image.words;
        const std::size_t total = templ.bits.size();
        for (std::size_t k = 0; k < total && sum < best; ++k) sum += static_cast<std::uint64_t>(std::popcount(t[k] ^ s[k]));
        best = std::min(best, sum);
    }
    const double area = static_cast<double>(a.width()) * templ.rows;
    return static_cast<double>(best) / area;
}

double hausdorff(std::span<const Point2d> a, std::span<const Point2d> b) {
    if (a.empty() || b.empty()) throw Error(ErrorCode::EmptySet, "Hausdorff distance of an empty set");
    auto directed = [](std::span<const Point2d> from, std::span<const Point2d> to) {
        double worst = 0.0;
        for (const Point2d& p : from) {
            double nearest = std::numeric_limits<double>::infinity();
            for (const Point2d& q : to) {
                const double dx = p.x - q.x, dy = p.y - q.y;
                nearest = std::min(nearest, dx * dx + dy * dy);
            }
            worst = std::max(worst, nearest);
        }
        return worst;
    };
    return std::sqrt(std::max(directed(a, b), directed(b, a)));
}

double hu_distance(const HuVector& a, const HuVector& b) {
    constexpr double eps = 1e-30;
    auto log_magnitude = [](double phi) {
        const double sign = phi > 0.0 ? 1.0 : (phi < 0.0 ? -1.0 : 0.0);
        return sign * std::log10(std::abs(phi) + eps);
    };
    double total = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) total += std::abs(log_magnitude(a[k]) - log_magnitude(b[k]));
    return total;
}

} // namespace gesturebench
