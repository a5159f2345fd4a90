#include "gesturebench/error.hpp"
#include "gesturebench/geometry.hpp"
#include "oracles.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>

using namespace gesturebench;

namespace {

bool adjacent8(Point2d a, Point2d b) {
    const double dx = std::abs(a.x - b.x), dy = std::abs(a.y - b.y);
    return dx <= 1 && dy <= 1 && (dx + dy) > 0;
}

// Union of random disks and rectangles: blob-like shapes with concavities.
BinaryMask random_blobs(CounterRng& rng, int w, int h) {
    BinaryMask m(w, h);
    const int shapes = 1 + static_cast<int>(rng.below(5));
    for (int s = 0; s < shapes; ++s) {
        const double cx = rng.uniform(0, w), cy = rng.uniform(0, h);
        const double r = rng.uniform(2, std::min(w, h) / 2.0);
        const bool disk = rng.below(2) == 0;
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                const double dx = x - cx, dy = y - cy;
                if (disk ? dx * dx + dy * dy <= r * r : std::abs(dx) <= r && std::abs(dy) <= r / 2) m.set(x, y, true);
            }
    }
    return m;
}

// Arc-length position of each sample along the source ring, found by
// walking forward segment by segment.
std::vector<double> arc_positions(const std::vector<Point2d>& ring, const std::vector<Point2d>& samples) {
    const std::size_t n = ring.size();
    std::vector<double> cum(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const Point2d a = ring[i], b = ring[(i + 1) % n];
        cum[i + 1] = cum[i] + std::hypot(b.x - a.x, b.y - a.y);
    }
    std::vector<double> out;
    std::size_t seg = 0;
    for (const auto& p : samples) {
        for (; seg < n; ++seg) {
            const Point2d a = ring[seg], b = ring[(seg + 1) % n];
            const double ab = std::hypot(b.x - a.x, b.y - a.y);
            const double ap = std::hypot(p.x - a.x, p.y - a.y), pb = std::hypot(b.x - p.x, b.y - p.y);
            if (std::abs(ap + pb - ab) < 1e-9) break;
        }
        REQUIRE(seg < n);
        out.push_back(cum[seg] + std::hypot(p.x - ring[seg].x, p.y - ring[seg].y));
    }
    return out;
}

} // namespace

TEST_CASE("extract_contour on a 3x3 block gives the 8-pixel ring") {
    const BinaryMask m = testsupport::rect_mask(3, 3, 0, 0, 3, 3);
    const Contour c = extract_contour(m);
    REQUIRE(c.points.size() == 8);
    CHECK(c.closed);
    CHECK(signed_area(c.points) > 0);
    for (const auto& p : c.points) CHECK_FALSE((p.x == 1 && p.y == 1));
}

TEST_CASE("extract_contour rejects tiny and empty masks") {
    BinaryMask one(4, 4);
    one.set(1, 1, true);
    CHECK_THROWS_AS(extract_contour(one), Error);
    try {
        extract_contour(one);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TooSmall);
    }
    try {
        extract_contour(BinaryMask(4, 4));
        FAIL("expected EmptyMask");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EmptyMask);
    }
}

TEST_CASE("extract_contour follows the largest component") {
    BinaryMask m(30, 20);
    for (int y = 2; y < 7; ++y)
        for (int x = 2; x < 12; ++x) m.set(x, y, true); // 50 pixels
    for (int y = 12; y < 14; ++y)
        for (int x = 20; x < 25; ++x) m.set(x, y, true); // 10 pixels
    const Contour c = extract_contour(m);
    for (const auto& p : c.points) {
        CHECK(p.x >= 2);
        CHECK(p.x < 12);
        CHECK(p.y >= 2);
        CHECK(p.y < 7);
    }
    CHECK(c.points.size() == 26); // perimeter pixels of a 10x5 block
}

TEST_CASE("property: contours are closed 8-connected CCW cycles on the mask boundary") {
    CounterRng rng(21, 0);
    for (int trial = 0; trial < 200; ++trial) {
        const int w = 8 + static_cast<int>(rng.below(57)), h = 8 + static_cast<int>(rng.below(57));
        const BinaryMask m = trial % 2 ? random_blobs(rng, w, h) : testsupport::random_mask(rng, w, h, 0.6);
        Contour c;
        try {
            c = extract_contour(m);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::TooSmall);
            continue;
        }
        REQUIRE(c.points.size() >= 3);
        for (std::size_t i = 0; i < c.points.size(); ++i) {
            const Point2d p = c.points[i];
            CHECK(adjacent8(p, c.points[(i + 1) % c.points.size()]));
            CHECK(m.at(static_cast<int>(p.x), static_cast<int>(p.y)));
            const int x = static_cast<int>(p.x), y = static_cast<int>(p.y);
            const bool boundary = !m.get(x - 1, y) || !m.get(x + 1, y) || !m.get(x, y - 1) || !m.get(x, y + 1);
            CHECK(boundary);
        }
        CHECK(signed_area(c.points) >= 0);
    }
}

TEST_CASE("resample_contour: unit square gives its corners from the min-y corner") {
    const Contour sq{{{1, 1}, {0, 1}, {0, 0}, {1, 0}}, true};
    const SampledContour s = resample_contour(sq, 4);
    REQUIRE(s.points.size() == 4);
    CHECK(s.source_length == 4);
    CHECK(s.points[0].x == 0);
    CHECK(s.points[0].y == 0);
    CHECK(s.points[1].x == 1);
    CHECK(s.points[1].y == 0);
    CHECK(s.points[2].x == 1);
    CHECK(s.points[2].y == 1);
    CHECK(s.points[3].x == 0);
    CHECK(s.points[3].y == 1);
}

TEST_CASE("resample_contour: equal segments and count = length return the original points") {
    const Contour ring = extract_contour(testsupport::rect_mask(10, 10, 2, 3, 5, 4));
    const SampledContour s = resample_contour(ring, ring.points.size());
    // Equal spacing holds only for axis-aligned rings; this one is.
    REQUIRE(s.points.size() == ring.points.size());
    std::size_t start = 0;
    for (std::size_t i = 0; i < ring.points.size(); ++i)
        if (ring.points[i].y < ring.points[start].y ||
            (ring.points[i].y == ring.points[start].y && ring.points[i].x < ring.points[start].x))
            start = i;
    for (std::size_t i = 0; i < s.points.size(); ++i) {
        const Point2d& o = ring.points[(start + i) % ring.points.size()];
        CHECK(s.points[i].x == doctest::Approx(o.x).epsilon(1e-12));
        CHECK(s.points[i].y == doctest::Approx(o.y).epsilon(1e-12));
    }
}

TEST_CASE("resample_contour errors") {
    CHECK_THROWS_AS(resample_contour(Contour{{{0, 0}, {1, 0}}, true}, 20), Error);
    CHECK_THROWS_AS(resample_contour(Contour{{{0, 0}, {1, 0}, {1, 1}}, true}, 2), Error);
}

TEST_CASE("property: resampled spacing is uniform in arc length") {
    CounterRng rng(23, 0);
    for (int trial = 0; trial < 100; ++trial) {
        const BinaryMask m = random_blobs(rng, 40, 40);
        Contour c;
        try {
            c = extract_contour(m);
        } catch (const Error&) {
            continue;
        }
        const std::size_t count = 3 + rng.below(40);
        const SampledContour s = resample_contour(c, count);
        REQUIRE(s.points.size() == count);
        CHECK(s.source_length == c.points.size());
        // Rotate the ring so it starts where sampling starts.
        std::size_t start = 0;
        for (std::size_t i = 0; i < c.points.size(); ++i)
            if (c.points[i].y < c.points[start].y || (c.points[i].y == c.points[start].y && c.points[i].x < c.points[start].x))
                start = i;
        std::vector<Point2d> ring(c.points.begin() + static_cast<std::ptrdiff_t>(start), c.points.end());
        ring.insert(ring.end(), c.points.begin(), c.points.begin() + static_cast<std::ptrdiff_t>(start));
        const auto pos = arc_positions(ring, s.points);
        double perimeter = 0.0;
        for (std::size_t i = 0; i < ring.size(); ++i) {
            const Point2d a = ring[i], b = ring[(i + 1) % ring.size()];
            perimeter += std::hypot(b.x - a.x, b.y - a.y);
        }
        for (std::size_t k = 0; k + 1 < pos.size(); ++k)
            CHECK(std::abs((pos[k + 1] - pos[k]) - perimeter / count) < 1e-9);
    }
}

TEST_CASE("distance_transform basics") {
    const BinaryMask m = testsupport::rect_mask(5, 5, 0, 0, 5, 5);
    const Contour c = extract_contour(m);
    const DistanceField f = distance_transform(m, c);
    CHECK(f.at(2, 2) == 2.0);
    for (const auto& p : c.points) CHECK(f.at(static_cast<int>(p.x), static_cast<int>(p.y)) == 0.0);
}

TEST_CASE("property: distance_transform matches brute force on random masks") {
    CounterRng rng(31, 0);
    int checked = 0;
    for (int trial = 0; trial < 120; ++trial) {
        const int w = 1 + static_cast<int>(rng.below(64)), h = 1 + static_cast<int>(rng.below(64));
        const BinaryMask m = trial % 2 ? random_blobs(rng, w, h) : testsupport::random_mask(rng, w, h, rng.uniform());
        Contour c;
        try {
            c = extract_contour(m);
        } catch (const Error&) {
            continue;
        }
        const DistanceField f = distance_transform(m, c);
        const auto ref = oracle::brute_force_dt(m, c.points);
        double worst = 0.0;
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                CHECK(f.inside(x, y) == m.at(x, y));
                worst = std::max(worst, std::abs(f.at(x, y) - ref[static_cast<std::size_t>(y) * w + x]));
            }
        CHECK(worst <= 1e-9);
        ++checked;
    }
    CHECK(checked > 60);
}

TEST_CASE("property: translation moves the contour and keeps DT values") {
    CounterRng rng(37, 0);
    for (int trial = 0; trial < 40; ++trial) {
        const BinaryMask m = random_blobs(rng, 30, 30);
        const int dx = static_cast<int>(rng.below(10)), dy = static_cast<int>(rng.below(10));
        BinaryMask shifted(40, 40);
        for (int y = 0; y < 30; ++y)
            for (int x = 0; x < 30; ++x) shifted.set(x + dx, y + dy, m.at(x, y));
        Contour a, b;
        try {
            a = extract_contour(m);
        } catch (const Error&) {
            continue;
        }
        b = extract_contour(shifted);
        REQUIRE(a.points.size() == b.points.size());
        for (std::size_t i = 0; i < a.points.size(); ++i) {
            CHECK(b.points[i].x == a.points[i].x + dx);
            CHECK(b.points[i].y == a.points[i].y + dy);
        }
        const DistanceField fa = distance_transform(m, a), fb = distance_transform(shifted, b);
        for (int y = 0; y < 30; ++y)
            for (int x = 0; x < 30; ++x)
                if (m.at(x, y)) CHECK(fa.at(x, y) == fb.at(x + dx, y + dy));
    }
}
