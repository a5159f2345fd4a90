#include "gesturebench/error.hpp"
#include "gesturebench/mask.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace gesturebench;
using testsupport::TempDir;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::InvalidArgument;
}

// Hand-like shape: palm rectangle above a horizontal wrist at y = wy, forearm below.
BinaryMask upright_hand(int w, int h, int wy) {
    BinaryMask m(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const bool palm = y >= wy - 50 && y <= wy && x >= w / 2 - 20 && x <= w / 2 + 20;
            const bool finger = y >= wy - 75 && y < wy - 50 && x >= w / 2 - 18 && x <= w / 2 - 10;
            const bool forearm = y > wy && x >= w / 2 - 15 && x <= w / 2 + 15;
            m.set(x, y, palm || finger || forearm);
        }
    return m;
}

// Rotates the mask about c by theta (pixel coordinates, y down), nearest neighbour.
BinaryMask rotate(const BinaryMask& src, Point2d c, double theta) {
    BinaryMask out(src.width(), src.height());
    const double cs = std::cos(theta), sn = std::sin(theta);
    for (int y = 0; y < src.height(); ++y)
        for (int x = 0; x < src.width(); ++x) {
            const double dx = x - c.x, dy = y - c.y;
            const double sx = c.x + cs * dx + sn * dy, sy = c.y - sn * dx + cs * dy;
            out.set(x, y, src.get(static_cast<int>(std::lround(sx)), static_cast<int>(std::lround(sy))));
        }
    return out;
}

Point2d rotate_point(Point2d p, Point2d c, double theta) {
    const double dx = p.x - c.x, dy = p.y - c.y;
    return {c.x + std::cos(theta) * dx - std::sin(theta) * dy, c.y + std::sin(theta) * dx + std::cos(theta) * dy};
}

} // namespace

TEST_CASE("load_mask thresholds at 128") {
    TempDir dir("mask");
    testsupport::write_file(dir / "a.pgm", std::string("P5\n2 2\n255\n") + char(255) + char(0) + char(0) + char(255));
    const BinaryMask m = load_mask(dir / "a.pgm");
    CHECK(m.width() == 2);
    CHECK(m.height() == 2);
    CHECK(m.at(0, 0));
    CHECK_FALSE(m.at(1, 0));
    CHECK_FALSE(m.at(0, 1));
    CHECK(m.at(1, 1));

    testsupport::write_file(dir / "b.pgm", std::string("P5 1 1 255\n") + char(128));
    CHECK(load_mask(dir / "b.pgm").at(0, 0));
    testsupport::write_file(dir / "c.pgm", std::string("P5 1 1 255\n") + char(127));
    CHECK_FALSE(load_mask(dir / "c.pgm").at(0, 0));
}

TEST_CASE("load_mask reads ASCII PGM with comments") {
    TempDir dir("mask");
    testsupport::write_file(dir / "a.pgm", "P2\n# comment\n3 1\n255\n0 200 128\n");
    const BinaryMask m = load_mask(dir / "a.pgm");
    CHECK_FALSE(m.at(0, 0));
    CHECK(m.at(1, 0));
    CHECK(m.at(2, 0));
}

TEST_CASE("load_mask errors") {
    TempDir dir("mask");
    CHECK(code_of([&] { load_mask(dir / "missing.pgm"); }) == ErrorCode::FileNotFound);
    testsupport::write_file(dir / "zero.pgm", "P5\n0 4\n255\n");
    CHECK(code_of([&] { load_mask(dir / "zero.pgm"); }) == ErrorCode::ZeroArea);
    testsupport::write_file(dir / "bad.pgm", "P6\n1 1\n255\n\xff\xff\xff");
    CHECK(code_of([&] { load_mask(dir / "bad.pgm"); }) == ErrorCode::MalformedHeader);
    testsupport::write_file(dir / "short.pgm", "P5\n4 4\n255\n\xff");
    CHECK_THROWS_AS(load_mask(dir / "short.pgm"), Error);
}

TEST_CASE("save_mask writes 255 for true and round-trips") {
    TempDir dir("mask");
    BinaryMask one(1, 1);
    one.set(0, 0, true);
    save_mask(one, dir / "one.pgm");
    const std::string bytes = testsupport::read_file(dir / "one.pgm");
    REQUIRE_FALSE(bytes.empty());
    CHECK(static_cast<unsigned char>(bytes.back()) == 255);

    CounterRng rng(11, 0);
    for (int i = 0; i < 50; ++i) {
        const int w = 1 + static_cast<int>(rng.below(40)), h = 1 + static_cast<int>(rng.below(40));
        const BinaryMask m = testsupport::random_mask(rng, w, h, rng.uniform());
        save_mask(m, dir / "rt.pgm");
        CHECK(load_mask(dir / "rt.pgm") == m);
    }
}

TEST_CASE("save_mask into a missing directory fails with IoFailure") {
    TempDir dir("mask");
    CHECK(code_of([&] { save_mask(BinaryMask(2, 2), dir / "nope" / "x.pgm"); }) == ErrorCode::IoFailure);
}

TEST_CASE("wrist annotations") {
    const WristTable t = parse_wrist_annotations("id,lx,ly,rx,ry\n# skipped\nimg07,10,80,40,80\n");
    REQUIRE(t.size() == 1);
    CHECK(t.at("img07").left.x == 10);
    CHECK(t.at("img07").left.y == 80);
    CHECK(t.at("img07").right.x == 40);
    CHECK(t.at("img07").right.y == 80);

    CHECK(code_of([] { parse_wrist_annotations("id,lx,ly,rx,ry\nimg07,1,2,3,4\nimg07,1,2,3,5\n"); }) ==
          ErrorCode::DuplicateId);
    CHECK(code_of([] { parse_wrist_annotations("id,lx,ly,rx,ry\nimg08,5,5,5,5\n"); }) == ErrorCode::DegenerateWrist);
    CHECK(code_of([] { parse_wrist_annotations("id,lx,ly,rx,ry\nimg09,5,x,6,5\n"); }) == ErrorCode::ParseFailure);
    CHECK(code_of([] { parse_wrist_annotations("name,a,b\nimg09,5,5,6,5\n"); }) == ErrorCode::ParseFailure);
}

TEST_CASE("normalize: horizontal wrist needs no rotation") {
    BinaryMask m(60, 100);
    for (int y = 20; y <= 80; ++y)
        for (int x = 10; x <= 40; ++x) m.set(x, y, true);
    const NormalizedMask n = normalize(m, {{10, 80}, {40, 80}});
    CHECK(n.rotation_applied == 0.0);
    CHECK(n.mask.width() == 100);
}

TEST_CASE("normalize: vertical wrist turns a quarter") {
    BinaryMask m(40, 40);
    for (int y = 0; y <= 30; ++y)
        for (int x = 0; x <= 20; ++x) m.set(x, y, true);
    const NormalizedMask n = normalize(m, {{0, 0}, {0, 30}});
    CHECK(std::abs(std::abs(n.rotation_applied) - std::numbers::pi / 2) < 1e-12);
    CHECK(n.mask.width() == 100);
    // 21 columns left of the wrist become 21 rows above it.
    CHECK(n.mask.height() == static_cast<int>(std::lround(21 * 100.0 / 31)));
}

TEST_CASE("normalize: 200-pixel-wide hand halves") {
    BinaryMask m(220, 120);
    for (int y = 10; y <= 100; ++y)
        for (int x = 10; x < 210; ++x) m.set(x, y, true);
    const NormalizedMask n = normalize(m, {{10, 100}, {209, 100}});
    CHECK(n.scale_applied == doctest::Approx(0.5));
    CHECK(n.mask.width() == 100);
}

TEST_CASE("normalize rejects bad wrists and configs") {
    BinaryMask m = testsupport::rect_mask(20, 20, 5, 5, 10, 10);
    CHECK(code_of([&] { normalize(m, {{3, 3}, {3, 3}}); }) == ErrorCode::DegenerateWrist);
    CHECK(code_of([&] { normalize(m, {{3, 3}, {30, 3}}); }) == ErrorCode::InvalidWrist);
    CHECK(code_of([&] { normalize(m, {{3, 3}, {10, 3}}, NormalizationConfig{4}); }) == ErrorCode::InvalidConfig);
    CHECK(code_of([&] { normalize(BinaryMask(5, 5), {{0, 0}, {4, 0}}); }) == ErrorCode::EmptyMask);
}

TEST_CASE("property: normalize output width and row contact") {
    CounterRng rng(3, 0);
    for (int trial = 0; trial < 60; ++trial) {
        const int w = 30 + static_cast<int>(rng.below(80)), h = 30 + static_cast<int>(rng.below(80));
        BinaryMask m = testsupport::random_mask(rng, w, h, 0.2 + 0.6 * rng.uniform());
        WristAnnotation wr{{static_cast<double>(rng.below(w)), static_cast<double>(rng.below(h))},
                           {static_cast<double>(rng.below(w)), static_cast<double>(rng.below(h))}};
        if (wr.left.x == wr.right.x && wr.left.y == wr.right.y) continue;
        const int target = 8 + static_cast<int>(rng.below(120));
        NormalizedMask n;
        try {
            n = normalize(m, wr, {target});
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::EmptyAfterWristCut);
            continue;
        }
        CHECK(n.mask.width() == target);
        bool bottom = false;
        for (int x = 0; x < n.mask.width(); ++x) bottom |= n.mask.at(x, n.mask.height() - 1);
        CHECK(bottom);
        CHECK(n.mask.count() > 0);
    }
}

TEST_CASE("property: normalize recovers a known rotation") {
    const BinaryMask base = upright_hand(160, 160, 100);
    const Point2d c{80, 100};
    CounterRng rng(5, 0);
    for (int trial = 0; trial < 40; ++trial) {
        const double theta = rng.uniform(-3.0, 3.0);
        const BinaryMask rotated = rotate(base, c, theta);
        const WristAnnotation wr{rotate_point({60, 100}, c, theta), rotate_point({100, 100}, c, theta)};
        const NormalizedMask n = normalize(rotated, wr);
        double diff = n.rotation_applied + theta;
        diff = std::remainder(diff, 2 * std::numbers::pi);
        CHECK(std::abs(diff) < 0.01);
    }
}

TEST_CASE("property: normalize is idempotent on normalized masks") {
    CounterRng rng(9, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const double theta = rng.uniform(-1.0, 1.0);
        const BinaryMask base = upright_hand(160, 160, 100);
        const Point2d c{80, 100};
        const NormalizedMask once = normalize(rotate(base, c, theta),
                                              {rotate_point({60, 100}, c, theta), rotate_point({100, 100}, c, theta)});
        const double bottom = once.mask.height() - 1;
        const NormalizedMask twice = normalize(once.mask, {{0, bottom}, {once.mask.width() - 1.0, bottom}});
        CHECK(twice.rotation_applied == 0.0);
        CHECK(std::abs(twice.scale_applied - 1.0) <= 0.02);
        CHECK(twice.mask.width() == 100);
    }
}

TEST_CASE("normalize discards the forearm below the wrist") {
    const BinaryMask base = upright_hand(160, 160, 100);
    const NormalizedMask n = normalize(base, {{60, 100}, {100, 100}});
    CHECK(n.rotation_applied == 0.0);
    CHECK(n.scale_applied == doctest::Approx(100.0 / 41));
    CHECK(n.mask.height() == static_cast<int>(std::lround(76 * 100.0 / 41)));
    // The bottom row is the full palm width; the forearm (narrower) is gone.
    for (int x = 0; x < 100; ++x) CHECK(n.mask.at(x, n.mask.height() - 1));
}
