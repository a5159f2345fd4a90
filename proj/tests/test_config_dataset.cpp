#include "gesturebench/config.hpp"
#include "gesturebench/dataset.hpp"
#include "gesturebench/error.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace gesturebench;
using testsupport::TempDir;

TEST_CASE("config defaults") {
    const PipelineParams p;
    CHECK(p.weights.alpha == 0.17);
    CHECK(p.weights.beta == 1.0);
    CHECK(p.normalization.target_width == 100);
    CHECK(p.descriptors.sc_points == 20);
}

TEST_CASE("config text overrides whitelisted keys") {
    PipelineParams p;
    apply_config_text("# tuned\nalpha = 0.25\n\nbeta=0.5\nw_M=64\nM_SC=24\ndt_bins = 16\n", p);
    CHECK(p.weights.alpha == 0.25);
    CHECK(p.weights.beta == 0.5);
    CHECK(p.normalization.target_width == 64);
    CHECK(p.descriptors.sc_points == 24);
    CHECK(p.descriptors.dt_bins == 16);
    CHECK(config_keys().size() == 10);
}

TEST_CASE("config rejects unknown keys and bad values") {
    auto code = [](const std::string& text) {
        PipelineParams p;
        try {
            apply_config_text(text, p);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::InvalidArgument;
    };
    CHECK(code("gamma=1\n") == ErrorCode::InvalidConfig);
    CHECK(code("alpha=abc\n") == ErrorCode::InvalidConfig);
    CHECK(code("alpha=-1\n") == ErrorCode::InvalidConfig);
    CHECK(code("alpha=0\nbeta=0\n") == ErrorCode::InvalidConfig);
    CHECK(code("w_M=4\n") == ErrorCode::InvalidConfig);
    CHECK(code("M_SC=3\n") == ErrorCode::InvalidConfig);
    CHECK(code("dt_bins=0\n") == ErrorCode::InvalidConfig);
    CHECK(code("alpha\n") == ErrorCode::InvalidConfig);
    CHECK(code("sc_inner_radius=3\n") == ErrorCode::InvalidConfig);
    CHECK(code("sc_outer_radius=0.1\n") == ErrorCode::InvalidConfig);
    PipelineParams widened;
    apply_config_text("sc_inner_radius=3\nsc_outer_radius=4\n", widened);
    CHECK(widened.descriptors.inner_radius == 3.0);
    CHECK(widened.descriptors.outer_radius == 4.0);
}

TEST_CASE("config file") {
    TempDir dir("cfg");
    testsupport::write_file(dir / "p.cfg", "beta=2\n");
    PipelineParams p;
    apply_config_file(dir / "p.cfg", p);
    CHECK(p.weights.beta == 2.0);
    CHECK_THROWS_AS(apply_config_file(dir / "none.cfg", p), Error);
}

TEST_CASE("manifest round trip and validation") {
    TempDir dir("man");
    const std::vector<ManifestEntry> entries{{"a", "g01", "masks/a.pgm"}, {"b", "g02", "masks/b.pgm"}};
    write_manifest(dir / "manifest.csv", entries);
    CHECK(read_manifest(dir / "manifest.csv") == entries);

    testsupport::write_file(dir / "dup.csv", "id,class,path\na,x,a.pgm\na,y,b.pgm\n");
    try {
        read_manifest(dir / "dup.csv");
        FAIL("expected DuplicateId");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DuplicateId);
    }
    testsupport::write_file(dir / "bad.csv", "name,label\n");
    CHECK_THROWS_AS(read_manifest(dir / "bad.csv"), Error);
    CHECK_THROWS_AS(read_manifest(dir / "none.csv"), Error);
}

TEST_CASE("load_normalized_dataset resolves paths and checks widths") {
    TempDir dir("ds");
    std::filesystem::create_directories(dir / "m");
    save_mask(testsupport::rect_mask(10, 6, 1, 1, 8, 5), dir / "m" / "a.pgm");
    save_mask(testsupport::rect_mask(10, 9, 2, 2, 6, 7), dir / "m" / "b.pgm");
    write_manifest(dir / "manifest.csv", {{"a", "g01", "m/a.pgm"}, {"b", "g02", "m/b.pgm"}});
    const auto ds = load_normalized_dataset(dir.path());
    REQUIRE(ds.size() == 2);
    CHECK(ds[1].label == "g02");
    CHECK(ds[1].mask.mask.height() == 9);
    CHECK(ds[0].mask.source_id == "a");

    save_mask(testsupport::rect_mask(12, 6, 1, 1, 8, 5), dir / "m" / "b.pgm");
    try {
        load_normalized_dataset(dir.path());
        FAIL("expected WidthMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::WidthMismatch);
    }
}
