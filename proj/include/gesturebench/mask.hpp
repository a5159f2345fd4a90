#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace gesturebench {

struct Point2d {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2d&, const Point2d&) = default;
};

/// Row-major binary raster, true = hand.
class BinaryMask {
public:
    BinaryMask() = default;
    /// Throws ZeroArea when either dimension is < 1.
    BinaryMask(int width, int height, bool fill = false);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    bool empty() const noexcept { return width_ == 0 || height_ == 0; }

    bool at(int x, int y) const { return pixels_[index(x, y)] != 0; }
    void set(int x, int y, bool value) { pixels_[index(x, y)] = value ? 1 : 0; }
    /// Out-of-bounds reads return false.
    bool get(int x, int y) const noexcept {
        return x >= 0 && y >= 0 && x < width_ && y < height_ && pixels_[index(x, y)] != 0;
    }

    std::size_t count() const noexcept;
    const std::vector<std::uint8_t>& raw() const noexcept { return pixels_; }

    friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

private:
    std::size_t index(int x, int y) const noexcept {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> pixels_;
};

struct WristAnnotation {
    Point2d left;
    Point2d right;
};

using WristTable = std::map<std::string, WristAnnotation>;

struct NormalizationConfig {
    int target_width = 100; // w_M
};

struct NormalizedMask {
    BinaryMask mask;
    std::string source_id;
    double rotation_applied = 0.0; // radians, in (-pi, pi]
    double scale_applied = 1.0;
};

/// Reads a P5 or P2 PGM; samples >= 128 become true.
BinaryMask load_mask(const std::filesystem::path& path);

/// Writes a P5 PGM with true -> 255 and false -> 0.
void save_mask(const BinaryMask& mask, const std::filesystem::path& path);

/// Parses the `id,lx,ly,rx,ry` sidecar. Lines starting with '#' are skipped.
WristTable load_wrist_annotations(const std::filesystem::path& path);
WristTable parse_wrist_annotations(const std::string& text);

/// Rotates the mask about the wrist midpoint so the wrist segment is
/// horizontal with the hand above it, clears every pixel strictly below
/// the wrist line, crops to the tight bounding box and rescales to
/// cfg.target_width columns. Resampling is nearest-neighbour throughout.
NormalizedMask normalize(const BinaryMask& mask, const WristAnnotation& wrist,
                         const NormalizationConfig& cfg = {}, std::string source_id = {});

/// Wraps a mask that is already normalized (rotation 0, scale 1).
NormalizedMask as_normalized(BinaryMask mask, std::string source_id = {});

} // namespace gesturebench
