#pragma once

#include "gesturebench/mask.hpp"
#include "gesturebench/rng.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>

namespace testsupport {

using gesturebench::BinaryMask;
using gesturebench::CounterRng;

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("gb_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& s) const { return path_ / s; }

private:
    std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& p, const std::string& bytes) {
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    f << bytes;
}

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

/// Independent pixels, each true with probability `density`.
inline BinaryMask random_mask(CounterRng& rng, int w, int h, double density) {
    BinaryMask m(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) m.set(x, y, rng.uniform() < density);
    return m;
}

/// Filled axis-aligned rectangle [x0, x0+w) x [y0, y0+h) on a canvas.
inline BinaryMask rect_mask(int cw, int ch, int x0, int y0, int w, int h) {
    BinaryMask m(cw, ch);
    for (int y = y0; y < y0 + h; ++y)
        for (int x = x0; x < x0 + w; ++x) m.set(x, y, true);
    return m;
}

/// Filled disk of radius r centred at (cx, cy), pixel centres tested.
inline BinaryMask disk_mask(int cw, int ch, double cx, double cy, double r) {
    BinaryMask m(cw, ch);
    for (int y = 0; y < ch; ++y)
        for (int x = 0; x < cw; ++x) {
            const double dx = x - cx, dy = y - cy;
            m.set(x, y, dx * dx + dy * dy <= r * r);
        }
    return m;
}

} // namespace testsupport
