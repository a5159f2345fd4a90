#include "gesturebench/mask.hpp"

#include "gesturebench/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <numbers>
#include <sstream>

namespace gesturebench {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::MalformedHeader: return "MalformedHeader";
    case ErrorCode::ZeroArea: return "ZeroArea";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::ParseFailure: return "ParseFailure";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::DegenerateWrist: return "DegenerateWrist";
    case ErrorCode::InvalidWrist: return "InvalidWrist";
    case ErrorCode::EmptyAfterWristCut: return "EmptyAfterWristCut";
    case ErrorCode::EmptyMask: return "EmptyMask";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::EmptyField: return "EmptyField";
    case ErrorCode::DegeneratePoints: return "DegeneratePoints";
    case ErrorCode::NoGradient: return "NoGradient";
    case ErrorCode::BinCountMismatch: return "BinCountMismatch";
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::NonFiniteEntry: return "NonFiniteEntry";
    case ErrorCode::PointCountMismatch: return "PointCountMismatch";
    case ErrorCode::OutOfRangeInput: return "OutOfRangeInput";
    case ErrorCode::WidthMismatch: return "WidthMismatch";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::MissingFeature: return "MissingFeature";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::InvalidGallery: return "InvalidGallery";
    case ErrorCode::InsufficientImages: return "InsufficientImages";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

BinaryMask::BinaryMask(int width, int height, bool fill) : width_(width), height_(height) {
    if (width < 1 || height < 1)
        throw Error(ErrorCode::ZeroArea, "mask dimensions " + std::to_string(width) + "x" + std::to_string(height));
    pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill ? 1 : 0);
}

std::size_t BinaryMask::count() const noexcept {
    return static_cast<std::size_t>(std::count(pixels_.begin(), pixels_.end(), std::uint8_t{1}));
}

namespace {

// Minimal PGM header tokenizer: whitespace separated, '#' starts a comment.
class PgmReader {
public:
    explicit PgmReader(const std::string& data) : data_(data) {}

    std::string token() {
        skip_space_and_comments();
        const std::size_t start = pos_;
        while (pos_ < data_.size() && !std::isspace(static_cast<unsigned char>(data_[pos_])) && data_[pos_] != '#')
            ++pos_;
        return data_.substr(start, pos_ - start);
    }

    long number(const char* what) {
        const std::string t = token();
        long value = 0;
        auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
        if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size() || value < 0)
            throw Error(ErrorCode::MalformedHeader, std::string("bad ") + what + " '" + t + "'");
        return value;
    }

    // Exactly one whitespace byte separates maxval from binary samples.
    std::size_t binary_start() {
        if (pos_ >= data_.size() || !std::isspace(static_cast<unsigned char>(data_[pos_])))
            throw Error(ErrorCode::MalformedHeader, "missing separator before raster");
        return pos_ + 1;
    }

private:
    void skip_space_and_comments() {
        while (pos_ < data_.size()) {
            if (std::isspace(static_cast<unsigned char>(data_[pos_]))) {
                ++pos_;
            } else if (data_[pos_] == '#') {
                while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    const std::string& data_;
    std::size_t pos_ = 0;
};

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(trim(field));
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

int parse_int(const std::string& s, std::size_t line_no) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
        throw Error(ErrorCode::ParseFailure, "line " + std::to_string(line_no) + ": '" + s + "' is not an integer");
    return value;
}

double wrap_angle(double a) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    while (a <= -std::numbers::pi) a += two_pi;
    while (a > std::numbers::pi) a -= two_pi;
    return a + 0.0; // folds -0 into +0
}

} // namespace

BinaryMask load_mask(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::FileNotFound, path.string());
    const std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    PgmReader reader(data);
    const std::string magic = reader.token();
    if (magic != "P5" && magic != "P2") throw Error(ErrorCode::MalformedHeader, "unsupported magic '" + magic + "'");
    const long width = reader.number("width");
    const long height = reader.number("height");
    const long maxval = reader.number("maxval");
    if (width == 0 || height == 0)
        throw Error(ErrorCode::ZeroArea, path.string() + " has zero area");
    if (maxval < 1 || maxval > 65535) throw Error(ErrorCode::MalformedHeader, "maxval out of range");
    if (width > std::numeric_limits<int>::max() / 2 || height > std::numeric_limits<int>::max() / 2)
        throw Error(ErrorCode::MalformedHeader, "dimensions too large");

    BinaryMask mask(static_cast<int>(width), static_cast<int>(height));
    const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    if (magic == "P5") {
        const std::size_t start = reader.binary_start();
        const std::size_t bytes_per = maxval < 256 ? 1 : 2;
        if (data.size() < start + n * bytes_per) throw Error(ErrorCode::MalformedHeader, "truncated raster");
        for (std::size_t i = 0; i < n; ++i) {
            unsigned value = static_cast<unsigned char>(data[start + i * bytes_per]);
            if (bytes_per == 2) value = (value << 8) | static_cast<unsigned char>(data[start + i * 2 + 1]);
            mask.set(static_cast<int>(i % width), static_cast<int>(i / width), value >= 128);
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            const long value = reader.number("sample");
            mask.set(static_cast<int>(i % width), static_cast<int>(i / width), value >= 128);
        }
    }
    return mask;
}

void save_mask(const BinaryMask& mask, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoFailure, "cannot open " + path.string() + " for writing");
    out << "P5\n" << mask.width() << ' ' << mask.height() << "\n255\n";
    std::string raster(mask.raw().size(), '\0');
    std::transform(mask.raw().begin(), mask.raw().end(), raster.begin(),
                   [](std::uint8_t v) { return static_cast<char>(v ? 255 : 0); });
    out.write(raster.data(), static_cast<std::streamsize>(raster.size()));
    if (!out) throw Error(ErrorCode::IoFailure, "write failed for " + path.string());
}

WristTable parse_wrist_annotations(const std::string& text) {
    WristTable table;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto fields = split_csv(t);
        if (!header_seen) {
            if (fields != std::vector<std::string>{"id", "lx", "ly", "rx", "ry"})
                throw Error(ErrorCode::ParseFailure, "expected header 'id,lx,ly,rx,ry'");
            header_seen = true;
            continue;
        }
        if (fields.size() != 5 || fields[0].empty())
            throw Error(ErrorCode::ParseFailure, "line " + std::to_string(line_no) + ": expected 5 fields");
        WristAnnotation w;
        w.left = {static_cast<double>(parse_int(fields[1], line_no)), static_cast<double>(parse_int(fields[2], line_no))};
        w.right = {static_cast<double>(parse_int(fields[3], line_no)), static_cast<double>(parse_int(fields[4], line_no))};
        if (w.left == w.right) throw Error(ErrorCode::DegenerateWrist, "'" + fields[0] + "' has coincident wrist points");
        if (!table.emplace(fields[0], w).second) throw Error(ErrorCode::DuplicateId, "'" + fields[0] + "'");
    }
    if (!header_seen) throw Error(ErrorCode::ParseFailure, "missing header");
    return table;
}

WristTable load_wrist_annotations(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::FileNotFound, path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_wrist_annotations(buf.str());
}

NormalizedMask normalize(const BinaryMask& mask, const WristAnnotation& wrist, const NormalizationConfig& cfg,
                         std::string source_id) {
    if (cfg.target_width < 8) throw Error(ErrorCode::InvalidConfig, "target width must be >= 8");
    if (mask.empty() || mask.count() == 0) throw Error(ErrorCode::EmptyMask, "no hand pixels in '" + source_id + "'");
    if (wrist.left == wrist.right) throw Error(ErrorCode::DegenerateWrist, "coincident wrist points");
    for (const Point2d& p : {wrist.left, wrist.right})
        if (p.x < 0 || p.y < 0 || p.x > mask.width() - 1 || p.y > mask.height() - 1)
            throw Error(ErrorCode::InvalidWrist, "wrist point outside image bounds");

    const Point2d mid{(wrist.left.x + wrist.right.x) / 2.0, (wrist.left.y + wrist.right.y) / 2.0};
    double cx = 0.0, cy = 0.0;
    std::size_t n = 0;
    for (int y = 0; y < mask.height(); ++y)
        for (int x = 0; x < mask.width(); ++x)
            if (mask.at(x, y)) {
                cx += x;
                cy += y;
                ++n;
            }
    cx /= static_cast<double>(n);
    cy /= static_cast<double>(n);

    // Image y grows downwards, so "above the wrist" means a smaller rotated y.
    double angle = -std::atan2(wrist.right.y - wrist.left.y, wrist.right.x - wrist.left.x);
    if (std::sin(angle) * (cx - mid.x) + std::cos(angle) * (cy - mid.y) > 0.0) angle += std::numbers::pi;
    angle = wrap_angle(angle);
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    constexpr double eps = 1e-9;

    // Bounding box of the rotated hand pixels that survive the wrist cut.
    double min_x = std::numeric_limits<double>::infinity(), max_x = -min_x, min_y = min_x;
    for (int y = 0; y < mask.height(); ++y)
        for (int x = 0; x < mask.width(); ++x) {
            if (!mask.at(x, y)) continue;
            const double rx = mid.x + c * (x - mid.x) - s * (y - mid.y);
            const double ry = mid.y + s * (x - mid.x) + c * (y - mid.y);
            if (ry > mid.y + eps) continue;
            min_x = std::min(min_x, rx);
            max_x = std::max(max_x, rx);
            min_y = std::min(min_y, ry);
        }
    if (!std::isfinite(min_x)) throw Error(ErrorCode::EmptyAfterWristCut, "no hand pixels above the wrist line");

    // Inverse-map a canvas in the rotated frame; the last row is the wrist row.
    const long x0 = static_cast<long>(std::floor(min_x)) - 1;
    const long x1 = static_cast<long>(std::ceil(max_x)) + 1;
    const long y0 = static_cast<long>(std::floor(min_y)) - 1;
    const long y1 = static_cast<long>(std::floor(mid.y + eps));
    const int cw = static_cast<int>(x1 - x0 + 1);
    const int ch = static_cast<int>(y1 - y0 + 1);
    BinaryMask canvas(cw, ch);
    int bx0 = cw, bx1 = -1, by0 = ch, by1 = -1;
    for (int v = 0; v < ch; ++v)
        for (int u = 0; u < cw; ++u) {
            const double px = static_cast<double>(x0 + u) - mid.x;
            const double py = static_cast<double>(y0 + v) - mid.y;
            const long sx = std::lround(mid.x + c * px + s * py);
            const long sy = std::lround(mid.y - s * px + c * py);
            if (sx < 0 || sy < 0 || sx >= mask.width() || sy >= mask.height()) continue;
            if (!mask.at(static_cast<int>(sx), static_cast<int>(sy))) continue;
            canvas.set(u, v, true);
            bx0 = std::min(bx0, u);
            bx1 = std::max(bx1, u);
            by0 = std::min(by0, v);
            by1 = std::max(by1, v);
        }
    if (bx1 < 0) throw Error(ErrorCode::EmptyAfterWristCut, "no hand pixels above the wrist line");

    const int crop_w = bx1 - bx0 + 1;
    const int crop_h = by1 - by0 + 1;
    const int out_w = cfg.target_width;
    const double scale = static_cast<double>(out_w) / crop_w;
    const int out_h = std::max(1, static_cast<int>(std::lround(crop_h * scale)));

    // Endpoint-aligned sampling keeps the outermost crop rows and columns.
    auto source_index = [](int i, int out_n, int src_n) {
        if (out_n == 1) return 0;
        return static_cast<int>(std::lround(static_cast<double>(i) * (src_n - 1) / (out_n - 1)));
    };
    int kept_h = out_h;
    BinaryMask out(out_w, out_h);
    for (int y = 0; y < out_h; ++y) {
        const int sy = source_index(y, out_h, crop_h);
        for (int x = 0; x < out_w; ++x)
            out.set(x, y, canvas.at(bx0 + source_index(x, out_w, crop_w), by0 + sy));
    }
    // Downsampling can skip every hand pixel of the wrist row; drop such rows.
    auto row_empty = [&](int y) {
        for (int x = 0; x < out_w; ++x)
            if (out.at(x, y)) return false;
        return true;
    };
    while (kept_h > 1 && row_empty(kept_h - 1)) --kept_h;
    if (kept_h != out_h) {
        BinaryMask trimmed(out_w, kept_h);
        for (int y = 0; y < kept_h; ++y)
            for (int x = 0; x < out_w; ++x) trimmed.set(x, y, out.at(x, y));
        out = std::move(trimmed);
    }
    return NormalizedMask{std::move(out), std::move(source_id), angle, scale};
}

NormalizedMask as_normalized(BinaryMask mask, std::string source_id) {
    return NormalizedMask{std::move(mask), std::move(source_id), 0.0, 1.0};
}

} // namespace gesturebench
