#pragma once

#include "gesturebench/mask.hpp"

#include <cstddef>
#include <vector>

namespace gesturebench {

/// Closed boundary polyline; consecutive points are 8-adjacent pixels.
struct Contour {
    std::vector<Point2d> points;
    bool closed = true;
};

struct SampledContour {
    std::vector<Point2d> points;
    std::size_t source_length = 0;
};

/// Euclidean distance to the nearest contour pixel, defined inside the mask.
struct DistanceField {
    int width = 0;
    int height = 0;
    std::vector<double> values;
    std::vector<std::uint8_t> in_domain;

    double at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }
    bool inside(int x, int y) const { return in_domain[static_cast<std::size_t>(y) * width + x] != 0; }
};

/// Boundary of the largest 8-connected component (ties go to the component
/// met first in raster order), traced by Moore-neighbour tracing until the
/// tracer state repeats. Starts at the component's first raster pixel
/// and runs with positive signed (shoelace) area in pixel coordinates.
/// Throws EmptyMask for an empty mask and TooSmall below three points.
Contour extract_contour(const BinaryMask& mask);

/// `count` points at equal arc-length spacing around the closed polyline,
/// starting at its point of minimal y (then minimal x).
SampledContour resample_contour(const Contour& contour, std::size_t count = 20);

/// Exact Euclidean distance transform from the contour pixels using the
/// separable lower-envelope algorithm on squared distances.
DistanceField distance_transform(const BinaryMask& mask, const Contour& contour);

double signed_area(const std::vector<Point2d>& polygon);

} // namespace gesturebench
