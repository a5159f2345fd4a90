#pragma once

#include "gesturebench/descriptors.hpp"
#include "gesturebench/mask.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace gesturebench {

/// Square matrix of matching costs, row-major.
class CostMatrix {
public:
    explicit CostMatrix(std::size_t n = 0) : n_(n), values_(n * n, 0.0) {}
    /// Throws NonSquare for ragged or non-square input.
    static CostMatrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t size() const noexcept { return n_; }
    double& operator()(std::size_t i, std::size_t j) { return values_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }
    CostMatrix transposed() const;

private:
    std::size_t n_;
    std::vector<double> values_;
};

struct Assignment {
    std::vector<std::size_t> permutation; // row i -> column permutation[i]
    double total_cost = 0.0;
};

struct CombineWeights {
    double alpha = 0.17;
    double beta = 1.0;
};

/// Chi-square histogram distance; bins with zero total mass contribute 0.
double chi_square(std::span<const double> h1, std::span<const double> h2);

/// Minimum-cost perfect assignment by the O(n^3) shortest augmenting path
/// Hungarian method. Among optimal permutations the lexicographically
/// smallest is returned.
Assignment hungarian(const CostMatrix& costs);

/// Mean optimal per-point cost between two shape-context sets, in [0, 1].
/// The per-pair cost is chi_square / 2.
double sc_cost(const ShapeContextSet& a, const ShapeContextSet& b);

/// alpha * c_sc + beta * d_app for normalized inputs in [0, 1].
double combined_cost(double c_sc, double d_app, const CombineWeights& w = {});

/// Slides the shorter mask vertically over the taller one and returns the
/// smallest sum of squared differences divided by the template area.
double template_ssd(const BinaryMask& a, const BinaryMask& b);

/// Symmetric Hausdorff distance between two finite point sets.
double hausdorff(std::span<const Point2d> a, std::span<const Point2d> b);

/// L1 distance between log-magnitude Hu vectors.
double hu_distance(const HuVector& a, const HuVector& b);

} // namespace gesturebench
