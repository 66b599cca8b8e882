// Density-level prediction sets: rank threshold, grid mask, convex-hull
// boundary, membership test, and the exact rank p-value field used to verify
// the set construction on small instances.
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "bradykde/density.hpp"
#include "bradykde/point.hpp"

namespace bradykde {

struct PredictionSet {
    double c_k = 0.0;               // density threshold
    std::vector<std::uint8_t> mask; // aligned to the grid, x-major; 1 where density >= c_k
    std::size_t nx = 0;
    std::size_t ny = 0;
    std::vector<Point2> hull;       // counterclockwise convex polygon of the mask nodes
    double p_fa = 0.0;
    std::size_t n_train = 0;
    bool empty_set = false;         // threshold exceeded every grid value
};

// Exact rank p-values on a grid, x-major like DensityGrid::values.
struct PValueField {
    std::vector<double> values;
    std::size_t nx = 0;
    std::size_t ny = 0;
};

// Threshold below the k-th smallest training density:
//   c_k = y_(k) - k(0)^2/(n h^2),   k = max(1, floor((n+1) p_fa)),
// where y_n are the training-point densities under the fitted estimate and
// the correction is the augmented self-contribution for H = h^2 I_2.
// The correction is computed with the same floating-point expression the
// estimator uses for an isolated point's self term, so equality cases in
// the rank argument survive in exact arithmetic.
double compute_threshold(const std::vector<double>& train_densities, std::size_t n, double p_fa,
                         Kernel kind, double h);

PredictionSet build_prediction_set(const DensityGrid& grid, double c_k, double p_fa,
                                   std::size_t n_train);

// Minimal counterclockwise convex polygon (monotone chain).  Collinear
// interior points are excluded; degenerate inputs (0, 1, 2 distinct points,
// all-collinear sets) return the extreme points themselves.
std::vector<Point2> convex_hull(std::vector<Point2> points);

// Closed membership with absolute tolerance 1e-9 (in coordinate units).
// Degenerate hulls test segment/point membership; an empty hull contains
// nothing.
bool point_in_hull(const std::vector<Point2>& hull, const Point2& p);

// True when x lies OUTSIDE the convex hull of the prediction set: the point
// is not explained by the training distribution.
bool test_onset(const PredictionSet& set, const Point2& x);

// Exact p-value at each grid node x: the augmented estimate over
// train ∪ {x} is evaluated at every training point and at x, and
//   eta(x) = (1/(N+1)) * #{ n : p_aug(x_n) <= p_aug(x) }.
// O(N^2) per node; intended for small N.
PValueField p_value_field(const SampleQD& train, const std::vector<double>& x_axis,
                          const std::vector<double>& y_axis, Kernel kind, double h);

}  // namespace bradykde
