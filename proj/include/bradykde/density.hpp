// Kernel density estimation: univariate, multivariate product kernel, and
// 2D grid evaluation.
#pragma once

#include <cstddef>
#include <vector>

#include "bradykde/kernels.hpp"

namespace bradykde {

using Sample1D = std::vector<double>;
// n rows, each a q-vector.  All rows must share the same dimension.
using SampleQD = std::vector<std::vector<double>>;

struct DensityGrid {
    std::vector<double> x_axis;  // strictly ascending
    std::vector<double> y_axis;  // strictly ascending
    // x-major: values[ix * y_axis.size() + iy]
    std::vector<double> values;
    std::vector<double> h;  // per-axis bandwidth used
    Kernel kind = Kernel::gaussian;

    double at(std::size_t ix, std::size_t iy) const { return values[ix * y_axis.size() + iy]; }
};

// (1/(n h)) sum_i k((X_i - x)/h)
double kde_univariate(const Sample1D& data, Kernel kind, double h, double x);

// (1/(n h_1...h_q)) sum_i prod_s k((X_is - x_s)/h_s)
double kde_product(const SampleQD& data, Kernel kind, const std::vector<double>& h,
                   const std::vector<double>& x);

// Evaluates kde_product on a grid_size x grid_size lattice spanning
// [min - margin_factor*h, max + margin_factor*h] on each coordinate.
DensityGrid kde_grid(const SampleQD& data, Kernel kind, const std::vector<double>& h,
                     std::size_t grid_size, double margin_factor);

}  // namespace bradykde
