// Leave-one-out cross-validation risk score, grid-search bandwidth selection,
// and pointwise asymptotic bias/variance diagnostics.
#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "bradykde/density.hpp"
#include "bradykde/kernels.hpp"

namespace bradykde {

// Candidate bandwidths, strictly ascending, all positive.
using BandwidthGrid = std::vector<double>;

struct CvEntry {
    std::vector<double> h;  // per-axis candidate (size 1 for univariate / shared)
    double score = 0.0;
};

using CvCurve = std::vector<CvEntry>;

struct BandwidthSelection {
    std::vector<double> h;  // selected bandwidth (per axis)
    CvCurve curve;
};

// CV(h) = (1/(n^2 h)) sum_i sum_j kbar((Xi-Xj)/h)
//       - (2/(n(n-1)h)) sum_i sum_{j!=i} k((Xi-Xj)/h)
// The i = j terms are included in the first sum and excluded from the second.
double cv_score_1d(const Sample1D& data, Kernel kind, double h);

// Multivariate version with the product kernels
// K_h = prod_s k(u_s)/h_s and Kbar_h = prod_s kbar(u_s)/h_s.
double cv_score_qd(const SampleQD& data, Kernel kind, const std::vector<double>& h);

// Grid-search argmin of the CV score.  Ties break toward the smallest h.
BandwidthSelection select_bandwidth_1d(const Sample1D& data, Kernel kind,
                                       const BandwidthGrid& grid);

// Shared scalar bandwidth across all axes (H = h^2 I).
BandwidthSelection select_bandwidth_shared(const SampleQD& data, Kernel kind,
                                           const BandwidthGrid& grid);

// Independent per-axis bandwidths searched over the product of the grid with
// itself; ties break toward the lexicographically smallest tuple.
BandwidthSelection select_bandwidth_per_axis(const SampleQD& data, Kernel kind,
                                             const BandwidthGrid& grid);

// Helpers for building candidate grids.
BandwidthGrid make_bandwidth_grid(double h_min, double h_max, std::size_t steps, bool log_spaced);
// 40 log-spaced values spanning [0.01 R, R] where R is the data range
// (largest axis range for multivariate data).
BandwidthGrid default_bandwidth_grid_1d(const Sample1D& data);
BandwidthGrid default_bandwidth_grid_qd(const SampleQD& data);

// Leading-order pointwise diagnostics: bias ~ (h^2/2) p''(x) kappa2 and
// var ~ kappa p(x)/(n h).
double asymptotic_bias(Kernel kind, double h, double p2x);
double asymptotic_variance(Kernel kind, std::size_t n, double h, double px);

// argmin_h of bias^2 + variance: {kappa p(x) / [kappa2 p''(x)]^2}^{1/5} n^{-1/5}.
// p2x = 0 is a singularity (leading bias vanishes) and is rejected.
double h_opt_pointwise(Kernel kind, std::size_t n, double px, double p2x);

}  // namespace bradykde
