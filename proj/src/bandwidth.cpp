#include "bradykde/bandwidth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bradykde {

namespace {

void check_grid(const BandwidthGrid& grid) {
    if (grid.empty()) throw std::invalid_argument("bandwidth grid must be nonempty");
    double prev = 0.0;
    for (double h : grid) {
        if (!(h > prev)) throw std::invalid_argument("bandwidth grid must be positive and strictly ascending");
        prev = h;
    }
}

std::size_t check_pair_data(std::size_t n) {
    if (n < 2) throw std::invalid_argument("cross-validation needs at least 2 points");
    return n;
}

double axis_range(const SampleQD& data, std::size_t axis) {
    double lo = data.front()[axis];
    double hi = lo;
    for (const auto& row : data) {
        lo = std::min(lo, row[axis]);
        hi = std::max(hi, row[axis]);
    }
    return hi - lo;
}

BandwidthGrid grid_from_range(double range) {
    if (!(range > 0.0))
        throw std::invalid_argument("data range is zero; cannot derive a bandwidth grid");
    return make_bandwidth_grid(0.01 * range, range, 40, true);
}

}  // namespace

double cv_score_1d(const Sample1D& data, Kernel kind, double h) {
    const double n = static_cast<double>(check_pair_data(data.size()));
    if (!(h > 0.0)) throw std::invalid_argument("bandwidth must be positive");
    double conv_sum = 0.0;
    double loo_sum = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        for (std::size_t j = 0; j < data.size(); ++j) {
            const double u = (data[i] - data[j]) / h;
            conv_sum += eval_kernel_conv(kind, u);
            if (i != j) loo_sum += eval_kernel(kind, u);
        }
    }
    return conv_sum / (n * n * h) - 2.0 * loo_sum / (n * (n - 1.0) * h);
}

double cv_score_qd(const SampleQD& data, Kernel kind, const std::vector<double>& h) {
    if (data.empty()) throw std::invalid_argument("sample must be nonempty");
    const std::size_t q = data.front().size();
    for (const auto& row : data) {
        if (row.size() != q) throw std::invalid_argument("sample rows have inconsistent dimension");
    }
    if (h.size() != q) throw std::invalid_argument("bandwidth dimension mismatch");
    for (double v : h) {
        if (!(v > 0.0)) throw std::invalid_argument("bandwidth must be positive");
    }
    const double n = static_cast<double>(check_pair_data(data.size()));

    double conv_sum = 0.0;
    double loo_sum = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        for (std::size_t j = 0; j < data.size(); ++j) {
            double conv_term = 1.0;
            double k_term = 1.0;
            for (std::size_t s = 0; s < q; ++s) {
                const double u = (data[i][s] - data[j][s]) / h[s];
                conv_term *= eval_kernel_conv(kind, u) / h[s];
                k_term *= eval_kernel(kind, u) / h[s];
            }
            conv_sum += conv_term;
            if (i != j) loo_sum += k_term;
        }
    }
    return conv_sum / (n * n) - 2.0 * loo_sum / (n * (n - 1.0));
}

namespace {

template <typename ScoreFn>
BandwidthSelection argmin_over_grid(const BandwidthGrid& grid, std::size_t axes, ScoreFn score) {
    BandwidthSelection out;
    double best = 0.0;
    bool have_best = false;
    std::vector<double> h(axes);
    for (double cand : grid) {
        std::fill(h.begin(), h.end(), cand);
        const double s = score(h);
        if (!std::isfinite(s)) throw std::runtime_error("cross-validation score is not finite");
        out.curve.push_back({h, s});
        if (!have_best || s < best) {  // strict <: ties keep the smaller h
            best = s;
            out.h = h;
            have_best = true;
        }
    }
    return out;
}

}  // namespace

BandwidthSelection select_bandwidth_1d(const Sample1D& data, Kernel kind,
                                       const BandwidthGrid& grid) {
    check_grid(grid);
    check_pair_data(data.size());
    return argmin_over_grid(grid, 1, [&](const std::vector<double>& h) {
        return cv_score_1d(data, kind, h[0]);
    });
}

BandwidthSelection select_bandwidth_shared(const SampleQD& data, Kernel kind,
                                           const BandwidthGrid& grid) {
    check_grid(grid);
    check_pair_data(data.size());
    const std::size_t q = data.front().size();
    return argmin_over_grid(grid, q, [&](const std::vector<double>& h) {
        return cv_score_qd(data, kind, h);
    });
}

BandwidthSelection select_bandwidth_per_axis(const SampleQD& data, Kernel kind,
                                             const BandwidthGrid& grid) {
    check_grid(grid);
    check_pair_data(data.size());
    const std::size_t q = data.front().size();
    if (q != 2) throw std::invalid_argument("per-axis selection is implemented for 2 axes");
    BandwidthSelection out;
    double best = 0.0;
    bool have_best = false;
    for (double h1 : grid) {
        for (double h2 : grid) {
            const std::vector<double> h{h1, h2};
            const double s = cv_score_qd(data, kind, h);
            if (!std::isfinite(s)) throw std::runtime_error("cross-validation score is not finite");
            out.curve.push_back({h, s});
            if (!have_best || s < best) {
                best = s;
                out.h = h;
                have_best = true;
            }
        }
    }
    return out;
}

BandwidthGrid make_bandwidth_grid(double h_min, double h_max, std::size_t steps, bool log_spaced) {
    if (!(h_min > 0.0) || !(h_max > h_min)) throw std::invalid_argument("need 0 < h_min < h_max");
    if (steps < 1) throw std::invalid_argument("grid needs at least one step");
    BandwidthGrid grid(steps);
    if (steps == 1) {
        grid[0] = h_min;
        return grid;
    }
    if (log_spaced) {
        const double la = std::log(h_min);
        const double lb = std::log(h_max);
        for (std::size_t i = 0; i < steps; ++i)
            grid[i] = std::exp(la + (lb - la) * static_cast<double>(i) / static_cast<double>(steps - 1));
    } else {
        for (std::size_t i = 0; i < steps; ++i)
            grid[i] = h_min + (h_max - h_min) * static_cast<double>(i) / static_cast<double>(steps - 1);
    }
    grid.back() = h_max;
    return grid;
}

BandwidthGrid default_bandwidth_grid_1d(const Sample1D& data) {
    if (data.empty()) throw std::invalid_argument("sample must be nonempty");
    const auto [lo, hi] = std::minmax_element(data.begin(), data.end());
    return grid_from_range(*hi - *lo);
}

BandwidthGrid default_bandwidth_grid_qd(const SampleQD& data) {
    if (data.empty()) throw std::invalid_argument("sample must be nonempty");
    double range = 0.0;
    for (std::size_t s = 0; s < data.front().size(); ++s) range = std::max(range, axis_range(data, s));
    return grid_from_range(range);
}

double asymptotic_bias(Kernel kind, double h, double p2x) {
    if (!(h > 0.0)) throw std::invalid_argument("bandwidth must be positive");
    return 0.5 * h * h * p2x * kernel_kappa2(kind);
}

double asymptotic_variance(Kernel kind, std::size_t n, double h, double px) {
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    if (!(h > 0.0)) throw std::invalid_argument("bandwidth must be positive");
    return kernel_kappa(kind) * px / (static_cast<double>(n) * h);
}

double h_opt_pointwise(Kernel kind, std::size_t n, double px, double p2x) {
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    if (!(px > 0.0)) throw std::invalid_argument("density value must be positive");
    if (p2x == 0.0)
        throw std::domain_error("second derivative is zero: leading-order bias vanishes and the "
                                "pointwise optimum is undefined");
    const double denom = kernel_kappa2(kind) * p2x;
    const double c = std::pow(kernel_kappa(kind) * px / (denom * denom), 0.2);
    return c * std::pow(static_cast<double>(n), -0.2);
}

}  // namespace bradykde
