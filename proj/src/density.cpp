#include "bradykde/density.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bradykde {

namespace {

void check_bandwidth(const std::vector<double>& h) {
    if (h.empty()) throw std::invalid_argument("bandwidth must have at least one axis");
    for (double v : h) {
        if (!(v > 0.0)) throw std::invalid_argument("bandwidth must be positive");
    }
}

std::size_t check_sample(const SampleQD& data) {
    if (data.empty()) throw std::invalid_argument("sample must be nonempty");
    const std::size_t q = data.front().size();
    if (q == 0) throw std::invalid_argument("sample rows must have dimension >= 1");
    for (const auto& row : data) {
        if (row.size() != q) throw std::invalid_argument("sample rows have inconsistent dimension");
    }
    return q;
}

}  // namespace

double kde_univariate(const Sample1D& data, Kernel kind, double h, double x) {
    if (data.empty()) throw std::invalid_argument("sample must be nonempty");
    if (!(h > 0.0)) throw std::invalid_argument("bandwidth must be positive");
    const double radius = kernel_support(kind) * h;
    double sum = 0.0;
    for (double xi : data) {
        const double d = xi - x;
        if (std::fabs(d) > radius) continue;
        sum += eval_kernel(kind, d / h);
    }
    return sum / (static_cast<double>(data.size()) * h);
}

double kde_product(const SampleQD& data, Kernel kind, const std::vector<double>& h,
                   const std::vector<double>& x) {
    const std::size_t q = check_sample(data);
    check_bandwidth(h);
    if (h.size() != q || x.size() != q)
        throw std::invalid_argument("dimension mismatch between data, bandwidth and point");
    const double support = kernel_support(kind);
    double sum = 0.0;
    for (const auto& row : data) {
        double term = 1.0;
        bool skip = false;
        for (std::size_t s = 0; s < q; ++s) {
            const double u = (row[s] - x[s]) / h[s];
            if (std::fabs(u) > support) {
                skip = true;
                break;
            }
            term *= eval_kernel(kind, u) / h[s];
        }
        if (!skip) sum += term;
    }
    return sum / static_cast<double>(data.size());
}

DensityGrid kde_grid(const SampleQD& data, Kernel kind, const std::vector<double>& h,
                     std::size_t grid_size, double margin_factor) {
    const std::size_t q = check_sample(data);
    if (q != 2) throw std::invalid_argument("kde_grid requires 2-dimensional data");
    check_bandwidth(h);
    if (h.size() != 2) throw std::invalid_argument("kde_grid requires a 2-axis bandwidth");
    if (grid_size < 2) throw std::invalid_argument("grid_size must be at least 2");

    DensityGrid grid;
    grid.h = h;
    grid.kind = kind;
    for (std::size_t axis = 0; axis < 2; ++axis) {
        double lo = data.front()[axis];
        double hi = lo;
        for (const auto& row : data) {
            lo = std::min(lo, row[axis]);
            hi = std::max(hi, row[axis]);
        }
        lo -= margin_factor * h[axis];
        hi += margin_factor * h[axis];
        if (!(hi > lo)) throw std::invalid_argument("degenerate grid span; increase margin_factor");
        std::vector<double>& ax = axis == 0 ? grid.x_axis : grid.y_axis;
        ax.resize(grid_size);
        const double step = (hi - lo) / static_cast<double>(grid_size - 1);
        for (std::size_t i = 0; i < grid_size; ++i) ax[i] = lo + step * static_cast<double>(i);
        ax.back() = hi;
    }

    grid.values.resize(grid_size * grid_size);
    std::vector<double> node(2);
    for (std::size_t ix = 0; ix < grid_size; ++ix) {
        node[0] = grid.x_axis[ix];
        for (std::size_t iy = 0; iy < grid_size; ++iy) {
            node[1] = grid.y_axis[iy];
            grid.values[ix * grid_size + iy] = kde_product(data, kind, h, node);
        }
    }
    return grid;
}

}  // namespace bradykde
