#include "bradykde/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bradykde {

namespace {

double cross(const Point2& o, const Point2& a, const Point2& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Signed distance of p from the segment a->b, abs-capped for degenerate edges.
double dist_to_segment(const Point2& a, const Point2& b, const Point2& p) {
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double len_sq = dx * dx + dy * dy;
    if (len_sq == 0.0) return std::hypot(p.x - a.x, p.y - a.y);
    double t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / len_sq;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

}  // namespace

double compute_threshold(const std::vector<double>& train_densities, std::size_t n, double p_fa,
                         Kernel kind, double h) {
    if (train_densities.size() != n || n < 1)
        throw std::invalid_argument("need one training density per training point, n >= 1");
    if (!(p_fa > 0.0) || !(p_fa < 1.0)) throw std::invalid_argument("p_fa must lie in (0,1)");
    if (!(h > 0.0)) throw std::invalid_argument("bandwidth must be positive");
    const std::size_t k = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::floor((static_cast<double>(n) + 1.0) * p_fa)));
    if (k > n)
        throw std::invalid_argument("p_fa too large for the training size: rank exceeds n");
    std::vector<double> y = train_densities;
    std::sort(y.begin(), y.end());
    // Same expression shape as the estimator's isolated self term:
    // term = (k(0)/h) * (k(0)/h), density = term / n.
    const double f0 = eval_kernel(kind, 0.0) / h;
    const double correction = f0 * f0 / static_cast<double>(n);
    return y[k - 1] - correction;
}

PredictionSet build_prediction_set(const DensityGrid& grid, double c_k, double p_fa,
                                   std::size_t n_train) {
    PredictionSet set;
    set.c_k = c_k;
    set.p_fa = p_fa;
    set.n_train = n_train;
    set.nx = grid.x_axis.size();
    set.ny = grid.y_axis.size();
    set.mask.assign(set.nx * set.ny, 0);

    std::vector<Point2> nodes;
    for (std::size_t ix = 0; ix < set.nx; ++ix) {
        for (std::size_t iy = 0; iy < set.ny; ++iy) {
            if (grid.values[ix * set.ny + iy] >= c_k) {
                set.mask[ix * set.ny + iy] = 1;
                nodes.push_back({grid.x_axis[ix], grid.y_axis[iy]});
            }
        }
    }
    set.empty_set = nodes.empty();
    set.hull = convex_hull(std::move(nodes));
    return set;
}

std::vector<Point2> convex_hull(std::vector<Point2> points) {
    std::sort(points.begin(), points.end(), [](const Point2& a, const Point2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    points.erase(std::unique(points.begin(), points.end(),
                             [](const Point2& a, const Point2& b) {
                                 return a.x == b.x && a.y == b.y;
                             }),
                 points.end());
    const std::size_t n = points.size();
    if (n <= 2) return points;

    std::vector<Point2> hull(2 * n);
    std::size_t m = 0;
    for (std::size_t i = 0; i < n; ++i) {  // lower chain
        while (m >= 2 && cross(hull[m - 2], hull[m - 1], points[i]) <= 0.0) --m;
        hull[m++] = points[i];
    }
    const std::size_t lower = m + 1;
    for (std::size_t i = n - 1; i-- > 0;) {  // upper chain
        while (m >= lower && cross(hull[m - 2], hull[m - 1], points[i]) <= 0.0) --m;
        hull[m++] = points[i];
    }
    hull.resize(m - 1);  // last point repeats the first
    return hull;         // all-collinear inputs collapse to the 2 extremes
}

bool point_in_hull(const std::vector<Point2>& hull, const Point2& p) {
    constexpr double tol = 1e-9;
    if (hull.empty()) return false;
    if (hull.size() == 1)
        return std::hypot(p.x - hull[0].x, p.y - hull[0].y) <= tol;
    if (hull.size() == 2) return dist_to_segment(hull[0], hull[1], p) <= tol;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Point2& a = hull[i];
        const Point2& b = hull[(i + 1) % hull.size()];
        const double len = std::hypot(b.x - a.x, b.y - a.y);
        if (len == 0.0) continue;
        // counterclockwise polygon: inside points sit left of every edge
        if (cross(a, b, p) / len < -tol) return false;
    }
    return true;
}

bool test_onset(const PredictionSet& set, const Point2& x) {
    return !point_in_hull(set.hull, x);
}

PValueField p_value_field(const SampleQD& train, const std::vector<double>& x_axis,
                          const std::vector<double>& y_axis, Kernel kind, double h) {
    if (train.empty()) throw std::invalid_argument("training sample must be nonempty");
    for (const auto& row : train) {
        if (row.size() != 2) throw std::invalid_argument("p_value_field requires 2D training data");
    }
    if (!(h > 0.0)) throw std::invalid_argument("bandwidth must be positive");

    const std::size_t n = train.size();
    const std::vector<double> hh{h, h};
    PValueField field;
    field.nx = x_axis.size();
    field.ny = y_axis.size();
    field.values.resize(field.nx * field.ny);

    SampleQD augmented = train;
    augmented.push_back({0.0, 0.0});
    std::vector<double> aug_density(n + 1);

    for (std::size_t ix = 0; ix < field.nx; ++ix) {
        for (std::size_t iy = 0; iy < field.ny; ++iy) {
            augmented[n][0] = x_axis[ix];
            augmented[n][1] = y_axis[iy];
            for (std::size_t m = 0; m <= n; ++m)
                aug_density[m] = kde_product(augmented, kind, hh, augmented[m]);
            std::size_t count = 0;
            for (std::size_t m = 0; m < n; ++m)
                if (aug_density[m] <= aug_density[n]) ++count;
            field.values[ix * field.ny + iy] =
                static_cast<double>(count) / (static_cast<double>(n) + 1.0);
        }
    }
    return field;
}

}  // namespace bradykde
