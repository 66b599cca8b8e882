// Independent brute-force reference implementations.  Everything here is a
// deliberately naive re-derivation from the definitions: straight loops, no
// pruning, no shared code with the library under test.
#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "bradykde/conformal.hpp"
#include "bradykde/density.hpp"
#include "bradykde/kernels.hpp"
#include "bradykde/point.hpp"

namespace oracle {

inline double naive_kde_1d(const std::vector<double>& data, bradykde::Kernel kind, double h,
                           double x) {
    double sum = 0.0;
    for (double xi : data) sum += bradykde::eval_kernel(kind, (x - xi) / h);
    return sum / (static_cast<double>(data.size()) * h);
}

inline double naive_kde_qd(const std::vector<std::vector<double>>& data, bradykde::Kernel kind,
                           const std::vector<double>& h, const std::vector<double>& x) {
    double sum = 0.0;
    for (const auto& row : data) {
        double prod = 1.0;
        for (std::size_t s = 0; s < x.size(); ++s)
            prod *= bradykde::eval_kernel(kind, (x[s] - row[s]) / h[s]);
        sum += prod;
    }
    double hprod = 1.0;
    for (double hs : h) hprod *= hs;
    return sum / (static_cast<double>(data.size()) * hprod);
}

inline double naive_cv_1d(const std::vector<double>& data, bradykde::Kernel kind, double h) {
    const double n = static_cast<double>(data.size());
    double first = 0.0;
    for (double xi : data)
        for (double xj : data) first += bradykde::eval_kernel_conv(kind, (xi - xj) / h);
    double second = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i)
        for (std::size_t j = 0; j < data.size(); ++j)
            if (j != i) second += bradykde::eval_kernel(kind, (data[i] - data[j]) / h);
    return first / (n * n * h) - 2.0 / (n * (n - 1.0) * h) * second;
}

inline double naive_cv_qd(const std::vector<std::vector<double>>& data, bradykde::Kernel kind,
                          const std::vector<double>& h) {
    const double n = static_cast<double>(data.size());
    const std::size_t q = h.size();
    double first = 0.0;
    double second = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        for (std::size_t j = 0; j < data.size(); ++j) {
            double conv = 1.0;
            double plain = 1.0;
            for (std::size_t s = 0; s < q; ++s) {
                const double u = (data[i][s] - data[j][s]) / h[s];
                conv *= bradykde::eval_kernel_conv(kind, u) / h[s];
                plain *= bradykde::eval_kernel(kind, u) / h[s];
            }
            first += conv;
            if (j != i) second += plain;
        }
    }
    return first / (n * n) - 2.0 / (n * (n - 1.0)) * second;
}

inline double cross(const bradykde::Point2& o, const bradykde::Point2& a,
                    const bradykde::Point2& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// O(n^3) hull-vertex oracle: p is a hull vertex iff some directed line
// through p and another point keeps every remaining point strictly to the
// left (no collinear triples assumed: callers use generic random inputs).
inline std::vector<bradykde::Point2> brute_hull_vertices(
    const std::vector<bradykde::Point2>& pts) {
    std::vector<bradykde::Point2> vertices;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        bool extreme = false;
        for (std::size_t j = 0; j < pts.size() && !extreme; ++j) {
            if (j == i) continue;
            bool all_left = true;
            for (std::size_t k = 0; k < pts.size(); ++k) {
                if (k == i || k == j) continue;
                if (cross(pts[i], pts[j], pts[k]) <= 0.0) {
                    all_left = false;
                    break;
                }
            }
            if (all_left) extreme = true;
        }
        if (extreme) vertices.push_back(pts[i]);
    }
    return vertices;
}

// Half-plane membership oracle: p lies outside conv(pts) iff some directed
// pair of data points has every data point on its left and p strictly on
// its right (beyond the tolerance).
inline bool brute_point_in_hull(const std::vector<bradykde::Point2>& pts,
                                const bradykde::Point2& p, double tol = 1e-9) {
    if (pts.empty()) return false;
    if (pts.size() == 1) return std::hypot(p.x - pts[0].x, p.y - pts[0].y) <= tol;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (i == j) continue;
            bool all_left = true;
            for (std::size_t k = 0; k < pts.size(); ++k) {
                if (k == i || k == j) continue;
                if (cross(pts[i], pts[j], pts[k]) < 0.0) {
                    all_left = false;
                    break;
                }
            }
            if (!all_left) continue;
            const double len = std::hypot(pts[j].x - pts[i].x, pts[j].y - pts[i].y);
            if (len == 0.0) continue;
            if (cross(pts[i], pts[j], p) / len < -tol) return false;
        }
    }
    return true;
}

}  // namespace oracle
