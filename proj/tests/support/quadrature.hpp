// Adaptive Simpson quadrature used as the numeric oracle for kernel
// integrals.  Independent of the library code on purpose.
#pragma once

#include <cmath>

namespace oracle {

namespace detail {

template <typename F>
double simpson(F&& f, double a, double m, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adapt(F&& f, double a, double m, double b, double fa, double fm, double fb, double whole,
             double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(f, a, lm, m, fa, flm, fm);
    const double right = simpson(f, m, rm, b, fm, frm, fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adapt(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adapt(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

template <typename F>
double integrate(F&& f, double a, double b, double tol = 1e-11, int depth = 40) {
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    return detail::adapt(f, a, m, b, fa, fm, fb, detail::simpson(f, a, m, b, fa, fm, fb), tol,
                         depth);
}

// Composite Simpson on a fixed refinement, for integrands whose cost matters
// more than adaptivity (e.g. integrated squared error of a KDE).
template <typename F>
double integrate_fixed(F&& f, double a, double b, int panels) {
    const double hstep = (b - a) / (2.0 * panels);
    double sum = f(a) + f(b);
    for (int i = 1; i < 2 * panels; ++i) sum += f(a + hstep * i) * (i % 2 ? 4.0 : 2.0);
    return sum * hstep / 3.0;
}

}  // namespace oracle
