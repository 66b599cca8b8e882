// Second-order kernels and their twofold convolutions.
#pragma once

#include <string>

namespace bradykde {

enum class Kernel {
    gaussian,
    epanechnikov,
    uniform,
    cosine,
};

Kernel kernel_from_name(const std::string& name);
const char* kernel_name(Kernel k);

// k(u).  Gaussian has infinite support; the others vanish for |u| > 1
// (closed support: the boundary value counts).
double eval_kernel(Kernel k, double u);

// Twofold convolution kbar(v) = integral k(u) k(v - u) du.
// Support doubles: compact kernels vanish for |v| > 2.
double eval_kernel_conv(Kernel k, double v);

// kappa   = integral k(u)^2 du
// kappa2  = integral u^2 k(u) du   (second moment)
double kernel_kappa(Kernel k);
double kernel_kappa2(Kernel k);

// Half-width of the effective support used to prune sum terms.
// Compact kernels: 1.  Gaussian: 8 (tails beyond 8 sigma are below
// double rounding noise for any density value of practical size).
double kernel_support(Kernel k);

}  // namespace bradykde
