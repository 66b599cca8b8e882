#include "bradykde/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace bradykde {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;  // 1/sqrt(2*pi)
constexpr double kInvSqrt4Pi = 0.28209479177387814347;  // 1/sqrt(4*pi)

}  // namespace

Kernel kernel_from_name(const std::string& name) {
    if (name == "gaussian") return Kernel::gaussian;
    if (name == "epanechnikov") return Kernel::epanechnikov;
    if (name == "uniform") return Kernel::uniform;
    if (name == "cosine") return Kernel::cosine;
    throw std::invalid_argument("unknown kernel: " + name);
}

const char* kernel_name(Kernel k) {
    switch (k) {
        case Kernel::gaussian: return "gaussian";
        case Kernel::epanechnikov: return "epanechnikov";
        case Kernel::uniform: return "uniform";
        case Kernel::cosine: return "cosine";
    }
    throw std::logic_error("kernel_name: bad enum value");
}

double eval_kernel(Kernel k, double u) {
    switch (k) {
        case Kernel::gaussian:
            return kInvSqrt2Pi * std::exp(-0.5 * u * u);
        case Kernel::epanechnikov:
            return std::fabs(u) <= 1.0 ? 0.75 * (1.0 - u * u) : 0.0;
        case Kernel::uniform:
            return std::fabs(u) <= 1.0 ? 0.5 : 0.0;
        case Kernel::cosine:
            return std::fabs(u) <= 1.0 ? 0.25 * kPi * std::cos(0.5 * kPi * u) : 0.0;
    }
    throw std::logic_error("eval_kernel: bad enum value");
}

double eval_kernel_conv(Kernel k, double v) {
    const double a = std::fabs(v);
    switch (k) {
        case Kernel::gaussian:
            // N(0,1) conv N(0,1) = N(0,2)
            return kInvSqrt4Pi * std::exp(-0.25 * v * v);
        case Kernel::epanechnikov: {
            if (a > 2.0) return 0.0;
            const double w = 2.0 - a;
            return (3.0 / 160.0) * w * w * w * (a * a + 6.0 * a + 4.0);
        }
        case Kernel::uniform:
            return a <= 2.0 ? 0.25 * (2.0 - a) : 0.0;
        case Kernel::cosine: {
            if (a > 2.0) return 0.0;
            const double t = 0.5 * kPi * a;
            return (kPi / 16.0) * std::sin(t) + (kPi * kPi * (2.0 - a) / 32.0) * std::cos(t);
        }
    }
    throw std::logic_error("eval_kernel_conv: bad enum value");
}

double kernel_kappa(Kernel k) {
    switch (k) {
        case Kernel::gaussian: return kInvSqrt4Pi;          // 1/(2*sqrt(pi))
        case Kernel::epanechnikov: return 0.6;
        case Kernel::uniform: return 0.5;
        case Kernel::cosine: return kPi * kPi / 16.0;
    }
    throw std::logic_error("kernel_kappa: bad enum value");
}

double kernel_kappa2(Kernel k) {
    switch (k) {
        case Kernel::gaussian: return 1.0;
        case Kernel::epanechnikov: return 0.2;
        case Kernel::uniform: return 1.0 / 3.0;
        case Kernel::cosine: return 1.0 - 8.0 / (kPi * kPi);
    }
    throw std::logic_error("kernel_kappa2: bad enum value");
}

double kernel_support(Kernel k) {
    return k == Kernel::gaussian ? 8.0 : 1.0;
}

}  // namespace bradykde
