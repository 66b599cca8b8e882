#include "bradykde/dsp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bradykde {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt2 = 1.41421356237309504880;

void check_design(double fc, double fs) {
    if (!(fs > 0.0)) throw std::invalid_argument("sampling rate must be positive");
    if (!(fc > 0.0) || !(fc < 0.5 * fs))
        throw std::invalid_argument("cutoff must lie strictly between 0 and the Nyquist rate");
}

}  // namespace

Biquad design_highpass(double fc, double fs) {
    check_design(fc, fs);
    const double K = std::tan(kPi * fc / fs);
    const double norm = 1.0 / (1.0 + K * kSqrt2 + K * K);
    Biquad bq;
    bq.b0 = norm;
    bq.b1 = -2.0 * norm;
    bq.b2 = norm;
    bq.a1 = 2.0 * (K * K - 1.0) * norm;
    bq.a2 = (1.0 - K * kSqrt2 + K * K) * norm;
    return bq;
}

Biquad design_lowpass(double fc, double fs) {
    check_design(fc, fs);
    const double K = std::tan(kPi * fc / fs);
    const double norm = 1.0 / (1.0 + K * kSqrt2 + K * K);
    Biquad bq;
    bq.b0 = K * K * norm;
    bq.b1 = 2.0 * bq.b0;
    bq.b2 = bq.b0;
    bq.a1 = 2.0 * (K * K - 1.0) * norm;
    bq.a2 = (1.0 - K * kSqrt2 + K * K) * norm;
    return bq;
}

std::vector<double> filt(const Biquad& bq, const std::vector<double>& x) {
    if (x.empty()) throw std::invalid_argument("signal must be nonempty");
    // Steady state for constant input x0 with output g*x0 (g = DC gain):
    //   z1 = (g - b0) x0,  z2 = (b2 - a2 g) x0
    const double g = bq.dc_gain();
    double z1 = (g - bq.b0) * x.front();
    double z2 = (bq.b2 - bq.a2 * g) * x.front();
    std::vector<double> y(x.size());
    for (std::size_t n = 0; n < x.size(); ++n) {
        const double out = bq.b0 * x[n] + z1;
        z1 = bq.b1 * x[n] - bq.a1 * out + z2;
        z2 = bq.b2 * x[n] - bq.a2 * out;
        y[n] = out;
    }
    return y;
}

std::vector<double> filtfilt(const Biquad& bq, const std::vector<double>& x) {
    std::vector<double> y = filt(bq, x);
    std::reverse(y.begin(), y.end());
    y = filt(bq, y);
    std::reverse(y.begin(), y.end());
    return y;
}

std::size_t settle_length(double fc, double fs) {
    check_design(fc, fs);
    return static_cast<std::size_t>(std::ceil(4.6 * fs / (2.0 * kPi * fc)));
}

}  // namespace bradykde
