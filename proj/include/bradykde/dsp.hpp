// Second-order (biquad) Butterworth sections and zero-phase filtering.
//
// Designs use the bilinear transform with K = tan(pi fc / fs) and Q = 1/sqrt(2):
//   norm = 1 / (1 + K/Q + K^2)
//   high-pass: b = ( norm, -2 norm,  norm )
//   low-pass:  b = ( K^2 norm, 2 K^2 norm, K^2 norm )
//   both:      a1 = 2 (K^2 - 1) norm,  a2 = (1 - K/Q + K^2) norm
// Filtering runs the direct-form-II-transposed recurrence
//   y[n] = b0 x[n] + z1;  z1 = b1 x[n] - a1 y[n] + z2;  z2 = b2 x[n] - a2 y[n]
// with the state initialized to the steady-state response for a step of the
// first sample, which removes start-up transients (a constant input maps to
// exactly its DC gain from sample 0).
#pragma once

#include <cstddef>
#include <vector>

namespace bradykde {

struct Biquad {
    double b0 = 0.0, b1 = 0.0, b2 = 0.0;
    double a1 = 0.0, a2 = 0.0;

    double dc_gain() const { return (b0 + b1 + b2) / (1.0 + a1 + a2); }
};

Biquad design_highpass(double fc, double fs);
Biquad design_lowpass(double fc, double fs);

// Single forward pass with steady-state initial conditions.
std::vector<double> filt(const Biquad& bq, const std::vector<double>& x);

// Forward-backward pass: zero net phase, squared magnitude response.
std::vector<double> filtfilt(const Biquad& bq, const std::vector<double>& x);

// Samples after which the section's transient has decayed to ~1% for a
// cutoff fc: ceil(4.6 fs / (2 pi fc)).
std::size_t settle_length(double fc, double fs);

}  // namespace bradykde
