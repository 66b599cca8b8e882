// Gaussian parametric baselines: MLE of the mean and the conjugate
// normal-mean posterior with known variance.  Diagnostic only; not part of
// the prediction-set pipeline.
#pragma once

#include <utility>

#include "bradykde/density.hpp"

namespace bradykde {

struct GaussPrior {
    double mu0 = 0.0;
    double sigma0_sq = 1.0;  // prior variance, > 0
    double sigma_sq = 1.0;   // known likelihood variance, > 0
};

struct GaussPosterior {
    double mu_n = 0.0;
    double sigma_n_sq = 0.0;
};

double mle_mean(const Sample1D& data);

// mu_n = (n s0 xbar + s mu0)/(n s0 + s), sigma_n^2 = s0 s/(n s0 + s)
// with s0 = sigma0_sq, s = sigma_sq.
GaussPosterior bayes_posterior(const Sample1D& data, const GaussPrior& prior);

// Predictive distribution N(mu_n, sigma^2 + sigma_n^2); returns (mean, variance).
std::pair<double, double> posterior_predictive(const GaussPosterior& post, double sigma_sq);

}  // namespace bradykde
