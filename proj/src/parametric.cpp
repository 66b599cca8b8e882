#include "bradykde/parametric.hpp"

#include <stdexcept>

namespace bradykde {

double mle_mean(const Sample1D& data) {
    if (data.empty()) throw std::invalid_argument("sample must be nonempty");
    double sum = 0.0;
    for (double x : data) sum += x;
    return sum / static_cast<double>(data.size());
}

GaussPosterior bayes_posterior(const Sample1D& data, const GaussPrior& prior) {
    if (data.empty()) throw std::invalid_argument("sample must be nonempty");
    if (!(prior.sigma0_sq > 0.0) || !(prior.sigma_sq > 0.0))
        throw std::invalid_argument("prior and likelihood variances must be positive");
    const double n = static_cast<double>(data.size());
    const double xbar = mle_mean(data);
    const double denom = n * prior.sigma0_sq + prior.sigma_sq;
    GaussPosterior post;
    post.mu_n = (n * prior.sigma0_sq / denom) * xbar + (prior.sigma_sq / denom) * prior.mu0;
    post.sigma_n_sq = prior.sigma0_sq * prior.sigma_sq / denom;
    return post;
}

std::pair<double, double> posterior_predictive(const GaussPosterior& post, double sigma_sq) {
    if (!(sigma_sq > 0.0)) throw std::invalid_argument("likelihood variance must be positive");
    if (!(post.sigma_n_sq > 0.0)) throw std::invalid_argument("posterior variance must be positive");
    return {post.mu_n, sigma_sq + post.sigma_n_sq};
}

}  // namespace bradykde
