#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "bradykde/parametric.hpp"
#include "bradykde/rng.hpp"

using bradykde::GaussPrior;
using bradykde::Sample1D;

TEST_CASE("mle mean is the sample average") {
    CHECK(bradykde::mle_mean({4.0}) == 4.0);
    CHECK(bradykde::mle_mean({1.0, 2.0, 3.0, 6.0}) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK_THROWS_AS(bradykde::mle_mean({}), std::invalid_argument);
}

TEST_CASE("posterior by direct substitution") {
    // n = 4, xbar = 3, s0 = 2, s = 1, mu0 = 0:
    //   mu_n = (4*2*3 + 1*0)/(4*2 + 1) = 24/9, sigma_n^2 = 2*1/9
    const Sample1D data{1.0, 2.0, 3.0, 6.0};
    const GaussPrior prior{0.0, 2.0, 1.0};
    const auto post = bradykde::bayes_posterior(data, prior);
    CHECK(post.mu_n == doctest::Approx(24.0 / 9.0).epsilon(1e-14));
    CHECK(post.sigma_n_sq == doctest::Approx(2.0 / 9.0).epsilon(1e-14));

    // flat-ish prior: posterior mean approaches the MLE
    const GaussPrior flat{10.0, 1e12, 1.0};
    const auto post_flat = bradykde::bayes_posterior(data, flat);
    CHECK(post_flat.mu_n == doctest::Approx(3.0).epsilon(1e-9));
    // dogmatic prior: posterior mean stays at mu0
    const GaussPrior dogma{10.0, 1e-12, 1.0};
    const auto post_dogma = bradykde::bayes_posterior(data, dogma);
    CHECK(post_dogma.mu_n == doctest::Approx(10.0).epsilon(1e-9));
}

TEST_CASE("posterior mean lies between the prior mean and the sample mean") {
    bradykde::Rng rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        Sample1D data(5 + static_cast<std::size_t>(rng.below(20)));
        for (auto& v : data) v = 2.0 * rng.gauss() + 1.0;
        const GaussPrior prior{rng.uniform(-3.0, 3.0), rng.uniform(0.1, 4.0),
                               rng.uniform(0.1, 4.0)};
        const auto post = bradykde::bayes_posterior(data, prior);
        const double xbar = bradykde::mle_mean(data);
        const double lo = std::min(xbar, prior.mu0) - 1e-12;
        const double hi = std::max(xbar, prior.mu0) + 1e-12;
        CHECK(post.mu_n >= lo);
        CHECK(post.mu_n <= hi);
        // posterior is sharper than the prior
        CHECK(post.sigma_n_sq < prior.sigma0_sq);
        CHECK(post.sigma_n_sq > 0.0);
    }
}

TEST_CASE("batch update equals sequential conjugate updates") {
    bradykde::Rng rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        Sample1D data(8);
        for (auto& v : data) v = rng.gauss();
        const GaussPrior prior{0.5, 1.5, 0.7};
        const auto batch = bradykde::bayes_posterior(data, prior);

        GaussPrior running = prior;
        bradykde::GaussPosterior post{};
        for (double x : data) {
            post = bradykde::bayes_posterior({x}, running);
            running.mu0 = post.mu_n;
            running.sigma0_sq = post.sigma_n_sq;
        }
        CHECK(post.mu_n == doctest::Approx(batch.mu_n).epsilon(1e-10));
        CHECK(post.sigma_n_sq == doctest::Approx(batch.sigma_n_sq).epsilon(1e-10));
    }
}

TEST_CASE("predictive distribution widens the posterior by the noise variance") {
    const Sample1D data{1.0, 2.0, 3.0, 6.0};
    const GaussPrior prior{0.0, 2.0, 1.0};
    const auto post = bradykde::bayes_posterior(data, prior);
    const auto [mean, var] = bradykde::posterior_predictive(post, prior.sigma_sq);
    CHECK(mean == post.mu_n);
    CHECK(var == doctest::Approx(prior.sigma_sq + post.sigma_n_sq).epsilon(1e-14));
    CHECK(var > prior.sigma_sq);
}

TEST_CASE("posterior input validation") {
    const Sample1D data{1.0, 2.0};
    CHECK_THROWS_AS(bradykde::bayes_posterior({}, GaussPrior{}), std::invalid_argument);
    CHECK_THROWS_AS(bradykde::bayes_posterior(data, GaussPrior{0.0, 0.0, 1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(bradykde::bayes_posterior(data, GaussPrior{0.0, 1.0, -1.0}),
                    std::invalid_argument);
}
