#include "bradykde/synthetic.hpp"

#include <cmath>
#include <stdexcept>

namespace bradykde {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

std::size_t pick_component(const std::vector<MixtureComponent>& comps, Rng& rng) {
    const double u = rng.uniform01();
    double acc = 0.0;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        acc += comps[i].weight;
        if (u < acc) return i;
    }
    return comps.size() - 1;  // guard against rounding in the cumulative sum
}

}  // namespace

SyntheticData generate_synthetic(const SyntheticSpec& spec, std::uint64_t seed) {
    if (spec.components.empty()) throw std::invalid_argument("mixture needs at least one component");
    double wsum = 0.0;
    for (const MixtureComponent& c : spec.components) {
        if (!(c.weight > 0.0)) throw std::invalid_argument("mixture weights must be positive");
        if (!(c.sd_t > 0.0) || !(c.sd_r > 0.0))
            throw std::invalid_argument("mixture standard deviations must be positive");
        wsum += c.weight;
    }
    if (std::fabs(wsum - 1.0) > 1e-9) throw std::invalid_argument("mixture weights must sum to 1");
    if (spec.n_points == 0) throw std::invalid_argument("need at least one bulk point");

    Rng rng(seed);
    SyntheticData out;
    out.peaks.reserve(spec.n_points + spec.n_anomalies);
    out.labels.reserve(spec.n_points + spec.n_anomalies);

    for (std::size_t i = 0; i < spec.n_points; ++i) {
        const MixtureComponent& c = spec.components[pick_component(spec.components, rng)];
        PeakRecord pk;
        pk.event_id = static_cast<std::int64_t>(i);
        pk.t = c.mean_t + c.sd_t * rng.gauss();
        pk.r = c.mean_r + c.sd_r * rng.gauss();
        out.peaks.push_back(pk);
        out.labels.push_back(0);
    }
    for (std::size_t i = 0; i < spec.n_anomalies; ++i) {
        const MixtureComponent& c = spec.components[pick_component(spec.components, rng)];
        const double angle = rng.uniform01() * kTwoPi;
        PeakRecord pk;
        pk.event_id = static_cast<std::int64_t>(spec.n_points + i);
        pk.t = c.mean_t + spec.displacement * c.sd_t * std::cos(angle);
        pk.r = c.mean_r + spec.displacement * c.sd_r * std::sin(angle);
        out.peaks.push_back(pk);
        out.labels.push_back(1);
    }
    return out;
}

}  // namespace bradykde
