// Synthetic (t, r) generator: Gaussian mixture bulk plus planted anomalies
// displaced a fixed number of component standard deviations from their
// component mean, at an angle drawn per anomaly.
#pragma once

#include <cstdint>
#include <vector>

#include "bradykde/eval.hpp"

namespace bradykde {

struct MixtureComponent {
    double weight = 1.0;
    double mean_t = 0.0;
    double mean_r = 0.0;
    double sd_t = 1.0;
    double sd_r = 1.0;
};

struct SyntheticSpec {
    std::vector<MixtureComponent> components{MixtureComponent{}};
    std::size_t n_points = 500;
    std::size_t n_anomalies = 0;
    double displacement = 6.0;  // anomaly offset in component standard deviations
};

struct SyntheticData {
    std::vector<PeakRecord> peaks;  // event ids 0..n-1
    std::vector<int> labels;        // 1 = planted anomaly
};

SyntheticData generate_synthetic(const SyntheticSpec& spec, std::uint64_t seed);

}  // namespace bradykde
