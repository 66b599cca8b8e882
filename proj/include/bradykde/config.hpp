// Line-oriented `key = value` configuration.  Every key is validated and
// unknown keys are rejected with the offending line number.
#pragma once

#include <cstdint>
#include <string>

#include "bradykde/eval.hpp"
#include "bradykde/kernels.hpp"
#include "bradykde/qrs.hpp"

namespace bradykde {

struct Config {
    Kernel kernel = Kernel::gaussian;
    double p_fa = 0.05;

    // Bandwidth search grid; h_min/h_max of 0 derive the range from data.
    double h_min = 0.0;
    double h_max = 0.0;
    std::size_t h_steps = 40;
    bool h_log = true;
    bool h_per_axis = false;

    std::size_t grid_size = 128;
    double margin = 3.0;

    SplitSpec split;
    std::size_t trials = 20;
    std::uint64_t seed = 1;

    std::size_t pre = 5000;
    std::size_t post = 2500;

    double hp_cutoff_hz = 0.5;
    NormMode norm_mode = NormMode::zscore;
    PanTompkinsParams pt;
};

// Parses config text; starts from defaults and applies each line.
Config parse_config(const std::string& text);
Config load_config(const std::string& path);

// Applies `key = value` to cfg; throws std::invalid_argument on unknown
// keys or invalid values.
void apply_config_entry(Config& cfg, const std::string& key, const std::string& value);

}  // namespace bradykde
