#include "bradykde/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bradykde {

namespace {

std::string trim(const std::string& s) {
    const std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_real(const std::string& v, const std::string& key) {
    std::size_t pos = 0;
    double out = 0.0;
    try {
        out = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: cannot parse number for " + key + ": '" + v + "'");
    }
    if (pos != v.size())
        throw std::invalid_argument("config: trailing characters in value for " + key + ": '" + v + "'");
    return out;
}

double parse_positive(const std::string& v, const std::string& key) {
    const double out = parse_real(v, key);
    if (!(out > 0.0)) throw std::invalid_argument("config: " + key + " must be positive");
    return out;
}

std::uint64_t parse_count(const std::string& v, const std::string& key, bool allow_zero = false) {
    std::size_t pos = 0;
    unsigned long long out = 0;
    try {
        out = std::stoull(v, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: cannot parse integer for " + key + ": '" + v + "'");
    }
    if (pos != v.size())
        throw std::invalid_argument("config: trailing characters in value for " + key + ": '" + v + "'");
    if (!allow_zero && out == 0) throw std::invalid_argument("config: " + key + " must be positive");
    return out;
}

bool parse_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw std::invalid_argument("config: " + key + " must be a boolean, got '" + v + "'");
}

SplitSpec parse_split(const std::string& v) {
    std::istringstream in(v);
    std::string part;
    std::vector<double> fracs;
    while (std::getline(in, part, ',')) fracs.push_back(parse_positive(trim(part), "split"));
    if (fracs.size() != 3)
        throw std::invalid_argument("config: split needs three comma-separated fractions");
    return {fracs[0], fracs[1], fracs[2]};
}

}  // namespace

void apply_config_entry(Config& cfg, const std::string& key, const std::string& value) {
    if (key == "kernel") {
        cfg.kernel = kernel_from_name(value);
    } else if (key == "p_fa") {
        cfg.p_fa = parse_real(value, key);
        if (!(cfg.p_fa > 0.0) || !(cfg.p_fa < 1.0))
            throw std::invalid_argument("config: p_fa must lie in (0,1)");
    } else if (key == "h_min") {
        cfg.h_min = parse_real(value, key);
        if (cfg.h_min < 0.0) throw std::invalid_argument("config: h_min must be >= 0");
    } else if (key == "h_max") {
        cfg.h_max = parse_real(value, key);
        if (cfg.h_max < 0.0) throw std::invalid_argument("config: h_max must be >= 0");
    } else if (key == "h_steps") {
        cfg.h_steps = static_cast<std::size_t>(parse_count(value, key));
    } else if (key == "h_scale") {
        if (value == "log") cfg.h_log = true;
        else if (value == "linear") cfg.h_log = false;
        else throw std::invalid_argument("config: h_scale must be log or linear");
    } else if (key == "h_per_axis") {
        cfg.h_per_axis = parse_bool(value, key);
    } else if (key == "grid_size") {
        cfg.grid_size = static_cast<std::size_t>(parse_count(value, key));
        if (cfg.grid_size < 2) throw std::invalid_argument("config: grid_size must be at least 2");
    } else if (key == "margin") {
        cfg.margin = parse_real(value, key);
        if (cfg.margin < 0.0) throw std::invalid_argument("config: margin must be >= 0");
    } else if (key == "split") {
        cfg.split = parse_split(value);
    } else if (key == "trials") {
        cfg.trials = static_cast<std::size_t>(parse_count(value, key));
    } else if (key == "seed") {
        cfg.seed = parse_count(value, key, true);
    } else if (key == "pre") {
        cfg.pre = static_cast<std::size_t>(parse_count(value, key));
    } else if (key == "post") {
        cfg.post = static_cast<std::size_t>(parse_count(value, key));
    } else if (key == "norm_mode") {
        if (value == "zscore") cfg.norm_mode = NormMode::zscore;
        else if (value == "minmax") cfg.norm_mode = NormMode::minmax;
        else throw std::invalid_argument("config: norm_mode must be zscore or minmax");
    } else if (key == "hp_cutoff_hz") {
        cfg.hp_cutoff_hz = parse_positive(value, key);
    } else if (key == "pt_low_hz") {
        cfg.pt.low_hz = parse_positive(value, key);
    } else if (key == "pt_high_hz") {
        cfg.pt.high_hz = parse_positive(value, key);
    } else if (key == "pt_mwi_ms") {
        cfg.pt.mwi_ms = parse_positive(value, key);
    } else if (key == "pt_refractory_ms") {
        cfg.pt.refractory_ms = parse_positive(value, key);
    } else if (key == "pt_twave_ms") {
        cfg.pt.twave_ms = parse_positive(value, key);
    } else if (key == "pt_searchback") {
        cfg.pt.searchback_factor = parse_positive(value, key);
    } else if (key == "pt_learn_s") {
        cfg.pt.learn_s = parse_positive(value, key);
    } else if (key == "pt_thr_frac") {
        cfg.pt.thr_frac = parse_positive(value, key);
    } else if (key == "pt_update") {
        cfg.pt.update_frac = parse_positive(value, key);
    } else if (key == "pt_searchback_update") {
        cfg.pt.searchback_update_frac = parse_positive(value, key);
    } else if (key == "pt_twave_slope_ratio") {
        cfg.pt.twave_slope_ratio = parse_positive(value, key);
    } else if (key == "pt_localize_ms") {
        cfg.pt.localize_ms = parse_positive(value, key);
    } else {
        throw std::invalid_argument("config: unknown key '" + key + "'");
    }
}

Config parse_config(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": empty key or value");
        try {
            apply_config_entry(cfg, key, value);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return cfg;
}

Config load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace bradykde
