// R-peak detection (Pan-Tompkins style pipeline) and the peak-coordinate
// normalization applied before density estimation.
#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "bradykde/ecg.hpp"
#include "bradykde/point.hpp"

namespace bradykde {

struct RTuple {
    std::size_t t = 0;  // sample index within the event
    double r = 0.0;     // event amplitude at that index (calibrated units)
};

// Classical pipeline constants; every value is overridable via config.
struct PanTompkinsParams {
    double low_hz = 5.0;                 // bandpass lower edge (high-pass section)
    double high_hz = 15.0;               // bandpass upper edge (low-pass section)
    double mwi_ms = 150.0;               // moving-window integration width
    double refractory_ms = 200.0;        // minimum peak spacing
    double twave_ms = 360.0;             // T-wave discrimination window
    double searchback_factor = 1.66;     // trigger search-back past this multiple of the RR average
    double learn_s = 2.0;                // threshold learning span
    double thr_frac = 0.25;              // THR1 = NPK + thr_frac (SPK - NPK)
    double update_frac = 0.125;          // running-estimate update weight
    double searchback_update_frac = 0.25;
    double twave_slope_ratio = 0.5;      // slope below this fraction of the previous QRS => T wave
    double localize_ms = 75.0;           // half-width of the R localization window
};

// Detected peaks in ascending order, no two closer than the refractory
// period.  The amplitude r is read from the event samples themselves (the
// calibrated, baseline-removed signal), not from any internal stream.
std::vector<RTuple> detect_r_peaks(const Event& ev, double fs,
                                   const PanTompkinsParams& params = {});

enum class NormMode { zscore, minmax };

// Affine map applied per axis after t is converted to seconds:
//   x = (t/fs - mean_t)/sd_t,  y = (r - mean_r)/sd_r
// For minmax fits the mean/sd slots hold min and range instead.
struct NormTransform {
    double fs = 1.0;
    double mean_t = 0.0;
    double sd_t = 1.0;
    double mean_r = 0.0;
    double sd_r = 1.0;
};

// Fits on (t_sample, r) pairs; needs n >= 2 and nonzero spread per axis.
NormTransform fit_normalization(const std::vector<std::pair<double, double>>& peaks, double fs,
                                NormMode mode = NormMode::zscore);

Point2 apply_normalization(const NormTransform& tr, double t_sample, double r);
std::pair<double, double> invert_normalization(const NormTransform& tr, const Point2& p);

// Convenience wrapper: fits a transform when none is given, otherwise
// applies the provided one verbatim (train-fitted statistics are reused for
// validation/test points).
std::pair<std::vector<Point2>, NormTransform> normalize_peaks(
    const std::vector<RTuple>& peaks, double fs,
    const std::optional<NormTransform>& stats = std::nullopt, NormMode mode = NormMode::zscore);

}  // namespace bradykde
