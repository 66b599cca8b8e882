#include "bradykde/qrs.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "bradykde/dsp.hpp"

namespace bradykde {

namespace {

std::size_t ms_to_samples(double ms, double fs) {
    const double v = std::round(ms / 1000.0 * fs);
    return v < 1.0 ? 1 : static_cast<std::size_t>(v);
}

// Centered moving average over a window of 2*half+1 samples, shrunk at the
// edges to the available span.
std::vector<double> moving_mean(const std::vector<double>& x, std::size_t half) {
    const std::size_t n = x.size();
    std::vector<double> prefix(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + x[i];
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i >= half ? i - half : 0;
        const std::size_t hi = std::min(n - 1, i + half);
        out[i] = (prefix[hi + 1] - prefix[lo]) / static_cast<double>(hi - lo + 1);
    }
    return out;
}

double max_abs_around(const std::vector<double>& x, std::size_t center, std::size_t half) {
    const std::size_t lo = center >= half ? center - half : 0;
    const std::size_t hi = std::min(x.size() - 1, center + half);
    double best = 0.0;
    for (std::size_t i = lo; i <= hi; ++i) best = std::max(best, std::fabs(x[i]));
    return best;
}

struct Detector {
    const PanTompkinsParams& p;
    const std::vector<double>& mwi;
    const std::vector<double>& deriv;

    std::size_t refractory, twave_win, slope_win, localize_win;
    double spki = 0.0, npki = 0.0, thr1 = 0.0, thr2 = 0.0;
    std::deque<double> rr_history;
    bool have_last = false;
    std::size_t last_idx = 0;       // mwi index of the last accepted peak
    double last_slope = 0.0;        // derivative magnitude of the last accepted QRS
    std::vector<std::size_t> rejected;  // candidate indices since the last acceptance
    std::vector<std::size_t> accepted;  // accepted mwi candidate indices

    void refresh_thresholds() {
        thr1 = npki + p.thr_frac * (spki - npki);
        thr2 = 0.5 * thr1;
    }

    double rr_average() const {
        double sum = 0.0;
        for (double rr : rr_history) sum += rr;
        return sum / static_cast<double>(rr_history.size());
    }

    void accept(std::size_t idx, double update_frac) {
        spki = update_frac * mwi[idx] + (1.0 - update_frac) * spki;
        if (have_last) {
            rr_history.push_back(static_cast<double>(idx - last_idx));
            if (rr_history.size() > 8) rr_history.pop_front();
        }
        have_last = true;
        last_idx = idx;
        last_slope = max_abs_around(deriv, idx, slope_win);
        accepted.push_back(idx);
        rejected.clear();
        refresh_thresholds();
    }

    void reject(std::size_t idx) {
        npki = p.update_frac * mwi[idx] + (1.0 - p.update_frac) * npki;
        rejected.push_back(idx);
        refresh_thresholds();
    }

    // Grab the largest missed candidate above THR2 when the gap since the
    // last QRS exceeds the search-back multiple of the running RR average.
    void search_back(std::size_t now) {
        if (!have_last || rr_history.empty()) return;
        if (static_cast<double>(now - last_idx) <= p.searchback_factor * rr_average()) return;
        std::size_t best = 0;
        bool found = false;
        for (std::size_t idx : rejected) {
            if (idx <= last_idx + refractory) continue;
            if (mwi[idx] < thr2) continue;
            if (!found || mwi[idx] > mwi[best]) {
                best = idx;
                found = true;
            }
        }
        if (found) accept(best, p.searchback_update_frac);
    }

    void process(std::size_t idx) {
        search_back(idx);
        if (have_last && idx - last_idx < refractory) return;  // same complex
        if (have_last && idx - last_idx < twave_win) {
            const double slope = max_abs_around(deriv, idx, slope_win);
            if (slope < p.twave_slope_ratio * last_slope) {
                reject(idx);
                return;
            }
        }
        if (mwi[idx] >= thr1) {
            accept(idx, p.update_frac);
        } else {
            reject(idx);
        }
    }
};

}  // namespace

std::vector<RTuple> detect_r_peaks(const Event& ev, double fs, const PanTompkinsParams& p) {
    const std::size_t n = ev.samples.size();
    if (!(fs > 0.0)) throw std::invalid_argument("sampling rate must be positive");
    if (static_cast<double>(n) < 2.0 * fs)
        throw std::invalid_argument("event too short: need at least 2 seconds of samples");

    // Zero-phase bandpass, derivative, squaring, integration.
    std::vector<double> bp = filtfilt(design_highpass(p.low_hz, fs), ev.samples);
    bp = filtfilt(design_lowpass(p.high_hz, fs), bp);

    std::vector<double> deriv(n, 0.0);
    for (std::size_t i = 2; i + 2 < n; ++i)
        deriv[i] = (2.0 * bp[i + 2] + bp[i + 1] - bp[i - 1] - 2.0 * bp[i - 2]) / 8.0;

    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) sq[i] = deriv[i] * deriv[i];

    const std::size_t mwi_half = ms_to_samples(p.mwi_ms / 2.0, fs);
    const std::vector<double> mwi = moving_mean(sq, mwi_half);

    // Candidates: strict local maxima of the integrated stream.
    std::vector<std::size_t> candidates;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (mwi[i] > 0.0 && mwi[i] > mwi[i - 1] && mwi[i] >= mwi[i + 1]) candidates.push_back(i);
    }
    if (candidates.empty()) return {};

    Detector det{p, mwi, deriv,
                 ms_to_samples(p.refractory_ms, fs), ms_to_samples(p.twave_ms, fs),
                 ms_to_samples(p.mwi_ms / 2.0, fs), ms_to_samples(p.localize_ms, fs),
                 0.0, 0.0, 0.0, 0.0, {}, false, 0, 0.0, {}, {}};

    // Learning phase: signal level from the strongest excursion in the first
    // learn_s seconds (whole record if that span is quiet), noise level from
    // half the mean.
    std::size_t learn_n = std::min<std::size_t>(n, ms_to_samples(p.learn_s * 1000.0, fs));
    double learn_max = 0.0, learn_sum = 0.0;
    for (std::size_t i = 0; i < learn_n; ++i) {
        learn_max = std::max(learn_max, mwi[i]);
        learn_sum += mwi[i];
    }
    if (learn_max <= 0.0) {
        for (std::size_t i = 0; i < n; ++i) learn_max = std::max(learn_max, mwi[i]);
        if (learn_max <= 0.0) return {};
    }
    det.spki = learn_max;
    det.npki = 0.5 * learn_sum / static_cast<double>(learn_n);
    det.refresh_thresholds();

    for (std::size_t idx : candidates) det.process(idx);
    det.search_back(n - 1);  // trailing gap

    // Localize each accepted complex on the event samples and enforce the
    // refractory spacing on the final indices.
    std::vector<RTuple> peaks;
    for (std::size_t idx : det.accepted) {
        const std::size_t lo = idx >= det.localize_win ? idx - det.localize_win : 0;
        const std::size_t hi = std::min(n - 1, idx + det.localize_win);
        std::size_t best = lo;
        for (std::size_t i = lo + 1; i <= hi; ++i) {
            if (ev.samples[i] > ev.samples[best]) best = i;
        }
        if (!peaks.empty() && best <= peaks.back().t + det.refractory) continue;
        peaks.push_back({best, ev.samples[best]});
    }
    return peaks;
}

NormTransform fit_normalization(const std::vector<std::pair<double, double>>& peaks, double fs,
                                NormMode mode) {
    if (peaks.size() < 2)
        throw std::invalid_argument("normalization needs at least 2 peaks (spread is undefined)");
    if (!(fs > 0.0)) throw std::invalid_argument("sampling rate must be positive");
    const double n = static_cast<double>(peaks.size());

    NormTransform tr;
    tr.fs = fs;
    if (mode == NormMode::zscore) {
        double mt = 0.0, mr = 0.0;
        for (const auto& [t, r] : peaks) {
            mt += t / fs;
            mr += r;
        }
        mt /= n;
        mr /= n;
        double vt = 0.0, vr = 0.0;
        for (const auto& [t, r] : peaks) {
            vt += (t / fs - mt) * (t / fs - mt);
            vr += (r - mr) * (r - mr);
        }
        tr.mean_t = mt;
        tr.mean_r = mr;
        tr.sd_t = std::sqrt(vt / (n - 1.0));
        tr.sd_r = std::sqrt(vr / (n - 1.0));
    } else {
        double lo_t = peaks[0].first / fs, hi_t = lo_t;
        double lo_r = peaks[0].second, hi_r = lo_r;
        for (const auto& [t, r] : peaks) {
            lo_t = std::min(lo_t, t / fs);
            hi_t = std::max(hi_t, t / fs);
            lo_r = std::min(lo_r, r);
            hi_r = std::max(hi_r, r);
        }
        tr.mean_t = lo_t;
        tr.mean_r = lo_r;
        tr.sd_t = hi_t - lo_t;
        tr.sd_r = hi_r - lo_r;
    }
    if (!(tr.sd_t > 0.0) || !(tr.sd_r > 0.0))
        throw std::invalid_argument("normalization: an axis has zero spread");
    return tr;
}

Point2 apply_normalization(const NormTransform& tr, double t_sample, double r) {
    return {(t_sample / tr.fs - tr.mean_t) / tr.sd_t, (r - tr.mean_r) / tr.sd_r};
}

std::pair<double, double> invert_normalization(const NormTransform& tr, const Point2& p) {
    return {(p.x * tr.sd_t + tr.mean_t) * tr.fs, p.y * tr.sd_r + tr.mean_r};
}

std::pair<std::vector<Point2>, NormTransform> normalize_peaks(
    const std::vector<RTuple>& peaks, double fs, const std::optional<NormTransform>& stats,
    NormMode mode) {
    NormTransform tr;
    if (stats.has_value()) {
        tr = *stats;
    } else {
        std::vector<std::pair<double, double>> pts;
        pts.reserve(peaks.size());
        for (const RTuple& pk : peaks) pts.emplace_back(static_cast<double>(pk.t), pk.r);
        tr = fit_normalization(pts, fs, mode);
    }
    std::vector<Point2> out;
    out.reserve(peaks.size());
    for (const RTuple& pk : peaks) out.push_back(apply_normalization(tr, static_cast<double>(pk.t), pk.r));
    return {out, tr};
}

}  // namespace bradykde
