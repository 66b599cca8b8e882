#include "bradykde/eval.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "bradykde/bandwidth.hpp"
#include "bradykde/conformal.hpp"
#include "bradykde/density.hpp"

namespace bradykde {

namespace {

void check_spec(const SplitSpec& spec) {
    if (!(spec.train_frac > 0.0) || !(spec.val_frac > 0.0) || !(spec.test_frac > 0.0))
        throw std::invalid_argument("split fractions must be positive");
    if (std::fabs(spec.train_frac + spec.val_frac + spec.test_frac - 1.0) > 1e-9)
        throw std::invalid_argument("split fractions must sum to 1");
}

}  // namespace

SplitIndices shuffle_split_indices(std::size_t n, const SplitSpec& spec, std::uint64_t seed) {
    check_spec(spec);
    if (n < 3) throw std::invalid_argument("need at least 3 points to split");
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    Rng rng(seed);
    rng.shuffle(idx);

    const double nd = static_cast<double>(n);
    const auto n_val = static_cast<std::size_t>(std::floor(spec.val_frac * nd + 1e-9));
    const auto n_test = static_cast<std::size_t>(std::floor(spec.test_frac * nd + 1e-9));
    if (n_val == 0 || n_test == 0 || n_val + n_test >= n)
        throw std::invalid_argument("split produces an empty subset");
    const std::size_t n_train = n - n_val - n_test;  // floors' remainder goes to train

    SplitIndices out;
    out.train.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_train));
    out.val.assign(idx.begin() + static_cast<std::ptrdiff_t>(n_train),
                   idx.begin() + static_cast<std::ptrdiff_t>(n_train + n_val));
    out.test.assign(idx.begin() + static_cast<std::ptrdiff_t>(n_train + n_val), idx.end());
    return out;
}

bool label_bradycardia(double peak_t, double onset_m, double u) {
    if (!(u > 0.0) || u > 1.0) throw std::invalid_argument("u must lie in (0,1]");
    const double window = std::ceil(u * 1500.0);
    return peak_t > onset_m && peak_t < onset_m + window;
}

MetricsReport compute_metrics(const ConfusionMatrix& cm) {
    MetricsReport m;
    const double tp = static_cast<double>(cm.tp);
    const double fp = static_cast<double>(cm.fp);
    const double fn = static_cast<double>(cm.fn);
    const double tn = static_cast<double>(cm.tn);
    if (cm.tp + cm.fn > 0) m.sensitivity = tp / (tp + fn);
    if (cm.tp + cm.fp > 0) {
        m.precision = tp / (tp + fp);
        m.fdr = fp / (tp + fp);
    }
    if (cm.fn + cm.tn > 0) m.for_rate = fn / (fn + tn);
    if (cm.total() > 0) {
        m.accuracy = (tp + tn) / static_cast<double>(cm.total());
        m.epe = (fp + fn) / static_cast<double>(cm.total());
    }
    if (cm.tp + cm.fp + cm.fn > 0) m.f1 = tp / (tp + 0.5 * (fp + fn));
    return m;
}

double compute_epe(const ConfusionMatrix& cm, std::size_t n_tested) {
    if (n_tested == 0 || n_tested != cm.total())
        throw std::invalid_argument("n_tested must equal the confusion-matrix total");
    return static_cast<double>(cm.fp + cm.fn) / static_cast<double>(n_tested);
}

TrialResult run_trial(const TrialData& data, const SplitSpec& spec, std::uint64_t seed,
                      const TrialOptions& opts) {
    check_spec(spec);
    const std::size_t n = data.peaks.size();
    if (data.truth && data.truth->size() != n)
        throw std::invalid_argument("truth labels must align with the peaks");
    if (!(opts.p_fa > 0.0) || !(opts.p_fa < 1.0)) throw std::invalid_argument("p_fa must lie in (0,1)");

    // The shuffle consumes the generator exactly like shuffle_split_indices;
    // the per-event label randomness follows on the same stream.
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    Rng rng(seed);
    rng.shuffle(idx);
    const double nd = static_cast<double>(n);
    const auto n_val = static_cast<std::size_t>(std::floor(spec.val_frac * nd + 1e-9));
    const auto n_test = static_cast<std::size_t>(std::floor(spec.test_frac * nd + 1e-9));
    if (n_val == 0 || n_test == 0 || n_val + n_test >= n)
        throw std::invalid_argument("split produces an empty subset");
    const std::size_t n_train = n - n_val - n_test;

    std::map<std::int64_t, double> event_u;
    if (!data.truth) {
        for (const PeakRecord& pk : data.peaks) event_u.emplace(pk.event_id, 0.0);
        for (auto& [event_id, u] : event_u) u = rng.uniform01_open0();
    }

    // Normalization is fitted on the training split only.
    std::vector<std::pair<double, double>> train_pts;
    train_pts.reserve(n_train);
    for (std::size_t i = 0; i < n_train; ++i) {
        const PeakRecord& pk = data.peaks[idx[i]];
        train_pts.emplace_back(pk.t, pk.r);
    }
    const NormTransform tr = fit_normalization(train_pts, data.fs, opts.norm_mode);

    const auto normalized_rows = [&](std::size_t lo, std::size_t hi) {
        SampleQD rows;
        rows.reserve(hi - lo);
        for (std::size_t i = lo; i < hi; ++i) {
            const PeakRecord& pk = data.peaks[idx[i]];
            const Point2 p = apply_normalization(tr, pk.t, pk.r);
            rows.push_back({p.x, p.y});
        }
        return rows;
    };
    const SampleQD train = normalized_rows(0, n_train);
    const SampleQD val = normalized_rows(n_train, n_train + n_val);

    BandwidthGrid grid = opts.h_grid;
    if (grid.empty()) grid = default_bandwidth_grid_qd(val);
    const BandwidthSelection sel = select_bandwidth_shared(val, opts.kind, grid);
    const double h = sel.h.front();
    const std::vector<double> hh{h, h};

    std::vector<double> train_density(train.size());
    for (std::size_t i = 0; i < train.size(); ++i)
        train_density[i] = kde_product(train, opts.kind, hh, train[i]);
    const double c_k = compute_threshold(train_density, train.size(), opts.p_fa, opts.kind, h);
    const DensityGrid density = kde_grid(train, opts.kind, hh, opts.grid_size, opts.margin);
    const PredictionSet set = build_prediction_set(density, c_k, opts.p_fa, train.size());

    TrialResult result;
    result.h = h;
    result.c_k = c_k;
    for (std::size_t i = n_train + n_val; i < n; ++i) {
        const PeakRecord& pk = data.peaks[idx[i]];
        const Point2 p = apply_normalization(tr, pk.t, pk.r);
        const bool flagged = test_onset(set, p);
        const bool positive = data.truth
                                  ? (*data.truth)[idx[i]] != 0
                                  : label_bradycardia(pk.t, data.onset_offset, event_u.at(pk.event_id));
        if (positive && flagged) ++result.cm.tp;
        else if (!positive && flagged) ++result.cm.fp;
        else if (positive && !flagged) ++result.cm.fn;
        else ++result.cm.tn;
    }
    return result;
}

MonteCarloResult monte_carlo(const TrialData& data, const std::vector<SplitSpec>& specs,
                             std::uint64_t base_seed, std::size_t trials,
                             const TrialOptions& opts) {
    if (specs.empty()) throw std::invalid_argument("need at least one split spec");
    if (trials < 1) throw std::invalid_argument("need at least one trial");
    MonteCarloResult out;
    out.mean_epe.resize(specs.size(), 0.0);
    for (std::size_t s = 0; s < specs.size(); ++s) {
        double epe_sum = 0.0;
        for (std::size_t t = 0; t < trials; ++t) {
            const std::uint64_t seed = base_seed + t;
            const TrialResult res = run_trial(data, specs[s], seed, opts);
            TrialRecord rec;
            rec.spec_index = s;
            rec.trial = t;
            rec.seed = seed;
            rec.h = res.h;
            rec.c_k = res.c_k;
            rec.cm = res.cm;
            rec.epe = compute_epe(res.cm, res.cm.total());
            epe_sum += rec.epe;
            out.records.push_back(rec);
        }
        out.mean_epe[s] = epe_sum / static_cast<double>(trials);
    }
    return out;
}

}  // namespace bradykde
