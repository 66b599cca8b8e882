// Shuffle/split, labeling, confusion-matrix metrics, single trials, and the
// Monte Carlo harness.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "bradykde/kernels.hpp"
#include "bradykde/qrs.hpp"
#include "bradykde/rng.hpp"

namespace bradykde {

struct SplitSpec {
    double train_frac = 0.6;
    double val_frac = 0.2;
    double test_frac = 0.2;
};

struct ConfusionMatrix {
    std::size_t tp = 0, fp = 0, fn = 0, tn = 0;

    std::size_t total() const { return tp + fp + fn + tn; }
};

// Metrics with zero denominators are reported as absent, never as 0/0.
struct MetricsReport {
    std::optional<double> sensitivity;  // tp/(tp+fn)
    std::optional<double> precision;    // tp/(tp+fp)
    std::optional<double> fdr;          // fp/(tp+fp)
    std::optional<double> for_rate;     // fn/(fn+tn)
    std::optional<double> accuracy;     // (tp+tn)/total
    std::optional<double> f1;           // tp/(tp + (fp+fn)/2)
    std::optional<double> epe;          // (fp+fn)/total
};

struct SplitIndices {
    std::vector<std::size_t> train, val, test;
};

// Fisher-Yates shuffle under Rng(seed), then sizes floor(frac*n) for the
// validation and test splits with the remainder going to train.
SplitIndices shuffle_split_indices(std::size_t n, const SplitSpec& spec, std::uint64_t seed);

// True iff m < peak_t < m + ceil(u*1500), strict on both sides.
bool label_bradycardia(double peak_t, double onset_m, double u);

MetricsReport compute_metrics(const ConfusionMatrix& cm);

// (fp+fn)/n_tested; n_tested must equal the matrix total.
double compute_epe(const ConfusionMatrix& cm, std::size_t n_tested);

// One observation row of the trial input.
struct PeakRecord {
    std::int64_t event_id = 0;
    double t = 0.0;  // sample coordinate
    double r = 0.0;
};

struct TrialData {
    std::vector<PeakRecord> peaks;
    // Ground-truth labels aligned with peaks; when absent, labels come from
    // the onset rule with one u per event per trial.
    std::optional<std::vector<int>> truth;
    double fs = 1.0;
    double onset_offset = 5000.0;  // onset sample index within each event window
};

struct TrialOptions {
    Kernel kind = Kernel::gaussian;
    // Candidate bandwidths; empty selects the default grid from the
    // validation data range.
    std::vector<double> h_grid;
    double p_fa = 0.05;
    std::size_t grid_size = 128;
    double margin = 3.0;
    NormMode norm_mode = NormMode::zscore;
};

struct TrialResult {
    ConfusionMatrix cm;
    double h = 0.0;
    double c_k = 0.0;
};

// Pipeline of one trial: shuffle/split, fit normalization on the training
// split, cross-validate h on the validation split, build the density grid,
// threshold and hull from the training split, then classify the test split.
// Positive class = onset (flagged outside the hull).
TrialResult run_trial(const TrialData& data, const SplitSpec& spec, std::uint64_t seed,
                      const TrialOptions& opts);

struct TrialRecord {
    std::size_t spec_index = 0;
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    double h = 0.0;
    double c_k = 0.0;
    ConfusionMatrix cm;
    double epe = 0.0;
};

struct MonteCarloResult {
    std::vector<TrialRecord> records;   // specs-major, trials in order
    std::vector<double> mean_epe;       // one per split spec
};

// Trials use seeds base_seed + trial_index, identically for every spec.
MonteCarloResult monte_carlo(const TrialData& data, const std::vector<SplitSpec>& specs,
                             std::uint64_t base_seed, std::size_t trials,
                             const TrialOptions& opts);

}  // namespace bradykde
