// File formats (all plain text, full decimal precision, atomic writes) and
// the end-to-end `evaluate` report pipeline shared by the CLI.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bradykde/bandwidth.hpp"
#include "bradykde/conformal.hpp"
#include "bradykde/density.hpp"
#include "bradykde/eval.hpp"
#include "bradykde/qrs.hpp"

namespace bradykde {

// Shortest decimal string that round-trips the double exactly.
std::string format_double(double v);

// Writes content to path via a temporary file plus rename, so interrupted
// runs never leave truncated output.
void atomic_write(const std::string& path, const std::string& content);

// peaks CSV: header `event_id,t_sample,amplitude`
std::vector<PeakRecord> read_peaks(const std::string& path);
void write_peaks(const std::string& path, const std::vector<PeakRecord>& peaks);

// one 0/1 label per line, aligned with a peaks file
std::vector<int> read_labels(const std::string& path);
void write_labels(const std::string& path, const std::vector<int>& labels);

// one sample per line
std::vector<double> read_signal(const std::string& path);
std::vector<long long> read_int_signal(const std::string& path);
void write_signal(const std::string& path, const std::vector<double>& samples);

// one ascending sample index per line
std::vector<std::size_t> read_onsets(const std::string& path);

// density grid CSV: header `x,y,density`, x-major rows
void write_grid_csv(const std::string& path, const DensityGrid& grid);

// hull CSV: `# c_k=<v> p_fa=<v> n=<v> h=<v> kernel=<name>`, header `x,y`,
// one vertex per row in polygon order
struct HullFile {
    std::vector<Point2> hull;
    double c_k = 0.0;
    double p_fa = 0.0;
    std::size_t n = 0;
    double h = 0.0;
    std::string kernel;
};
void write_hull_csv(const std::string& path, const PredictionSet& set, double h,
                    const std::string& kernel_name);
HullFile read_hull_csv(const std::string& path);

// normalization transform: `key = value` lines (fs, mean_t, sd_t, mean_r, sd_r)
void write_transform(const std::string& path, const NormTransform& tr);
NormTransform read_transform(const std::string& path);

// cross-validation curve CSV: header `h,score` (first axis only for
// per-axis curves)
void write_cv_curve(const std::string& path, const CvCurve& curve);

struct EvaluateJob {
    std::string peaks_path;
    std::optional<std::string> truth_path;
    std::vector<SplitSpec> specs{SplitSpec{}};
    std::size_t trials = 20;
    std::uint64_t base_seed = 1;
    TrialOptions opts;
    double fs = 1.0;
    double onset_offset = 5000.0;
    std::string out_path;
};

// Reads the inputs, runs the Monte Carlo harness, and writes the per-trial
// report CSV (`trial,seed,h,c_k,tp,fp,fn,tn,epe` with `# split=` section
// markers and `# ... mean_epe=` summary lines).  Deterministic: identical
// jobs produce byte-identical files.
MonteCarloResult run_evaluate(const EvaluateJob& job);

}  // namespace bradykde
