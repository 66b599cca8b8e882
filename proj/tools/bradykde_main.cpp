// bradykde: command line front end for the density / prediction-set pipeline.
//
// Subcommands mirror the processing stages: calibrate raw recordings, slice
// events around annotated onsets, detect R peaks, cross-validate a bandwidth,
// build a prediction set, classify new points, run Monte Carlo evaluations,
// generate synthetic data, and export grids for external plotting.
#include <cstdio>
#include <exception>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bradykde/bandwidth.hpp"
#include "bradykde/config.hpp"
#include "bradykde/conformal.hpp"
#include "bradykde/density.hpp"
#include "bradykde/ecg.hpp"
#include "bradykde/eval.hpp"
#include "bradykde/io.hpp"
#include "bradykde/kernels.hpp"
#include "bradykde/qrs.hpp"
#include "bradykde/synthetic.hpp"

using namespace bradykde;

namespace {

std::string slurp_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

SplitSpec parse_split_arg(const std::string& s) {
    std::istringstream in(s);
    std::string part;
    std::vector<double> fracs;
    while (std::getline(in, part, ',')) fracs.push_back(std::stod(part));
    if (fracs.size() != 3)
        throw std::invalid_argument("--splits needs three comma-separated fractions: " + s);
    return {fracs[0], fracs[1], fracs[2]};
}

MixtureComponent parse_component_arg(const std::string& s) {
    std::istringstream in(s);
    std::string part;
    std::vector<double> v;
    while (std::getline(in, part, ',')) v.push_back(std::stod(part));
    if (v.size() != 5)
        throw std::invalid_argument(
            "--component needs weight,mean_t,mean_r,sd_t,sd_r: " + s);
    return {v[0], v[1], v[2], v[3], v[4]};
}

NormMode parse_norm_mode(const std::string& s) {
    if (s == "zscore") return NormMode::zscore;
    if (s == "minmax") return NormMode::minmax;
    throw std::invalid_argument("norm mode must be zscore or minmax, got '" + s + "'");
}

SampleQD normalized_rows(const std::vector<PeakRecord>& peaks, const NormTransform& tr) {
    SampleQD rows;
    rows.reserve(peaks.size());
    for (const PeakRecord& pk : peaks) {
        const Point2 p = apply_normalization(tr, pk.t, pk.r);
        rows.push_back({p.x, p.y});
    }
    return rows;
}

NormTransform fit_from_peaks(const std::vector<PeakRecord>& peaks, double fs, NormMode mode) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(peaks.size());
    for (const PeakRecord& pk : peaks) pts.emplace_back(pk.t, pk.r);
    return fit_normalization(pts, fs, mode);
}

BandwidthGrid grid_from_config(const Config& cfg, const SampleQD& rows) {
    if (cfg.h_min > 0.0 && cfg.h_max > 0.0)
        return make_bandwidth_grid(cfg.h_min, cfg.h_max, cfg.h_steps, cfg.h_log);
    return default_bandwidth_grid_qd(rows);
}

struct BuiltSet {
    PredictionSet set;
    DensityGrid grid;
    NormTransform tr;
    double h = 0.0;
};

// Shared by build-set and export-grid: peaks -> normalization -> bandwidth
// (configured value or CV on the same peaks) -> density grid -> level set.
BuiltSet build_set_from_peaks(const std::vector<PeakRecord>& peaks, const Config& cfg, double fs,
                              double h_fixed) {
    BuiltSet out;
    out.tr = fit_from_peaks(peaks, fs, cfg.norm_mode);
    const SampleQD rows = normalized_rows(peaks, out.tr);
    if (h_fixed > 0.0) {
        out.h = h_fixed;
    } else {
        const BandwidthSelection sel =
            select_bandwidth_shared(rows, cfg.kernel, grid_from_config(cfg, rows));
        out.h = sel.h.front();
    }
    const std::vector<double> hh{out.h, out.h};
    std::vector<double> dens(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        dens[i] = kde_product(rows, cfg.kernel, hh, rows[i]);
    const double c_k = compute_threshold(dens, rows.size(), cfg.p_fa, cfg.kernel, out.h);
    out.grid = kde_grid(rows, cfg.kernel, hh, cfg.grid_size, cfg.margin);
    out.set = build_prediction_set(out.grid, c_k, cfg.p_fa, rows.size());
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    // --config is applied before flag defaults are bound, so explicit flags
    // always win over the file.
    Config cfg;
    try {
        for (int i = 1; i + 1 < argc; ++i)
            if (std::string(argv[i]) == "--config") cfg = load_config(argv[i + 1]);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "bradykde: %s\n", e.what());
        return 1;
    }

    CLI::App app{"KDE + prediction-set toolkit for bradycardia onset detection"};
    app.require_subcommand(1);

    std::string config_path;  // consumed by the pre-scan above
    std::string kernel_name_arg = kernel_name(cfg.kernel);
    std::string norm_arg = cfg.norm_mode == NormMode::zscore ? "zscore" : "minmax";
    double fs = 1.0;
    std::uint64_t seed = cfg.seed;

    // calibrate
    auto* cal = app.add_subcommand("calibrate", "convert raw ADC samples to physical units");
    std::string cal_header, cal_raw, cal_out;
    cal->add_option("--header", cal_header, "two-line record header file")->required();
    cal->add_option("--raw", cal_raw, "raw integer samples, one per line")->required();
    cal->add_option("--out", cal_out, "calibrated samples output")->required();
    cal->add_option("--config", config_path, "key = value configuration file");

    // segment
    auto* seg = app.add_subcommand("segment", "cut fixed windows around annotated onsets");
    std::string seg_signal, seg_onsets, seg_prefix;
    std::size_t seg_pre = cfg.pre, seg_post = cfg.post;
    seg->add_option("--signal", seg_signal, "calibrated samples, one per line")->required();
    seg->add_option("--fs", fs, "sampling rate in Hz")->required();
    seg->add_option("--onsets", seg_onsets, "onset sample indices, one per line")->required();
    seg->add_option("--out-prefix", seg_prefix, "events are written to <prefix><k>.txt")->required();
    seg->add_option("--pre", seg_pre, "samples kept before each onset");
    seg->add_option("--post", seg_post, "samples kept after each onset");
    seg->add_option("--config", config_path, "key = value configuration file");

    // detect-peaks
    auto* det = app.add_subcommand("detect-peaks", "run the QRS detector over one event");
    std::string det_signal, det_out;
    double det_cutoff = cfg.hp_cutoff_hz;
    std::int64_t det_event = 0;
    det->add_option("--signal", det_signal, "event samples, one per line")->required();
    det->add_option("--fs", fs, "sampling rate in Hz")->required();
    det->add_option("--out", det_out, "detected peaks CSV")->required();
    det->add_option("--baseline-cutoff", det_cutoff, "drift high-pass cutoff in Hz; 0 skips");
    det->add_option("--event-id", det_event, "event id stamped on every row");
    det->add_option("--config", config_path, "key = value configuration file");

    // select-bandwidth
    auto* selb = app.add_subcommand("select-bandwidth", "cross-validate the KDE bandwidth");
    std::string selb_peaks, selb_curve;
    bool selb_per_axis = cfg.h_per_axis;
    selb->add_option("--peaks", selb_peaks, "peaks CSV")->required();
    selb->add_option("--fs", fs, "sampling rate the peak times were taken at");
    selb->add_option("--kernel", kernel_name_arg, "gaussian|epanechnikov|uniform|cosine");
    selb->add_option("--h-min", cfg.h_min, "grid lower edge; 0 derives from data");
    selb->add_option("--h-max", cfg.h_max, "grid upper edge; 0 derives from data");
    selb->add_option("--h-steps", cfg.h_steps, "grid size");
    selb->add_flag("--per-axis,!--shared", selb_per_axis, "independent per-axis bandwidths");
    selb->add_option("--norm", norm_arg, "zscore|minmax");
    selb->add_option("--out-curve", selb_curve, "write the CV curve CSV here");
    selb->add_option("--config", config_path, "key = value configuration file");

    // build-set
    auto* bld = app.add_subcommand("build-set", "estimate the density and build a prediction set");
    std::string bld_peaks, bld_hull, bld_transform, bld_grid;
    double bld_h = 0.0;
    bld->add_option("--peaks", bld_peaks, "training peaks CSV")->required();
    bld->add_option("--fs", fs, "sampling rate the peak times were taken at");
    bld->add_option("--bandwidth", bld_h, "bandwidth; 0 cross-validates on the same peaks");
    bld->add_option("--kernel", kernel_name_arg, "gaussian|epanechnikov|uniform|cosine");
    bld->add_option("--p-fa", cfg.p_fa, "tolerated false-alarm probability");
    bld->add_option("--grid-size", cfg.grid_size, "nodes per axis");
    bld->add_option("--margin", cfg.margin, "grid margin in bandwidths");
    bld->add_option("--norm", norm_arg, "zscore|minmax");
    bld->add_option("--out-hull", bld_hull, "prediction-set hull CSV")->required();
    bld->add_option("--out-transform", bld_transform, "normalization transform file")->required();
    bld->add_option("--out-grid", bld_grid, "optional density grid CSV");
    bld->add_option("--config", config_path, "key = value configuration file");

    // test-points
    auto* tst = app.add_subcommand("test-points", "classify peaks against a stored hull");
    std::string tst_hull, tst_transform, tst_peaks, tst_out;
    tst->add_option("--hull", tst_hull, "hull CSV from build-set")->required();
    tst->add_option("--transform", tst_transform, "transform file from build-set")->required();
    tst->add_option("--peaks", tst_peaks, "peaks CSV to classify")->required();
    tst->add_option("--out", tst_out, "CSV with a trailing flagged column")->required();
    tst->add_option("--config", config_path, "key = value configuration file");

    // evaluate
    auto* evl = app.add_subcommand("evaluate", "Monte Carlo split/train/test evaluation");
    std::string evl_peaks, evl_truth, evl_out;
    std::vector<std::string> evl_splits;
    double evl_onset_offset = 5000.0;
    evl->add_option("--peaks", evl_peaks, "peaks CSV")->required();
    evl->add_option("--truth", evl_truth, "0/1 labels aligned with the peaks");
    evl->add_option("--onset-offset", evl_onset_offset,
                    "onset position for the window labeling rule (no --truth)");
    evl->add_option("--splits", evl_splits, "train,val,test fractions (repeatable)");
    evl->add_option("--trials", cfg.trials, "trials per split spec");
    evl->add_option("--seed", seed, "base seed; trial k uses seed+k");
    evl->add_option("--kernel", kernel_name_arg, "gaussian|epanechnikov|uniform|cosine");
    evl->add_option("--p-fa", cfg.p_fa, "tolerated false-alarm probability");
    evl->add_option("--grid-size", cfg.grid_size, "nodes per axis");
    evl->add_option("--margin", cfg.margin, "grid margin in bandwidths");
    evl->add_option("--norm", norm_arg, "zscore|minmax");
    evl->add_option("--fs", fs, "sampling rate the peak times were taken at");
    evl->add_option("--out", evl_out, "per-trial report CSV")->required();
    evl->add_option("--config", config_path, "key = value configuration file");

    // synth
    auto* syn = app.add_subcommand("synth", "generate mixture data with planted anomalies");
    SyntheticSpec syn_spec;
    std::vector<std::string> syn_components;
    std::string syn_peaks_out, syn_labels_out;
    syn->add_option("--seed", seed, "generator seed");
    syn->add_option("--n", syn_spec.n_points, "bulk points");
    syn->add_option("--anomalies", syn_spec.n_anomalies, "planted anomaly count");
    syn->add_option("--displacement", syn_spec.displacement,
                    "anomaly offset in component standard deviations");
    syn->add_option("--component", syn_components,
                    "weight,mean_t,mean_r,sd_t,sd_r (repeatable)");
    syn->add_option("--out-peaks", syn_peaks_out, "peaks CSV")->required();
    syn->add_option("--out-labels", syn_labels_out, "0/1 labels, anomalies = 1")->required();
    syn->add_option("--config", config_path, "key = value configuration file");

    // export-grid
    auto* exp = app.add_subcommand("export-grid", "write the density grid and hull for plotting");
    std::string exp_peaks, exp_grid, exp_hull;
    double exp_h = 0.0;
    exp->add_option("--peaks", exp_peaks, "training peaks CSV")->required();
    exp->add_option("--fs", fs, "sampling rate the peak times were taken at");
    exp->add_option("--bandwidth", exp_h, "bandwidth; 0 cross-validates on the same peaks");
    exp->add_option("--kernel", kernel_name_arg, "gaussian|epanechnikov|uniform|cosine");
    exp->add_option("--p-fa", cfg.p_fa, "tolerated false-alarm probability");
    exp->add_option("--grid-size", cfg.grid_size, "nodes per axis");
    exp->add_option("--margin", cfg.margin, "grid margin in bandwidths");
    exp->add_option("--norm", norm_arg, "zscore|minmax");
    exp->add_option("--out-grid", exp_grid, "density grid CSV")->required();
    exp->add_option("--out-hull", exp_hull, "hull CSV")->required();
    exp->add_option("--config", config_path, "key = value configuration file");

    CLI11_PARSE(app, argc, argv);

    try {
        cfg.kernel = kernel_from_name(kernel_name_arg);
        cfg.norm_mode = parse_norm_mode(norm_arg);

        if (*cal) {
            const EcgHeader header = parse_header(slurp_file(cal_header));
            const EcgSignal sig = calibrate(read_int_signal(cal_raw), header);
            write_signal(cal_out, sig.samples);
            std::printf("fs=%s n=%zu\n", format_double(sig.fs).c_str(), sig.samples.size());
        } else if (*seg) {
            EcgSignal sig;
            sig.samples = read_signal(seg_signal);
            sig.fs = fs;
            sig.calibrated = true;
            const SegmentResult res = segment_events(sig, read_onsets(seg_onsets), seg_pre, seg_post);
            for (std::size_t i = 0; i < res.events.size(); ++i)
                write_signal(seg_prefix + std::to_string(i) + ".txt", res.events[i].samples);
            std::printf("events=%zu skipped=%zu\n", res.events.size(), res.skipped.size());
            for (std::size_t onset : res.skipped)
                std::fprintf(stderr, "bradykde: skipped onset %zu (not enough margin)\n", onset);
        } else if (*det) {
            EcgSignal sig;
            sig.samples = read_signal(det_signal);
            sig.fs = fs;
            sig.calibrated = true;
            if (det_cutoff > 0.0) sig = remove_baseline_wander(sig, det_cutoff);
            Event ev;
            ev.samples = sig.samples;
            const std::vector<RTuple> peaks = detect_r_peaks(ev, fs, cfg.pt);
            std::vector<PeakRecord> rows;
            rows.reserve(peaks.size());
            for (const RTuple& pk : peaks)
                rows.push_back({det_event, static_cast<double>(pk.t), pk.r});
            write_peaks(det_out, rows);
            std::printf("peaks=%zu\n", rows.size());
        } else if (*selb) {
            const std::vector<PeakRecord> peaks = read_peaks(selb_peaks);
            const NormTransform tr = fit_from_peaks(peaks, fs, cfg.norm_mode);
            const SampleQD rows = normalized_rows(peaks, tr);
            const BandwidthGrid grid = grid_from_config(cfg, rows);
            const BandwidthSelection sel =
                selb_per_axis ? select_bandwidth_per_axis(rows, cfg.kernel, grid)
                              : select_bandwidth_shared(rows, cfg.kernel, grid);
            std::string line = "h =";
            for (double h : sel.h) line += " " + format_double(h);
            std::printf("%s\n", line.c_str());
            if (!selb_curve.empty()) write_cv_curve(selb_curve, sel.curve);
        } else if (*bld) {
            const BuiltSet built = build_set_from_peaks(read_peaks(bld_peaks), cfg, fs, bld_h);
            write_hull_csv(bld_hull, built.set, built.h, kernel_name(cfg.kernel));
            write_transform(bld_transform, built.tr);
            if (!bld_grid.empty()) write_grid_csv(bld_grid, built.grid);
            std::printf("h=%s c_k=%s hull_vertices=%zu\n", format_double(built.h).c_str(),
                        format_double(built.set.c_k).c_str(), built.set.hull.size());
        } else if (*tst) {
            const HullFile hull = read_hull_csv(tst_hull);
            const NormTransform tr = read_transform(tst_transform);
            const std::vector<PeakRecord> peaks = read_peaks(tst_peaks);
            PredictionSet set;
            set.c_k = hull.c_k;
            set.p_fa = hull.p_fa;
            set.n_train = hull.n;
            set.hull = hull.hull;
            set.empty_set = hull.hull.empty();
            std::ostringstream out;
            out << "event_id,t_sample,amplitude,flagged\n";
            std::size_t flagged_count = 0;
            for (const PeakRecord& pk : peaks) {
                const bool flagged = test_onset(set, apply_normalization(tr, pk.t, pk.r));
                flagged_count += flagged;
                out << pk.event_id << ',' << format_double(pk.t) << ',' << format_double(pk.r)
                    << ',' << (flagged ? 1 : 0) << '\n';
            }
            atomic_write(tst_out, out.str());
            std::printf("flagged %zu of %zu\n", flagged_count, peaks.size());
        } else if (*evl) {
            EvaluateJob job;
            job.peaks_path = evl_peaks;
            if (!evl_truth.empty()) job.truth_path = evl_truth;
            if (!evl_splits.empty()) {
                job.specs.clear();
                for (const std::string& s : evl_splits) job.specs.push_back(parse_split_arg(s));
            } else {
                job.specs = {cfg.split};
            }
            job.trials = cfg.trials;
            job.base_seed = seed;
            job.opts.kind = cfg.kernel;
            job.opts.p_fa = cfg.p_fa;
            job.opts.grid_size = cfg.grid_size;
            job.opts.margin = cfg.margin;
            job.opts.norm_mode = cfg.norm_mode;
            if (cfg.h_min > 0.0 && cfg.h_max > 0.0)
                job.opts.h_grid = make_bandwidth_grid(cfg.h_min, cfg.h_max, cfg.h_steps, cfg.h_log);
            job.fs = fs;
            job.onset_offset = evl_onset_offset;
            job.out_path = evl_out;
            const MonteCarloResult result = run_evaluate(job);
            for (std::size_t s = 0; s < job.specs.size(); ++s)
                std::printf("split %s,%s,%s mean_epe=%s\n",
                            format_double(job.specs[s].train_frac).c_str(),
                            format_double(job.specs[s].val_frac).c_str(),
                            format_double(job.specs[s].test_frac).c_str(),
                            format_double(result.mean_epe[s]).c_str());
        } else if (*syn) {
            if (!syn_components.empty()) {
                syn_spec.components.clear();
                for (const std::string& s : syn_components)
                    syn_spec.components.push_back(parse_component_arg(s));
            }
            const SyntheticData data = generate_synthetic(syn_spec, seed);
            write_peaks(syn_peaks_out, data.peaks);
            write_labels(syn_labels_out, data.labels);
            std::printf("points=%zu anomalies=%zu\n", data.peaks.size(), syn_spec.n_anomalies);
        } else if (*exp) {
            const BuiltSet built = build_set_from_peaks(read_peaks(exp_peaks), cfg, fs, exp_h);
            write_grid_csv(exp_grid, built.grid);
            write_hull_csv(exp_hull, built.set, built.h, kernel_name(cfg.kernel));
            std::printf("h=%s nodes=%zu hull_vertices=%zu\n", format_double(built.h).c_str(),
                        built.grid.values.size(), built.set.hull.size());
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "bradykde: %s\n", e.what());
        return 1;
    }
    return 0;
}
