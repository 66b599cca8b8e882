// Python bindings for the core pipeline: kernels, KDE, bandwidth selection,
// prediction sets, QRS detection, and the Monte Carlo evaluation harness.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bradykde/bandwidth.hpp"
#include "bradykde/conformal.hpp"
#include "bradykde/density.hpp"
#include "bradykde/ecg.hpp"
#include "bradykde/eval.hpp"
#include "bradykde/io.hpp"
#include "bradykde/kernels.hpp"
#include "bradykde/parametric.hpp"
#include "bradykde/qrs.hpp"
#include "bradykde/synthetic.hpp"

namespace py = pybind11;
using namespace bradykde;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Kernel density estimation and conformal prediction sets for "
              "bradycardia onset detection";

    // kernels
    py::enum_<Kernel>(m, "Kernel")
        .value("gaussian", Kernel::gaussian)
        .value("epanechnikov", Kernel::epanechnikov)
        .value("uniform", Kernel::uniform)
        .value("cosine", Kernel::cosine);
    m.def("kernel_from_name", &kernel_from_name, py::arg("name"));
    m.def("kernel_name", &kernel_name, py::arg("kind"));
    m.def("eval_kernel", &eval_kernel, py::arg("kind"), py::arg("u"));
    m.def("eval_kernel_conv", &eval_kernel_conv, py::arg("kind"), py::arg("v"));
    m.def("kernel_kappa", &kernel_kappa, py::arg("kind"));
    m.def("kernel_kappa2", &kernel_kappa2, py::arg("kind"));
    m.def("kernel_support", &kernel_support, py::arg("kind"));

    // density estimation
    py::class_<DensityGrid>(m, "DensityGrid")
        .def_readonly("x_axis", &DensityGrid::x_axis)
        .def_readonly("y_axis", &DensityGrid::y_axis)
        .def_readonly("values", &DensityGrid::values)
        .def_readonly("h", &DensityGrid::h)
        .def_readonly("kind", &DensityGrid::kind)
        .def("at", &DensityGrid::at, py::arg("ix"), py::arg("iy"));
    m.def("kde_univariate", &kde_univariate, py::arg("data"), py::arg("kind"), py::arg("h"),
          py::arg("x"));
    m.def("kde_product", &kde_product, py::arg("data"), py::arg("kind"), py::arg("h"),
          py::arg("x"));
    m.def("kde_grid", &kde_grid, py::arg("data"), py::arg("kind"), py::arg("h"),
          py::arg("grid_size") = 128, py::arg("margin_factor") = 3.0);

    // bandwidth selection
    py::class_<CvEntry>(m, "CvEntry")
        .def_readonly("h", &CvEntry::h)
        .def_readonly("score", &CvEntry::score);
    py::class_<BandwidthSelection>(m, "BandwidthSelection")
        .def_readonly("h", &BandwidthSelection::h)
        .def_readonly("curve", &BandwidthSelection::curve);
    m.def("cv_score_1d", &cv_score_1d, py::arg("data"), py::arg("kind"), py::arg("h"));
    m.def("cv_score_qd", &cv_score_qd, py::arg("data"), py::arg("kind"), py::arg("h"));
    m.def("select_bandwidth_1d", &select_bandwidth_1d, py::arg("data"), py::arg("kind"),
          py::arg("grid"));
    m.def("select_bandwidth_shared", &select_bandwidth_shared, py::arg("data"), py::arg("kind"),
          py::arg("grid"));
    m.def("select_bandwidth_per_axis", &select_bandwidth_per_axis, py::arg("data"),
          py::arg("kind"), py::arg("grid"));
    m.def("make_bandwidth_grid", &make_bandwidth_grid, py::arg("h_min"), py::arg("h_max"),
          py::arg("steps"), py::arg("log_spaced"));
    m.def("default_bandwidth_grid_1d", &default_bandwidth_grid_1d, py::arg("data"));
    m.def("default_bandwidth_grid_qd", &default_bandwidth_grid_qd, py::arg("data"));
    m.def("asymptotic_bias", &asymptotic_bias, py::arg("kind"), py::arg("h"), py::arg("p2x"));
    m.def("asymptotic_variance", &asymptotic_variance, py::arg("kind"), py::arg("n"),
          py::arg("h"), py::arg("px"));
    m.def("h_opt_pointwise", &h_opt_pointwise, py::arg("kind"), py::arg("n"), py::arg("px"),
          py::arg("p2x"));

    // parametric baseline
    py::class_<GaussPrior>(m, "GaussPrior")
        .def(py::init<>())
        .def(py::init<double, double, double>(), py::arg("mu0"), py::arg("sigma0_sq"),
             py::arg("sigma_sq"))
        .def_readwrite("mu0", &GaussPrior::mu0)
        .def_readwrite("sigma0_sq", &GaussPrior::sigma0_sq)
        .def_readwrite("sigma_sq", &GaussPrior::sigma_sq);
    py::class_<GaussPosterior>(m, "GaussPosterior")
        .def_readonly("mu_n", &GaussPosterior::mu_n)
        .def_readonly("sigma_n_sq", &GaussPosterior::sigma_n_sq);
    m.def("mle_mean", &mle_mean, py::arg("data"));
    m.def("bayes_posterior", &bayes_posterior, py::arg("data"), py::arg("prior"));
    m.def("posterior_predictive", &posterior_predictive, py::arg("posterior"),
          py::arg("sigma_sq"));

    // prediction sets
    py::class_<Point2>(m, "Point2")
        .def(py::init<>())
        .def(py::init<double, double>(), py::arg("x"), py::arg("y"))
        .def_readwrite("x", &Point2::x)
        .def_readwrite("y", &Point2::y)
        .def("__repr__", [](const Point2& p) {
            return "Point2(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")";
        });
    py::class_<PredictionSet>(m, "PredictionSet")
        .def_readonly("c_k", &PredictionSet::c_k)
        .def_readonly("mask", &PredictionSet::mask)
        .def_readonly("nx", &PredictionSet::nx)
        .def_readonly("ny", &PredictionSet::ny)
        .def_readonly("hull", &PredictionSet::hull)
        .def_readonly("p_fa", &PredictionSet::p_fa)
        .def_readonly("n_train", &PredictionSet::n_train)
        .def_readonly("empty_set", &PredictionSet::empty_set);
    py::class_<PValueField>(m, "PValueField")
        .def_readonly("values", &PValueField::values)
        .def_readonly("nx", &PValueField::nx)
        .def_readonly("ny", &PValueField::ny);
    m.def("compute_threshold", &compute_threshold, py::arg("train_densities"), py::arg("n"),
          py::arg("p_fa"), py::arg("kind"), py::arg("h"));
    m.def("build_prediction_set", &build_prediction_set, py::arg("grid"), py::arg("c_k"),
          py::arg("p_fa"), py::arg("n_train"));
    m.def("convex_hull", &convex_hull, py::arg("points"));
    m.def("point_in_hull", &point_in_hull, py::arg("hull"), py::arg("p"));
    m.def("test_onset", &test_onset, py::arg("prediction_set"), py::arg("x"));
    m.def("p_value_field", &p_value_field, py::arg("train"), py::arg("x_axis"), py::arg("y_axis"),
          py::arg("kind"), py::arg("h"));

    // ECG preprocessing and QRS detection
    py::class_<EcgHeader>(m, "EcgHeader")
        .def_readonly("name", &EcgHeader::name)
        .def_readonly("n_signals", &EcgHeader::n_signals)
        .def_readonly("fs", &EcgHeader::fs)
        .def_readonly("gain", &EcgHeader::gain)
        .def_readonly("base", &EcgHeader::base);
    py::class_<EcgSignal>(m, "EcgSignal")
        .def(py::init<>())
        .def_readwrite("samples", &EcgSignal::samples)
        .def_readwrite("fs", &EcgSignal::fs)
        .def_readwrite("calibrated", &EcgSignal::calibrated);
    py::class_<Event>(m, "Event")
        .def(py::init<>())
        .def_readwrite("samples", &Event::samples)
        .def_readwrite("onset_offset", &Event::onset_offset);
    py::class_<SegmentResult>(m, "SegmentResult")
        .def_readonly("events", &SegmentResult::events)
        .def_readonly("skipped", &SegmentResult::skipped);
    py::class_<RTuple>(m, "RTuple")
        .def_readonly("t", &RTuple::t)
        .def_readonly("r", &RTuple::r);
    py::class_<PanTompkinsParams>(m, "PanTompkinsParams")
        .def(py::init<>())
        .def_readwrite("low_hz", &PanTompkinsParams::low_hz)
        .def_readwrite("high_hz", &PanTompkinsParams::high_hz)
        .def_readwrite("mwi_ms", &PanTompkinsParams::mwi_ms)
        .def_readwrite("refractory_ms", &PanTompkinsParams::refractory_ms)
        .def_readwrite("twave_ms", &PanTompkinsParams::twave_ms)
        .def_readwrite("searchback_factor", &PanTompkinsParams::searchback_factor)
        .def_readwrite("learn_s", &PanTompkinsParams::learn_s);
    m.def("parse_header", &parse_header, py::arg("text"));
    m.def("calibrate", &calibrate, py::arg("raw"), py::arg("header"));
    m.def("remove_baseline_wander", &remove_baseline_wander, py::arg("signal"),
          py::arg("cutoff_hz") = 0.5);
    m.def("segment_events", &segment_events, py::arg("signal"), py::arg("onsets"),
          py::arg("pre") = 5000, py::arg("post") = 2500);
    m.def("detect_r_peaks", &detect_r_peaks, py::arg("event"), py::arg("fs"),
          py::arg("params") = PanTompkinsParams{});

    // normalization
    py::enum_<NormMode>(m, "NormMode")
        .value("zscore", NormMode::zscore)
        .value("minmax", NormMode::minmax);
    py::class_<NormTransform>(m, "NormTransform")
        .def(py::init<>())
        .def_readwrite("fs", &NormTransform::fs)
        .def_readwrite("mean_t", &NormTransform::mean_t)
        .def_readwrite("sd_t", &NormTransform::sd_t)
        .def_readwrite("mean_r", &NormTransform::mean_r)
        .def_readwrite("sd_r", &NormTransform::sd_r);
    m.def("fit_normalization", &fit_normalization, py::arg("peaks"), py::arg("fs"),
          py::arg("mode") = NormMode::zscore);
    m.def("apply_normalization", &apply_normalization, py::arg("transform"), py::arg("t_sample"),
          py::arg("r"));
    m.def("invert_normalization", &invert_normalization, py::arg("transform"), py::arg("p"));

    // evaluation harness
    py::class_<SplitSpec>(m, "SplitSpec")
        .def(py::init<>())
        .def(py::init<double, double, double>(), py::arg("train_frac"), py::arg("val_frac"),
             py::arg("test_frac"))
        .def_readwrite("train_frac", &SplitSpec::train_frac)
        .def_readwrite("val_frac", &SplitSpec::val_frac)
        .def_readwrite("test_frac", &SplitSpec::test_frac);
    py::class_<ConfusionMatrix>(m, "ConfusionMatrix")
        .def(py::init<>())
        .def(py::init<std::size_t, std::size_t, std::size_t, std::size_t>(), py::arg("tp"),
             py::arg("fp"), py::arg("fn"), py::arg("tn"))
        .def_readwrite("tp", &ConfusionMatrix::tp)
        .def_readwrite("fp", &ConfusionMatrix::fp)
        .def_readwrite("fn", &ConfusionMatrix::fn)
        .def_readwrite("tn", &ConfusionMatrix::tn)
        .def("total", &ConfusionMatrix::total);
    py::class_<MetricsReport>(m, "MetricsReport")
        .def_readonly("sensitivity", &MetricsReport::sensitivity)
        .def_readonly("precision", &MetricsReport::precision)
        .def_readonly("fdr", &MetricsReport::fdr)
        .def_readonly("for_rate", &MetricsReport::for_rate)
        .def_readonly("accuracy", &MetricsReport::accuracy)
        .def_readonly("f1", &MetricsReport::f1)
        .def_readonly("epe", &MetricsReport::epe);
    m.def("compute_metrics", &compute_metrics, py::arg("cm"));
    m.def("compute_epe", &compute_epe, py::arg("cm"), py::arg("n_tested"));
    m.def("label_bradycardia", &label_bradycardia, py::arg("peak_t"), py::arg("onset_m"),
          py::arg("u"));

    py::class_<PeakRecord>(m, "PeakRecord")
        .def(py::init<>())
        .def(py::init<std::int64_t, double, double>(), py::arg("event_id"), py::arg("t"),
             py::arg("r"))
        .def_readwrite("event_id", &PeakRecord::event_id)
        .def_readwrite("t", &PeakRecord::t)
        .def_readwrite("r", &PeakRecord::r);
    py::class_<TrialData>(m, "TrialData")
        .def(py::init<>())
        .def_readwrite("peaks", &TrialData::peaks)
        .def_readwrite("truth", &TrialData::truth)
        .def_readwrite("fs", &TrialData::fs)
        .def_readwrite("onset_offset", &TrialData::onset_offset);
    py::class_<TrialOptions>(m, "TrialOptions")
        .def(py::init<>())
        .def_readwrite("kind", &TrialOptions::kind)
        .def_readwrite("h_grid", &TrialOptions::h_grid)
        .def_readwrite("p_fa", &TrialOptions::p_fa)
        .def_readwrite("grid_size", &TrialOptions::grid_size)
        .def_readwrite("margin", &TrialOptions::margin)
        .def_readwrite("norm_mode", &TrialOptions::norm_mode);
    py::class_<TrialResult>(m, "TrialResult")
        .def_readonly("cm", &TrialResult::cm)
        .def_readonly("h", &TrialResult::h)
        .def_readonly("c_k", &TrialResult::c_k);
    py::class_<TrialRecord>(m, "TrialRecord")
        .def_readonly("spec_index", &TrialRecord::spec_index)
        .def_readonly("trial", &TrialRecord::trial)
        .def_readonly("seed", &TrialRecord::seed)
        .def_readonly("h", &TrialRecord::h)
        .def_readonly("c_k", &TrialRecord::c_k)
        .def_readonly("cm", &TrialRecord::cm)
        .def_readonly("epe", &TrialRecord::epe);
    py::class_<MonteCarloResult>(m, "MonteCarloResult")
        .def_readonly("records", &MonteCarloResult::records)
        .def_readonly("mean_epe", &MonteCarloResult::mean_epe);
    m.def("shuffle_split_indices",
          [](std::size_t n, const SplitSpec& spec, std::uint64_t seed) {
              const SplitIndices idx = shuffle_split_indices(n, spec, seed);
              return py::make_tuple(idx.train, idx.val, idx.test);
          },
          py::arg("n"), py::arg("spec"), py::arg("seed"));
    m.def("run_trial", &run_trial, py::arg("data"), py::arg("spec"), py::arg("seed"),
          py::arg("options"));
    m.def("monte_carlo", &monte_carlo, py::arg("data"), py::arg("specs"), py::arg("base_seed"),
          py::arg("trials"), py::arg("options"));

    // synthetic data
    py::class_<MixtureComponent>(m, "MixtureComponent")
        .def(py::init<>())
        .def(py::init<double, double, double, double, double>(), py::arg("weight"),
             py::arg("mean_t"), py::arg("mean_r"), py::arg("sd_t"), py::arg("sd_r"))
        .def_readwrite("weight", &MixtureComponent::weight)
        .def_readwrite("mean_t", &MixtureComponent::mean_t)
        .def_readwrite("mean_r", &MixtureComponent::mean_r)
        .def_readwrite("sd_t", &MixtureComponent::sd_t)
        .def_readwrite("sd_r", &MixtureComponent::sd_r);
    py::class_<SyntheticSpec>(m, "SyntheticSpec")
        .def(py::init<>())
        .def_readwrite("components", &SyntheticSpec::components)
        .def_readwrite("n_points", &SyntheticSpec::n_points)
        .def_readwrite("n_anomalies", &SyntheticSpec::n_anomalies)
        .def_readwrite("displacement", &SyntheticSpec::displacement);
    py::class_<SyntheticData>(m, "SyntheticData")
        .def_readonly("peaks", &SyntheticData::peaks)
        .def_readonly("labels", &SyntheticData::labels);
    m.def("generate_synthetic", &generate_synthetic, py::arg("spec"), py::arg("seed"));

    // file formats and the report pipeline
    m.def("read_peaks", &read_peaks, py::arg("path"));
    m.def("write_peaks", &write_peaks, py::arg("path"), py::arg("peaks"));
    m.def("read_labels", &read_labels, py::arg("path"));
    m.def("write_labels", &write_labels, py::arg("path"), py::arg("labels"));
    py::class_<EvaluateJob>(m, "EvaluateJob")
        .def(py::init<>())
        .def_readwrite("peaks_path", &EvaluateJob::peaks_path)
        .def_readwrite("truth_path", &EvaluateJob::truth_path)
        .def_readwrite("specs", &EvaluateJob::specs)
        .def_readwrite("trials", &EvaluateJob::trials)
        .def_readwrite("base_seed", &EvaluateJob::base_seed)
        .def_readwrite("opts", &EvaluateJob::opts)
        .def_readwrite("fs", &EvaluateJob::fs)
        .def_readwrite("onset_offset", &EvaluateJob::onset_offset)
        .def_readwrite("out_path", &EvaluateJob::out_path);
    m.def("run_evaluate", &run_evaluate, py::arg("job"));
}
