#include <doctest.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bradykde/config.hpp"
#include "bradykde/io.hpp"
#include "bradykde/synthetic.hpp"

using bradykde::PeakRecord;

namespace {

struct TempDir {
    std::filesystem::path dir;

    TempDir() {
        static int counter = 0;
        const auto stamp =
            std::chrono::steady_clock::now().time_since_epoch().count() + 1000 * counter++;
        dir = std::filesystem::temp_directory_path() /
              ("bradykde_test_" + std::to_string(stamp));
        std::filesystem::create_directories(dir);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(dir, ec);
    }
    std::string path(const std::string& name) const { return (dir / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(bool(in));
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spit(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(bool(out));
    out << content;
}

// Expects fn() to throw E whose message contains `needle`.
template <typename E, typename Fn>
void check_throws_containing(Fn&& fn, const std::string& needle) {
    try {
        fn();
        FAIL_CHECK("expected an exception mentioning '", needle, "'");
    } catch (const E& e) {
        const std::string msg = e.what();
        INFO("message: ", msg);
        CHECK(msg.find(needle) != std::string::npos);
    }
}

}  // namespace

TEST_CASE("doubles format to shortest round-trip strings") {
    for (double v : {0.5, 2.0, -3.25, 0.1, 1.0 / 3.0, 3.141592653589793, 1e300, 5e-324,
                     -0.07478632478632478, 123456789.123456}) {
        const std::string s = bradykde::format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);  // exact round trip
    }
    CHECK(bradykde::format_double(0.5) == "0.5");
    CHECK(bradykde::format_double(2.0) == "2");
    CHECK(bradykde::format_double(-1.25) == "-1.25");
    CHECK(bradykde::format_double(0.1) == "0.1");  // not 0.1000000000000000055...
}

TEST_CASE("atomic writes leave no temporaries and replace existing files") {
    TempDir tmp;
    const auto p = tmp.path("out.txt");
    bradykde::atomic_write(p, "first\n");
    CHECK(slurp(p) == "first\n");
    CHECK_FALSE(std::filesystem::exists(p + ".tmp"));

    bradykde::atomic_write(p, "second\n");
    CHECK(slurp(p) == "second\n");
}

TEST_CASE("peaks files round-trip bitwise") {
    TempDir tmp;
    const auto p = tmp.path("peaks.csv");
    const std::vector<PeakRecord> peaks{
        {0, 123.0, 0.5021}, {0, 456.75, -0.25}, {3, 1.0 / 3.0, 1e-12}};
    bradykde::write_peaks(p, peaks);
    const auto back = bradykde::read_peaks(p);
    REQUIRE(back.size() == peaks.size());
    for (std::size_t i = 0; i < peaks.size(); ++i) {
        CHECK(back[i].event_id == peaks[i].event_id);
        CHECK(back[i].t == peaks[i].t);
        CHECK(back[i].r == peaks[i].r);
    }
    CHECK(slurp(p).rfind("event_id,t_sample,amplitude\n", 0) == 0);
}

TEST_CASE("peaks files accept CRLF line endings") {
    TempDir tmp;
    const auto p = tmp.path("crlf.csv");
    spit(p, "event_id,t_sample,amplitude\r\n1,100,0.5\r\n2,200,0.75\r\n");
    const auto peaks = bradykde::read_peaks(p);
    REQUIRE(peaks.size() == 2);
    CHECK(peaks[0].event_id == 1);
    CHECK(peaks[0].t == 100.0);
    CHECK(peaks[1].r == 0.75);
}

TEST_CASE("peaks parse errors carry the file and line number") {
    TempDir tmp;
    const auto p = tmp.path("bad.csv");

    spit(p, "wrong,header\n1,2,3\n");
    check_throws_containing<std::runtime_error>([&] { bradykde::read_peaks(p); }, ":1:");

    spit(p, "event_id,t_sample,amplitude\n1,2,3\n4,5\n");
    check_throws_containing<std::runtime_error>([&] { bradykde::read_peaks(p); }, ":3:");

    spit(p, "event_id,t_sample,amplitude\n1,2,3\n1,two,3\n");
    check_throws_containing<std::runtime_error>([&] { bradykde::read_peaks(p); }, "t_sample");

    check_throws_containing<std::runtime_error>(
        [&] { bradykde::read_peaks(tmp.path("missing.csv")); }, "cannot open");
}

TEST_CASE("label files round-trip and reject non-binary values") {
    TempDir tmp;
    const auto p = tmp.path("labels.txt");
    bradykde::write_labels(p, {0, 1, 1, 0});
    CHECK(bradykde::read_labels(p) == std::vector<int>{0, 1, 1, 0});

    spit(p, "0\n1\n2\n");
    check_throws_containing<std::runtime_error>([&] { bradykde::read_labels(p); }, ":3:");
}

TEST_CASE("signal files round-trip and reject empties") {
    TempDir tmp;
    const auto p = tmp.path("sig.txt");
    const std::vector<double> sig{0.0, -1.5, 3.25, 1e-9};
    bradykde::write_signal(p, sig);
    CHECK(bradykde::read_signal(p) == sig);

    spit(p, "512\n-48\n1023\n");
    CHECK(bradykde::read_int_signal(p) == std::vector<long long>{512, -48, 1023});

    spit(p, "\n\n");
    CHECK_THROWS_AS(bradykde::read_signal(p), std::runtime_error);
    spit(p, "12.5\n");
    check_throws_containing<std::runtime_error>([&] { bradykde::read_int_signal(p); },
                                                "raw sample");
}

TEST_CASE("onset files are nonnegative ascending indices") {
    TempDir tmp;
    const auto p = tmp.path("onsets.txt");
    spit(p, "100\n5000\n90000\n");
    CHECK(bradykde::read_onsets(p) == std::vector<std::size_t>{100, 5000, 90000});
    spit(p, "100\n-3\n");
    check_throws_containing<std::runtime_error>([&] { bradykde::read_onsets(p); }, ":2:");
}

TEST_CASE("grid export is x-major with full precision") {
    TempDir tmp;
    bradykde::DensityGrid grid;
    grid.x_axis = {0.0, 1.0};
    grid.y_axis = {10.0, 20.0};
    grid.values = {0.125, 0.25, 1.0 / 3.0, 0.5};  // x-major
    const auto p = tmp.path("grid.csv");
    bradykde::write_grid_csv(p, grid);
    const std::string expected = "x,y,density\n"
                                 "0,10,0.125\n"
                                 "0,20,0.25\n"
                                 "1,10," + bradykde::format_double(1.0 / 3.0) + "\n"
                                 "1,20,0.5\n";
    CHECK(slurp(p) == expected);
}

TEST_CASE("hull files round-trip with their metadata") {
    TempDir tmp;
    bradykde::PredictionSet set;
    set.c_k = 0.0123456789012345;
    set.p_fa = 0.05;
    set.n_train = 372;
    set.hull = {{0.0, 0.0}, {2.5, -1.0 / 3.0}, {1.0, 2.0}};
    const auto p = tmp.path("hull.csv");
    bradykde::write_hull_csv(p, set, 0.4875, "gaussian");

    const auto back = bradykde::read_hull_csv(p);
    CHECK(back.c_k == set.c_k);
    CHECK(back.p_fa == set.p_fa);
    CHECK(back.n == set.n_train);
    CHECK(back.h == 0.4875);
    CHECK(back.kernel == "gaussian");
    REQUIRE(back.hull.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(back.hull[i].x == set.hull[i].x);
        CHECK(back.hull[i].y == set.hull[i].y);
    }
}

TEST_CASE("hull files reject malformed metadata") {
    TempDir tmp;
    const auto p = tmp.path("hull.csv");

    spit(p, "x,y\n0,0\n");
    check_throws_containing<std::runtime_error>([&] { bradykde::read_hull_csv(p); },
                                                "metadata");

    spit(p, "# c_k=0.1 p_fa=0.05 n=10 h=0.5\nx,y\n0,0\n");  // kernel missing
    check_throws_containing<std::runtime_error>([&] { bradykde::read_hull_csv(p); },
                                                "missing required keys");

    spit(p, "# c_k=0.1 p_fa=0.05 n=10 h=0.5 kernel=gaussian extra=1\nx,y\n");
    check_throws_containing<std::runtime_error>([&] { bradykde::read_hull_csv(p); },
                                                "unknown metadata key");

    spit(p, "# c_k=0.1 p_fa=0.05 n=10 h=0.5 kernel=gaussian\nwrong\n0,0\n");
    check_throws_containing<std::runtime_error>([&] { bradykde::read_hull_csv(p); }, ":2:");

    spit(p, "# c_k=0.1 p_fa=0.05 n=10 h=0.5 kernel=gaussian\nx,y\n0,0,9\n");
    check_throws_containing<std::runtime_error>([&] { bradykde::read_hull_csv(p); }, ":3:");
}

TEST_CASE("transform files round-trip and validate") {
    TempDir tmp;
    const auto p = tmp.path("transform.txt");
    bradykde::NormTransform tr;
    tr.fs = 500.0;
    tr.mean_t = 12.3456789;
    tr.sd_t = 1.0 / 7.0;
    tr.mean_r = -0.25;
    tr.sd_r = 0.125;
    bradykde::write_transform(p, tr);
    const auto back = bradykde::read_transform(p);
    CHECK(back.fs == tr.fs);
    CHECK(back.mean_t == tr.mean_t);
    CHECK(back.sd_t == tr.sd_t);
    CHECK(back.mean_r == tr.mean_r);
    CHECK(back.sd_r == tr.sd_r);

    spit(p, "fs = 500\nmean_t = 1\nsd_t = 1\nmean_r = 0\n");  // sd_r missing
    check_throws_containing<std::runtime_error>([&] { bradykde::read_transform(p); },
                                                "missing required keys");
    spit(p, "fs = 500\nmean_t = 1\nsd_t = 0\nmean_r = 0\nsd_r = 1\n");
    check_throws_containing<std::runtime_error>([&] { bradykde::read_transform(p); },
                                                "positive");
    spit(p, "fs = 500\nmean_t = 1\nsd_t = 1\nmean_r = 0\nsd_r = 1\nwhat = 9\n");
    check_throws_containing<std::runtime_error>([&] { bradykde::read_transform(p); },
                                                "unknown transform key");
}

TEST_CASE("cross-validation curves export as two-column CSV") {
    TempDir tmp;
    const auto p = tmp.path("curve.csv");
    bradykde::CvCurve curve{{{0.1}, -0.5}, {{0.2}, -0.75}, {{0.4, 0.4}, -0.6}};
    bradykde::write_cv_curve(p, curve);
    CHECK(slurp(p) == "h,score\n0.1,-0.5\n0.2,-0.75\n0.4,-0.6\n");
}

TEST_CASE("config text parses with line-numbered diagnostics") {
    const auto cfg = bradykde::parse_config(
        "# comment\n"
        "kernel = epanechnikov\n"
        "p_fa = 0.1\n"
        "split = 0.7, 0.2, 0.1\n"
        "h_steps = 25\n"
        "h_scale = linear\n"
        "grid_size = 64\n"
        "seed = 99\n"
        "pt_mwi_ms = 120\n");
    CHECK(cfg.kernel == bradykde::Kernel::epanechnikov);
    CHECK(cfg.p_fa == 0.1);
    CHECK(cfg.split.train_frac == 0.7);
    CHECK(cfg.split.test_frac == 0.1);
    CHECK(cfg.h_steps == 25);
    CHECK_FALSE(cfg.h_log);
    CHECK(cfg.grid_size == 64);
    CHECK(cfg.seed == 99);
    CHECK(cfg.pt.mwi_ms == 120.0);
    // untouched keys keep their defaults
    CHECK(cfg.trials == 20);
    CHECK(cfg.margin == 3.0);
    CHECK(cfg.norm_mode == bradykde::NormMode::zscore);

    check_throws_containing<std::invalid_argument>(
        [] { bradykde::parse_config("p_fa = 0.05\nwat = 9\n"); }, "line 2");
    check_throws_containing<std::invalid_argument>(
        [] { bradykde::parse_config("p_fa = 0.05\nwat = 9\n"); }, "unknown key 'wat'");
    check_throws_containing<std::invalid_argument>(
        [] { bradykde::parse_config("p_fa 0.05\n"); }, "expected key = value");
    CHECK_THROWS_AS(bradykde::parse_config("p_fa = 2\n"), std::invalid_argument);
    CHECK_THROWS_AS(bradykde::parse_config("split = 0.5,0.5\n"), std::invalid_argument);
    CHECK_THROWS_AS(bradykde::parse_config("grid_size = 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(bradykde::parse_config("h_scale = cubic\n"), std::invalid_argument);
}

TEST_CASE("evaluate reports are structured and byte-identical across runs") {
    TempDir tmp;

    bradykde::SyntheticSpec spec;
    spec.components = {{1.0, 100.0, 1.0, 5.0, 0.2}};
    spec.n_points = 150;
    spec.n_anomalies = 6;
    const auto data = bradykde::generate_synthetic(spec, 17);
    const auto peaks_path = tmp.path("peaks.csv");
    const auto labels_path = tmp.path("labels.txt");
    bradykde::write_peaks(peaks_path, data.peaks);
    bradykde::write_labels(labels_path, data.labels);

    bradykde::EvaluateJob job;
    job.peaks_path = peaks_path;
    job.truth_path = labels_path;
    job.specs = {{0.6, 0.2, 0.2}, {0.7, 0.2, 0.1}};
    job.trials = 3;
    job.base_seed = 11;
    job.opts.grid_size = 32;
    job.out_path = tmp.path("report_a.csv");
    const auto result = bradykde::run_evaluate(job);

    REQUIRE(result.records.size() == 6);
    const std::string report = slurp(job.out_path);
    const std::string header = "trial,seed,h,c_k,tp,fp,fn,tn,epe\n";
    CHECK(report.rfind(header, 0) == 0);
    CHECK(report.find("# split=0.6,0.2,0.2\n") != std::string::npos);
    CHECK(report.find("# split=0.7,0.2,0.1\n") != std::string::npos);
    CHECK(report.find("# split=0.6,0.2,0.2 mean_epe=") != std::string::npos);
    CHECK(report.find("# split=0.7,0.2,0.1 mean_epe=") != std::string::npos);
    // one data row per trial: 6 rows + header + 2 section + 2 summary lines
    std::size_t newlines = 0;
    for (char c : report) newlines += (c == '\n');
    CHECK(newlines == 11);

    job.out_path = tmp.path("report_b.csv");
    bradykde::run_evaluate(job);
    CHECK(slurp(job.out_path) == report);

    // misaligned truth is rejected
    bradykde::write_labels(labels_path, {0, 1});
    CHECK_THROWS_AS(bradykde::run_evaluate(job), std::runtime_error);
}

TEST_CASE("evaluate derives labels from the onset rule when truth is absent") {
    TempDir tmp;
    bradykde::SyntheticSpec spec;
    spec.components = {{1.0, 5900.0, 1.0, 250.0, 0.15}};
    spec.n_points = 140;
    const auto data = bradykde::generate_synthetic(spec, 29);
    const auto peaks_path = tmp.path("peaks.csv");
    bradykde::write_peaks(peaks_path, data.peaks);

    bradykde::EvaluateJob job;
    job.peaks_path = peaks_path;
    job.specs = {{0.6, 0.2, 0.2}};
    job.trials = 2;
    job.base_seed = 5;
    job.opts.grid_size = 32;
    job.onset_offset = 5000.0;
    job.out_path = tmp.path("report.csv");
    const auto result = bradykde::run_evaluate(job);
    REQUIRE(result.records.size() == 2);
    for (const auto& rec : result.records) CHECK(rec.cm.total() == 28);
}
