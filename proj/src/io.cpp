#include "bradykde/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bradykde {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Splits into lines, dropping a trailing '\r' so CRLF and LF parse the same.
std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            if (!cur.empty() && cur.back() == '\r') cur.pop_back();
            lines.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) {
        if (cur.back() == '\r') cur.pop_back();
        lines.push_back(cur);
    }
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

[[noreturn]] void fail_at(const std::string& path, std::size_t lineno, const std::string& what) {
    throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + what);
}

double parse_double_or_fail(const std::string& s, const std::string& path, std::size_t lineno,
                            const char* what) {
    const char* begin = s.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || end != begin + s.size())
        fail_at(path, lineno, std::string("cannot parse ") + what + " from '" + s + "'");
    return v;
}

long long parse_ll_or_fail(const std::string& s, const std::string& path, std::size_t lineno,
                           const char* what) {
    const char* begin = s.c_str();
    char* end = nullptr;
    const long long v = std::strtoll(begin, &end, 10);
    if (end == begin || end != begin + s.size())
        fail_at(path, lineno, std::string("cannot parse ") + what + " from '" + s + "'");
    return v;
}

std::string fmt_split(const SplitSpec& s) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%g,%g,%g", s.train_frac, s.val_frac, s.test_frac);
    return buf;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) return buf;
    }
    return buf;
}

void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write failed: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

std::vector<PeakRecord> read_peaks(const std::string& path) {
    const auto lines = split_lines(read_file(path));
    if (lines.empty() || lines[0] != "event_id,t_sample,amplitude")
        fail_at(path, 1, "expected header 'event_id,t_sample,amplitude'");
    std::vector<PeakRecord> peaks;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto f = split_csv(lines[i]);
        if (f.size() != 3) fail_at(path, i + 1, "expected 3 comma-separated fields");
        PeakRecord pk;
        pk.event_id = parse_ll_or_fail(f[0], path, i + 1, "event id");
        pk.t = parse_double_or_fail(f[1], path, i + 1, "t_sample");
        pk.r = parse_double_or_fail(f[2], path, i + 1, "amplitude");
        peaks.push_back(pk);
    }
    return peaks;
}

void write_peaks(const std::string& path, const std::vector<PeakRecord>& peaks) {
    std::ostringstream out;
    out << "event_id,t_sample,amplitude\n";
    for (const PeakRecord& pk : peaks)
        out << pk.event_id << ',' << format_double(pk.t) << ',' << format_double(pk.r) << '\n';
    atomic_write(path, out.str());
}

std::vector<int> read_labels(const std::string& path) {
    const auto lines = split_lines(read_file(path));
    std::vector<int> labels;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const long long v = parse_ll_or_fail(lines[i], path, i + 1, "label");
        if (v != 0 && v != 1) fail_at(path, i + 1, "labels must be 0 or 1");
        labels.push_back(static_cast<int>(v));
    }
    return labels;
}

void write_labels(const std::string& path, const std::vector<int>& labels) {
    std::ostringstream out;
    for (int v : labels) out << v << '\n';
    atomic_write(path, out.str());
}

std::vector<double> read_signal(const std::string& path) {
    const auto lines = split_lines(read_file(path));
    std::vector<double> samples;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        samples.push_back(parse_double_or_fail(lines[i], path, i + 1, "sample"));
    }
    if (samples.empty()) throw std::runtime_error(path + ": signal file has no samples");
    return samples;
}

std::vector<long long> read_int_signal(const std::string& path) {
    const auto lines = split_lines(read_file(path));
    std::vector<long long> samples;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        samples.push_back(parse_ll_or_fail(lines[i], path, i + 1, "raw sample"));
    }
    if (samples.empty()) throw std::runtime_error(path + ": signal file has no samples");
    return samples;
}

void write_signal(const std::string& path, const std::vector<double>& samples) {
    std::ostringstream out;
    for (double v : samples) out << format_double(v) << '\n';
    atomic_write(path, out.str());
}

std::vector<std::size_t> read_onsets(const std::string& path) {
    const auto lines = split_lines(read_file(path));
    std::vector<std::size_t> onsets;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const long long v = parse_ll_or_fail(lines[i], path, i + 1, "onset index");
        if (v < 0) fail_at(path, i + 1, "onset index must be nonnegative");
        onsets.push_back(static_cast<std::size_t>(v));
    }
    return onsets;
}

void write_grid_csv(const std::string& path, const DensityGrid& grid) {
    std::ostringstream out;
    out << "x,y,density\n";
    const std::size_t ny = grid.y_axis.size();
    for (std::size_t ix = 0; ix < grid.x_axis.size(); ++ix) {
        for (std::size_t iy = 0; iy < ny; ++iy) {
            out << format_double(grid.x_axis[ix]) << ',' << format_double(grid.y_axis[iy]) << ','
                << format_double(grid.values[ix * ny + iy]) << '\n';
        }
    }
    atomic_write(path, out.str());
}

void write_hull_csv(const std::string& path, const PredictionSet& set, double h,
                    const std::string& kernel_name) {
    std::ostringstream out;
    out << "# c_k=" << format_double(set.c_k) << " p_fa=" << format_double(set.p_fa)
        << " n=" << set.n_train << " h=" << format_double(h) << " kernel=" << kernel_name << '\n';
    out << "x,y\n";
    for (const Point2& p : set.hull)
        out << format_double(p.x) << ',' << format_double(p.y) << '\n';
    atomic_write(path, out.str());
}

HullFile read_hull_csv(const std::string& path) {
    const auto lines = split_lines(read_file(path));
    if (lines.size() < 2 || lines[0].rfind("# ", 0) != 0)
        fail_at(path, 1, "expected metadata line '# c_k=... p_fa=... n=... h=... kernel=...'");
    HullFile out;
    std::istringstream meta(lines[0].substr(2));
    std::string tok;
    bool have_ck = false, have_pfa = false, have_n = false, have_h = false, have_kernel = false;
    while (meta >> tok) {
        const std::size_t eq = tok.find('=');
        if (eq == std::string::npos) fail_at(path, 1, "malformed metadata token '" + tok + "'");
        const std::string key = tok.substr(0, eq);
        const std::string val = tok.substr(eq + 1);
        if (key == "c_k") { out.c_k = parse_double_or_fail(val, path, 1, "c_k"); have_ck = true; }
        else if (key == "p_fa") { out.p_fa = parse_double_or_fail(val, path, 1, "p_fa"); have_pfa = true; }
        else if (key == "n") { out.n = static_cast<std::size_t>(parse_ll_or_fail(val, path, 1, "n")); have_n = true; }
        else if (key == "h") { out.h = parse_double_or_fail(val, path, 1, "h"); have_h = true; }
        else if (key == "kernel") { out.kernel = val; have_kernel = true; }
        else fail_at(path, 1, "unknown metadata key '" + key + "'");
    }
    if (!(have_ck && have_pfa && have_n && have_h && have_kernel))
        fail_at(path, 1, "metadata line is missing required keys");
    if (lines[1] != "x,y") fail_at(path, 2, "expected header 'x,y'");
    for (std::size_t i = 2; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto f = split_csv(lines[i]);
        if (f.size() != 2) fail_at(path, i + 1, "expected 2 comma-separated fields");
        out.hull.push_back({parse_double_or_fail(f[0], path, i + 1, "x"),
                            parse_double_or_fail(f[1], path, i + 1, "y")});
    }
    return out;
}

void write_transform(const std::string& path, const NormTransform& tr) {
    std::ostringstream out;
    out << "fs = " << format_double(tr.fs) << '\n'
        << "mean_t = " << format_double(tr.mean_t) << '\n'
        << "sd_t = " << format_double(tr.sd_t) << '\n'
        << "mean_r = " << format_double(tr.mean_r) << '\n'
        << "sd_r = " << format_double(tr.sd_r) << '\n';
    atomic_write(path, out.str());
}

NormTransform read_transform(const std::string& path) {
    const auto lines = split_lines(read_file(path));
    NormTransform tr;
    bool seen[5] = {};
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].empty() || lines[i][0] == '#') continue;
        std::istringstream in(lines[i]);
        std::string key, eq, val;
        if (!(in >> key >> eq >> val) || eq != "=")
            fail_at(path, i + 1, "expected 'key = value'");
        const double v = parse_double_or_fail(val, path, i + 1, key.c_str());
        if (key == "fs") { tr.fs = v; seen[0] = true; }
        else if (key == "mean_t") { tr.mean_t = v; seen[1] = true; }
        else if (key == "sd_t") { tr.sd_t = v; seen[2] = true; }
        else if (key == "mean_r") { tr.mean_r = v; seen[3] = true; }
        else if (key == "sd_r") { tr.sd_r = v; seen[4] = true; }
        else fail_at(path, i + 1, "unknown transform key '" + key + "'");
    }
    for (bool s : seen) {
        if (!s) throw std::runtime_error(path + ": transform file is missing required keys");
    }
    if (!(tr.fs > 0.0) || !(tr.sd_t > 0.0) || !(tr.sd_r > 0.0))
        throw std::runtime_error(path + ": transform scales must be positive");
    return tr;
}

void write_cv_curve(const std::string& path, const CvCurve& curve) {
    std::ostringstream out;
    out << "h,score\n";
    for (const CvEntry& e : curve)
        out << format_double(e.h.front()) << ',' << format_double(e.score) << '\n';
    atomic_write(path, out.str());
}

MonteCarloResult run_evaluate(const EvaluateJob& job) {
    TrialData data;
    data.peaks = read_peaks(job.peaks_path);
    if (job.truth_path) {
        auto labels = read_labels(*job.truth_path);
        if (labels.size() != data.peaks.size())
            throw std::runtime_error("truth labels do not align with the peaks file");
        data.truth = std::move(labels);
    }
    data.fs = job.fs;
    data.onset_offset = job.onset_offset;

    const MonteCarloResult result = monte_carlo(data, job.specs, job.base_seed, job.trials, job.opts);

    std::ostringstream out;
    out << "trial,seed,h,c_k,tp,fp,fn,tn,epe\n";
    for (std::size_t s = 0; s < job.specs.size(); ++s) {
        out << "# split=" << fmt_split(job.specs[s]) << '\n';
        for (const TrialRecord& rec : result.records) {
            if (rec.spec_index != s) continue;
            out << rec.trial << ',' << rec.seed << ',' << format_double(rec.h) << ','
                << format_double(rec.c_k) << ',' << rec.cm.tp << ',' << rec.cm.fp << ','
                << rec.cm.fn << ',' << rec.cm.tn << ',' << format_double(rec.epe) << '\n';
        }
    }
    for (std::size_t s = 0; s < job.specs.size(); ++s)
        out << "# split=" << fmt_split(job.specs[s])
            << " mean_epe=" << format_double(result.mean_epe[s]) << '\n';
    atomic_write(job.out_path, out.str());
    return result;
}

}  // namespace bradykde
