#include "bradykde/ecg.hpp"

#include <sstream>
#include <stdexcept>

#include "bradykde/dsp.hpp"

namespace bradykde {

namespace {

// First two non-empty lines that are not comments ('#').
std::vector<std::string> header_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (lines.size() < 2 && std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t i = line.find_first_not_of(" \t");
        if (i == std::string::npos || line[i] == '#') continue;
        lines.push_back(line);
    }
    return lines;
}

std::vector<std::string> tokens(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string t;
    while (in >> t) out.push_back(t);
    return out;
}

double parse_positive_real(const std::string& s, const char* what) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("header: cannot parse ") + what + " from '" + s + "'");
    }
    if (pos != s.size() || !(v > 0.0))
        throw std::invalid_argument(std::string("header: ") + what + " must be a positive number, got '" + s + "'");
    return v;
}

long long parse_int(const std::string& s, const char* what) {
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("header: cannot parse ") + what + " from '" + s + "'");
    }
    if (pos != s.size())
        throw std::invalid_argument(std::string("header: ") + what + " must be an integer, got '" + s + "'");
    return v;
}

}  // namespace

EcgHeader parse_header(const std::string& text) {
    const auto lines = header_lines(text);
    if (lines.size() < 2) throw std::invalid_argument("header: expected two lines (record and signal)");

    const auto rec = tokens(lines[0]);
    if (rec.size() < 3) throw std::invalid_argument("header: record line needs <name> <n_signals> <fs>");
    EcgHeader h;
    h.name = rec[0];
    const long long ns = parse_int(rec[1], "signal count");
    if (ns < 1) throw std::invalid_argument("header: signal count must be positive");
    h.n_signals = static_cast<std::size_t>(ns);
    h.fs = parse_positive_real(rec[2], "sampling rate");

    const auto sig = tokens(lines[1]);
    if (sig.size() < 3) throw std::invalid_argument("header: signal line needs <file> <fmt> <gain> ... base=<int>");
    h.gain = parse_positive_real(sig[2], "gain");

    bool have_base = false;
    for (std::size_t i = 3; i < sig.size(); ++i) {
        if (sig[i].rfind("base=", 0) == 0) {
            h.base = parse_int(sig[i].substr(5), "base");
            have_base = true;
            break;
        }
    }
    if (!have_base) throw std::invalid_argument("header: signal line is missing base=<int>");
    return h;
}

EcgSignal calibrate(const std::vector<long long>& raw, const EcgHeader& header) {
    if (raw.empty()) throw std::invalid_argument("calibrate: raw signal is empty");
    if (!(header.gain > 0.0)) throw std::invalid_argument("calibrate: gain must be positive");
    EcgSignal out;
    out.fs = header.fs;
    out.calibrated = true;
    out.samples.reserve(raw.size());
    const double base = static_cast<double>(header.base);
    for (long long v : raw) out.samples.push_back((static_cast<double>(v) - base) / header.gain);
    return out;
}

EcgSignal remove_baseline_wander(const EcgSignal& sig, double cutoff_hz) {
    if (sig.samples.empty()) throw std::invalid_argument("baseline removal: signal is empty");
    if (!(sig.fs > 2.0 * cutoff_hz))
        throw std::invalid_argument("baseline removal: sampling rate must exceed twice the cutoff");
    const std::size_t settle = settle_length(cutoff_hz, sig.fs);
    if (sig.samples.size() < 6 * settle)
        throw std::invalid_argument("baseline removal: signal shorter than 6x the filter settling length");
    EcgSignal out;
    out.fs = sig.fs;
    out.calibrated = sig.calibrated;
    out.samples = filtfilt(design_highpass(cutoff_hz, sig.fs), sig.samples);
    return out;
}

SegmentResult segment_events(const EcgSignal& sig, const std::vector<std::size_t>& onsets,
                             std::size_t pre, std::size_t post) {
    for (std::size_t i = 1; i < onsets.size(); ++i) {
        if (onsets[i] < onsets[i - 1])
            throw std::invalid_argument("segment_events: onsets must be sorted ascending");
    }
    SegmentResult result;
    const std::size_t n = sig.samples.size();
    for (std::size_t onset : onsets) {
        if (onset < pre || onset + post >= n) {
            result.skipped.push_back(onset);
            continue;
        }
        Event ev;
        ev.onset_offset = pre;
        ev.samples.assign(sig.samples.begin() + static_cast<std::ptrdiff_t>(onset - pre),
                          sig.samples.begin() + static_cast<std::ptrdiff_t>(onset + post + 1));
        result.events.push_back(std::move(ev));
    }
    return result;
}

}  // namespace bradykde
