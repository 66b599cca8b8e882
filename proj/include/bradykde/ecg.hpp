// ECG intake: header parsing, amplitude calibration, baseline-wander
// removal, and segmentation of fixed windows around annotated onsets.
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace bradykde {

struct EcgHeader {
    std::string name;
    std::size_t n_signals = 0;
    double fs = 0.0;    // Hz
    double gain = 0.0;  // ADC units per physical unit
    long long base = 0; // counter value of sample 0
};

struct EcgSignal {
    std::vector<double> samples;
    double fs = 0.0;
    bool calibrated = false;
};

struct Event {
    std::vector<double> samples;    // length pre + post + 1
    std::size_t onset_offset = 0;   // position of the onset within the window (== pre)
};

struct SegmentResult {
    std::vector<Event> events;
    std::vector<std::size_t> skipped;  // onsets without enough margin on either side
};

// Accepted header grammar (first two non-empty, non-comment lines):
//   line 1: <name> <n_signals> <fs>
//   line 2: <file> <fmt> <gain> ... base=<int>
// Anything malformed is rejected; gain must be positive (0 would mean an
// uncalibrated amplitude axis).
EcgHeader parse_header(const std::string& text);

// samples[i] = (raw[i] - base) / gain
EcgSignal calibrate(const std::vector<long long>& raw, const EcgHeader& header);

// Second-order 0.5 Hz high-pass run forward-backward (zero net phase).
// The input must be at least 6x the filter settling length.
EcgSignal remove_baseline_wander(const EcgSignal& sig, double cutoff_hz = 0.5);

// One window of pre samples before and post samples after each onset
// (window length pre+post+1).  Onsets too close to either edge are skipped
// and reported in SegmentResult::skipped.
SegmentResult segment_events(const EcgSignal& sig, const std::vector<std::size_t>& onsets,
                             std::size_t pre = 5000, std::size_t post = 2500);

}  // namespace bradykde
