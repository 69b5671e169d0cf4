#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "semd/types.hpp"

namespace semd {

/// Box-plot statistics of a timing sample, all in milliseconds.
/// Quartiles use linear interpolation on the sorted sample; outliers are
/// exactly the samples outside [q1 - 1.5*iqr, q3 + 1.5*iqr] (flagged, not
/// removed from the quartile computation).
struct QuartileSummary {
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double iqr = 0.0;
    std::vector<double> outliers;
    std::size_t n = 0;
};

/// Run `task` reps times on a monotonic clock after one excluded warm-up
/// run; returns the per-run durations in milliseconds.
std::vector<double> time_repeated(const std::function<void()>& task, int reps = 10);

/// Summarize a timing sample. Throws InvalidInput on empty input.
QuartileSummary quartile_stats(std::vector<double> samples);

/// One benchmark grid cell.
struct BenchRow {
    std::string scenario;
    std::string algorithm;  // e.g. "serial-eemd", "slicewise-emd"
    std::size_t d = 0;
    QuartileSummary stats;
};

/// Median-ratio speedup of the serial path over its slicewise counterpart.
struct SpeedupRow {
    std::string scenario;
    std::string algorithm;  // base algorithm, e.g. "eemd"
    std::size_t d = 0;
    double median_ratio = 0.0;  // slicewise median / serial median
};

struct BenchOptions {
    int reps = 10;
    double nstd = 0.2;
    int nr = 100;
    std::uint64_t seed = 0;
    /// Face-dataset root for the face-per-image scenario; empty means
    /// "use the SERIAL_EMD_DATASET environment variable".
    std::string dataset_root;
};

struct BenchReport {
    std::vector<BenchRow> rows;
    std::vector<SpeedupRow> speedups;
    BenchOptions options;
};

/// Canonical scenario id ("multivariate-algos", "multivariate-D-sweep",
/// "ati-algos", "face-per-image") from user input; accepts the "d-sweep"
/// shorthand and any letter case. Throws InvalidInput for unknown ids.
std::string canonical_scenario(const std::string& id);

/// Run the requested scenarios: every algorithm/D grid cell is timed
/// `reps` times (plus one warm-up) single-threaded. Decompositions are
/// seeded, so reruns produce identical outputs (timings aside). Throws
/// InvalidInput for unknown scenarios and DatasetNotFound when
/// face-per-image cannot find the face database.
BenchReport bench_suite(const std::vector<std::string>& scenarios,
                        const BenchOptions& opts = {});

/// Serialize a report to the JSON schema
/// {scenario, algorithm, D, n, q1_ms, median_ms, q3_ms, iqr_ms, outliers_ms[]}
/// per row, plus the run configuration and speedup ratios.
std::string bench_json(const BenchReport& report);

/// CSV with the same row columns (outliers ';'-joined inside one field).
std::string bench_csv(const BenchReport& report);

}  // namespace semd
