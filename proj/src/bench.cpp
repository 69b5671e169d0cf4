#include "semd/bench.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "semd/baseline.hpp"
#include "semd/emd.hpp"
#include "semd/recognition.hpp"
#include "semd/serialize.hpp"
#include "semd/synth.hpp"

namespace semd {

std::vector<double> time_repeated(const std::function<void()>& task, int reps) {
    if (reps < 1) throw InvalidInput("time_repeated: reps must be at least 1");
    if (!task) throw InvalidInput("time_repeated: empty task");

    task();  // warm-up, excluded

    std::vector<double> ms;
    ms.reserve(static_cast<std::size_t>(reps));
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        task();
        const auto t1 = std::chrono::steady_clock::now();
        const double elapsed =
            std::chrono::duration<double, std::milli>(t1 - t0).count();
        ms.push_back(std::max(elapsed, 1e-6));  // clock granularity floor
    }
    return ms;
}

QuartileSummary quartile_stats(std::vector<double> samples) {
    if (samples.empty()) throw InvalidInput("quartile_stats: empty sample");
    std::sort(samples.begin(), samples.end());

    const auto quantile = [&samples](double p) {
        const double h = p * static_cast<double>(samples.size() - 1);
        const std::size_t lo = static_cast<std::size_t>(h);
        const double frac = h - static_cast<double>(lo);
        if (lo + 1 >= samples.size()) return samples.back();
        return samples[lo] + frac * (samples[lo + 1] - samples[lo]);
    };

    QuartileSummary s;
    s.n = samples.size();
    s.q1 = quantile(0.25);
    s.median = quantile(0.50);
    s.q3 = quantile(0.75);
    s.iqr = s.q3 - s.q1;
    const double lo_fence = s.q1 - 1.5 * s.iqr;
    const double hi_fence = s.q3 + 1.5 * s.iqr;
    for (double v : samples)
        if (v < lo_fence || v > hi_fence) s.outliers.push_back(v);
    return s;
}

std::string canonical_scenario(const std::string& id) {
    std::string s;
    for (char c : id) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (s == "multivariate-algos") return "multivariate-algos";
    if (s == "multivariate-d-sweep" || s == "d-sweep") return "multivariate-D-sweep";
    if (s == "ati-algos") return "ati-algos";
    if (s == "face-per-image") return "face-per-image";
    throw InvalidInput("unknown scenario '" + id +
                       "' (expected multivariate-algos, multivariate-D-sweep, "
                       "ati-algos, or face-per-image)");
}

namespace {

// Keeps results observably used so the optimizer cannot drop a timed call.
volatile double g_bench_sink = 0.0;

void consume(const ImfTensor& t) {
    g_bench_sink = g_bench_sink + t.data().front() + t.data().back();
}

constexpr Algorithm kAlgos[] = {Algorithm::Emd, Algorithm::Eemd, Algorithm::Ceemdan};

/// Time serial vs slicewise for every algorithm on one multi-signal.
void run_algo_comparison(const std::string& scenario, const MultiSignal& data, std::size_t d,
                         const BenchOptions& opts, BenchReport& report) {
    const SiftConfig cfg;
    const EnsembleConfig ens{opts.nstd, opts.nr, opts.seed};
    for (Algorithm algo : kAlgos) {
        const std::string base = algorithm_name(algo);
        const auto serial = time_repeated(
            [&] { consume(serial_decompose(data, d, algo, cfg, ens)); }, opts.reps);
        report.rows.push_back({scenario, "serial-" + base, d, quartile_stats(serial)});

        const auto slicewise = time_repeated(
            [&] { consume(slicewise_decompose(data, algo, cfg, ens)); }, opts.reps);
        report.rows.push_back({scenario, "slicewise-" + base, d, quartile_stats(slicewise)});

        const double serial_med = report.rows[report.rows.size() - 2].stats.median;
        const double slice_med = report.rows.back().stats.median;
        report.speedups.push_back({scenario, base, d, slice_med / serial_med});
    }
}

void run_multivariate_algos(const BenchOptions& opts, BenchReport& report) {
    const MultiSignal data = multivariate_sinusoids(PickupMask::standard());
    run_algo_comparison("multivariate-algos", data, 50, opts, report);
}

void run_d_sweep(const BenchOptions& opts, BenchReport& report) {
    const MultiSignal data = multivariate_sinusoids(PickupMask::standard());
    const SiftConfig cfg;
    const EnsembleConfig ens{opts.nstd, opts.nr, opts.seed};
    constexpr std::size_t kGrid[] = {1, 5, 10, 20, 50, 100, 200, 500};
    for (Algorithm algo : kAlgos) {
        const std::string name = "serial-" + algorithm_name(algo);
        for (std::size_t d : kGrid) {
            const auto samples = time_repeated(
                [&] { consume(serial_decompose(data, d, algo, cfg, ens)); }, opts.reps);
            report.rows.push_back({"multivariate-D-sweep", name, d, quartile_stats(samples)});
        }
    }
}

void run_ati_algos(const BenchOptions& opts, BenchReport& report) {
    const MultiSignal data = image_to_multisignal(make_ati().ati);
    run_algo_comparison("ati-algos", data, 20, opts, report);
}

void run_face_per_image(const BenchOptions& opts, BenchReport& report) {
    const FaceDataset ds = load_face_dataset(face_dataset_root(opts.dataset_root));
    const Image noisy = add_speckle(ds.images.front(), -6.0, derive_seed(opts.seed, 0));
    const MultiSignal data = image_to_multisignal(noisy);
    const SiftConfig cfg;
    const EnsembleConfig ens{opts.nstd, opts.nr, opts.seed};
    const std::size_t d = 20;  // interval recommended for 92x112 faces
    for (Algorithm algo : kAlgos) {
        const auto samples = time_repeated(
            [&] { consume(serial_decompose(data, d, algo, cfg, ens)); }, opts.reps);
        report.rows.push_back(
            {"face-per-image", "serial-" + algorithm_name(algo), d, quartile_stats(samples)});
    }
}

}  // namespace

BenchReport bench_suite(const std::vector<std::string>& scenarios, const BenchOptions& opts) {
    if (scenarios.empty()) throw InvalidInput("bench_suite: no scenarios given");
    if (opts.reps < 1) throw InvalidInput("bench_suite: reps must be at least 1");

    BenchReport report;
    report.options = opts;
    for (const std::string& id : scenarios) {
        const std::string scenario = canonical_scenario(id);
        if (scenario == "multivariate-algos") run_multivariate_algos(opts, report);
        else if (scenario == "multivariate-D-sweep") run_d_sweep(opts, report);
        else if (scenario == "ati-algos") run_ati_algos(opts, report);
        else run_face_per_image(opts, report);
    }
    return report;
}

std::string bench_json(const BenchReport& report) {
    nlohmann::json j;
    j["config"] = {{"reps", report.options.reps},
                   {"nstd", report.options.nstd},
                   {"nr", report.options.nr},
                   {"seed", report.options.seed}};
    j["results"] = nlohmann::json::array();
    for (const BenchRow& row : report.rows) {
        j["results"].push_back({{"scenario", row.scenario},
                                {"algorithm", row.algorithm},
                                {"D", row.d},
                                {"n", row.stats.n},
                                {"q1_ms", row.stats.q1},
                                {"median_ms", row.stats.median},
                                {"q3_ms", row.stats.q3},
                                {"iqr_ms", row.stats.iqr},
                                {"outliers_ms", row.stats.outliers}});
    }
    j["speedups"] = nlohmann::json::array();
    for (const SpeedupRow& s : report.speedups) {
        j["speedups"].push_back({{"scenario", s.scenario},
                                 {"algorithm", s.algorithm},
                                 {"D", s.d},
                                 {"median_ratio", s.median_ratio}});
    }
    return j.dump(2);
}

std::string bench_csv(const BenchReport& report) {
    std::ostringstream out;
    out << "scenario,algorithm,D,n,q1_ms,median_ms,q3_ms,iqr_ms,outliers_ms\n";
    char buf[40];
    const auto num = [&buf](double v) {
        std::snprintf(buf, sizeof buf, "%.6g", v);
        return std::string(buf);
    };
    for (const BenchRow& row : report.rows) {
        out << row.scenario << ',' << row.algorithm << ',' << row.d << ',' << row.stats.n << ','
            << num(row.stats.q1) << ',' << num(row.stats.median) << ',' << num(row.stats.q3)
            << ',' << num(row.stats.iqr) << ',';
        for (std::size_t i = 0; i < row.stats.outliers.size(); ++i)
            out << (i ? ";" : "") << num(row.stats.outliers[i]);
        out << '\n';
    }
    return out.str();
}

}  // namespace semd
