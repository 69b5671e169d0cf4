// Acceptance gate: one self-checking scenario per shipped guarantee, each
// printing a single PASS/FAIL line. The face-recognition scenario is gated
// on the ORL-layout dataset and reports a distinct SKIP status when the
// data is absent. Exit status is the number of failed criteria (0 = green).
//
// Usage: acceptance [--skip-face | --only-face]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "semd/baseline.hpp"
#include "semd/bench.hpp"
#include "semd/emd.hpp"
#include "semd/metrics.hpp"
#include "semd/recognition.hpp"
#include "semd/serialize.hpp"
#include "semd/synth.hpp"
#include "semd/types.hpp"
#include "test_helpers.hpp"

using namespace semd;
using semd::test::add;
using semd::test::sine;

namespace {

volatile double g_sink = 0.0;

enum class Status { pass, fail, skip };

struct Outcome {
    Status status = Status::fail;
    std::string detail;
};

Outcome pass(std::string detail) { return {Status::pass, std::move(detail)}; }
Outcome fail(std::string detail) { return {Status::fail, std::move(detail)}; }

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

/// A deterministic "random" test signal: seeded white noise over a tone
/// and a slow trend, so every algorithm has work to do at any length.
Signal make_input(std::size_t n, std::uint64_t seed) {
    Signal x = white_noise(n, seed);
    add(x, sine(25.0 + static_cast<double>(seed % 40), n, 500.0));
    for (std::size_t i = 0; i < n; ++i)
        x[i] += 0.003 * static_cast<double>(i) - 1.5;
    return x;
}

MultiSignal make_multi_input(std::size_t n, std::size_t channels, std::uint64_t seed) {
    std::vector<Signal> cols;
    for (std::size_t j = 0; j < channels; ++j)
        cols.push_back(make_input(n, derive_seed(seed, j)));
    return MultiSignal::from_channels(cols);
}

// --- criterion 1: reconstruction identity --------------------------------

Outcome criterion_reconstruction() {
    const Algorithm algos[] = {Algorithm::Emd, Algorithm::Eemd, Algorithm::Ceemdan};
    const SiftConfig cfg;
    double worst = 0.0;
    std::string worst_case = "none";

    for (int i = 0; i < 100; ++i) {
        const std::size_t n = 80 + static_cast<std::size_t>((i * 13) % 180);
        const Algorithm algo = algos[i % 3];
        const int pipeline = (i / 3) % 3;  // 0 direct, 1 serial, 2 slicewise
        const EnsembleConfig ens{0.2, 6, derive_seed(5000, i)};

        double err = 0.0;
        const char* pname = "direct";
        if (pipeline == 0) {
            const Signal x = make_input(n, 1000 + i);
            Decomposition dec;
            if (algo == Algorithm::Emd) dec = emd(x, cfg);
            else if (algo == Algorithm::Eemd) dec = eemd(x, cfg, ens);
            else dec = ceemdan(x, cfg, ens);
            err = reconstruction_error(x, dec);
        } else {
            const std::size_t channels = 1 + i % 4;
            const MultiSignal x = make_multi_input(n, channels, 2000 + i);
            const std::size_t d = std::max<std::size_t>(1, n / 5);
            const ImfTensor t = pipeline == 1
                                    ? serial_decompose(x, d, algo, cfg, ens)
                                    : slicewise_decompose(x, algo, cfg, ens);
            pname = pipeline == 1 ? "serial" : "slicewise";
            err = reconstruction_error(x, t);
        }
        if (!(err <= 1e-8)) {
            return fail(fmt("case %d (%s/%s, n=%zu): relative error %.3e > 1e-8", i,
                            algorithm_name(algo).c_str(), pname, n, err));
        }
        if (err > worst) {
            worst = err;
            worst_case = fmt("%s/%s n=%zu", algorithm_name(algo).c_str(), pname, n);
        }
    }
    return pass(fmt("100 inputs x 9 algo/pipeline combos, worst relative error %.2e (%s)",
                    worst, worst_case.c_str()));
}

// --- criterion 2: concatenation oracle equivalence ------------------------

Outcome criterion_concat_oracle() {
    std::mt19937_64 rng(20260816);
    int cases = 0;
    for (int c = 0; c < 1200; ++c) {
        const std::size_t m = 4 + rng() % 197;   // 4..200
        const std::size_t n = 1 + rng() % 20;    // 1..20
        const std::size_t d = 1 + rng() % m;     // 1..M
        MultiSignal x(m, n);
        const Signal w = white_noise(m * n, rng());
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < m; ++i) x(i, j) = w[j * m + i];

        const Signal fast = concatenate(x, d);
        const Signal naive = concatenate_naive(x, d);
        if (fast.size() != m * n + d * (n - 1))
            return fail(fmt("length law broken at M=%zu N=%zu D=%zu: got %zu", m, n, d,
                            fast.size()));
        if (fast.size() != naive.size() ||
            !std::equal(fast.begin(), fast.end(), naive.begin()))
            return fail(fmt("fast != naive at M=%zu N=%zu D=%zu", m, n, d));
        ++cases;
    }
    return pass(fmt("%d random cases bit-exact vs the naive oracle, length law MN+DN-D held",
                    cases));
}

// --- criterion 3: round-trip ----------------------------------------------

Outcome criterion_round_trip() {
    std::mt19937_64 rng(77);
    for (int c = 0; c < 300; ++c) {
        const std::size_t m = 4 + rng() % 80;
        const std::size_t n = 1 + rng() % 8;
        const std::size_t d = 1 + rng() % m;
        const MultiSignal x = make_multi_input(m, n, rng());

        Signal s = concatenate(x, d);
        // Poison every transition sample: none of them may reach the output.
        for (std::size_t j = 0; j + 1 < n; ++j)
            for (std::size_t t = 0; t < d; ++t) s[j * (m + d) + m + t] = 999.0;

        const ImfTensor t = deconcatenate({s}, m, n, d);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < m; ++i)
                if (t(i, j, 0) != x(i, j))
                    return fail(fmt("round trip not bit-exact at M=%zu N=%zu D=%zu "
                                    "(i=%zu j=%zu)", m, n, d, i, j));
    }
    return pass("300 random cases round-trip bit-exactly with poisoned transitions");
}

// --- criterion 4: frequency recovery ---------------------------------------

Signal channel_mode(const ImfTensor& t, std::size_t j, std::size_t k) {
    Signal s(t.rows());
    for (std::size_t i = 0; i < t.rows(); ++i) s[i] = t(i, j, k);
    return s;
}

Outcome criterion_frequency_recovery() {
    const PickupMask mask = PickupMask::standard();
    const MultiSignal x = multivariate_sinusoids(mask, 1000, 1000.0);
    const ImfTensor t = serial_decompose(x, 50, Algorithm::Emd);
    const double bin = 1000.0 / 1000.0;  // DFT resolution in Hz

    for (std::size_t j = 0; j < PickupMask::variates; ++j) {
        if (mask.mask[0][j]) {  // variates sounding f1 = 32 Hz
            const double f = dominant_frequency(channel_mode(t, j, 0), 1000.0);
            if (std::abs(f - 32.0) > bin)
                return fail(fmt("variate %s IMF1 dominant frequency %.1f Hz, want 32 +- 1",
                                PickupMask::names()[j], f));
        }
        bool found8 = false;  // the common 8 Hz tone must surface somewhere
        for (std::size_t k = 0; k + 1 < t.modes() && !found8; ++k)
            found8 = std::abs(dominant_frequency(channel_mode(t, j, k), 1000.0) - 8.0) <= bin;
        if (!found8)
            return fail(fmt("no IMF of variate %s is dominated by the common 8 Hz tone",
                            PickupMask::names()[j]));
    }
    return pass("IMF1 of every 32 Hz variate peaks at 32 +- 1 Hz; "
                "8 Hz mode surfaces in every variate (D=50)");
}

// --- criterion 5: serial vs slicewise agreement -----------------------------

Outcome criterion_serial_vs_slicewise() {
    const MultiSignal x = multivariate_sinusoids(PickupMask::standard(), 1000, 1000.0);
    const ImfTensor serial = serial_decompose(x, 50, Algorithm::Emd);
    const ImfTensor sliced = slicewise_decompose(x, Algorithm::Emd);
    const auto corr = mode_correlation(serial, sliced);

    double min1 = 1.0, min2 = 1.0;
    for (std::size_t j = 0; j < 6; ++j) {
        min1 = std::min(min1, corr[0][j]);
        min2 = std::min(min2, corr[1][j]);
    }
    if (min1 < 0.9 || min2 < 0.7)
        return fail(fmt("per-variate Pearson r: min IMF1 %.3f (need >= 0.9), "
                        "min IMF2 %.3f (need >= 0.7)", min1, min2));
    return pass(fmt("per-variate Pearson r: IMF1 >= %.3f, IMF2 >= %.3f", min1, min2));
}

// --- criterion 6: timing ordering -------------------------------------------

double median_of(const BenchReport& report, const std::string& scenario,
                 const std::string& algorithm) {
    for (const BenchRow& row : report.rows)
        if (row.scenario == scenario && row.algorithm == algorithm)
            return row.stats.median;
    return -1.0;
}

Outcome criterion_timing_order() {
    BenchOptions opts;
    opts.reps = 10;
    opts.nr = 20;  // scaled down from the production default of 100 to fit the budget
    opts.seed = 1;
    const BenchReport r = bench_suite({"multivariate-algos", "ati-algos"}, opts);

    const double mv_emd = median_of(r, "multivariate-algos", "serial-emd");
    const double mv_eemd = median_of(r, "multivariate-algos", "serial-eemd");
    const double mv_ce = median_of(r, "multivariate-algos", "serial-ceemdan");
    const double ati_emd = median_of(r, "ati-algos", "serial-emd");
    const double ati_eemd = median_of(r, "ati-algos", "serial-eemd");
    const double ati_ce = median_of(r, "ati-algos", "serial-ceemdan");
    const double ati_sw_eemd = median_of(r, "ati-algos", "slicewise-eemd");

    const std::string detail = fmt(
        "medians ms (nr=20, 10 reps): multivariate emd/eemd/ceemdan %.2f/%.2f/%.2f; "
        "ati %.2f/%.2f/%.2f; ati slicewise-eemd %.2f",
        mv_emd, mv_eemd, mv_ce, ati_emd, ati_eemd, ati_ce, ati_sw_eemd);

    if (!(mv_emd < mv_eemd && mv_eemd < mv_ce))
        return fail("multivariate ordering emd < eemd < ceemdan broken; " + detail);
    if (!(ati_emd < ati_eemd && ati_eemd < ati_ce))
        return fail("ati ordering emd < eemd < ceemdan broken; " + detail);
    if (!(ati_eemd <= ati_sw_eemd / 1.2))
        return fail("serial-EEMD not >= 1.2x faster than slicewise-EEMD on ati; " + detail);
    return pass(detail);
}

// --- criterion 7: D-sweep interior minimum ----------------------------------

Outcome criterion_d_sweep() {
    const MultiSignal x = multivariate_sinusoids(PickupMask::standard(), 1000, 1000.0);
    const std::size_t ds[3] = {1, 50, 500};
    std::vector<double> samples[3];

    // The three medians sit a few percent apart at sub-millisecond scale,
    // within single-run jitter. Interleave the measurements round-robin so
    // clock-speed drift hits all three equally, and take more samples than
    // the sub-second budget forces us to.
    auto once = [&](std::size_t d) {
        const auto t0 = std::chrono::steady_clock::now();
        const ImfTensor t = serial_decompose(x, d, Algorithm::Emd);
        g_sink = g_sink + t(0, 0, 0);
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    };
    for (std::size_t i = 0; i < 3; ++i) once(ds[i]);  // warm-up round, excluded
    for (int rep = 0; rep < 50; ++rep)
        for (std::size_t i = 0; i < 3; ++i) samples[i].push_back(once(ds[i]));

    const double m1 = quartile_stats(samples[0]).median;
    const double m50 = quartile_stats(samples[1]).median;
    const double m500 = quartile_stats(samples[2]).median;
    const std::string detail = fmt(
        "serial-EMD median ms at D=1/50/500: %.3f / %.3f / %.3f (50 interleaved rounds)", m1,
        m50, m500);
    if (!(m50 <= m1 && m50 <= m500)) return fail("D=50 is not the interior minimum; " + detail);
    return pass(detail);
}

// --- criterion 8: noise capture ---------------------------------------------

Outcome criterion_noise_capture() {
    const AtiImages a = make_ati();
    const Image noisy = add_speckle(a.ati, -6.0, 7);
    const ImfTensor t = serial_decompose(image_to_multisignal(noisy), 20, Algorithm::Emd);

    Image denoised(noisy.rows(), noisy.cols());
    for (std::size_t k = 2; k < t.modes(); ++k)  // drop the first two noise-bearing modes
        for (std::size_t c = 0; c < noisy.cols(); ++c)
            for (std::size_t r = 0; r < noisy.rows(); ++r) denoised(r, c) += t(r, c, k);

    const double r_den = pearson(a.ati, denoised);
    const double r_noisy = pearson(a.ati, noisy);
    if (!(r_den > r_noisy))
        return fail(fmt("r(clean, modes 3..K) %.4f not above r(clean, noisy) %.4f", r_den,
                        r_noisy));
    return pass(fmt("-6 dB speckle: r(clean, modes 3..K) %.4f > r(clean, noisy) %.4f",
                    r_den, r_noisy));
}

// --- criterion 9: ensemble degeneracy ---------------------------------------

double max_mode_diff(const Decomposition& a, const Decomposition& b) {
    if (a.imfs.size() != b.imfs.size()) return 1.0;
    double worst = 0.0;
    for (std::size_t k = 0; k < a.imfs.size(); ++k)
        for (std::size_t i = 0; i < a.imfs[k].size(); ++i)
            worst = std::max(worst, std::abs(a.imfs[k][i] - b.imfs[k][i]));
    for (std::size_t i = 0; i < a.residue.size(); ++i)
        worst = std::max(worst, std::abs(a.residue[i] - b.residue[i]));
    return worst;
}

Outcome criterion_degeneracy() {
    double worst = 0.0;
    for (int c = 0; c < 5; ++c) {
        const Signal x = make_input(150 + 40 * c, 9000 + c);
        const Decomposition plain = emd(x);
        worst = std::max(worst, max_mode_diff(plain, eemd(x, {}, {0.0, 10, 42})));
        worst = std::max(worst, max_mode_diff(plain, ceemdan(x, {}, {0.0, 7, 42})));
    }
    if (!(worst <= 1e-10))
        return fail(fmt("nstd=0 deviates from plain EMD by %.3e (allowed 1e-10)", worst));
    return pass(fmt("nstd=0 EEMD and CEEMDAN match plain EMD within %.1e", worst));
}

// --- criterion 10: face recognition (dataset-gated) --------------------------

Outcome criterion_face_recognition() {
    FaceDataset ds;
    try {
        ds = load_face_dataset(face_dataset_root());
    } catch (const DatasetNotFound&) {
        return {Status::skip,
                "dataset not found (point SERIAL_EMD_DATASET at an ORL-layout root)"};
    }

    const FaceFeatureBank bank =
        build_feature_bank(ds, Algorithm::Emd, 20, {}, {}, -6.0, 0);
    const CvResult cv = knn_cv(bank.features(2, 7), ds.labels, 10, 1, 1);

    const HeatmapResult grid = heatmap_sweep(bank, ds.labels, 10, 1, 1);
    std::size_t defined = 0, best_f = 0, best_l = 0;
    double best = -1.0;
    for (std::size_t f = 1; f <= HeatmapResult::extent; ++f)
        for (std::size_t l = f; l <= HeatmapResult::extent; ++l) {
            const double v = grid.mean[f - 1][l - 1];
            if (std::isnan(v)) continue;
            ++defined;
            if (v > best) { best = v; best_f = f; best_l = l; }
        }

    const std::string detail =
        fmt("serial-EMD range 2..7, 1-NN, 10-fold: mean accuracy %.2f%% (std %.2f%%); "
            "heatmap %zu defined cells, argmax range %zu..%zu at %.2f%%",
            100.0 * cv.mean_accuracy, 100.0 * cv.std_accuracy, defined, best_f, best_l,
            100.0 * best);

    if (cv.mean_accuracy < 0.85) return fail("mean accuracy below 85%; " + detail);
    if (defined != 55) return fail("heatmap does not expose exactly 55 ranges; " + detail);
    if (best_l < 2) return fail("heatmap argmax stuck at the pure-IMF1 range; " + detail);
    return pass(detail);
}

}  // namespace

int main(int argc, char** argv) {
    bool skip_face = false, only_face = false;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--skip-face") == 0) skip_face = true;
        else if (std::strcmp(argv[i], "--only-face") == 0) only_face = true;
        else {
            std::fprintf(stderr, "usage: %s [--skip-face | --only-face]\n", argv[0]);
            return 2;
        }
    }

    int failures = 0;
    auto run = [&failures](int num, const char* title, Outcome (*fn)()) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = fail(fmt("unexpected exception: %s", e.what()));
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const char* tag = o.status == Status::pass ? "PASS"
                          : o.status == Status::skip ? "SKIP" : "FAIL";
        std::printf("%s criterion %d (%s): %s [%.1f s]\n", tag, num, title,
                    o.detail.c_str(), secs);
        std::fflush(stdout);
        if (o.status == Status::fail) ++failures;
    };

    if (!only_face) {
        run(1, "reconstruction identity", criterion_reconstruction);
        run(2, "concatenation oracle equivalence", criterion_concat_oracle);
        run(3, "round-trip without transition leaks", criterion_round_trip);
        run(4, "frequency recovery", criterion_frequency_recovery);
        run(5, "serial vs slicewise agreement", criterion_serial_vs_slicewise);
        run(6, "timing ordering", criterion_timing_order);
        run(7, "D-sweep interior minimum", criterion_d_sweep);
        run(8, "speckle captured by leading modes", criterion_noise_capture);
        run(9, "ensemble degeneracy at nstd=0", criterion_degeneracy);
    }
    if (!skip_face) run(10, "face recognition", criterion_face_recognition);

    if (failures > 0) std::printf("%d criterion(s) FAILED\n", failures);
    return failures;
}
