#include "semd/cli.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>

#include "CLI11.hpp"
#include "json.hpp"
#include "semd/baseline.hpp"
#include "semd/bench.hpp"
#include "semd/emd.hpp"
#include "semd/io.hpp"
#include "semd/metrics.hpp"
#include "semd/recognition.hpp"
#include "semd/serialize.hpp"
#include "semd/synth.hpp"

namespace fs = std::filesystem;

namespace semd {

namespace {

std::size_t resolve_d(const std::string& d_flag, std::size_t rows) {
    if (d_flag == "auto") return default_transition_length(rows);
    char* end = nullptr;
    const unsigned long v = std::strtoul(d_flag.c_str(), &end, 10);
    if (end != d_flag.c_str() + d_flag.size() || v == 0)
        throw InvalidInput("--d must be a positive integer or 'auto', got '" + d_flag + "'");
    return static_cast<std::size_t>(v);
}

bool has_extension(const std::string& path, const char* ext) {
    std::string e = fs::path(path).extension().string();
    for (char& c : e) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return e == ext;
}

std::string mode_name(std::size_t k, std::size_t modes) {
    if (k + 1 == modes) return "residue";
    char buf[16];
    std::snprintf(buf, sizeof buf, "imf_%02zu", k + 1);
    return buf;
}

void write_sidecar(const fs::path& path, std::size_t m, std::size_t n, std::size_t d,
                   std::size_t k, Algorithm algo, const EnsembleConfig& ens) {
    nlohmann::json j{{"M", m},
                     {"N", n},
                     {"D", d},
                     {"K", k},
                     {"algorithm", algorithm_name(algo)},
                     {"seed", ens.base_seed},
                     {"nstd", ens.nstd},
                     {"nr", ens.nr}};
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot open file for writing: " + path.string());
    out << j.dump(2) << '\n';
}

MultiSignal mode_slice(const ImfTensor& t, std::size_t k) {
    MultiSignal m(t.rows(), t.channels());
    for (std::size_t j = 0; j < t.channels(); ++j)
        for (std::size_t i = 0; i < t.rows(); ++i) m(i, j) = t(i, j, k);
    return m;
}

std::vector<std::string> column_names(std::size_t n) {
    std::vector<std::string> names;
    names.reserve(n);
    for (std::size_t j = 0; j < n; ++j) names.push_back("c" + std::to_string(j + 1));
    return names;
}

struct DecomposeArgs {
    std::string input;
    std::string algo = "emd";
    std::string d = "auto";
    std::string out_dir = ".";
    double nstd = 0.2;
    int nr = 100;
    std::uint64_t seed = 0;
    double sd_threshold = 0.2;
    int max_sift_iters = 300;
    int max_imfs = 0;
};

int cmd_decompose(const DecomposeArgs& a) {
    const Algorithm algo = parse_algorithm(a.algo);
    const SiftConfig cfg{a.sd_threshold, a.max_sift_iters, a.max_imfs};
    const EnsembleConfig ens{a.nstd, a.nr, a.seed};
    fs::create_directories(a.out_dir);

    const bool is_pgm = has_extension(a.input, ".pgm");
    const std::string stem = fs::path(a.input).stem().string();

    MultiSignal data;
    std::vector<std::string> header;
    if (is_pgm) {
        data = image_to_multisignal(read_pgm(a.input));
        header = column_names(data.channels());
    } else {
        CsvData csv = read_csv(a.input);
        data = std::move(csv.data);
        header = std::move(csv.header);
    }

    const std::size_t d = resolve_d(a.d, data.rows());
    const ImfTensor t = serial_decompose(data, d, algo, cfg, ens);

    for (std::size_t k = 0; k < t.modes(); ++k) {
        const std::string name = stem + "_" + mode_name(k, t.modes());
        const MultiSignal mode = mode_slice(t, k);
        write_csv((fs::path(a.out_dir) / (name + ".csv")).string(), mode, header);
        if (is_pgm) {
            Image img(t.rows(), t.channels());
            for (std::size_t c = 0; c < t.channels(); ++c)
                for (std::size_t r = 0; r < t.rows(); ++r) img(r, c) = t(r, c, k);
            write_pgm((fs::path(a.out_dir) / (name + ".pgm")).string(), img, /*rescale=*/true);
        }
    }
    write_sidecar(fs::path(a.out_dir) / (stem + "_decomposition.json"), data.rows(),
                  data.channels(), d, t.modes(), algo, ens);

    std::cout << "decomposed " << a.input << ": M=" << data.rows() << " N=" << data.channels()
              << " D=" << d << " K=" << t.modes() << " algorithm=" << algorithm_name(algo)
              << " -> " << a.out_dir << "\n";
    return 0;
}

struct SynthArgs {
    std::size_t samples = 1000;
    double fs = 1000.0;
    std::string out_dir = ".";
    // speckle:
    std::string input;
    double snr_db_target = -6.0;
    std::uint64_t seed = 0;
};

int cmd_synth_signals(const SynthArgs& a) {
    fs::create_directories(a.out_dir);
    const MultiSignal data = multivariate_sinusoids(PickupMask::standard(), a.samples, a.fs);
    std::vector<std::string> header;
    for (const char* name : PickupMask::names()) header.push_back(name);
    const fs::path path = fs::path(a.out_dir) / "signals.csv";
    write_csv(path.string(), data, header);
    std::cout << "wrote " << path.string() << " (" << data.rows() << "x" << data.channels()
              << ")\n";
    return 0;
}

int cmd_synth_ati(const SynthArgs& a) {
    fs::create_directories(a.out_dir);
    const AtiImages ati = make_ati();
    write_pgm((fs::path(a.out_dir) / "ati.pgm").string(), ati.ati, /*rescale=*/true);
    for (std::size_t i = 0; i < ati.atc.size(); ++i)
        write_pgm((fs::path(a.out_dir) / ("atc" + std::to_string(i + 1) + ".pgm")).string(),
                  ati.atc[i], /*rescale=*/true);
    std::cout << "wrote ati.pgm, atc1.pgm, atc2.pgm, atc3.pgm to " << a.out_dir << "\n";
    return 0;
}

int cmd_synth_speckle(const SynthArgs& a) {
    fs::create_directories(a.out_dir);
    const Image clean = read_pgm(a.input);
    const Image noisy = add_speckle(clean, a.snr_db_target, a.seed);

    Image noise(clean.rows(), clean.cols());
    for (std::size_t p = 0; p < noise.data().size(); ++p)
        noise.data()[p] = noisy.data()[p] - clean.data()[p];
    const double realized = snr_db(clean, noise);

    const std::string stem = fs::path(a.input).stem().string();
    const fs::path path = fs::path(a.out_dir) / (stem + "_speckle.pgm");
    write_pgm(path.string(), noisy, /*rescale=*/false);
    std::printf("wrote %s, realized SNR %.4f dB (target %.4f dB)\n", path.string().c_str(),
                realized, a.snr_db_target);
    return 0;
}

struct BenchArgs {
    std::vector<std::string> scenarios;
    BenchOptions options;
    std::string out_dir = ".";
};

int cmd_bench(const BenchArgs& a) {
    fs::create_directories(a.out_dir);
    const BenchReport report = bench_suite(a.scenarios, a.options);

    const fs::path json_path = fs::path(a.out_dir) / "bench.json";
    const fs::path csv_path = fs::path(a.out_dir) / "bench.csv";
    std::ofstream(json_path) << bench_json(report);
    std::ofstream(csv_path) << bench_csv(report);

    for (const BenchRow& row : report.rows)
        std::printf("%-22s %-18s D=%-4zu median %10.3f ms  (q1 %.3f, q3 %.3f, n=%zu)\n",
                    row.scenario.c_str(), row.algorithm.c_str(), row.d, row.stats.median,
                    row.stats.q1, row.stats.q3, row.stats.n);
    for (const SpeedupRow& s : report.speedups)
        std::printf("%-22s %-18s D=%-4zu slicewise/serial median ratio %.3f\n",
                    s.scenario.c_str(), s.algorithm.c_str(), s.d, s.median_ratio);
    std::cout << "wrote " << json_path.string() << " and " << csv_path.string() << "\n";
    return 0;
}

struct RecognizeArgs {
    std::string dataset;
    std::string algo = "emd";
    std::string d = "20";
    std::string range = "2:7";
    bool sweep = false;
    bool no_noise = false;
    double snr_db_target = -6.0;
    int folds = 10;
    int k = 1;
    double nstd = 0.2;
    int nr = 100;
    std::uint64_t seed = 0;
    std::string out_dir = ".";
};

std::pair<std::size_t, std::size_t> parse_range(const std::string& range) {
    const std::size_t colon = range.find(':');
    if (colon == std::string::npos)
        throw InvalidInput("--range must look like HI:LO (e.g. 2:7), got '" + range + "'");
    char* end = nullptr;
    const std::string hi_s = range.substr(0, colon), lo_s = range.substr(colon + 1);
    const unsigned long hi = std::strtoul(hi_s.c_str(), &end, 10);
    if (end != hi_s.c_str() + hi_s.size() || hi == 0)
        throw InvalidInput("bad --range HI part '" + hi_s + "'");
    const unsigned long lo = std::strtoul(lo_s.c_str(), &end, 10);
    if (end != lo_s.c_str() + lo_s.size() || lo == 0)
        throw InvalidInput("bad --range LO part '" + lo_s + "'");
    if (hi > lo) throw InvalidInput("--range HI must not exceed LO");
    return {static_cast<std::size_t>(hi), static_cast<std::size_t>(lo)};
}

int cmd_recognize(const RecognizeArgs& a) {
    const Algorithm algo = parse_algorithm(a.algo);
    const SiftConfig cfg;
    const EnsembleConfig ens{a.nstd, a.nr, a.seed};
    const double snr = a.no_noise ? std::numeric_limits<double>::infinity() : a.snr_db_target;

    const FaceDataset ds = load_face_dataset(face_dataset_root(a.dataset));
    const std::size_t d = resolve_d(a.d, ds.images.front().rows());
    fs::create_directories(a.out_dir);

    std::cout << "decomposing " << ds.images.size() << " images (" << algorithm_name(algo)
              << ", D=" << d << ", snr=" << (a.no_noise ? "clean" : std::to_string(snr) + " dB")
              << ")...\n";
    const FaceFeatureBank bank =
        build_feature_bank(ds, algo, d, cfg, ens, snr, derive_seed(a.seed, 0xFACE));

    if (a.sweep) {
        const HeatmapResult grid = heatmap_sweep(bank, ds.labels, a.folds, a.k, a.seed);

        const auto write_grid = [&](const fs::path& path,
                                    const std::array<std::array<double, 10>, 10>& g) {
            std::ofstream out(path);
            out << "first/last";
            for (std::size_t last = 1; last <= 10; ++last) out << ',' << last;
            out << '\n';
            char buf[32];
            for (std::size_t first = 1; first <= 10; ++first) {
                out << first;
                for (std::size_t last = 1; last <= 10; ++last) {
                    out << ',';
                    if (first <= last) {
                        std::snprintf(buf, sizeof buf, "%.6g", g[first - 1][last - 1]);
                        out << buf;
                    }
                }
                out << '\n';
            }
        };
        write_grid(fs::path(a.out_dir) / "heatmap.csv", grid.mean);
        write_grid(fs::path(a.out_dir) / "heatmap_std.csv", grid.stddev);

        std::size_t best_first = 1, best_last = 1;
        for (std::size_t f = 1; f <= 10; ++f)
            for (std::size_t l = f; l <= 10; ++l)
                if (grid.mean[f - 1][l - 1] > grid.mean[best_first - 1][best_last - 1]) {
                    best_first = f;
                    best_last = l;
                }
        std::printf("best range %zu:%zu accuracy %.4f (std %.4f); wrote heatmap.csv\n",
                    best_first, best_last, grid.mean[best_first - 1][best_last - 1],
                    grid.stddev[best_first - 1][best_last - 1]);
        return 0;
    }

    const auto [hi, lo] = parse_range(a.range);
    if (lo > bank.modes()) throw InvalidInput("--range exceeds the mode count (10)");
    const CvResult cv = knn_cv(bank.features(hi, lo), ds.labels, a.folds, a.k, a.seed);

    nlohmann::json j{{"algorithm", algorithm_name(algo)},
                     {"D", d},
                     {"range", {hi, lo}},
                     {"snr_db", a.no_noise ? nlohmann::json() : nlohmann::json(snr)},
                     {"folds", a.folds},
                     {"k", a.k},
                     {"seed", a.seed},
                     {"mean_accuracy", cv.mean_accuracy},
                     {"std_accuracy", cv.std_accuracy},
                     {"fold_accuracy", cv.fold_accuracy}};
    const fs::path path = fs::path(a.out_dir) / "recognition.json";
    std::ofstream(path) << j.dump(2) << '\n';

    std::printf("range %zu:%zu accuracy %.4f (std %.4f) over %d folds; wrote %s\n", hi, lo,
                cv.mean_accuracy, cv.std_accuracy, a.folds, path.string().c_str());
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"serial-EMD: 1D EMD/EEMD/CEEMDAN with multi-signal serialization"};
    app.require_subcommand(1);

    DecomposeArgs dec;
    CLI::App* decompose = app.add_subcommand(
        "decompose", "Serial-decompose a CSV multi-signal or PGM image into IMF files");
    decompose->add_option("input", dec.input, "Input .csv (header row) or binary .pgm")
        ->required();
    decompose->add_option("--algo", dec.algo, "Algorithm: emd, eemd, ceemdan (alias eemdan)");
    decompose->add_option("--d", dec.d, "Transition length, or 'auto' for round(0.2*M)");
    decompose->add_option("--nstd", dec.nstd, "Ensemble noise std fraction");
    decompose->add_option("--nr", dec.nr, "Ensemble realization count");
    decompose->add_option("--seed", dec.seed, "Base RNG seed");
    decompose->add_option("--sd-threshold", dec.sd_threshold, "Sifting stop threshold");
    decompose->add_option("--max-sift-iters", dec.max_sift_iters, "Sifting iteration cap");
    decompose->add_option("--max-imfs", dec.max_imfs, "Maximum IMF count (0 = unlimited)");
    decompose->add_option("--out", dec.out_dir, "Output directory");

    SynthArgs synth;
    CLI::App* synth_cmd = app.add_subcommand("synth", "Generate the synthetic datasets");
    synth_cmd->require_subcommand(1);
    CLI::App* signals = synth_cmd->add_subcommand("signals", "Pick-up-mask sinusoid mixture CSV");
    signals->add_option("--samples", synth.samples, "Samples per channel");
    signals->add_option("--fs", synth.fs, "Sampling rate in Hz");
    signals->add_option("--out", synth.out_dir, "Output directory");
    CLI::App* ati = synth_cmd->add_subcommand("ati", "Artificial texture image and components");
    ati->add_option("--out", synth.out_dir, "Output directory");
    CLI::App* speckle = synth_cmd->add_subcommand("speckle", "Add speckle noise to a PGM");
    speckle->add_option("input", synth.input, "Input .pgm")->required();
    speckle->add_option("--snr-db", synth.snr_db_target, "Target SNR in dB");
    speckle->add_option("--seed", synth.seed, "Noise seed");
    speckle->add_option("--out", synth.out_dir, "Output directory");

    BenchArgs bench;
    CLI::App* bench_cmd = app.add_subcommand("bench", "Run timing scenarios");
    bench_cmd
        ->add_option("--scenario", bench.scenarios,
                     "Scenario id(s): multivariate-algos, multivariate-D-sweep (alias d-sweep), "
                     "ati-algos, face-per-image")
        ->required();
    bench_cmd->add_option("--reps", bench.options.reps, "Timed repetitions per cell");
    bench_cmd->add_option("--nstd", bench.options.nstd, "Ensemble noise std fraction");
    bench_cmd->add_option("--nr", bench.options.nr, "Ensemble realization count");
    bench_cmd->add_option("--seed", bench.options.seed, "Base RNG seed");
    bench_cmd->add_option("--dataset", bench.options.dataset_root,
                          "Face dataset root (or set SERIAL_EMD_DATASET)");
    bench_cmd->add_option("--out", bench.out_dir, "Output directory");

    RecognizeArgs rec;
    CLI::App* recognize = app.add_subcommand("recognize", "Face-recognition experiment");
    recognize->add_option("--dataset", rec.dataset,
                          "Face dataset root (or set SERIAL_EMD_DATASET)");
    recognize->add_option("--algo", rec.algo, "Algorithm: emd, eemd, ceemdan");
    recognize->add_option("--d", rec.d, "Transition length, or 'auto' for round(0.2*M)");
    recognize->add_option("--range", rec.range, "IMF range HI:LO (1-based, inclusive)");
    recognize->add_flag("--sweep", rec.sweep, "Sweep all 55 IMF ranges into a heatmap");
    recognize->add_option("--snr-db", rec.snr_db_target, "Speckle SNR in dB");
    recognize->add_flag("--no-noise", rec.no_noise, "Skip the speckle step");
    recognize->add_option("--folds", rec.folds, "Cross-validation folds");
    recognize->add_option("--k", rec.k, "KNN neighbor count");
    recognize->add_option("--nstd", rec.nstd, "Ensemble noise std fraction");
    recognize->add_option("--nr", rec.nr, "Ensemble realization count");
    recognize->add_option("--seed", rec.seed, "Base RNG seed");
    recognize->add_option("--out", rec.out_dir, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (decompose->parsed()) return cmd_decompose(dec);
        if (signals->parsed()) return cmd_synth_signals(synth);
        if (ati->parsed()) return cmd_synth_ati(synth);
        if (speckle->parsed()) return cmd_synth_speckle(synth);
        if (bench_cmd->parsed()) return cmd_bench(bench);
        if (recognize->parsed()) return cmd_recognize(rec);
        std::cerr << "no subcommand selected\n";
        return 2;
    } catch (const DatasetNotFound& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace semd
