#pragma once

#include <cstdint>

#include "semd/types.hpp"

namespace semd {

/// Controls a single EMD sifting run.
struct SiftConfig {
    /// Cauchy convergence threshold: sifting stops once
    /// sum((prev - cur)^2) / sum(prev^2) drops below this.
    double sd_threshold = 0.2;
    /// Hard cap on sifting iterations per IMF.
    int max_sift_iters = 300;
    /// Maximum number of IMFs to extract; 0 means unlimited.
    int max_imfs = 0;
};

/// Controls the noise ensemble of EEMD / CEEMDAN.
struct EnsembleConfig {
    /// Noise amplitude as a fraction of the input's standard deviation.
    double nstd = 0.2;
    /// Number of noise realizations.
    int nr = 100;
    /// Base RNG seed; realization m uses derive_seed(base_seed, m).
    std::uint64_t base_seed = 0;
};

/// Strict local extrema of a signal, endpoints excluded.
struct Extrema {
    std::vector<std::size_t> max_idx;
    Signal max_val;
    std::vector<std::size_t> min_idx;
    Signal min_val;

    std::size_t total() const { return max_idx.size() + min_idx.size(); }
};

/// Locate strict local maxima and minima by three-point comparison.
/// A plateau (run of equal samples) bounded by smaller samples on both
/// sides is one maximum reported at the run's midpoint (and symmetrically
/// for minima). Signal endpoints are never extrema. Throws InvalidInput
/// for signals shorter than 3 samples.
Extrema find_extrema(const Signal& x);

/// Natural cubic spline through the given extrema, evaluated at every
/// integer sample position 0..length-1. Before fitting, the two extrema
/// nearest each signal end are mirrored across that end (position i maps
/// to -i on the left and to 2*(length-1)-i on the right, values unchanged);
/// a reflection that would land on the extremum itself (extremum exactly on
/// the end) is skipped. Throws InsufficientExtrema for fewer than 2 extrema.
Signal envelope(const std::vector<std::size_t>& idx, const Signal& val,
                std::size_t length);

/// One extracted IMF plus the number of sifting iterations it took.
struct SiftResult {
    Signal imf;
    int sift_count = 0;
};

/// Sift one IMF out of `x`: repeatedly subtract the mean of the upper and
/// lower extremum envelopes until the Cauchy criterion or the iteration cap
/// is reached. Throws InsufficientExtrema when `x` itself has too few
/// extrema on either side to build envelopes.
SiftResult extract_imf(const Signal& x, const SiftConfig& cfg = {});

/// Classical empirical mode decomposition. Extracts IMFs until the running
/// residue can no longer be sifted (fewer than two maxima or two minima,
/// e.g. monotone) or max_imfs is hit. input == sum(imfs) + residue holds to
/// roundoff by construction. Throws InvalidInput for signals shorter than 4.
Decomposition emd(const Signal& x, const SiftConfig& cfg = {});

/// Deterministic zero-mean Gaussian noise with the given standard
/// deviation: mt19937_64 bits mapped through Box-Muller. Same
/// (n, seed, std) always gives the same signal; std == 0 gives zeros.
Signal white_noise(std::size_t n, std::uint64_t seed, double std = 1.0);

/// Stable per-index sub-seed (splitmix64 mix of base and index), so
/// ensemble realizations are independent of processing order.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

/// i-th EMD mode of `w` (1-based); zeros when the decomposition yields
/// fewer than i modes.
Signal noise_mode(const Signal& w, std::size_t i, const SiftConfig& cfg = {});

/// Population standard deviation (divide by n).
double signal_std(const Signal& x);

/// Ensemble EMD: average the EMDs of nr noise-perturbed copies
/// x + nstd*std(x)*w^(m). Shorter realizations are zero-padded to the
/// largest mode count before averaging; the residue is input minus the
/// sum of averaged IMFs, so reconstruction is exact. nstd == 0 collapses
/// to plain emd().
Decomposition eemd(const Signal& x, const SiftConfig& cfg = {},
                   const EnsembleConfig& ens = {});

/// Complete ensemble EMD with adaptive noise. Mode 1 is the EEMD-style
/// average of first modes of x + beta0*w^(m); mode i+1 averages the first
/// mode of r_i + beta_i * E_i(w^(m)) where E_i is the i-th mode of the
/// same noise realization and beta_i = nstd*std(r_i). Stops when the
/// residue has fewer than 3 extrema. nstd == 0 collapses to plain emd().
Decomposition ceemdan(const Signal& x, const SiftConfig& cfg = {},
                      const EnsembleConfig& ens = {});

/// The three supported 1D decomposition algorithms.
enum class Algorithm { Emd, Eemd, Ceemdan };

/// Parse a user-facing algorithm name: "emd", "eemd", "ceemdan"
/// (alias "eemdan"), case-insensitive. Throws InvalidInput otherwise.
Algorithm parse_algorithm(const std::string& name);

/// Canonical lower-case name of an algorithm.
std::string algorithm_name(Algorithm algo);

/// Run the selected algorithm on one signal.
Decomposition decompose(const Signal& x, Algorithm algo,
                        const SiftConfig& cfg = {}, const EnsembleConfig& ens = {});

}  // namespace semd
