#include "semd/emd.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>

namespace semd {

Extrema find_extrema(const Signal& x) {
    const std::size_t n = x.size();
    if (n < 3) throw InvalidInput("find_extrema: signal too short (need at least 3 samples)");

    Extrema out;
    std::size_t run_start = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        if (i < n && x[i] == x[run_start]) continue;  // plateau keeps growing
        const std::size_t run_end = i - 1;
        if (run_start > 0 && run_end < n - 1) {       // interior run with both neighbors
            const double v = x[run_start];
            const double left = x[run_start - 1];
            const double right = x[run_end + 1];
            const std::size_t mid = (run_start + run_end) / 2;
            if (v > left && v > right) {
                out.max_idx.push_back(mid);
                out.max_val.push_back(v);
            } else if (v < left && v < right) {
                out.min_idx.push_back(mid);
                out.min_val.push_back(v);
            }
        }
        run_start = i;
    }
    return out;
}

namespace {

/// Natural cubic spline through (xs, ys), sampled at 0..length-1.
/// xs must be strictly increasing. Two knots degrade to a line.
Signal natural_spline_sample(const std::vector<double>& xs, const std::vector<double>& ys,
                             std::size_t length) {
    const std::size_t n = xs.size();
    Signal out(length, 0.0);

    if (n == 2) {
        const double slope = (ys[1] - ys[0]) / (xs[1] - xs[0]);
        for (std::size_t t = 0; t < length; ++t)
            out[t] = ys[0] + slope * (static_cast<double>(t) - xs[0]);
        return out;
    }

    // Second derivatives ("moments") from the natural-spline tridiagonal
    // system, solved by the Thomas algorithm.
    std::vector<double> m(n, 0.0);       // moments; m[0] = m[n-1] = 0
    std::vector<double> diag(n, 0.0), rhs(n, 0.0), upper(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h0 = xs[i] - xs[i - 1];
        const double h1 = xs[i + 1] - xs[i];
        diag[i] = 2.0 * (h0 + h1);
        upper[i] = h1;
        rhs[i] = 6.0 * ((ys[i + 1] - ys[i]) / h1 - (ys[i] - ys[i - 1]) / h0);
    }
    for (std::size_t i = 2; i + 1 < n; ++i) {
        const double h0 = xs[i] - xs[i - 1];  // sub-diagonal entry of row i
        const double w = h0 / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
        m[i] = (rhs[i] - upper[i] * m[i + 1]) / diag[i];
        if (i == 1) break;
    }

    // March through segments while t increases.
    std::size_t seg = 0;
    for (std::size_t t = 0; t < length; ++t) {
        const double tt = static_cast<double>(t);
        while (seg + 2 < n && tt > xs[seg + 1]) ++seg;
        const double h = xs[seg + 1] - xs[seg];
        const double a = (xs[seg + 1] - tt) / h;
        const double b = (tt - xs[seg]) / h;
        out[t] = a * ys[seg] + b * ys[seg + 1] +
                 ((a * a * a - a) * m[seg] + (b * b * b - b) * m[seg + 1]) * (h * h) / 6.0;
    }
    return out;
}

}  // namespace

Signal envelope(const std::vector<std::size_t>& idx, const Signal& val,
                std::size_t length) {
    const std::size_t n = idx.size();
    if (n < 2)
        throw InsufficientExtrema("envelope: need at least 2 extrema, got " + std::to_string(n));
    if (val.size() != n) throw InvalidInput("envelope: index/value size mismatch");

    const double end = static_cast<double>(length - 1);
    std::vector<double> xs, ys;
    xs.reserve(n + 4);
    ys.reserve(n + 4);

    // Mirror the two leftmost extrema across position 0 (descending source
    // order so reflected positions come out increasing). An end that already
    // carries an extremum needs no extension: the spline is anchored there,
    // and reflected interior knots would only distort the boundary fit.
    if (idx[0] != 0) {
        for (std::size_t k = std::min<std::size_t>(2, n); k-- > 0;) {
            xs.push_back(-static_cast<double>(idx[k]));
            ys.push_back(val[k]);
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        xs.push_back(static_cast<double>(idx[k]));
        ys.push_back(val[k]);
    }
    if (idx[n - 1] != length - 1) {
        for (std::size_t k = (n >= 2 ? n - 2 : 0); k < n; ++k) {
            xs.push_back(2.0 * end - static_cast<double>(idx[k]));
            ys.push_back(val[k]);
        }
    }

    return natural_spline_sample(xs, ys, length);
}

SiftResult extract_imf(const Signal& x, const SiftConfig& cfg) {
    SiftResult res{x, 0};
    Signal& cur = res.imf;

    for (int iter = 0; iter < cfg.max_sift_iters; ++iter) {
        Extrema ext = find_extrema(cur);
        Signal upper, lower;
        try {
            upper = envelope(ext.max_idx, ext.max_val, cur.size());
            lower = envelope(ext.min_idx, ext.min_val, cur.size());
        } catch (const InsufficientExtrema&) {
            if (res.sift_count == 0) throw;  // x itself is unsiftable
            return res;                      // current candidate is the IMF
        }

        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < cur.size(); ++i) {
            const double mean = 0.5 * (upper[i] + lower[i]);
            num += mean * mean;
            den += cur[i] * cur[i];
            cur[i] -= mean;
        }
        ++res.sift_count;
        if (den == 0.0 || num / den < cfg.sd_threshold) return res;
    }
    return res;
}

Decomposition emd(const Signal& x, const SiftConfig& cfg) {
    if (x.size() < 4) throw InvalidInput("emd: signal too short (need at least 4 samples)");

    Decomposition d;
    Signal residue = x;
    while (cfg.max_imfs == 0 || d.imfs.size() < static_cast<std::size_t>(cfg.max_imfs)) {
        SiftResult r;
        try {
            r = extract_imf(residue, cfg);
        } catch (const InsufficientExtrema&) {
            break;  // residue is monotone or trend-like: decomposition done
        }
        for (std::size_t i = 0; i < residue.size(); ++i) residue[i] -= r.imf[i];
        d.imfs.push_back(std::move(r.imf));
    }
    d.residue = std::move(residue);
    return d;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

Signal white_noise(std::size_t n, std::uint64_t seed, double std) {
    if (std < 0.0) throw InvalidInput("white_noise: std must be non-negative");
    if (std == 0.0) return Signal(n, 0.0);

    std::mt19937_64 eng(seed);
    // Map raw 64-bit draws to (0,1] ourselves: unlike std::normal_distribution,
    // the Box-Muller transform below is pinned down by the standard's mt19937_64
    // sequence and therefore reproducible across library implementations.
    auto unit = [&eng]() { return static_cast<double>((eng() >> 11) + 1) * 0x1.0p-53; };

    constexpr double two_pi = 6.283185307179586476925286766559;
    Signal out(n);
    for (std::size_t i = 0; i < n; i += 2) {
        const double r = std * std::sqrt(-2.0 * std::log(unit()));
        const double theta = two_pi * unit();
        out[i] = r * std::cos(theta);
        if (i + 1 < n) out[i + 1] = r * std::sin(theta);
    }
    return out;
}

Signal noise_mode(const Signal& w, std::size_t i, const SiftConfig& cfg) {
    if (i == 0) throw InvalidInput("noise_mode: mode index is 1-based");
    Decomposition d = emd(w, cfg);
    if (i - 1 < d.imfs.size()) return d.imfs[i - 1];
    return Signal(w.size(), 0.0);
}

double signal_std(const Signal& x) {
    if (x.empty()) return 0.0;
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    double acc = 0.0;
    for (double v : x) acc += (v - mean) * (v - mean);
    return std::sqrt(acc / static_cast<double>(x.size()));
}

namespace {

void validate_ensemble(const EnsembleConfig& ens) {
    if (ens.nr < 1) throw InvalidInput("ensemble: nr must be at least 1");
    if (ens.nstd < 0.0) throw InvalidInput("ensemble: nstd must be non-negative");
}

}  // namespace

Decomposition eemd(const Signal& x, const SiftConfig& cfg, const EnsembleConfig& ens) {
    validate_ensemble(ens);
    if (ens.nstd == 0.0) return emd(x, cfg);  // degenerate ensemble is plain EMD

    const std::size_t n = x.size();
    const double beta = ens.nstd * signal_std(x);

    std::vector<std::vector<Signal>> realizations(ens.nr);
    std::size_t max_k = 0;
    for (int m = 0; m < ens.nr; ++m) {
        const Signal w = white_noise(n, derive_seed(ens.base_seed, m));
        Signal xm(n);
        for (std::size_t i = 0; i < n; ++i) xm[i] = x[i] + beta * w[i];
        Decomposition d = emd(xm, cfg);
        max_k = std::max(max_k, d.imfs.size());
        realizations[m] = std::move(d.imfs);
    }

    // Average in realization order; shorter mode lists count as zeros.
    Decomposition out;
    out.imfs.assign(max_k, Signal(n, 0.0));
    for (int m = 0; m < ens.nr; ++m)
        for (std::size_t k = 0; k < realizations[m].size(); ++k)
            for (std::size_t i = 0; i < n; ++i) out.imfs[k][i] += realizations[m][k][i];
    const double inv = 1.0 / static_cast<double>(ens.nr);
    for (auto& imf : out.imfs)
        for (double& v : imf) v *= inv;

    // Residue is defined as input minus the averaged IMFs so that
    // reconstruction is exact by construction.
    out.residue = x;
    for (const auto& imf : out.imfs)
        for (std::size_t i = 0; i < n; ++i) out.residue[i] -= imf[i];
    return out;
}

Decomposition ceemdan(const Signal& x, const SiftConfig& cfg, const EnsembleConfig& ens) {
    validate_ensemble(ens);
    if (ens.nstd == 0.0) return emd(x, cfg);  // degenerate ensemble is plain EMD
    if (x.size() < 4) throw InvalidInput("ceemdan: signal too short (need at least 4 samples)");

    const std::size_t n = x.size();
    const std::size_t nr = static_cast<std::size_t>(ens.nr);

    // Running residues of each noise realization's own EMD; extracting their
    // next IMF stage by stage yields E_i(w) without decomposing w repeatedly.
    std::vector<Signal> noise_res(nr);
    std::vector<bool> noise_alive(nr, true);
    for (std::size_t m = 0; m < nr; ++m)
        noise_res[m] = white_noise(n, derive_seed(ens.base_seed, m));

    // First mode of `s`, or zeros when s has too few extrema to sift.
    auto first_mode = [&cfg, n](const Signal& s) {
        try {
            return extract_imf(s, cfg).imf;
        } catch (const InsufficientExtrema&) {
            return Signal(n, 0.0);
        }
    };

    Decomposition out;
    Signal residue = x;

    // Mode 1: EEMD-style average of first modes of x + beta0 * w^(m).
    {
        const double beta0 = ens.nstd * signal_std(x);
        Signal mode(n, 0.0);
        for (std::size_t m = 0; m < nr; ++m) {
            Signal xm(n);
            for (std::size_t i = 0; i < n; ++i) xm[i] = x[i] + beta0 * noise_res[m][i];
            const Signal e1 = first_mode(xm);
            for (std::size_t i = 0; i < n; ++i) mode[i] += e1[i];
        }
        const double inv = 1.0 / static_cast<double>(nr);
        for (std::size_t i = 0; i < n; ++i) {
            mode[i] *= inv;
            residue[i] -= mode[i];
        }
        out.imfs.push_back(std::move(mode));
    }

    // Mode i+1 averages the first mode of r_i + beta_i * E_i(w^(m)).
    while (cfg.max_imfs == 0 || out.imfs.size() < static_cast<std::size_t>(cfg.max_imfs)) {
        if (find_extrema(residue).total() < 3) break;
        const double beta_i = ens.nstd * signal_std(residue);

        Signal mode(n, 0.0);
        for (std::size_t m = 0; m < nr; ++m) {
            Signal ei(n, 0.0);
            if (noise_alive[m]) {
                try {
                    SiftResult r = extract_imf(noise_res[m], cfg);
                    ei = std::move(r.imf);
                    for (std::size_t i = 0; i < n; ++i) noise_res[m][i] -= ei[i];
                } catch (const InsufficientExtrema&) {
                    noise_alive[m] = false;  // noise exhausted: E_i is zeros from now on
                }
            }
            Signal sm(n);
            for (std::size_t i = 0; i < n; ++i) sm[i] = residue[i] + beta_i * ei[i];
            const Signal e1 = first_mode(sm);
            for (std::size_t i = 0; i < n; ++i) mode[i] += e1[i];
        }
        const double inv = 1.0 / static_cast<double>(nr);
        bool all_zero = true;
        for (std::size_t i = 0; i < n; ++i) {
            mode[i] *= inv;
            if (mode[i] != 0.0) all_zero = false;
        }
        if (all_zero) break;  // nothing extractable anywhere: stop instead of looping
        for (std::size_t i = 0; i < n; ++i) residue[i] -= mode[i];
        out.imfs.push_back(std::move(mode));
    }

    out.residue = std::move(residue);
    return out;
}

Algorithm parse_algorithm(const std::string& name) {
    std::string s;
    s.reserve(name.size());
    for (char c : name) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (s == "emd") return Algorithm::Emd;
    if (s == "eemd") return Algorithm::Eemd;
    if (s == "ceemdan" || s == "eemdan") return Algorithm::Ceemdan;
    throw InvalidInput("unknown algorithm '" + name + "' (expected emd, eemd, or ceemdan)");
}

std::string algorithm_name(Algorithm algo) {
    switch (algo) {
        case Algorithm::Emd: return "emd";
        case Algorithm::Eemd: return "eemd";
        case Algorithm::Ceemdan: return "ceemdan";
    }
    throw InvalidInput("unknown algorithm value");
}

Decomposition decompose(const Signal& x, Algorithm algo,
                        const SiftConfig& cfg, const EnsembleConfig& ens) {
    switch (algo) {
        case Algorithm::Emd: return emd(x, cfg);
        case Algorithm::Eemd: return eemd(x, cfg, ens);
        case Algorithm::Ceemdan: return ceemdan(x, cfg, ens);
    }
    throw InvalidInput("unknown algorithm value");
}

}  // namespace semd
