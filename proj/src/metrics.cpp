#include "semd/metrics.hpp"

#include <cmath>

namespace semd {

double reconstruction_error(const MultiSignal& x, const ImfTensor& t) {
    if (x.rows() != t.rows() || x.channels() != t.channels())
        throw InvalidInput("reconstruction_error: shape mismatch");

    double max_err = 0.0, max_abs = 0.0;
    for (std::size_t j = 0; j < x.channels(); ++j)
        for (std::size_t i = 0; i < x.rows(); ++i) {
            double sum = 0.0;
            for (std::size_t k = 0; k < t.modes(); ++k) sum += t(i, j, k);
            max_err = std::max(max_err, std::fabs(x(i, j) - sum));
            max_abs = std::max(max_abs, std::fabs(x(i, j)));
        }
    return max_abs == 0.0 ? max_err : max_err / max_abs;
}

double reconstruction_error(const Signal& x, const Decomposition& d) {
    double max_err = 0.0, max_abs = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double sum = d.residue.at(i);
        for (const Signal& imf : d.imfs) sum += imf.at(i);
        max_err = std::max(max_err, std::fabs(x[i] - sum));
        max_abs = std::max(max_abs, std::fabs(x[i]));
    }
    return max_abs == 0.0 ? max_err : max_err / max_abs;
}

double dominant_frequency(const Signal& s, double fs) {
    const std::size_t n = s.size();
    if (n < 8) throw InvalidInput("dominant_frequency: signal too short (need at least 8 samples)");
    if (fs <= 0.0) throw InvalidInput("dominant_frequency: fs must be positive");

    double max_abs = 0.0;
    for (double v : s) max_abs = std::max(max_abs, std::fabs(v));
    if (max_abs == 0.0) return 0.0;

    constexpr double two_pi = 6.283185307179586476925286766559;
    std::size_t best_bin = 0;
    double best_mag2 = -1.0;
    for (std::size_t k = 1; k <= n / 2; ++k) {
        // Accumulate sum(s[i] * e^{-2*pi*i*k*t/n}) with a rotating phasor.
        const double wr = std::cos(two_pi * static_cast<double>(k) / static_cast<double>(n));
        const double wi = -std::sin(two_pi * static_cast<double>(k) / static_cast<double>(n));
        double cr = 1.0, ci = 0.0, ar = 0.0, ai = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            ar += s[i] * cr;
            ai += s[i] * ci;
            const double nr = cr * wr - ci * wi;
            ci = cr * wi + ci * wr;
            cr = nr;
        }
        const double mag2 = ar * ar + ai * ai;
        if (mag2 > best_mag2) {
            best_mag2 = mag2;
            best_bin = k;
        }
    }

    // A constant signal only leaks rounding noise into non-DC bins; report
    // the 0 Hz sentinel rather than an arbitrary bin.
    const double silence = static_cast<double>(n) * max_abs * 1e-9;
    if (best_mag2 <= silence * silence) return 0.0;
    return static_cast<double>(best_bin) * fs / static_cast<double>(n);
}

namespace {

double pearson_raw(const double* a, const double* b, std::size_t n) {
    if (n == 0) return 0.0;
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= static_cast<double>(n);
    mb /= static_cast<double>(n);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double da = a[i] - ma, db = b[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (saa == 0.0 || sbb == 0.0) return 0.0;
    return sab / std::sqrt(saa * sbb);
}

}  // namespace

double pearson(const Signal& a, const Signal& b) {
    if (a.size() != b.size()) throw InvalidInput("pearson: length mismatch");
    return pearson_raw(a.data(), b.data(), a.size());
}

double pearson(const Image& a, const Image& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw InvalidInput("pearson: shape mismatch");
    return pearson_raw(a.data().data(), b.data().data(), a.data().size());
}

std::vector<std::vector<double>> mode_correlation(const ImfTensor& a, const ImfTensor& b) {
    if (a.rows() != b.rows() || a.channels() != b.channels())
        throw InvalidInput("mode_correlation: shape mismatch");

    const std::size_t k_common = std::max(a.modes(), b.modes());
    const Signal zeros(a.rows(), 0.0);
    std::vector<std::vector<double>> r(k_common, std::vector<double>(a.channels(), 0.0));
    for (std::size_t k = 0; k < k_common; ++k)
        for (std::size_t j = 0; j < a.channels(); ++j) {
            const double* pa = k < a.modes() ? a.mode_channel(j, k) : zeros.data();
            const double* pb = k < b.modes() ? b.mode_channel(j, k) : zeros.data();
            r[k][j] = pearson_raw(pa, pb, a.rows());
        }
    return r;
}

}  // namespace semd
