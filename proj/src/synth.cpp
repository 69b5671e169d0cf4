#include "semd/synth.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace semd {

PickupMask PickupMask::standard() {
    PickupMask p;
    p.mask = {{
        //           U  V  W  X  Y  Z
        {{1, 1, 0, 1, 0, 0}},  // f1 = 32 Hz
        {{1, 1, 1, 0, 1, 0}},  // f2 = 16 Hz
        {{1, 1, 1, 1, 1, 1}},  // f3 =  8 Hz (common mode)
        {{1, 0, 1, 1, 0, 1}},  // f4 =  2 Hz
    }};
    return p;
}

const std::array<const char*, PickupMask::variates>& PickupMask::names() {
    static const std::array<const char*, variates> n{"U", "V", "W", "X", "Y", "Z"};
    return n;
}

MultiSignal multivariate_sinusoids(const PickupMask& mask, std::size_t n_samples, double fs) {
    double f_max = 0.0;
    for (double f : mask.freqs) f_max = std::max(f_max, f);
    if (fs <= 2.0 * f_max)
        throw InvalidInput("multivariate_sinusoids: fs must exceed twice the highest tone (aliasing)");
    if (n_samples < 2) throw InvalidInput("multivariate_sinusoids: need at least 2 samples");

    constexpr double two_pi = 6.283185307179586476925286766559;
    MultiSignal out(n_samples, PickupMask::variates);
    for (std::size_t j = 0; j < PickupMask::variates; ++j) {
        double* ch = out.channel_data(j);
        for (std::size_t i = 0; i < PickupMask::tones; ++i) {
            if (!mask.mask[i][j]) continue;
            const double f = mask.freqs[i];
            for (std::size_t k = 0; k < n_samples; ++k)
                ch[k] += std::sin(two_pi * f * static_cast<double>(k) / fs);
        }
    }
    return out;
}

AtiImages make_ati() {
    constexpr std::size_t size = 101;
    constexpr double freqs[3] = {20.0, 4.0, 1.0};
    constexpr double two_pi = 6.283185307179586476925286766559;

    AtiImages out;
    out.ati = Image(size, size);
    for (std::size_t i = 0; i < 3; ++i) {
        Image& atc = out.atc[i];
        atc = Image(size, size);
        const double f = freqs[i];
        for (std::size_t r = 0; r < size; ++r)
            for (std::size_t c = 0; c < size; ++c) {
                atc(r, c) = std::sin(two_pi * f * static_cast<double>(c) / size) +
                            std::sin(two_pi * f * static_cast<double>(r) / size);
                out.ati(r, c) += atc(r, c);
            }
    }
    return out;
}

Image add_speckle(const Image& img, double snr_db, std::uint64_t seed) {
    if (img.rows() == 0 || img.cols() == 0) throw InvalidInput("add_speckle: empty image");

    double signal_power = 0.0;
    for (double v : img.data()) signal_power += v * v;
    if (signal_power == 0.0) throw InvalidInput("add_speckle: all-zero image, SNR undefined");

    if (std::isinf(snr_db) && snr_db > 0) return img;  // infinite SNR: no noise

    // Draw the unit-amplitude multiplicative field U ~ uniform[-1, 1].
    std::mt19937_64 eng(seed);
    Image noise(img.rows(), img.cols());
    double noise_power = 0.0;
    for (std::size_t p = 0; p < noise.data().size(); ++p) {
        const double u = 2.0 * (static_cast<double>(eng() >> 11) * 0x1.0p-53) - 1.0;
        const double n = img.data()[p] * u;
        noise.data()[p] = n;
        noise_power += n * n;
    }
    if (noise_power == 0.0) throw InvalidInput("add_speckle: degenerate noise draw");

    // Scale the additive term I*U by c so that
    // 10*log10(signal_power / (c^2 * noise_power)) == snr_db exactly.
    const double c = std::sqrt(signal_power / (std::pow(10.0, snr_db / 10.0) * noise_power));

    Image out = img;
    for (std::size_t p = 0; p < out.data().size(); ++p) out.data()[p] += c * noise.data()[p];
    return out;
}

double snr_db(const Image& signal, const Image& noise) {
    if (signal.rows() != noise.rows() || signal.cols() != noise.cols())
        throw InvalidInput("snr_db: shape mismatch");
    double ps = 0.0, pn = 0.0;
    for (double v : signal.data()) ps += v * v;
    for (double v : noise.data()) pn += v * v;
    if (pn == 0.0) throw InvalidInput("snr_db: zero noise");
    return 10.0 * std::log10(ps / pn);
}

}  // namespace semd
