#pragma once

#include <array>
#include <cstdint>

#include "semd/types.hpp"

namespace semd {

/// Binary pick-up matrix selecting which of the four tones
/// {f1=32, f2=16, f3=8, f4=2} Hz sound in each of the six variates
/// {U, V, W, X, Y, Z}. mask[row][col] indexes tone row, variate column.
struct PickupMask {
    static constexpr std::size_t tones = 4;
    static constexpr std::size_t variates = 6;

    std::array<std::array<int, variates>, tones> mask{};
    std::array<double, tones> freqs{32.0, 16.0, 8.0, 2.0};

    /// The fixed pick-up matrix used throughout: the 8 Hz row is all ones
    /// (the common mode) and variate U carries all four tones.
    static PickupMask standard();

    /// Variate column names, for CSV headers.
    static const std::array<const char*, variates>& names();
};

/// Sample the six masked tone mixtures: channel j = sum_i mask[i][j] *
/// sin(2*pi*f_i*t) at t = k/fs. Throws InvalidInput when fs cannot
/// represent the 32 Hz tone (fs <= 64) or n_samples < 2.
MultiSignal multivariate_sinusoids(const PickupMask& mask, std::size_t n_samples = 1000,
                                   double fs = 1000.0);

/// The artificial texture image and its three components.
struct AtiImages {
    Image ati;
    std::array<Image, 3> atc;
};

/// 101 x 101 texture: ATC_i(r, c) = sin(2*pi*f_i*c/101) + sin(2*pi*f_i*r/101)
/// with spatial frequencies {20, 4, 1} cycles per width; ATI is their sum.
AtiImages make_ati();

/// Multiplicative speckle: out = I + c*I*U with U uniform on [-1, 1],
/// c solved so the realized SNR (signal power over additive-term power)
/// hits snr_db exactly. Deterministic per seed; +infinity target returns
/// the input unchanged. Throws InvalidInput for an all-zero image
/// ("SNR undefined").
Image add_speckle(const Image& img, double snr_db, std::uint64_t seed);

/// 10*log10(sum(signal^2) / sum(noise^2)). Throws InvalidInput on shape
/// mismatch or all-zero noise.
double snr_db(const Image& signal, const Image& noise);

}  // namespace semd
