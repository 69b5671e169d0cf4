#pragma once

#include "semd/emd.hpp"
#include "semd/types.hpp"

namespace semd {

/// Transition blending weights a_i = i/(D+1) for i = 1..D: evenly spaced
/// in (0, 1) with neither endpoint included. Throws InvalidInput for d < 1.
std::vector<double> transition_weights(std::size_t d);

/// Default transition length: 20% of the channel length, rounded,
/// clamped to [1, rows].
std::size_t default_transition_length(std::size_t rows);

/// Serialize an M x N multi-signal into one 1D signal of length
/// M*N + D*(N-1). Between consecutive channels f and g, D transition
/// samples blend the flipped head of g with the flipped tail of f:
/// E[t] = g[D-1-t]*a[t+1] + f[M-1-t]*a[D-t] (weights 1-based). Channel
/// samples are copied bit-exactly; N == 1 returns the channel unchanged.
/// Throws InvalidInput when D < 1 or D > M ("transition longer than
/// channel").
Signal concatenate(const MultiSignal& x, std::size_t d);

/// Reference implementation of the same serialization: walks adjacent
/// channel pairs and evaluates the discrete transition function
/// h(i) = (1 - i/(D+1))*f(M-i) + (i/(D+1))*g(D-i), i = 1..D, directly.
/// Kept as the property-test oracle for concatenate(); the two must agree
/// bit-exactly.
Signal concatenate_naive(const MultiSignal& x, std::size_t d);

/// Slice K decomposed modes of a serialized signal back into per-channel
/// form: conceptually appends D zero rows per mode, reshapes column-major
/// to (M+D) x N x K, and keeps the first M rows, so transition samples are
/// dropped. Every mode must have length M*N + D*(N-1).
ImfTensor deconcatenate(const std::vector<Signal>& modes, std::size_t rows,
                        std::size_t channels, std::size_t d);

/// The serial decomposition pipeline: concatenate, run the chosen 1D
/// algorithm once on the serialized signal, stack IMFs plus residue as
/// modes, and deconcatenate. The residue travels as the last mode, so
/// summing over modes reconstructs each channel.
ImfTensor serial_decompose(const MultiSignal& x, std::size_t d, Algorithm algo,
                           const SiftConfig& cfg = {}, const EnsembleConfig& ens = {});

/// Image adapter: columns of the image become channels (M = image rows).
MultiSignal image_to_multisignal(const Image& img);

/// Inverse adapter: one image per mode, pixel (r, c) = t(r, c, k).
std::vector<Image> imf_tensor_to_images(const ImfTensor& t);

}  // namespace semd
