#pragma once

#include "semd/types.hpp"

namespace semd {

/// Max over samples of |x - sum over modes of t|, divided by the max
/// absolute sample of x (absolute error when x is all-zero). Throws
/// InvalidInput on shape mismatch.
double reconstruction_error(const MultiSignal& x, const ImfTensor& t);

/// Same identity for a 1D decomposition: max |x - (sum(imfs) + residue)|
/// over max |x|.
double reconstruction_error(const Signal& x, const Decomposition& d);

/// Frequency (Hz) of the largest-magnitude DFT bin excluding DC, at
/// resolution fs/length; ties go to the lower bin. A constant or silent
/// signal reports the 0 Hz sentinel. Throws InvalidInput for signals
/// shorter than 8 samples.
double dominant_frequency(const Signal& s, double fs);

/// Pearson correlation of two equal-length signals; 0 when either side
/// has zero variance.
double pearson(const Signal& a, const Signal& b);

/// Pearson correlation of two images (flattened), same convention.
double pearson(const Image& a, const Image& b);

/// Per-(mode, channel) Pearson correlations between two tensors of equal
/// rows/channels. Mode counts are aligned to max(Ka, Kb) by treating
/// missing modes as zeros, which correlate as 0 by the zero-variance rule.
/// result[k][j] is mode k of channel j.
std::vector<std::vector<double>> mode_correlation(const ImfTensor& a, const ImfTensor& b);

}  // namespace semd
