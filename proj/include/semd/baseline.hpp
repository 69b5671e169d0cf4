#pragma once

#include "semd/emd.hpp"
#include "semd/types.hpp"

namespace semd {

/// The standard-version comparator: run the chosen 1D algorithm on every
/// channel independently and align the per-channel mode counts to a common
/// K = max(modes) by zero-padding. Each channel's residue travels as the
/// last mode (index K-1), with zero modes in between when the channel
/// produced fewer IMFs, so per-channel reconstruction is exact.
ImfTensor slicewise_decompose(const MultiSignal& x, Algorithm algo,
                              const SiftConfig& cfg = {}, const EnsembleConfig& ens = {});

}  // namespace semd
