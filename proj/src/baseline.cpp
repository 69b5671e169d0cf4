#include "semd/baseline.hpp"

namespace semd {

ImfTensor slicewise_decompose(const MultiSignal& x, Algorithm algo,
                              const SiftConfig& cfg, const EnsembleConfig& ens) {
    if (x.rows() == 0 || x.channels() == 0)
        throw InvalidInput("slicewise_decompose: empty input");

    std::vector<Decomposition> per_channel;
    per_channel.reserve(x.channels());
    std::size_t common_k = 1;
    for (std::size_t j = 0; j < x.channels(); ++j) {
        per_channel.push_back(decompose(x.channel(j), algo, cfg, ens));
        common_k = std::max(common_k, per_channel.back().mode_count());
    }

    ImfTensor t(x.rows(), x.channels(), common_k);
    for (std::size_t j = 0; j < x.channels(); ++j) {
        const Decomposition& d = per_channel[j];
        for (std::size_t k = 0; k < d.imfs.size(); ++k) {
            double* dst = t.mode_channel(j, k);
            for (std::size_t i = 0; i < x.rows(); ++i) dst[i] = d.imfs[k][i];
        }
        double* dst = t.mode_channel(j, common_k - 1);
        for (std::size_t i = 0; i < x.rows(); ++i) dst[i] = d.residue[i];
    }
    return t;
}

}  // namespace semd
