#include "semd/serialize.hpp"

#include <cmath>

namespace semd {

std::vector<double> transition_weights(std::size_t d) {
    if (d < 1) throw InvalidInput("transition_weights: D must be at least 1");
    std::vector<double> a(d);
    for (std::size_t i = 0; i < d; ++i)
        a[i] = static_cast<double>(i + 1) / static_cast<double>(d + 1);
    return a;
}

std::size_t default_transition_length(std::size_t rows) {
    const auto d = static_cast<std::size_t>(std::llround(0.2 * static_cast<double>(rows)));
    return std::min(std::max<std::size_t>(d, 1), rows);
}

namespace {

void validate_serialization(const MultiSignal& x, std::size_t d) {
    if (x.rows() == 0 || x.channels() == 0) throw InvalidInput("concatenate: empty input");
    if (d < 1) throw InvalidInput("concatenate: D must be at least 1");
    if (d > x.rows()) throw InvalidInput("concatenate: transition longer than channel");
}

}  // namespace

Signal concatenate(const MultiSignal& x, std::size_t d) {
    validate_serialization(x, d);
    const std::size_t m = x.rows();
    const std::size_t n = x.channels();

    Signal out;
    out.reserve(m * n + d * (n - 1));
    const std::vector<double> a = transition_weights(d);

    for (std::size_t j = 0; j < n; ++j) {
        const double* ch = x.channel_data(j);
        out.insert(out.end(), ch, ch + m);
        if (j + 1 == n) break;
        // Transition block: flipped head of the next channel weighted by a,
        // plus flipped tail of this channel weighted by flip(a).
        const double* next = x.channel_data(j + 1);
        for (std::size_t t = 0; t < d; ++t)
            out.push_back(next[d - 1 - t] * a[t] + ch[m - 1 - t] * a[d - 1 - t]);
    }
    return out;
}

Signal concatenate_naive(const MultiSignal& x, std::size_t d) {
    validate_serialization(x, d);
    const std::size_t m = x.rows();
    const std::size_t n = x.channels();

    Signal out;
    out.reserve(m * n + d * (n - 1));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < m; ++i) out.push_back(x(i, j));
        if (j + 1 == n) break;
        // h(i) = (i/(D+1)) * g(D-i) + ((D+1-i)/(D+1)) * f(M-i), i = 1..D,
        // with f this channel and g the next (1-based sample indexing).
        for (std::size_t i = 1; i <= d; ++i) {
            const double wg = static_cast<double>(i) / static_cast<double>(d + 1);
            const double wf = static_cast<double>(d + 1 - i) / static_cast<double>(d + 1);
            out.push_back(wg * x(d - i, j + 1) + wf * x(m - i, j));
        }
    }
    return out;
}

ImfTensor deconcatenate(const std::vector<Signal>& modes, std::size_t rows,
                        std::size_t channels, std::size_t d) {
    if (modes.empty()) throw InvalidInput("deconcatenate: no modes given");
    if (rows == 0 || channels == 0) throw InvalidInput("deconcatenate: empty target shape");
    const std::size_t expect = rows * channels + d * (channels - 1);
    for (const Signal& mode : modes)
        if (mode.size() != expect)
            throw InvalidInput("deconcatenate: mode length " + std::to_string(mode.size()) +
                               " does not match M*N + D*(N-1) = " + std::to_string(expect));

    // Column j of the virtual (M+D) x N reshape starts at j*(M+D); its rows
    // beyond M are the transition block (or the appended zeros for the last
    // column) and are dropped.
    ImfTensor t(rows, channels, modes.size());
    const std::size_t stride = rows + d;
    for (std::size_t k = 0; k < modes.size(); ++k)
        for (std::size_t j = 0; j < channels; ++j) {
            const double* src = modes[k].data() + j * stride;
            double* dst = t.mode_channel(j, k);
            for (std::size_t i = 0; i < rows; ++i) dst[i] = src[i];
        }
    return t;
}

ImfTensor serial_decompose(const MultiSignal& x, std::size_t d, Algorithm algo,
                           const SiftConfig& cfg, const EnsembleConfig& ens) {
    const Signal s = concatenate(x, d);
    Decomposition dec = decompose(s, algo, cfg, ens);

    std::vector<Signal> modes = std::move(dec.imfs);
    modes.push_back(std::move(dec.residue));
    return deconcatenate(modes, x.rows(), x.channels(), d);
}

MultiSignal image_to_multisignal(const Image& img) {
    if (img.rows() == 0 || img.cols() == 0) throw InvalidInput("image_to_multisignal: empty image");
    MultiSignal m(img.rows(), img.cols());
    for (std::size_t c = 0; c < img.cols(); ++c)
        for (std::size_t r = 0; r < img.rows(); ++r) m(r, c) = img(r, c);
    return m;
}

std::vector<Image> imf_tensor_to_images(const ImfTensor& t) {
    std::vector<Image> out;
    out.reserve(t.modes());
    for (std::size_t k = 0; k < t.modes(); ++k) {
        Image img(t.rows(), t.channels());
        for (std::size_t c = 0; c < t.channels(); ++c)
            for (std::size_t r = 0; r < t.rows(); ++r) img(r, c) = t(r, c, k);
        out.push_back(std::move(img));
    }
    return out;
}

}  // namespace semd
