#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace semd {

/// A 1D real-valued signal, uniformly sampled.
using Signal = std::vector<double>;

/// Error classes thrown by the library. All derive from std::runtime_error
/// so callers can catch coarsely; the CLI maps them onto exit codes.
struct InvalidInput : std::runtime_error {
    explicit InvalidInput(const std::string& what) : std::runtime_error(what) {}
};

/// A decomposition step needed more extrema than the signal has.
struct InsufficientExtrema : InvalidInput {
    explicit InsufficientExtrema(const std::string& what) : InvalidInput(what) {}
};

/// Input file could not be parsed. `position` is a human-readable location
/// (line number for text formats, byte offset for binary ones).
struct ParseError : InvalidInput {
    ParseError(const std::string& what, const std::string& position)
        : InvalidInput(what + " at " + position), where(position) {}
    std::string where;
};

/// Face-dataset root is missing or has an unexpected layout. Reported
/// distinctly so callers can skip rather than fail.
struct DatasetNotFound : std::runtime_error {
    explicit DatasetNotFound(const std::string& what) : std::runtime_error(what) {}
};

/// Multi-variate signal: M samples x N channels, stored channel-contiguous
/// (column-major if viewed as an M x N matrix).
class MultiSignal {
public:
    MultiSignal() = default;
    MultiSignal(std::size_t rows, std::size_t channels)
        : rows_(rows), channels_(channels), data_(rows * channels, 0.0) {}

    /// Build from per-channel signals; all channels must share a length.
    static MultiSignal from_channels(const std::vector<Signal>& channels) {
        if (channels.empty()) throw InvalidInput("MultiSignal needs at least one channel");
        MultiSignal m(channels.front().size(), channels.size());
        for (std::size_t j = 0; j < channels.size(); ++j) {
            if (channels[j].size() != m.rows_)
                throw InvalidInput("channel length mismatch");
            for (std::size_t i = 0; i < m.rows_; ++i) m(i, j) = channels[j][i];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t channels() const { return channels_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[j * rows_ + i]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[j * rows_ + i]; }

    /// Contiguous storage of channel j.
    const double* channel_data(std::size_t j) const { return data_.data() + j * rows_; }
    double* channel_data(std::size_t j) { return data_.data() + j * rows_; }

    Signal channel(std::size_t j) const {
        return Signal(channel_data(j), channel_data(j) + rows_);
    }

    const std::vector<double>& data() const { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t channels_ = 0;
    std::vector<double> data_;
};

/// Result of decomposing one 1D signal: intrinsic mode functions ordered
/// highest frequency first, plus the final residue. input == sum(imfs) + residue
/// up to floating-point roundoff.
struct Decomposition {
    std::vector<Signal> imfs;
    Signal residue;

    /// Number of modes including the residue.
    std::size_t mode_count() const { return imfs.size() + 1; }
};

/// Per-channel modes of a multi-variate decomposition: M samples x
/// N channels x K modes. The residue is stored as the last mode, so
/// sum over k of (*this)(i, j, k) reconstructs channel j.
class ImfTensor {
public:
    ImfTensor() = default;
    ImfTensor(std::size_t rows, std::size_t channels, std::size_t modes)
        : rows_(rows), channels_(channels), modes_(modes),
          data_(rows * channels * modes, 0.0) {}

    std::size_t rows() const { return rows_; }
    std::size_t channels() const { return channels_; }
    std::size_t modes() const { return modes_; }

    double& operator()(std::size_t i, std::size_t j, std::size_t k) {
        return data_[(k * channels_ + j) * rows_ + i];
    }
    double operator()(std::size_t i, std::size_t j, std::size_t k) const {
        return data_[(k * channels_ + j) * rows_ + i];
    }

    /// Contiguous storage of mode k, channel j.
    const double* mode_channel(std::size_t j, std::size_t k) const {
        return data_.data() + (k * channels_ + j) * rows_;
    }
    double* mode_channel(std::size_t j, std::size_t k) {
        return data_.data() + (k * channels_ + j) * rows_;
    }

    const std::vector<double>& data() const { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t channels_ = 0;
    std::size_t modes_ = 0;
    std::vector<double> data_;
};

/// Grayscale image, row-major, values in [0, 255] when loaded from PGM but
/// unconstrained while processed.
class Image {
public:
    Image() = default;
    Image(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

}  // namespace semd
