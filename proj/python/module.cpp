#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "semd/baseline.hpp"
#include "semd/emd.hpp"
#include "semd/metrics.hpp"
#include "semd/recognition.hpp"
#include "semd/serialize.hpp"
#include "semd/synth.hpp"

namespace py = pybind11;

namespace {

using CArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

semd::Signal to_signal(const CArray& a) {
    if (a.ndim() != 1) throw std::invalid_argument("expected a 1D array");
    return semd::Signal(a.data(), a.data() + a.shape(0));
}

semd::MultiSignal to_multisignal(const CArray& a) {
    if (a.ndim() != 2) throw std::invalid_argument("expected a 2D array (samples x channels)");
    semd::MultiSignal m(static_cast<std::size_t>(a.shape(0)),
                        static_cast<std::size_t>(a.shape(1)));
    auto r = a.unchecked<2>();
    for (py::ssize_t i = 0; i < a.shape(0); ++i)
        for (py::ssize_t j = 0; j < a.shape(1); ++j)
            m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = r(i, j);
    return m;
}

semd::Image to_image(const CArray& a) {
    if (a.ndim() != 2) throw std::invalid_argument("expected a 2D array (rows x cols)");
    semd::Image img(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
    auto r = a.unchecked<2>();
    for (py::ssize_t i = 0; i < a.shape(0); ++i)
        for (py::ssize_t j = 0; j < a.shape(1); ++j)
            img(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = r(i, j);
    return img;
}

py::array_t<double> from_signal(const semd::Signal& s) {
    return py::array_t<double>({static_cast<py::ssize_t>(s.size())}, s.data());
}

py::array_t<double> from_image(const semd::Image& img) {
    py::array_t<double> out({static_cast<py::ssize_t>(img.rows()),
                             static_cast<py::ssize_t>(img.cols())});
    auto w = out.mutable_unchecked<2>();
    for (std::size_t r = 0; r < img.rows(); ++r)
        for (std::size_t c = 0; c < img.cols(); ++c)
            w(static_cast<py::ssize_t>(r), static_cast<py::ssize_t>(c)) = img(r, c);
    return out;
}

py::array_t<double> from_tensor(const semd::ImfTensor& t) {
    py::array_t<double> out({static_cast<py::ssize_t>(t.rows()),
                             static_cast<py::ssize_t>(t.channels()),
                             static_cast<py::ssize_t>(t.modes())});
    auto w = out.mutable_unchecked<3>();
    for (std::size_t i = 0; i < t.rows(); ++i)
        for (std::size_t j = 0; j < t.channels(); ++j)
            for (std::size_t k = 0; k < t.modes(); ++k)
                w(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(j),
                  static_cast<py::ssize_t>(k)) = t(i, j, k);
    return out;
}

py::dict from_decomposition(const semd::Decomposition& d, std::size_t n) {
    py::array_t<double> imfs({static_cast<py::ssize_t>(d.imfs.size()),
                              static_cast<py::ssize_t>(n)});
    auto w = imfs.mutable_unchecked<2>();
    for (std::size_t k = 0; k < d.imfs.size(); ++k)
        for (std::size_t i = 0; i < n; ++i)
            w(static_cast<py::ssize_t>(k), static_cast<py::ssize_t>(i)) = d.imfs[k][i];

    py::dict out;
    out["imfs"] = imfs;
    out["residue"] = from_signal(d.residue);
    return out;
}

semd::SiftConfig sift_config(double sd_threshold, int max_sift_iters, int max_imfs) {
    return semd::SiftConfig{sd_threshold, max_sift_iters, max_imfs};
}

semd::EnsembleConfig ensemble_config(double nstd, int nr, std::uint64_t seed) {
    return semd::EnsembleConfig{nstd, nr, seed};
}

}  // namespace

PYBIND11_MODULE(_serialemd, m) {
    m.doc() = "Serial EMD: 1D EMD/EEMD/CEEMDAN with multi-signal serialization";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const semd::DatasetNotFound& e) {
            PyErr_SetString(PyExc_FileNotFoundError, e.what());
        } catch (const semd::InvalidInput& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    m.def(
        "decompose",
        [](const CArray& x, const std::string& algo, double sd_threshold, int max_sift_iters,
           int max_imfs, double nstd, int nr, std::uint64_t seed) {
            const semd::Signal s = to_signal(x);
            const semd::Decomposition d =
                semd::decompose(s, semd::parse_algorithm(algo),
                                sift_config(sd_threshold, max_sift_iters, max_imfs),
                                ensemble_config(nstd, nr, seed));
            return from_decomposition(d, s.size());
        },
        py::arg("x"), py::arg("algo") = "emd", py::arg("sd_threshold") = 0.2,
        py::arg("max_sift_iters") = 300, py::arg("max_imfs") = 0, py::arg("nstd") = 0.2,
        py::arg("nr") = 100, py::arg("seed") = 0,
        "Decompose a 1D signal; returns {'imfs': (K, n) array, 'residue': (n,) array}.");

    m.def(
        "serial_decompose",
        [](const CArray& x, std::size_t d, const std::string& algo, double sd_threshold,
           int max_sift_iters, int max_imfs, double nstd, int nr, std::uint64_t seed) {
            return from_tensor(semd::serial_decompose(
                to_multisignal(x), d, semd::parse_algorithm(algo),
                sift_config(sd_threshold, max_sift_iters, max_imfs),
                ensemble_config(nstd, nr, seed)));
        },
        py::arg("x"), py::arg("d"), py::arg("algo") = "emd", py::arg("sd_threshold") = 0.2,
        py::arg("max_sift_iters") = 300, py::arg("max_imfs") = 0, py::arg("nstd") = 0.2,
        py::arg("nr") = 100, py::arg("seed") = 0,
        "Serialize an (M, N) multi-signal, decompose once, return an (M, N, K) mode "
        "tensor whose last mode is the residue.");

    m.def(
        "slicewise_decompose",
        [](const CArray& x, const std::string& algo, double sd_threshold, int max_sift_iters,
           int max_imfs, double nstd, int nr, std::uint64_t seed) {
            return from_tensor(semd::slicewise_decompose(
                to_multisignal(x), semd::parse_algorithm(algo),
                sift_config(sd_threshold, max_sift_iters, max_imfs),
                ensemble_config(nstd, nr, seed)));
        },
        py::arg("x"), py::arg("algo") = "emd", py::arg("sd_threshold") = 0.2,
        py::arg("max_sift_iters") = 300, py::arg("max_imfs") = 0, py::arg("nstd") = 0.2,
        py::arg("nr") = 100, py::arg("seed") = 0,
        "Decompose each channel independently (the standard-version baseline).");

    m.def(
        "concatenate",
        [](const CArray& x, std::size_t d) { return from_signal(semd::concatenate(to_multisignal(x), d)); },
        py::arg("x"), py::arg("d"),
        "Serialize an (M, N) multi-signal into one 1D signal of length M*N + D*(N-1).");

    m.def(
        "deconcatenate",
        [](const CArray& modes, std::size_t rows, std::size_t channels, std::size_t d) {
            if (modes.ndim() != 2)
                throw std::invalid_argument("expected a 2D array (length x K)");
            std::vector<semd::Signal> cols(static_cast<std::size_t>(modes.shape(1)));
            auto r = modes.unchecked<2>();
            for (py::ssize_t k = 0; k < modes.shape(1); ++k) {
                cols[static_cast<std::size_t>(k)].resize(static_cast<std::size_t>(modes.shape(0)));
                for (py::ssize_t i = 0; i < modes.shape(0); ++i)
                    cols[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] = r(i, k);
            }
            return from_tensor(semd::deconcatenate(cols, rows, channels, d));
        },
        py::arg("modes"), py::arg("rows"), py::arg("channels"), py::arg("d"),
        "Slice serialized modes (length x K) back to an (M, N, K) tensor.");

    m.def("transition_weights",
          [](std::size_t d) { return from_signal(semd::transition_weights(d)); }, py::arg("d"));

    m.def(
        "white_noise",
        [](std::size_t n, std::uint64_t seed, double std) {
            return from_signal(semd::white_noise(n, seed, std));
        },
        py::arg("n"), py::arg("seed"), py::arg("std") = 1.0);

    m.def(
        "multivariate_sinusoids",
        [](std::size_t n_samples, double fs) {
            const semd::MultiSignal s =
                semd::multivariate_sinusoids(semd::PickupMask::standard(), n_samples, fs);
            py::array_t<double> out({static_cast<py::ssize_t>(s.rows()),
                                     static_cast<py::ssize_t>(s.channels())});
            auto w = out.mutable_unchecked<2>();
            for (std::size_t i = 0; i < s.rows(); ++i)
                for (std::size_t j = 0; j < s.channels(); ++j)
                    w(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(j)) = s(i, j);
            return out;
        },
        py::arg("n_samples") = 1000, py::arg("fs") = 1000.0,
        "The six pick-up-mask tone mixtures as an (n_samples, 6) array.");

    m.def("make_ati", []() {
        const semd::AtiImages ati = semd::make_ati();
        py::list atcs;
        for (const semd::Image& atc : ati.atc) atcs.append(from_image(atc));
        return py::make_tuple(from_image(ati.ati), atcs);
    });

    m.def(
        "add_speckle",
        [](const CArray& img, double snr_db, std::uint64_t seed) {
            return from_image(semd::add_speckle(to_image(img), snr_db, seed));
        },
        py::arg("img"), py::arg("snr_db"), py::arg("seed") = 0);

    m.def(
        "snr_db",
        [](const CArray& signal, const CArray& noise) {
            return semd::snr_db(to_image(signal), to_image(noise));
        },
        py::arg("signal"), py::arg("noise"));

    m.def(
        "dominant_frequency",
        [](const CArray& s, double fs) { return semd::dominant_frequency(to_signal(s), fs); },
        py::arg("s"), py::arg("fs"));
}
