"""Serial EMD: 1D EMD/EEMD/CEEMDAN with multi-signal serialization."""

from serialemd._serialemd import (
    add_speckle,
    concatenate,
    decompose,
    deconcatenate,
    dominant_frequency,
    make_ati,
    multivariate_sinusoids,
    serial_decompose,
    slicewise_decompose,
    snr_db,
    transition_weights,
    white_noise,
)

__all__ = [
    "add_speckle",
    "concatenate",
    "decompose",
    "deconcatenate",
    "dominant_frequency",
    "make_ati",
    "multivariate_sinusoids",
    "serial_decompose",
    "slicewise_decompose",
    "snr_db",
    "transition_weights",
    "white_noise",
]
