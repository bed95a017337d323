from .lab import (
    DensityRelation,
    beurling_density,
    density_relation,
    gabor_map,
    gabor_reference,
    gabor_thin,
    lattice_group,
    reference_lattice,
    thin_gabor_frame,
)
from .systems import (
    FiniteGaborSystem,
    MoleculeCheck,
    envelope_w_norm,
    gabor_frame,
    gabor_union,
    label_position,
    molecule_check,
    stft_envelope,
    window_m1_norm,
)
from .transforms import GaborError, discrete_gaussian, stft, time_frequency_shift

__all__ = [
    "DensityRelation",
    "FiniteGaborSystem",
    "GaborError",
    "MoleculeCheck",
    "beurling_density",
    "density_relation",
    "discrete_gaussian",
    "envelope_w_norm",
    "gabor_frame",
    "gabor_map",
    "gabor_reference",
    "gabor_thin",
    "gabor_union",
    "label_position",
    "lattice_group",
    "molecule_check",
    "reference_lattice",
    "stft",
    "stft_envelope",
    "thin_gabor_frame",
    "time_frequency_shift",
    "window_m1_norm",
]
