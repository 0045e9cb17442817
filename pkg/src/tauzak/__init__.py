"""Zak transforms on finite abelian groups and their twisted extension to
semidirect products H x|_tau K, plus a sampled R^2 realization.

Layering:

  groups    finite abelian groups, subgroups, characters, automorphisms
  harmonic  signals, Fourier transform, periodization, Weil's formula
  zak       the classical lattice Zak transform and its inverse
  actions   acting groups, semidirect systems, induced dual/quotient actions
  tau_zak   slice-indexed signals and the twisted transform
  showcase  Weyl-Heisenberg and torus-shear example systems
  plane     sampled SL(2, Z) slices acting on R^2
  verify    named identity checks with measured deviations
  serialize JSON/CSV persistence
  cli       command line front end

Heavy kernels run through tauzak.kernels, which picks the compiled extension
when available and falls back to pure numpy (override with TAUZAK_KERNELS).
"""

from tauzak.actions import (
    ActingGroup,
    IsoReport,
    SdElement,
    SemidirectSystem,
    sd_identity,
    sd_inverse,
    sd_multiply,
)
from tauzak.groups import (
    Automorphism,
    Character,
    FiniteAbelianGroup,
    GroupElement,
    InvarianceError,
    StructureError,
    Subgroup,
    all_subgroups,
    annihilator,
    apply_auto,
    is_tau_invariant,
    pair,
    subgroup_from_generators,
    transversal,
)
from tauzak.harmonic import (
    QuotientSignal,
    Signal,
    fourier,
    inverse_fourier,
    periodize,
    verify_weil,
)
from tauzak.kernels import BACKEND
from tauzak.tau_zak import (
    SemidirectSignal,
    TauZakField,
    inner,
    inner_zak,
    tau_zak,
    tau_zak_direct,
    tensor,
    verify_quasi_periodicity,
)
from tauzak.zak import ZakArray, inverse_zak, quasi_periodic_extension, zak

__version__ = "0.1.0"

__all__ = [
    "ActingGroup", "Automorphism", "BACKEND", "Character",
    "FiniteAbelianGroup", "GroupElement", "InvarianceError", "IsoReport",
    "QuotientSignal", "SdElement", "SemidirectSignal", "SemidirectSystem",
    "Signal", "StructureError", "Subgroup", "TauZakField", "ZakArray",
    "all_subgroups", "annihilator", "apply_auto", "fourier", "inner",
    "inner_zak", "inverse_fourier", "inverse_zak", "is_tau_invariant",
    "pair", "periodize", "quasi_periodic_extension", "sd_identity",
    "sd_inverse", "sd_multiply", "subgroup_from_generators", "tau_zak",
    "tau_zak_direct", "tensor", "transversal", "verify_quasi_periodicity",
    "verify_weil", "zak",
]
