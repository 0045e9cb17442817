"""The Zak transform on a finite abelian group relative to a subgroup.

    Z_L v(k, w) = sum_{l in L} v(k + l) * <l, w>

stored over the lexicographic transversal of K/L (rows) and of K^/L_perp
(columns).  Values anywhere else follow from quasi-periodicity:

    Z_L v(k + l, w)   = conj(<l, w>) * Z_L v(k, w)      for l in L,
    Z_L v(k, w * xi)  = Z_L v(k, w)                     for xi in L_perp.

With row weight 1 and column weight 1/|L| the transform is an isometry:
||Z_L v||^2 = (1/|L|) sum |Z|^2 = ||v||^2.
"""

from __future__ import annotations

import numpy as np

from tauzak import kernels
from tauzak.groups import Character, GroupElement, StructureError, Subgroup, pair
from tauzak.harmonic import Signal


class ZakArray:
    """Zak coefficients over the fundamental (coset x dual-coset) grid."""

    __slots__ = ("lattice", "values")

    def __init__(self, lattice: Subgroup, values):
        rows = lattice.parent.order // lattice.order
        cols = lattice.order
        values = np.asarray(values, dtype=np.complex128)
        if values.shape != (rows, cols):
            raise StructureError(
                f"zak array must be {rows}x{cols} for this lattice, "
                f"got shape {values.shape}")
        self.lattice = lattice
        self.values = values.copy()
        self.values.setflags(write=False)

    @property
    def group(self):
        return self.lattice.parent

    @property
    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2)) / self.lattice.order

    @property
    def norm(self) -> float:
        return float(np.sqrt(self.norm_sq))

    def inner(self, other: ZakArray) -> complex:
        if self.lattice != other.lattice:
            raise StructureError("zak arrays built over different lattices")
        return complex(np.vdot(other.values, self.values)) / self.lattice.order

    def representatives(self):
        return self.lattice.transversal()

    def dual_representatives(self):
        return self.lattice.dual_transversal()

    def value_at(self, k: GroupElement, w: Character) -> complex:
        """Evaluate at any (k, w) through quasi-periodic extension."""
        lat = self.lattice
        if k.group != lat.parent or w.group != lat.parent:
            raise StructureError("point does not live on this zak array's group")
        row = lat.coset_position(k)
        offset = lat.coset_offset(k)
        ann = lat.annihilator()
        col = ann.coset_position(w.residues)
        w_rep = Character(lat.parent, lat.parent.residues_of(
            int(ann.transversal_indices[col])))
        return complex(self.values[row, col]) * np.conj(pair(offset, w_rep))


def zak(signal: Signal, lattice: Subgroup) -> ZakArray:
    """Direct-summation Zak transform of a signal over the given subgroup."""
    if lattice.parent != signal.group:
        raise StructureError("subgroup does not live in the signal's group")
    values = kernels.gather_phase_sum(
        signal.values, lattice.zak_gather_indices, lattice.zak_phases)
    return ZakArray(lattice, values)


def inverse_zak(array: ZakArray) -> Signal:
    """v(rep_r + l_j) = (1/|L|) sum_c Z[r, c] * conj(<l_j, w_c>)."""
    lat = array.lattice
    values = kernels.unzak(
        array.values, lat.zak_gather_indices, lat.zak_phases, lat.parent.order)
    return Signal(lat.parent, values)


def quasi_periodic_extension(array: ZakArray, k: GroupElement, w: Character) -> complex:
    """Value of the transform at arbitrary (k, w); see ZakArray.value_at."""
    return array.value_at(k, w)
