"""The Zak transform twisted by a group action (the tau-Zak transform).

For a system (H acting on K, invariant subgroup L) and a finitely supported
f : H x K -> C the transform of the slice at h is the ordinary Zak transform
of f_h read through the action:

    TZ f(h, k, w) = delta_K(h)^{1/2} * Z_L f_h(tau_h(k), w_h)
                  = delta_K(h)^{1/2} * sum_{l in L} f(h, tau_h(k) + l) <l, w_h>

with w_h = w o tau_{h^{-1}}.  Values are stored on the fundamental grid
(coset representatives x dual coset representatives) per h; everywhere else
follows by quasi-periodicity.  With weight 1 per h, 1 per coset rep and
1/|L| per dual rep the transform is an isometry for the norm

    ||f||^2 = sum_h delta_K(h) ||f_h||^2.
"""

from __future__ import annotations

import numpy as np

from tauzak.actions import SemidirectSystem
from tauzak.groups import Character, GroupElement, StructureError, pair
from tauzak.harmonic import Signal
from tauzak.zak import ZakArray, zak


class SemidirectSignal:
    """Finitely supported slices {h: Signal on K} of a function on H x K."""

    __slots__ = ("system", "slices")

    def __init__(self, system: SemidirectSystem, slices):
        self.system = system
        checked = {}
        for h, sig in dict(slices).items():
            h = int(h)
            if not 0 <= h < len(system.acting):
                raise StructureError(f"slice index {h} outside the acting group")
            if not isinstance(sig, Signal):
                sig = Signal(system.group, sig)
            if sig.group != system.group:
                raise StructureError("slice lives on the wrong group")
            checked[h] = sig
        self.slices = dict(sorted(checked.items()))

    @property
    def support(self):
        return tuple(self.slices)

    def slice(self, h: int) -> Signal:
        sig = self.slices.get(int(h))
        if sig is None:
            return Signal(self.system.group,
                          np.zeros(self.system.group.order, dtype=np.complex128))
        return sig

    @property
    def norm_sq(self) -> float:
        return sum(float(self.system.delta_K[h]) * sig.norm_sq
                   for h, sig in self.slices.items())

    @property
    def norm(self) -> float:
        return float(np.sqrt(self.norm_sq))

    def __add__(self, other: SemidirectSignal) -> SemidirectSignal:
        if self.system is not other.system:
            raise StructureError("signals belong to different systems")
        out = {}
        for h in sorted(set(self.slices) | set(other.slices)):
            out[h] = self.slice(h) + other.slice(h)
        return SemidirectSignal(self.system, out)

    def __mul__(self, scalar) -> SemidirectSignal:
        return SemidirectSignal(
            self.system, {h: sig * scalar for h, sig in self.slices.items()})

    __rmul__ = __mul__

    @classmethod
    def random(cls, system: SemidirectSystem, rng, support=None) -> SemidirectSignal:
        """Random slices (uniform complex entries) over the given h-support."""
        if support is None:
            support = range(len(system.acting))
        return cls(system,
                   {h: Signal.random(system.group, rng) for h in support})


def inner(f: SemidirectSignal, g: SemidirectSignal) -> complex:
    """<f, g> = sum_h delta_K(h) sum_k f(h,k) conj(g(h,k))."""
    if f.system is not g.system:
        raise StructureError("signals belong to different systems")
    total = 0j
    for h in sorted(set(f.slices) | set(g.slices)):
        total += float(f.system.delta_K[h]) * f.slice(h).inner(g.slice(h))
    return total


class TauZakField:
    """Transform values on the per-h fundamental grids."""

    __slots__ = ("system", "arrays")

    def __init__(self, system: SemidirectSystem, arrays):
        rows = system.group.order // system.lattice.order
        cols = system.lattice.order
        self.system = system
        checked = {}
        for h, arr in dict(arrays).items():
            arr = np.asarray(arr, dtype=np.complex128)
            if arr.shape != (rows, cols):
                raise StructureError(
                    f"slice {h} must be {rows}x{cols}, got {arr.shape}")
            arr = arr.copy()
            arr.setflags(write=False)
            checked[int(h)] = arr
        self.arrays = dict(sorted(checked.items()))

    @property
    def support(self):
        return tuple(self.arrays)

    @property
    def norm_sq(self) -> float:
        lat_order = self.system.lattice.order
        return sum(float(np.sum(np.abs(a) ** 2)) / lat_order
                   for a in self.arrays.values())

    @property
    def norm(self) -> float:
        return float(np.sqrt(self.norm_sq))

    def slice_array(self, h: int) -> np.ndarray:
        arr = self.arrays.get(int(h))
        if arr is None:
            rows = self.system.group.order // self.system.lattice.order
            return np.zeros((rows, self.system.lattice.order), dtype=np.complex128)
        return arr

    def value_at(self, h: int, k: GroupElement, w: Character) -> complex:
        """Evaluate anywhere: reduce k mod L and w mod the annihilator.

        The lattice shift contributes conj(<offset, w_rep>); the annihilator
        shift contributes nothing.
        """
        lat = self.system.lattice
        ann = self.system.annihilator
        arr = self.slice_array(h)
        row = lat.coset_position(k)
        offset = lat.coset_offset(k)
        col = ann.coset_position(w.residues)
        w_rep = Character(self.system.group, self.system.group.residues_of(
            int(ann.transversal_indices[col])))
        return complex(arr[row, col]) * complex(np.conj(pair(offset, w_rep)))


def tau_zak(f: SemidirectSignal) -> TauZakField:
    """Transform every supported slice over the system's lattice."""
    system = f.system
    arrays = {}
    for h, sig in f.slices.items():
        base = zak(sig, system.lattice)
        rep_perm, dual_perm, phases = system._twist(h)
        twisted = phases * base.values[rep_perm][:, dual_perm]
        arrays[h] = system.delta_sqrt(h) * twisted
    return TauZakField(system, arrays)


def tau_zak_direct(f: SemidirectSignal, h: int, k: GroupElement,
                   w: Character) -> complex:
    """Independent summation oracle:

    delta^{1/2} * sum_{l in L} f(h, tau_h(k) + l) * <l, w_h>.
    """
    system = f.system
    sig = f.slice(h)
    moved = system.automorphism(h)(k)
    w_h = system.dual_action(h, w)
    total = 0j
    for l in system.lattice.elements():
        total += sig.value_at(moved + l) * pair(l, w_h)
    return system.delta_sqrt(h) * total


def tensor(scalars, v: Signal, system: SemidirectSystem) -> SemidirectSignal:
    """(u tensor v)(h, k) = delta_K(h)^{-1/2} u(h) v(k) for u given as {h: value}.

    Its transform factorizes: TZ(u tensor v)(h, k, w) = u(h) * Z_L v(tau_h k, w_h).
    """
    if v.group != system.group:
        raise StructureError("signal lives on the wrong group")
    slices = {}
    for h, value in scalars.items():
        h = int(h)
        slices[h] = Signal(system.group,
                           (complex(value) / system.delta_sqrt(h)) * v.values)
    return SemidirectSignal(system, slices)


def inner_zak(F: TauZakField, G: TauZakField) -> complex:
    """Inner product on the transform side: sum_h (1/|L|) sum_{r,c} F conj(G)."""
    if F.system is not G.system:
        raise StructureError("fields belong to different systems")
    lat_order = F.system.lattice.order
    total = 0j
    for h in sorted(set(F.arrays) | set(G.arrays)):
        total += complex(np.vdot(G.slice_array(h), F.slice_array(h))) / lat_order
    return total


def verify_quasi_periodicity(field: TauZakField, f: SemidirectSignal) -> float:
    """Exhaustive quasi-periodicity check against the summation oracle.

    For every supported h, lattice member l, annihilator member xi and
    fundamental pair (k_r, w_c):

      1. shifting k by l multiplies the value by conj(<l, w>),
      2. multiplying w by xi leaves the value unchanged,
      3. the stored field extends to exactly those values.

    Returns the maximum absolute deviation across all three families.
    """
    system = field.system
    lat, ann = system.lattice, system.annihilator
    reps = lat.transversal()
    dual_reps = lat.dual_transversal()
    lattice_elems = lat.elements()
    ann_chars = [Character(system.group, e.residues) for e in ann.elements()]
    worst = 0.0
    for h in f.support:
        base = {}
        for r, k in enumerate(reps):
            for c, w in enumerate(dual_reps):
                val = tau_zak_direct(f, h, k, w)
                base[r, c] = val
                worst = max(worst, abs(val - complex(field.slice_array(h)[r, c])))
        for r, k in enumerate(reps):
            for c, w in enumerate(dual_reps):
                for l in lattice_elems:
                    shifted = tau_zak_direct(f, h, k + l, w)
                    expected = complex(np.conj(pair(l, w))) * base[r, c]
                    worst = max(worst, abs(shifted - expected))
                    worst = max(worst,
                                abs(shifted - field.value_at(h, k + l, w)))
                for xi in ann_chars:
                    moved = tau_zak_direct(f, h, k, w * xi)
                    worst = max(worst, abs(moved - base[r, c]))
                    worst = max(worst,
                                abs(moved - field.value_at(h, k, w * xi)))
    return worst
