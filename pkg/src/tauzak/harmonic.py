"""Signals, Fourier transforms and periodization on finite abelian groups.

Normalizations are fixed once and used everywhere:

  * Haar on K is counting measure, so ||v||^2 = sum |v(k)|^2.
  * Haar on the dual is counting / |K|, so ||fourier(v)||^2 = (1/|K|) sum |..|^2
    and Plancherel holds with no stray constants.
  * Haar on a subgroup L is counting, the quotient K/L carries counting on the
    transversal, and the dual quotient carries counting / |L|.

The direct O(|K|^2) summation is the transform of record; ``method="fft"``
offers a per-cyclic-factor fast path that is validated against it in tests.
"""

from __future__ import annotations

import numpy as np

from tauzak import kernels
from tauzak.groups import FiniteAbelianGroup, StructureError, Subgroup


class Signal:
    """A complex function on a FiniteAbelianGroup, indexed in element order.

    ``haar_weight`` is the mass of a single point (1 on the group itself,
    1/|K| for spectra), so norms and inner products can stay convention-free.
    """

    __slots__ = ("group", "values", "haar_weight")

    def __init__(self, group: FiniteAbelianGroup, values, haar_weight: float = 1.0):
        values = np.asarray(values, dtype=np.complex128)
        if values.shape != (group.order,):
            raise StructureError(
                f"signal needs {group.order} values, got shape {values.shape}")
        self.group = group
        self.values = values.copy()
        self.values.setflags(write=False)
        self.haar_weight = float(haar_weight)

    # -- constructors --------------------------------------------------------

    @classmethod
    def delta(cls, group: FiniteAbelianGroup, at=None) -> Signal:
        values = np.zeros(group.order, dtype=np.complex128)
        index = 0 if at is None else group.index_of(
            at.residues if hasattr(at, "residues") else at)
        values[index] = 1.0
        return cls(group, values)

    @classmethod
    def constant(cls, group: FiniteAbelianGroup, value=1.0) -> Signal:
        return cls(group, np.full(group.order, value, dtype=np.complex128))

    @classmethod
    def random(cls, group: FiniteAbelianGroup, rng) -> Signal:
        return cls(group, rng.complex_values(group.order))

    # -- algebra ---------------------------------------------------------------

    def __add__(self, other: Signal) -> Signal:
        if self.group != other.group or self.haar_weight != other.haar_weight:
            raise StructureError("signals live on different measure spaces")
        return Signal(self.group, self.values + other.values, self.haar_weight)

    def __mul__(self, scalar) -> Signal:
        return Signal(self.group, self.values * complex(scalar), self.haar_weight)

    __rmul__ = __mul__

    def __sub__(self, other: Signal) -> Signal:
        return self + (-1.0) * other

    # -- geometry ----------------------------------------------------------------

    @property
    def norm_sq(self) -> float:
        return self.haar_weight * float(np.sum(np.abs(self.values) ** 2))

    @property
    def norm(self) -> float:
        return float(np.sqrt(self.norm_sq))

    def inner(self, other: Signal) -> complex:
        """<f, g> = weight * sum f(k) conj(g(k))."""
        if self.group != other.group or self.haar_weight != other.haar_weight:
            raise StructureError("signals live on different measure spaces")
        return self.haar_weight * complex(np.vdot(other.values, self.values))

    def value_at(self, element) -> complex:
        index = element.index if hasattr(element, "index") else int(element)
        return complex(self.values[index])


class QuotientSignal:
    """A function on K/L, stored over the lexicographic transversal."""

    __slots__ = ("group", "subgroup", "values")

    def __init__(self, subgroup: Subgroup, values):
        count = subgroup.parent.order // subgroup.order
        values = np.asarray(values, dtype=np.complex128)
        if values.shape != (count,):
            raise StructureError(
                f"quotient signal needs {count} values, got shape {values.shape}")
        self.group = subgroup.parent
        self.subgroup = subgroup
        self.values = values.copy()
        self.values.setflags(write=False)

    @property
    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2))

    def value_at(self, element) -> complex:
        """Value on the coset of ``element`` (any representative works)."""
        return complex(self.values[self.subgroup.coset_position(element)])

    def total(self) -> complex:
        return complex(np.sum(self.values))


def fourier(signal: Signal, method: str = "direct") -> Signal:
    """fourier(v)(w) = sum_k v(k) * conj(<k, w>), returned on the dual measure.

    ``direct`` is the O(|K|^2) summation of record; ``fft`` reshapes to the
    cyclic factors and runs numpy's FFT, equal to direct up to roundoff.
    """
    group = signal.group
    if method == "direct":
        out = kernels.dft_direct(signal.values, group.pairing_matrix)
    elif method == "fft":
        out = np.fft.fftn(signal.values.reshape(group.moduli)).ravel()
    else:
        raise StructureError(f"unknown fourier method {method!r}")
    return Signal(group, out, haar_weight=1.0 / group.order)


def inverse_fourier(spectrum: Signal, method: str = "direct") -> Signal:
    """inverse_fourier(s)(k) = (1/|K|) sum_w s(w) * <k, w>."""
    group = spectrum.group
    if method == "direct":
        out = kernels.idft_direct(spectrum.values, group.pairing_matrix)
    elif method == "fft":
        out = np.fft.ifftn(spectrum.values.reshape(group.moduli)).ravel()
    else:
        raise StructureError(f"unknown fourier method {method!r}")
    return Signal(group, out, haar_weight=1.0)


def periodize(signal: Signal, sub: Subgroup) -> QuotientSignal:
    """T_L v(k + L) = sum_{l in L} v(k + l) over the transversal."""
    if sub.parent != signal.group:
        raise StructureError("subgroup does not live in the signal's group")
    out = kernels.gather_sum(signal.values, sub.zak_gather_indices)
    return QuotientSignal(sub, out)


def verify_weil(signal: Signal, sub: Subgroup) -> float:
    """|sum_K v - sum_{K/L} T_L v|; zero up to roundoff for any v and L."""
    lhs = complex(np.sum(signal.values))
    rhs = periodize(signal, sub).total()
    return abs(lhs - rhs)
