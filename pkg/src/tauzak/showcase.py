"""Two finite showcase systems realized on products of cyclic groups.

Weyl-Heisenberg:  H = Z_N acts on K = Z_N x Z_N (character index, torus level)
by the shear tau_s(w, z) = (w, z + s*w).  On the dual side the action has the
closed form (k, n) -> (k - n*s, n).

Shear on a discretized torus:  H = Z_M acts on K = Z_M x Z_M (angle indices of
two circle factors) by tau_ell(a, b) = (a, b + ell*a).  The invariant lattices
are L = (M/n)Z x (M/m)Z, discretizing the products of n-th and m-th roots of
unity; such a lattice is stable under every shear iff n | m, and its
annihilator is n*Z_M x m*Z_M.  For this family the transform collapses to an
explicit double sum with pure root-of-unity phases, and the Plancherel
balance can be stated as a plain grid sum on both sides.
"""

from __future__ import annotations

import numpy as np

from tauzak.actions import ActingGroup, SemidirectSystem
from tauzak.groups import FiniteAbelianGroup, StructureError, Subgroup
from tauzak.tau_zak import SemidirectSignal

SHEAR_GENERATOR = ((1, 0), (1, 1))


def heisenberg_system(N: int, lattice_generators=((2, 0), (0, 2))) -> SemidirectSystem:
    """The finite Weyl-Heisenberg system at level N.

    The acting group closes to {[[1,0],[s,1]] : s in Z_N}; labels are s0..s{N-1}
    with label index equal to the shear amount s.
    """
    if N < 2:
        raise StructureError("level N must be >= 2")
    K = FiniteAbelianGroup((N, N))
    acting = ActingGroup.from_generators(
        K, [SHEAR_GENERATOR], labels=[f"s{i}" for i in range(N)])
    lattice = Subgroup(K, lattice_generators)
    return SemidirectSystem(acting, lattice)


def heisenberg_triple_product(N: int, t1, t2) -> tuple:
    """Group law on level-N triples (s, w, z), all additive mod N:

    (s, w, z)(s', w', z') = (s + s', w + w', z + z' + s*w')

    The z shift is the character w' evaluated at s, written additively.
    Matches the semidirect product law on (s, (w, z)) slices.
    """
    s, w, z = t1
    sp, wp, zp = t2
    return ((s + sp) % N, (w + wp) % N, (z + zp + s * wp) % N)


def heisenberg_dual_closed_form(N: int, s: int, point) -> tuple:
    """Dual action on (k, n): (k - n*s, n) mod N."""
    k, n = point
    return ((k - n * s) % N, n % N)


class TorusSystem(SemidirectSystem):
    """Shear system on Z_M x Z_M with the (n, m) root-of-unity lattice."""

    __slots__ = ("M", "n", "m")

    def __init__(self, M: int, n: int, m: int):
        if M < 1 or n < 1 or m < 1:
            raise StructureError("M, n, m must be positive")
        if M % n or M % m:
            raise StructureError(f"n and m must divide M, got n={n}, m={m}, M={M}")
        if m % n:
            raise StructureError(
                f"n must divide m (the (n, m) lattice is shear-stable only "
                f"when n | m), got n={n}, m={m}")
        K = FiniteAbelianGroup((M, M))
        acting = ActingGroup.from_generators(
            K, [SHEAR_GENERATOR], labels=[f"l{i}" for i in range(M)])
        lattice = Subgroup(K, [(M // n, 0), (0, M // m)])
        super().__init__(acting, lattice)
        self.M, self.n, self.m = M, n, m


def torus_system(M: int, n: int, m: int) -> TorusSystem:
    return TorusSystem(M, n, m)


def torus_zak_explicit(f: SemidirectSignal, ell: int, a: int, b: int,
                       p: int, q: int) -> complex:
    """The collapsed double sum for the torus system:

    sum_{k=1..n} sum_{j=1..m} f(ell, a + k*M/n, b + a*ell + j*M/m)
                              * e(k*(p - q*ell)/n) * e(j*q/m)

    with e(t) = exp(2*pi*i*t).  Equals the generic transform at (ell, (a,b),
    (p,q)) for every argument, not only representatives.
    """
    system = f.system
    if not isinstance(system, TorusSystem):
        raise StructureError("signal does not live on a torus system")
    M, n, m = system.M, system.n, system.m
    ell %= M
    values = f.slice(ell).values
    roots_n = np.exp(2j * np.pi * np.arange(n) / n)
    roots_m = np.exp(2j * np.pi * np.arange(m) / m)
    total = 0j
    for k in range(1, n + 1):
        x = (a + k * (M // n)) % M
        phase_k = roots_n[(k * (p - q * ell)) % n]
        for j in range(1, m + 1):
            y = (b + a * ell + j * (M // m)) % M
            total += values[x * M + y] * phase_k * roots_m[(j * q) % m]
    return complex(total)


def torus_zak_grid(f: SemidirectSignal, ell: int) -> np.ndarray:
    """torus_zak_explicit over the full grid: out[a, b, p, q]."""
    system = f.system
    if not isinstance(system, TorusSystem):
        raise StructureError("signal does not live on a torus system")
    M, n, m = system.M, system.n, system.m
    ell %= M
    V = f.slice(ell).values.reshape(M, M)
    A = np.arange(M)
    ks = np.arange(1, n + 1)
    js = np.arange(1, m + 1)
    X = (A[:, None] + ks[None, :] * (M // n)) % M              # (M, n)
    Y = (A[:, None, None] * ell + A[None, :, None] + js * (M // m)) % M  # (M, M, m)
    T = V[X[:, None, :, None], Y[:, :, None, :]]               # (M, M, n, m)
    ps = np.arange(n)
    qs = np.arange(m)
    roots_n = np.exp(2j * np.pi * np.arange(n) / n)
    roots_m = np.exp(2j * np.pi * np.arange(m) / m)
    expo_k = (ks[:, None, None] * (ps[None, :, None] - qs[None, None, :] * ell)) % n
    W = roots_n[expo_k][:, None, :, :] * roots_m[(js[:, None] * qs[None, :]) % m][None, :, None, :]
    return np.tensordot(T, W, axes=([2, 3], [0, 1]))           # (M, M, n, m)


def torus_plancherel(f: SemidirectSignal) -> tuple:
    """Grid Plancherel balance for the torus system.

    lhs = sum_ell (2 pi / M)^2 (nm)^{-2} sum_{a,b} sum_{p<n, q<m} |TZ|^2
    rhs = sum_ell (2 pi / M)^2 sum_{a,b} |f(ell, a, b)|^2

    The (a, b) sums run over the whole grid (each coset appears nm times,
    |TZ| is lattice-periodic), and the (nm)^{-2} weight is the product of the
    quotient and dual-quotient normalizations; with it the two sides agree
    exactly.  Returns (lhs, rhs).
    """
    system = f.system
    if not isinstance(system, TorusSystem):
        raise StructureError("signal does not live on a torus system")
    M, n, m = system.M, system.n, system.m
    cell = (2 * np.pi / M) ** 2
    lhs = 0.0
    rhs = 0.0
    for ell in f.support:
        Z = torus_zak_grid(f, ell)
        lhs += cell * float(np.sum(np.abs(Z) ** 2)) / (n * m) ** 2
        rhs += cell * float(np.sum(np.abs(f.slice(ell).values) ** 2))
    return lhs, rhs
