"""Named identity checks, each returning a measured deviation.

The finite suite drives every identity the finite model supports: Weil's
formula, Fourier inversion and norm preservation, the two action
equivariances, classical and twisted Zak isometry, orthogonality,
quasi-periodicity against direct summation, the tensor factorization, and
the exact (integer arithmetic) permutation and isomorphism checks.  The
plane suite measures quadrature isometry, its convergence rate, sampled
quasi-periodicity, and the dual-lattice pairing on the sampled R^2 model.

Deviations are maxima over seeded random trials unless a check is
exhaustive, in which case the deviation is an exact violation count.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from tauzak.actions import SemidirectSystem
from tauzak.groups import Subgroup
from tauzak.harmonic import Signal, fourier, inverse_fourier, periodize, verify_weil
from tauzak.plane import (
    CosineBump,
    SampledPlaneSystem,
    convergence_report,
    dual_lattice_pairings_are_integral,
    isometry_report,
    plane_dual_action,
    quasi_periodicity_residual,
    sigma_inverse,
)
from tauzak.rng import PortableRng
from tauzak.showcase import (
    TorusSystem,
    heisenberg_dual_closed_form,
    heisenberg_triple_product,
    torus_plancherel,
    torus_zak_explicit,
)
from tauzak.tau_zak import (
    SemidirectSignal,
    inner,
    inner_zak,
    tau_zak,
    tensor,
    verify_quasi_periodicity,
)
from tauzak.zak import ZakArray, inverse_zak, zak

DEFAULT_TOLERANCE = 1e-9
PLANE_ISOMETRY_TOLERANCE = 0.01
CONVERGENCE_BAND = (1.4, 2.6)


@dataclass(frozen=True)
class CheckResult:
    name: str
    deviation: float
    tolerance: float
    passed: bool
    detail: str = ""

    def as_dict(self) -> dict:
        return {"name": self.name, "deviation": self.deviation,
                "tolerance": self.tolerance, "passed": self.passed,
                "detail": self.detail}


def _result(name, deviation, tol, detail="") -> CheckResult:
    deviation = float(deviation)
    return CheckResult(name, deviation, float(tol), deviation <= tol, detail)


def _exact(name, count, detail="") -> CheckResult:
    return CheckResult(name, float(count), 0.0, count == 0, detail)


# ---------------------------------------------------------------------------
# finite suite

def _pullback(system: SemidirectSystem, v: Signal, h: int) -> Signal:
    """(U_h v)(k) = v(tau_{h^{-1}} k)."""
    hinv = system.acting.inverse_index(h)
    perm = system.automorphism(hinv).permutation
    return Signal(v.group, v.values[perm], v.haar_weight)


def check_weil(system, rng, trials, tol) -> CheckResult:
    worst = max(verify_weil(Signal.random(system.group, rng), system.lattice)
                for _ in range(trials))
    return _result("weil-formula", worst, tol)


def check_fourier_plancherel(system, rng, trials, tol) -> CheckResult:
    worst = 0.0
    for _ in range(trials):
        v = Signal.random(system.group, rng)
        vhat = fourier(v)
        worst = max(worst, abs(vhat.norm_sq - v.norm_sq) / v.norm_sq)
    return _result("fourier-plancherel", worst, tol)


def check_fourier_inversion(system, rng, trials, tol) -> CheckResult:
    worst = 0.0
    for _ in range(trials):
        v = Signal.random(system.group, rng)
        back = inverse_fourier(fourier(v))
        worst = max(worst, float(np.max(np.abs(back.values - v.values))))
    return _result("fourier-inversion", worst, tol)


def check_fourier_equivariance(system, rng, trials, tol) -> CheckResult:
    """fourier(U_h v)(w) = delta_K(h) * fourier(v)(w o tau_h), all h."""
    worst = 0.0
    for _ in range(trials):
        v = Signal.random(system.group, rng)
        vhat = fourier(v)
        for h in range(len(system.acting)):
            hinv = system.acting.inverse_index(h)
            lhs = fourier(_pullback(system, v, h))
            moved = system.dual_automorphism(hinv).permutation
            rhs = float(system.delta_K[h]) * vhat.values[moved]
            worst = max(worst, float(np.max(np.abs(lhs.values - rhs))))
    return _result("fourier-equivariance", worst, tol)


def check_periodization_equivariance(system, rng, trials, tol) -> CheckResult:
    """T_L(U_h v)(k + L) = delta_L(h) * T_L v(tau_{h^{-1}} k + L), all h."""
    worst = 0.0
    lat = system.lattice
    reps = lat.transversal()
    for _ in range(trials):
        v = Signal.random(system.group, rng)
        pv = periodize(v, lat)
        for h in range(len(system.acting)):
            hinv = system.acting.inverse_index(h)
            auto_inv = system.automorphism(hinv)
            lhs = periodize(_pullback(system, v, h), lat)
            for r, rep in enumerate(reps):
                rhs = float(system.delta_L[h]) * pv.value_at(auto_inv(rep))
                worst = max(worst, abs(lhs.values[r] - rhs))
    return _result("periodization-equivariance", worst, tol)


def check_zak_isometry(system, rng, trials, tol) -> CheckResult:
    worst = 0.0
    for _ in range(trials):
        v = Signal.random(system.group, rng)
        worst = max(worst, abs(zak(v, system.lattice).norm_sq - v.norm_sq) / v.norm_sq)
    return _result("zak-isometry", worst, tol)


def check_zak_inversion(system, rng, trials, tol) -> CheckResult:
    worst = 0.0
    for _ in range(trials):
        v = Signal.random(system.group, rng)
        back = inverse_zak(zak(v, system.lattice))
        worst = max(worst, float(np.max(np.abs(back.values - v.values))))
    return _result("zak-inversion", worst, tol)


def _random_sd(system, rng) -> SemidirectSignal:
    return SemidirectSignal.random(system, rng)


def check_tau_zak_isometry(system, rng, trials, tol) -> CheckResult:
    worst = 0.0
    for _ in range(trials):
        f = _random_sd(system, rng)
        worst = max(worst, abs(tau_zak(f).norm_sq - f.norm_sq) / f.norm_sq)
    return _result("tau-zak-isometry", worst, tol)


def check_tau_zak_orthogonality(system, rng, trials, tol) -> CheckResult:
    worst = 0.0
    for _ in range(trials):
        f = _random_sd(system, rng)
        g = _random_sd(system, rng)
        worst = max(worst, abs(inner_zak(tau_zak(f), tau_zak(g)) - inner(f, g)))
    return _result("tau-zak-orthogonality", worst, tol)


def check_tau_zak_quasi_periodicity(system, rng, tol) -> CheckResult:
    f = _random_sd(system, rng)
    return _result("tau-zak-quasi-periodicity",
                   verify_quasi_periodicity(tau_zak(f), f), tol)


def check_tensor_identity(system, rng, tol) -> CheckResult:
    """tau_zak(u (x) v)(h, k, w) = u(h) * Z_L v(tau_h k, w_h), via the
    scalar quasi-periodic extension of the untwisted array (independent of
    the cached permutation tables)."""
    n_h = len(system.acting)
    u = {h: complex(rng.symmetric(), rng.symmetric()) for h in range(n_h)}
    v = Signal.random(system.group, rng)
    f = tensor(u, v, system)
    field = tau_zak(f)
    base = zak(v, system.lattice)
    reps = system.transversal()
    duals = system.dual_transversal()
    worst = 0.0
    for h in range(n_h):
        arr = field.slice_array(h)
        auto = system.automorphism(h)
        for r, k in enumerate(reps):
            moved_k = auto(k)
            for c, w in enumerate(duals):
                moved_w = system.dual_action(h, w)
                expect = u[h] * base.value_at(moved_k, moved_w)
                worst = max(worst, abs(arr[r, c] - expect))
    return _result("tensor-identity", worst, tol)


def check_dual_action_pairing(system) -> CheckResult:
    """<tau_{h^{-1}} k, w> = <k, w_h> as exact root exponents, all h, k, w."""
    K = system.group
    E = K.pairing_exponents
    bad = 0
    for h in range(len(system.acting)):
        hinv = system.acting.inverse_index(h)
        p = system.automorphism(hinv).permutation
        q = system.dual_automorphism(h).permutation
        bad += int(np.count_nonzero(E[p] != E[:, q]))
    return _exact("dual-action-pairing", bad)


def check_action_permutations(system) -> CheckResult:
    bad = 0
    n = len(system.lattice.transversal_indices)
    c = len(system.annihilator.transversal_indices)
    for h in range(len(system.acting)):
        if not np.array_equal(np.sort(system.rep_permutation(h)), np.arange(n)):
            bad += 1
        if not np.array_equal(np.sort(system.dual_rep_permutation(h)), np.arange(c)):
            bad += 1
    return _exact("quotient-action-permutation", bad)


def check_isomorphisms(system) -> CheckResult:
    report = system.verify_quotient_dual_isos()
    detail = "; ".join(report.witnesses[:3])
    return _exact("quotient-dual-isomorphisms", report.total, detail)


def check_annihilator_involution(system) -> CheckResult:
    lat = system.lattice
    back = lat.annihilator().annihilator()
    return _exact("annihilator-involution", 0 if back == lat else 1)


def check_delta_multiplicativity(system) -> CheckResult:
    bad = 0
    acting = system.acting
    for delta in (system.delta_K, system.delta_L):
        for i in range(len(acting)):
            for j in range(len(acting)):
                if delta[acting.compose_indices(i, j)] != delta[i] * delta[j]:
                    bad += 1
    return _exact("delta-multiplicativity", bad)


def run_finite_suite(system: SemidirectSystem, seed: int = 0, trials: int = 25,
                     tol: float = DEFAULT_TOLERANCE) -> list:
    rng = PortableRng(seed)
    results = [
        check_weil(system, rng, trials, tol),
        check_fourier_plancherel(system, rng, trials, tol),
        check_fourier_inversion(system, rng, trials, tol),
        check_fourier_equivariance(system, rng, min(trials, 4), tol),
        check_periodization_equivariance(system, rng, min(trials, 4), tol),
        check_zak_isometry(system, rng, trials, tol),
        check_zak_inversion(system, rng, trials, tol),
        check_tau_zak_isometry(system, rng, trials, tol),
        check_tau_zak_orthogonality(system, rng, trials, tol),
        check_tau_zak_quasi_periodicity(system, rng, tol),
        check_tensor_identity(system, rng, tol),
        check_dual_action_pairing(system),
        check_action_permutations(system),
        check_isomorphisms(system),
        check_annihilator_involution(system),
        check_delta_multiplicativity(system),
    ]
    return results


# ---------------------------------------------------------------------------
# showcase-specific checks

def check_heisenberg_closed_form(system: SemidirectSystem) -> CheckResult:
    """Structural dual action vs (k, n) -> (k - n s, n), exhaustively."""
    K = system.group
    N = K.moduli[0]
    bad = 0
    for s in range(len(system.acting)):
        for w in K.characters():
            image = system.dual_action(s, w)
            if image.residues != heisenberg_dual_closed_form(N, s, w.residues):
                bad += 1
    return _exact("dual-action-closed-form", bad)


def check_heisenberg_triple_law(system: SemidirectSystem, rng,
                                trials: int) -> CheckResult:
    """Triple product law and associativity against the semidirect law on
    (s, (w, z)) slices; random triples."""
    from tauzak.actions import SdElement, sd_multiply

    K = system.group
    N = K.moduli[0]
    bad = 0
    for _ in range(trials):
        t = [(rng.integer(N), rng.integer(N), rng.integer(N)) for _ in range(3)]
        p12 = heisenberg_triple_product(N, t[0], t[1])
        a = SdElement(system, t[0][0], K.element((t[0][1], t[0][2])))
        b = SdElement(system, t[1][0], K.element((t[1][1], t[1][2])))
        prod = sd_multiply(a, b)
        if (prod.h, prod.k.residues) != (p12[0], (p12[1], p12[2])):
            bad += 1
        left = heisenberg_triple_product(N, p12, t[2])
        right = heisenberg_triple_product(
            N, t[0], heisenberg_triple_product(N, t[1], t[2]))
        if left != right:
            bad += 1
    return _exact("triple-product-law", bad)


def check_torus_explicit_formula(system: TorusSystem, rng,
                                 tol: float) -> CheckResult:
    """The collapsed double sum equals the generic transform at every
    representative pair, for a random signal."""
    f = _random_sd(system, rng)
    field = tau_zak(f)
    reps = system.transversal()
    duals = system.dual_transversal()
    worst = 0.0
    for h in f.support:
        arr = field.slice_array(h)
        for r, k in enumerate(reps):
            a, b = k.residues
            for c, w in enumerate(duals):
                p, q = w.residues
                explicit = torus_zak_explicit(f, h, a, b, p, q)
                worst = max(worst, abs(arr[r, c] - explicit))
    return _result("explicit-formula-agreement", worst, tol)


def check_torus_plancherel(system: TorusSystem, rng, tol: float) -> CheckResult:
    f = _random_sd(system, rng)
    lhs, rhs = torus_plancherel(f)
    return _result("plancherel-balance", abs(lhs - rhs) / rhs, tol)


def run_heisenberg_checks(system, seed: int = 0, trials: int = 25) -> list:
    rng = PortableRng(seed + 1)
    return [check_heisenberg_closed_form(system),
            check_heisenberg_triple_law(system, rng, max(trials, 10))]


def run_torus_checks(system, seed: int = 0,
                     tol: float = DEFAULT_TOLERANCE) -> list:
    rng = PortableRng(seed + 2)
    return [check_torus_explicit_formula(system, rng, tol),
            check_torus_plancherel(system, rng, tol)]


# ---------------------------------------------------------------------------
# plane suite

def default_plane_bumps(system: SampledPlaneSystem) -> dict:
    """One smooth bump per slice, centered on the transported cell center."""
    a, b = float(system.alpha), float(system.beta)
    bumps = {}
    for i, sigma in enumerate(system.sigmas):
        c1 = sigma[0][0] * a / 2 + sigma[0][1] * b / 2
        c2 = sigma[1][0] * a / 2 + sigma[1][1] * b / 2
        bumps[i] = CosineBump(center=(c1, c2), halfwidth=(0.3 * a, 0.3 * b))
    return bumps


def _has_cut(bump) -> bool:
    parts = getattr(bump, "bumps", (bump,))
    return any(getattr(p, "left_cut", None) is not None for p in parts)


def run_plane_suite(system: SampledPlaneSystem, bumps: dict | None = None,
                    tol: float = DEFAULT_TOLERANCE,
                    isometry_tol: float = PLANE_ISOMETRY_TOLERANCE) -> list:
    if bumps is None:
        bumps = default_plane_bumps(system)
    results = []

    report = isometry_report(system, bumps)
    results.append(_result(
        "plane-isometry", report.rel_error, isometry_tol,
        f"zak {report.zak_side:.12g} vs signal {report.signal_side:.12g} "
        f"at {system.samples} samples/axis"))

    if any(_has_cut(b) for b in bumps.values()):
        conv = convergence_report(system, bumps)
        lo, hi = CONVERGENCE_BAND
        ratio = conv.ratio
        outside = max(0.0, lo - ratio, ratio - hi)
        results.append(_result(
            "plane-convergence-ratio", outside, 0.0,
            f"error {conv.coarse.rel_error:.3e} -> {conv.fine.rel_error:.3e}, "
            f"ratio {ratio:.3f}, band [{lo}, {hi}]"))

    a, b = float(system.alpha), float(system.beta)
    points = [((0.12 * a, 0.37 * b), (0.41 / a, 0.23 / b)),
              ((0.58 * a, 0.81 * b), (0.77 / a, 0.64 / b))]
    worst = 0.0
    for i in range(len(system.sigmas)):
        if i in bumps:
            worst = max(worst, quasi_periodicity_residual(system, bumps, i, points))
    results.append(_result("plane-quasi-periodicity", worst, tol))

    ok = dual_lattice_pairings_are_integral(system)
    results.append(_exact("dual-pairing-integrality", 0 if ok else 1))

    bad = 0
    for sigma in system.sigmas:
        inv = sigma_inverse(sigma)
        for w in ((1, 0), (0, 1), (3, 5)):
            back = plane_dual_action(inv, plane_dual_action(sigma, w))
            if tuple(back) != w:
                bad += 1
    results.append(_exact("dual-action-inversion", bad))
    return results
