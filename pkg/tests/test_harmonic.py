"""Signals, Fourier transforms, periodization, and the summation formula."""

import numpy as np
import pytest

from tauzak.groups import FiniteAbelianGroup, StructureError, Subgroup, pair
from tauzak.harmonic import (
    QuotientSignal,
    Signal,
    fourier,
    inverse_fourier,
    periodize,
    verify_weil,
)
from tauzak.rng import PortableRng

Z2 = FiniteAbelianGroup((2,))
Z4 = FiniteAbelianGroup((4,))
Z2xZ6 = FiniteAbelianGroup((2, 6))
Z3xZ9 = FiniteAbelianGroup((3, 9))


# ---------------------------------------------------------------------------
# signals

def test_signal_length_checked():
    with pytest.raises(StructureError):
        Signal(Z4, [1.0, 2.0])


def test_signal_values_read_only():
    v = Signal.delta(Z4)
    with pytest.raises(ValueError):
        v.values[0] = 5.0


def test_delta_and_constant():
    d = Signal.delta(Z4, at=(2,))
    assert d.value_at(Z4.element((2,))) == 1.0
    assert d.norm_sq == 1.0
    c = Signal.constant(Z4, 2.0)
    assert c.norm_sq == 16.0


def test_inner_is_conjugate_linear_in_second_slot():
    rng = PortableRng(3)
    v = Signal.random(Z2xZ6, rng)
    w = Signal.random(Z2xZ6, rng)
    assert abs(v.inner(w) - np.conj(w.inner(v))) < 1e-12
    assert abs(v.inner(v) - v.norm_sq) < 1e-12


# ---------------------------------------------------------------------------
# fourier

def test_fourier_of_delta_is_flat():
    spectrum = fourier(Signal.delta(Z4))
    assert np.allclose(spectrum.values, np.ones(4), atol=1e-12)
    assert spectrum.haar_weight == pytest.approx(0.25)


def test_fourier_of_constant_is_delta():
    spectrum = fourier(Signal.constant(Z4))
    assert np.allclose(spectrum.values, [4, 0, 0, 0], atol=1e-12)


def test_fourier_alternating_two_point():
    spectrum = fourier(Signal(Z2, [1.0, -1.0]))
    assert np.allclose(spectrum.values, [0, 2], atol=1e-12)


def test_fourier_matches_defining_sum():
    rng = PortableRng(11)
    for group in (Z2xZ6, FiniteAbelianGroup((5,))):
        v = Signal.random(group, rng)
        spectrum = fourier(v)
        for w in group.characters():
            direct = sum(v.value_at(k) * np.conj(pair(k, w))
                         for k in group.elements())
            assert abs(spectrum.value_at(w) - direct) < 1e-9


def test_fourier_linearity():
    rng = PortableRng(5)
    v = Signal.random(Z2xZ6, rng)
    w = Signal.random(Z2xZ6, rng)
    lhs = fourier(Signal(Z2xZ6, 2.0 * v.values + 1j * w.values))
    rhs = 2.0 * fourier(v).values + 1j * fourier(w).values
    assert np.max(np.abs(lhs.values - rhs)) < 1e-12


def test_fourier_plancherel_random():
    rng = PortableRng(7)
    for _ in range(100):
        v = Signal.random(Z2xZ6, rng)
        assert abs(fourier(v).norm_sq - v.norm_sq) < 1e-9 * v.norm_sq


def test_fourier_inversion_random():
    rng = PortableRng(9)
    worst = 0.0
    for _ in range(100):
        v = Signal.random(Z2xZ6, rng)
        back = inverse_fourier(fourier(v))
        worst = max(worst, float(np.max(np.abs(back.values - v.values))))
    assert worst < 1e-9


def test_fft_method_matches_direct():
    rng = PortableRng(13)
    v = Signal.random(Z3xZ9, rng)
    assert np.max(np.abs(fourier(v, method="fft").values
                         - fourier(v).values)) < 1e-9
    s = fourier(v)
    assert np.max(np.abs(inverse_fourier(s, method="fft").values
                         - inverse_fourier(s).values)) < 1e-9


def test_unknown_method_rejected():
    with pytest.raises(StructureError):
        fourier(Signal.delta(Z4), method="walsh")


def test_translation_becomes_modulation():
    # fourier(v(.-a))(w) = conj(<a, w>) fourier(v)(w) for the chosen sign
    rng = PortableRng(17)
    v = Signal.random(Z2xZ6, rng)
    a = Z2xZ6.element((1, 4))
    shifted = Signal(Z2xZ6, [v.value_at(k - a) for k in Z2xZ6.elements()])
    lhs = fourier(shifted)
    for w in Z2xZ6.characters():
        assert abs(lhs.value_at(w)
                   - np.conj(pair(a, w)) * fourier(v).value_at(w)) < 1e-9


# ---------------------------------------------------------------------------
# periodization

def test_periodize_delta():
    L = Subgroup(Z4, [(2,)])
    out = periodize(Signal.delta(Z4), L)
    assert np.allclose(out.values, [1, 0], atol=1e-12)


def test_periodize_constant():
    L = Subgroup(Z4, [(2,)])
    out = periodize(Signal.constant(Z4), L)
    assert np.allclose(out.values, [2, 2], atol=1e-12)


def test_periodize_ramp():
    L = Subgroup(Z4, [(2,)])
    out = periodize(Signal(Z4, [1, 2, 3, 4]), L)
    assert np.allclose(out.values, [4, 6], atol=1e-12)


def test_quotient_value_constant_on_cosets():
    L = Subgroup(Z4, [(2,)])
    out = periodize(Signal(Z4, [1, 2, 3, 4]), L)
    assert out.value_at(Z4.element((2,))) == out.value_at(Z4.element((0,)))
    assert out.value_at(Z4.element((3,))) == pytest.approx(6)


def test_quotient_signal_shape_checked():
    L = Subgroup(Z4, [(2,)])
    with pytest.raises(StructureError):
        QuotientSignal(L, [1, 2, 3])


def test_periodize_foreign_subgroup_rejected():
    L = Subgroup(Z2xZ6, [(0, 2)])
    with pytest.raises(StructureError):
        periodize(Signal.delta(Z4), L)


# ---------------------------------------------------------------------------
# summation formula

def test_summation_formula_ramp():
    L = Subgroup(Z4, [(2,)])
    v = Signal(Z4, [1, 2, 3, 4])
    assert periodize(v, L).total() == pytest.approx(10)
    assert complex(np.sum(v.values)) == pytest.approx(10)
    assert verify_weil(v, L) < 1e-12


def test_summation_formula_random():
    rng = PortableRng(19)
    subgroups = [Subgroup(Z3xZ9, gens) for gens in
                 ([(1, 0)], [(0, 3)], [(1, 3)], [(0, 0)])]
    for _ in range(100):
        v = Signal.random(Z3xZ9, rng)
        for L in subgroups:
            assert verify_weil(v, L) < 1e-9
