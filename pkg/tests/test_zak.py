"""Classical lattice Zak transform: examples, isometry, inversion, extension."""

import numpy as np
import pytest

from tauzak.groups import FiniteAbelianGroup, StructureError, Subgroup, pair
from tauzak.harmonic import Signal
from tauzak.rng import PortableRng
from tauzak.zak import ZakArray, inverse_zak, quasi_periodic_extension, zak

Z4 = FiniteAbelianGroup((4,))
HALF_Z4 = Subgroup(Z4, [(2,)])


def direct_zak_value(v, lattice, k, w):
    """Defining sum, evaluated without any fundamental-domain bookkeeping."""
    return sum(v.value_at(k + l) * pair(l, w) for l in lattice.elements())


# ---------------------------------------------------------------------------
# worked examples

def test_delta_table():
    arr = zak(Signal.delta(Z4), HALF_Z4)
    assert np.allclose(arr.values, [[1, 1], [0, 0]], atol=1e-12)


def test_constant_table():
    arr = zak(Signal.constant(Z4), HALF_Z4)
    assert np.allclose(arr.values, [[2, 0], [2, 0]], atol=1e-12)


def test_trivial_lattice_copies_signal():
    g = FiniteAbelianGroup((6,))
    v = Signal(g, [1, 2j, 3, 4, 5, 6])
    arr = zak(v, Subgroup(g, []))
    assert arr.values.shape == (6, 1)
    assert np.allclose(arr.values[:, 0], v.values, atol=1e-12)


def test_table_matches_direct_sum_everywhere():
    g = FiniteAbelianGroup((2, 8))
    L = Subgroup(g, [(0, 2)])
    v = Signal.random(g, PortableRng(23))
    arr = zak(v, L)
    for r, k in enumerate(L.transversal()):
        for c, w in enumerate(L.dual_transversal()):
            assert abs(arr.values[r, c] - direct_zak_value(v, L, k, w)) < 1e-9


# ---------------------------------------------------------------------------
# isometry and linearity

@pytest.mark.parametrize("moduli,gens", [
    ((12,), [(2,)]),
    ((12,), [(3,)]),
    ((2, 8), [(0, 2)]),
])
def test_isometry_random(moduli, gens):
    group = FiniteAbelianGroup(moduli)
    L = Subgroup(group, gens)
    rng = PortableRng(29)
    for _ in range(50):
        v = Signal.random(group, rng)
        arr = zak(v, L)
        assert abs(arr.norm_sq - v.norm_sq) < 1e-9 * v.norm_sq


def test_norm_weights():
    # row weight 1, column weight 1/|L|: the delta table has norm 1
    arr = zak(Signal.delta(Z4), HALF_Z4)
    assert arr.norm_sq == pytest.approx(1.0)
    assert arr.norm == pytest.approx(1.0)


def test_linearity():
    rng = PortableRng(31)
    v = Signal.random(Z4, rng)
    w = Signal.random(Z4, rng)
    mixed = zak(Signal(Z4, 3.0 * v.values - 2j * w.values), HALF_Z4)
    split = 3.0 * zak(v, HALF_Z4).values - 2j * zak(w, HALF_Z4).values
    assert np.max(np.abs(mixed.values - split)) < 1e-12


def test_inner_polarizes_isometry():
    rng = PortableRng(37)
    v = Signal.random(Z4, rng)
    w = Signal.random(Z4, rng)
    assert abs(zak(v, HALF_Z4).inner(zak(w, HALF_Z4)) - v.inner(w)) < 1e-9


# ---------------------------------------------------------------------------
# inversion

def test_inverse_of_delta_table():
    arr = ZakArray(HALF_Z4, [[1, 1], [0, 0]])
    assert np.allclose(inverse_zak(arr).values, [1, 0, 0, 0], atol=1e-12)


def test_inverse_of_constant_table():
    arr = ZakArray(HALF_Z4, [[2, 0], [2, 0]])
    assert np.allclose(inverse_zak(arr).values, [1, 1, 1, 1], atol=1e-12)


def test_round_trip_random():
    g = FiniteAbelianGroup((12,))
    L = Subgroup(g, [(3,)])
    rng = PortableRng(41)
    worst = 0.0
    for _ in range(100):
        v = Signal.random(g, rng)
        back = inverse_zak(zak(v, L))
        worst = max(worst, float(np.max(np.abs(back.values - v.values))))
    assert worst < 1e-9


def test_dimension_mismatch_rejected():
    with pytest.raises(StructureError):
        ZakArray(HALF_Z4, [[1, 1, 1], [0, 0, 0]])


# ---------------------------------------------------------------------------
# quasi-periodic extension

def test_representative_inputs_pass_through():
    v = Signal.random(Z4, PortableRng(43))
    arr = zak(v, HALF_Z4)
    for r, k in enumerate(HALF_Z4.transversal()):
        for c, w in enumerate(HALF_Z4.dual_transversal()):
            assert quasi_periodic_extension(arr, k, w) == \
                pytest.approx(arr.values[r, c])


def test_extension_of_delta_past_lattice():
    arr = zak(Signal.delta(Z4), HALF_Z4)
    value = quasi_periodic_extension(arr, Z4.element((2,)), Z4.character((0,)))
    assert value == pytest.approx(1.0)


def test_extension_agrees_with_direct_sum():
    g = FiniteAbelianGroup((12,))
    L = Subgroup(g, [(2,)])
    v = Signal.random(g, PortableRng(47))
    arr = zak(v, L)
    for k in g.elements():
        for w in g.characters():
            assert abs(quasi_periodic_extension(arr, k, w)
                       - direct_zak_value(v, L, k, w)) < 1e-9


def test_lattice_shift_multiplies_by_conjugate_phase():
    g = FiniteAbelianGroup((2, 8))
    L = Subgroup(g, [(0, 2)])
    v = Signal.random(g, PortableRng(53))
    arr = zak(v, L)
    for k in L.transversal():
        for w in L.dual_transversal():
            base = quasi_periodic_extension(arr, k, w)
            for l in L.elements():
                shifted = quasi_periodic_extension(arr, k + l, w)
                assert abs(shifted - np.conj(pair(l, w)) * base) < 1e-9


def test_annihilator_shift_leaves_value():
    g = FiniteAbelianGroup((12,))
    L = Subgroup(g, [(3,)])
    v = Signal.random(g, PortableRng(59))
    arr = zak(v, L)
    for k in L.transversal():
        for w in L.dual_transversal():
            base = quasi_periodic_extension(arr, k, w)
            for xi in L.annihilator().elements():
                moved = g.character(
                    tuple((a + b) % m for a, b, m
                          in zip(w.residues, xi.residues, g.moduli)))
                assert abs(quasi_periodic_extension(arr, k, moved)
                           - base) < 1e-9
