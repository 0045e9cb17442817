"""Group structure: elements, characters, pairing, subgroups, automorphisms.

Frozen scalar expectations were computed by hand from the defining formulas
(roots of unity, Hermite reduction) before being asserted here.
"""

import cmath

import numpy as np
import pytest

from tauzak.groups import (
    Automorphism,
    Character,
    FiniteAbelianGroup,
    GroupElement,
    InvarianceError,
    StructureError,
    Subgroup,
    all_subgroups,
    apply_auto,
    is_tau_invariant,
    pair,
    subgroup_from_generators,
    transversal,
)

Z4 = FiniteAbelianGroup((4,))
Z6 = FiniteAbelianGroup((6,))
Z12 = FiniteAbelianGroup((12,))
Z2xZ3 = FiniteAbelianGroup((2, 3))
Z2xZ4 = FiniteAbelianGroup((2, 4))
Z8SQ = FiniteAbelianGroup((8, 8))

SHEAR_8 = ((1, 1), (0, 1))


# ---------------------------------------------------------------------------
# groups, elements, indexing

def test_order_and_dim():
    assert Z4.order == 4
    assert Z2xZ3.order == 6
    assert Z8SQ.dim == 2


def test_bad_moduli_rejected():
    with pytest.raises(StructureError):
        FiniteAbelianGroup((0,))
    with pytest.raises(StructureError):
        FiniteAbelianGroup((4, -2))


def test_reduce_wraps_negatives():
    assert Z4.reduce((-1,)) == (3,)
    assert Z2xZ3.reduce((3, -4)) == (1, 2)


def test_index_round_trip():
    for g in (Z4, Z2xZ3, Z2xZ4):
        for i in range(g.order):
            assert g.index_of(g.residues_of(i)) == i


def test_element_arithmetic():
    a = Z2xZ3.element((1, 2))
    b = Z2xZ3.element((1, 2))
    assert (a + b).residues == (0, 1)
    assert (a - b).residues == (0, 0)
    assert (-a).residues == (1, 1)


def test_element_iteration_matches_residue_matrix():
    rows = [e.residues for e in Z2xZ4.elements()]
    assert rows == [tuple(r) for r in Z2xZ4.residue_matrix]


# ---------------------------------------------------------------------------
# pairing

def test_pair_z4_value():
    # <2, 1> on Z_4 is exp(2 pi i * 2/4) = -1
    value = pair(Z4.element((2,)), Z4.character((1,)))
    assert abs(value - (-1.0)) < 1e-12


def test_pair_mixed_moduli_value():
    # <(1,1),(1,1)> on Z_2 x Z_3 is exp(2 pi i (1/2 + 1/3))
    value = pair(Z2xZ3.element((1, 1)), Z2xZ3.character((1, 1)))
    expected = cmath.exp(2j * cmath.pi * (1 / 2 + 1 / 3))
    assert abs(value - expected) < 1e-12


def test_pair_unit_modulus():
    for k in Z2xZ4.elements():
        for w in Z2xZ4.characters():
            assert abs(abs(pair(k, w)) - 1.0) < 1e-12


@pytest.mark.parametrize("moduli", [(8,), (2, 6), (3, 9), (4, 4)])
def test_pair_bi_additive(moduli):
    group = FiniteAbelianGroup(moduli)
    assert group.order <= 64
    P = group.pairing_matrix
    R = group.residue_matrix
    n = group.order
    # index table of all pairwise sums, built independently of pair()
    moduli = np.asarray(group.moduli)
    sums = group.indices_of_rows(
        ((R[:, None, :] + R[None, :, :]) % moduli).reshape(n * n, -1)
    ).reshape(n, n)
    lhs = P[sums]                       # (i, j, w) -> <e_i + e_j, w>
    rhs = P[:, None, :] * P[None, :, :]
    assert np.max(np.abs(lhs - rhs)) < 1e-12
    # additivity in the character slot: characters share the residue indexing
    lhs_w = P[:, sums]                  # (k, i, j) -> <k, w_i + w_j>
    rhs_w = P[:, :, None] * P[:, None, :]
    assert np.max(np.abs(lhs_w - rhs_w)) < 1e-12


def test_pair_exponent_matches_pairing():
    N = Z2xZ4.exponent_modulus
    for k in Z2xZ4.elements():
        for w in Z2xZ4.characters():
            expo = Z2xZ4.pair_exponent(k.residues, w.residues)
            assert abs(pair(k, w)
                       - cmath.exp(2j * cmath.pi * expo / N)) < 1e-12


def test_character_inverse():
    w = Z2xZ3.character((1, 2))
    for k in Z2xZ3.elements():
        assert abs(pair(k, w) * pair(k, w.inverse()) - 1.0) < 1e-12


# ---------------------------------------------------------------------------
# subgroups

def test_subgroup_order_and_membership():
    L = Subgroup(Z4, [(2,)])
    assert L.order == 2
    assert L.contains((0,)) and L.contains((2,))
    assert not L.contains((1,))
    assert sorted(e.residues for e in L.elements()) == [(0,), (2,)]


def test_subgroup_from_redundant_generators():
    # 8 generates the same subgroup of Z_12 as gcd(8, 12) = 4
    L = subgroup_from_generators(Z12, [(8,)])
    assert L.order == 3
    assert L == Subgroup(Z12, [(4,)])


def test_transversal_is_lexicographic():
    L = Subgroup(Z6, [(3,)])
    reps = [e.residues for e in transversal(Z6, L)]
    assert reps == [(0,), (1,), (2,)]


def test_transversal_covers_group_once():
    L = Subgroup(Z2xZ4, [(1, 2)])
    seen = set()
    for rep in L.transversal():
        for off in L.elements():
            seen.add((rep + off).residues)
    assert len(seen) == Z2xZ4.order


def test_coset_decomposition():
    L = Subgroup(Z12, [(3,)])
    for e in Z12.elements():
        rep = L.coset_representative(e)
        off = L.coset_offset(e)
        assert L.contains(off)
        assert (rep + off).residues == e.residues


def test_coset_position_constant_on_cosets():
    L = Subgroup(Z2xZ4, [(0, 2)])
    for e in Z2xZ4.elements():
        for l in L.elements():
            assert L.coset_position(e) == L.coset_position(e + l)


# ---------------------------------------------------------------------------
# annihilators

def test_annihilator_of_even_subgroup():
    L = Subgroup(Z4, [(2,)])
    ann = L.annihilator()
    assert ann.order == 2
    assert sorted(e.residues for e in ann.elements()) == [(0,), (2,)]


def test_annihilator_pairs_trivially():
    L = Subgroup(Z12, [(3,)])
    ann = L.annihilator()
    N = Z12.exponent_modulus
    for l in L.elements():
        for w in ann.elements():
            assert Z12.pair_exponent(l.residues, w.residues) % N == 0


@pytest.mark.parametrize("group", [Z12, Z2xZ4])
def test_annihilator_involution_exhaustive(group):
    for L in all_subgroups(group):
        back = L.annihilator().annihilator()
        assert back == L
        assert L.order * L.annihilator().order == group.order


def test_subgroup_counts():
    # one subgroup of Z_12 per divisor; Z_2 x Z_4 has the classical eight
    assert len(list(all_subgroups(Z12))) == 6
    assert len(list(all_subgroups(Z2xZ4))) == 8


def test_trivial_and_full_annihilators():
    trivial = Subgroup(Z12, [])
    assert trivial.annihilator().order == Z12.order
    full = Subgroup(Z12, [(1,)])
    assert full.annihilator().order == 1


# ---------------------------------------------------------------------------
# automorphisms

def test_apply_shear():
    auto = Automorphism(Z8SQ, SHEAR_8)
    image = apply_auto(auto, Z8SQ.element((3, 5)))
    assert image.residues == (0, 5)


def test_apply_rotation_mod5():
    g = FiniteAbelianGroup((5, 5))
    auto = Automorphism(g, ((0, -1), (1, 0)))
    assert apply_auto(auto, g.element((1, 0))).residues == (0, 1)
    assert apply_auto(auto, g.element((0, 1))).residues == (4, 0)


def test_automorphism_permutation_semantics():
    auto = Automorphism(Z8SQ, SHEAR_8)
    perm = auto.permutation
    for i in range(Z8SQ.order):
        assert perm[i] == apply_auto(auto, Z8SQ.element_at(i)).index


def test_inverse_undoes():
    auto = Automorphism(Z8SQ, SHEAR_8)
    inv = auto.inverse()
    for e in Z8SQ.elements():
        assert apply_auto(inv, apply_auto(auto, e)).residues == e.residues


def test_compose_matches_sequential_application():
    a = Automorphism(Z8SQ, SHEAR_8)
    b = Automorphism(Z8SQ, ((1, 0), (1, 1)))
    ab = a.compose(b)
    for e in Z8SQ.elements():
        assert apply_auto(ab, e).residues == \
            apply_auto(a, apply_auto(b, e)).residues


def test_dual_pairing_law():
    # <k, dual(A)(w)> = <A^{-1} k, w>
    for matrix in (SHEAR_8, ((1, 0), (1, 1)), ((3, 2), (1, 1))):
        auto = Automorphism(Z8SQ, matrix)
        dual = auto.dual()
        inv = auto.inverse()
        for k in Z8SQ.elements():
            for w in Z8SQ.characters():
                lhs = pair(k, Character(Z8SQ, apply_auto(dual, Z8SQ.element(
                    w.residues)).residues))
                rhs = pair(apply_auto(inv, k), w)
                assert abs(lhs - rhs) < 1e-12


def test_non_invertible_matrix_rejected():
    with pytest.raises(StructureError):
        Automorphism(Z4, ((2,),))


def test_divisibility_violation_rejected():
    # an entry mapping the order-2 generator into Z_4 cannot be a homomorphism
    with pytest.raises(StructureError):
        Automorphism(Z2xZ4, ((1, 0), (1, 1)))


def test_mixed_moduli_automorphism_accepted():
    auto = Automorphism(Z2xZ4, ((1, 2), (0, 1)))
    assert apply_auto(auto, Z2xZ4.element((1, 1))).residues == (1, 1)
    assert apply_auto(auto, Z2xZ4.element((0, 1))).residues == (0, 1)
    assert apply_auto(auto, Z2xZ4.element((1, 2))).residues == (1, 2)


def test_is_identity():
    assert Automorphism(Z8SQ, ((1, 0), (0, 1))).is_identity()
    assert Automorphism(Z8SQ, ((9, 8), (0, 1))).is_identity()
    assert not Automorphism(Z8SQ, SHEAR_8).is_identity()


# ---------------------------------------------------------------------------
# invariance

def test_shear_preserves_even_lattice():
    L = Subgroup(Z8SQ, [(2, 0), (0, 2)])
    assert is_tau_invariant(L, [Automorphism(Z8SQ, SHEAR_8)])


def test_shear_moves_axis_lattice():
    # the lower shear sends (t, 0) to (t, t), leaving the first axis
    L = Subgroup(Z8SQ, [(1, 0)])
    assert not is_tau_invariant(L, [Automorphism(Z8SQ, ((1, 0), (1, 1)))])


def test_torus_style_invariance_depends_on_divisibility():
    g = FiniteAbelianGroup((12, 12))
    tau = Automorphism(g, ((1, 0), (1, 1)))
    fine_over_coarse = Subgroup(g, [(6, 0), (0, 3)])   # n=2 | m=4
    coarse_over_fine = Subgroup(g, [(3, 0), (0, 6)])   # n=4, m=2
    assert is_tau_invariant(fine_over_coarse, [tau])
    assert not is_tau_invariant(coarse_over_fine, [tau])
