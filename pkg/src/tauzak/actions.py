"""Semidirect products H x|_tau K and the actions they induce.

H is a finite group of automorphisms of K (materialized as a closed list with
a multiplication table).  Given a tau-invariant subgroup L the system derives

  * the dual action w_h = w o tau_{h^{-1}} (transpose of the inverse matrix,
    with exact modulus bookkeeping for mixed moduli),
  * the quotient action on K/L and its dual on K^/L_perp, both as
    permutations of the lexicographic transversals,
  * the product action on K/L x K^/L_perp, and
  * modular functions delta_K, delta_L as explicit maps H -> Q_{>0}
    (identically 1 here: finite groups are unimodular, but the weights are
    carried so every formula states its measure dependence).

Group law and inverse of the semidirect product:

    (h, k) (h', k') = (h h', k + tau_h(k'))
    (h, k)^{-1}     = (h^{-1}, tau_{h^{-1}}(-k))
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from tauzak.groups import (
    Automorphism,
    Character,
    FiniteAbelianGroup,
    GroupElement,
    InvarianceError,
    StructureError,
    Subgroup,
)

DEFAULT_CLOSURE_CAP = 10_000


class ActingGroup:
    """A finite set of automorphisms closed under composition and inverse."""

    __slots__ = ("group", "elements", "table", "inverse_indices", "labels", "_index")

    def __init__(self, group: FiniteAbelianGroup, elements, labels=None):
        self.group = group
        self.elements = tuple(elements)
        if not self.elements or not self.elements[0].is_identity():
            raise StructureError("acting group must list the identity first")
        self._index = {a.matrix: i for i, a in enumerate(self.elements)}
        if len(self._index) != len(self.elements):
            raise StructureError("acting group contains duplicate automorphisms")
        n = len(self.elements)
        table = np.empty((n, n), dtype=np.int64)
        for i, a in enumerate(self.elements):
            for j, b in enumerate(self.elements):
                prod = a.compose(b)
                idx = self._index.get(prod.matrix)
                if idx is None:
                    raise StructureError("acting group is not closed under composition")
                table[i, j] = idx
        self.table = table
        self.table.setflags(write=False)
        inverse_indices = np.empty(n, dtype=np.int64)
        for i in range(n):
            hits = np.flatnonzero(table[i] == 0)
            if hits.size != 1:
                raise StructureError("acting group is not closed under inverse")
            inverse_indices[i] = hits[0]
        self.inverse_indices = inverse_indices
        self.inverse_indices.setflags(write=False)
        if labels is None:
            labels = tuple(f"h{i}" for i in range(n))
        else:
            labels = tuple(str(x) for x in labels)
            if len(labels) != n or len(set(labels)) != n:
                raise StructureError("labels must be distinct, one per element")
        self.labels = labels

    @classmethod
    def from_generators(cls, group: FiniteAbelianGroup, matrices,
                        cap: int = DEFAULT_CLOSURE_CAP, labels=None) -> ActingGroup:
        """Close the generators under composition (breadth-first, identity first)."""
        identity = Automorphism(group, np.eye(group.dim, dtype=int))
        gens = [Automorphism(group, m) for m in matrices]
        elements = [identity]
        seen = {identity.matrix: 0}
        frontier = [identity]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = a.compose(g)
                    if b.matrix not in seen:
                        if len(elements) >= cap:
                            raise StructureError(
                                f"closure exceeded the cap of {cap} automorphisms")
                        seen[b.matrix] = len(elements)
                        elements.append(b)
                        nxt.append(b)
            frontier = nxt
        return cls(group, elements, labels=labels)

    def __len__(self):
        return len(self.elements)

    def index_of(self, auto: Automorphism) -> int:
        idx = self._index.get(auto.matrix)
        if idx is None:
            raise StructureError("automorphism is not in this acting group")
        return idx

    def compose_indices(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    def inverse_index(self, i: int) -> int:
        return int(self.inverse_indices[i])


def _as_fraction_map(values, size, name) -> tuple:
    if values is None:
        return (Fraction(1),) * size
    out = tuple(Fraction(v) for v in values)
    if len(out) != size:
        raise StructureError(f"{name} needs one value per acting element")
    if any(v <= 0 for v in out):
        raise StructureError(f"{name} values must be positive")
    return out


class SemidirectSystem:
    """An acting group H, a tau-invariant subgroup L, and everything derived."""

    __slots__ = ("acting", "group", "lattice", "annihilator",
                 "delta_K", "delta_L", "_cache")

    def __init__(self, acting: ActingGroup, lattice: Subgroup,
                 delta_K=None, delta_L=None):
        if acting.group != lattice.parent:
            raise StructureError("acting group and subgroup live on different groups")
        self.acting = acting
        self.group = lattice.parent
        self.lattice = lattice
        gens = [self.group.element(row) for row in lattice.canonical_basis]
        for i, auto in enumerate(acting.elements):
            for g in gens:
                image = auto(g)
                if not lattice.contains(image):
                    raise InvarianceError(
                        f"subgroup is not stable under {acting.labels[i]}: "
                        f"{g.residues} maps to {image.residues} outside the subgroup")
        self.annihilator = lattice.annihilator()
        self.delta_K = _as_fraction_map(delta_K, len(acting), "delta_K")
        self.delta_L = _as_fraction_map(delta_L, len(acting), "delta_L")
        for name, delta in (("delta_K", self.delta_K), ("delta_L", self.delta_L)):
            for i in range(len(acting)):
                for j in range(len(acting)):
                    k = acting.compose_indices(i, j)
                    if delta[k] != delta[i] * delta[j]:
                        raise StructureError(f"{name} is not multiplicative over H")
        self._cache = {}

    # -- basic views -----------------------------------------------------------

    @property
    def labels(self):
        return self.acting.labels

    def automorphism(self, h: int) -> Automorphism:
        return self.acting.elements[h]

    def dual_automorphism(self, h: int) -> Automorphism:
        """Matrix form of w -> w_h = w o tau_{h^{-1}} on dual residues."""
        duals = self._cache.get("dual_autos")
        if duals is None:
            duals = [a.dual() for a in self.acting.elements]
            self._cache["dual_autos"] = duals
        return duals[h]

    def transversal(self):
        return self.lattice.transversal()

    def dual_transversal(self):
        return self.lattice.dual_transversal()

    def delta_sqrt(self, h: int) -> float:
        return _fraction_sqrt(self.delta_K[h])

    def with_deltas(self, delta_K=None, delta_L=None) -> SemidirectSystem:
        """Copy with replaced modular weights (used for fault injection)."""
        system = object.__new__(SemidirectSystem)
        system.acting = self.acting
        system.group = self.group
        system.lattice = self.lattice
        system.annihilator = self.annihilator
        system.delta_K = _as_fraction_map(
            delta_K, len(self.acting), "delta_K") if delta_K is not None else self.delta_K
        system.delta_L = _as_fraction_map(
            delta_L, len(self.acting), "delta_L") if delta_L is not None else self.delta_L
        system._cache = {}
        return system

    # -- pointwise actions -------------------------------------------------------

    def dual_action(self, h: int, w: Character) -> Character:
        if w.group != self.group:
            raise StructureError("character lives on a different group")
        image = self.dual_automorphism(h)(GroupElement(self.group, w.residues))
        return Character(self.group, image.residues)

    def quotient_action(self, h: int, k: GroupElement) -> GroupElement:
        """Representative of tau_h(k) + L; well-defined on cosets by invariance."""
        return self.lattice.coset_representative(self.automorphism(h)(k))

    def dual_quotient_action(self, h: int, w: Character) -> Character:
        rep = self.annihilator.coset_representative(self.dual_action(h, w).residues)
        return Character(self.group, rep.residues)

    def product_action(self, h: int, point) -> tuple:
        k, w = point
        return (self.quotient_action(h, k), self.dual_quotient_action(h, w))

    # -- cached permutation/phase tables for the transform -------------------------

    def rep_permutation(self, h: int) -> np.ndarray:
        return self._twist(h)[0]

    def dual_rep_permutation(self, h: int) -> np.ndarray:
        return self._twist(h)[1]

    def _twist(self, h: int):
        """(rep_perm, dual_rep_perm, phases) describing the h-twist of a Zak array.

        tau_h moves rep_r to rep_{rep_perm[r]} plus a lattice offset o_{h,r};
        the dual action moves dual rep c to dual rep dual_perm[c] plus an
        annihilator offset (which never contributes a phase).  The twisted
        evaluation of any Zak array Z is then

            Z(tau_h(k_r), w_{c,h}) = phases[r, c] * Z[rep_perm[r], dual_perm[c]].
        """
        twists = self._cache.setdefault("twists", {})
        tw = twists.get(h)
        if tw is None:
            K = self.group
            moduli = np.asarray(K.moduli, dtype=np.int64)
            N = K.exponent_modulus
            weights = np.asarray(K.exponent_weights, dtype=np.int64)
            lat, ann = self.lattice, self.annihilator

            reps = K.residue_matrix[lat.transversal_indices]
            A = np.asarray(self.automorphism(h).matrix, dtype=np.int64)
            images = (reps @ A.T) % moduli
            image_idx = K.indices_of_rows(images)
            rep_perm = lat._coset_tables()[1][image_idx]
            offsets = lat.offset_rows[image_idx]

            dual_reps = K.residue_matrix[ann.transversal_indices]
            D = np.asarray(self.dual_automorphism(h).matrix, dtype=np.int64)
            dual_images = (dual_reps @ D.T) % moduli
            dual_perm = ann._coset_tables()[1][K.indices_of_rows(dual_images)]

            moved_dual = dual_reps[dual_perm]
            expo = (offsets * weights) @ moved_dual.T % N
            phases = K.root_table[(N - expo) % N]  # conjugate pairing
            for a in (rep_perm, dual_perm, phases):
                a.setflags(write=False)
            tw = (rep_perm, dual_perm, phases)
            twists[h] = tw
        return tw

    # -- exact isomorphism checks ---------------------------------------------------

    def verify_quotient_dual_isos(self) -> IsoReport:
        """Exact (integer arithmetic) checks of the two quotient/dual identifications.

        1. Characters of K/L correspond to annihilator members, and the dual
           action restricted to the annihilator matches the action on
           characters of the quotient: e(k, xi_h) = e(tau_{h^{-1}} k, xi).
        2. Restricting the dual transversal to L gives each character of L
           exactly once, equivariantly: e(l, w_h) = e(tau_{h^{-1}} l, w).
        """
        report = IsoReport()
        K = self.group
        N = K.exponent_modulus
        weights = np.asarray(K.exponent_weights, dtype=np.int64)
        moduli = np.asarray(K.moduli, dtype=np.int64)
        lat, ann = self.lattice, self.annihilator
        all_rows = K.residue_matrix
        ann_rows = K.residue_matrix[ann.element_indices]
        ann_index_set = set(int(i) for i in ann.element_indices)

        for h in range(len(self.acting)):
            D = np.asarray(self.dual_automorphism(h).matrix, dtype=np.int64)
            B = np.asarray(
                self.automorphism(self.acting.inverse_index(h)).matrix, dtype=np.int64)
            moved = (ann_rows @ D.T) % moduli
            moved_idx = K.indices_of_rows(moved)
            # stability and bijectivity of the annihilator under the dual action
            stable = set(int(i) for i in moved_idx)
            if stable != ann_index_set:
                report.count("annihilator-stability", len(stable ^ ann_index_set),
                             f"h={self.labels[h]}")
            # pairing identity e(k, xi_h) == e(k^{h^-1}, xi) for all k, xi
            pre = (all_rows @ B.T) % moduli
            lhs = (all_rows * weights) @ moved.T % N
            rhs = (pre * weights) @ ann_rows.T % N
            bad = int(np.count_nonzero(lhs != rhs))
            if bad:
                report.count("quotient-character-pairing", bad, f"h={self.labels[h]}")
            # restriction equivariance on L: e(l, w_h) == e(l^{h^-1}, w)
            lat_rows = K.residue_matrix[lat.element_indices]
            dual_reps = K.residue_matrix[ann.transversal_indices]
            moved_reps = (dual_reps @ D.T) % moduli
            pre_l = (lat_rows @ B.T) % moduli
            lhs_l = (lat_rows * weights) @ moved_reps.T % N
            rhs_l = (pre_l * weights) @ dual_reps.T % N
            bad_l = int(np.count_nonzero(lhs_l != rhs_l))
            if bad_l:
                report.count("restriction-equivariance", bad_l, f"h={self.labels[h]}")

        # the restriction map (dual transversal) -> characters of L is a bijection
        lat_rows = K.residue_matrix[lat.element_indices]
        dual_reps = K.residue_matrix[ann.transversal_indices]
        restricted = (lat_rows * weights) @ dual_reps.T % N  # (|L|, C) columns = chars
        cols = {tuple(int(x) for x in restricted[:, c]) for c in range(restricted.shape[1])}
        if len(cols) != restricted.shape[1]:
            report.count("restriction-injectivity",
                         restricted.shape[1] - len(cols), "duplicate restrictions")
        if restricted.shape[1] != lat.order:
            report.count("restriction-count", abs(restricted.shape[1] - lat.order),
                         f"{restricted.shape[1]} vs |L|={lat.order}")
        # multiplicativity of the annihilator <-> quotient-character identification
        # is residue addition on both sides, checked on one exhaustive pass
        for i in range(ann.order):
            for j in range(ann.order):
                s = (ann_rows[i] + ann_rows[j]) % moduli
                if int(K.indices_of_rows(s[None, :])[0]) not in ann_index_set:
                    report.count("annihilator-closure", 1, f"{ann_rows[i]}+{ann_rows[j]}")
        return report


@dataclass
class IsoReport:
    """Violation counts per identity; empty means both identifications hold."""

    violations: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)

    def count(self, name: str, amount: int, witness: str):
        self.violations[name] = self.violations.get(name, 0) + amount
        if len(self.witnesses) < 16:
            self.witnesses.append(f"{name}: {witness}")

    @property
    def total(self) -> int:
        return sum(self.violations.values())


def _fraction_sqrt(value: Fraction) -> float:
    """sqrt of a positive rational, exact when it is a perfect square."""
    rn = math.isqrt(value.numerator)
    rd = math.isqrt(value.denominator)
    if rn * rn == value.numerator and rd * rd == value.denominator:
        return rn / rd
    return math.sqrt(value.numerator / value.denominator)


# ---------------------------------------------------------------------------
# elements of the semidirect product


@dataclass(frozen=True)
class SdElement:
    """(h, k) with h an index into the acting group and k a group element."""

    system: SemidirectSystem
    h: int
    k: GroupElement

    def __post_init__(self):
        if not 0 <= self.h < len(self.system.acting):
            raise StructureError(f"acting index {self.h} out of range")
        if self.k.group != self.system.group:
            raise StructureError("element lives on a different group")


def sd_multiply(a: SdElement, b: SdElement) -> SdElement:
    """(h, k)(h', k') = (h h', k + tau_h(k'))."""
    if a.system is not b.system:
        raise StructureError("elements belong to different systems")
    system = a.system
    h = system.acting.compose_indices(a.h, b.h)
    return SdElement(system, h, a.k + system.automorphism(a.h)(b.k))


def sd_inverse(a: SdElement) -> SdElement:
    """(h, k)^{-1} = (h^{-1}, tau_{h^{-1}}(-k)); sd_multiply gives the identity back."""
    system = a.system
    hinv = system.acting.inverse_index(a.h)
    return SdElement(system, hinv, system.automorphism(hinv)(-a.k))


def sd_identity(system: SemidirectSystem) -> SdElement:
    return SdElement(system, 0, system.group.identity())
