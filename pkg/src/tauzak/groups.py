"""Finite abelian groups as products of cyclic groups.

A group is a tuple of moduli (n_1, ..., n_d) and its elements are residue
vectors.  Characters live on the same moduli through the pairing

    <k, w> = exp(2*pi*i * sum_i k_i * w_i / n_i),

so the dual group is represented by the same residue arithmetic.  Subgroups
are kept in row Hermite canonical form over the moduli, which gives exact
membership tests, deterministic enumeration, annihilators by integer
congruences and lexicographic coset transversals.  Automorphisms are integer
matrices acting by k -> A k mod moduli; mixed moduli are allowed as long as
the entries satisfy the usual divisibility constraint.
"""

from __future__ import annotations

import itertools
import math

import numpy as np


class StructureError(ValueError):
    """Raised when inputs do not fit together (moduli, shapes, ranges)."""


class InvarianceError(StructureError):
    """Raised when a subgroup fails to be stable under a required action."""


# ---------------------------------------------------------------------------
# groups, elements, characters


class FiniteAbelianGroup:
    """Z_{n_1} x ... x Z_{n_d} with exact pairing tables."""

    __slots__ = ("moduli", "order", "_strides", "_cache")

    def __init__(self, moduli):
        moduli = tuple(int(n) for n in moduli)
        if len(moduli) == 0:
            raise StructureError("a group needs at least one modulus")
        if any(n < 1 for n in moduli):
            raise StructureError(f"moduli must be >= 1, got {moduli}")
        self.moduli = moduli
        self.order = math.prod(moduli)
        strides = [1] * len(moduli)
        for i in range(len(moduli) - 2, -1, -1):
            strides[i] = strides[i + 1] * moduli[i + 1]
        self._strides = tuple(strides)
        self._cache = {}

    # -- basic identity ----------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, FiniteAbelianGroup) and self.moduli == other.moduli

    def __hash__(self):
        return hash(self.moduli)

    def __repr__(self):
        return f"FiniteAbelianGroup({self.moduli})"

    @property
    def dim(self) -> int:
        return len(self.moduli)

    # -- element construction ----------------------------------------------

    def reduce(self, residues) -> tuple:
        if len(residues) != len(self.moduli):
            raise StructureError(
                f"residue vector of length {len(residues)} for moduli {self.moduli}"
            )
        return tuple(int(r) % n for r, n in zip(residues, self.moduli))

    def element(self, residues) -> GroupElement:
        return GroupElement(self, self.reduce(residues))

    def identity(self) -> GroupElement:
        return GroupElement(self, (0,) * len(self.moduli))

    def element_at(self, index: int) -> GroupElement:
        return GroupElement(self, self.residues_of(index))

    def character(self, residues) -> Character:
        return Character(self, self.reduce(residues))

    def character_at(self, index: int) -> Character:
        return Character(self, self.residues_of(index))

    def elements(self):
        """All elements in lexicographic (row-major index) order."""
        for index in range(self.order):
            yield self.element_at(index)

    def characters(self):
        for index in range(self.order):
            yield self.character_at(index)

    # -- index <-> residue maps ----------------------------------------------

    def index_of(self, residues) -> int:
        return sum(r * s for r, s in zip(self.reduce(residues), self._strides))

    def residues_of(self, index: int) -> tuple:
        index = int(index)
        if not 0 <= index < self.order:
            raise StructureError(f"element index {index} out of range 0..{self.order - 1}")
        out = []
        for n, s in zip(self.moduli, self._strides):
            out.append((index // s) % n)
        return tuple(out)

    def indices_of_rows(self, rows: np.ndarray) -> np.ndarray:
        """Vectorized index_of for an (m, d) array of already-reduced residues."""
        return rows @ np.asarray(self._strides, dtype=np.int64)

    # -- cached tables -------------------------------------------------------

    @property
    def residue_matrix(self) -> np.ndarray:
        """(order, d) int64 matrix of all residue vectors, row i = residues_of(i)."""
        mat = self._cache.get("residue_matrix")
        if mat is None:
            grids = np.indices(self.moduli).reshape(len(self.moduli), -1)
            mat = np.ascontiguousarray(grids.T.astype(np.int64))
            mat.setflags(write=False)
            self._cache["residue_matrix"] = mat
        return mat

    @property
    def exponent_modulus(self) -> int:
        """N = lcm(moduli); pairings are roots of unity of order dividing N."""
        return math.lcm(*self.moduli)

    @property
    def exponent_weights(self) -> tuple:
        """w_i = N / n_i so that <k, w> = root_N(sum_i k_i w_i N/n_i)."""
        N = self.exponent_modulus
        return tuple(N // n for n in self.moduli)

    @property
    def root_table(self) -> np.ndarray:
        """exp(2*pi*i*j/N) for j = 0..N-1, shared so equal phases are bitwise equal."""
        table = self._cache.get("root_table")
        if table is None:
            N = self.exponent_modulus
            table = np.exp(2j * np.pi * np.arange(N) / N)
            table.setflags(write=False)
            self._cache["root_table"] = table
        return table

    @property
    def pairing_exponents(self) -> np.ndarray:
        """(order, order) table E with <element_i, character_j> = root_table[E[i, j]]."""
        E = self._cache.get("pairing_exponents")
        if E is None:
            R = self.residue_matrix
            W = R * np.asarray(self.exponent_weights, dtype=np.int64)
            E = (R @ W.T) % self.exponent_modulus
            E.setflags(write=False)
            self._cache["pairing_exponents"] = E
        return E

    @property
    def pairing_matrix(self) -> np.ndarray:
        """(order, order) complex table of <element_i, character_j>."""
        P = self._cache.get("pairing_matrix")
        if P is None:
            P = np.ascontiguousarray(self.root_table[self.pairing_exponents])
            P.setflags(write=False)
            self._cache["pairing_matrix"] = P
        return P

    def pair_exponent(self, k_residues, w_residues) -> int:
        N = self.exponent_modulus
        return (
            sum(k * w * s for k, w, s in zip(k_residues, w_residues, self.exponent_weights))
            % N
        )


class GroupElement:
    """A residue vector in a fixed FiniteAbelianGroup."""

    __slots__ = ("group", "residues")

    def __init__(self, group: FiniteAbelianGroup, residues: tuple):
        self.group = group
        self.residues = residues

    @property
    def index(self) -> int:
        return self.group.index_of(self.residues)

    def __add__(self, other: GroupElement) -> GroupElement:
        _same_group(self, other)
        return GroupElement(self.group, self.group.reduce(
            tuple(a + b for a, b in zip(self.residues, other.residues))))

    def __neg__(self) -> GroupElement:
        return GroupElement(self.group, self.group.reduce(tuple(-a for a in self.residues)))

    def __sub__(self, other: GroupElement) -> GroupElement:
        return self + (-other)

    def __eq__(self, other):
        return (
            isinstance(other, GroupElement)
            and self.group == other.group
            and self.residues == other.residues
        )

    def __hash__(self):
        return hash((self.group.moduli, self.residues))

    def __repr__(self):
        return f"GroupElement{self.residues}"


class Character:
    """A character of the group, stored as dual residues under the canonical pairing."""

    __slots__ = ("group", "residues")

    def __init__(self, group: FiniteAbelianGroup, residues: tuple):
        self.group = group
        self.residues = residues

    @property
    def index(self) -> int:
        return self.group.index_of(self.residues)

    def __mul__(self, other: Character) -> Character:
        _same_group(self, other)
        return Character(self.group, self.group.reduce(
            tuple(a + b for a, b in zip(self.residues, other.residues))))

    def inverse(self) -> Character:
        return Character(self.group, self.group.reduce(tuple(-a for a in self.residues)))

    def __call__(self, element: GroupElement) -> complex:
        return pair(element, self)

    def __eq__(self, other):
        return (
            isinstance(other, Character)
            and self.group == other.group
            and self.residues == other.residues
        )

    def __hash__(self):
        return hash(("chr", self.group.moduli, self.residues))

    def __repr__(self):
        return f"Character{self.residues}"


def _same_group(a, b):
    if a.group != b.group:
        raise StructureError(f"moduli mismatch: {a.group.moduli} vs {b.group.moduli}")


def pair(k: GroupElement, w: Character) -> complex:
    """<k, w> = exp(2*pi*i * sum_i k_i w_i / n_i), exact as a root of unity."""
    if k.group != w.group:
        raise StructureError(f"moduli mismatch: {k.group.moduli} vs {w.group.moduli}")
    g = k.group
    return complex(g.root_table[g.pair_exponent(k.residues, w.residues)])


# ---------------------------------------------------------------------------
# subgroups


def _hermite_form(rows, moduli):
    """Row Hermite canonical form of the integer lattice spanned by ``rows``
    together with diag(moduli).

    Returns a d x d upper triangular matrix with positive diagonal and the
    entries above each pivot reduced into [0, pivot).  The lattice always has
    full rank because diag(moduli) is included, and each pivot divides the
    corresponding modulus.
    """
    d = len(moduli)
    work = [list(map(int, r)) for r in rows]
    for i, n in enumerate(moduli):
        row = [0] * d
        row[i] = n
        work.append(row)

    basis = []
    for col in range(d):
        # gcd-eliminate column `col` across the remaining rows
        pivot_row = None
        for row in work:
            if row[col] != 0:
                if pivot_row is None:
                    pivot_row = row
                    continue
                # combine so pivot_row[col] = gcd and row[col] = 0
                a, b = pivot_row[col], row[col]
                g, x, y = _xgcd(a, b)
                pa, qa = a // g, b // g
                new_pivot = [x * u + y * v for u, v in zip(pivot_row, row)]
                new_row = [-qa * u + pa * v for u, v in zip(pivot_row, row)]
                pivot_row[:] = new_pivot
                row[:] = new_row
        if pivot_row is None:
            raise StructureError("lost rank in Hermite reduction")  # unreachable
        if pivot_row[col] < 0:
            pivot_row[:] = [-u for u in pivot_row]
        work.remove(pivot_row)
        basis.append(pivot_row)
    # reduce entries above each pivot
    for col in range(d):
        piv = basis[col][col]
        for i in range(col):
            q = basis[i][col] // piv
            if q:
                basis[i] = [u - q * v for u, v in zip(basis[i], basis[col])]
    return tuple(tuple(row) for row in basis)


def _xgcd(a, b):
    """Extended gcd with g >= 0: returns (g, x, y) with a*x + b*y = g."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


class Subgroup:
    """A subgroup of a FiniteAbelianGroup in Hermite canonical form.

    Derived geometry (enumeration, coset transversal, annihilator, Zak index
    and phase tables) is computed lazily and cached; Subgroup instances are
    immutable.
    """

    __slots__ = ("parent", "generators", "canonical_basis", "order", "_cache")

    def __init__(self, parent: FiniteAbelianGroup, generators):
        self.parent = parent
        gens = [parent.reduce(g.residues if isinstance(g, GroupElement) else g)
                for g in generators]
        self.generators = tuple(GroupElement(parent, g) for g in gens)
        self.canonical_basis = _hermite_form(gens, parent.moduli)
        diag = math.prod(self.canonical_basis[i][i] for i in range(parent.dim))
        if parent.order % diag:
            raise StructureError("Hermite diagonal does not divide the group order")
        self.order = parent.order // diag
        self._cache = {}

    def __eq__(self, other):
        return (
            isinstance(other, Subgroup)
            and self.parent == other.parent
            and self.canonical_basis == other.canonical_basis
        )

    def __hash__(self):
        return hash((self.parent.moduli, self.canonical_basis))

    def __repr__(self):
        return f"Subgroup(order={self.order}, basis={self.canonical_basis})"

    def __len__(self):
        return self.order

    # -- membership and enumeration -----------------------------------------

    def contains(self, element) -> bool:
        """Exact membership via triangular division against the canonical basis."""
        residues = element.residues if isinstance(element, GroupElement) else element
        v = list(self.parent.reduce(residues))
        for col in range(self.parent.dim):
            piv = self.canonical_basis[col][col]
            q, r = divmod(v[col], piv)
            if r:
                return False
            if q:
                row = self.canonical_basis[col]
                for i in range(col, self.parent.dim):
                    v[i] -= q * row[i]
        return True

    @property
    def residue_rows(self) -> np.ndarray:
        """(order, d) residues of all subgroup elements in canonical order.

        Canonical order is the mixed-radix order of coefficient vectors over
        the canonical basis rows, so index 0 is always the identity.
        """
        rows = self._cache.get("residue_rows")
        if rows is None:
            moduli = self.parent.moduli
            counts = [n // self.canonical_basis[i][i] for i, n in enumerate(moduli)]
            basis = np.asarray(self.canonical_basis, dtype=np.int64)
            coeffs = np.indices(counts).reshape(len(moduli), -1).T
            rows = (coeffs @ basis) % np.asarray(moduli, dtype=np.int64)
            rows = np.ascontiguousarray(rows)
            rows.setflags(write=False)
            self._cache["residue_rows"] = rows
        return rows

    @property
    def element_indices(self) -> np.ndarray:
        idx = self._cache.get("element_indices")
        if idx is None:
            idx = self.parent.indices_of_rows(self.residue_rows)
            idx.setflags(write=False)
            self._cache["element_indices"] = idx
        return idx

    def elements(self):
        return [GroupElement(self.parent, tuple(int(x) for x in row))
                for row in self.residue_rows]

    # -- coset geometry -------------------------------------------------------

    def _coset_tables(self):
        tables = self._cache.get("coset_tables")
        if tables is None:
            K = self.parent
            moduli = np.asarray(K.moduli, dtype=np.int64)
            sub_rows = self.residue_rows
            seen = np.zeros(K.order, dtype=bool)
            position = np.empty(K.order, dtype=np.int64)
            rep_index = np.empty(K.order, dtype=np.int64)
            reps = []
            for idx in range(K.order):
                if seen[idx]:
                    continue
                base = np.asarray(K.residues_of(idx), dtype=np.int64)
                coset = K.indices_of_rows((base + sub_rows) % moduli)
                seen[coset] = True
                position[coset] = len(reps)
                rep_index[coset] = idx
                reps.append(idx)
            reps = np.asarray(reps, dtype=np.int64)
            # offset[k] = k - rep(k), a subgroup element, stored as residues
            offsets = (K.residue_matrix - K.residue_matrix[rep_index]) % moduli
            for a in (position, rep_index, reps, offsets):
                a.setflags(write=False)
            tables = (reps, position, rep_index, offsets)
            self._cache["coset_tables"] = tables
        return tables

    @property
    def transversal_indices(self) -> np.ndarray:
        """Element indices of the lexicographic-minimum coset representatives."""
        return self._coset_tables()[0]

    def transversal(self):
        return [self.parent.element_at(int(i)) for i in self.transversal_indices]

    def coset_position(self, element) -> int:
        """Position of element's coset in the transversal."""
        e = element if isinstance(element, GroupElement) else self.parent.element(element)
        _same_group(e, self.parent.identity())
        return int(self._coset_tables()[1][e.index])

    def coset_representative(self, element) -> GroupElement:
        e = element if isinstance(element, GroupElement) else self.parent.element(element)
        return self.parent.element_at(int(self._coset_tables()[2][e.index]))

    def coset_offset(self, element) -> GroupElement:
        """element - coset_representative(element); always a subgroup member."""
        e = element if isinstance(element, GroupElement) else self.parent.element(element)
        row = self._coset_tables()[3][e.index]
        return GroupElement(self.parent, tuple(int(x) for x in row))

    @property
    def offset_rows(self) -> np.ndarray:
        """(|K|, d) residues of k - rep(k) for every element index k."""
        return self._coset_tables()[3]

    # -- annihilator and dual-side geometry ------------------------------------

    def annihilator(self) -> Subgroup:
        """All characters that are 1 on this subgroup, as a Subgroup on the
        same moduli (the dual group shares the residue arithmetic).

        Exact integer test: w annihilates iff for every canonical basis row g
        sum_i g_i * w_i * (N / n_i) = 0 mod N, with N = lcm(moduli).
        """
        ann = self._cache.get("annihilator")
        if ann is None:
            K = self.parent
            N = K.exponent_modulus
            weights = np.asarray(K.exponent_weights, dtype=np.int64)
            basis = np.asarray(self.canonical_basis, dtype=np.int64)
            dual = K.residue_matrix
            congr = (basis * weights) @ dual.T % N  # (d, order)
            keep = np.flatnonzero((congr == 0).all(axis=0))
            gens = [tuple(int(x) for x in dual[i]) for i in keep]
            ann = Subgroup(K, gens)
            self._cache["annihilator"] = ann
        return ann

    def dual_transversal(self):
        """Characters forming the lexicographic transversal of K^ / annihilator."""
        ann = self.annihilator()
        return [Character(self.parent, self.parent.residues_of(int(i)))
                for i in ann.transversal_indices]

    # -- Zak geometry (index and phase tables shared by the transforms) --------

    @property
    def zak_gather_indices(self) -> np.ndarray:
        """(R, |L|) element indices of rep_r + l_j in canonical orders."""
        idx = self._cache.get("zak_gather_indices")
        if idx is None:
            K = self.parent
            moduli = np.asarray(K.moduli, dtype=np.int64)
            reps = K.residue_matrix[self.transversal_indices]
            idx = K.indices_of_rows(
                (reps[:, None, :] + self.residue_rows[None, :, :]) % moduli)
            idx = np.ascontiguousarray(idx)
            idx.setflags(write=False)
            self._cache["zak_gather_indices"] = idx
        return idx

    @property
    def zak_phases(self) -> np.ndarray:
        """(|L|, C) table <l_j, w_c> over the dual transversal characters w_c."""
        ph = self._cache.get("zak_phases")
        if ph is None:
            K = self.parent
            N = K.exponent_modulus
            weights = np.asarray(K.exponent_weights, dtype=np.int64)
            dual_rows = K.residue_matrix[self.annihilator().transversal_indices]
            expo = (self.residue_rows * weights) @ dual_rows.T % N
            ph = np.ascontiguousarray(K.root_table[expo])
            ph.setflags(write=False)
            self._cache["zak_phases"] = ph
        return ph


def subgroup_from_generators(group: FiniteAbelianGroup, generators) -> Subgroup:
    """Subgroup generated by the given residue vectors (or GroupElements)."""
    return Subgroup(group, generators)


def annihilator(group: FiniteAbelianGroup, sub: Subgroup) -> Subgroup:
    if sub.parent != group:
        raise StructureError("subgroup does not live in the given group")
    return sub.annihilator()


def transversal(group: FiniteAbelianGroup, sub: Subgroup):
    if sub.parent != group:
        raise StructureError("subgroup does not live in the given group")
    return sub.transversal()


def all_subgroups(group: FiniteAbelianGroup):
    """Every subgroup, found by closing all d-tuples of elements (d = rank cap).

    Feasible for the small groups used in tests; a subgroup of a product of d
    cyclic groups never needs more than d generators.
    """
    found = {}
    d = group.dim
    for combo in itertools.product(range(group.order), repeat=d):
        gens = [group.residues_of(i) for i in combo]
        sub = Subgroup(group, gens)
        found.setdefault(sub.canonical_basis, sub)
    return sorted(found.values(), key=lambda s: (s.order, s.canonical_basis))


# ---------------------------------------------------------------------------
# automorphisms


class Automorphism:
    """Integer matrix A acting on the group by k -> A k mod moduli.

    Well-definedness over mixed moduli requires n_i | A[i][j] * n_j for all
    i, j; the induced map must be a bijection (checked exhaustively).  The
    matrix is stored with row i reduced mod n_i, which is a canonical form:
    two matrices induce the same action iff they agree after this reduction.
    """

    __slots__ = ("group", "matrix", "_cache")

    def __init__(self, group: FiniteAbelianGroup, matrix, _validated: bool = False):
        self.group = group
        d = group.dim
        rows = [list(map(int, row)) for row in matrix]
        if len(rows) != d or any(len(r) != d for r in rows):
            raise StructureError(f"automorphism matrix must be {d}x{d}")
        moduli = group.moduli
        self.matrix = tuple(
            tuple(a % moduli[i] for a in row) for i, row in enumerate(rows))
        self._cache = {}
        if not _validated:
            self._validate()

    def _validate(self):
        moduli = self.group.moduli
        for i, row in enumerate(self.matrix):
            for j, a in enumerate(row):
                if (a * moduli[j]) % moduli[i]:
                    raise StructureError(
                        f"matrix entry [{i}][{j}]={a} does not define a homomorphism "
                        f"from Z_{moduli[j]} to Z_{moduli[i]}")
        if self.group.order > (1 << 20):
            raise StructureError("group too large for the exhaustive bijectivity check")
        perm = self.permutation
        if np.unique(perm).size != self.group.order:
            raise StructureError(f"matrix {self.matrix} does not act bijectively")

    @property
    def permutation(self) -> np.ndarray:
        """perm[i] = index of A(element_at(i))."""
        perm = self._cache.get("permutation")
        if perm is None:
            K = self.group
            moduli = np.asarray(K.moduli, dtype=np.int64)
            A = np.asarray(self.matrix, dtype=np.int64)
            images = (K.residue_matrix @ A.T) % moduli
            perm = K.indices_of_rows(images)
            perm.setflags(write=False)
            self._cache["permutation"] = perm
        return perm

    def __call__(self, element: GroupElement) -> GroupElement:
        _same_group(element, self.group.identity())
        out = [sum(a * r for a, r in zip(row, element.residues))
               for row in self.matrix]
        return self.group.element(out)

    def compose(self, other: Automorphism) -> Automorphism:
        """self after other: (self.compose(other))(k) = self(other(k))."""
        if self.group != other.group:
            raise StructureError("automorphisms act on different groups")
        a = np.asarray(self.matrix, dtype=object)
        b = np.asarray(other.matrix, dtype=object)
        return Automorphism(self.group, (a @ b).tolist(), _validated=True)

    def inverse(self) -> Automorphism:
        """Inverse automorphism, as a matrix: column j = preimage of unit vector e_j."""
        inv = self._cache.get("inverse")
        if inv is None:
            K = self.group
            perm = self.permutation
            inv_perm = np.empty_like(perm)
            inv_perm[perm] = np.arange(K.order)
            d = K.dim
            cols = []
            for j in range(d):
                unit = [0] * d
                unit[j] = 1
                pre = K.residues_of(int(inv_perm[K.index_of(unit)]))
                cols.append(pre)
            matrix = [[cols[j][i] for j in range(d)] for i in range(d)]
            inv = Automorphism(K, matrix, _validated=True)
            self._cache["inverse"] = inv
        return inv

    def dual(self) -> Automorphism:
        """The action induced on characters by w -> w o self^{-1}.

        In residues: w'_j = sum_i B[i][j] * w_i * n_j / n_i with B = inverse
        matrix; the divisions are exact precisely because B is well-defined.
        """
        dual = self._cache.get("dual")
        if dual is None:
            K = self.group
            moduli = K.moduli
            B = self.inverse().matrix
            d = K.dim
            D = [[0] * d for _ in range(d)]
            for j in range(d):
                for i in range(d):
                    num = B[i][j] * moduli[j]
                    if num % moduli[i]:
                        raise StructureError("inverse matrix is not well-defined")
                    D[j][i] = num // moduli[i]
            dual = Automorphism(K, D, _validated=True)
            self._cache["dual"] = dual
        return dual

    def is_identity(self) -> bool:
        return all(
            a == (1 if i == j else 0) or self.group.moduli[i] == 1
            for i, row in enumerate(self.matrix)
            for j, a in enumerate(row))

    def __eq__(self, other):
        return (
            isinstance(other, Automorphism)
            and self.group == other.group
            and self.matrix == other.matrix
        )

    def __hash__(self):
        return hash((self.group.moduli, self.matrix))

    def __repr__(self):
        return f"Automorphism{self.matrix}"


def apply_auto(auto: Automorphism, element: GroupElement) -> GroupElement:
    return auto(element)


def is_tau_invariant(sub: Subgroup, autos) -> bool:
    """True iff every automorphism maps the subgroup into itself."""
    gens = [GroupElement(sub.parent, tuple(r % n for r, n in zip(row, sub.parent.moduli)))
            for row in sub.canonical_basis]
    for auto in autos:
        if auto.group != sub.parent:
            raise StructureError("automorphism acts on a different group")
        for g in gens:
            if not sub.contains(auto(g)):
                return False
    return True
