"""Exact linear algebra over radical fields and integer lattices.

Provides canonical-form subspaces of R^d over a FieldSpec (reduced row
echelon bases, so structural equality is definitional equality), affine
carriers, integer lattice subgroups in Hermite normal form, Smith normal
form with unimodular transforms, annihilators of lattice subgroups inside
the torus, saturation, rationality classification of directions, and exact
feasibility solvers for systems mixing rational and integer unknowns.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import DimensionMismatchError, FieldMismatchError, ValidationError
from .scalar import QQ, FieldScalar, FieldSpec

FieldVector = tuple[FieldScalar, ...]

# ---------------------------------------------------------------------------
# field-vector helpers
# ---------------------------------------------------------------------------


def zero_vector(field: FieldSpec, dim: int) -> FieldVector:
    return tuple(field.zero() for _ in range(dim))


def unit_vector(field: FieldSpec, dim: int, index: int) -> FieldVector:
    return tuple(field.one() if j == index else field.zero() for j in range(dim))


def as_vector(field: FieldSpec, entries) -> FieldVector:
    out = []
    for e in entries:
        if isinstance(e, FieldScalar):
            if e.field != field:
                raise FieldMismatchError("vector entry from a different field")
            out.append(e)
        else:
            out.append(field.from_rational(Fraction(e)))
    return tuple(out)


def vec_add(u: FieldVector, v: FieldVector) -> FieldVector:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vec_sub(u: FieldVector, v: FieldVector) -> FieldVector:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vec_neg(u: FieldVector) -> FieldVector:
    return tuple(-a for a in u)


def vec_scale(s, u: FieldVector) -> FieldVector:
    return tuple(s * a for a in u)


def vec_dot(u: FieldVector, v: FieldVector) -> FieldScalar:
    parts = [a * b for a, b in zip(u, v, strict=True)]
    out = parts[0]
    for p in parts[1:]:
        out = out + p
    return out


def vec_is_zero(u: FieldVector) -> bool:
    return all(a.is_zero() for a in u)


def vec_is_rational(u: FieldVector) -> bool:
    return all(a.is_rational() for a in u)


def vec_mod1(u: FieldVector) -> FieldVector:
    return tuple(a.frac() for a in u)


def vec_floats(u: FieldVector) -> list[float]:
    return [float(a) for a in u]


# ---------------------------------------------------------------------------
# exact elimination over a field and over Q
# ---------------------------------------------------------------------------


def rref_field(rows: list[list[FieldScalar]]) -> tuple[list[list[FieldScalar]], list[int]]:
    """Reduced row echelon form over the field; returns (rows, pivot columns)."""
    if not rows:
        return [], []
    mat = [list(r) for r in rows]
    ncols = len(mat[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(mat)) if not mat[i][col].is_zero()), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = mat[r][col].invert()
        mat[r] = [inv * x for x in mat[r]]
        for i in range(len(mat)):
            if i != r and not mat[i][col].is_zero():
                f = mat[i][col]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def solve_field_square(a: list[list[FieldScalar]], b: list[FieldScalar]) -> list[FieldScalar]:
    """Solve a nonsingular square system over the field."""
    n = len(a)
    aug = [list(row) + [b[i]] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((i for i in range(col, n) if not aug[i][col].is_zero()), None)
        if piv is None:
            raise ValidationError("singular system")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col].invert()
        aug[col] = [inv * x for x in aug[col]]
        for i in range(n):
            if i != col and not aug[i][col].is_zero():
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    return [aug[i][n] for i in range(n)]


def rref_fractions(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """RREF over Q; returns (rows, pivot columns)."""
    mat = [list(r) for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][col] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][col]
        mat[r] = [inv * x for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def nullspace_fractions(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of the rational kernel {x : rows @ x = 0}."""
    rr, pivots = rref_fractions(rows)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -rr[i][f]
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# subspaces and affine carriers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """Linear subspace of R^d with a canonical RREF basis over the field."""

    field: FieldSpec
    ambient: int
    basis: tuple[FieldVector, ...]

    @staticmethod
    def from_vectors(field: FieldSpec, ambient: int, vectors) -> "Subspace":
        rows = []
        for v in vectors:
            vv = as_vector(field, v)
            if len(vv) != ambient:
                raise DimensionMismatchError("basis vector has wrong length")
            rows.append(list(vv))
        rref, _ = rref_field(rows)
        return Subspace(field, ambient, tuple(tuple(r) for r in rref))

    @staticmethod
    def zero(field: FieldSpec, ambient: int) -> "Subspace":
        return Subspace(field, ambient, ())

    @staticmethod
    def full(field: FieldSpec, ambient: int) -> "Subspace":
        return Subspace.from_vectors(
            field, ambient, [unit_vector(field, ambient, j) for j in range(ambient)])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_full(self) -> bool:
        return self.dim == self.ambient

    def _check_compatible(self, other: "Subspace") -> None:
        if self.field != other.field:
            raise FieldMismatchError("subspaces over different fields")
        if self.ambient != other.ambient:
            raise DimensionMismatchError("subspaces in different ambient spaces")

    def contains(self, v: FieldVector) -> bool:
        w = list(v)
        for row in self.basis:
            p = next(j for j, x in enumerate(row) if not x.is_zero())
            if not w[p].is_zero():
                f = w[p]
                w = [x - f * y for x, y in zip(w, row)]
        return all(x.is_zero() for x in w)

    def leq(self, other: "Subspace") -> bool:
        self._check_compatible(other)
        return all(other.contains(row) for row in self.basis)

    def sum_with(self, other: "Subspace") -> "Subspace":
        self._check_compatible(other)
        return Subspace.from_vectors(self.field, self.ambient,
                                     list(self.basis) + list(other.basis))

    def orthocomplement(self) -> "Subspace":
        rr, pivots = rref_field([list(r) for r in self.basis])
        free = [j for j in range(self.ambient) if j not in pivots]
        vecs = []
        for f in free:
            v = [self.field.zero()] * self.ambient
            v[f] = self.field.one()
            for i, p in enumerate(pivots):
                v[p] = -rr[i][f]
            vecs.append(v)
        return Subspace.from_vectors(self.field, self.ambient, vecs)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check_compatible(other)
        return self.orthocomplement().sum_with(other.orthocomplement()).orthocomplement()

    def project(self, v: FieldVector) -> FieldVector:
        """Orthogonal projection of v onto this subspace (exact)."""
        if self.dim == 0:
            return zero_vector(self.field, self.ambient)
        gram = [[vec_dot(bi, bj) for bj in self.basis] for bi in self.basis]
        rhs = [vec_dot(bi, v) for bi in self.basis]
        x = solve_field_square(gram, rhs)
        out = zero_vector(self.field, self.ambient)
        for c, b in zip(x, self.basis):
            out = vec_add(out, vec_scale(c, b))
        return out

    def project_perp(self, v: FieldVector) -> FieldVector:
        return vec_sub(v, self.project(v))

    def encode(self) -> dict:
        return {"basis": [[x.encode() for x in row] for row in self.basis]}

    def __repr__(self) -> str:
        rows = "; ".join("(" + ", ".join(repr(x) for x in row) + ")" for row in self.basis)
        return f"Subspace<{self.dim}/{self.ambient}>[{rows}]"


@dataclass(frozen=True)
class AffineCarrier:
    """Affine subset K + offset with the offset reduced orthogonal to K."""

    subspace: Subspace
    offset: FieldVector

    @staticmethod
    def make(subspace: Subspace, offset=None) -> "AffineCarrier":
        if offset is None:
            off = zero_vector(subspace.field, subspace.ambient)
        else:
            off = as_vector(subspace.field, offset)
            if len(off) != subspace.ambient:
                raise DimensionMismatchError("offset has wrong length")
            off = subspace.project_perp(off)
        return AffineCarrier(subspace, off)

    @property
    def dim(self) -> int:
        return self.subspace.dim

    def is_linear(self) -> bool:
        return vec_is_zero(self.offset)

    def translate(self, v: FieldVector) -> "AffineCarrier":
        return AffineCarrier.make(self.subspace, vec_add(self.offset, v))

    def affine_hull_through_origin(self) -> Subspace:
        """span(K, offset): the smallest subspace containing the carrier."""
        return Subspace.from_vectors(
            self.subspace.field, self.subspace.ambient,
            list(self.subspace.basis) + ([self.offset] if not self.is_linear() else []))

    def encode(self) -> dict:
        d = self.subspace.encode()
        d["offset"] = [x.encode() for x in self.offset]
        return d


def promote_vector(v: FieldVector, field: FieldSpec) -> FieldVector:
    from .scalar import promote_scalar
    return tuple(promote_scalar(x, field) for x in v)


def promote_subspace(sub: Subspace, field: FieldSpec) -> Subspace:
    if sub.field == field:
        return sub
    return Subspace.from_vectors(field, sub.ambient,
                                 [promote_vector(row, field) for row in sub.basis])


# ---------------------------------------------------------------------------
# integer matrices: HNF / SNF
# ---------------------------------------------------------------------------

IntMatrix = list[list[int]]


def hermite_normal_form(rows) -> tuple[tuple[int, ...], ...]:
    """Row-style HNF of the Z-span of the given integer rows.

    Canonical: pivots positive, strictly increasing pivot columns, entries
    above a pivot reduced into [0, pivot).  Zero rows are dropped.
    """
    mat = [list(map(int, r)) for r in rows if any(x != 0 for x in r)]
    if not mat:
        return ()
    ncols = len(mat[0])
    r = 0
    for col in range(ncols):
        while True:
            live = [i for i in range(r, len(mat)) if mat[i][col] != 0]
            if not live:
                break
            i0 = min(live, key=lambda i: abs(mat[i][col]))
            mat[r], mat[i0] = mat[i0], mat[r]
            if all(i == r for i in live) or len(live) == 1 and live[0] == r:
                break
            done = True
            for i in range(r + 1, len(mat)):
                if mat[i][col] != 0:
                    q = mat[i][col] // mat[r][col]
                    mat[i] = [a - q * b for a, b in zip(mat[i], mat[r])]
                    if mat[i][col] != 0:
                        done = False
            if done:
                break
        if r < len(mat) and mat[r][col] != 0:
            if mat[r][col] < 0:
                mat[r] = [-a for a in mat[r]]
            for i in range(r):
                q = mat[i][col] // mat[r][col]
                if q:
                    mat[i] = [a - q * b for a, b in zip(mat[i], mat[r])]
            r += 1
            if r == len(mat):
                break
    mat = [row for row in mat[:r]]
    return tuple(tuple(row) for row in mat)


def smith_normal_form(matrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form: returns (U, D, V) with U @ M @ V = D.

    D is diagonal with d_i | d_{i+1} and nonnegative; U, V are unimodular.
    """
    d = [list(map(int, row)) for row in matrix]
    m = len(d)
    n = len(d[0]) if m else 0
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        d[dst] = [a + q * b for a, b in zip(d[dst], d[src])]
        u[dst] = [a + q * b for a, b in zip(u[dst], u[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in d:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    def negate_row(i):
        d[i] = [-a for a in d[i]]
        u[i] = [-a for a in u[i]]

    k = 0
    while k < min(m, n):
        # find a nonzero entry in the remaining block
        pos = None
        best = None
        for i in range(k, m):
            for j in range(k, n):
                if d[i][j] != 0 and (best is None or abs(d[i][j]) < best):
                    best = abs(d[i][j])
                    pos = (i, j)
        if pos is None:
            break
        swap_rows(k, pos[0])
        swap_cols(k, pos[1])
        while True:
            # clear column k
            dirty = False
            for i in range(k + 1, m):
                if d[i][k] != 0:
                    q = d[i][k] // d[k][k]
                    add_row(i, k, -q)
                    if d[i][k] != 0:
                        swap_rows(i, k)
                        dirty = True
            if dirty:
                continue
            # clear row k
            for j in range(k + 1, n):
                if d[k][j] != 0:
                    q = d[k][j] // d[k][k]
                    add_col(j, k, -q)
                    if d[k][j] != 0:
                        swap_cols(j, k)
                        dirty = True
            if dirty:
                continue
            # enforce divisibility of the remaining block by d[k][k]
            offending = None
            for i in range(k + 1, m):
                for j in range(k + 1, n):
                    if d[i][j] % d[k][k] != 0:
                        offending = i
                        break
                if offending is not None:
                    break
            if offending is None:
                break
            add_row(k, offending, 1)
        if d[k][k] < 0:
            negate_row(k)
        k += 1
    return u, d, v


def _int_matrix_inverse(mat: IntMatrix) -> IntMatrix:
    """Exact inverse of a unimodular integer matrix."""
    n = len(mat)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(mat)]
    for col in range(n):
        piv = next(i for i in range(col, n) if aug[i][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    out = []
    for i in range(n):
        row = aug[i][n:]
        if any(x.denominator != 1 for x in row):
            raise ValidationError("matrix is not unimodular")
        out.append([int(x) for x in row])
    return out


# ---------------------------------------------------------------------------
# lattice subgroups of Z^d
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LatticeSubgroup:
    """Subgroup of Z^d, canonicalized to a Hermite-normal-form row basis."""

    ambient: int
    basis: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_generators(ambient: int, generators) -> "LatticeSubgroup":
        gens = [list(map(int, g)) for g in generators]
        for g in gens:
            if len(g) != ambient:
                raise DimensionMismatchError("generator has wrong length")
        return LatticeSubgroup(ambient, hermite_normal_form(gens))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def is_trivial(self) -> bool:
        return self.rank == 0

    def contains(self, vector) -> bool:
        w = list(map(int, vector))
        for row in self.basis:
            p = next(j for j, x in enumerate(row) if x != 0)
            if w[p] != 0:
                if w[p] % row[p] != 0:
                    return False
                q = w[p] // row[p]
                w = [a - q * b for a, b in zip(w, row)]
        return all(x == 0 for x in w)

    def span(self, field: FieldSpec = QQ) -> Subspace:
        return Subspace.from_vectors(field, self.ambient, self.basis)

    def encode(self) -> dict:
        return {"generators": [list(row) for row in self.basis]}


def saturate(h: LatticeSubgroup) -> LatticeSubgroup:
    """The maximal subgroup span(H) cap Z^d containing H with finite index."""
    if h.is_trivial():
        return h
    _, d, v = smith_normal_form([list(r) for r in h.basis])
    rank = sum(1 for i in range(min(len(d), len(d[0]))) if d[i][i] != 0)
    vinv = _int_matrix_inverse(v)
    return LatticeSubgroup.from_generators(h.ambient, vinv[:rank])


def saturation_index(h: LatticeSubgroup) -> int:
    """Index [saturate(H) : H] = product of the nontrivial SNF divisors."""
    if h.is_trivial():
        return 1
    _, d, _ = smith_normal_form([list(r) for r in h.basis])
    out = 1
    for i in range(min(len(d), len(d[0]))):
        if d[i][i] != 0:
            out *= d[i][i]
    return out


@dataclass(frozen=True)
class TorusSubgroup:
    """Closed subgroup of T^d: a rational subtorus plus finitely many torsion cosets.

    ``continuous_part`` is the rational subspace whose projection is the
    identity-component subtorus; ``torsion`` lists rational coset
    representatives (the zero coset included).  Representatives are reduced
    into [0,1)^d and deduplicated modulo the continuous part, but are not a
    canonical form across different presentations of the same subgroup.
    """

    continuous_part: Subspace
    torsion: tuple[tuple[Fraction, ...], ...]

    @property
    def ambient(self) -> int:
        return self.continuous_part.ambient

    def n_components(self) -> int:
        return len(self.torsion)

    def encode(self) -> dict:
        return {"continuous_basis": [[str(x.as_rational()) for x in row]
                                     for row in self.continuous_part.basis],
                "torsion": [[str(c) for c in t] for t in self.torsion]}


def annihilator(h: LatticeSubgroup, field: FieldSpec = QQ) -> TorusSubgroup:
    """H^perp = {a in T^d : a.h in Z for all h in H}.

    Computed from the Smith form of the generator matrix: the identity
    component is pi(span(H)^perp); torsion cosets come from the elementary
    divisors, and are trivial exactly when H is saturated.
    """
    d_amb = h.ambient
    if h.is_trivial():
        return TorusSubgroup(Subspace.full(field, d_amb),
                             (tuple(Fraction(0) for _ in range(d_amb)),))
    m = [list(r) for r in h.basis]
    _, d, v = smith_normal_form(m)
    e = len(m)
    divisors = [d[i][i] for i in range(min(e, d_amb))]
    rank = sum(1 for x in divisors if x != 0)
    # identity component: columns of V beyond the rank span ker(M) = span(H)^perp
    cont_vecs = [[Fraction(v[i][j]) for i in range(d_amb)] for j in range(rank, d_amb)]
    continuous = Subspace.from_vectors(field, d_amb, cont_vecs)
    span_h = h.span(field)
    # torsion: b_i in {k/d_i}, point = V b reduced onto span(H) mod 1
    reps: list[tuple[Fraction, ...]] = []
    combos = [[]]
    for i in range(rank):
        combos = [c + [k] for c in combos for k in range(divisors[i])]
    seen = set()
    for combo in combos:
        b = [Fraction(combo[i], divisors[i]) for i in range(rank)]
        point = [sum(Fraction(v[i][j]) * b[j] for j in range(rank)) for i in range(d_amb)]
        vec = as_vector(field, point)
        reduced = span_h.project(vec)
        frac_pt = tuple(x.as_rational() % 1 for x in reduced)
        if frac_pt not in seen:
            seen.add(frac_pt)
            reps.append(frac_pt)
    reps.sort()
    return TorusSubgroup(continuous, tuple(reps))


# ---------------------------------------------------------------------------
# rationality classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RationalityReport:
    kind: str                       # completely_rational | irrational | intermediate
    rational_rank: int
    rational_subspace: Subspace     # largest rational subspace of L
    lattice: LatticeSubgroup        # L cap Z^d (saturated)


def rationality(sub: Subspace) -> RationalityReport:
    """Classify a direction by the dimension of its largest rational subspace.

    Rational vectors v in L are parameterized by their pivot coordinates;
    requiring every non-rational field component of v to vanish gives a
    homogeneous rational system whose kernel spans the rational part.
    """
    field = sub.field
    d = sub.ambient
    e = sub.dim
    if e == 0:
        return RationalityReport("completely_rational", 0, sub,
                                 LatticeSubgroup(d, ()))
    nbasis = field.dimension
    rows = []
    for j in range(d):
        for beta in range(1, nbasis):
            rows.append([sub.basis[i][j].coeffs[beta] for i in range(e)])
    kernel = nullspace_fractions(rows, e)
    vecs = []
    for x in kernel:
        v = zero_vector(field, d)
        for c, b in zip(x, sub.basis):
            v = vec_add(v, vec_scale(field.from_rational(c), b))
        vecs.append(v)
    rational_part = Subspace.from_vectors(field, d, vecs)
    r = rational_part.dim
    if r == e:
        kind = "completely_rational"
    elif r == 0:
        kind = "irrational"
    else:
        kind = "intermediate"
    # scale the rational basis to integers and saturate
    int_gens = []
    for row in rational_part.basis:
        fracs = [x.as_rational() for x in row]
        den = lcm(*[f.denominator for f in fracs]) if fracs else 1
        int_gens.append([int(f * den) for f in fracs])
    lattice = saturate(LatticeSubgroup.from_generators(d, int_gens)) if int_gens \
        else LatticeSubgroup(d, ())
    return RationalityReport(kind, r, rational_part, lattice)


# ---------------------------------------------------------------------------
# mixed rational/integer affine solver
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MixedSolution:
    """Solution family of  R c + Z n = b  with c rational and n integral.

    The full solution set is
        c = rat_part + sum_i a_i * rat_shifts[i] + (rational combos of rat_kernel)
        n = int_part + sum_i a_i * int_lattice[i],        a_i in Z.
    """

    rat_part: tuple[Fraction, ...]
    int_part: tuple[int, ...]
    int_lattice: tuple[tuple[int, ...], ...]
    rat_shifts: tuple[tuple[Fraction, ...], ...]
    rat_kernel: tuple[tuple[Fraction, ...], ...]


def solve_mixed_affine(rat_cols: list[list[Fraction]],
                       int_cols: list[list[Fraction]],
                       rhs: list[Fraction]) -> MixedSolution | None:
    """Exact feasibility for a rational affine system in mixed unknowns.

    ``rat_cols`` and ``int_cols`` are m x a and m x b coefficient blocks.
    Returns None when infeasible.  Rational unknowns are eliminated first;
    the residual integral system is solved via Smith normal form.
    """
    m = len(rhs)
    if not rat_cols:
        rat_cols = [[] for _ in range(m)]
    if not int_cols:
        int_cols = [[] for _ in range(m)]
    a = len(rat_cols[0]) if m else 0
    b = len(int_cols[0]) if m else 0
    if m == 0:
        return MixedSolution((), (), (), (), ())

    aug = [list(rat_cols[i]) + list(int_cols[i]) + [rhs[i]] for i in range(m)]
    width = a + b + 1
    # eliminate rational unknowns (columns 0..a-1)
    pivots: list[int] = []
    r = 0
    for col in range(a):
        piv = next((i for i in range(r, m) if aug[i][col] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][col]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
        if r == m:
            break
    # residual integral system from rows without rational pivots
    res_rows = []
    res_rhs = []
    for i in range(r, m):
        if any(aug[i][j] != 0 for j in range(a)):
            raise AssertionError("elimination left a rational coefficient")
        row = aug[i][a:a + b]
        val = aug[i][a + b]
        if any(x != 0 for x in row):
            res_rows.append(row)
            res_rhs.append(val)
        elif val != 0:
            return None
    # clear denominators to get an integer system
    int_rows: list[list[int]] = []
    int_rhs: list[int] = []
    for row, val in zip(res_rows, res_rhs):
        den = lcm(*[f.denominator for f in row + [val]])
        int_rows.append([int(f * den) for f in row])
        int_rhs.append(int(val * den))
    if int_rows:
        u, dmat, v = smith_normal_form(int_rows)
        mm = len(int_rows)
        w = [sum(u[i][j] * int_rhs[j] for j in range(mm)) for i in range(mm)]
        y = [0] * b
        for i in range(mm):
            di = dmat[i][i] if i < b else 0
            if di != 0:
                if w[i] % di != 0:
                    return None
                y[i] = w[i] // di
            elif w[i] != 0:
                return None
        n0 = [sum(v[i][j] * y[j] for j in range(b)) for i in range(b)]
        free_cols = [j for j in range(b) if j >= mm or dmat[j][j] == 0] if b else []
        lattice = [tuple(v[i][j] for i in range(b)) for j in free_cols]
    else:
        n0 = [0] * b
        lattice = [tuple(int(i == j) for i in range(b)) for j in range(b)]

    free_rat = [j for j in range(a) if j not in pivots]

    def back_substitute(nvec: list, hom: bool) -> list[Fraction]:
        c = [Fraction(0)] * a
        for i, p in enumerate(pivots):
            val = Fraction(0) if hom else aug[i][a + b]
            val -= sum(aug[i][a + k] * nvec[k] for k in range(b))
            c[p] = val
        return c

    c0 = back_substitute(n0, hom=False)
    shifts = [tuple(back_substitute(list(lam), hom=True)) for lam in lattice]
    kernel = []
    for f in free_rat:
        vvec = [Fraction(0)] * a
        vvec[f] = Fraction(1)
        for i, p in enumerate(pivots):
            vvec[p] = -aug[i][f]
        kernel.append(tuple(vvec))
    return MixedSolution(tuple(c0), tuple(n0), tuple(lattice),
                         tuple(shifts), tuple(kernel))


# ---------------------------------------------------------------------------
# integer-affine feasibility over field data
# ---------------------------------------------------------------------------


def rationalize_system(coeffs: list[list[FieldScalar]],
                       rhs: list[FieldScalar]) -> tuple[list[list[Fraction]], list[Fraction]]:
    """Expand field-valued equations sum_j coeffs[i][j] u_j = rhs[i] (u rational)
    into one rational equation per field-basis component."""
    rows: list[list[Fraction]] = []
    vals: list[Fraction] = []
    if not coeffs:
        return rows, vals
    field = rhs[0].field if rhs else coeffs[0][0].field
    for i, eq in enumerate(coeffs):
        for beta in range(field.dimension):
            rows.append([s.coeffs[beta] for s in eq])
            vals.append(rhs[i].coeffs[beta])
    return rows, vals


@dataclass(frozen=True)
class IntegerAffineSolution:
    feasible: bool
    witness: tuple[int, ...] | None
    lattice: LatticeSubgroup | None


def solve_integer_affine(a_matrix: list[list[FieldScalar]],
                         c_vector: list[FieldScalar]) -> IntegerAffineSolution:
    """Find n in Z^d with A (c - n) = 0, plus the lattice of all solutions.

    Every field-basis component of each equation contributes one rational
    constraint; integral feasibility of the stacked system is decided by
    Smith normal form.
    """
    if not a_matrix:
        d = len(c_vector)
        return IntegerAffineSolution(True, tuple([0] * d),
                                     LatticeSubgroup.from_generators(
                                         d, [[int(i == j) for i in range(d)]
                                             for j in range(d)]))
    d = len(a_matrix[0])
    # A c = A n
    target = []
    for row in a_matrix:
        acc = row[0] * c_vector[0]
        for x, y in zip(row[1:], c_vector[1:]):
            acc = acc + x * y
        target.append(acc)
    rows, vals = rationalize_system(a_matrix, target)
    sol = solve_mixed_affine([], [list(r) for r in rows], vals)
    if sol is None:
        return IntegerAffineSolution(False, None, None)
    lattice = LatticeSubgroup.from_generators(d, [list(l) for l in sol.int_lattice]) \
        if sol.int_lattice else LatticeSubgroup(d, ())
    return IntegerAffineSolution(True, sol.int_part, lattice)
