"""Symbolic finite Borel measures on R^d or T^d up to equivalence of measures.

A measure is a finite list of components over one field:

* ``Atom``        -- a point mass,
* ``BoxLebesgue`` -- the Lebesgue class on an affine carrier K + offset,
                     with a centered-zonotope representative (its Fourier
                     transform is an exact product of sinc factors),
* ``AtomGroup``   -- the purely atomic class supported on offset + module,
                     where the module is the Z- or Q-span of finitely many
                     generators (the zero point of the ambient space is
                     excluded from the atom set).

Classification consumes only the equivalence class; weights exist so the
numerical Fourier oracle has a concrete representative.  On the torus all
data is reduced mod Z^d; a Euclidean measure can carry a ``periodized``
flag meaning the class of all its lattice translates with summable
positive weights.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, replace
from fractions import Fraction
from math import lcm

from .errors import (ClosureBoundError, DimensionMismatchError, FieldMismatchError,
                     UnsupportedConvolutionError, ValidationError)
from .linalg import (AffineCarrier, FieldVector, LatticeSubgroup, Subspace,
                     as_vector, hermite_normal_form, rationalize_system,
                     rref_fractions, solve_integer_affine, solve_mixed_affine,
                     unit_vector, vec_add, vec_is_zero, vec_mod1, vec_scale,
                     vec_sub, zero_vector)
from .scalar import FieldScalar, FieldSpec, decode_scalar

EUCLID = "euclidean"
TORUS = "torus"


def _check_weight(w) -> Fraction:
    w = Fraction(w)
    if w <= 0:
        raise ValidationError("component weight must be positive")
    return w


# ---------------------------------------------------------------------------
# components
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Atom:
    point: FieldVector
    weight: Fraction = Fraction(1)

    @property
    def dim(self) -> int:
        return 0

    def encode(self) -> dict:
        return {"kind": "atom",
                "point": [x.encode() for x in self.point],
                "weight": str(self.weight)}


@dataclass(frozen=True)
class BoxLebesgue:
    """Lebesgue class on carrier.subspace + carrier.offset.

    The carrier offset is the canonical class datum (orthogonal to the
    subspace, lattice-reduced on the torus).  ``center`` locates the
    concrete centered-zonotope representative; it may differ from the
    offset by a vector inside the subspace, which classification ignores
    but the Fourier transform must keep for exact phases.
    """

    carrier: AffineCarrier
    generators: tuple[FieldVector, ...]
    center: FieldVector | None = None
    weight: Fraction = Fraction(1)

    @property
    def dim(self) -> int:
        return self.carrier.dim

    def rep_center(self) -> FieldVector:
        return self.center if self.center is not None else self.carrier.offset

    def encode(self) -> dict:
        d = {"kind": "box",
             "basis": [[x.encode() for x in row] for row in self.carrier.subspace.basis],
             "offset": [x.encode() for x in self.carrier.offset],
             "weight": str(self.weight)}
        if self.generators != self.carrier.subspace.basis:
            d["generators"] = [[x.encode() for x in g] for g in self.generators]
        if self.center is not None and self.center != self.carrier.offset:
            d["center"] = [x.encode() for x in self.center]
        return d


@dataclass(frozen=True)
class AtomGroup:
    generators: tuple[FieldVector, ...]   # canonical module basis (ring-dependent)
    ring: str                             # "Z" | "Q"
    offset: FieldVector
    weight: Fraction = Fraction(1)

    @property
    def dim(self) -> int:
        return 0

    def encode(self) -> dict:
        d = {"kind": "atom_group",
             "generators": [[x.encode() for x in g] for g in self.generators],
             "ring": self.ring,
             "weight": str(self.weight)}
        if not vec_is_zero(self.offset):
            d["offset"] = [x.encode() for x in self.offset]
        return d


Component = Atom | BoxLebesgue | AtomGroup


def _encode_sort_key(comp: Component):
    return (comp.__class__.__name__, comp.dim, json.dumps(comp.encode(), sort_keys=True))


# ---------------------------------------------------------------------------
# canonicalization helpers
# ---------------------------------------------------------------------------


def _flatten(v: FieldVector) -> list[Fraction]:
    out: list[Fraction] = []
    for x in v:
        out.extend(x.coeffs)
    return out


def _unflatten(field: FieldSpec, dim: int, flat) -> FieldVector:
    n = field.dimension
    return tuple(field.from_coeffs(flat[j * n:(j + 1) * n]) for j in range(dim))


def canonical_module(field: FieldSpec, dim: int, generators, ring: str,
                     space: str) -> tuple[FieldVector, ...]:
    """Canonical basis for the Z- or Q-module spanned by the generators.

    Vectors are flattened over the field basis; ring Q uses RREF over Q,
    ring Z a scaled Hermite normal form.  On the torus, ring-Z modules are
    augmented by Z^d (atom sets mod 1 are unchanged), which makes equal
    subgroups of T^d canonically equal.
    """
    gens = [as_vector(field, g) for g in generators]
    gens = [g for g in gens if not vec_is_zero(g)]
    if space == TORUS and ring == "Z":
        gens = gens + [unit_vector(field, dim, j) for j in range(dim)]
    if not gens:
        return ()
    flat = [_flatten(g) for g in gens]
    if ring == "Q":
        rows, _ = rref_fractions(flat)
    elif ring == "Z":
        den = lcm(*[f.denominator for row in flat for f in row] or [1])
        int_rows = [[int(f * den) for f in row] for row in flat]
        hnf = hermite_normal_form(int_rows)
        rows = [[Fraction(x, den) for x in row] for row in hnf]
    else:
        raise ValidationError(f"unknown ring {ring!r}")
    return tuple(_unflatten(field, dim, row) for row in rows)


def group_element_from_coeffs(field: FieldSpec, group: "AtomGroup", coeffs,
                              with_offset: bool) -> FieldVector:
    """offset + sum_i coeffs[i] * generators[i] (offset optional)."""
    dim = len(group.offset)
    out = group.offset if with_offset else zero_vector(field, dim)
    for c, g in zip(coeffs, group.generators):
        if c:
            out = vec_add(out, tuple(field.from_rational(Fraction(c)) * x
                                     for x in g))
    return out


def group_value_coset_nontrivial(field: FieldSpec, group: "AtomGroup",
                                 coeff_part, lattice_coeffs, kernel_coeffs,
                                 lattice_trivial: bool) -> FieldVector | None:
    """Given the solution family of a group wall system (particular
    coefficients, integer-lattice coefficient shifts, rational kernel
    coefficients), find a solution whose group element is a genuine atom:
    outside Z^d when ``lattice_trivial`` (torus semantics), nonzero
    otherwise.  Returns that witness element, or None if every solution is
    trivial."""
    def nontrivial(v: FieldVector) -> bool:
        if lattice_trivial:
            return not all(x.is_integer() for x in v)
        return not vec_is_zero(v)

    base = group_element_from_coeffs(field, group, coeff_part, True)
    if nontrivial(base):
        return base
    # base is trivial (integral resp. zero); adding any nontrivial direction
    # of the solution module escapes the trivial set
    for lam in lattice_coeffs:
        u = group_element_from_coeffs(field, group, lam, False)
        if nontrivial(u):
            return vec_add(base, u)
    for vk in kernel_coeffs:
        v = group_element_from_coeffs(field, group, vk, False)
        if vec_is_zero(v):
            continue
        # rational kernel direction: scale so one coordinate lands at 1/2
        # past an integer (always possible since v != 0)
        j, x = next((j, x) for j, x in enumerate(v) if not x.is_zero())
        if x.is_rational():
            q = Fraction(1, 2) / x.as_rational()
            return vec_add(base, tuple(field.from_rational(q) * y for y in v))
        return vec_add(base, v)  # irrational coordinate: q = 1 already escapes
    return None


def module_member(field: FieldSpec, dim: int, group: AtomGroup, v: FieldVector,
                  space: str) -> bool:
    """Is v in offset + module (+ Z^d on the torus)?"""
    target = vec_sub(v, group.offset)
    k = len(group.generators)
    eqs: list[list[FieldScalar]] = [[group.generators[i][j] for i in range(k)]
                                    for j in range(dim)]
    rows, rhs = rationalize_system(eqs, list(target))
    # lattice-shift columns: coefficient of n_j in the (coord j, basis beta) row
    shift_cols = [[Fraction(1) if (beta == 0 and jj == j) else Fraction(0)
                   for jj in range(dim)]
                  for j in range(dim) for beta in range(field.dimension)]
    if group.ring == "Q":
        int_cols = shift_cols if space == TORUS else [[] for _ in rows]
        sol = solve_mixed_affine([list(r) for r in rows], int_cols, rhs)
    else:
        combined = [list(r) + shift_cols[i] for i, r in enumerate(rows)] \
            if space == TORUS else [list(r) for r in rows]
        sol = solve_mixed_affine([], combined, rhs)
    return sol is not None


# ---------------------------------------------------------------------------
# the measure
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SymbolicMeasure:
    space: str
    dim: int
    field: FieldSpec
    components: tuple[Component, ...]
    periodized: bool = False

    # -- construction --------------------------------------------------------

    @staticmethod
    def make(space: str, dim: int, field: FieldSpec, components,
             periodized: bool = False) -> "SymbolicMeasure":
        if space not in (EUCLID, TORUS):
            raise ValidationError(f"unknown space {space!r}")
        if space == TORUS and periodized:
            raise ValidationError("periodized flag is only valid on euclidean space")
        canon: list[Component] = []
        for comp in components:
            c = _canonicalize_component(space, dim, field, comp)
            if c is None:
                continue
            merged = False
            for i, existing in enumerate(canon):
                if _mergeable(space, dim, field, existing, c):
                    canon[i] = replace(existing, weight=existing.weight + c.weight)
                    merged = True
                    break
            if not merged:
                canon.append(c)
        canon.sort(key=_encode_sort_key)
        return SymbolicMeasure(space, dim, field, tuple(canon), periodized)

    def is_zero(self) -> bool:
        return not self.components

    def replace_components(self, components) -> "SymbolicMeasure":
        return SymbolicMeasure.make(self.space, self.dim, self.field, components,
                                    self.periodized)

    def _check_compatible(self, other: "SymbolicMeasure") -> None:
        if self.space != other.space or self.dim != other.dim:
            raise DimensionMismatchError("measures on different spaces")
        if self.field != other.field:
            raise FieldMismatchError("measures over different fields")

    # -- class-level equality -------------------------------------------------

    def same_class(self, other: "SymbolicMeasure") -> bool:
        """Equivalence of measure classes: same spaces and matching component
        carriers (weights and box generators are class-irrelevant)."""
        if (self.space, self.dim, self.field) != (other.space, other.dim, other.field):
            return False
        if self.periodized != other.periodized:
            return False
        mine = list(self.components)
        unmatched = list(other.components)
        for c in mine:
            hit = next((i for i, o in enumerate(unmatched)
                        if _class_equivalent(self.space, self.dim, self.field, c, o)), None)
            if hit is None:
                return False
            unmatched.pop(hit)
        return not unmatched

    def total_weight(self) -> Fraction:
        return sum((c.weight for c in self.components), Fraction(0))

    def has_delta_zero(self) -> bool:
        """True if the class contains a point mass at the group identity
        (on periodized Euclidean measures: at any lattice point)."""
        for c in self.components:
            if isinstance(c, Atom):
                if self.space == TORUS or self.periodized:
                    if all(x.is_integer() for x in c.point):
                        return True
                elif vec_is_zero(c.point):
                    return True
        return False

    # -- encoding ---------------------------------------------------------------

    def encode(self) -> dict:
        return {"space": self.space,
                "dim": self.dim,
                "field_roots": list(self.field.roots),
                "periodized": self.periodized,
                "zero": self.is_zero(),
                "components": [c.encode() for c in self.components]}

    @staticmethod
    def decode(doc: dict) -> "SymbolicMeasure":
        try:
            space = doc["space"]
            dim = int(doc["dim"])
            field = FieldSpec(tuple(doc.get("field_roots", ())))
            periodized = bool(doc.get("periodized", False))
            comps = [decode_component(field, dim, c) for c in doc["components"]]
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"bad measure document: {exc}") from exc
        return SymbolicMeasure.make(space, dim, field, comps, periodized)


def _class_signature(comp: Component):
    if isinstance(comp, Atom):
        return ("atom", comp.point)
    if isinstance(comp, BoxLebesgue):
        return ("box", comp.carrier.subspace, comp.carrier.offset)
    return ("atom_group", comp.generators, comp.ring, comp.offset)


def _offsets_equivalent(space: str, dim: int, field: FieldSpec, sub: Subspace,
                        o1: FieldVector, o2: FieldVector) -> bool:
    """Do offsets o1, o2 describe the same carrier of ``sub`` (mod Z^d on torus)?"""
    diff = vec_sub(o1, o2)
    if space == EUCLID:
        return sub.contains(diff)
    perp = sub.orthocomplement()
    a = [list(row) for row in perp.basis]
    return solve_integer_affine(a, list(diff)).feasible


def _class_equivalent(space: str, dim: int, field: FieldSpec,
                      a: Component, b: Component) -> bool:
    if type(a) is not type(b):
        return False
    if isinstance(a, Atom):
        return a.point == b.point
    if isinstance(a, BoxLebesgue):
        return (a.carrier.subspace == b.carrier.subspace
                and _offsets_equivalent(space, dim, field, a.carrier.subspace,
                                        a.carrier.offset, b.carrier.offset))
    if a.generators != b.generators or a.ring != b.ring:
        return False
    probe = AtomGroup(a.generators, a.ring, a.offset, a.weight)
    return module_member(field, dim, probe, b.offset, space)


def _mergeable(space: str, dim: int, field: FieldSpec,
               a: Component, b: Component) -> bool:
    """Strict dedup: class-equivalent and (for boxes) same generator multiset."""
    if not _class_equivalent(space, dim, field, a, b):
        return False
    if isinstance(a, BoxLebesgue):
        return (a.rep_center() == b.rep_center()
                and sorted(map(_gen_key, a.generators))
                == sorted(map(_gen_key, b.generators)))
    return True


def _gen_key(g: FieldVector):
    return tuple((x.field.roots, x.coeffs) for x in g)


# ---------------------------------------------------------------------------
# component canonicalization
# ---------------------------------------------------------------------------


def _canonicalize_component(space: str, dim: int, field: FieldSpec,
                            comp: Component) -> Component | None:
    if isinstance(comp, Atom):
        point = as_vector(field, comp.point)
        if len(point) != dim:
            raise DimensionMismatchError("atom point has wrong length")
        if space == TORUS:
            point = vec_mod1(point)
        return Atom(point, _check_weight(comp.weight))

    if isinstance(comp, BoxLebesgue):
        sub = comp.carrier.subspace
        if sub.field != field:
            raise FieldMismatchError("box subspace over a different field")
        if sub.ambient != dim:
            raise DimensionMismatchError("box subspace has wrong ambient dimension")
        if sub.dim == 0:
            # a zero-dimensional box is a point mass
            return _canonicalize_component(
                space, dim, field, Atom(comp.rep_center(), comp.weight))
        gens = tuple(as_vector(field, g) for g in comp.generators) \
            or sub.basis
        span = Subspace.from_vectors(field, dim, gens)
        if span != sub:
            raise ValidationError("box generators must span exactly the carrier subspace")
        center = as_vector(field, comp.rep_center())
        if space == TORUS:
            center = vec_mod1(center)
        offset = sub.project_perp(center)
        if space == TORUS:
            offset = _reduce_box_offset(field, dim, sub, offset)
        return BoxLebesgue(AffineCarrier(sub, offset), gens, center,
                           _check_weight(comp.weight))

    if isinstance(comp, AtomGroup):
        gens = canonical_module(field, dim, comp.generators, comp.ring, space)
        offset = as_vector(field, comp.offset)
        if len(offset) != dim:
            raise DimensionMismatchError("atom group offset has wrong length")
        probe = AtomGroup(gens, comp.ring, zero_vector(field, dim), comp.weight)
        if module_member(field, dim, probe, offset, space):
            offset = zero_vector(field, dim)
        elif space == TORUS:
            offset = vec_mod1(offset)
        if not gens:
            # trivial module: the component degenerates to a single atom (or nothing)
            triv_zero = all(x.is_integer() for x in offset) if space == TORUS \
                else vec_is_zero(offset)
            if triv_zero:
                return None
            return _canonicalize_component(space, dim, field, Atom(offset, comp.weight))
        if space == TORUS and comp.ring == "Z" and _module_is_lattice_only(gens):
            # module inside Z^d: at most one atom survives mod 1
            triv_zero = all(x.is_integer() for x in offset)
            if triv_zero:
                return None
            return _canonicalize_component(space, dim, field, Atom(offset, comp.weight))
        return AtomGroup(gens, comp.ring, offset, _check_weight(comp.weight))

    raise ValidationError(f"unknown component {comp!r}")


def _module_is_lattice_only(gens: tuple[FieldVector, ...]) -> bool:
    return all(all(x.is_integer() for x in g) for g in gens)


def _reduce_box_offset(field: FieldSpec, dim: int, sub: Subspace,
                       offset: FieldVector) -> FieldVector:
    """Reduce a (perp-reduced) torus box offset modulo proj_perp(Z^d).

    If the offset is a lattice shift of the subspace the result is zero.
    When the projected lattice is rational (completely rational carrier) the
    offset is reduced into its fundamental domain, which is a canonical form;
    otherwise the projected lattice is dense and the offset is kept (dedup
    then relies on pairwise equivalence tests).
    """
    if vec_is_zero(offset):
        return offset
    perp = sub.orthocomplement()
    a = [list(row) for row in perp.basis]
    sol = solve_integer_affine(a, list(offset))
    if sol.feasible:
        return zero_vector(field, dim)
    proj = [sub.project_perp(unit_vector(field, dim, j)) for j in range(dim)]
    if not all(all(x.is_rational() for x in p) for p in proj):
        return offset
    flat = [[x.as_rational() for x in p] for p in proj]
    den = lcm(*[f.denominator for row in flat for f in row] or [1])
    hnf = hermite_normal_form([[int(f * den) for f in row] for row in flat])
    basis = [as_vector(field, [Fraction(x, den) for x in row]) for row in hnf]
    # coordinates of the offset over the projected-lattice basis, floor-reduced
    work = offset
    coords = _solve_in_span(field, basis, work)
    for c, b in zip(coords, basis):
        k = c.floor()
        if k:
            work = vec_sub(work, vec_scale(field.from_rational(k), b))
    return work


def _solve_in_span(field: FieldSpec, basis: list[FieldVector],
                   v: FieldVector) -> list[FieldScalar]:
    """Coordinates of v over an independent spanning set (least-squares exact)."""
    from .linalg import solve_field_square, vec_dot
    gram = [[vec_dot(bi, bj) for bj in basis] for bi in basis]
    rhs = [vec_dot(bi, v) for bi in basis]
    return solve_field_square(gram, rhs)


def decode_component(field: FieldSpec, dim: int, doc: dict) -> Component:
    kind = doc.get("kind")
    weight = Fraction(doc.get("weight", 1))
    if kind == "atom":
        return Atom(tuple(decode_scalar(field, x) for x in doc["point"]), weight)
    if kind == "box":
        sub = Subspace.from_vectors(
            field, dim, [[decode_scalar(field, x) for x in row] for row in doc["basis"]])
        off_doc = doc.get("offset")
        offset = tuple(decode_scalar(field, x) for x in off_doc) if off_doc \
            else zero_vector(field, dim)
        gens = tuple(tuple(decode_scalar(field, x) for x in g)
                     for g in doc.get("generators", [])) or sub.basis
        center_doc = doc.get("center")
        center = tuple(decode_scalar(field, x) for x in center_doc) if center_doc \
            else None
        return BoxLebesgue(AffineCarrier.make(sub, offset), gens, center, weight)
    if kind == "atom_group":
        gens = tuple(tuple(decode_scalar(field, x) for x in g)
                     for g in doc["generators"])
        off_doc = doc.get("offset")
        offset = tuple(decode_scalar(field, x) for x in off_doc) if off_doc \
            else zero_vector(field, dim)
        return AtomGroup(gens, doc["ring"], offset, weight)
    raise ValidationError(f"unknown component kind {kind!r}")


# ---------------------------------------------------------------------------
# measure algebra
# ---------------------------------------------------------------------------


def add(m1: SymbolicMeasure, m2: SymbolicMeasure) -> SymbolicMeasure:
    m1._check_compatible(m2)
    if m1.periodized != m2.periodized:
        raise ValidationError("cannot add periodized and plain measures")
    return m1.replace_components(list(m1.components) + list(m2.components))


def translate(m: SymbolicMeasure, v) -> SymbolicMeasure:
    vv = as_vector(m.field, v)
    out: list[Component] = []
    for c in m.components:
        if isinstance(c, Atom):
            out.append(Atom(vec_add(c.point, vv), c.weight))
        elif isinstance(c, BoxLebesgue):
            out.append(BoxLebesgue(c.carrier.translate(vv), c.generators,
                                   vec_add(c.rep_center(), vv), c.weight))
        else:
            out.append(AtomGroup(c.generators, c.ring, vec_add(c.offset, vv), c.weight))
    return m.replace_components(out)


def _convolve_pair(space: str, dim: int, field: FieldSpec,
                   a: Component, b: Component) -> Component:
    if isinstance(a, Atom) and isinstance(b, Atom):
        return Atom(vec_add(a.point, b.point), a.weight * b.weight)
    if isinstance(a, Atom) and isinstance(b, BoxLebesgue):
        return BoxLebesgue(b.carrier.translate(a.point), b.generators,
                           vec_add(b.rep_center(), a.point), a.weight * b.weight)
    if isinstance(a, BoxLebesgue) and isinstance(b, Atom):
        return _convolve_pair(space, dim, field, b, a)
    if isinstance(a, Atom) and isinstance(b, AtomGroup):
        return AtomGroup(b.generators, b.ring, vec_add(b.offset, a.point),
                         a.weight * b.weight)
    if isinstance(a, AtomGroup) and isinstance(b, Atom):
        return _convolve_pair(space, dim, field, b, a)
    if isinstance(a, BoxLebesgue) and isinstance(b, BoxLebesgue):
        sub = a.carrier.subspace.sum_with(b.carrier.subspace)
        center = vec_add(a.rep_center(), b.rep_center())
        gens = a.generators + b.generators
        return BoxLebesgue(AffineCarrier.make(sub, center), gens, center,
                           a.weight * b.weight)
    if isinstance(a, AtomGroup) and isinstance(b, AtomGroup):
        if a.ring != b.ring:
            raise UnsupportedConvolutionError(
                "convolution of atom groups over different rings is not representable")
        return AtomGroup(a.generators + b.generators, a.ring,
                         vec_add(a.offset, b.offset), a.weight * b.weight)
    raise UnsupportedConvolutionError(
        "atom group * box has no finite carrier description")


def convolve(m1: SymbolicMeasure, m2: SymbolicMeasure) -> SymbolicMeasure:
    m1._check_compatible(m2)
    out = [_convolve_pair(m1.space, m1.dim, m1.field, a, b)
           for a in m1.components for b in m2.components]
    return SymbolicMeasure.make(m1.space, m1.dim, m1.field, out,
                                m1.periodized or m2.periodized)


def exp(m: SymbolicMeasure, cap: int = 4096) -> SymbolicMeasure:
    """Class of the convolution exponential delta_0 + sum_n sigma^(n)/n!.

    Computed as the closure of the component set under pairwise convolution
    (carriers only; box representatives are re-based on their carrier), with
    the unit point mass added.  Raises ClosureBoundError past ``cap``.
    """
    delta0 = Atom(zero_vector(m.field, m.dim))

    def norm(comp: Component) -> Component:
        # carrier-level representative: boxes re-based on the carrier basis
        if isinstance(comp, BoxLebesgue):
            return BoxLebesgue(comp.carrier, comp.carrier.subspace.basis,
                               comp.carrier.offset, Fraction(1))
        if isinstance(comp, Atom):
            return Atom(comp.point, Fraction(1))
        return AtomGroup(comp.generators, comp.ring, comp.offset, Fraction(1))

    base = SymbolicMeasure.make(m.space, m.dim, m.field,
                                [norm(c) for c in m.components] + [delta0],
                                m.periodized)
    pool: list[Component] = list(base.components)

    def seen(comp: Component) -> bool:
        return any(_class_equivalent(m.space, m.dim, m.field, comp, c) for c in pool)

    frontier = list(pool)
    while frontier:
        new: list[Component] = []
        for a in pool:
            for b in frontier:
                c = _canonicalize_component(
                    m.space, m.dim, m.field,
                    norm(_convolve_pair(m.space, m.dim, m.field, a, b)))
                if c is None:
                    continue
                c = norm(c)
                if not seen(c) and not any(
                        _class_equivalent(m.space, m.dim, m.field, c, n) for n in new):
                    new.append(c)
        if len(pool) + len(new) > cap:
            raise ClosureBoundError(
                f"convolution closure exceeded the component cap {cap}")
        pool.extend(new)
        frontier = new
    return SymbolicMeasure.make(m.space, m.dim, m.field, pool, m.periodized)


def pushforward_quotient(m: SymbolicMeasure) -> SymbolicMeasure:
    """Push a Euclidean measure to the torus through t -> t mod Z^d."""
    if m.space != EUCLID:
        raise ValidationError("pushforward_quotient expects a euclidean measure")
    return SymbolicMeasure.make(TORUS, m.dim, m.field, m.components, False)


def suspend(m: SymbolicMeasure) -> SymbolicMeasure:
    """Lift a torus measure to the periodized Euclidean class sum_n a_n (m o tau^n).

    The positive weight sequence is never materialized; the class is encoded
    by the ``periodized`` flag.
    """
    if m.space != TORUS:
        raise ValidationError("suspend expects a torus measure")
    return SymbolicMeasure.make(EUCLID, m.dim, m.field, m.components, True)


def pushforward_subgroup(m: SymbolicMeasure, h: LatticeSubgroup
                         ) -> tuple[SymbolicMeasure, tuple[tuple[int, ...], ...]]:
    """Push a torus measure to the dual of a lattice subgroup H of rank e.

    The identification of the dual of H with T^e maps the character a to
    (a.h_1, ..., a.h_e) mod 1 over the HNF basis rows h_i; components map
    through this integer-linear map.  Returns the measure and the e x d
    identification matrix.
    """
    if m.space != TORUS:
        raise ValidationError("pushforward_subgroup expects a torus measure")
    if h.is_trivial():
        raise ValidationError("subgroup must be nontrivial")
    if h.ambient != m.dim:
        raise DimensionMismatchError("subgroup ambient dimension mismatch")
    rows = h.basis
    e = len(rows)
    field = m.field

    def apply(v: FieldVector) -> FieldVector:
        out = []
        for r in rows:
            acc = field.zero()
            for coef, x in zip(r, v):
                acc = acc + coef * x
            out.append(acc)
        return tuple(out)

    comps: list[Component] = []
    for c in m.components:
        if isinstance(c, Atom):
            comps.append(Atom(apply(c.point), c.weight))
        elif isinstance(c, AtomGroup) and _group_image_charges_zero(m, c, rows):
            # some genuine source atom lands on 0 in the quotient: the pushed
            # class has an explicit point mass there on top of the image group
            comps.append(Atom(zero_vector(field, e), c.weight))
            comps.append(AtomGroup(tuple(apply(g) for g in c.generators), c.ring,
                                   apply(c.offset), c.weight))
        elif isinstance(c, BoxLebesgue):
            image_gens = [apply(g) for g in c.generators]
            image_gens = [g for g in image_gens if not vec_is_zero(g)]
            image_sub = Subspace.from_vectors(field, e, image_gens)
            if image_sub.dim == 0:
                comps.append(Atom(apply(c.rep_center()), c.weight))
            else:
                center = apply(c.rep_center())
                comps.append(BoxLebesgue(
                    AffineCarrier.make(image_sub, center),
                    tuple(image_gens), center, c.weight))
        else:
            comps.append(AtomGroup(tuple(apply(g) for g in c.generators), c.ring,
                                   apply(c.offset), c.weight))
    return SymbolicMeasure.make(TORUS, e, field, comps, False), rows


def _group_image_charges_zero(m: SymbolicMeasure, comp: AtomGroup,
                              rows: tuple[tuple[int, ...], ...]) -> bool:
    """Does some genuine atom of the group map to 0 under the dual
    identification a -> (a.h_1, ..., a.h_e) mod 1?

    Solve  M (offset + sum_i c_i g_i) = k  over k in Z^e and coefficients in
    the ring, then check that some solution's source element lies outside Z^d.
    """
    field = m.field
    e = len(rows)
    k = len(comp.generators)

    def pair(r, v: FieldVector) -> FieldScalar:
        acc = field.zero()
        for coef, x in zip(r, v):
            acc = acc + coef * x
        return acc

    eqs = [[pair(r, g) for g in comp.generators] for r in rows]
    rhs = [-pair(r, comp.offset) for r in rows]
    rat_rows, rat_rhs = rationalize_system(eqs, rhs)
    # columns for the integer unknowns k_i: -1 on the rational component row
    kcols = [[Fraction(-1) if (beta == 0 and i == j) else Fraction(0)
              for j in range(e)]
             for i in range(e) for beta in range(field.dimension)]
    if comp.ring == "Q":
        sol = solve_mixed_affine([list(r) for r in rat_rows], kcols, rat_rhs)
        if sol is None:
            return False
        coeff_part = list(sol.rat_part)
        lattice_coeffs = [list(s) for s in sol.rat_shifts]
        kernel_coeffs = [list(v) for v in sol.rat_kernel]
    else:
        combined = [list(r) + kcols[i] for i, r in enumerate(rat_rows)]
        sol = solve_mixed_affine([], combined, rat_rhs)
        if sol is None:
            return False
        coeff_part = list(sol.int_part[:k])
        lattice_coeffs = [list(lam[:k]) for lam in sol.int_lattice]
        kernel_coeffs = []
    witness = group_value_coset_nontrivial(field, comp, coeff_part,
                                           lattice_coeffs, kernel_coeffs,
                                           lattice_trivial=True)
    return witness is not None


def decompose(m: SymbolicMeasure) -> list[SymbolicMeasure]:
    """Split into wall measures by carrier dimension: returns [m_0, ..., m_d].

    Components of equal dimension are merged per identical carrier; the sum
    of the parts is the input class.
    """
    buckets: list[list[Component]] = [[] for _ in range(m.dim + 1)]
    for c in m.components:
        merged = False
        for i, prev in enumerate(buckets[c.dim]):
            if _class_equivalent(m.space, m.dim, m.field, prev, c):
                buckets[c.dim][i] = replace(prev, weight=prev.weight + c.weight)
                merged = True
                break
        if not merged:
            buckets[c.dim].append(c)
    return [SymbolicMeasure.make(m.space, m.dim, m.field, bucket, m.periodized)
            for bucket in buckets]


def promote_field(m: SymbolicMeasure, field: FieldSpec) -> SymbolicMeasure:
    """Re-express a measure in a larger field containing the current one."""
    from .linalg import promote_subspace, promote_vector

    if m.field == field:
        return m
    comps: list[Component] = []
    for c in m.components:
        if isinstance(c, Atom):
            comps.append(Atom(promote_vector(c.point, field), c.weight))
        elif isinstance(c, BoxLebesgue):
            sub = promote_subspace(c.carrier.subspace, field)
            comps.append(BoxLebesgue(
                AffineCarrier.make(sub, promote_vector(c.carrier.offset, field)),
                tuple(promote_vector(g, field) for g in c.generators),
                promote_vector(c.rep_center(), field), c.weight))
        else:
            comps.append(AtomGroup(
                tuple(promote_vector(g, field) for g in c.generators), c.ring,
                promote_vector(c.offset, field), c.weight))
    return SymbolicMeasure.make(m.space, m.dim, field, comps, m.periodized)


def atom_points(m: SymbolicMeasure) -> list[FieldVector]:
    """Points of the plain Atom components (atom groups are reported separately)."""
    return [c.point for c in m.components if isinstance(c, Atom)]


def has_atom_at(m: SymbolicMeasure, point) -> bool:
    """Does the class give positive mass to the single point?"""
    p = as_vector(m.field, point)
    if m.space == TORUS:
        p = vec_mod1(p)
    for c in m.components:
        if isinstance(c, Atom):
            if c.point == p:
                return True
        elif isinstance(c, AtomGroup):
            trivial = all(x.is_integer() for x in p) if m.space == TORUS \
                else vec_is_zero(p)
            if trivial:
                continue  # the zero point is never an atom of an atom group
            if module_member(m.field, m.dim, c, p, m.space):
                return True
    return False
