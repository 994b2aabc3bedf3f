"""Directional ergodicity / weak mixing / strong mixing from symbolic measures.

The decision rules implement the wall characterizations: a direction L fails
ergodicity iff the measure charges the wall perpendicular to L through the
origin, fails weak mixing iff it charges some perpendicular affine wall, and
fails strong mixing iff some component's transform does not decay along L.
On the torus (and for periodized Euclidean classes) walls are tested against
all lattice shifts via exact integer feasibility.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (InvalidDirectionSetError, NotReducedError, ValidationError)
from .linalg import (AffineCarrier, FieldVector, Subspace, as_vector,
                     rationalize_system, solve_integer_affine, solve_mixed_affine,
                     unit_vector, vec_add, vec_is_zero, vec_sub, zero_vector)
from .measure import (EUCLID, TORUS, Atom, AtomGroup, BoxLebesgue, Component,
                      SymbolicMeasure, exp as measure_exp,
                      group_value_coset_nontrivial)
from .scalar import FieldSpec


# ---------------------------------------------------------------------------
# wall tests
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WallWitness:
    component_index: int
    wall: dict
    eigenvalue: FieldVector | None = None
    atom: FieldVector | None = None   # a concrete atom on the wall, when atomic

    def encode(self) -> dict:
        out = {"component": self.component_index, "wall": self.wall}
        if self.eigenvalue is not None:
            out["eigenvalue"] = [x.encode() for x in self.eigenvalue]
        if self.atom is not None:
            out["atom"] = [x.encode() for x in self.atom]
        return out


@dataclass(frozen=True)
class WallTestResult:
    positive: bool
    witnesses: tuple[WallWitness, ...]


def _lattice_shifts_allowed(m: SymbolicMeasure) -> bool:
    return m.space == TORUS or m.periodized


def _on_affine_wall(m: SymbolicMeasure, sub_l: Subspace, point: FieldVector,
                    ell: FieldVector) -> bool:
    """Is ``point`` on L^perp + ell (modulo lattice shifts when applicable)?"""
    diff = vec_sub(point, ell)
    if _lattice_shifts_allowed(m):
        return solve_integer_affine([list(r) for r in sub_l.basis], list(diff)).feasible
    perp = sub_l.orthocomplement()
    return perp.contains(diff)


def _group_meets_wall(m: SymbolicMeasure, comp: AtomGroup, sub_l: Subspace,
                      ell: FieldVector) -> FieldVector | None:
    """A genuine atom of ``comp`` on L^perp + ell (mod Z^d as applicable),
    or None when the wall carries no atom of the group.

    Solve  B_L (offset + sum_i c_i g_i - ell - n) = 0  for coefficients c in
    the coefficient ring and lattice shifts n, then pick a solution whose
    group element  offset + sum c_i g_i  is a genuine (nonzero) atom.  The
    achievable elements form a coset of (Z-module + Q-space); nontriviality
    is decided generator by generator.
    """
    k = len(comp.generators)
    fieldspec = m.field
    shifts = _lattice_shifts_allowed(m)
    target = vec_sub(ell, comp.offset)
    rows_field = []
    rhs_field = []
    for b in sub_l.basis:
        row = []
        for g in comp.generators:
            acc = b[0] * g[0]
            for x, y in zip(b[1:], g[1:]):
                acc = acc + x * y
            row.append(acc)
        if shifts:
            row.extend(-x for x in b)
        acc = b[0] * target[0]
        for x, y in zip(b[1:], target[1:]):
            acc = acc + x * y
        rows_field.append(row)
        rhs_field.append(acc)
    rows, rhs = rationalize_system(rows_field, rhs_field)
    if comp.ring == "Q":
        rat_cols = [r[:k] for r in rows]
        int_cols = [r[k:] for r in rows] if shifts else [[] for _ in rows]
        sol = solve_mixed_affine(rat_cols, int_cols, rhs)
        if sol is None:
            return None
        coeff_part = list(sol.rat_part)
        lattice_coeffs = [list(s) for s in sol.rat_shifts]
        kernel_coeffs = [list(v) for v in sol.rat_kernel]
    else:
        sol = solve_mixed_affine([], [list(r) for r in rows], rhs)
        if sol is None:
            return None
        coeff_part = list(sol.int_part[:k])
        lattice_coeffs = [list(lam[:k]) for lam in sol.int_lattice]
        kernel_coeffs = []

    return group_value_coset_nontrivial(fieldspec, comp, coeff_part,
                                        lattice_coeffs, kernel_coeffs,
                                        lattice_trivial=shifts)


def _component_wall_positive(m: SymbolicMeasure, index: int, comp: Component,
                             sub_l: Subspace, ell: FieldVector
                             ) -> tuple[bool, FieldVector | None]:
    if isinstance(comp, Atom):
        return _on_affine_wall(m, sub_l, comp.point, ell), comp.point
    if isinstance(comp, BoxLebesgue):
        perp = sub_l.orthocomplement()
        if not comp.carrier.subspace.leq(perp):
            return False, None
        return _on_affine_wall(m, sub_l, comp.carrier.offset, ell), None
    witness = _group_meets_wall(m, comp, sub_l, ell)
    return witness is not None, witness


def _wall_descriptor(m: SymbolicMeasure, comp: Component) -> dict:
    doc = comp.encode()
    doc.pop("weight", None)
    return doc


def wall_test(m: SymbolicMeasure, direction: Subspace, ell) -> WallTestResult:
    """Decide whether L^perp + ell (resp. its torus projection) is a wall."""
    if direction.field != m.field or direction.ambient != m.dim:
        raise ValidationError("direction incompatible with the measure")
    ell_vec = as_vector(m.field, ell) if ell is not None \
        else zero_vector(m.field, m.dim)
    if not direction.contains(ell_vec):
        raise ValidationError("the eigenvalue candidate must lie in the direction")
    witnesses = []
    for i, comp in enumerate(m.components):
        positive, atom = _component_wall_positive(m, i, comp, direction, ell_vec)
        if positive:
            witnesses.append(WallWitness(i, _wall_descriptor(m, comp), ell_vec,
                                         atom if not isinstance(comp, BoxLebesgue)
                                         else None))
    return WallTestResult(bool(witnesses), tuple(witnesses))


# ---------------------------------------------------------------------------
# per-direction classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DirectionVerdict:
    direction: Subspace
    ergodic: bool
    weak_mixing: bool
    strong_mixing: bool
    witnesses: tuple[tuple[str, WallWitness], ...]

    def encode(self) -> dict:
        return {"direction": self.direction.encode(),
                "ergodic": self.ergodic,
                "weak_mixing": self.weak_mixing,
                "strong_mixing": self.strong_mixing,
                "witnesses": [{"property": prop, **w.encode()}
                              for prop, w in self.witnesses]}


def classify_direction(m: SymbolicMeasure, direction: Subspace) -> DirectionVerdict:
    """Ergodicity, weak mixing and strong mixing of the class in direction L.

    Ergodic iff the central wall test is negative.  Weak mixing fails exactly
    when some atom/atom-group exists (its projection onto L is a directional
    eigenvalue) or some box carrier is contained in L^perp (the offset is
    absorbable into the eigenvalue).  Strong mixing additionally requires
    every box transform to decay along L, i.e. L cap K^perp = 0.
    """
    if direction.dim < 1:
        raise ValidationError("directions must have dimension >= 1")
    if m.has_delta_zero():
        raise NotReducedError("measure contains delta_0; classify the reduced class")
    ergodic_result = wall_test(m, direction, None)
    witnesses: list[tuple[str, WallWitness]] = []
    for w in ergodic_result.witnesses:
        witnesses.append(("ergodic", w))

    weak = True
    strong = True
    perp = direction.orthocomplement()
    for i, comp in enumerate(m.components):
        if isinstance(comp, Atom):
            ell = direction.project(comp.point)
            witnesses.append(("weak_mixing",
                              WallWitness(i, _wall_descriptor(m, comp), ell)))
            witnesses.append(("strong_mixing",
                              WallWitness(i, _wall_descriptor(m, comp), None)))
            weak = strong = False
        elif isinstance(comp, AtomGroup):
            ell = direction.project(vec_add(comp.offset, comp.generators[0]))
            witnesses.append(("weak_mixing",
                              WallWitness(i, _wall_descriptor(m, comp), ell)))
            witnesses.append(("strong_mixing",
                              WallWitness(i, _wall_descriptor(m, comp), None)))
            weak = strong = False
        else:
            k = comp.carrier.subspace
            if k.leq(perp):
                ell = direction.project(comp.carrier.offset)
                witnesses.append(("weak_mixing",
                                  WallWitness(i, _wall_descriptor(m, comp), ell)))
                weak = False
            if direction.intersect(k.orthocomplement()).dim > 0:
                witnesses.append(("strong_mixing",
                                  WallWitness(i, _wall_descriptor(m, comp), None)))
                strong = False
    return DirectionVerdict(direction, not ergodic_result.positive, weak, strong,
                            tuple(witnesses))


# ---------------------------------------------------------------------------
# concise sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ParametricFamily:
    """Torus family {span(K, offset - n)^perp : n in Z^d} from one component."""

    subspace: Subspace
    offset: FieldVector

    def encode(self) -> dict:
        return {"subspace": self.subspace.encode(),
                "offset": [x.encode() for x in self.offset]}


@dataclass(frozen=True)
class GroupFamily:
    """Directions perpendicular to some atom of an atom group (mod shifts)."""

    generators: tuple[FieldVector, ...]
    ring: str
    offset: FieldVector

    def encode(self) -> dict:
        out = {"generators": [[x.encode() for x in g] for g in self.generators],
               "ring": self.ring}
        if not vec_is_zero(self.offset):
            out["offset"] = [x.encode() for x in self.offset]
        return out


@dataclass(frozen=True)
class ConciseSet:
    space: str
    dim: int
    fieldspec: FieldSpec
    subspaces: tuple[Subspace, ...]
    parametric_families: tuple[ParametricFamily, ...] = ()
    group_families: tuple[GroupFamily, ...] = ()

    def is_empty(self) -> bool:
        return not (self.subspaces or self.parametric_families or self.group_families)

    def contains_direction(self, direction: Subspace) -> bool:
        """Subordination: is L contained in some member of the set?"""
        for s in self.subspaces:
            if direction.leq(s):
                return True
        for fam in self.parametric_families:
            perp = direction.orthocomplement()
            if not fam.subspace.leq(perp):
                continue
            if _on_affine_wall_for(self.space, direction, fam.offset,
                                   zero_vector(self.fieldspec, self.dim)):
                return True
        for fam in self.group_families:
            comp = AtomGroup(fam.generators, fam.ring, fam.offset)
            m = SymbolicMeasure(self.space, self.dim, self.fieldspec, (comp,), False)
            if _group_meets_wall(m, comp, direction,
                                 zero_vector(self.fieldspec, self.dim)):
                return True
        return False

    def enumerate_members(self, bound: int = 3) -> tuple[Subspace, ...]:
        """Explicit members: the listed subspaces plus family members for
        shift/coefficient norms up to ``bound`` (deduplicated, pruned)."""
        members = list(self.subspaces)
        shifts = _int_vectors(self.dim, bound) if self.space == TORUS else [(0,) * self.dim]
        for fam in self.parametric_families:
            for n in shifts:
                shifted = vec_sub(fam.offset,
                                  as_vector(self.fieldspec, [Fraction(x) for x in n]))
                span = Subspace.from_vectors(
                    self.fieldspec, self.dim,
                    list(fam.subspace.basis) + [shifted])
                member = span.orthocomplement()
                if member.dim > 0:
                    members.append(member)
        for fam in self.group_families:
            for atom in _enumerate_group_atoms(self.fieldspec, self.dim, fam, bound):
                for n in shifts:
                    shifted = vec_sub(atom,
                                      as_vector(self.fieldspec,
                                                [Fraction(x) for x in n]))
                    if vec_is_zero(shifted):
                        continue
                    member = Subspace.from_vectors(
                        self.fieldspec, self.dim, [shifted]).orthocomplement()
                    if member.dim > 0:
                        members.append(member)
        return _concise_hull(members)

    def encode(self, bound: int = 3) -> dict:
        return {"subspaces": [s.encode() for s in self.subspaces],
                "parametric_families": [f.encode() for f in self.parametric_families],
                "group_families": [f.encode() for f in self.group_families],
                "enumerated_members": [s.encode()
                                       for s in self.enumerate_members(bound)]}


def _on_affine_wall_for(space: str, sub_l: Subspace, point: FieldVector,
                        ell: FieldVector) -> bool:
    diff = vec_sub(point, ell)
    if space == TORUS:
        return solve_integer_affine([list(r) for r in sub_l.basis], list(diff)).feasible
    return sub_l.orthocomplement().contains(diff)


def _int_vectors(dim: int, bound: int) -> list[tuple[int, ...]]:
    out = [()]
    for _ in range(dim):
        out = [v + (k,) for v in out for k in range(-bound, bound + 1)]
    return out


def _enumerate_group_atoms(fieldspec: FieldSpec, dim: int, fam: GroupFamily,
                           bound: int) -> list[FieldVector]:
    coeffs: list[list[Fraction]]
    if fam.ring == "Z":
        pool = [Fraction(k) for k in range(-bound, bound + 1)]
    else:
        vals = set()
        for p in range(-bound, bound + 1):
            for q in range(1, bound + 1):
                vals.add(Fraction(p, q))
        pool = sorted(vals)
    combos = [[]]
    for _ in fam.generators:
        combos = [c + [x] for c in combos for x in pool]
    out = []
    seen = set()
    for combo in combos:
        v = fam.offset
        for c, g in zip(combo, fam.generators):
            if c:
                v = vec_add(v, tuple(fieldspec.from_rational(c) * x for x in g))
        key = tuple((x.field.roots, x.coeffs) for x in v)
        if key not in seen:
            seen.add(key)
            out.append(v)
    return out


def _concise_hull(members: list[Subspace]) -> tuple[Subspace, ...]:
    """Keep maximal elements only (and deduplicate)."""
    uniq: list[Subspace] = []
    for s in members:
        if s.dim == 0:
            continue
        if any(s == t for t in uniq):
            continue
        uniq.append(s)
    out = []
    for s in uniq:
        if any(s != t and s.leq(t) for t in uniq):
            continue
        out.append(s)
    out.sort(key=lambda s: (s.dim, str(s.encode())))
    return tuple(out)


def nonergodic_concise(m: SymbolicMeasure) -> ConciseSet:
    """The concise set generating all non-ergodic directions by subordination."""
    if m.has_delta_zero():
        raise NotReducedError("measure contains delta_0")
    explicit: list[Subspace] = []
    parametric: list[ParametricFamily] = []
    groups: list[GroupFamily] = []
    shifts = _lattice_shifts_allowed(m)
    for comp in m.components:
        if isinstance(comp, Atom):
            if shifts:
                parametric.append(ParametricFamily(
                    Subspace.zero(m.field, m.dim), comp.point))
            else:
                explicit.append(Subspace.from_vectors(
                    m.field, m.dim, [comp.point]).orthocomplement())
        elif isinstance(comp, BoxLebesgue):
            if comp.carrier.is_linear():
                explicit.append(comp.carrier.subspace.orthocomplement())
            elif shifts:
                parametric.append(ParametricFamily(comp.carrier.subspace,
                                                   comp.carrier.offset))
            else:
                explicit.append(
                    comp.carrier.affine_hull_through_origin().orthocomplement())
        else:
            groups.append(GroupFamily(comp.generators, comp.ring, comp.offset))
    hull = _concise_hull(explicit)
    # drop families all of whose members are subordinate to an explicit member
    kept_param = []
    for fam in parametric:
        if any(s.orthocomplement().leq(fam.subspace) for s in hull):
            continue
        kept_param.append(fam)
    space = TORUS if shifts else EUCLID
    return ConciseSet(space, m.dim, m.field, hull, tuple(kept_param), tuple(groups))


def nonwm_concise(m: SymbolicMeasure) -> ConciseSet:
    """Concise set for non-weak-mixing directions: perps of the carrier
    subspace parts; any atomic component contributes the full space."""
    if m.has_delta_zero():
        raise NotReducedError("measure contains delta_0")
    explicit: list[Subspace] = []
    for comp in m.components:
        if isinstance(comp, (Atom, AtomGroup)):
            explicit.append(Subspace.full(m.field, m.dim))
        else:
            explicit.append(comp.carrier.subspace.orthocomplement())
    space = TORUS if _lattice_shifts_allowed(m) else EUCLID
    return ConciseSet(space, m.dim, m.field, _concise_hull(explicit))


# ---------------------------------------------------------------------------
# eigenvalues
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpectrumReport:
    atoms: tuple[FieldVector, ...]
    groups: tuple[AtomGroup, ...]

    def encode(self) -> dict:
        return {"atoms": [[x.encode() for x in a] for a in self.atoms],
                "groups": [{k: v for k, v in g.encode().items() if k != "weight"}
                           for g in self.groups]}


def eigenvalues(m: SymbolicMeasure) -> SpectrumReport:
    atoms = tuple(c.point for c in m.components if isinstance(c, Atom))
    groups = tuple(c for c in m.components if isinstance(c, AtomGroup))
    return SpectrumReport(atoms, groups)


@dataclass(frozen=True)
class EigenvalueFamily:
    """Directional eigenvalues contributed by one component, in closed form:
    base + projection of the shift lattice (+ projected group module)."""

    component_index: int
    base: FieldVector
    lattice_images: tuple[FieldVector, ...] = ()
    group_generators: tuple[FieldVector, ...] = ()
    group_ring: str | None = None

    def encode(self) -> dict:
        out = {"component": self.component_index,
               "base": [x.encode() for x in self.base]}
        if self.lattice_images:
            out["lattice_images"] = [[x.encode() for x in v]
                                     for v in self.lattice_images]
        if self.group_generators:
            out["group_generators"] = [[x.encode() for x in v]
                                       for v in self.group_generators]
            out["group_ring"] = self.group_ring
        return out


def directional_eigenvalues(m: SymbolicMeasure,
                            direction: Subspace) -> tuple[EigenvalueFamily, ...]:
    """All directional eigenvalue families for L: one per component whose
    carrier subspace sits inside L^perp."""
    perp = direction.orthocomplement()
    shifts = _lattice_shifts_allowed(m)
    lattice_images: tuple[FieldVector, ...] = ()
    if shifts:
        images = []
        for j in range(m.dim):
            img = direction.project(unit_vector(m.field, m.dim, j))
            if not vec_is_zero(img):
                images.append(img)
        lattice_images = tuple(images)
    out = []
    for i, comp in enumerate(m.components):
        if isinstance(comp, Atom):
            out.append(EigenvalueFamily(i, direction.project(comp.point),
                                        lattice_images))
        elif isinstance(comp, AtomGroup):
            out.append(EigenvalueFamily(
                i, direction.project(comp.offset), lattice_images,
                tuple(direction.project(g) for g in comp.generators), comp.ring))
        else:
            if comp.carrier.subspace.leq(perp):
                out.append(EigenvalueFamily(
                    i, direction.project(comp.carrier.offset), lattice_images))
    return tuple(out)


# ---------------------------------------------------------------------------
# realization
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RealizationReport:
    measure: SymbolicMeasure
    requested: tuple[Subspace, ...]
    realized_nonergodic: ConciseSet
    realized_nonwm: ConciseSet
    carrier_closure: tuple[Subspace, ...]
    verified: bool
    warnings: tuple[str, ...]

    def encode(self) -> dict:
        return {"measure": self.measure.encode(),
                "requested": [s.encode() for s in self.requested],
                "nonergodic": self.realized_nonergodic.encode(),
                "nonwm": self.realized_nonwm.encode(),
                "carrier_closure": [s.encode() for s in self.carrier_closure],
                "verified": self.verified,
                "warnings": list(self.warnings)}


def realize(directions: list[Subspace], cap: int = 4096) -> RealizationReport:
    """Build a weak mixing spectral class whose non-ergodic and non-weak-mixing
    concise sets equal the prescribed finite family.

    The class is the convolution exponential of the sum of Lebesgue classes
    on the perpendicular subspaces, minus the unit mass at the origin.
    """
    if not directions:
        raise InvalidDirectionSetError("empty direction family")
    fieldspec = directions[0].field
    dim = directions[0].ambient
    warnings: list[str] = []
    for s in directions:
        if s.field != fieldspec or s.ambient != dim:
            raise ValidationError("directions must share field and ambient dimension")
        if s.dim == 0:
            raise InvalidDirectionSetError("the zero subspace is not a direction")
    pruned = _concise_hull(list(directions))
    if len(pruned) != len(directions):
        warnings.append("input family was not concise; pruned to maximal members")
    if any(s.is_full() for s in pruned):
        raise InvalidDirectionSetError(
            "the full space cannot be realized: its perpendicular carrier is {0}, "
            "which yields an atom at the origin")
    boxes = []
    for s in pruned:
        k = s.orthocomplement()
        boxes.append(BoxLebesgue(AffineCarrier.make(k), k.basis, weight=Fraction(1)))
    sigma = SymbolicMeasure.make(EUCLID, dim, fieldspec, boxes)
    closure = measure_exp(sigma, cap=cap)
    reduced_comps = [c for c in closure.components
                     if not (isinstance(c, Atom) and vec_is_zero(c.point))]
    reduced = SymbolicMeasure.make(EUCLID, dim, fieldspec, reduced_comps)
    ne = nonergodic_concise(reduced)
    nw = nonwm_concise(reduced)
    requested = tuple(sorted(pruned, key=lambda s: (s.dim, str(s.encode()))))
    verified = (ne.subspaces == requested == nw.subspaces
                and not ne.parametric_families and not ne.group_families)
    carriers = tuple(sorted(
        (c.carrier.subspace for c in reduced.components if isinstance(c, BoxLebesgue)),
        key=lambda s: (s.dim, str(s.encode()))))
    return RealizationReport(reduced, requested, ne, nw, carriers, verified,
                             tuple(warnings))


# ---------------------------------------------------------------------------
# admissibility lints
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LintWarning:
    code: str
    message: str

    def encode(self) -> dict:
        return {"code": self.code, "message": self.message}


def admissibility_lint(m: SymbolicMeasure) -> list[LintWarning]:
    """Checks that the class could be a reduced spectral measure of an ergodic
    (resp. weak mixing) action; failures are warnings, never errors.

    (a) the plain-atom set must be closed under the group law (sums and
        negations that do not hit the identity must be atoms);
    (b) translating by any eigenvalue must preserve the class -- checked for
        atom points and group generators, and only once (a) holds, since a
        non-closed atom set already fails symmetry for a trivial reason;
    (c) for atom-free measures, no carrier-perpendicular direction may be
        ergodic yet non weak mixing (ergodicity and weak mixing coincide for
        weak mixing actions).
    """
    from .measure import atom_points, has_atom_at, translate

    warnings: list[LintWarning] = []
    atoms = atom_points(m)
    closure_ok = True
    if atoms:
        candidates = [vec_add(a, b) for a in atoms for b in atoms]
        candidates += [vec_sub(zero_vector(m.field, m.dim), a) for a in atoms]
        for cand in candidates:
            point = cand
            trivial = all(x.is_integer() for x in point) if _lattice_shifts_allowed(m) \
                else vec_is_zero(point)
            if trivial:
                continue
            if not has_atom_at(m, point):
                closure_ok = False
                warnings.append(LintWarning(
                    "atom_closure",
                    f"atom set is not closed under the group law: missing {point}"))
                break
    if closure_ok:
        gammas = list(atoms)
        for comp in m.components:
            if isinstance(comp, AtomGroup):
                gammas.extend(comp.generators)
        # symmetry holds for the full spectral class, delta_0 included:
        # translating by gamma trades mass between 0 and -gamma
        full = m.replace_components(
            list(m.components) + [Atom(zero_vector(m.field, m.dim))])
        for gamma in gammas:
            if not translate(full, gamma).same_class(full):
                warnings.append(LintWarning(
                    "translation_symmetry",
                    f"translation by eigenvalue {gamma} does not preserve the class"))
                break
    if not atoms and not any(isinstance(c, AtomGroup) for c in m.components):
        for comp in m.components:
            if not isinstance(comp, BoxLebesgue):
                continue
            k = comp.carrier.subspace
            if k.dim == 0 or k.is_full():
                continue
            direction = k.orthocomplement()
            verdict = classify_direction(m, direction)
            if verdict.ergodic and not verdict.weak_mixing:
                warnings.append(LintWarning(
                    "ergodic_not_weak_mixing",
                    f"direction {direction} is ergodic but not weak mixing; "
                    "no weak mixing action has such a reduced spectral measure"))
    return warnings


# ---------------------------------------------------------------------------
# subgroup-restriction consistency helpers
# ---------------------------------------------------------------------------


def restriction_consistent(m: SymbolicMeasure, direction: Subspace) -> bool | None:
    """For a completely rational L, compare the direction verdict against the
    subgroup push-forward: ergodic iff the restricted class has no atom at 0,
    weak mixing iff it has no atoms at all.  Returns None when L is not
    completely rational (no subgroup to restrict to)."""
    from .linalg import rationality
    from .measure import has_atom_at, pushforward_subgroup

    if m.space != TORUS:
        raise ValidationError("restriction consistency applies to torus measures")
    rep = rationality(direction)
    if rep.kind != "completely_rational" or rep.lattice.is_trivial():
        return None
    pushed, _ = pushforward_subgroup(m, rep.lattice)
    verdict = classify_direction(m, direction)
    erg_expected = not has_atom_at(pushed, zero_vector(m.field, pushed.dim))
    wm_expected = not _has_any_atom(pushed)
    return verdict.ergodic == erg_expected and verdict.weak_mixing == wm_expected


def _has_any_atom(m: SymbolicMeasure) -> bool:
    return any(isinstance(c, (Atom, AtomGroup)) for c in m.components)
