"""Concrete action models with exact correlation functions.

Each model documents a finite family of observables; for every observable
the exact spectral measure is known in closed form, so the symbolic measure
algebra and the numerical transform can be cross-checked against dynamics:
ft(observable measure, n) must reproduce the correlation (U^n f, f) on
integer grids to machine precision.

Correlations follow (U^n f, f); with the transform convention
ft(sigma, t) = integral e^{-2 pi i a.t} d sigma, the single-observable
measure of an eigenfunction with eigenvalue gamma is the point mass at
-gamma.  Expected (maximal-type) measures are symmetric under negation, so
they carry atoms at the eigenvalues themselves.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product as iproduct

import numpy as np

from .errors import UnsupportedConvolutionError, ValidationError
from .linalg import (AffineCarrier, FieldVector, Subspace, as_vector,
                     unit_vector, vec_mod1, vec_scale, zero_vector)
from .measure import (TORUS, Atom, AtomGroup, BoxLebesgue, SymbolicMeasure)
from .scalar import FieldScalar, FieldSpec, QQ, decode_scalar


# ---------------------------------------------------------------------------
# model types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Bernoulli:
    """Base Z-action: Bernoulli shift, observed through a mean-zero
    norm-one cylinder function at coordinate 0."""

    def encode(self) -> dict:
        return {"kind": "bernoulli"}


@dataclass(frozen=True)
class Rotation1:
    """Base Z-action: circle rotation by ``alpha``."""

    alpha: FieldScalar

    def encode(self) -> dict:
        return {"kind": "rotation1", "alpha": self.alpha.encode()}


@dataclass(frozen=True)
class Rotation:
    """Z^d-action generated by d commuting rotations of one circle."""

    alphas: FieldVector

    @property
    def dim(self) -> int:
        return len(self.alphas)

    @property
    def field(self) -> FieldSpec:
        return self.alphas[0].field

    def encode(self) -> dict:
        return {"kind": "rotation", "alphas": [a.encode() for a in self.alphas],
                "field_roots": list(self.field.roots)}


@dataclass(frozen=True)
class ProductType:
    """Product Z^d-action of d base Z-actions, acting coordinate-wise."""

    factors: tuple[Bernoulli | Rotation1, ...]

    @property
    def dim(self) -> int:
        return len(self.factors)

    @property
    def field(self) -> FieldSpec:
        for f in self.factors:
            if isinstance(f, Rotation1):
                return f.alpha.field
        return QQ

    def encode(self) -> dict:
        return {"kind": "product_type",
                "factors": [f.encode() for f in self.factors],
                "field_roots": list(self.field.roots)}


@dataclass(frozen=True)
class BergelsonWard:
    """Infinite product of one Bernoulli base along integer frequency
    vectors m_i: factor i moves by n.m_i, so it freezes when n is
    perpendicular to m_i."""

    vectors: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for v in self.vectors:
            if all(x == 0 for x in v):
                raise ValidationError("frequency vectors must be nonzero")
        for a, b in combinations(self.vectors, 2):
            # pairwise non-parallel: all 2x2 minors of the pair vanish iff parallel
            if all(a[i] * b[j] - a[j] * b[i] == 0
                   for i in range(len(a)) for j in range(i + 1, len(a))):
                raise ValidationError(f"frequency vectors {a}, {b} are parallel")

    @property
    def dim(self) -> int:
        return len(self.vectors[0])

    @property
    def field(self) -> FieldSpec:
        return QQ

    def encode(self) -> dict:
        return {"kind": "bergelson_ward", "vectors": [list(v) for v in self.vectors]}


@dataclass(frozen=True)
class OdometerEigen:
    """Finite-level stand-in for a d-dimensional q-odometer: its point
    spectrum up to level J in every coordinate."""

    q: int
    level: int
    dim_ambient: int

    @property
    def dim(self) -> int:
        return self.dim_ambient

    @property
    def field(self) -> FieldSpec:
        return QQ

    def encode(self) -> dict:
        return {"kind": "odometer", "q": self.q, "level": self.level,
                "dim": self.dim_ambient}


ActionModel = Rotation | ProductType | BergelsonWard | OdometerEigen


def decode_model(doc: dict) -> ActionModel:
    kind = doc.get("kind")
    field = FieldSpec(tuple(doc.get("field_roots", ())))
    if kind == "rotation":
        return Rotation(tuple(decode_scalar(field, a) for a in doc["alphas"]))
    if kind == "product_type":
        factors = []
        for f in doc["factors"]:
            if f["kind"] == "bernoulli":
                factors.append(Bernoulli())
            elif f["kind"] == "rotation1":
                factors.append(Rotation1(decode_scalar(field, f["alpha"])))
            else:
                raise ValidationError(f"unknown base model {f['kind']!r}")
        return ProductType(tuple(factors))
    if kind == "bergelson_ward":
        return BergelsonWard(tuple(tuple(int(x) for x in v) for v in doc["vectors"]))
    if kind == "odometer":
        return OdometerEigen(int(doc["q"]), int(doc["level"]), int(doc["dim"]))
    raise ValidationError(f"unknown model kind {kind!r}")


# ---------------------------------------------------------------------------
# observables and correlations
# ---------------------------------------------------------------------------


def observables(model: ActionModel) -> list[str]:
    """The documented finite observable family of a model."""
    if isinstance(model, Rotation):
        return [f"exp{k}" for k in (1, 2, 3)]
    if isinstance(model, ProductType):
        ids = []
        for r in range(1, model.dim + 1):
            for subset in combinations(range(1, model.dim + 1), r):
                ids.append("factors:" + ",".join(map(str, subset)))
        return ids
    if isinstance(model, BergelsonWard):
        ids = [f"factor:{i + 1}" for i in range(len(model.vectors))]
        ids += [f"pair:{i + 1},{j + 1}"
                for i, j in combinations(range(len(model.vectors)), 2)]
        return ids
    levels = range(model.level + 1)
    return ["level:" + ",".join(map(str, combo))
            for combo in iproduct(levels, repeat=model.dim)
            if any(combo)]


def _phase(theta: float) -> complex:
    return cmath.exp(2j * cmath.pi * theta)


def correlation(model: ActionModel, n, observable: str) -> complex:
    """(U^n f, f) for the documented observable f."""
    n = tuple(int(x) for x in n)
    if len(n) != model.dim:
        raise ValidationError("lattice point has wrong dimension")
    if isinstance(model, Rotation):
        k = _rotation_harmonic(model, observable)
        theta = sum(float(a) * ni for a, ni in zip(model.alphas, n))
        return _phase(k * theta)
    if isinstance(model, ProductType):
        subset = _product_subset(model, observable)
        out = complex(1.0)
        for i in subset:
            f = model.factors[i]
            if isinstance(f, Bernoulli):
                if n[i] != 0:
                    return complex(0.0)
            else:
                out *= _phase(float(f.alpha) * n[i])
        return out
    if isinstance(model, BergelsonWard):
        idxs = _bw_indices(model, observable)
        for i in idxs:
            if sum(m * ni for m, ni in zip(model.vectors[i], n)) != 0:
                return complex(0.0)
        return complex(1.0)
    levels = _odometer_levels(model, observable)
    theta = sum(Fraction(ni, model.q ** j) for ni, j in zip(n, levels) if j)
    return _phase(float(theta % 1))


def _rotation_harmonic(model: Rotation, observable: str) -> int:
    if not observable.startswith("exp"):
        raise ValidationError(f"unknown observable {observable!r}")
    try:
        return int(observable[3:])
    except ValueError as exc:
        raise ValidationError(f"unknown observable {observable!r}") from exc


def _product_subset(model: ProductType, observable: str) -> list[int]:
    if not observable.startswith("factors:"):
        raise ValidationError(f"unknown observable {observable!r}")
    idxs = [int(s) - 1 for s in observable.split(":", 1)[1].split(",")]
    if not idxs or any(i < 0 or i >= model.dim for i in idxs):
        raise ValidationError(f"unknown observable {observable!r}")
    return idxs


def _bw_indices(model: BergelsonWard, observable: str) -> list[int]:
    head, _, rest = observable.partition(":")
    if head not in ("factor", "pair"):
        raise ValidationError(f"unknown observable {observable!r}")
    idxs = [int(s) - 1 for s in rest.split(",")]
    if any(i < 0 or i >= len(model.vectors) for i in idxs):
        raise ValidationError(f"unknown observable {observable!r}")
    if head == "factor" and len(idxs) != 1 or head == "pair" and len(idxs) != 2:
        raise ValidationError(f"unknown observable {observable!r}")
    return idxs


def _odometer_levels(model: OdometerEigen, observable: str) -> tuple[int, ...]:
    if not observable.startswith("level:"):
        raise ValidationError(f"unknown observable {observable!r}")
    levels = tuple(int(s) for s in observable.split(":", 1)[1].split(","))
    if len(levels) != model.dim or any(j < 0 or j > model.level for j in levels) \
            or not any(levels):
        raise ValidationError(f"unknown observable {observable!r}")
    return levels


# ---------------------------------------------------------------------------
# expected and per-observable spectral measures
# ---------------------------------------------------------------------------


def observable_measure(model: ActionModel, observable: str) -> SymbolicMeasure:
    """Exact spectral measure of one observable (ft of it equals the
    correlation on Z^d)."""
    field = model.field
    d = model.dim
    if isinstance(model, Rotation):
        k = _rotation_harmonic(model, observable)
        point = vec_mod1(vec_scale(field.from_rational(-k), model.alphas))
        return SymbolicMeasure.make(TORUS, d, field, [Atom(point)])
    if isinstance(model, ProductType):
        subset = _product_subset(model, observable)
        box_coords = [i for i in subset if isinstance(model.factors[i], Bernoulli)]
        rot_coords = [i for i in subset if isinstance(model.factors[i], Rotation1)]
        shift = zero_vector(field, d)
        for i in rot_coords:
            alpha = model.factors[i].alpha
            shift = tuple(x - alpha if j == i else x for j, x in enumerate(shift))
        if not box_coords:
            return SymbolicMeasure.make(TORUS, d, field, [Atom(vec_mod1(shift))])
        sub = Subspace.from_vectors(field, d,
                                    [unit_vector(field, d, i) for i in box_coords])
        comp = BoxLebesgue(AffineCarrier.make(sub, shift), sub.basis,
                           center=vec_mod1(shift))
        return SymbolicMeasure.make(TORUS, d, field, [comp])
    if isinstance(model, BergelsonWard):
        idxs = _bw_indices(model, observable)
        gens = [as_vector(field, model.vectors[i]) for i in idxs]
        sub = Subspace.from_vectors(field, d, gens)
        comp = BoxLebesgue(AffineCarrier.make(sub), tuple(gens))
        return SymbolicMeasure.make(TORUS, d, field, [comp])
    levels = _odometer_levels(model, observable)
    point = vec_mod1(as_vector(
        field, [-Fraction(1, model.q ** j) if j else Fraction(0) for j in levels]))
    return SymbolicMeasure.make(TORUS, model.dim, field, [Atom(point)])


def expected_measure(model: ActionModel) -> SymbolicMeasure:
    """The model's reduced spectral class (maximal spectral type off the
    constants), at the resolution the component algebra can express."""
    field = model.field
    d = model.dim
    if isinstance(model, Rotation):
        return SymbolicMeasure.make(
            TORUS, d, field,
            [AtomGroup((model.alphas,), "Z", zero_vector(field, d))])
    if isinstance(model, ProductType):
        kinds = {type(f) for f in model.factors}
        if kinds == {Bernoulli}:
            comps = []
            for r in range(1, d + 1):
                for subset in combinations(range(d), r):
                    sub = Subspace.from_vectors(
                        field, d, [unit_vector(field, d, i) for i in subset])
                    comps.append(BoxLebesgue(AffineCarrier.make(sub), sub.basis))
            return SymbolicMeasure.make(TORUS, d, field, comps)
        if kinds == {Rotation1}:
            gens = tuple(vec_scale(f.alpha, unit_vector(field, d, i))
                         for i, f in enumerate(model.factors))
            return SymbolicMeasure.make(
                TORUS, d, field, [AtomGroup(gens, "Z", zero_vector(field, d))])
        raise UnsupportedConvolutionError(
            "mixed Bernoulli/rotation product measures need atom-group * box "
            "components, which have no finite carrier description")
    if isinstance(model, BergelsonWard):
        comps = []
        for v in model.vectors:
            gen = as_vector(field, v)
            sub = Subspace.from_vectors(field, d, [gen])
            comps.append(BoxLebesgue(AffineCarrier.make(sub), (gen,)))
        # convolution closure truncated at pairwise sums (depth 2)
        for (i, vi), (j, vj) in combinations(enumerate(model.vectors), 2):
            sub = Subspace.from_vectors(field, d, [vi, vj])
            comps.append(BoxLebesgue(AffineCarrier.make(sub), sub.basis))
        return SymbolicMeasure.make(TORUS, d, field, comps)
    atoms = []
    denom = model.q ** model.level
    for combo in iproduct(range(denom), repeat=model.dim):
        if not any(combo):
            continue
        atoms.append(Atom(as_vector(field, [Fraction(k, denom) for k in combo])))
    return SymbolicMeasure.make(TORUS, model.dim, field, atoms)


# ---------------------------------------------------------------------------
# cross checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CrosscheckReport:
    passed: bool
    bound: int
    tolerance: float
    max_error: float
    failures: tuple[tuple[str, tuple[int, ...], float], ...]

    def encode(self) -> dict:
        return {"passed": self.passed, "bound": self.bound,
                "tolerance": self.tolerance, "max_error": self.max_error,
                "failures": [{"observable": o, "n": list(n), "error": e}
                             for o, n, e in self.failures]}


def crosscheck(model: ActionModel, bound: int = 10,
               tol: float = 1e-12) -> CrosscheckReport:
    """Assert ft(observable measure, n) == correlation(n) on |n|_inf <= bound."""
    from .fourier import ft_batch

    d = model.dim
    grid = np.array(list(iproduct(range(-bound, bound + 1), repeat=d)), dtype=float)
    max_err = 0.0
    failures = []
    for obs in observables(model):
        sigma = observable_measure(model, obs)
        vals = ft_batch(sigma, grid)
        for row, v in zip(grid, vals):
            c = correlation(model, tuple(int(x) for x in row), obs)
            err = abs(v - c)
            if err > max_err:
                max_err = err
            if err >= tol:
                failures.append((obs, tuple(int(x) for x in row), float(err)))
    return CrosscheckReport(not failures, bound, tol, float(max_err),
                            tuple(failures[:32]))


def gram_min_eigenvalue(model: ActionModel, observable: str,
                        points: list[tuple[int, ...]]) -> float:
    """Minimum eigenvalue of the correlation Gram matrix at the given lattice
    points (positive definiteness check)."""
    g = np.array([[correlation(model,
                               tuple(p - q for p, q in zip(np_, nq)), observable)
                   for nq in points] for np_ in points])
    return float(np.linalg.eigvalsh((g + g.conj().T) / 2).min())
