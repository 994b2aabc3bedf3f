"""Seeded random generators shared by the property-test suites."""
from __future__ import annotations

import random
from fractions import Fraction

from dirspec.linalg import AffineCarrier, Subspace, zero_vector
from dirspec.measure import Atom, AtomGroup, BoxLebesgue, SymbolicMeasure
from dirspec.scalar import FieldScalar, FieldSpec, QQ

FIELDS = [QQ, FieldSpec((2,)), FieldSpec((2, 3)), FieldSpec((5,))]


def rand_fraction(rng: random.Random, max_num: int = 5, max_den: int = 4,
                  nonzero: bool = False) -> Fraction:
    while True:
        f = Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den))
        if f or not nonzero:
            return f


def rand_scalar(rng: random.Random, field: FieldSpec, irrational_p: float = 0.3,
                nonzero: bool = False) -> FieldScalar:
    while True:
        coeffs = [rand_fraction(rng, 3, 3)]
        for _ in range(field.dimension - 1):
            coeffs.append(rand_fraction(rng, 2, 2)
                          if rng.random() < irrational_p else Fraction(0))
        s = field.from_coeffs(coeffs)
        if not (nonzero and s.is_zero()):
            return s


def rand_vector(rng: random.Random, field: FieldSpec, dim: int,
                irrational_p: float = 0.3):
    return tuple(rand_scalar(rng, field, irrational_p) for _ in range(dim))


def rand_subspace(rng: random.Random, field: FieldSpec, dim: int,
                  target_dim: int | None = None,
                  irrational_p: float = 0.3) -> Subspace:
    """Random nonzero proper-or-full subspace (canonical form)."""
    while True:
        k = target_dim or rng.randint(1, dim)
        vectors = [rand_vector(rng, field, dim, irrational_p) for _ in range(k)]
        sub = Subspace.from_vectors(field, dim, vectors)
        if sub.dim >= 1 and (target_dim is None or sub.dim == target_dim):
            return sub


def rand_rational_subspace(rng: random.Random, field: FieldSpec, dim: int,
                           target_dim: int) -> Subspace:
    while True:
        vectors = [[Fraction(rng.randint(-4, 4)) for _ in range(dim)]
                   for _ in range(target_dim)]
        sub = Subspace.from_vectors(field, dim, vectors)
        if sub.dim == target_dim:
            return sub


def rand_atom(rng: random.Random, field: FieldSpec, dim: int,
              avoid_delta_zero: bool = True) -> Atom:
    while True:
        point = rand_vector(rng, field, dim, irrational_p=0.2)
        if not avoid_delta_zero or not all(x.is_rational()
                                           and x.as_rational().denominator == 1
                                           for x in point):
            return Atom(point, Fraction(rng.randint(1, 3)))


def rand_box(rng: random.Random, field: FieldSpec, dim: int,
             irrational_p: float = 0.2) -> BoxLebesgue:
    sub = rand_subspace(rng, field, dim, irrational_p=irrational_p)
    offset = rand_vector(rng, field, dim, irrational_p=irrational_p) \
        if rng.random() < 0.5 else zero_vector(field, dim)
    return BoxLebesgue(AffineCarrier.make(sub, offset), sub.basis,
                       weight=Fraction(rng.randint(1, 3)))


def rand_atom_group(rng: random.Random, field: FieldSpec, dim: int) -> AtomGroup:
    ring = rng.choice(["Z", "Q"])
    n = rng.randint(1, 2)
    gens = []
    for _ in range(n):
        gens.append(rand_vector(rng, field, dim, irrational_p=0.4))
    return AtomGroup(tuple(gens), ring, zero_vector(field, dim))


def rand_measure(rng: random.Random, field: FieldSpec, dim: int, space: str,
                 max_components: int = 3, with_groups: bool = False,
                 reduced: bool = True) -> SymbolicMeasure:
    while True:
        comps = []
        for _ in range(rng.randint(1, max_components)):
            roll = rng.random()
            if with_groups and roll < 0.2:
                comps.append(rand_atom_group(rng, field, dim))
            elif roll < 0.5:
                comps.append(rand_atom(rng, field, dim,
                                       avoid_delta_zero=reduced))
            else:
                comps.append(rand_box(rng, field, dim))
        try:
            m = SymbolicMeasure.make(space, dim, field, comps)
        except Exception:
            continue
        if m.is_zero():
            continue
        if reduced and m.has_delta_zero():
            continue
        return m


def rand_concise_family(rng: random.Random, dim: int,
                        count: int) -> list[Subspace] | None:
    """Random concise family of proper nonzero rational subspaces, or None
    if the draw was not concise as-is."""
    subs = []
    for _ in range(count):
        k = rng.randint(1, dim - 1)
        subs.append(rand_rational_subspace(rng, QQ, dim, k))
    for i, a in enumerate(subs):
        for j, b in enumerate(subs):
            if i != j and a.leq(b):
                return None
    return subs
