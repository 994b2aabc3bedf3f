"""Exact arithmetic in real quadratic-radical fields Q(sqrt(m1), ..., sqrt(mk)).

A field is described by a tuple of square-free, pairwise coprime integers
``m1 < m2 < ... < mk`` (all >= 2).  Elements are stored as vectors of 2^k
rationals over the multiplicative basis ``{prod_{i in S} sqrt(m_i) : S subset}``,
indexed by bitmask (index 0 is the rational unit 1).  The only predicates the
rest of the toolkit needs are exact equality with zero and field arithmetic;
no total ordering is exposed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from .errors import FieldMismatchError, ValidationError

RationalLike = int | Fraction

# mpmath working precision (decimal digits) for floor/embedding fallbacks.
_MP_DPS = 60


def _is_square_free(m: int) -> bool:
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % (d * d) == 0:
            return False
        if m % d == 0:
            m //= d
        d += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The real field Q(sqrt(m) for m in roots); roots = () is plain Q."""

    roots: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        roots = tuple(self.roots)
        if list(roots) != sorted(set(roots)):
            raise ValidationError(f"roots must be sorted and distinct: {roots}")
        for m in roots:
            if not _is_square_free(m):
                raise ValidationError(f"root {m} is not square-free or is < 2")
        for i, a in enumerate(roots):
            for b in roots[i + 1:]:
                if math.gcd(a, b) != 1:
                    raise ValidationError(f"roots {a}, {b} are not coprime")
        object.__setattr__(self, "roots", roots)

    @property
    def dimension(self) -> int:
        return 1 << len(self.roots)

    def basis_radicand(self, index: int) -> int:
        """Product of the roots selected by the bitmask ``index``."""
        out = 1
        for i, m in enumerate(self.roots):
            if index >> i & 1:
                out *= m
        return out

    def basis_label(self, index: int) -> str:
        rad = self.basis_radicand(index)
        return "1" if rad == 1 else f"sqrt{rad}"

    def label_index(self, label: str) -> int:
        for j in range(self.dimension):
            if self.basis_label(j) == label:
                return j
        raise ValidationError(f"unknown basis label {label!r} for field {self.roots}")

    def basis_floats(self) -> tuple[float, ...]:
        return _basis_floats(self.roots)

    def zero(self) -> FieldScalar:
        return self.from_rational(0)

    def one(self) -> FieldScalar:
        return self.from_rational(1)

    def from_rational(self, value: RationalLike) -> FieldScalar:
        coeffs = [Fraction(0)] * self.dimension
        coeffs[0] = Fraction(value)
        return FieldScalar(self, tuple(coeffs))

    def sqrt_root(self, m: int) -> FieldScalar:
        """The element sqrt(m) for one of the declared roots."""
        if m not in self.roots:
            raise ValidationError(f"{m} is not a root of field {self.roots}")
        coeffs = [Fraction(0)] * self.dimension
        coeffs[1 << self.roots.index(m)] = Fraction(1)
        return FieldScalar(self, tuple(coeffs))

    def from_coeffs(self, coeffs) -> FieldScalar:
        vals = tuple(Fraction(c) for c in coeffs)
        if len(vals) != self.dimension:
            raise ValidationError(
                f"expected {self.dimension} coefficients, got {len(vals)}")
        return FieldScalar(self, vals)


@lru_cache(maxsize=None)
def _basis_floats(roots: tuple[int, ...]) -> tuple[float, ...]:
    dim = 1 << len(roots)
    out = []
    for j in range(dim):
        v = 1.0
        for i, m in enumerate(roots):
            if j >> i & 1:
                v *= math.sqrt(m)
        out.append(v)
    return tuple(out)


@lru_cache(maxsize=None)
def _basis_mpf(roots: tuple[int, ...]):
    with mpmath.workdps(_MP_DPS):
        dim = 1 << len(roots)
        out = []
        for j in range(dim):
            v = mpmath.mpf(1)
            for i, m in enumerate(roots):
                if j >> i & 1:
                    v *= mpmath.sqrt(m)
            out.append(v)
    return tuple(out)


class FieldScalar:
    """Immutable element of a FieldSpec; behaves like a number.

    Supports +, -, *, / with other scalars of the same field and with plain
    ints/Fractions (coerced).  Equality and hashing are exact.  There is
    deliberately no __lt__: downstream algorithms only use is_zero.
    """

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: FieldSpec, coeffs: tuple[Fraction, ...]):
        if len(coeffs) != field.dimension:
            raise ValidationError("coefficient vector has wrong length")
        self.field = field
        self.coeffs = coeffs
        self._hash = None

    # -- construction helpers ------------------------------------------------

    def _coerce(self, other) -> "FieldScalar":
        if isinstance(other, FieldScalar):
            if other.field != self.field:
                raise FieldMismatchError(
                    f"cannot mix fields {self.field.roots} and {other.field.roots}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return NotImplemented  # type: ignore[return-value]

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValidationError(f"{self} is not rational")
        return self.coeffs[0]

    def is_integer(self) -> bool:
        return self.is_rational() and self.coeffs[0].denominator == 1

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldScalar(self.field,
                           tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return FieldScalar(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        n = self.field.dimension
        out = [Fraction(0)] * n
        roots = self.field.roots
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                if b == 0:
                    continue
                # sqrt-basis product: shared radicals square to their radicand
                k = i ^ j
                c = a * b
                shared = i & j
                for bit, m in enumerate(roots):
                    if shared >> bit & 1:
                        c *= m
                out[k] += c
        return FieldScalar(self.field, tuple(out))

    __rmul__ = __mul__

    def invert(self) -> "FieldScalar":
        """Multiplicative inverse via the regular-representation linear system."""
        if self.is_zero():
            raise ZeroDivisionError("cannot invert zero field element")
        n = self.field.dimension
        if self.is_rational():
            return self.field.from_rational(1 / self.coeffs[0])
        # columns: self * basis_j expressed over the basis
        cols = []
        for j in range(n):
            unit = [Fraction(0)] * n
            unit[j] = Fraction(1)
            cols.append((self * FieldScalar(self.field, tuple(unit))).coeffs)
        # solve sum_j x_j * cols[j] = e_0 by Gaussian elimination
        aug = [[cols[j][i] for j in range(n)] + [Fraction(1 if i == 0 else 0)]
               for i in range(n)]
        for col in range(n):
            piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
            if piv is None:
                raise ZeroDivisionError("regular representation is singular")
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = 1 / aug[col][col]
            aug[col] = [v * inv for v in aug[col]]
            for r in range(n):
                if r != col and aug[r][col] != 0:
                    f = aug[r][col]
                    aug[r] = [v - f * w for v, w in zip(aug[r], aug[col])]
        return FieldScalar(self.field, tuple(aug[i][n] for i in range(n)))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.invert()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.invert()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.invert() ** (-exponent)
        out = self.field.one()
        base = self
        e = exponent
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # -- equality / hashing ---------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, FieldScalar):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.roots, self.coeffs))
        return self._hash

    # -- numeric embedding -----------------------------------------------------

    def __float__(self) -> float:
        basis = self.field.basis_floats()
        return float(sum(float(c) * b for c, b in zip(self.coeffs, basis)))

    def mpf(self):
        basis = _basis_mpf(self.field.roots)
        with mpmath.workdps(_MP_DPS):
            return mpmath.fsum(mpmath.mpf(c.numerator) / c.denominator * b
                               for c, b in zip(self.coeffs, basis) if c != 0)

    def floor(self) -> int:
        """Integer floor of the real embedding.

        Exact for rational elements.  For irrational elements the floor is
        determined from a 60-digit evaluation; inputs within 1e-40 of an
        integer without being one are outside the supported regime.
        """
        if self.is_rational():
            return self.coeffs[0].numerator // self.coeffs[0].denominator
        with mpmath.workdps(_MP_DPS):
            return int(mpmath.floor(self.mpf()))

    def frac(self) -> "FieldScalar":
        """Fractional part, in [0, 1): self - floor(self)."""
        return self - self.floor()

    # -- text encoding -----------------------------------------------------------

    def encode(self):
        """Canonical JSON value: plain fraction string if rational, else a
        label->fraction object with zero entries omitted."""
        if self.is_rational():
            return str(self.coeffs[0])
        return {self.field.basis_label(j): str(c)
                for j, c in enumerate(self.coeffs) if c != 0}

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            label = self.field.basis_label(j)
            parts.append(str(c) if label == "1" else f"{c}*{label}")
        return " + ".join(parts)


def promote_scalar(s: FieldScalar, field: FieldSpec) -> FieldScalar:
    """Re-express a scalar in a larger field (matched by basis labels)."""
    if s.field == field:
        return s
    coeffs = [Fraction(0)] * field.dimension
    for j, c in enumerate(s.coeffs):
        if c != 0:
            coeffs[field.label_index(s.field.basis_label(j))] = c
    return field.from_coeffs(coeffs)


def decode_scalar(field: FieldSpec, value) -> FieldScalar:
    """Parse the canonical encoding (fraction string or label->fraction map)."""
    if isinstance(value, str):
        return field.from_rational(Fraction(value))
    if isinstance(value, int):
        return field.from_rational(value)
    if isinstance(value, dict):
        coeffs = [Fraction(0)] * field.dimension
        for label, frac in value.items():
            coeffs[field.label_index(label)] = Fraction(frac)
        return field.from_coeffs(coeffs)
    raise ValidationError(f"cannot decode scalar from {value!r}")


QQ = FieldSpec()
