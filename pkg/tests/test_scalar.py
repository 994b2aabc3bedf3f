import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dirspec.errors import FieldMismatchError, ValidationError
from dirspec.scalar import QQ, FieldSpec, decode_scalar, promote_scalar

F2 = FieldSpec((2,))
F23 = FieldSpec((2, 3))


def scal(field, *coeffs):
    return field.from_coeffs(list(coeffs) + [0] * (field.dimension - len(coeffs)))


class TestFieldSpec:
    def test_dimension_and_labels(self):
        assert QQ.dimension == 1
        assert F23.dimension == 4
        assert [F23.basis_label(j) for j in range(4)] == ["1", "sqrt2", "sqrt3", "sqrt6"]

    def test_rejects_bad_roots(self):
        with pytest.raises(ValidationError):
            FieldSpec((4,))          # not square-free
        with pytest.raises(ValidationError):
            FieldSpec((2, 6))        # not coprime
        with pytest.raises(ValidationError):
            FieldSpec((3, 2))        # not sorted
        with pytest.raises(ValidationError):
            FieldSpec((1,))


class TestArithmetic:
    def test_add_cancellation(self):
        r2 = F2.sqrt_root(2)
        assert (1 + r2) + (2 - r2) == 3

    def test_add_identity(self):
        x = scal(F2, Fraction(2, 7), Fraction(-1, 3))
        assert x + 0 == x

    def test_rational_add(self):
        assert QQ.from_rational(Fraction(1, 2)) + Fraction(1, 3) == Fraction(5, 6)

    def test_defining_relation(self):
        assert F2.sqrt_root(2) * F2.sqrt_root(2) == 2

    def test_basis_product(self):
        prod = F23.sqrt_root(2) * F23.sqrt_root(3)
        assert prod == F23.from_coeffs([0, 0, 0, 1])
        assert prod.encode() == {"sqrt6": "1"}

    def test_conjugate_product(self):
        r2 = F2.sqrt_root(2)
        assert (1 + r2) * (1 - r2) == -1

    def test_invert_rational(self):
        assert QQ.from_rational(2).invert() == Fraction(1, 2)

    def test_invert_root(self):
        r2 = F2.sqrt_root(2)
        inv = r2.invert()
        assert inv * r2 == 1
        assert inv == r2 / 2

    def test_invert_one_plus_root(self):
        r2 = F2.sqrt_root(2)
        inv = (1 + r2).invert()
        assert inv == -1 + r2
        assert inv * (1 + r2) == 1

    def test_invert_zero_raises(self):
        with pytest.raises(ZeroDivisionError):
            QQ.zero().invert()

    def test_is_zero(self):
        r2 = F2.sqrt_root(2)
        assert (r2 - r2).is_zero()
        assert not QQ.from_rational(Fraction(1, 10 ** 9)).is_zero()
        # sqrt6 - sqrt2*sqrt3 reduces to zero through the basis table
        assert (F23.from_coeffs([0, 0, 0, 1])
                - F23.sqrt_root(2) * F23.sqrt_root(3)).is_zero()

    def test_field_mismatch(self):
        with pytest.raises(FieldMismatchError):
            F2.one() + F23.one()


coeff = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def f23_scalars(draw):
    return F23.from_coeffs([draw(coeff) for _ in range(4)])


class TestFieldAxioms:
    @given(f23_scalars(), f23_scalars(), f23_scalars())
    def test_ring_axioms(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c

    @given(f23_scalars())
    def test_inverse(self, a):
        if not a.is_zero():
            assert a * a.invert() == 1

    @given(f23_scalars(), f23_scalars())
    def test_numeric_embedding(self, a, b):
        assert math.isclose(float(a * b), float(a) * float(b),
                            rel_tol=0, abs_tol=1e-12)
        assert math.isclose(float(a + b), float(a) + float(b),
                            rel_tol=0, abs_tol=1e-12)
        if not a.is_zero():
            assert math.isclose(float(a.invert()), 1.0 / float(a),
                                rel_tol=1e-12, abs_tol=1e-12)

    @given(f23_scalars())
    def test_zero_test_exact(self, a):
        assert a.is_zero() == all(c == 0 for c in a.coeffs)


class TestFloorAndFrac:
    def test_rational_floor_exact(self):
        assert QQ.from_rational(Fraction(7, 2)).floor() == 3
        assert QQ.from_rational(Fraction(-7, 2)).floor() == -4

    def test_irrational_floor(self):
        r2 = F2.sqrt_root(2)
        assert r2.floor() == 1
        assert (-r2).floor() == -2
        assert (3 * r2).frac() == 3 * r2 - 4

    def test_frac_range(self):
        rng = random.Random(1)
        for _ in range(50):
            x = F23.from_coeffs([Fraction(rng.randint(-9, 9), rng.randint(1, 5))
                                 for _ in range(4)])
            f = float(x.frac())
            assert -1e-12 <= f < 1 + 1e-12


class TestEncoding:
    def test_round_trip_rational(self):
        x = QQ.from_rational(Fraction(-22, 7))
        assert decode_scalar(QQ, x.encode()) == x
        assert x.encode() == "-22/7"

    def test_round_trip_object(self):
        x = scal(F23, Fraction(1, 2), Fraction(0), Fraction(-3, 5), Fraction(2))
        enc = x.encode()
        assert enc == {"1": "1/2", "sqrt3": "-3/5", "sqrt6": "2"}
        assert decode_scalar(F23, enc) == x

    @given(f23_scalars())
    def test_round_trip_random(self, x):
        assert decode_scalar(F23, x.encode()) == x

    def test_unknown_label_rejected(self):
        with pytest.raises(ValidationError):
            decode_scalar(F2, {"sqrt3": "1"})

    def test_promotion(self):
        x = (1 + F2.sqrt_root(2)) / 3
        y = promote_scalar(x, F23)
        assert y.field == F23
        assert float(y) == pytest.approx(float(x), abs=1e-15)
        assert promote_scalar(QQ.from_rational(5), F2) == 5
