import cmath
import random
from fractions import Fraction

import pytest

from dirspec import classify as C
from dirspec import measure as M
from dirspec import oracle as O
from dirspec.errors import UnsupportedConvolutionError, ValidationError
from dirspec.linalg import Subspace, as_vector
from dirspec.measure import AtomGroup
from dirspec.scalar import QQ, FieldSpec

F2 = FieldSpec((2,))

PRODUCT = O.ProductType((O.Bernoulli(), O.Bernoulli()))
BW = O.BergelsonWard(((1, 0), (0, 1), (1, 1), (1, -1)))
ROT = O.Rotation(tuple(as_vector(F2, [F2.sqrt_root(2) - 1, Fraction(1, 3)])))
ODO = O.OdometerEigen(2, 2, 2)


class TestCorrelation:
    def test_bernoulli_independence(self):
        assert O.correlation(PRODUCT, (0, 7), "factors:1") == 1.0
        assert O.correlation(PRODUCT, (5, 0), "factors:1") == 0.0
        assert O.correlation(PRODUCT, (0, 0), "factors:1,2") == 1.0

    def test_bw_orthogonal_vector(self):
        bw = O.BergelsonWard(((1, 2), (1, 0)))
        assert O.correlation(bw, (2, -1), "factor:1") == 1.0
        assert O.correlation(bw, (1, 1), "factor:1") == 0.0

    def test_rotation_character(self):
        a = float(F2.sqrt_root(2) - 1)
        val = O.correlation(ROT, (3, 0), "exp1")
        assert abs(val - cmath.exp(2j * cmath.pi * 3 * a)) < 1e-12

    def test_unknown_observable(self):
        with pytest.raises(ValidationError):
            O.correlation(PRODUCT, (0, 0), "nope")


class TestExpectedMeasure:
    def test_product_carriers(self):
        em = O.expected_measure(PRODUCT)
        carriers = {c.carrier.subspace for c in em.components}
        assert carriers == {Subspace.from_vectors(QQ, 2, [[1, 0]]),
                            Subspace.from_vectors(QQ, 2, [[0, 1]]),
                            Subspace.full(QQ, 2)}

    def test_bw_line_components(self):
        em = O.expected_measure(BW)
        lines = {c.carrier.subspace for c in em.components
                 if c.carrier.subspace.dim == 1}
        assert lines == {Subspace.from_vectors(QQ, 2, [list(v)])
                         for v in BW.vectors}
        assert any(c.carrier.subspace.is_full() for c in em.components)

    def test_rotation_group(self):
        em = O.expected_measure(ROT)
        assert len(em.components) == 1
        assert isinstance(em.components[0], AtomGroup)
        assert em.components[0].ring == "Z"

    def test_odometer_atoms(self):
        em = O.expected_measure(ODO)
        assert len(em.components) == 2 ** (2 * 2) - 1
        assert not em.has_delta_zero()

    def test_mixed_product_unsupported(self):
        mixed = O.ProductType((O.Bernoulli(), O.Rotation1(F2.sqrt_root(2) - 1)))
        with pytest.raises(UnsupportedConvolutionError):
            O.expected_measure(mixed)

    def test_observable_measures_dominated(self):
        for model in (ROT, ODO):
            em = O.expected_measure(model)
            for obs in O.observables(model)[:5]:
                om = O.observable_measure(model, obs)
                for comp in om.components:
                    assert M.has_atom_at(em, comp.point)


class TestCrosscheck:
    @pytest.mark.parametrize("model", [PRODUCT, BW, ROT, ODO],
                             ids=["product", "bw", "rotation", "odometer"])
    def test_bundled_models(self, model):
        rep = O.crosscheck(model, bound=6)
        assert rep.passed, rep.failures[:3]
        assert rep.max_error < 1e-12

    def test_mixed_product_observables_exact(self):
        mixed = O.ProductType((O.Bernoulli(), O.Rotation1(F2.sqrt_root(2) - 1)))
        rep = O.crosscheck(mixed, bound=5)
        assert rep.passed


class TestDirectionalBehavior:
    def test_product_example(self):
        em = O.expected_measure(PRODUCT)
        e1 = Subspace.from_vectors(QQ, 2, [[1, 0]])
        e2 = Subspace.from_vectors(QQ, 2, [[0, 1]])
        ne = C.nonergodic_concise(em)
        assert set(ne.subspaces) == {e1, e2}

    def test_bw_nonergodic_exactly_on_perps(self):
        em = O.expected_measure(BW)
        perps = {Subspace.from_vectors(QQ, 2, [list(v)]).orthocomplement()
                 for v in BW.vectors}
        ne = C.nonergodic_concise(em)
        assert set(ne.subspaces) == perps
        for sub in perps:
            v = C.classify_direction(em, sub)
            assert not v.ergodic and not v.weak_mixing
        # a rational direction away from the family is ergodic
        other = Subspace.from_vectors(QQ, 2, [[5, 1]])
        assert C.classify_direction(em, other).ergodic

    def test_rotation_independent_coordinates_all_rational_ergodic(self):
        # rationally independent 1, alpha_1, alpha_2: no eigenvalue meets a
        # rational wall, so every subgroup action is ergodic
        f23 = FieldSpec((2, 3))
        indep = O.Rotation(tuple(as_vector(
            f23, [f23.sqrt_root(2) - 1, f23.sqrt_root(3) - 1])))
        em = O.expected_measure(indep)
        rng = random.Random(3)
        for _ in range(20):
            vec = [rng.randint(-4, 4), rng.randint(-4, 4)]
            if not any(vec):
                continue
            sub = Subspace.from_vectors(f23, 2, [vec])
            v = C.classify_direction(em, sub)
            assert v.ergodic
            assert not v.weak_mixing  # discrete spectrum

    def test_rotation_with_rational_coordinate_has_nonergodic_direction(self):
        # alpha_2 = 1/3: the atom 3*alpha sits on the wall perpendicular to e2
        em = O.expected_measure(ROT)
        e2 = Subspace.from_vectors(F2, 2, [[0, 1]])
        assert not C.classify_direction(em, e2).ergodic

    def test_odometer_has_nonergodic_rational_directions(self):
        em = O.expected_measure(ODO)
        # eigenvalue (1/4, 0) lies on pi(L^perp) for L = span(e2)
        e2 = Subspace.from_vectors(QQ, 2, [[0, 1]])
        assert not C.classify_direction(em, e2).ergodic


class TestGram:
    @pytest.mark.parametrize("model,obs", [
        (PRODUCT, "factors:1,2"), (BW, "factor:2"), (ROT, "exp1"),
        (ODO, "level:1,2")])
    def test_psd(self, model, obs):
        pts = [(i, j) for i in range(-3, 4) for j in range(-3, 4)]
        assert O.gram_min_eigenvalue(model, obs, pts) > -1e-9


class TestModelCodec:
    def test_round_trip(self):
        for model in (PRODUCT, BW, ROT, ODO,
                      O.ProductType((O.Rotation1(QQ.from_rational(Fraction(1, 5))),
                                     O.Rotation1(QQ.from_rational(Fraction(1, 7)))))):
            assert O.decode_model(model.encode()) == model

    def test_parallel_vectors_rejected(self):
        with pytest.raises(ValidationError):
            O.BergelsonWard(((1, 1), (2, 2)))
        with pytest.raises(ValidationError):
            O.BergelsonWard(((0, 0),))
