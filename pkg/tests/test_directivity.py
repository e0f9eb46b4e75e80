import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superdirective import (
    BROADSIDE,
    ArrayGeometry,
    DimensionMismatch,
    Direction,
    PowerIterationStalled,
    ZeroExcitation,
    average_max_directivity,
    coupling_matrix,
    directivity,
    directivity_quadrature_oracle,
    eigen_crosscheck,
    max_directivity,
    optimal_excitation,
    steering_vector,
)
from superdirective.directivity import power_iteration

URA = ArrayGeometry(4, 8, 0.5, 0.5)
DENSE = ArrayGeometry(4, 8, 0.45, 0.45)


def random_excitation(rng, size):
    return rng.standard_normal(size) + 1j * rng.standard_normal(size)


def random_direction(rng):
    return Direction(rng.uniform(0, math.pi), rng.uniform(0, math.pi))


class TestDirectivity:
    def test_single_element(self):
        r = directivity([1.0], ArrayGeometry(1, 1, 0.5, 0.5), Direction(0.3, 2.2))
        assert r.linear == 1.0
        assert r.db == 0.0

    def test_half_wavelength_pair(self):
        r = directivity([1, 1], ArrayGeometry(1, 2, 0.5, 0.5), BROADSIDE)
        assert r.linear == pytest.approx(2.0, rel=1e-14)
        assert r.db == pytest.approx(3.0103, abs=1e-4)

    def test_db_consistent(self):
        r = directivity(np.arange(1, 33), DENSE, Direction(1.0, 1.0))
        assert abs(r.db - 10 * math.log10(r.linear)) < 1e-12
        assert r.linear > 0

    def test_zero_excitation(self):
        with pytest.raises(ZeroExcitation):
            directivity(np.zeros(32), URA, BROADSIDE)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            directivity(np.ones(31), URA, BROADSIDE)

    @settings(max_examples=40)
    @given(
        st.integers(0, 2**32 - 1),
        st.complex_numbers(min_magnitude=1e-3, max_magnitude=1e3, allow_nan=False, allow_infinity=False),
    )
    def test_scale_invariance(self, seed, c):
        rng = np.random.default_rng(seed)
        j = random_excitation(rng, 32)
        d = random_direction(rng)
        assert directivity(c * j, DENSE, d).linear == pytest.approx(directivity(j, DENSE, d).linear, rel=1e-12)

    def test_realness_of_denominator(self):
        rng = np.random.default_rng(3)
        cm = coupling_matrix(DENSE)
        for _ in range(20):
            q = cm.quadratic_form(random_excitation(rng, 32))
            assert abs(q.imag) < 1e-9 * abs(q.real)


class TestQuadratureOracle:
    def test_single_element(self):
        v = directivity_quadrature_oracle([1.0], ArrayGeometry(1, 1, 0.5, 0.5), Direction(1.0, 0.5))
        assert v == pytest.approx(1.0, rel=1e-12)

    def test_half_wavelength_pair(self):
        v = directivity_quadrature_oracle([1, 1], ArrayGeometry(1, 2, 0.5, 0.5), BROADSIDE)
        assert v == pytest.approx(2.0, abs=1e-8)

    @pytest.mark.parametrize("geom", [DENSE, URA, ArrayGeometry(2, 3, 0.3, 0.7), ArrayGeometry(4, 8, 0.1, 0.1)])
    def test_agrees_with_closed_form(self, geom):
        rng = np.random.default_rng(11)
        for _ in range(5):
            j = random_excitation(rng, geom.size)
            d = random_direction(rng)
            oracle = directivity_quadrature_oracle(j, geom, d)
            assert directivity(j, geom, d).linear == pytest.approx(oracle, rel=1e-6)


class TestOptimalExcitation:
    def test_single_element(self):
        opt = optimal_excitation(ArrayGeometry(1, 1, 0.5, 0.5), Direction(0.0, 0.0))
        np.testing.assert_array_equal(opt.weights, [1.0])
        assert opt.achieved.linear == 1.0
        assert opt.achieved.db == 0.0

    def test_half_wavelength_pair(self):
        opt = optimal_excitation(ArrayGeometry(1, 2, 0.5, 0.5), BROADSIDE)
        np.testing.assert_allclose(opt.weights, [1 / math.sqrt(2)] * 2, atol=1e-15)
        assert opt.achieved.linear == pytest.approx(2.0, rel=1e-14)

    def test_paper_endfire_diagonal(self):
        assert optimal_excitation(URA, Direction(0.0, math.pi / 4)).achieved.db == pytest.approx(16.65, abs=0.05)

    def test_paper_broadside(self):
        assert max_directivity(URA, BROADSIDE).db == pytest.approx(16.68, abs=0.05)

    @pytest.mark.parametrize("geom", [URA, DENSE, ArrayGeometry(4, 8, 0.3, 0.3)])
    def test_weights_achieve_optimum(self, geom):
        rng = np.random.default_rng(5)
        for _ in range(5):
            d = random_direction(rng)
            opt = optimal_excitation(geom, d)
            assert directivity(opt.weights, geom, d).linear == pytest.approx(opt.achieved.linear, rel=1e-10)

    def test_normalization(self):
        opt = optimal_excitation(DENSE, Direction(0.4, 1.1))
        assert np.linalg.norm(opt.weights) == pytest.approx(1.0, rel=1e-14)
        assert opt.weights[0].imag == 0.0
        assert opt.weights[0].real > 0.0

    def test_weights_solve_coupling_system(self):
        d = Direction(0.4, 1.1)
        opt = optimal_excitation(DENSE, d)
        a = steering_vector(DENSE, d)
        raw = np.linalg.solve(coupling_matrix(DENSE).entries, a)
        ratio = raw / opt.weights
        np.testing.assert_allclose(ratio, ratio[0], rtol=1e-8)

    @pytest.mark.parametrize("geom", [URA, DENSE])
    def test_optimality(self, geom):
        rng = np.random.default_rng(17)
        for _ in range(3):
            d = random_direction(rng)
            best = max_directivity(geom, d).linear
            cm = coupling_matrix(geom)
            for _ in range(200):
                assert directivity(random_excitation(rng, 32), geom, d, cm).linear <= best + 1e-9

    @pytest.mark.parametrize(
        "geom", [ArrayGeometry(1, 8, 0.5, 0.5), ArrayGeometry(1, 5, 1.0, 0.3), ArrayGeometry(6, 1, 0.2, 1.5)]
    )
    def test_decoupled_reduction(self, geom):
        np.testing.assert_allclose(coupling_matrix(geom).entries, np.eye(geom.size), atol=1e-15)
        rng = np.random.default_rng(2)
        for _ in range(10):
            assert max_directivity(geom, random_direction(rng)).linear == pytest.approx(geom.size, rel=1e-12)

    def test_degenerate_direction(self):
        geom = ArrayGeometry(1, 4, 0.3, 0.3)
        assert max_directivity(geom, Direction(0.0, 0.0)).linear > 0


class TestEigenCrosscheck:
    def test_single_element(self):
        e = eigen_crosscheck(ArrayGeometry(1, 1, 0.5, 0.5), BROADSIDE)
        assert e.lambda0 == pytest.approx(1.0, rel=1e-14)
        np.testing.assert_allclose(e.v0, [1.0])

    def test_small_dense(self):
        geom = ArrayGeometry(2, 2, 0.45, 0.45)
        e = eigen_crosscheck(geom, BROADSIDE)
        assert abs(e.lambda0 - max_directivity(geom, BROADSIDE).linear) / e.lambda0 < 1e-8

    def test_paper_broadside(self):
        e = eigen_crosscheck(URA, BROADSIDE)
        assert 10 * math.log10(e.lambda0) == pytest.approx(16.68, abs=0.05)
        assert e.lambda0 == pytest.approx(46.6, abs=0.5)

    @pytest.mark.parametrize("geom", [URA, DENSE])
    def test_agreement_and_rank_one(self, geom):
        rng = np.random.default_rng(23)
        for _ in range(5):
            d = random_direction(rng)
            e = eigen_crosscheck(geom, d)
            opt = optimal_excitation(geom, d)
            assert abs(e.lambda0 - opt.achieved.linear) / e.lambda0 < 1e-8
            assert e.lambda1 < 1e-8 * e.lambda0
            np.testing.assert_allclose(e.v0, opt.weights, atol=1e-8)

    def test_power_iteration_diagonal(self):
        diag = np.array([3.0, 1.0, 0.5])
        value, vec, _ = power_iteration(lambda x: diag * x, np.ones(3))
        assert value == pytest.approx(3.0, rel=1e-10)
        assert abs(vec[0]) == pytest.approx(1.0, rel=1e-5)

    def test_power_iteration_stalls(self):
        diag = np.array([1.0, 0.999999])
        with pytest.raises(PowerIterationStalled):
            power_iteration(lambda x: diag * x, np.ones(2), tol=1e-15, max_iter=5)


class TestHalfSpaceMean:
    def test_single_element(self):
        assert average_max_directivity(ArrayGeometry(1, 1, 0.5, 0.5)) == pytest.approx(1.0, rel=1e-12)

    def test_small_half_wavelength(self):
        assert average_max_directivity(ArrayGeometry(2, 2, 0.5, 0.5)) == pytest.approx(4.0, rel=1e-3)

    def test_dense(self):
        assert average_max_directivity(DENSE) == pytest.approx(32.0, rel=1e-3)

    @pytest.mark.parametrize("spacing, rel", [(0.3, 1e-3), (0.7, 1e-3), (0.1, 1e-2)])
    @pytest.mark.parametrize("shape", [(1, 4), (2, 3), (3, 3), (4, 8)])
    def test_constant_mean(self, shape, spacing, rel):
        geom = ArrayGeometry(*shape, spacing, spacing)
        assert average_max_directivity(geom) == pytest.approx(geom.size, rel=rel)

    def test_unequal_spacings(self):
        geom = ArrayGeometry(3, 4, 0.35, 0.6)
        assert average_max_directivity(geom) == pytest.approx(12.0, rel=1e-3)
