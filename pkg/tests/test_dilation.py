import math

import numpy as np
import pytest

from tricoh.closed_forms import reduced_matrix_closed_form
from tricoh.dilation import (
    acceleration_parameter,
    dilate,
    dropped_modes,
    initial_state,
    kept_modes,
    reduce_to_subsystem,
    unruh_isometry,
)
from tricoh.linalg import DensityMatrix, partial_trace, validate_density
from tricoh.scenario import R_MAX, Subsystem

from conftest import permute_qubits, random_density

ABC = (Subsystem.AB1C1, Subsystem.AB2C1, Subsystem.AB1C2, Subsystem.AB2C2)


class TestAccelerationParameter:
    def test_infinite_acceleration_limit(self):
        # exponent -> 0 so cos r -> 2^(-1/2) and r -> pi/4
        assert acceleration_parameter(1.0, 1e300, 1.0) == pytest.approx(
            R_MAX, abs=1e-12
        )

    def test_flat_space_limit(self):
        assert acceleration_parameter(1.0, 1e-300, 1.0) == 0.0

    def test_reference_point(self):
        # omega = c = 1, a = 2 pi: cos r = (e^-1 + 1)^(-1/2)
        r = acceleration_parameter(1.0, 2.0 * math.pi, 1.0)
        assert r == pytest.approx(0.5452076238305835, abs=1e-12)
        assert math.cos(r) == pytest.approx(0.8550196364002437, abs=1e-12)

    def test_range(self):
        for a in (0.01, 0.5, 2.0, 40.0, 1e6):
            r = acceleration_parameter(1.0, a, 1.0)
            assert 0.0 <= r <= R_MAX

    def test_rejects_nonpositive(self):
        for bad in ((0.0, 1.0, 1.0), (1.0, -2.0, 1.0), (1.0, 1.0, 0.0)):
            with pytest.raises(ValueError):
                acceleration_parameter(*bad)


class TestInitialState:
    def test_alpha_zero(self):
        m = initial_state(0.0).matrix
        expected = np.zeros((8, 8))
        expected[0, 0] = 1.0
        np.testing.assert_allclose(m, expected, atol=1e-15)

    def test_alpha_one_is_ghz_projector(self):
        m = initial_state(1.0).matrix
        expected = np.zeros((8, 8))
        for i, j in ((0, 0), (0, 7), (7, 0), (7, 7)):
            expected[i, j] = 0.5
        np.testing.assert_allclose(m, expected, atol=1e-15)

    def test_alpha_half(self):
        m = initial_state(0.5).matrix
        assert m[0, 0] == 0.75
        assert m[7, 7] == 0.25
        assert m[0, 7] == m[7, 0] == 0.25
        off = m.copy()
        for i, j in ((0, 0), (7, 7), (0, 7), (7, 0)):
            off[i, j] = 0.0
        assert np.abs(off).max() == 0.0

    def test_rejects_out_of_range(self):
        for bad in (-0.1, 1.1):
            with pytest.raises(ValueError):
                initial_state(bad)


class TestUnruhIsometry:
    def test_no_acceleration(self):
        v = unruh_isometry(0.0)
        np.testing.assert_array_equal(v[:, 0], [1, 0, 0, 0])
        np.testing.assert_array_equal(v[:, 1], [0, 0, 1, 0])

    def test_maximal_acceleration(self):
        v = unruh_isometry(R_MAX)
        np.testing.assert_allclose(v[:, 0], [2**-0.5, 0, 0, 2**-0.5], atol=1e-15)

    def test_one_particle_column_exact(self):
        for r in np.linspace(0.0, R_MAX, 7):
            v = unruh_isometry(float(r))
            np.testing.assert_array_equal(v[:, 1], [0, 0, 1, 0])

    def test_isometry_property(self):
        for r in np.linspace(0.0, R_MAX, 9):
            v = unruh_isometry(float(r))
            assert np.abs(v.conj().T @ v - np.eye(2)).max() <= 1e-14


class TestDilate:
    def test_zero_acceleration_embeds_vacuum(self):
        rho = initial_state(0.7)
        g = dilate(rho, 0.0, 0.0)
        # region-II modes are deterministically |0>
        for mode in (2, 4):
            marg = partial_trace(g, set(range(5)) - {mode})
            np.testing.assert_allclose(marg.matrix, np.diag([1.0, 0.0]), atol=1e-15)
        np.testing.assert_allclose(
            reduce_to_subsystem(g, Subsystem.AB1C1).matrix, rho.matrix, atol=1e-15
        )

    def test_ghz_corner_amplitude(self):
        g = dilate(initial_state(1.0), R_MAX, R_MAX)
        assert g.matrix[0, 0].real == pytest.approx(0.125, abs=1e-15)

    def test_purity_preserved(self):
        rng = np.random.default_rng(23)
        for _ in range(5):
            rho = random_density(rng, 8)
            g = dilate(rho, 0.4, 0.6)
            assert g.purity() == pytest.approx(rho.purity(), abs=1e-12)

    def test_trace_preserved(self):
        g = dilate(initial_state(0.3), 0.2, 0.7)
        assert abs(np.trace(g.matrix) - 1.0) <= 1e-12

    def test_rejects_wrong_dim(self):
        rng = np.random.default_rng(5)
        with pytest.raises(ValueError, match="8x8"):
            dilate(random_density(rng, 4), 0.1, 0.1)


class TestReduceToSubsystem:
    def test_mode_bookkeeping(self):
        assert kept_modes(Subsystem.AB2C1) == (0, 2, 3)
        assert dropped_modes(Subsystem.AB2C1) == (1, 4)
        for s in Subsystem:
            assert 0 in kept_modes(s)
            assert len(kept_modes(s)) == 3

    def test_flat_limit_recovers_initial_state(self):
        for alpha in np.linspace(0.0, 1.0, 5):
            g = dilate(initial_state(float(alpha)), 0.0, 0.0)
            out = reduce_to_subsystem(g, Subsystem.AB1C1)
            np.testing.assert_allclose(
                out.matrix, initial_state(float(alpha)).matrix, atol=1e-15
            )

    def test_matches_closed_forms_on_grid(self):
        for alpha in np.linspace(0.0, 1.0, 5):
            for rb in np.linspace(0.0, R_MAX, 5):
                for rc in np.linspace(0.0, R_MAX, 5):
                    g = dilate(initial_state(float(alpha)), float(rb), float(rc))
                    for s in ABC:
                        sim = reduce_to_subsystem(g, s)
                        ref = reduced_matrix_closed_form(
                            s, float(alpha), float(rb), float(rc)
                        )
                        assert np.abs(sim.matrix - ref.matrix).max() <= 1e-12

    def test_off_diagonal_placement_ab2c1(self):
        alpha, rb, rc = 0.8, 0.5, 0.2
        sim = reduce_to_subsystem(dilate(initial_state(alpha), rb, rc), Subsystem.AB2C1)
        expected = (alpha / 2.0) * math.sin(rb) * math.cos(rc)
        assert sim.matrix[2, 5].real == pytest.approx(expected, abs=1e-14)
        assert sim.matrix[5, 2].real == pytest.approx(expected, abs=1e-14)
        off = sim.matrix.copy()
        np.fill_diagonal(off, 0.0)
        off[2, 5] = off[5, 2] = 0.0
        assert np.abs(off).max() <= 1e-15

    def test_reductions_are_valid_states(self):
        g = dilate(initial_state(0.6), 0.3, 0.7)
        for s in Subsystem:
            out = reduce_to_subsystem(g, s)
            assert isinstance(validate_density(out.matrix), DensityMatrix)

    def test_diagonal_weights(self):
        for alpha in np.linspace(0.0, 1.0, 5):
            for rb in np.linspace(0.0, R_MAX, 3):
                for rc in np.linspace(0.0, R_MAX, 3):
                    sim = reduce_to_subsystem(
                        dilate(initial_state(float(alpha)), float(rb), float(rc)),
                        Subsystem.AB1C1,
                    )
                    top = np.trace(sim.matrix[:4, :4]).real
                    assert top == pytest.approx((2.0 - alpha) / 2.0, abs=1e-12)
                    assert np.trace(sim.matrix).real == pytest.approx(1.0, abs=1e-12)

    def test_swap_symmetry(self):
        # rb <-> rc maps AB2C1 onto AB1C2 with reduced qubits 1 and 2 swapped
        alpha = 0.65
        for rb in (0.1, 0.4, R_MAX):
            for rc in (0.0, 0.3, 0.6):
                left = reduce_to_subsystem(
                    dilate(initial_state(alpha), rb, rc), Subsystem.AB2C1
                ).matrix
                right = reduce_to_subsystem(
                    dilate(initial_state(alpha), rc, rb), Subsystem.AB1C2
                ).matrix
                assert np.abs(left - permute_qubits(right, [0, 2, 1])).max() <= 1e-14

    def test_rejects_wrong_dim(self):
        with pytest.raises(ValueError, match="32"):
            reduce_to_subsystem(initial_state(0.5), Subsystem.AB1C1)
