import math

import numpy as np
import pytest

from tricoh.closed_forms import (
    evolved_matrix_closed_form,
    reduced_matrix_closed_form,
)
from tricoh.dilation import dilate, initial_state, reduce_to_subsystem
from tricoh.linalg import DensityMatrix, PureState
from tricoh.measures import (
    CoherenceBounds,
    coherence_concurrence,
    convex_roof_upper_bound,
    is_x_shaped,
    l1_coherence,
    pure_concurrence,
    x_concurrence,
)
from tricoh.scenario import ChannelKind, Subsystem

from conftest import random_density, random_pure, random_x_state


def honest_ab1b2(alpha: float, rb: float, rc: float = 0.3) -> DensityMatrix:
    return reduce_to_subsystem(dilate(initial_state(alpha), rb, rc), Subsystem.AB1B2)


class TestL1Coherence:
    def test_diagonal_is_incoherent(self):
        assert l1_coherence(DensityMatrix(np.diag([0.2, 0.3, 0.1, 0.4]))) == 0.0

    def test_ghz_projector(self):
        assert l1_coherence(initial_state(1.0)) == 1.0

    def test_accessible_reduction(self):
        alpha, rb, rc = 0.8, 0.4, 0.6
        rho = reduced_matrix_closed_form(Subsystem.AB1C1, alpha, rb, rc)
        expected = alpha * math.cos(rb) * math.cos(rc)
        assert l1_coherence(rho) == pytest.approx(expected, abs=1e-12)


class TestPureConcurrence:
    def test_basis_state(self):
        assert pure_concurrence(PureState([1.0, 0.0])) == 0.0

    def test_plus_state(self):
        assert pure_concurrence(PureState(np.full(2, 2**-0.5))) == pytest.approx(
            1.0, abs=1e-15
        )

    def test_ghz(self):
        amps = np.zeros(8)
        amps[0] = amps[7] = 2**-0.5
        assert pure_concurrence(PureState(amps)) == pytest.approx(1.0, abs=1e-15)

    def test_equals_l1_of_projector(self):
        rng = np.random.default_rng(53)
        for _ in range(200):
            dim = int(rng.integers(1, 4))
            psi = random_pure(rng, 2**dim)
            lhs = pure_concurrence(psi)
            rhs = l1_coherence(psi.density())
            assert abs(lhs - rhs) <= 1e-12


class TestXShape:
    def test_initial_state_is_x(self):
        for alpha in np.linspace(0.0, 1.0, 5):
            assert is_x_shaped(initial_state(float(alpha)))

    def test_diagonal_is_x(self):
        assert is_x_shaped(DensityMatrix(np.eye(8) / 8))

    def test_honest_two_party_reduction_is_not_x(self):
        assert not is_x_shaped(honest_ab1b2(0.8, 0.5))

    def test_x_concurrence_values(self):
        alpha, rb, rc = 0.8, 0.4, 0.6
        acc = reduced_matrix_closed_form(Subsystem.AB1C1, alpha, rb, rc)
        assert x_concurrence(acc) == pytest.approx(
            alpha * math.cos(rb) * math.cos(rc), abs=1e-12
        )
        inacc = reduced_matrix_closed_form(Subsystem.AB2C2, alpha, rb, rc)
        assert x_concurrence(inacc) == pytest.approx(
            alpha * math.sin(rb) * math.sin(rc), abs=1e-12
        )
        assert x_concurrence(DensityMatrix(np.eye(8) / 8)) == 0.0

    def test_x_concurrence_rejects_non_x(self):
        with pytest.raises(ValueError, match=r"\(0, 3\)"):
            x_concurrence(honest_ab1b2(0.8, 0.5))

    def test_equals_l1_bit_for_bit_on_x_states(self):
        rng = np.random.default_rng(59)
        for _ in range(300):
            rho = random_x_state(rng)
            assert x_concurrence(rho) == l1_coherence(rho)

    def test_invariant_under_diagonal_phases(self):
        rng = np.random.default_rng(61)
        rho = random_x_state(rng)
        phases = np.exp(2j * np.pi * rng.random(8))
        u = np.diag(phases)
        rotated = DensityMatrix(u @ rho.matrix @ u.conj().T)
        assert x_concurrence(rotated) == pytest.approx(
            x_concurrence(rho), abs=1e-12
        )

    def test_monotone_under_phase_damping(self):
        alpha, rb, rc = 0.9, 0.3, 0.5
        values = [
            x_concurrence(
                evolved_matrix_closed_form(
                    Subsystem.AB1C1, alpha, rb, rc, ChannelKind.PHASE_DAMPING, p, p
                )
            )
            for p in np.linspace(0.0, 1.0, 11)
        ]
        assert all(b <= a for a, b in zip(values, values[1:]))


class TestConvexRoof:
    def test_pure_input_collapses(self):
        rng = np.random.default_rng(67)
        psi = random_pure(rng, 8)
        bounds = convex_roof_upper_bound(psi.density(), seed=1)
        assert abs(bounds.upper - bounds.lower) <= 1e-9
        assert bounds.upper == pytest.approx(pure_concurrence(psi), abs=1e-9)

    def test_maximally_mixed(self):
        bounds = convex_roof_upper_bound(DensityMatrix(np.eye(8) / 8), seed=2)
        assert bounds.upper <= 1e-6

    def test_accessible_reduction_with_defaults(self):
        rho = reduced_matrix_closed_form(Subsystem.AB1C1, 0.8, 0.4, 0.6)
        bounds = convex_roof_upper_bound(rho, seed=3)
        assert bounds.upper - bounds.lower <= 1e-3
        assert bounds.method == "convex_roof_search"
        assert bounds.optimizer_iterations > 0

    def test_brackets_two_party_reduction(self):
        # mixture of one coherent pure block and one basis state: the roof
        # collapses onto the l1 value (2 - alpha) sin(rb) cos(rb)
        alpha, rb = 0.7, 0.5
        rho = honest_ab1b2(alpha, rb)
        target = (2.0 - alpha) * math.sin(rb) * math.cos(rb)
        bounds = convex_roof_upper_bound(rho, seed=4)
        assert bounds.lower <= target + 1e-9
        assert bounds.upper >= target - 1e-9
        assert bounds.upper - bounds.lower <= 1e-3

    def test_random_x_states_reach_l1(self):
        rng = np.random.default_rng(71)
        for i in range(100):
            rho = random_x_state(rng)
            bounds = convex_roof_upper_bound(
                rho, restarts=16, refine_steps=200, seed=i
            )
            assert bounds.upper - bounds.lower <= 1e-3

    def test_deterministic_for_fixed_seed(self):
        rng = np.random.default_rng(73)
        rho = random_density(rng, 8)
        a = convex_roof_upper_bound(rho, seed=9)
        b = convex_roof_upper_bound(rho, seed=9)
        assert a == b

    def test_lower_never_exceeds_upper(self):
        rng = np.random.default_rng(79)
        for i in range(20):
            rho = random_density(rng, 8)
            bounds = convex_roof_upper_bound(rho, restarts=8, refine_steps=100, seed=i)
            assert bounds.lower <= bounds.upper + 1e-9

    def test_rejects_undersized_ensemble(self):
        rng = np.random.default_rng(83)
        with pytest.raises(ValueError, match="below rank"):
            convex_roof_upper_bound(random_density(rng, 8), seed=0, ensemble_size=4)


class TestCoherenceConcurrence:
    def test_x_state_dispatch(self):
        bounds = coherence_concurrence(initial_state(0.5))
        assert bounds.method == "x_closed_form"
        assert bounds.lower == bounds.upper == 0.5

    def test_maximally_mixed_qubit(self):
        bounds = coherence_concurrence(DensityMatrix(np.eye(2) / 2))
        assert bounds.lower == bounds.upper == 0.0

    def test_pure_dispatch(self):
        rng = np.random.default_rng(89)
        psi = random_pure(rng, 8)
        bounds = coherence_concurrence(psi.density())
        assert bounds.method == "pure_exact"
        assert bounds.upper == pytest.approx(pure_concurrence(psi), abs=1e-9)

    def test_search_dispatch_brackets(self):
        alpha, rb = 0.7, 0.5
        bounds = coherence_concurrence(honest_ab1b2(alpha, rb))
        assert bounds.method == "convex_roof_search"
        target = (2.0 - alpha) * math.sin(rb) * math.cos(rb)
        assert bounds.lower <= target + 1e-9 <= bounds.upper + 2e-9

    def test_bounds_ordering_across_toolkit_states(self):
        # l1 <= roof upper bound for states produced by the pipeline
        rng = np.random.default_rng(97)
        states = [
            initial_state(0.4),
            reduced_matrix_closed_form(Subsystem.AB2C1, 0.6, 0.3, 0.7),
            evolved_matrix_closed_form(
                Subsystem.AB1C1, 0.8, 0.2, 0.4, ChannelKind.PHASE_FLIP, 0.7, 0.9
            ),
            honest_ab1b2(0.5, 0.6),
            random_density(rng, 8),
        ]
        for rho in states:
            bounds = coherence_concurrence(rho)
            assert bounds.lower <= bounds.upper + 1e-9


class TestCoherenceBounds:
    def test_rejects_crossed_bounds(self):
        with pytest.raises(ValueError, match="crossed"):
            CoherenceBounds(1.0, 0.5, "x_closed_form")

    def test_rejects_negative_lower(self):
        with pytest.raises(ValueError, match="negative"):
            CoherenceBounds(-1.0, 0.5, "x_closed_form")
