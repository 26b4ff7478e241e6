"""Tests for Fock states, permanents and unitary evolution."""

import math
from typing import Callable

import numpy as np
import pytest

from photonchip.circuits.netlist import (
    Convention,
    CouplerSpec,
    DirectionalCoupler,
    Netlist,
)
from photonchip.circuits.unitary import assemble_unitary, coupler_unitary
from photonchip.fock import (
    FockState,
    PhotonNumberError,
    UnitarityError,
    basis_size,
    check_unitary,
    enumerate_basis,
    evolve,
    permanent,
    permanent_naive,
    post_select,
    transition_amplitude,
)
from photonchip.interference.visibility import v_ideal

UnitaryFactory = Callable[[int], np.ndarray]


class TestFockStates:
    """Fock states and basis enumeration."""

    def test_basis_order_is_lexicographic_descending(self) -> None:
        basis = enumerate_basis(2, 2)
        assert [s.occupations for s in basis.states] == [(2, 0), (1, 1), (0, 2)]

    @pytest.mark.parametrize("n, m", [(0, 3), (1, 4), (2, 6), (3, 5)])
    def test_basis_size_matches_binomial(self, n: int, m: int) -> None:
        basis = enumerate_basis(n, m)
        assert len(basis) == basis_size(n, m) == math.comb(n + m - 1, n)
        assert all(s.n_photons == n and s.n_modes == m for s in basis.states)
        assert len(set(basis.states)) == len(basis)

    def test_two_photons_in_six_modes(self) -> None:
        assert basis_size(2, 6) == 21

    def test_invalid_arguments(self) -> None:
        with pytest.raises(ValueError):
            enumerate_basis(2, 0)
        with pytest.raises(ValueError):
            enumerate_basis(-1, 2)
        with pytest.raises(ValueError):
            FockState.of(1, -1)

    def test_state_helpers(self) -> None:
        state = FockState.of(0, 1, 1)
        assert state.n_modes == 3
        assert state.n_photons == 2
        assert state[1] == 1
        assert str(state) == "|0,1,1⟩"


class TestPermanent:
    """Glynn permanent against the naive expansion."""

    def test_matches_naive_on_random_matrices(self, rng: np.random.Generator) -> None:
        for i in range(200):
            n = 1 + i % 6
            a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
            reference = permanent_naive(a)
            assert abs(permanent(a) - reference) <= 1e-10 * max(1.0, abs(reference))

    @pytest.mark.parametrize("n", range(1, 7))
    def test_all_ones_gives_factorial(self, n: int) -> None:
        assert permanent(np.ones((n, n))) == math.factorial(n)

    def test_small_cases(self) -> None:
        assert permanent(np.zeros((0, 0))) == 1
        assert permanent(np.array([[3.0]])) == 3
        assert permanent(np.array([[1.0, 2.0], [3.0, 4.0]])) == 10

    def test_rejects_non_square(self) -> None:
        with pytest.raises(ValueError, match="square"):
            permanent(np.ones((2, 3)))


class TestEvolution:
    """Amplitudes, evolution and post-selection."""

    def test_unitarity_check(self) -> None:
        with pytest.raises(UnitarityError):
            check_unitary(np.array([[1.0, 0.0], [0.0, 2.0]]))
        check_unitary(np.eye(3))

    def test_photon_number_mismatch(self) -> None:
        with pytest.raises(PhotonNumberError):
            transition_amplitude(np.eye(2), FockState.of(1, 1), FockState.of(1, 0))

    def test_identity_preserves_state(self) -> None:
        state = FockState.of(0, 2, 1)
        dist = evolve(np.eye(3), state)
        assert dist.probability(state) == pytest.approx(1.0, abs=1e-15)
        assert dist.nonzero(1e-15) == {state: pytest.approx(1.0)}

    def test_probabilities_sum_to_one(self, random_unitary: UnitaryFactory) -> None:
        states = [
            FockState.of(1, 1, 0),
            FockState.of(2, 0, 1, 0),
            FockState.of(1, 1, 1, 0, 0),
        ]
        for state in states:
            n_modes = state.n_modes
            dist = evolve(random_unitary(n_modes), state)
            assert dist.total == pytest.approx(1.0, abs=1e-10)
            assert len(dist) == basis_size(state.n_photons, n_modes)

    def test_single_photon_follows_unitary_column(
        self, random_unitary: UnitaryFactory
    ) -> None:
        u = random_unitary(4)
        dist = evolve(u, FockState.of(0, 1, 0, 0))
        for k in range(4):
            out = FockState(tuple(1 if i == k else 0 for i in range(4)))
            assert dist.amplitude(out) == pytest.approx(u[k, 1], abs=1e-12)

    def test_bunched_output_normalisation(self) -> None:
        # |1,1> through a balanced coupler: each bunched state carries 1/2
        u = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2.0)
        dist = evolve(u, FockState.of(1, 1))
        assert dist.probability(FockState.of(2, 0)) == pytest.approx(0.5, abs=1e-12)
        assert dist.probability(FockState.of(0, 2)) == pytest.approx(0.5, abs=1e-12)
        assert dist.probability(FockState.of(1, 1)) == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("eta", np.linspace(0.0, 1.0, 101))
    def test_coincidence_suppression_matches_closed_form(self, eta: float) -> None:
        netlist = Netlist(2, (DirectionalCoupler(0, 1, CouplerSpec(float(eta))),))
        u = assemble_unitary(netlist)
        c_quant = evolve(u, FockState.of(1, 1)).probability(FockState.of(1, 1))
        c_class = eta**2 + (1.0 - eta) ** 2
        assert 1.0 - c_quant / c_class == pytest.approx(v_ideal(float(eta)), abs=1e-12)

    @pytest.mark.parametrize("eta", np.linspace(0.0, 1.0, 11))
    def test_symmetric_coupler_exchange(self, eta: float) -> None:
        u = coupler_unitary(CouplerSpec(float(eta)), Convention.SYMMETRIC)
        np.testing.assert_allclose(u[::-1, ::-1], u, atol=1e-15)
        coincidence = FockState.of(1, 1)
        direct = evolve(u, FockState.of(1, 1)).probability(coincidence)
        exchanged = evolve(u[:, ::-1], FockState.of(1, 1)).probability(coincidence)
        assert exchanged == pytest.approx(direct, abs=1e-12)
        from_left = evolve(u, FockState.of(2, 0)).probability(coincidence)
        from_right = evolve(u, FockState.of(0, 2)).probability(coincidence)
        assert from_left == pytest.approx(from_right, abs=1e-12)

    def test_post_select_renormalises(self) -> None:
        u = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2.0)
        dist = evolve(u, FockState.of(1, 0))
        selected, success = post_select(dist, [1, None])
        assert success == pytest.approx(0.5)
        assert selected.probability(FockState.of(1, 0)) == pytest.approx(1.0)
        assert abs(selected.amplitude(FockState.of(1, 0))) == pytest.approx(1.0)

    def test_post_select_groups(self) -> None:
        dist = evolve(np.eye(4), FockState.of(1, 0, 1, 0))
        _, success = post_select(dist, [None] * 4, groups=[((0, 1), 1), ((2, 3), 1)])
        assert success == pytest.approx(1.0)
        _, success = post_select(dist, [None] * 4, groups=[((0, 1), 2)])
        assert success == 0.0

    def test_post_select_without_match(self) -> None:
        dist = evolve(np.eye(2), FockState.of(1, 0))
        selected, success = post_select(dist, [0, None])
        assert success == 0.0
        assert len(selected) == 0

    def test_post_select_pattern_length(self) -> None:
        dist = evolve(np.eye(2), FockState.of(1, 0))
        with pytest.raises(ValueError, match="pattern"):
            post_select(dist, [None])
