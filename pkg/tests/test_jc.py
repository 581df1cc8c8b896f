import math

import numpy as np
import pytest

import oracles
from lasergate.jc import (
    CoherentField,
    JCSystem,
    TruncationError,
    jc_evolve,
    jc_gate_error,
)
from lasergate.qcore import InvalidStateError, PureState

# p * nbar for a pi pulse from the ground state, frozen from the Poisson sum
# over sector rotations (asymptotically pi^2/16 ~ 0.617).
P_TIMES_NBAR = {100: 0.61574343, 400: 0.61657366, 1600: 0.61678113}


class TestCoherentField:
    def test_mean_photons(self):
        assert CoherentField(alpha=20.0).mean_photons == 400.0

    def test_default_truncation_is_generous(self):
        field = CoherentField(alpha=20.0)
        assert field.n_max >= 400 + 10 * 20

    def test_weights_normalized_after_truncation(self):
        amps = CoherentField(alpha=20.0).amplitudes()
        assert abs(np.sum(amps**2) - 1.0) <= 1e-10

    def test_vacuum_field(self):
        field = CoherentField(alpha=0.0)
        amps = field.amplitudes()
        assert amps[0] == 1.0
        assert np.all(amps[1:] == 0.0)

    def test_truncation_floor_enforced(self):
        with pytest.raises(TruncationError):
            CoherentField(alpha=10.0, n_max=150)  # below nbar + 10 sqrt(nbar) = 200

    def test_negative_alpha_rejected(self):
        with pytest.raises(InvalidStateError):
            CoherentField(alpha=-1.0)


class TestVacuumSector:
    def test_excited_atom_vacuum_rabi_oscillation(self):
        # single-sector dynamics: rho_aa(t) = cos^2(g t), population period pi/g
        field = CoherentField(alpha=0.0)
        for g, t in [(1.0, 0.3), (1.0, 0.7), (2.0, 0.55), (1.0, 1.4)]:
            rho = jc_evolve(PureState.excited(), field, g, t)
            assert rho.matrix[1, 1].real == pytest.approx(math.cos(g * t) ** 2, abs=1e-12)

    def test_ground_atom_vacuum_is_dark(self):
        rho = jc_evolve(PureState.ground(), CoherentField(alpha=0.0), 1.0, 1.3)
        assert rho.matrix[0, 0].real == pytest.approx(1.0, abs=1e-14)
        assert abs(rho.matrix[1, 0]) <= 1e-14


class TestAgainstJointExponential:
    @pytest.mark.parametrize(
        "state",
        [PureState.ground(), PureState.excited(), PureState.superposition(1.0, 1.0)],
        ids=["ground", "excited", "plus"],
    )
    def test_reduced_state_matches_bruteforce(self, state):
        alpha, n_max, g = 2.0, 40, 1.0
        duration = math.pi / (2 * g * alpha)
        got = jc_evolve(state, CoherentField(alpha=alpha, n_max=n_max), g, duration)
        want = oracles.jc_bruteforce(state.amplitudes, alpha, n_max, g, duration)
        assert np.max(np.abs(got.matrix - want)) <= 1e-10


class TestGateError:
    def test_pi_from_ground_reference_values(self):
        for n_bar, frozen in P_TIMES_NBAR.items():
            p = jc_gate_error(math.pi, PureState.ground(), n_bar)
            assert p * n_bar == pytest.approx(frozen, abs=1e-7)

    def test_one_over_nbar_scaling(self):
        p100 = jc_gate_error(math.pi, PureState.ground(), 100)
        p400 = jc_gate_error(math.pi, PureState.ground(), 400)
        assert abs(p100 * 100 - p400 * 400) / (p100 * 100) <= 0.10

    def test_truncation_robustness(self):
        base = jc_gate_error(math.pi, PureState.ground(), 400)
        field_default = CoherentField(alpha=20.0)
        doubled = jc_gate_error(math.pi, PureState.ground(), 400, n_max=2 * field_default.n_max)
        assert doubled == pytest.approx(base, rel=1e-10)

    def test_half_pulse_from_superposition_order_of_magnitude(self):
        # phase-fluctuation error of the superposition gate: loose band only
        p = jc_gate_error(math.pi / 2, PureState.superposition(1.0, 1.0), 400)
        assert 0.05 <= p * 400 <= 1.0

    def test_semiclassical_floor(self):
        with pytest.raises(InvalidStateError, match="semiclassical"):
            jc_gate_error(math.pi, PureState.ground(), 9.0)

    def test_supported_areas_only(self):
        with pytest.raises(InvalidStateError, match="pulse areas"):
            jc_gate_error(0.7, PureState.ground(), 400)

    def test_coupling_drops_out(self):
        a = jc_gate_error(math.pi, PureState.ground(), 100, g=1.0)
        b = jc_gate_error(math.pi, PureState.ground(), 100, g=3.5)
        assert a == pytest.approx(b, rel=1e-12)


class TestGuards:
    def test_revival_regime_rejected(self):
        field = CoherentField(alpha=5.0)
        limit = 5.0 * 2.0 * math.pi / (2.0 * 5.0)  # five mean-field Rabi periods at g=1
        with pytest.raises(InvalidStateError, match="Rabi periods"):
            jc_evolve(PureState.ground(), field, 1.0, 1.01 * limit)

    def test_negative_duration_rejected(self):
        with pytest.raises(InvalidStateError):
            jc_evolve(PureState.ground(), CoherentField(alpha=1.0), 1.0, -0.1)

    def test_fock_atom_state_rejected(self):
        from lasergate.qcore import ATOM_FOCK

        psi = PureState(np.array([1, 0, 0]), basis_label=ATOM_FOCK)
        with pytest.raises(InvalidStateError):
            jc_evolve(psi, CoherentField(alpha=1.0), 1.0, 0.1)


class TestJCSystem:
    def test_system_evolve_delegates(self):
        field = CoherentField(alpha=2.0)
        system = JCSystem(coupling=1.0, field=field)
        direct = jc_evolve(PureState.excited(), field, 1.0, 0.3)
        assert np.array_equal(system.evolve(PureState.excited(), 0.3).matrix, direct.matrix)

    def test_positive_coupling_required(self):
        with pytest.raises(InvalidStateError):
            JCSystem(coupling=0.0, field=CoherentField(alpha=1.0))

    def test_returned_state_has_unit_trace(self):
        rho = jc_evolve(PureState.superposition(1.0, -1.0), CoherentField(alpha=3.0), 1.0, 0.2)
        assert abs(np.trace(rho.matrix) - 1.0) <= 1e-12
