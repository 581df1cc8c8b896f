"""Gate experiments on the driven atom: failure probabilities and their
first-order scaling in the decay-to-drive ratio.

A gate is a resonant pulse of area theta applied to a chosen initial state.
Its failure probability is one minus the fidelity against the decay-free
evolution of the same Hamiltonian, so p(ratio=0) = 0 by construction and
p = c * (kappa / g_alpha) to first order.  ``extract_coefficient`` measures c
by a through-origin fit over a perturbative ratio grid and converts it to the
photon-number form p = c' / nbar using c' = c * theta / 2 (see
``budget.photon_coefficient``).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import budget
from .lindblad import (
    LASER_MODES_KAPPA,
    ALL_VACUUM_GAMMA,
    DecaySpec,
    IntegratorConfig,
    PulseSpec,
    evolve,
)
from .qcore import InvalidStateError, PureState, fidelity_pure, make_operator

# Ratios above this are outside the perturbative regime the linear fit assumes.
PERTURBATIVE_RATIO_MAX = 1e-2

# Relative RMS residual above which a fit is flagged as degraded.
FIT_RESIDUAL_BOUND = 1e-3


@dataclass(frozen=True)
class GateExperiment:
    """A pulse area plus the state it is applied to."""

    pulse_area: float
    initial_state: PureState
    decay_label: str = LASER_MODES_KAPPA

    def __post_init__(self):
        if self.pulse_area < 0:
            raise InvalidStateError(f"pulse_area must be >= 0, got {self.pulse_area}")
        if self.initial_state.dim != 2:
            raise InvalidStateError("gate experiments are two-level only")
        if self.decay_label not in (LASER_MODES_KAPPA, ALL_VACUUM_GAMMA):
            raise InvalidStateError(f"unknown decay label {self.decay_label!r}")


@dataclass(frozen=True)
class ErrorCoefficient:
    """First-order error coefficients of one gate.

    ``coefficient_vs_ratio`` is c in p = c * (kappa/g_alpha);
    ``coefficient_vs_photons`` is c' in p = c'/nbar for a pulse carrying nbar
    photons over its own duration.  ``fit_residual`` is the RMS spread of the
    pointwise slopes p_i/ratio_i around c (same units as c).
    """

    coefficient_vs_ratio: float
    coefficient_vs_photons: float
    fit_residual: float
    degraded_fit: bool = False


def ideal_target(experiment: GateExperiment) -> PureState:
    """Decay-free output exp(-i theta sigma_x / 2) |psi0>."""
    theta = experiment.pulse_area
    sigma_x = make_operator("sigma_x", 2)
    u = np.cos(theta / 2.0) * np.eye(2) - 1j * np.sin(theta / 2.0) * sigma_x
    return PureState(u @ experiment.initial_state.amplitudes)


def failure_probability(experiment: GateExperiment, ratio: float,
                        config: IntegratorConfig = IntegratorConfig()) -> float:
    """Failure probability of one gate at a given kappa/g_alpha.

    Parameters
    ----------
    experiment : GateExperiment
        Pulse area and initial state.
    ratio : float
        Decay-to-drive ratio kappa / g_alpha, >= 0.
    config : IntegratorConfig
        Integrator settings used for the dissipative run.

    Returns
    -------
    float
        p = 1 - <psi_target| rho(T) |psi_target> in [0, 1], where the target
        is the decay-free evolution of the same initial state.
    """
    if ratio < 0:
        raise InvalidStateError(f"ratio must be >= 0, got {ratio}")
    pulse = PulseSpec(drive_coupling=1.0, pulse_area=experiment.pulse_area)
    decay = DecaySpec(rate=ratio, label=experiment.decay_label)
    result = evolve(experiment.initial_state.to_density(), pulse, decay, config)
    return 1.0 - fidelity_pure(result.final, ideal_target(experiment))


def default_ratio_grid(count: int = 8) -> np.ndarray:
    """Log-spaced perturbative grid, 1e-5 .. 1e-3."""
    return np.logspace(-5.0, -3.0, count)


def extract_coefficient(experiment: GateExperiment, ratios=None,
                        config: IntegratorConfig = IntegratorConfig()) -> ErrorCoefficient:
    """Measure the first-order error coefficient of a gate by a ratio sweep.

    Parameters
    ----------
    experiment : GateExperiment
    ratios : array-like, optional
        At least four strictly increasing positive ratios, all within the
        perturbative regime (<= 1e-2).  Defaults to ``default_ratio_grid()``.
    config : IntegratorConfig

    Returns
    -------
    ErrorCoefficient
        Through-origin least-squares slope c, its photon-number counterpart
        c' = c * theta / 2, and the fit residual.  ``degraded_fit`` is set when
        the residual exceeds 1e-3 * c instead of raising.
    """
    if ratios is None:
        ratios = default_ratio_grid()
    r = np.asarray(ratios, dtype=float)
    if r.size < 4:
        raise InvalidStateError(f"need at least 4 sweep ratios, got {r.size}")
    if np.any(r <= 0) or np.any(np.diff(r) <= 0):
        raise InvalidStateError("sweep ratios must be positive and strictly increasing")
    if float(r.max()) > PERTURBATIVE_RATIO_MAX:
        raise InvalidStateError(
            f"ratio {r.max():g} exceeds the perturbative bound {PERTURBATIVE_RATIO_MAX:g}"
        )
    p = np.array([failure_probability(experiment, ri, config) for ri in r])
    c = float(np.dot(p, r) / np.dot(r, r))  # least squares through the origin
    residual = float(np.sqrt(np.mean((p / r - c) ** 2)))
    c_prime = budget.photon_coefficient(c, experiment.pulse_area)
    return ErrorCoefficient(
        coefficient_vs_ratio=c,
        coefficient_vs_photons=c_prime,
        fit_residual=residual,
        degraded_fit=residual > FIT_RESIDUAL_BOUND * c,
    )


def sweep_failure_probabilities(experiment: GateExperiment, ratios,
                                config: IntegratorConfig = IntegratorConfig()) -> np.ndarray:
    """p(ratio) over an arbitrary non-negative grid (no perturbative restriction)."""
    return np.array([failure_probability(experiment, ri, config) for ri in np.asarray(ratios)])
