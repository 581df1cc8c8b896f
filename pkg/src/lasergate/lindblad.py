"""Markovian master equation for a resonantly driven two-level atom.

The equation of motion integrated here is

    drho/dt = -i [H, rho] - (kappa/2) {sigma_+ sigma_-, rho}
              + kappa sigma_- rho sigma_+ ,      H = g_alpha (sigma_+ + sigma_-),

with hbar = 1 and the drive on resonance in the rotating frame.  The drive
coupling ``g_alpha`` sets the Rabi frequency Omega_R = 2 g_alpha, so a pulse
of area theta lasts T = theta / (2 g_alpha).

Internally the integrators work in scaled time tau = g_alpha * t, where the
dynamics depend only on the single dimensionless ratio kappa / g_alpha.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qcore import DensityMatrix, InvalidStateError, make_operator, max_abs

# Decay-channel labels: kappa counts only the vacuum modes co-propagating with
# the laser beam, Gamma the full free-space emission rate.  The labels do not
# change the equation of motion; they tag which physical rate was supplied.
LASER_MODES_KAPPA = "laser_modes_kappa"
ALL_VACUUM_GAMMA = "all_vacuum_gamma"

RK4_FIXED = "rk4_fixed"
RK45_ADAPTIVE = "rk45_adaptive"

# Default adaptive tolerance: gate errors of interest are ~1e-3..1e-7, so the
# integration error is kept at least two orders below that range.
DEFAULT_RTOL = 1e-10

_SIGMA_MINUS = make_operator("sigma_minus", 2)
_SIGMA_X = make_operator("sigma_x", 2)
_PROJ_EXCITED = make_operator("projector_excited", 2)


class IntegrationError(RuntimeError):
    """Adaptive step size underflowed; carries the last time reached."""

    def __init__(self, message: str, last_good_time: float):
        super().__init__(message)
        self.last_good_time = last_good_time


@dataclass(frozen=True)
class PulseSpec:
    """Resonant drive pulse: coupling g_alpha and rotation area theta = Omega_R T."""

    drive_coupling: float
    pulse_area: float

    def __post_init__(self):
        if self.drive_coupling < 0:
            raise InvalidStateError(f"drive_coupling must be >= 0, got {self.drive_coupling}")
        if self.pulse_area < 0:
            raise InvalidStateError(f"pulse_area must be >= 0, got {self.pulse_area}")
        if self.pulse_area > 0 and self.drive_coupling == 0:
            raise InvalidStateError("nonzero pulse area requires drive_coupling > 0")

    @property
    def rabi_frequency(self) -> float:
        return 2.0 * self.drive_coupling

    @property
    def duration(self) -> float:
        if self.pulse_area == 0.0:
            return 0.0
        return self.pulse_area / (2.0 * self.drive_coupling)


@dataclass(frozen=True)
class DecaySpec:
    """Single amplitude-damping channel at the given rate (same units as g_alpha)."""

    rate: float
    label: str = LASER_MODES_KAPPA

    def __post_init__(self):
        if self.rate < 0:
            raise InvalidStateError(f"decay rate must be >= 0, got {self.rate}")
        if self.label not in (LASER_MODES_KAPPA, ALL_VACUUM_GAMMA):
            raise InvalidStateError(f"unknown decay label {self.label!r}")


@dataclass(frozen=True)
class IntegratorConfig:
    method: str = RK45_ADAPTIVE
    step_count: int = 1000
    rtol: float = DEFAULT_RTOL
    record_trajectory: bool = False
    sample_count: int = 200

    def __post_init__(self):
        if self.method not in (RK4_FIXED, RK45_ADAPTIVE):
            raise InvalidStateError(f"unknown integrator method {self.method!r}")
        if self.method == RK4_FIXED and self.step_count < 100:
            raise InvalidStateError(
                f"rk4_fixed needs step_count >= 100 per pulse, got {self.step_count}"
            )
        if self.method == RK45_ADAPTIVE and not (1e-12 <= self.rtol <= 1e-6):
            raise InvalidStateError(f"rk45_adaptive rtol must be in [1e-12, 1e-6], got {self.rtol}")
        if self.sample_count < 1:
            raise InvalidStateError("sample_count must be >= 1")


@dataclass(frozen=True)
class EvolutionResult:
    final: DensityMatrix
    trajectory: list[tuple[float, DensityMatrix]] | None = None


def _rhs_scaled(rho: np.ndarray, ratio: float) -> np.ndarray:
    # d rho / d tau with tau = g_alpha t, drive coupling 1, ratio = kappa/g_alpha.
    h_rho = _SIGMA_X @ rho
    comm = h_rho - h_rho.conj().T  # [H, rho] for Hermitian rho
    out = -1j * comm
    if ratio != 0.0:
        p_rho = _PROJ_EXCITED @ rho
        out = out + ratio * (
            _SIGMA_MINUS @ rho @ _SIGMA_MINUS.conj().T - 0.5 * (p_rho + p_rho.conj().T)
        )
    return out


def _rhs_decay_only(rho: np.ndarray) -> np.ndarray:
    # pure decay term (unit rate), used when the drive is off
    p_rho = _PROJ_EXCITED @ rho
    return _SIGMA_MINUS @ rho @ _SIGMA_MINUS.conj().T - 0.5 * (p_rho + p_rho.conj().T)


def lindblad_rhs(rho: DensityMatrix, pulse: PulseSpec, decay: DecaySpec) -> np.ndarray:
    """Right-hand side drho/dt in the caller's time units.

    The result of the Lindblad form is traceless and Hermitian; both are
    asserted to 1e-12 before returning.
    """
    if rho.dim != 2:
        raise InvalidStateError("the driven-atom equation of motion is two-level only")
    g = pulse.drive_coupling
    if g > 0:
        out = g * _rhs_scaled(rho.matrix, decay.rate / g)
    else:
        out = decay.rate * _rhs_decay_only(rho.matrix)
    if abs(out.trace()) > 1e-12:
        raise InvalidStateError(f"RHS trace residue {abs(out.trace()):.3e}")
    if max_abs(out - out.conj().T) > 1e-12:
        raise InvalidStateError("RHS is not Hermitian within 1e-12")
    return out


def _hermitize(rho: np.ndarray) -> np.ndarray:
    return 0.5 * (rho + rho.conj().T)


def _rk4_segment(rho: np.ndarray, ratio: float, tau: float, steps: int) -> np.ndarray:
    h = tau / steps
    for _ in range(steps):
        k1 = _rhs_scaled(rho, ratio)
        k2 = _rhs_scaled(rho + 0.5 * h * k1, ratio)
        k3 = _rhs_scaled(rho + 0.5 * h * k2, ratio)
        k4 = _rhs_scaled(rho + h * k3, ratio)
        rho = rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        rho = _hermitize(rho)
    return rho


# Dormand-Prince 5(4) embedded pair.
_DP_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_DP_A = [
    [],
    [1 / 5],
    [3 / 40, 9 / 40],
    [44 / 45, -56 / 15, 32 / 9],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
    [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
]
_DP_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_DP_B4 = np.array(
    [5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40]
)


def adaptive_rk45(deriv, y0: np.ndarray, t0: float, t1: float, rtol: float,
                  min_step: float) -> np.ndarray:
    """Embedded Dormand-Prince 5(4) integrator for complex array-valued ODEs.

    ``deriv(t, y)`` must return an array of y's shape.  Raises
    :class:`IntegrationError` if the accepted step falls below ``min_step``.
    """
    span = t1 - t0
    if span == 0.0:
        return y0.copy()
    y = y0.copy()
    t = t0
    h = span / 50.0
    atol = 1e-14  # entries of rho are O(1); absolute floor guards zeros
    while t < t1:
        if h < min_step:
            raise IntegrationError(
                f"adaptive step underflow: h={h:.3e} below {min_step:.3e}", last_good_time=t
            )
        # the finishing step is clipped to the remaining span, however small
        final = h >= t1 - t
        h_step = t1 - t if final else h
        ks = []
        for i in range(7):
            yi = y
            for a, k in zip(_DP_A[i], ks):
                yi = yi + (h_step * a) * k
            ks.append(deriv(t + _DP_C[i] * h_step, yi))
        y5 = y
        for b, k in zip(_DP_B5, ks):
            if b != 0.0:
                y5 = y5 + (h_step * b) * k
        err = np.zeros_like(y)
        for b5, b4, k in zip(_DP_B5, _DP_B4, ks):
            err = err + (h_step * (b5 - b4)) * k
        scale = atol + rtol * max(max_abs(y), max_abs(y5))
        err_norm = max_abs(err) / scale
        if err_norm <= 1.0:
            t = t1 if final else t + h_step
            y = y5
            if err_norm == 0.0:
                h = h_step * 5.0
            else:
                h = h_step * min(5.0, max(0.2, 0.9 * err_norm ** -0.2))
        else:
            h = h_step * max(0.2, 0.9 * err_norm ** -0.2)
    return y


def evolve(rho0: DensityMatrix, pulse: PulseSpec, decay: DecaySpec,
           config: IntegratorConfig = IntegratorConfig()) -> EvolutionResult:
    """Evolve ``rho0`` through one pulse; all state invariants are re-validated
    at the final time and at every recorded sample.

    Returns the final state, plus the (t, rho) samples at
    ``config.sample_count + 1`` uniformly spaced times when
    ``config.record_trajectory`` is set.
    """
    if rho0.dim != 2:
        raise InvalidStateError("evolve handles the two-level atom only")
    g = pulse.drive_coupling
    theta = pulse.pulse_area
    if theta == 0.0 or g == 0.0:
        traj = None
        if config.record_trajectory:
            traj = [(0.0, rho0) for _ in range(config.sample_count + 1)]
        return EvolutionResult(final=rho0, trajectory=traj)

    ratio = decay.rate / g
    tau_end = theta / 2.0  # scaled duration: g_alpha * T
    n_segments = config.sample_count if config.record_trajectory else 1

    rho = rho0.matrix.copy()
    samples: list[tuple[float, DensityMatrix]] = [(0.0, rho0)]
    tau_grid = np.linspace(0.0, tau_end, n_segments + 1)
    if config.method == RK4_FIXED:
        steps_per_segment = max(1, -(-config.step_count // n_segments))  # ceil division
        for i in range(n_segments):
            rho = _rk4_segment(rho, ratio, tau_grid[i + 1] - tau_grid[i], steps_per_segment)
            if config.record_trajectory:
                samples.append((tau_grid[i + 1] / g, DensityMatrix(rho)))
    else:
        min_step = 1e-12 * tau_end
        for i in range(n_segments):
            rho = adaptive_rk45(
                lambda _t, y: _rhs_scaled(y, ratio),
                rho, tau_grid[i], tau_grid[i + 1], config.rtol, min_step,
            )
            rho = _hermitize(rho)
            if config.record_trajectory:
                samples.append((tau_grid[i + 1] / g, DensityMatrix(rho)))

    final = DensityMatrix(rho)
    return EvolutionResult(final=final, trajectory=samples if config.record_trajectory else None)
