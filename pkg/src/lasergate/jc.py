"""Resonant Jaynes-Cummings evolution with a coherent field: the single-mode
cross-check for the Markovian gate errors.

Each excitation sector (|b, n+1>, |a, n>) is a closed two-level system rotating
at 2 g sqrt(n+1), so the joint state is propagated in closed form per sector
and summed over the (truncated, renormalized) Poisson amplitudes.  No ODE
integration is involved, which removes one error source from the model
comparison.

The semiclassical correspondence used throughout: a pulse of area theta lasts
T = theta / (2 g sqrt(nbar)), i.e. the mean-field Rabi frequency is
2 g sqrt(nbar), and the ideal target is the rotation exp(-i theta sigma_x / 2).
The field amplitude is taken real and positive; its phase is the same
convention fixed for the classical drive in :mod:`lasergate.lindblad`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .qcore import DensityMatrix, InvalidStateError, PureState, fidelity_pure, make_operator

POISSON_TAIL_TOL = 1e-10

# Stay within the first few mean-field Rabi periods; collapse and revival
# physics beyond that is out of scope for single-pulse gates.
MAX_RABI_PERIODS = 5.0


class TruncationError(InvalidStateError):
    """Fock-space truncation leaves more than the allowed Poisson tail mass."""


def _poisson_log_weights(n_bar: float, n_max: int) -> np.ndarray:
    n = np.arange(n_max + 1, dtype=float)
    return -n_bar + n * np.log(n_bar) - np.cumsum(np.concatenate(([0.0], np.log(n[1:]))))


@dataclass(frozen=True)
class CoherentField:
    """Coherent field of real amplitude alpha, truncated at ``n_max`` photons.

    The default truncation n_max = ceil(nbar + 10 sqrt(nbar)) + 12 keeps the
    discarded Poisson tail below 1e-10 for any nbar; an explicit n_max must
    satisfy n_max >= nbar + 10 sqrt(nbar) and the same tail bound.
    """

    alpha: float
    n_max: int | None = None

    def __post_init__(self):
        if self.alpha < 0:
            raise InvalidStateError("alpha is taken real and >= 0 by phase convention")
        n_bar = self.alpha ** 2
        floor = n_bar + 10.0 * math.sqrt(n_bar)
        if self.n_max is None:
            object.__setattr__(self, "n_max", int(math.ceil(floor)) + 12)
        elif self.n_max < floor:
            raise TruncationError(
                f"n_max={self.n_max} below nbar + 10 sqrt(nbar) = {floor:.2f}"
            )
        tail = self._tail_mass()
        if tail > POISSON_TAIL_TOL:
            raise TruncationError(f"Poisson tail beyond n_max is {tail:.3e} > {POISSON_TAIL_TOL}")

    def _tail_mass(self) -> float:
        if self.alpha == 0.0:
            return 0.0
        kept = np.exp(_poisson_log_weights(self.alpha ** 2, self.n_max)).sum()
        return float(max(0.0, 1.0 - kept))

    @property
    def mean_photons(self) -> float:
        return self.alpha ** 2

    def amplitudes(self) -> np.ndarray:
        """Renormalized Fock amplitudes sqrt(P_n), n = 0..n_max."""
        if self.alpha == 0.0:
            out = np.zeros(self.n_max + 1)
            out[0] = 1.0
            return out
        w = np.exp(_poisson_log_weights(self.alpha ** 2, self.n_max))
        w /= w.sum()
        return np.sqrt(w)


@dataclass(frozen=True)
class JCSystem:
    """Atom-field coupling g (1/time, scaled) with a coherent field."""

    coupling: float
    field: CoherentField

    def __post_init__(self):
        if self.coupling <= 0:
            raise InvalidStateError(f"coupling must be > 0, got {self.coupling}")

    def evolve(self, atom_start: PureState, duration: float) -> DensityMatrix:
        return jc_evolve(atom_start, self.field, self.coupling, duration)


def jc_evolve(atom_start: PureState, field: CoherentField, g: float,
              duration: float) -> DensityMatrix:
    """Joint unitary evolution for one pulse; returns the reduced atomic state.

    The b-amplitude array carries one extra Fock level so the top sector stays
    unitary; the joint norm is checked to 1e-9 before tracing out the field.
    """
    if atom_start.dim != 2:
        raise InvalidStateError("atomic state must be two-level")
    if g <= 0:
        raise InvalidStateError(f"coupling must be > 0, got {g}")
    if duration < 0:
        raise InvalidStateError(f"duration must be >= 0, got {duration}")
    mean_rabi = 2.0 * g * math.sqrt(max(field.mean_photons, 1.0))
    if duration > MAX_RABI_PERIODS * 2.0 * math.pi / mean_rabi:
        raise InvalidStateError(
            f"duration {duration:g} exceeds {MAX_RABI_PERIODS:g} mean-field Rabi periods; "
            "collapse/revival dynamics are out of scope"
        )

    n_max = field.n_max
    amps = field.amplitudes()
    c_ground = np.zeros(n_max + 2, dtype=complex)   # |b, n>, n = 0..n_max+1
    c_excited = np.zeros(n_max + 1, dtype=complex)  # |a, n>, n = 0..n_max
    c_ground[: n_max + 1] = atom_start.amplitudes[0] * amps
    c_excited[: n_max + 1] = atom_start.amplitudes[1] * amps

    # sector (|b, n+1>, |a, n>) rotates at angle g sqrt(n+1) t
    phi = g * duration * np.sqrt(np.arange(1, n_max + 2, dtype=float))
    cos_phi, sin_phi = np.cos(phi), np.sin(phi)
    b_upper = c_ground[1:].copy()
    c_ground[1:] = cos_phi * b_upper - 1j * sin_phi * c_excited
    c_excited[:] = cos_phi * c_excited - 1j * sin_phi * b_upper

    norm2 = float(np.real(np.vdot(c_ground, c_ground) + np.vdot(c_excited, c_excited)))
    if abs(norm2 - 1.0) > 1e-9:
        raise InvalidStateError(f"joint-state norm drifted: |psi|^2 = {norm2:.12g}")

    rho = np.empty((2, 2), dtype=complex)
    rho[0, 0] = np.vdot(c_ground, c_ground)
    rho[1, 1] = np.vdot(c_excited, c_excited)
    rho[1, 0] = np.sum(c_excited * np.conj(c_ground[: n_max + 1]))
    rho[0, 1] = np.conj(rho[1, 0])
    return DensityMatrix(rho / norm2)


def jc_gate_error(theta: float, atom_start: PureState, n_bar: float,
                  n_max: int | None = None, g: float = 1.0) -> float:
    """Failure probability of a theta pulse against its semiclassical target.

    Parameters
    ----------
    theta : float
        Pulse area, either pi or pi/2 (the semiclassical regime where the
        single-mode estimates are meaningful).
    atom_start : PureState
        Two-level initial state.
    n_bar : float
        Mean photon number of the coherent field, >= 25.
    n_max : int, optional
        Fock truncation override, forwarded to :class:`CoherentField`.
    g : float
        Atom-field coupling; the result is g-independent since the pulse time
        scales as 1/g.

    Returns
    -------
    float
        p = 1 - <target| rho_atom(T) |target> with T = theta / (2 g sqrt(nbar)).
    """
    if n_bar < 25:
        raise InvalidStateError(f"semiclassical regime requires nbar >= 25, got {n_bar}")
    if not (math.isclose(theta, math.pi) or math.isclose(theta, math.pi / 2)):
        raise InvalidStateError("supported pulse areas are pi and pi/2")
    field = CoherentField(alpha=math.sqrt(n_bar), n_max=n_max)
    duration = theta / (2.0 * g * math.sqrt(n_bar))
    rho = jc_evolve(atom_start, field, g, duration)

    sigma_x = make_operator("sigma_x", 2)
    u = np.cos(theta / 2.0) * np.eye(2) - 1j * np.sin(theta / 2.0) * sigma_x
    target = PureState(u @ atom_start.amplitudes)
    return 1.0 - fidelity_pure(rho, target)
