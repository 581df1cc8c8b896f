"""Independent reference implementations used only by the tests.

Every routine here deliberately avoids the code paths under test:

* the driven-atom master equation is solved by exponentiating its 4x4
  superoperator (scipy expm), not by Runge-Kutta stepping;
* first-order error coefficients come from adaptive quadrature of the
  toggling-frame dissipator, not from a ratio sweep;
* the Jaynes-Cummings model is evolved by exponentiating the full joint
  Hamiltonian, not sector by sector.
"""

import numpy as np
from scipy.integrate import quad
from scipy.linalg import expm

SIGMA_MINUS = np.array([[0, 1], [0, 0]], dtype=complex)
SIGMA_PLUS = SIGMA_MINUS.conj().T
SIGMA_X = SIGMA_PLUS + SIGMA_MINUS
PROJ_EXCITED = SIGMA_PLUS @ SIGMA_MINUS
I2 = np.eye(2, dtype=complex)

GROUND = np.array([1, 0], dtype=complex)
EXCITED = np.array([0, 1], dtype=complex)
PLUS = np.array([1, 1], dtype=complex) / np.sqrt(2)


def liouvillian(ratio: float) -> np.ndarray:
    """4x4 generator of the driven-decaying atom in scaled time (g_alpha = 1),
    acting on row-major-vectorized rho: vec(A X B) = (A kron B^T) vec(X)."""
    lv = -1j * (np.kron(SIGMA_X, I2) - np.kron(I2, SIGMA_X.T))
    lv += ratio * (
        np.kron(SIGMA_MINUS, SIGMA_PLUS.T)
        - 0.5 * (np.kron(PROJ_EXCITED, I2) + np.kron(I2, PROJ_EXCITED.T))
    )
    return lv


def evolve_superop(rho0: np.ndarray, theta: float, ratio: float) -> np.ndarray:
    """rho(T) for a theta pulse via the matrix exponential of the superoperator."""
    tau = theta / 2.0  # scaled duration g_alpha * T
    return (expm(liouvillian(ratio) * tau) @ rho0.reshape(-1)).reshape(2, 2)


def ideal_state(psi0: np.ndarray, theta: float) -> np.ndarray:
    u = np.cos(theta / 2) * I2 - 1j * np.sin(theta / 2) * SIGMA_X
    return u @ psi0


def failure_superop(psi0: np.ndarray, theta: float, ratio: float) -> float:
    rho = evolve_superop(np.outer(psi0, psi0.conj()), theta, ratio)
    target = ideal_state(psi0, theta)
    return float(1.0 - np.real(target.conj() @ rho @ target))


def first_order_coefficient(psi0: np.ndarray, theta: float) -> float:
    """Slope of p versus kappa/g_alpha at zero decay.

    In the frame co-rotating with the ideal drive the dissipator is the only
    generator, so to first order
    p = kappa * int_0^T [ <P_a(t)> - |<sigma_-(t)>|^2 ] dt with the rotated
    operators evaluated in the initial state.
    """

    def integrand(t):
        psi = ideal_state(psi0, 2 * t)  # exp(-i sigma_x t) psi0
        p_a = float(np.real(psi.conj() @ PROJ_EXCITED @ psi))
        s = psi.conj() @ SIGMA_MINUS @ psi
        return p_a - abs(s) ** 2

    value, _ = quad(integrand, 0.0, theta / 2.0, epsabs=1e-14, epsrel=1e-13)
    return value


def jc_bruteforce(psi_atom: np.ndarray, alpha: float, n_max: int, g: float,
                  duration: float) -> np.ndarray:
    """Reduced atomic state from exponentiating the full joint JC Hamiltonian.

    Basis ordering: atom index slow, Fock index fast, field dim n_max + 2 so
    the top sector cannot leak.
    """
    dim_f = n_max + 2
    lower = np.diag(np.sqrt(np.arange(1, dim_f)), 1)  # annihilation operator
    h = g * (np.kron(SIGMA_PLUS, lower) + np.kron(SIGMA_MINUS, lower.conj().T))

    n = np.arange(n_max + 1, dtype=float)
    if alpha > 0:
        logw = -alpha**2 + n * np.log(alpha**2) - np.cumsum(
            np.concatenate(([0.0], np.log(n[1:])))
        )
        w = np.exp(logw)
        w /= w.sum()
        field = np.zeros(dim_f)
        field[: n_max + 1] = np.sqrt(w)
    else:
        field = np.zeros(dim_f)
        field[0] = 1.0

    psi = np.kron(psi_atom, field.astype(complex))
    psi = expm(-1j * h * duration) @ psi
    block = psi.reshape(2, dim_f)
    return block @ block.conj().T
