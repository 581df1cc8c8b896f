"""Widen the beam at fixed intensity and watch the laser-mode decoherence
vanish while the all-modes error stands still.

Usage:
    python scripts/beam_area_paradox.py [--decades D]

The laser couples the atom only to the vacuum modes inside its acceptance
angle, so kappa = Gamma sigma_eff / A falls as 1/A; the full spontaneous rate
Gamma never changes.
"""

import argparse
import math

import numpy as np

from lasergate.budget import CODATA, AtomModel, FieldSpec, fixed_intensity_area_sweep


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--decades", type=int, default=6, help="area decades above sigma_eff")
    parser.add_argument("--wavelength", type=float, default=1e-6, help="wavelength in m")
    parser.add_argument("--dipole", type=float, default=1e-29, help="dipole moment in C m")
    parser.add_argument("--field", type=float, default=1e5, help="field amplitude in V/m")
    args = parser.parse_args()

    omega = 2 * math.pi * CODATA.c / args.wavelength
    atom = AtomModel(transition_frequency=omega, dipole_moment=args.dipole)
    field = FieldSpec(amplitude=args.field)
    sigma_eff = 3 * args.wavelength**2 / (8 * math.pi)
    areas = sigma_eff * np.logspace(0, args.decades, args.decades + 1)

    rows = fixed_intensity_area_sweep(atom, field, args.wavelength, areas)
    print(f"sigma_eff = {sigma_eff:.4e} m^2, Gamma = {atom.decay_rate():.4e} /s")
    print(f"\n{'A/sigma_eff':>12} {'kappa [1/s]':>12} {'kappa*A':>12} "
          f"{'nbar':>12} {'p_laser':>12} {'p_total':>12}")
    for row in rows:
        print(
            f"{row.area / sigma_eff:>12.1e} {row.kappa:>12.4e} {row.kappa_times_area:>12.4e} "
            f"{row.n_bar:>12.4e} {row.laser_mode_error:>12.4e} {row.total_error:>12.4e}"
        )


if __name__ == "__main__":
    main()
