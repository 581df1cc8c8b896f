"""Markovian master equation versus exact single-mode Jaynes-Cummings: gate
error scaled by photon number, side by side.

Usage:
    python scripts/markov_vs_single_mode.py [--gate pi|pi2] [--start ground|excited|plus]

Both models predict p ~ const/nbar; the constants differ (0.93 vs 0.62 for a
pi pulse from the ground state).
"""

import argparse
import math

from lasergate.budget import drive_ratio_for_photons
from lasergate.gates import GateExperiment, failure_probability
from lasergate.jc import jc_gate_error
from lasergate.qcore import PureState

GATES = {"pi": math.pi, "pi2": math.pi / 2}
STARTS = {
    "ground": PureState.ground,
    "excited": PureState.excited,
    "plus": lambda: PureState.superposition(1.0, 1.0),
}


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--gate", choices=sorted(GATES), default="pi")
    parser.add_argument("--start", choices=sorted(STARTS), default="ground")
    parser.add_argument(
        "--n-bars", type=lambda s: [float(x) for x in s.split(",")],
        default=[100.0, 400.0, 1600.0, 6400.0],
    )
    args = parser.parse_args()

    theta = GATES[args.gate]
    state = STARTS[args.start]()
    experiment = GateExperiment(theta, state)

    print(f"gate {args.gate} from {args.start}")
    print(f"\n{'nbar':>8} {'p markov':>12} {'p jc':>12} {'p*nbar markov':>14} {'p*nbar jc':>11}")
    for n_bar in args.n_bars:
        p_markov = failure_probability(experiment, drive_ratio_for_photons(theta, n_bar))
        p_jc = jc_gate_error(theta, state, n_bar)
        print(
            f"{n_bar:>8.0f} {p_markov:>12.4e} {p_jc:>12.4e} "
            f"{p_markov * n_bar:>14.4f} {p_jc * n_bar:>11.4f}"
        )


if __name__ == "__main__":
    main()
