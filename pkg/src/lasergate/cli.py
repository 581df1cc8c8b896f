"""Command-line front end: simulate / sweep / budget / compare.

Usage:
    lasergate <command> [--config FILE] [--out FILE] [--key value ...]

Configs are flat ``key = value`` text files; any key can be overridden on the
command line.  All physical inputs are SI base units (m, s, W/m^2 via V/m,
C*m); no unit suffixes are parsed.  Output is CSV (or a text report for
``budget``) with LF line endings, a mandatory header row, ``#`` comment lines,
and floats printed to 12 significant digits, so identical configs produce
byte-identical output.

Exit codes: 0 success, 2 invalid config or parameter, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import budget, gates, jc
from .lindblad import (
    RK4_FIXED,
    RK45_ADAPTIVE,
    DecaySpec,
    IntegrationError,
    IntegratorConfig,
    PulseSpec,
    evolve,
)
from .qcore import InvalidStateError, PureState

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

COMMANDS = ("simulate", "sweep", "budget", "compare")

_REQUIRED = object()


class ConfigError(ValueError):
    """Invalid configuration; reported with exit code 2."""


def _fmt(x: float) -> str:
    """12 significant digits, scientific notation; the one float format used
    everywhere so output is reproducible byte for byte."""
    return f"{x:.11e}"


def _non_negative_int(raw: str) -> int:
    value = int(raw)
    if value < 0:
        raise ValueError("must be >= 0")
    return value


# key -> (converter, default); _REQUIRED means the key must be supplied.
_COMMON_INTEGRATOR_KEYS = {
    "method": (str, RK45_ADAPTIVE),
    "step_count": (_non_negative_int, 1000),
    "rtol": (float, 1e-10),
}

KEY_SCHEMAS: dict[str, dict] = {
    "simulate": {
        "theta": (float, math.pi),
        "ratio": (float, 0.0),
        "start": (str, "ground"),
        "samples": (_non_negative_int, 200),
        "format": (str, "csv"),
        **_COMMON_INTEGRATOR_KEYS,
    },
    "sweep": {
        "gate": (str, "pi"),
        "start": (str, "ground"),
        "ratio_min": (float, 1e-5),
        "ratio_max": (float, 1e-3),
        "points": (_non_negative_int, 8),
        "format": (str, "csv"),
        **_COMMON_INTEGRATOR_KEYS,
    },
    "budget": {
        "wavelength": (float, _REQUIRED),
        "mode_area": (float, _REQUIRED),
        "dipole": (float, _REQUIRED),
        "field_amplitude": (float, _REQUIRED),
        "epsilon": (float, 1e-4),
        "duration": (float, None),
        "raman_detuning": (float, None),
        "area_sweep_points": (_non_negative_int, 7),
        "area_sweep_max_factor": (float, 1e6),
        "format": (str, "text"),
    },
    "compare": {
        "gate": (str, "pi"),
        "start": (str, "ground"),
        "n_bars": (str, "100,400,1600"),
        "format": (str, "csv"),
        **_COMMON_INTEGRATOR_KEYS,
    },
}

GATE_AREAS = {"pi": math.pi, "pi2": math.pi / 2.0}
START_STATES = {
    "ground": PureState.ground,
    "excited": PureState.excited,
    "plus": lambda: PureState.superposition(1.0, 1.0),
}


def parse_config_file(path: str) -> dict[str, str]:
    """Read a flat ``key = value`` file; ``#`` lines and blanks are skipped."""
    raw: dict[str, str] = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path!r}: {exc}") from exc
    for lineno, line in enumerate(lines, start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        if "=" not in text:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {text!r}")
        key, _, value = text.partition("=")
        raw[key.strip()] = value.strip()
    return raw


def _coerce(command: str, raw: dict[str, str]) -> dict:
    schema = KEY_SCHEMAS[command]
    cfg = {}
    for key, value in raw.items():
        if key not in schema:
            raise ConfigError(f"unknown key {key!r} for command {command!r}")
        converter, _ = schema[key]
        try:
            cfg[key] = converter(value)
        except ValueError as exc:
            raise ConfigError(f"invalid value for {key!r}: {value!r} ({exc})") from exc
    for key, (_, default) in schema.items():
        if key in cfg:
            continue
        if default is _REQUIRED:
            raise ConfigError(f"missing required key {key!r} for command {command!r}")
        cfg[key] = default
    return cfg


def _integrator_config(cfg: dict, record_trajectory: bool = False,
                       sample_count: int = 200) -> IntegratorConfig:
    if cfg["method"] not in (RK4_FIXED, RK45_ADAPTIVE):
        raise ConfigError(f"unknown method {cfg['method']!r}")
    return IntegratorConfig(
        method=cfg["method"],
        step_count=cfg["step_count"],
        rtol=cfg["rtol"],
        record_trajectory=record_trajectory,
        sample_count=sample_count,
    )


def _start_state(name: str) -> PureState:
    if name not in START_STATES:
        raise ConfigError(f"unknown start state {name!r}; choose from {sorted(START_STATES)}")
    return START_STATES[name]()


def _gate_area(name: str) -> float:
    if name not in GATE_AREAS:
        raise ConfigError(f"unknown gate {name!r}; choose from {sorted(GATE_AREAS)}")
    return GATE_AREAS[name]


def _require_csv(cfg: dict, command: str) -> None:
    if cfg["format"] != "csv":
        raise ConfigError(f"command {command!r} emits csv only, got format={cfg['format']!r}")


def run_simulate(cfg: dict) -> str:
    """Trajectory CSV: t, populations, coherence, purity at samples+1 times."""
    _require_csv(cfg, "simulate")
    if cfg["samples"] < 1:
        raise ConfigError("samples must be >= 1")
    state = _start_state(cfg["start"])
    pulse = PulseSpec(drive_coupling=1.0, pulse_area=cfg["theta"])
    decay = DecaySpec(rate=cfg["ratio"])
    config = _integrator_config(cfg, record_trajectory=True, sample_count=cfg["samples"])
    result = evolve(state.to_density(), pulse, decay, config)

    lines = ["t,rho_bb,rho_aa,re_rho_ab,im_rho_ab,purity"]
    for t, rho in result.trajectory:
        m = rho.matrix
        lines.append(
            ",".join(
                _fmt(v)
                for v in (t, m[0, 0].real, m[1, 1].real, m[1, 0].real, m[1, 0].imag, rho.purity())
            )
        )
    return "\n".join(lines) + "\n"


def run_sweep(cfg: dict) -> str:
    """Ratio sweep CSV with a fitted-coefficient footer."""
    _require_csv(cfg, "sweep")
    if cfg["points"] < 1:
        raise ConfigError("empty ratio grid: points must be >= 1")
    if not (0 < cfg["ratio_min"] < cfg["ratio_max"]):
        raise ConfigError("need 0 < ratio_min < ratio_max")
    experiment = gates.GateExperiment(
        pulse_area=_gate_area(cfg["gate"]), initial_state=_start_state(cfg["start"])
    )
    ratios = np.logspace(
        math.log10(cfg["ratio_min"]), math.log10(cfg["ratio_max"]), cfg["points"]
    )
    config = _integrator_config(cfg)
    coeff = gates.extract_coefficient(experiment, ratios, config)
    probabilities = gates.sweep_failure_probabilities(experiment, ratios, config)

    lines = ["ratio,p"]
    for ratio, p in zip(ratios, probabilities):
        lines.append(f"{_fmt(ratio)},{_fmt(p)}")
    lines.append(
        f"# c={_fmt(coeff.coefficient_vs_ratio)}"
        f" c_prime={_fmt(coeff.coefficient_vs_photons)}"
        f" residual={_fmt(coeff.fit_residual)}"
    )
    return "\n".join(lines) + "\n"


def run_budget(cfg: dict) -> str:
    """Budget report: rates, photon numbers, constraint margins, area sweep."""
    if cfg["format"] not in ("text", "csv"):
        raise ConfigError(f"budget format must be text or csv, got {cfg['format']!r}")
    constants = budget.CODATA
    wavelength = cfg["wavelength"]
    omega = 2.0 * math.pi * constants.c / wavelength
    atom = budget.AtomModel(transition_frequency=omega, dipole_moment=cfg["dipole"])
    beam = budget.BeamGeometry(wavelength=wavelength, mode_area=cfg["mode_area"])
    field = budget.FieldSpec(amplitude=cfg["field_amplitude"])

    gamma = atom.decay_rate(constants)
    kappa = budget.kappa_from_beam(atom, beam, constants)
    rabi = field.rabi_frequency(atom, constants)
    duration = cfg["duration"] if cfg["duration"] is not None else math.pi / rabi
    photons = budget.photon_budget(atom, beam, field, duration, cfg["epsilon"], constants)
    constraint = budget.min_photon_constraint(atom, field, beam, duration, cfg["epsilon"], constants)
    margins = budget.spontaneous_emission_margins(
        atom, field, beam, duration, cfg["epsilon"], constants
    )
    density_bound = budget.energy_density_bound(duration, cfg["epsilon"], wavelength, constants)

    if cfg["area_sweep_points"] < 2:
        raise ConfigError("area_sweep_points must be >= 2")
    if cfg["area_sweep_max_factor"] <= 1:
        raise ConfigError("area_sweep_max_factor must be > 1")
    sigma_eff = beam.scattering_cross_section
    areas = np.geomspace(
        sigma_eff, sigma_eff * cfg["area_sweep_max_factor"], cfg["area_sweep_points"]
    )
    sweep = budget.fixed_intensity_area_sweep(atom, field, wavelength, areas, constants)

    scalars = [
        ("wavelength_m", wavelength),
        ("mode_area_m2", beam.mode_area),
        ("omega_rad_per_s", omega),
        ("sigma_eff_m2", sigma_eff),
        ("gamma_per_s", gamma),
        ("kappa_per_s", kappa),
        ("rabi_frequency_rad_per_s", rabi),
        ("intensity_W_per_m2", photons.intensity),
        ("power_W", photons.power),
        ("duration_s", duration),
        ("epsilon", cfg["epsilon"]),
        ("n_bar", photons.n_bar),
        ("n_bar_prime", photons.n_bar_prime),
        ("required_n_bar_prime", constraint.required_n_bar_prime),
        ("energy_in_volume_J", constraint.energy_in_volume),
        ("energy_threshold_J", constraint.energy_threshold),
        ("constraint_margin", constraint.margin),
        ("margin_purity_form", margins.purity_form),
        ("margin_rabi_form", margins.rabi_form),
        ("margin_explicit_form", margins.explicit_form),
        ("margin_energy_form", margins.energy_form),
        ("min_energy_per_lambda3_J", density_bound.energy_per_wavelength_cubed),
    ]
    verdicts = [("photon_constraint", "satisfied" if constraint.satisfied else "violated")]

    raman_lines: list[tuple[str, float]] = []
    if cfg["raman_detuning"] is not None:
        raman = budget.RamanSpec(detuning=cfg["raman_detuning"], rabi_frequency=rabi)
        raman_duration = math.pi / raman.effective_rabi_frequency
        report = budget.raman_constraint(raman, gamma, raman_duration, cfg["epsilon"])
        raman_lines = [
            ("raman_detuning_rad_per_s", raman.detuning),
            ("raman_effective_rabi_rad_per_s", raman.effective_rabi_frequency),
            ("raman_duration_s", raman_duration),
            ("raman_purity_loss", report.purity_loss),
            ("raman_margin", report.margin),
            ("raman_eliminated_coefficient", report.eliminated_coefficient),
            ("resonant_chain_coefficient", report.resonant_chain_coefficient),
            ("raman_coefficient_gap", report.coefficient_gap),
        ]
        verdicts.append(("raman_constraint", "satisfied" if report.satisfied else "violated"))

    table_header = "area,kappa,kappa_times_area,n_bar,p_laser,p_total"
    table_rows = [
        ",".join(
            _fmt(v)
            for v in (
                row.area,
                row.kappa,
                row.kappa_times_area,
                row.n_bar,
                row.laser_mode_error,
                row.total_error,
            )
        )
        for row in sweep
    ]

    if cfg["format"] == "csv":
        lines = [f"# {name}={_fmt(value)}" for name, value in scalars + raman_lines]
        lines += [f"# {name}={value}" for name, value in verdicts]
        lines.append(table_header)
        lines += table_rows
        return "\n".join(lines) + "\n"

    width = max(len(name) for name, _ in scalars + raman_lines + verdicts)
    lines = ["laser pulse budget (SI base units)", ""]
    lines += [f"{name:<{width}} = {_fmt(value)}" for name, value in scalars]
    lines += [f"{name:<{width}} = {value}" for name, value in verdicts[:1]]
    if raman_lines:
        lines.append("")
        lines += [f"{name:<{width}} = {_fmt(value)}" for name, value in raman_lines]
        lines += [f"{name:<{width}} = {value}" for name, value in verdicts[1:]]
    lines += ["", "fixed-intensity area sweep (kappa * A = Gamma * sigma_eff):", table_header]
    lines += table_rows
    return "\n".join(lines) + "\n"


def run_compare(cfg: dict) -> str:
    """Markov vs single-mode failure probabilities on a shared photon grid."""
    _require_csv(cfg, "compare")
    theta = _gate_area(cfg["gate"])
    state = _start_state(cfg["start"])
    try:
        n_bars = [float(tok) for tok in cfg["n_bars"].split(",") if tok.strip()]
    except ValueError as exc:
        raise ConfigError(f"invalid n_bars list {cfg['n_bars']!r}: {exc}") from exc
    if not n_bars:
        raise ConfigError("n_bars must list at least one photon number")
    if any(nb < 25 for nb in n_bars):
        raise ConfigError("photon numbers must be >= 25 (semiclassical regime)")

    experiment = gates.GateExperiment(pulse_area=theta, initial_state=state)
    config = _integrator_config(cfg)
    lines = ["model,gate,n_bar,p,p_times_n_bar"]
    for n_bar in n_bars:
        ratio = budget.drive_ratio_for_photons(theta, n_bar)
        p_markov = gates.failure_probability(experiment, ratio, config)
        p_jc = jc.jc_gate_error(theta, state, n_bar)
        for model, p in (("markov", p_markov), ("jc", p_jc)):
            lines.append(f"{model},{cfg['gate']},{_fmt(n_bar)},{_fmt(p)},{_fmt(p * n_bar)}")
    return "\n".join(lines) + "\n"


RUNNERS = {
    "simulate": run_simulate,
    "sweep": run_sweep,
    "budget": run_budget,
    "compare": run_compare,
}


def _overrides_from_extras(extras: list[str]) -> dict[str, str]:
    overrides = {}
    i = 0
    while i < len(extras):
        token = extras[i]
        if not token.startswith("--") or len(token) == 2:
            raise ConfigError(f"expected --key value pairs, got {token!r}")
        if "=" in token:
            key, _, value = token[2:].partition("=")
            i += 1
        else:
            if i + 1 >= len(extras):
                raise ConfigError(f"option {token!r} is missing a value")
            key, value = token[2:], extras[i + 1]
            i += 2
        overrides[key.replace("-", "_")] = value
    return overrides


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="lasergate",
        description="Gate-error simulator and photon/energy budget calculator "
        "for laser-driven two-level atoms.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, help=f"run the {name} command")
        p.add_argument("--config", help="flat key = value config file")
        p.add_argument("--out", help="output file (default: stdout)")

    try:
        args, extras = parser.parse_known_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code not in (0, None) else EXIT_OK

    try:
        raw = parse_config_file(args.config) if args.config else {}
        raw.update(_overrides_from_extras(extras))
        cfg = _coerce(args.command, raw)
        output = RUNNERS[args.command](cfg)
    except IntegrationError as exc:
        print(f"error: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ConfigError, InvalidStateError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(output)
        except OSError as exc:
            print(f"error: cannot write {args.out!r}: {exc}", file=sys.stderr)
            return EXIT_CONFIG
    else:
        sys.stdout.write(output)
    return EXIT_OK


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
