"""Command-line front end: ``gasflow <subcommand> --config <path> [--out <dir>]``.

Exit status: 0 success, 1 bad configuration, 2 solver failure,
3 verification failure.
"""
from __future__ import annotations

import argparse
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import oracles, phase, singularity, solution, thermo, verify
from .config import ScenarioConfig, thread_cap, write_csv
from .errors import ConfigError, ConvergenceFailure, DomainError, GasflowError, InvalidParameter

EXIT_OK, EXIT_CONFIG, EXIT_SOLVER, EXIT_VERIFY = 0, 1, 2, 3

BINODAL_POINTS = 100
SHOCK_SAMPLES = 200
PHASE_TIMES = 100
CAUSTIC_SAMPLES = 2001

log = logging.getLogger("gasflow")


def _grid(cfg):
    lo, hi = cfg.rho_range
    return np.linspace(lo, hi, cfg.samples)


def cmd_thermo(cfg, out: Path):
    model = cfg.thermo_model()
    rho = _grid(cfg)
    rows = []
    for T in cfg.isotherms:
        p = thermo.pressure(model, T, rho)
        rows += [(T, r, v) for r, v in zip(rho, p)]
    written = [write_csv(out / "isotherms.csv", ["T", "rho", "p"], rows)]
    if model.is_vdw:
        T_sp = thermo.spinodal_T(model, rho)
        p_sp = thermo.pressure(model, T_sp, rho)
        written.append(write_csv(out / "spinodal.csv", ["rho", "T", "p"], zip(rho, T_sp, p_sp)))
        curve = phase.binodal_curve(model, *cfg.T_range, BINODAL_POINTS)
        written.append(write_csv(
            out / "binodal.csv", ["T", "p", "rho_gas", "rho_liq"], (b.as_tuple() for b in curve)
        ))
    else:
        print("ideal gas: no spinodal or binodal to write")
    return written


def cmd_profile(cfg, out: Path):
    c = cfg.constants()

    def one(t):
        return solution.density_profile(c, t, cfg.rho_range, cfg.samples)

    with ThreadPoolExecutor(max_workers=thread_cap()) as pool:
        profiles = list(pool.map(one, cfg.times))
    rows = []
    for prof in profiles:
        rows += [(prof.t, int(b), r, x, u) for b, r, x, u in zip(prof.branch_id, prof.rho, prof.x, prof.u)]
        print(f"t={prof.t:g}: {prof.n_branches} branch(es), {len(prof.excluded)} excluded densities")
    return [write_csv(out / "profile.csv", ["t", "branch_id", "rho", "x", "u"], rows)]


def cmd_caustic(cfg, out: Path):
    c = cfg.constants()
    rows = []
    for br in singularity.caustic(c, cfg.rho_range, CAUSTIC_SAMPLES):
        label = "+" if br.sign is singularity.Sign.PLUS else "-"
        rows += [(label, r, t, x) for r, t, x in zip(br.rho, br.t, br.x)]
    return [write_csv(out / "caustic.csv", ["sign", "rho", "t", "x"], rows)]


def cmd_shock(cfg, out: Path):
    c = cfg.constants()
    front = singularity.shock_front_curve(c, cfg.t_max, SHOCK_SAMPLES)
    rows = [(p.t, p.x_s, p.rho1, p.rho2) for p in front.points]
    return [write_csv(out / "shock.csv", ["t", "x_s", "rho1", "rho2"], rows)]


def cmd_phase_curve(cfg, out: Path):
    c = cfg.constants()
    model, s0 = cfg.thermo_model(), cfg.entropy_level()
    pts = singularity.phase_transition_curve(c, model, s0, (0.0, cfg.t_max), PHASE_TIMES, cfg.rho_range)
    rows = [(p.t, p.x, p.rho, p.side.value) for p in pts]
    written = [write_csv(out / "phase_curve.csv", ["t", "x", "rho", "side"], rows)]
    if cfg.t_max > singularity.breakdown_time(c):
        for hit in singularity.phase_shock_intersections(c, model, s0, cfg.t_max, SHOCK_SAMPLES, cfg.rho_range):
            print(f"meets the shock front at t={hit.t:.10g}, x={hit.x:.10g} (gap {hit.distance:.2e})")
    return written


def cmd_tstar(cfg, out: Path):
    c = cfg.constants()
    t_formula, t_min, rho_min, rel = verify.breakdown_agreement(c)
    print(f"t* (formula)      = {t_formula:.12f}")
    print(f"t* (minimization) = {t_min:.12f}  at rho = {rho_min:.12f}")
    print(f"relative difference {rel:.2e}")
    return []


def cmd_verify(cfg, out: Path):
    results = verify.run_all()
    for r in results:
        print(r.line())
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return EXIT_VERIFY if failed else []


COMMANDS = {
    "thermo": (cmd_thermo, "isotherms, spinodal and binodal of the gas model"),
    "profile": (cmd_profile, "density and velocity branches at the configured times"),
    "caustic": (cmd_caustic, "both caustic branches in the (t, x) plane"),
    "shock": (cmd_shock, "shock front from the cusp to t_max"),
    "phase-curve": (cmd_phase_curve, "image of the gas/liquid transition in the (t, x) plane"),
    "tstar": (cmd_tstar, "breakdown time from the closed form and by minimization"),
    "verify": (cmd_verify, "run every residual and oracle check"),
}


def build_parser():
    parser = argparse.ArgumentParser(prog="gasflow", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, helptext) in COMMANDS.items():
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--config", type=Path, help="JSON scenario file (defaults to the reference case)")
        p.add_argument("--out", type=Path, help="output directory (overrides output_dir)")
        if name == "profile":
            p.add_argument("--times", type=float, nargs="+", help="override the configured times")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = ScenarioConfig.load(args.config) if args.config else ScenarioConfig().validate()
        if getattr(args, "times", None):
            cfg.times = list(args.times)
        out = args.out or Path(cfg.output_dir)
        func = COMMANDS[args.command][0]
        result = func(cfg, out)
    except (ConfigError, InvalidParameter, DomainError) as exc:
        print(f"gasflow: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ConvergenceFailure as exc:
        print(f"gasflow: solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except GasflowError as exc:
        print(f"gasflow: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    if isinstance(result, int):
        return result
    for path in result:
        print(f"wrote {path}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
