"""Command-line front end: spectra, wavefunction tables, S-matrix sweeps,
the self-energy estimate, and the verification suite.

Output is deterministic (identical configuration gives byte-identical
files): CSV with ``#``-prefixed header lines echoing the configuration, or
JSON with the fixed key order {config, columns, rows, residuals?}.  All
energies are in hbar = m = 1 units.  Exit codes: 0 success, 1 verification
failure or internal error, 2 usage/configuration error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import __version__, radial, scattering, spectrum, verify
from .fuzzy import Params

USAGE_ERROR = 2
FAILURE = 1


class UsageError(Exception):
    pass


def _fmt(x) -> str:
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _write_table(args, config: dict, columns: list[str], rows: list[list],
                 residuals=None) -> None:
    if args.format == "json":
        doc = {"config": {**config, "units": "hbar = m = 1"},
               "columns": columns, "rows": rows}
        if residuals is not None:
            doc["residuals"] = residuals
        text = json.dumps(doc, indent=2, default=_fmt) + "\n"
    else:
        lines = [f"# nccoulomb {config.get('command', '')} (units: hbar = m = 1)"]
        for key in sorted(config):
            if key != "command":
                lines.append(f"# {key} = {_fmt(config[key])}")
        lines.append(",".join(columns))
        for row in rows:
            lines.append(",".join(_fmt(v) for v in row))
        text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _params(args) -> Params:
    try:
        return Params(lam=args.lam, alpha=args.alpha)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _energy_grid(args) -> np.ndarray:
    if args.count < 1:
        raise UsageError("grid count must be >= 1")
    if not (math.isfinite(args.emin) and math.isfinite(args.emax)):
        raise UsageError("grid bounds must be finite")
    if args.spacing == "log":
        if args.emin <= 0 or args.emax <= 0:
            raise UsageError("log spacing needs positive energy bounds")
        return np.geomspace(args.emin, args.emax, args.count)
    return np.linspace(args.emin, args.emax, args.count)


def cmd_spectrum(args) -> int:
    if args.alpha == 0:
        raise UsageError("alpha = 0 has no bound states")
    if args.precision != "double":
        raise UsageError("spectrum supports --precision double only")
    params = _params(args)
    branch = spectrum.bound_energies_I if args.alpha > 0 else spectrum.bound_energies_II
    levels = branch(params, args.j, args.count)
    rows = []
    for lv in levels:
        e_comm = -args.alpha ** 2 / (2.0 * lv.n ** 2)
        rows.append([lv.branch, lv.n, lv.j, lv.E, lv.kappa, lv.omega,
                     e_comm, lv.E - e_comm])
    config = {"command": "spectrum", "lambda": args.lam, "alpha": args.alpha,
              "j": args.j, "count": args.count}
    _write_table(args, config,
                 ["branch", "n", "j", "E", "kappa", "omega",
                  "E_commutative", "delta_E"], rows)
    return 0


def cmd_wavefn(args) -> int:
    if args.precision == "rational":
        raise UsageError("rational precision is only valid for operations "
                         "with exact paths (see verify --precision rational)")
    params = _params(args)
    if (args.energy is None) == (args.bound_n is None):
        raise UsageError("give exactly one of --energy / --bound-n")
    if args.bound_n is not None:
        if args.alpha == 0:
            raise UsageError("alpha = 0 has no bound states")
        branch = (spectrum.bound_energies_I if args.alpha > 0
                  else spectrum.bound_energies_II)
        count = args.bound_n - args.j
        if count < 1:
            raise UsageError("need bound n >= j + 1")
        level = branch(params, args.j, count)[-1]
        seq = spectrum.bound_wavefunction(level, args.n_max)
        note = f"bound state branch {level.branch}, n = {level.n}, E = {level.E!r}"
    else:
        try:
            seq = radial.radial_closed_form(args.j, args.energy, params, args.n_max,
                                            extended=(args.precision == "extended"))
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        note = f"closed form, provenance {seq.provenance}"
    rows = []
    for n, v in enumerate(seq.values):
        v = complex(v)
        rows.append([n, params.lam * (n + 1), v.real, v.imag])
    config = {"command": "wavefn", "lambda": args.lam, "alpha": args.alpha,
              "j": args.j, "n_max": args.n_max,
              "normalization": "R(0) as printed (closed forms are unnormalized); "
              + note}
    if args.energy is not None:
        config["energy"] = args.energy
    if args.bound_n is not None:
        config["bound_n"] = args.bound_n
    _write_table(args, config, ["n", "r", "re_R", "im_R"], rows)
    return 0


def cmd_smatrix(args) -> int:
    if args.precision != "double":
        raise UsageError("smatrix supports --precision double only")
    params = _params(args)
    grid = _energy_grid(args)
    e_crit = params.e_crit
    if grid.min() <= 0 or grid.max() >= e_crit:
        raise UsageError(f"energy grid must lie inside (0, {e_crit!r})")
    deltas, flags = scattering.phase_shift_sweep(args.j, grid, params=params)
    qm_deltas, _ = scattering.phase_shift_sweep(args.j, grid, alpha=args.alpha)
    rows = []
    for energy, delta, delta_qm in zip(grid, deltas, qm_deltas):
        mom = scattering.p_of_E(energy, params)
        s = scattering.smatrix_nc(args.j, energy, params).S
        rows.append([float(energy), mom.p.real, mom.edge, s.real, s.imag,
                     float(delta), float(delta_qm)])
    config = {"command": "smatrix", "lambda": args.lam, "alpha": args.alpha,
              "j": args.j, "emin": args.emin, "emax": args.emax,
              "count": args.count, "spacing": args.spacing,
              "phase_jumps_flagged": int(flags.sum())}
    _write_table(args, config,
                 ["E", "p", "edge", "re_S", "im_S", "delta_j", "delta_j_QM"], rows)
    return 0


def cmd_verify(args) -> int:
    if args.precision == "extended":
        raise UsageError("verify supports --precision double or rational")
    cfg = verify.VerifyConfig(n_max=args.n_max, precision=args.precision)
    known = verify.suites()
    for name in args.suite:
        if name not in known:
            raise UsageError(f"unknown suite {name!r}; available: {', '.join(known)}")
    results = verify.run_checks(cfg, suites_filter=args.suite or None)
    if not results:
        raise UsageError("no checks selected (rational precision runs "
                         "exact-path checks only)")
    total = 0.0
    for r in results:
        mark = "PASS" if r.passed else "FAIL"
        print(f"{mark} {r.suite}/{r.name}: residual {r.residual:.3e} "
              f"(tolerance {r.tolerance:.1e}, {r.seconds:.2f} s) -- {r.detail}")
        total += r.seconds
    failures = [r for r in results if not r.passed]
    print(f"{len(results) - len(failures)}/{len(results)} checks passed "
          f"in {total:.1f} s")
    if args.output:
        doc = {
            "config": {"command": "verify", "n_max": args.n_max,
                       "precision": args.precision,
                       "suites": args.suite or known},
            "columns": ["suite", "name", "passed", "residual", "tolerance",
                        "seconds", "detail"],
            "rows": [[r.suite, r.name, r.passed, r.residual, r.tolerance,
                      r.seconds, r.detail] for r in results],
            "residuals": {f"{r.suite}/{r.name}": r.residual for r in results},
        }
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(json.dumps(doc, indent=2, default=_fmt) + "\n")
    if failures:
        print("failing checks: " + ", ".join(r.name for r in failures))
        return FAILURE
    return 0


def cmd_selfenergy(args) -> int:
    params = _params(args)
    trace = spectrum.self_energy_trace(args.n_max, params)
    constants = spectrum.load_constants(args.constants)
    est = spectrum.lambda0_estimate(constants)
    print(f"truncated self-energy trace (n_max = {args.n_max}): {trace.value!r}")
    print(f"analytic target (3/8) q^2 / lambda:               {trace.target!r}")
    print(f"tail bound:                                       {trace.tail_bound!r}")
    print(f"lambda0 = (3/8) e^2 / (m c^2) = {est.lambda0_m:.6e} m "
          f"(= {est.lambda0_over_r0} of the classical electron radius)")
    print(f"lambda0 / a0 = (3/8) alpha0^2 = {est.lambda0_over_a0:.6e}")
    print(f"level-shift scale (lambda0 / a0)^2 = (9/64) alpha0^4 = "
          f"{est.correction_scale:.6e}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nccoulomb",
        description="Coulomb problem on the fuzzy configuration space "
                    "(hbar = m = 1 units throughout).")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, lam_default=0.2):
        p.add_argument("--lambda", dest="lam", type=float, default=lam_default,
                       help="fuzziness length (default %(default)s)")
        p.add_argument("--alpha", type=float, default=1.0,
                       help="Coulomb strength q (default %(default)s)")
        p.add_argument("--j", type=int, default=0, help="partial wave")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--output", help="write the table here instead of stdout")
        p.add_argument("--precision", choices=("double", "extended", "rational"),
                       default="double")

    p = sub.add_parser("spectrum", help="bound-state energies on either branch")
    common(p)
    p.add_argument("--count", type=int, default=3, help="number of levels")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("wavefn", help="radial wave function table")
    common(p)
    p.add_argument("--energy", type=float, help="energy of the closed form")
    p.add_argument("--bound-n", type=int,
                   help="principal quantum number of a bound state")
    p.add_argument("--n-max", type=int, default=40, help="top Fock level")
    p.set_defaults(func=cmd_wavefn)

    p = sub.add_parser("smatrix", help="partial-wave S-matrix sweep")
    common(p)
    p.add_argument("--emin", type=float, required=True)
    p.add_argument("--emax", type=float, required=True)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--spacing", choices=("linear", "log"), default="linear")
    p.set_defaults(func=cmd_smatrix)

    p = sub.add_parser("verify", help="run the oracle/invariant suites")
    p.add_argument("--suite", action="append", default=[],
                   help="restrict to a suite (repeatable); available: "
                        + ", ".join(verify.suites()))
    p.add_argument("--n-max", type=int, default=40)
    p.add_argument("--precision", choices=("double", "extended", "rational"),
                   default="double")
    p.add_argument("--output", help="write a JSON report here")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("selfenergy", help="self-energy trace and lambda0")
    p.add_argument("--lambda", dest="lam", type=float, default=1.0)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--n-max", type=int, default=2000)
    p.add_argument("--constants",
                   help="constants file (key = value); overrides "
                        f"${spectrum.CONSTANTS_ENV} and the packaged defaults")
    p.set_defaults(func=cmd_selfenergy)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except Exception as exc:  # internal assertion
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return FAILURE


if __name__ == "__main__":
    sys.exit(main())
