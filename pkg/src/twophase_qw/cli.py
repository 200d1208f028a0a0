"""Command-line front end.

Subcommands: ``simulate``, ``density``, ``timeavg``, ``verify``, ``sweep``.
All vector data goes to CSV with fixed 17-significant-digit floats; scalar
summaries go to JSON sidecars.  Exit codes: 0 success, 1 verification
failure, 2 usage/config error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from pathlib import Path

import numpy as np

from . import evolution, limits, verify
from .errors import ResourceError, WalkError
from .model import CoinParameters, InitialState, make_initial_state

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_RESOURCE = 3

_ANGLE_RE = re.compile(
    r"^\s*(?P<sign>[+-])?\s*(?P<coef>\d+(?:\.\d+)?)?\s*\*?\s*pi\s*(?:/\s*(?P<den>\d+(?:\.\d+)?))?\s*$"
)


def parse_angle(text: str) -> float:
    """Parse an angle given as a decimal or a rational multiple of pi.

    Accepts e.g. ``1.57``, ``pi``, ``2pi``, ``3pi/2``, ``-pi/4``, ``3*pi/2``.
    """
    m = _ANGLE_RE.match(text)
    if m is not None:
        value = float(m.group("coef") or 1.0) * math.pi
        if m.group("den"):
            value /= float(m.group("den"))
        return -value if m.group("sign") == "-" else value
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse angle {text!r}") from None


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def _write_csv(path: Path, header: str, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) if isinstance(v, float) else str(v) for v in row))
            fh.write("\n")


def _build_state(ns) -> tuple[CoinParameters, InitialState]:
    params = CoinParameters(ns.sigma_plus, ns.sigma_minus)
    init = make_initial_state(
        complex(ns.alpha_re, ns.alpha_im), complex(ns.beta_re, ns.beta_im)
    )
    return params, init


def cmd_simulate(ns) -> int:
    params, init = _build_state(ns)
    state = evolution.evolve(params, init, ns.t)
    dist = evolution.distribution(state)
    t = dist.t
    if t > 0 and ns.bin_width >= 2.0 / t:
        centers, density = evolution.binned_density(dist, ns.bin_width)
        jmax = (len(centers) - 1) // 2
        site_bins = np.floor(dist.positions / t / ns.bin_width + 0.5).astype(int)
        site_density = density[site_bins + jmax]
    else:
        # t too small for the requested bins: the whole mass sits in one bin.
        site_density = dist.probs / ns.bin_width
    rows = []
    for x, p, bd in zip(dist.positions, dist.probs, site_density):
        r = x / t if t > 0 else 0.0
        rows.append((int(x), float(r), float(p), float(t * p if t > 0 else p), float(bd)))
    _write_csv(Path(ns.out), "x,x_over_t,prob,t_prob,binned_density", rows)
    return EXIT_OK


def cmd_density(ns) -> int:
    if ns.grid_points < 3:
        print("grid-points must be at least 3", file=sys.stderr)
        return EXIT_CONFIG
    params, init = _build_state(ns)
    eps = 1e-6
    xs = np.linspace(-limits.SUPPORT_EDGE + eps, limits.SUPPORT_EDGE - eps, ns.grid_points)
    rows = []
    for x in xs:
        w = limits.weight(float(x), params, init)
        fk = limits.konno_density(float(x), limits.SUPPORT_EDGE)
        rows.append((float(x), w, fk, w * fk))
    out = Path(ns.out)
    _write_csv(out, "x,w,f_k,density", rows)
    c = limits.loc_mass(params, init)
    ac = limits.ac_mass(params, init)
    sidecar = out.with_suffix(".json")
    sidecar.write_text(
        json.dumps({"C": c, "ac_mass": ac, "sum": c + ac}, indent=2) + "\n",
        encoding="utf-8",
    )
    return EXIT_OK


def cmd_timeavg(ns) -> int:
    if ns.xmax < 0:
        print("xmax must be nonnegative", file=sys.stderr)
        return EXIT_CONFIG
    params, init = _build_state(ns)
    rows = [
        (x, limits.time_averaged_measure(x, params, init))
        for x in range(-ns.xmax, ns.xmax + 1)
    ]
    _write_csv(Path(ns.out), "x,mu_bar", rows)
    return EXIT_OK


def _run_suite(suite: str, params: CoinParameters, init: InitialState) -> list[dict]:
    checks = []

    def record(name: str, value: float, tolerance: float, ok: bool | None = None):
        status = (abs(value) <= tolerance if ok is None else ok)
        checks.append(
            {
                "name": name,
                "status": "pass" if status else "fail",
                "value": value,
                "tolerance": tolerance,
            }
        )

    if suite in ("mass", "all"):
        record("mass_configured", verify.mass_check(params, init) - 1.0, 1e-8)
        worst = max(
            abs(verify.mass_check(p, i) - 1.0) for p, i in verify.seeded_tuples()
        )
        record("mass_seeded_sweep", worst, 1e-6)
    if suite in ("gf", "all"):
        z = 0.5 * complex(math.cos(math.pi / 7), math.sin(math.pi / 7))
        dev = verify.gf_series_check(params, z, horizon=80)
        record("gf_series", dev, verify.series_tail_bound(z, 80) + 1e-12)
    if suite in ("residue", "all"):
        dev = verify.residue_theorem_check(params, init, verify.default_residue_grid())
        record("residue_vs_closed_form", dev, 1e-10)
    if suite in ("converge", "all"):
        report = verify.convergence_report(params, init, [100, 1000, 10000])
        mads = [e.binned_mad for e in report.entries]
        record(
            "convergence_monotone",
            mads[-1],
            0.05,
            ok=all(a > b for a, b in zip(mads, mads[1:])) and mads[-1] <= 0.05,
        )
        last = report.entries[-1]
        record("convergence_mean", last.mean_empirical - last.mean_analytic, 0.01)
    return checks


def cmd_verify(ns) -> int:
    params, init = _build_state(ns)
    checks = _run_suite(ns.suite, params, init)
    report = json.dumps(checks, indent=2) + "\n"
    if ns.out:
        Path(ns.out).write_text(report, encoding="utf-8")
    else:
        sys.stdout.write(report)
    return EXIT_OK if all(c["status"] == "pass" for c in checks) else EXIT_CHECK_FAILED


def cmd_sweep(ns) -> int:
    path = Path(ns.params_file)
    try:
        entries = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        print(f"cannot read sweep file: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if not isinstance(entries, list) or len(entries) > 10**4:
        print("sweep file must be a JSON list of at most 10^4 configs", file=sys.stderr)
        return EXIT_CONFIG
    outdir = Path(ns.out)
    names = []
    for i, entry in enumerate(entries):
        names.append(str(entry.get("out", f"entry_{i:04d}")))
    if len(set(names)) != len(names):
        print("duplicate output paths in sweep file", file=sys.stderr)
        return EXIT_CONFIG
    outdir.mkdir(parents=True, exist_ok=True)
    created = []
    summary = []
    try:
        for name, entry in zip(names, entries):
            params = CoinParameters(
                parse_angle(str(entry["sigma_plus"])),
                parse_angle(str(entry["sigma_minus"])),
            )
            init = make_initial_state(
                complex(entry.get("alpha_re", 0.0), entry.get("alpha_im", 0.0)),
                complex(entry.get("beta_re", 0.0), entry.get("beta_im", 0.0)),
            )
            c = limits.loc_mass(params, init)
            ac = limits.ac_mass(params, init)
            sidecar = outdir / f"{name}.json"
            sidecar.write_text(
                json.dumps({"C": c, "ac_mass": ac, "sum": c + ac}, indent=2) + "\n",
                encoding="utf-8",
            )
            created.append(sidecar)
            summary.append((name, c, ac, c + ac))
    except (KeyError, ValueError, WalkError, argparse.ArgumentTypeError) as exc:
        for p in created:
            p.unlink(missing_ok=True)
        print(f"sweep entry failed: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    with open(outdir / "summary.csv", "w", encoding="utf-8", newline="\n") as fh:
        fh.write("name,C,ac_mass,mass_check\n")
        for name, c, ac, total in summary:
            fh.write(f"{name},{_fmt(c)},{_fmt(ac)},{_fmt(total)}\n")
    return EXIT_OK


def _add_state_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--sigma-plus", type=parse_angle, default=3 * math.pi / 2)
    p.add_argument("--sigma-minus", type=parse_angle, default=math.pi)
    p.add_argument("--alpha-re", type=float, default=1.0)
    p.add_argument("--alpha-im", type=float, default=0.0)
    p.add_argument("--beta-re", type=float, default=0.0)
    p.add_argument("--beta-im", type=float, default=0.0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qw",
        description="Two-phase quantum walk: simulation, limit measures, verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="evolve the walk and write the distribution CSV")
    _add_state_args(p)
    p.add_argument("--t", type=int, default=100)
    p.add_argument("--bin-width", type=float, default=0.02)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("density", help="tabulate the analytic limit density")
    _add_state_args(p)
    p.add_argument("--grid-points", type=int, default=1001)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("timeavg", help="tabulate the time-averaged measure")
    _add_state_args(p)
    p.add_argument("--xmax", type=int, default=10)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_timeavg)

    p = sub.add_parser("verify", help="run a cross-validation suite")
    _add_state_args(p)
    p.add_argument("--suite", choices=["mass", "gf", "residue", "converge", "all"],
                   default="all")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="evaluate the measures for a list of configs")
    p.add_argument("params_file")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sweep)

    # accepted for interface compatibility; only used where meaningful
    parser.add_argument("--format", choices=["csv", "json"], default="csv",
                        help=argparse.SUPPRESS)
    parser.add_argument("--seed-file", default=None, help=argparse.SUPPRESS)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except argparse.ArgumentTypeError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_CONFIG
    try:
        return ns.func(ns)
    except ResourceError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (WalkError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
