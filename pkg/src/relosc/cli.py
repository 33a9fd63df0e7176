"""Command-line interface.

Usage:
    relosc spectrum --omega0 1 --b 0 --n 0..3 --m 0..2
    relosc wavefunction --omega0 0.2 --n 1 --m 1 --rho-count 401
    relosc verify --suite algebra --output report.json
    relosc limits --n 0..2 --m 0..1
    relosc algebra --format json

Every subcommand accepts ``--config FILE`` with ``key = value`` lines
named like the long flags (``omega0 = 0.2``, ``rho-count = 101``); flags
given on the command line win.  Exit codes: 0 success, 1 failed check,
2 usage or domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import model, specfun, verify
from .errors import ComplexExponentError, RelOscError
from .model import OscillatorConfig, QuantumNumbers
from .quadrature import gamma_envelope_cutoff

__all__ = ["main", "build_parser", "parse_range", "format_float"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
PHYSICAL = ("mass", "omega", "c", "hbar")


class UsageError(Exception):
    pass


def format_float(x) -> str:
    """17 significant digits; round-trips through ``float``."""
    if x is None:
        return ""
    if isinstance(x, (bool, int, str)):
        return str(x)
    return format(float(x), ".17g")


def parse_range(text: str) -> tuple[int, ...]:
    """``"a..b"`` (inclusive) or a single integer."""
    text = str(text).strip()
    try:
        if ".." in text:
            lo, hi = (int(t) for t in text.split("..", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or a range 'a..b', got {text!r}")
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return tuple(range(lo, hi + 1))


def parse_floats(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(t) for t in str(text).split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def read_config_file(path: str) -> dict[str, str]:
    values = {}
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config file: {exc}")
    for lineno, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key = value")
        key, value = (t.strip() for t in line.split("=", 1))
        values[key.replace("-", "_")] = value
    return values


# -- parser ----------------------------------------------------------------------


def _common(p: argparse.ArgumentParser, *, n_default="0..5", m_default="0..3"):
    g = p.add_argument_group("parameters")
    g.add_argument("--dimensionless", action="store_true",
                   help="hbar = m = c = 1 with --omega0 (the default mode)")
    g.add_argument("--omega0", type=float, default=None,
                   help="hbar*omega/(m c^2) in dimensionless mode (default 0.2)")
    g.add_argument("--b", type=float, default=0.0, help="angular potential coefficient")
    for name in PHYSICAL:
        g.add_argument(f"--{name}", type=float, default=None,
                       help="physical-units mode; requires all of --mass --omega --c --hbar")
    g.add_argument("--n", type=parse_range, default=n_default, help="radial numbers, a..b")
    g.add_argument("--m", type=parse_range, default=m_default, help="angular numbers, a..b")
    o = p.add_argument_group("output")
    o.add_argument("--output", "-o", default=None, help="write here instead of stdout")
    o.add_argument("--format", choices=("csv", "json"), default="csv")
    o.add_argument("--config", default=None, help="key = value file; flags override it")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relosc",
        description="Relativistic finite-difference 2D oscillator: tables and verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="alpha, nu and energies over n and m ranges")
    _common(p)

    p = sub.add_parser("wavefunction", help="sample R(rho) or the full psi(r, phi)")
    _common(p, n_default="0", m_default="0")
    p.add_argument("--rho-min", type=float, default=1e-6)
    p.add_argument("--rho-max", type=float, default=None,
                   help="default: where the decay envelope falls below 1e-16 of its peak")
    p.add_argument("--rho-count", type=int, default=2001)
    p.add_argument("--phi-count", type=int, default=8)
    p.add_argument("--full", action="store_true", help="sample psi on the (r, phi) grid")

    p = sub.add_parser("verify", help="run the verification suites, emit a JSON report")
    _common(p)
    p.set_defaults(format="json")
    p.add_argument("--suite", action="append", choices=verify.SUITES, default=None,
                   help="restrict to a suite (repeatable)")
    p.add_argument("--tolerance", type=float, default=None,
                   help="override every check's tolerance")
    p.add_argument("--omega0-grid", type=parse_floats, default="0.05,0.2")
    p.add_argument("--b-grid", type=parse_floats, default="0,1")

    p = sub.add_parser("limits", help="non-relativistic convergence tables")
    _common(p, n_default="0..2", m_default="0..2")
    p.add_argument("--omega0-seq", type=parse_floats,
                   default=",".join(str(x) for x in verify.NR_OMEGA0_SEQUENCE))
    p.add_argument("--lambda-seq", type=parse_floats,
                   default=",".join(str(x) for x in verify.OPERATOR_LAMBDAS))

    p = sub.add_parser("algebra", help="angular operator identities, stated vs computed")
    _common(p)
    return parser


def _config_path(argv: Sequence[str]) -> Optional[str]:
    for i, tok in enumerate(argv):
        if tok == "--config" and i + 1 < len(argv):
            return argv[i + 1]
        if tok.startswith("--config="):
            return tok.split("=", 1)[1]
    return None


def parse_args(argv: Sequence[str]) -> argparse.Namespace:
    parser = build_parser()
    path = _config_path(argv)
    if path is not None:
        file_values = read_config_file(path)
        ns_probe, _ = parser.parse_known_args(argv)
        subparser = parser._subparsers._group_actions[0].choices[ns_probe.command]
        known = {a.dest for a in subparser._actions}
        unknown = sorted(set(file_values) - known)
        if unknown:
            raise UsageError(f"unknown config key(s): {', '.join(unknown)}")
        flags = {a.dest: a for a in subparser._actions}
        for key, value in file_values.items():
            action = flags[key]
            if action.nargs == 0:  # store_true
                value = value.lower() in ("1", "true", "yes", "on")
            subparser.set_defaults(**{key: value})
    return parser.parse_args(argv)


def make_config(args) -> OscillatorConfig:
    given = {k: getattr(args, k) for k in PHYSICAL if getattr(args, k) is not None}
    if given:
        if args.dimensionless or args.omega0 is not None:
            raise UsageError("dimensionless (--omega0) and physical (--mass ...) "
                             "parameters are mutually exclusive")
        missing = [k for k in PHYSICAL if k not in given]
        if missing:
            raise UsageError("physical mode needs all of --mass --omega --c --hbar; missing "
                             + " ".join(f"--{k}" for k in missing))
        return OscillatorConfig(b=args.b, **given)
    omega0 = 0.2 if args.omega0 is None else args.omega0
    return OscillatorConfig.dimensionless(omega0, args.b)


# -- tables ----------------------------------------------------------------------


def render(columns: Sequence[str], rows: Sequence[dict], fmt: str, command: str) -> str:
    if fmt == "json":
        return json.dumps({"command": command, "columns": list(columns),
                           "rows": [{c: _json_value(r.get(c)) for c in columns} for r in rows]},
                          indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in rows:
        writer.writerow([format_float(r.get(c)) for c in columns])
    return buf.getvalue()


def _json_value(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None
    return v


def cmd_spectrum(args, cfg: OscillatorConfig):
    columns = ["n", "m", "alpha", "nu", "E_over_mc2", "E_over_hbar_omega",
               "E_minus_mc2_over_hbar_omega", "error"]
    rows = []
    for m in args.m:
        for n in args.n:
            qn = QuantumNumbers(n, m)
            row = {"n": n, "m": m}
            try:
                sc = model.spectral_constants(cfg, qn)
            except ComplexExponentError as exc:
                row["error"] = (f"outside exactly solvable regime: {exc.which} radicand "
                                f"{format_float(exc.radicand)} < 0")
                rows.append(row)
                continue
            e_hw = 2 * n + sc.alpha + sc.nu
            row.update(alpha=sc.alpha, nu=sc.nu, E_over_mc2=cfg.omega0 * e_hw,
                       E_over_hbar_omega=e_hw,
                       E_minus_mc2_over_hbar_omega=e_hw - 1.0 / cfg.omega0, error="")
            rows.append(row)
    return columns, rows, EXIT_OK


def _single(values, name):
    if len(values) != 1:
        raise UsageError(f"wavefunction needs a single --{name}, got a range")
    return values[0]


def rho_grid(args, sc, n: int) -> list[float]:
    rho_max = args.rho_max
    if rho_max is None:
        rho_max = gamma_envelope_cutoff(2 * sc.alpha + 2 * sc.nu - 1 + 4 * n)
    if args.rho_count < 2 or not (0 < args.rho_min < rho_max):
        raise UsageError("need rho-count >= 2 and 0 < rho-min < rho-max")
    step = (rho_max - args.rho_min) / (args.rho_count - 1)
    return [args.rho_min + k * step for k in range(args.rho_count)]


def cmd_wavefunction(args, cfg: OscillatorConfig):
    qn = QuantumNumbers(_single(args.n, "n"), _single(args.m, "m"))
    f = model.radial_eigenfunction(cfg, qn)
    sc = f.constants
    rhos = rho_grid(args, sc, qn.n)
    if args.full:
        if args.phi_count < 1:
            raise UsageError("phi-count must be >= 1")
        columns = ["r", "phi", "re_psi", "im_psi", "abs_psi"]
        phis = [2 * math.pi * j / args.phi_count for j in range(args.phi_count)]
        rows = []
        for rho in rhos:
            r = rho * cfg.lambda_bar
            for phi in phis:
                z = model.full_wavefunction(cfg, qn, r, phi, radial=f)
                rows.append({"r": r, "phi": phi, "re_psi": z.real, "im_psi": z.imag,
                             "abs_psi": abs(z)})
        return columns, rows, EXIT_OK
    columns = ["rho", "re_R", "im_R", "abs_R", "S_n", "w"]
    rows = []
    for rho in rhos:
        z = model.radial_eval(f, rho)
        rows.append({"rho": rho, "re_R": z.real, "im_R": z.imag, "abs_R": abs(z),
                     "S_n": specfun.cdh_poly(qn.n, rho * rho, sc.alpha, sc.nu, 0.5).real,
                     "w": specfun.weight_function(rho)})
    return columns, rows, EXIT_OK


def cmd_verify(args, cfg: OscillatorConfig):
    grid = verify.GridSpec(n_values=args.n, m_values=tuple(sorted({abs(m) for m in args.m})),
                           omega0_values=args.omega0_grid, b_values=args.b_grid)
    report = verify.run_all(grid, suites=args.suite, tolerance=args.tolerance)
    code = EXIT_OK if report.passed else EXIT_FAIL
    if args.format == "json":
        return report.to_json(), code
    columns = ["name", "max_residual", "tolerance", "pass"]
    rows = [c.to_dict() for c in sorted(report.checks, key=lambda c: c.name)]
    return render(columns, rows, "csv", "verify"), code


def cmd_limits(args, cfg: OscillatorConfig):
    columns = ["quantity", "n", "m", "b", "omega0", "lambda_bar", "value", "target",
               "abs_error", "ratio"]
    rows = []
    for m in args.m:
        for n in args.n:
            for r in verify.nr_limit_table(args.b, QuantumNumbers(n, m), args.omega0_seq):
                rows.append(dict(r, n=n, m=m, b=args.b))
    for m in (0, 1):
        for r in verify.operator_limit_table(m, args.lambda_seq):
            rows.append(dict(r, m=m))
    return columns, rows, EXIT_OK


def cmd_algebra(args, cfg: OscillatorConfig):
    columns = ["identity", "stated", "computed", "verdict", "documented_erratum"]
    rows = verify.algebra_rows()
    return columns, rows, EXIT_OK


COMMANDS = {
    "spectrum": cmd_spectrum,
    "wavefunction": cmd_wavefunction,
    "verify": cmd_verify,
    "limits": cmd_limits,
    "algebra": cmd_algebra,
}


def run(argv: Sequence[str]) -> tuple[str, int, argparse.Namespace]:
    args = parse_args(argv)
    cfg = make_config(args)
    result = COMMANDS[args.command](args, cfg)
    if len(result) == 2:
        text, code = result
    else:
        columns, rows, code = result
        text = render(columns, rows, args.format, args.command)
    return text, code, args


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        text, code, args = run(argv)
    except SystemExit as exc:  # argparse usage errors and --help
        return int(exc.code or 0)
    except (UsageError, RelOscError, ValueError) as exc:
        print(f"relosc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
