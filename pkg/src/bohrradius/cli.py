"""Command-line front end.

Subcommands: ``radius``, ``sweep``, ``verify``, ``analytic``. Data go to
stdout (or ``--out``), diagnostics to stderr. Exit codes: 0 ok, 2 usage,
3 solver failure, 4 partial sweep failure, 5 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import analytic_ref
from .classes import ClassKind, ClassSpec, InvalidSpec, distance_lower_bound
from .functional import Convention, ConventionError, FunctionalParams
from .radius import SolverError, solve_radius
from .specfun import ConvergenceError
from .verify import DEFAULT_PARAMS, check_root_and_sharpness, fuzz_admissible

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_SOLVER = 3
EXIT_PARTIAL = 4
EXIT_VERIFY = 5

SWEEP_COLUMNS = ("class", "param", "m", "N", "mu", "lambda", "t", "radius", "d", "residual", "error")


class UsageError(Exception):
    pass


# -- output ----------------------------------------------------------------


def _num(x):
    """Round floats to 15 significant digits; leave everything else alone."""
    if isinstance(x, (bool, np.bool_)) or x is None:
        return None if x is None else bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if not math.isfinite(x):
            return None
        return float(f"{x:.15g}")
    return x


def _cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return f"{x:.15g}"
    return str(x)


def render(rows: list, columns: tuple, fmt: str) -> str:
    rows = [{c: _num(r.get(c)) for c in columns} for r in rows]
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([_cell(r[c]) for c in columns])
        return buf.getvalue()
    cells = [[_cell(r[c]) for c in columns] for r in rows]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    for row in cells:
        lines.append("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _emit(text: str, out_path) -> None:
    sys.stdout.write(text)
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


# -- argument helpers ------------------------------------------------------


def _int_list(text: str) -> list:
    out = []
    for part in str(text).split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part[1:]:
            a, b = part.split("-", 1)
            a, b = int(a), int(b)
            if b < a:
                raise UsageError(f"empty range {part!r}")
            out.extend(range(a, b + 1))
        else:
            out.append(int(part))
    if not out:
        raise UsageError(f"empty list {text!r}")
    return out


def _float_list(text: str) -> list:
    out = [float(p) for p in str(text).split(",") if p.strip()]
    if not out:
        raise UsageError(f"empty list {text!r}")
    return out


def _spec_from(kind: str, alpha, M) -> ClassSpec:
    kind = ClassKind(kind)
    if kind is ClassKind.PH0_M:
        if alpha is not None:
            raise UsageError("--alpha does not apply to class ph0-m; use --M")
        if M is None:
            raise UsageError("class ph0-m needs --M")
        value = M
    else:
        if M is not None:
            raise UsageError(f"--M does not apply to class {kind.value}; use --alpha")
        if alpha is None:
            raise UsageError(f"class {kind.value} needs --alpha")
        value = alpha
    try:
        return ClassSpec(kind, value)
    except InvalidSpec as exc:
        raise UsageError(str(exc)) from None


def _check_tol(tol: float) -> float:
    if not 0.0 < tol <= 1e-3:
        raise UsageError(f"--tol must lie in (0, 1e-3], got {tol}")
    return tol


def _check_literal(spec: ClassSpec, params: FunctionalParams, conv: Convention) -> None:
    if conv is Convention.PAPER_LITERAL and spec.kind is ClassKind.PH0_M and params.t >= 1:
        raise UsageError(
            f"paper-literal convention is singular for ph0-m with N = {params.N} (t >= 1)"
        )


# -- radius ----------------------------------------------------------------


def radius_record(spec: ClassSpec, params: FunctionalParams, conv: Convention, tol: float) -> dict:
    res = solve_radius(spec, params, conv, tol)
    return {
        "class": spec.kind.value,
        "param": spec.param,
        "m": params.m,
        "N": params.N,
        "mu": params.mu,
        "lambda": params.lam,
        "t": params.t,
        "convention": conv.value,
        "radius": res.radius,
        "bracket_lo": res.bracket_lo,
        "bracket_hi": res.bracket_hi,
        "iterations": res.iterations,
        "residual": res.residual,
        "d": distance_lower_bound(spec),
    }


RADIUS_COLUMNS = (
    "class", "param", "m", "N", "mu", "lambda", "t", "convention",
    "radius", "bracket_lo", "bracket_hi", "iterations", "residual", "d",
)


def cmd_radius(args) -> int:
    spec = _spec_from(args.cls, args.alpha, args.M)
    try:
        params = FunctionalParams(args.m, args.N, args.mu, args.lam)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    conv = Convention(args.convention)
    tol = _check_tol(args.tol)
    _check_literal(spec, params, conv)
    try:
        rec = radius_record(spec, params, conv, tol)
    except (SolverError, ConvergenceError) as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    _emit(render([rec], RADIUS_COLUMNS, args.format), args.out)
    return EXIT_OK


# -- sweep -----------------------------------------------------------------


@dataclass
class SweepConfig:
    kind: ClassKind = ClassKind.PH0_ALPHA
    start: float = 0.0
    stop: float = 0.0
    steps: int = 1
    ms: list = field(default_factory=lambda: [1])
    Ns: list = field(default_factory=lambda: [1])
    mus: list = field(default_factory=lambda: [0.0])
    lams: list = field(default_factory=lambda: [0.0])
    tol: float = 1e-12
    convention: Convention = Convention.EXACT_A1
    format: str = "csv"
    jobs: int = 1

    def grid(self) -> list:
        if self.steps < 1:
            raise UsageError(f"steps must be >= 1, got {self.steps}")
        if self.stop < self.start:
            raise UsageError(f"empty grid: stop {self.stop} < start {self.start}")
        if self.steps == 1:
            if self.stop != self.start:
                raise UsageError("steps = 1 needs start == stop")
            return [self.start]
        if self.stop == self.start:
            raise UsageError(f"steps = {self.steps} needs stop > start")
        return [float(v) for v in np.linspace(self.start, self.stop, self.steps)]

    def cases(self) -> list:
        _check_tol(self.tol)
        out = []
        for p in self.grid():
            try:
                spec = ClassSpec(self.kind, p)
            except InvalidSpec as exc:
                raise UsageError(f"grid point {p}: {exc}") from None
            for m, N, mu, lam in itertools.product(self.ms, self.Ns, self.mus, self.lams):
                try:
                    out.append((spec, FunctionalParams(m, N, mu, lam)))
                except ValueError as exc:
                    raise UsageError(str(exc)) from None
        return out


# config-file key -> (SweepConfig field, parser)
_SWEEP_KEYS = {
    "class": ("kind", lambda v: ClassKind(v)),
    "start": ("start", float),
    "stop": ("stop", float),
    "steps": ("steps", int),
    "m": ("ms", _int_list),
    "N": ("Ns", _int_list),
    "mu": ("mus", _float_list),
    "lambda": ("lams", _float_list),
    "tol": ("tol", float),
    "convention": ("convention", lambda v: Convention(v)),
    "format": ("format", str),
    "jobs": ("jobs", int),
}


def read_config(path: str) -> dict:
    """Flat ``key = value`` file; ``#`` starts a comment."""
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key = value")
            key, val = (s.strip() for s in line.split("=", 1))
            if key not in _SWEEP_KEYS:
                raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
            values[key] = val
    return values


def build_sweep_config(args) -> SweepConfig:
    raw = read_config(args.config) if args.config else {}
    flags = {
        "class": args.cls,
        "start": args.start,
        "stop": args.stop,
        "steps": args.steps,
        "m": args.m,
        "N": args.N,
        "mu": args.mu,
        "lambda": args.lam,
        "tol": args.tol,
        "convention": args.convention,
        "format": args.format,
        "jobs": args.jobs,
    }
    raw.update({k: v for k, v in flags.items() if v is not None})
    cfg = SweepConfig()
    for key, val in raw.items():
        name, parse = _SWEEP_KEYS[key]
        try:
            cfg = replace(cfg, **{name: parse(val)})
        except ValueError as exc:
            raise UsageError(f"bad value for {key}: {val!r} ({exc})") from None
    if "class" not in raw:
        raise UsageError("sweep needs a class (--class or 'class =' in the config file)")
    if cfg.format not in ("csv", "json", "table"):
        raise UsageError(f"unknown format {cfg.format!r}")
    return cfg


def _sweep_row(job) -> dict:
    spec, params, conv, tol = job
    row = {
        "class": spec.kind.value,
        "param": spec.param,
        "m": params.m,
        "N": params.N,
        "mu": params.mu,
        "lambda": params.lam,
        "t": params.t,
        "radius": None,
        "d": distance_lower_bound(spec),
        "residual": None,
        "error": "",
    }
    try:
        res = solve_radius(spec, params, conv, tol)
    except (SolverError, ConvergenceError, ConventionError) as exc:
        row["error"] = f"{type(exc).__name__}: {exc}"
        return row
    row["radius"] = res.radius
    row["residual"] = res.residual
    return row


def _sort_key(row):
    return tuple(
        (math.inf if row[c] is None else row[c]) for c in SWEEP_COLUMNS if c != "error"
    )


def run_sweep(cfg: SweepConfig) -> list:
    jobs = [(s, p, cfg.convention, cfg.tol) for s, p in cfg.cases()]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as ex:
            rows = list(ex.map(_sweep_row, jobs, chunksize=8))
    else:
        rows = [_sweep_row(j) for j in jobs]
    return sorted(rows, key=_sort_key)


def cmd_sweep(args) -> int:
    cfg = build_sweep_config(args)
    rows = run_sweep(cfg)
    _emit(render(rows, SWEEP_COLUMNS, cfg.format), args.out)
    failed = [r for r in rows if r["error"]]
    for r in failed:
        print(f"row failed: {r['class']} {r['param']} m={r['m']} N={r['N']}: {r['error']}",
              file=sys.stderr)
    return EXIT_PARTIAL if failed else EXIT_OK


# -- verify ----------------------------------------------------------------

VERIFY_COLUMNS = (
    "case_id", "kind", "radius", "d", "s_at_root", "s_above_root", "delta",
    "tail_budget", "trials", "passed",
)


def _verify_case(job) -> list:
    spec, params, conv, tol, delta, trials, seed, r_fraction = job
    sharp = check_root_and_sharpness(spec, params, conv, tol, delta)
    rows = [dict(sharp.as_dict(), trials=None)]
    if trials:
        reps = fuzz_admissible(
            spec, params, conv, trials, seed, r_fraction, raise_on_failure=False
        )
        worst = max(reps, key=lambda rep: rep.s_at_root)
        rows.append(
            {
                "case_id": sharp.case_id + ":fuzz",
                "kind": "fuzz",
                "radius": worst.radius,
                "d": worst.d,
                "s_at_root": worst.s_at_root,
                "s_above_root": None,
                "delta": None,
                "tail_budget": worst.tail_budget,
                "trials": trials,
                "passed": all(rep.passed for rep in reps),
            }
        )
    return rows


def cmd_verify(args) -> int:
    conv = Convention(args.convention)
    if args.cls is None:
        if args.alpha is not None or args.M is not None:
            raise UsageError("--alpha/--M need --class")
        specs = [ClassSpec(k, p) for k, vals in DEFAULT_PARAMS.items() for p in vals]
    elif args.alpha is None and args.M is None:
        kind = ClassKind(args.cls)
        specs = [ClassSpec(kind, p) for p in DEFAULT_PARAMS[kind]]
    else:
        specs = [_spec_from(args.cls, args.alpha, args.M)]
    ms = _int_list(args.m) if args.m else [1, 2]
    Ns = _int_list(args.N) if args.N else list(range(1, 9))
    mus = _float_list(args.mu) if args.mu else [0.0, 1.0]
    lams = _float_list(args.lam) if args.lam else [0.0, 1.0]
    if not 0.0 < args.delta < 1.0:
        raise UsageError(f"--delta must lie in (0, 1), got {args.delta}")
    if args.trials < 0:
        raise UsageError("--trials must be >= 0")
    if not 0.0 < args.r_fraction < 1.0:
        raise UsageError("--r-fraction must lie in (0, 1)")
    jobs = []
    for spec in specs:
        for m, N, mu, lam in itertools.product(ms, Ns, mus, lams):
            try:
                params = FunctionalParams(m, N, mu, lam)
            except ValueError as exc:
                raise UsageError(str(exc)) from None
            _check_literal(spec, params, conv)
            jobs.append((spec, params, conv, args.tol, args.delta, args.trials, args.seed,
                         args.r_fraction))
    try:
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as ex:
                chunks = list(ex.map(_verify_case, jobs, chunksize=4))
        else:
            chunks = [_verify_case(j) for j in jobs]
    except (SolverError, ConvergenceError) as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    rows = sorted((r for chunk in chunks for r in chunk), key=lambda r: r["case_id"])
    _emit(render(rows, VERIFY_COLUMNS, args.format), args.out)
    failed = [r["case_id"] for r in rows if not r["passed"]]
    for cid in failed:
        print(f"FAILED {cid}", file=sys.stderr)
    return EXIT_VERIFY if failed else EXIT_OK


# -- analytic --------------------------------------------------------------


def cmd_analytic(args) -> int:
    try:
        q = analytic_ref.AnalyticRadiusQuery(args.variant, args.N, args.a0)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    try:
        value = analytic_ref.evaluate(q, args.tol)
    except SolverError as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    rec = {"variant": q.variant.value, "N": q.N, "a0": q.a0, "radius": value}
    _emit(render([rec], ("variant", "N", "a0", "radius"), args.format), args.out)
    return EXIT_OK


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="bohrradius",
        description="Sharp refined Bohr-Rogosinski radii for harmonic mapping classes.",
    )
    sub = ap.add_subparsers(dest="command", required=True)
    classes = [k.value for k in ClassKind]
    conventions = [c.value for c in Convention]

    def common(p, fmt_default="table"):
        p.add_argument("--format", choices=["json", "csv", "table"], default=fmt_default)
        p.add_argument("--out", metavar="PATH", help="also write the output to PATH")

    p = sub.add_parser("radius", help="solve for a single radius")
    p.add_argument("--class", dest="cls", choices=classes, required=True)
    p.add_argument("--alpha", type=float)
    p.add_argument("--M", type=float)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--convention", choices=conventions, default="exact-a1")
    common(p, "json")
    p.set_defaults(func=cmd_radius)

    p = sub.add_parser("sweep", help="radii over a parameter lattice")
    p.add_argument("--config", metavar="PATH", help="key = value file; flags override it")
    p.add_argument("--class", dest="cls", choices=classes)
    p.add_argument("--start", type=float, help="first alpha/M value")
    p.add_argument("--stop", type=float, help="last alpha/M value")
    p.add_argument("--steps", type=int, help="number of alpha/M values")
    p.add_argument("--m", help="comma list, ranges allowed (1-3)")
    p.add_argument("--N", help="comma list, ranges allowed (1-6)")
    p.add_argument("--mu", help="comma list")
    p.add_argument("--lambda", dest="lam", help="comma list")
    p.add_argument("--tol", type=float)
    p.add_argument("--convention", choices=conventions)
    p.add_argument("--format", choices=["json", "csv", "table"])
    p.add_argument("--jobs", type=int)
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="root identity, sharpness and fuzz checks")
    p.add_argument("--class", dest="cls", choices=classes,
                   help="restrict to one class (default: all three)")
    p.add_argument("--alpha", type=float, help="single parameter value instead of the lattice")
    p.add_argument("--M", type=float)
    p.add_argument("--m", help="comma list (default 1,2)")
    p.add_argument("--N", help="comma list (default 1-8)")
    p.add_argument("--mu", help="comma list (default 0,1)")
    p.add_argument("--lambda", dest="lam", help="comma list (default 0,1)")
    p.add_argument("--convention", choices=conventions, default="exact-a1")
    p.add_argument("--tol", type=float, default=1e-8, help="root identity tolerance")
    p.add_argument("--delta", type=float, default=1e-3)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--r-fraction", type=float, default=0.99)
    p.add_argument("--jobs", type=int, default=1)
    common(p, "csv")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("analytic", help="analytic-class reference radii")
    p.add_argument("--variant", choices=[v.value for v in analytic_ref.AnalyticVariant],
                   required=True)
    p.add_argument("--N", type=int)
    p.add_argument("--a0", type=float)
    p.add_argument("--tol", type=float, default=1e-14)
    common(p, "json")
    p.set_defaults(func=cmd_analytic)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
