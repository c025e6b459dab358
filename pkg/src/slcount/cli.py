"""Command-line front end.

Subcommands: exponent, classify, verify, count, volume, fit, ratio.
Scalar results go to stdout as JSON ({command, inputs, results, version},
exact rationals as "p/q" strings); sweeps write CSV files (header row,
12 significant digits).  Exit codes: 0 success, 1 verification failure,
2 usage error, 3 node budget exhausted.

An optional --config FILE holds INI-style key=value lines mirroring the
flags (no leading dashes); command-line flags win.
"""

import argparse
import csv
import json
import math
import sys

import numpy as np

from . import __version__
from .bounds import BoundKind
from .engine import cone_report, exponent_report, verify_range
from .lattice import BudgetError, enumerate_ball, UnsupportedSpecError
from .reps import dim, parse_rep
from .volume import QuadratureSpec, ball_volume, fit_powerlaw


class UsageError(ValueError):
    pass


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _emit(command: str, inputs: dict, results) -> None:
    print(json.dumps(
        {"command": command, "inputs": inputs, "results": results, "version": __version__},
        indent=2,
    ))


def _parse_weight(s: str, n: int):
    try:
        q = tuple(int(x) for x in s.split(","))
    except ValueError:
        raise UsageError(f"weight must be comma-separated integers, got {s!r}")
    if len(q) != n:
        raise UsageError(f"weight has {len(q)} entries, --n is {n}")
    return q


def _t_grid(args):
    if args.t_steps < 1:
        raise UsageError("--t-steps must be >= 1")
    if args.t_steps == 1:
        return [args.t_start]
    if not 0 < args.t_start < args.t_end:
        raise UsageError("need 0 < --t-start < --t-end")
    return [float(t) for t in np.geomspace(args.t_start, args.t_end, args.t_steps)]


def _write_csv(path, header, rows):
    if path is None:
        raise UsageError("this command needs --out")
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)


def _read_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if len(rows) < 2:
        raise UsageError(f"{path}: no data rows")
    return rows[0], rows[1:]


def cmd_exponent(args) -> int:
    q = _parse_weight(args.weight, args.n)
    rep = exponent_report(q, BoundKind.from_string(args.bound), args.n)
    _emit("exponent", {"n": args.n, "weight": list(q), "bound": args.bound}, rep.to_json())
    return 0


def cmd_classify(args) -> int:
    q = _parse_weight(args.weight, args.n)
    rep = cone_report(q, args.n)
    _emit("classify", {"n": args.n, "weight": list(q)}, rep.to_json())
    return 0


def cmd_verify(args) -> int:
    if args.nmax < 2:
        raise UsageError("--nmax must be >= 2")
    checks = verify_range(args.nmax, samples=args.samples, seed=args.seed)
    failures = [c for c in checks if c.status != "PASS"]
    _emit(
        "verify",
        {"nmax": args.nmax, "samples": args.samples, "seed": args.seed},
        {"checks": [c.to_json() for c in checks], "failures": len(failures)},
    )
    return 1 if failures else 0


def cmd_count(args) -> int:
    spec = parse_rep(args.rep, args.n)
    if args.t_start < math.sqrt(dim(spec)):
        raise UsageError(f"--t-start below the identity norm sqrt({dim(spec)})")
    if args.list and args.t_steps != 1:
        raise UsageError("--list needs --t-steps 1 (one radius per listing)")
    grid = _t_grid(args)
    rows, any_partial = [], False
    matrices = None
    for T in grid:
        rec = enumerate_ball(
            args.n, spec, T,
            mode="list" if args.list else "count",
            workers=args.workers, node_budget=args.node_budget,
        )
        any_partial = any_partial or rec.partial
        rows.append((_fmt(rec.t), rec.count, rec.nodes, _fmt(rec.seconds), int(rec.partial)))
        matrices = rec.matrices
    _write_csv(args.out, ["T", "count", "nodes", "seconds", "partial"], rows)
    if args.list:
        with open(args.out + ".list", "w") as fh:
            for g in matrices:
                fh.write(";".join(" ".join(str(x) for x in row) for row in g) + "\n")
    return 3 if any_partial else 0


def cmd_volume(args) -> int:
    spec = parse_rep(args.rep, args.n)
    samples = args.samples
    if samples is None:
        samples = 100_000 if args.method == "mc" else 256
    quad = QuadratureSpec(args.method, samples, args.seed)
    rows = []
    for T in _t_grid(args):
        est = ball_volume(spec, T, quad)
        rows.append((_fmt(T), _fmt(est.value), _fmt(est.error)))
    _write_csv(args.out, ["T", "volume", "stderr"], rows)
    return 0


def cmd_fit(args) -> int:
    header, data = _read_csv(args.csv)
    col = args.column if args.column is not None else header[1]
    if col not in header:
        raise UsageError(f"column {col!r} not in {args.csv} (has {header})")
    idx = header.index(col)
    T = [float(r[0]) for r in data]
    y = [float(r[idx]) for r in data]
    try:
        fit = fit_powerlaw(T, y, args.model)
    except ValueError as exc:
        raise UsageError(str(exc))
    _emit("fit", {"csv": args.csv, "column": col, "model": args.model}, fit.to_json())
    return 0


def cmd_ratio(args) -> int:
    head_c, counts = _read_csv(args.count_csv)
    head_v, volumes = _read_csv(args.volume_csv)
    if len(counts) != len(volumes):
        raise UsageError("grid mismatch: row counts differ")
    rows = []
    for rc, rv in zip(counts, volumes):
        tc, tv = float(rc[0]), float(rv[0])
        if abs(tc - tv) > 1e-9 * max(1.0, abs(tc)):
            raise UsageError(f"grid mismatch at T={tc} vs {tv}")
        vol = float(rv[1])
        if vol <= 0:
            raise UsageError(f"nonpositive volume at T={tv}")
        rows.append((tc, float(rc[1]) / vol))
    if args.out:
        _write_csv(args.out, ["T", "ratio"], [(_fmt(t), _fmt(r)) for t, r in rows])
    tail = [r for _, r in rows[len(rows) // 2:]]
    spread = (max(tail) - min(tail)) / (sum(tail) / len(tail)) if tail else float("nan")
    _emit(
        "ratio",
        {"count_csv": args.count_csv, "volume_csv": args.volume_csv},
        {
            "rows": [{"T": t, "ratio": r} for t, r in rows],
            "relative_spread_last_half": spread,
        },
    )
    return 0


def _add_common(p):
    p.add_argument("--config", help="INI-style key=value file mirrored by flags; flags win")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slcount",
        description="Lattice point counts, ball volumes and exact error exponents for SL(n+1)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exponent", help="exact exponent report for one weight")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--weight", required=True, help="comma-separated integers")
    p.add_argument("--bound", default="oh", choices=["hc", "ht", "oh"])
    _add_common(p)
    p.set_defaults(func=cmd_exponent)

    p = sub.add_parser("classify", help="interior-cone membership of a weight")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--weight", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="machine-check the exact statements over a rank range")
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=1000)
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("count", help="exact lattice point counts over a radius grid")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rep", required=True, help="standard|dual|ext:K|adjoint")
    p.add_argument("--t-start", type=float, required=True)
    p.add_argument("--t-end", type=float, default=None)
    p.add_argument("--t-steps", type=int, default=1)
    p.add_argument("--seed", type=int, default=0, help="accepted for config symmetry; counting is deterministic")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--node-budget", type=int, default=10**9)
    p.add_argument("--out", required=False)
    p.add_argument("--list", action="store_true", help="also write the matrices (needs --t-steps 1)")
    _add_common(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("volume", help="numerical ball volumes over a radius grid")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rep", required=True)
    p.add_argument("--t-start", type=float, required=True)
    p.add_argument("--t-end", type=float, default=None)
    p.add_argument("--t-steps", type=int, default=1)
    p.add_argument("--method", default="mc", choices=["mc", "grid"])
    p.add_argument("--samples", type=int, default=None,
                   help="MC sample count or grid resolution per axis")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1, help="accepted for config symmetry")
    p.add_argument("--out", required=False)
    _add_common(p)
    p.set_defaults(func=cmd_volume)

    p = sub.add_parser("fit", help="growth-exponent fit of a sweep CSV")
    p.add_argument("csv")
    p.add_argument("--column", default=None, help="value column (default: second column)")
    p.add_argument("--model", default="pure", choices=["pure", "log"])
    _add_common(p)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("ratio", help="count/volume ratios and their stabilization")
    p.add_argument("count_csv")
    p.add_argument("volume_csv")
    p.add_argument("--out", required=False)
    _add_common(p)
    p.set_defaults(func=cmd_ratio)

    return parser


def _apply_config(argv):
    """Insert config-file pairs right after the subcommand so that
    explicit flags (appearing later) win."""
    if "--config" not in argv:
        return argv
    i = argv.index("--config")
    try:
        path = argv[i + 1]
    except IndexError:
        raise UsageError("--config needs a file path")
    extra = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise UsageError(f"config line without '=': {line!r}")
            key, _, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if key == "list":
                if value.lower() in ("1", "true", "yes"):
                    extra.append("--list")
            else:
                extra.extend([f"--{key}", value])
    return extra + list(argv)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        if argv:
            argv = [argv[0]] + _apply_config(argv[1:])
        args = parser.parse_args(argv)
        if getattr(args, "t_end", None) is None and getattr(args, "t_steps", 1) > 1:
            raise UsageError("--t-end required when --t-steps > 1")
        return args.func(args)
    except BudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (UsageError, UnsupportedSpecError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
