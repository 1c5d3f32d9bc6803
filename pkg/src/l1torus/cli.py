"""Command line interface.

Subcommands: kernel (shell sums, Dirichlet kernels, seeds, biorthogonal
polynomials), mnd (B-spline Fourier means by any route), verify (identity
suites), pdf (definiteness checks on a coefficient spec), count (shell
cardinalities), partial-sum (l1 partial sums of a synthesized function).

Outputs are deterministic for a fixed seed: CSV values use 17 significant
digits, JSON is emitted with sorted keys.  Exit codes: 0 success, 1 a
verification suite failed, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from .bspline_fourier import DEFAULT_SERIES_TERMS, MeanEvaluator
from .kernels import (biortho_poly, dirichlet_kernel, dirichlet_seed_theta,
                      shell_seed_theta, shell_sum)
from .numerics import DEFAULT_SEED, shell_count, torus_trapezoid
from .pdf import GramSpec, gram_matrix, min_eigenvalue, pdf_check, spdf_check
from .summability import CoeffSeq, SampledTorusFn, partial_sum, synth
from .verify import SUITE_ALIASES, SUITES, VerifyConfig, run_suites

_FMT = "%.17g"


def _fmt(x: float) -> str:
    return _FMT % x


def _env_seed() -> int:
    raw = os.environ.get("L1TORUS_SEED")
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError as exc:
        raise ValueError(f"L1TORUS_SEED must be an integer, got {raw!r}") from exc


def _write(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_rows(header: list[str], rows: list[list], fmt: str, out: str | None):
    if fmt == "json":
        records = [
            {k: (v if isinstance(v, (int, str)) else float(v)) for k, v in zip(header, row)}
            for row in rows
        ]
        _write(json.dumps(records, indent=2, sort_keys=True) + "\n", out)
        return
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(v if isinstance(v, str) else _fmt(v) for v in row))
    _write("\n".join(lines) + "\n", out)


def _parse_theta(raw: str, d: int) -> np.ndarray:
    try:
        vals = np.array([float(x) for x in raw.split(",")], dtype=float)
    except ValueError as exc:
        raise ValueError(f"--theta expects comma-separated floats, got {raw!r}") from exc
    if vals.size != d:
        raise ValueError(f"--theta needs {d} angles, got {vals.size}")
    return vals


def _parse_grid_u(raw: str) -> np.ndarray:
    parts = raw.split(":")
    if len(parts) != 3:
        raise ValueError("--grid-u expects start:stop:count")
    start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    if count < 1:
        raise ValueError("--grid-u count must be >= 1")
    return np.linspace(start, stop, count)


def _add_output_flags(p: argparse.ArgumentParser, formats=("csv", "json")):
    p.add_argument("--out", help="write output to this file instead of stdout")
    if formats:
        p.add_argument("--format", choices=formats, default=formats[0])


def _cmd_kernel(args) -> int:
    what = args.what
    d, n = args.d, args.n
    if what in ("E", "D"):
        if args.grid is not None:
            pts = torus_trapezoid(d, args.grid).nodes
        elif args.theta:
            pts = np.array([_parse_theta(t, d) for t in args.theta])
        else:
            raise ValueError("provide --theta (repeatable) or --grid for E/D")
        fn = shell_sum if what == "E" else dirichlet_kernel
        header = ["d", "n"] + [f"theta_{i+1}" for i in range(d)] + ["value"]
        rows = [[d, n, *map(float, t), fn(d, n, t)] for t in pts]
    elif what in ("G", "H"):
        if not args.theta:
            raise ValueError("provide --theta (one angle per flag) for G/H")
        fn = dirichlet_seed_theta if what == "G" else shell_seed_theta
        header = ["d", "n", "theta", "value"]
        rows = []
        for t in args.theta:
            angle = float(t)
            rows.append([d, n, angle, fn(d, n, angle)])
    elif what == "h":
        if args.u is not None:
            us = [float(v) for v in args.u]
        elif args.grid_u is not None:
            us = [float(v) for v in _parse_grid_u(args.grid_u)]
        else:
            raise ValueError("provide --u (repeatable) or --grid-u for h")
        header = ["d", "n", "u", "value"]
        rows = [[d, n, u, float(biortho_poly(d, n, u))] for u in us]
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(f"unknown kernel: {what!r}")
    _emit_rows(header, rows, args.format, args.out)
    return 0


def _cmd_mnd(args) -> int:
    if args.u is not None:
        us = [float(v) for v in args.u]
    elif args.grid_u is not None:
        us = [float(v) for v in _parse_grid_u(args.grid_u)]
    else:
        raise ValueError("provide --u (repeatable) or --grid-u")
    ev = MeanEvaluator(args.d, args.n, args.method, nterms=args.K,
                       budget=args.budget, seed=args.seed)
    header = ["d", "n", "u", "method", "value", "stderr"]
    rows = []
    for u in us:
        value, stderr = ev.evaluate(u)
        rows.append([args.d, args.n, u, args.method, value,
                     "" if stderr is None else stderr])
    _emit_rows(header, rows, args.format, args.out)
    return 0


def _cmd_verify(args) -> int:
    cfg = VerifyConfig(d=args.d, nmax=args.nmax, max_index=args.N,
                       nterms=args.K, budget=args.budget, seed=args.seed,
                       tol=args.tol)
    reports = run_suites(args.suite if args.suite else None, cfg)
    payload = {
        "suites": [r.to_json() for r in reports],
        "all_passed": all(r.passed for r in reports),
    }
    _write(json.dumps(payload, indent=2, sort_keys=True, default=float) + "\n", args.out)
    return 0 if payload["all_passed"] else 1


def _cmd_pdf(args) -> int:
    with open(args.spec) as fh:
        coeffs = CoeffSeq.from_json(json.load(fh))
    verdict = pdf_check(coeffs)
    result: dict = {"pdf": verdict.ok, "spdf": None, "witness": verdict.witness}
    if verdict.ok:
        strict = spdf_check(coeffs)
        result["spdf"] = strict.ok
        result["witness"] = list(strict.witness) if strict.witness is not None else None
    rng = np.random.default_rng(args.seed)
    pts = rng.uniform(-math.pi, math.pi, (args.points, args.d))
    trunc = args.trunc if args.trunc is not None else coeffs.max_head_index
    a = gram_matrix(GramSpec(args.d, pts, coeffs, trunc))
    result["min_eig_sample"] = min_eigenvalue(a)
    result["sample"] = {"d": args.d, "points": args.points, "trunc": trunc,
                        "seed": args.seed}
    _write(json.dumps(result, indent=2, sort_keys=True) + "\n", args.out)
    return 0


def _cmd_count(args) -> int:
    if args.nmax is not None:
        ns = list(range(args.nmax + 1))
    elif args.n is not None:
        ns = [args.n]
    else:
        raise ValueError("provide --n or --nmax")
    header = ["d", "n", "count"]
    rows = [[args.d, n, shell_count(args.d, n)] for n in ns]
    _emit_rows(header, rows, args.format, args.out)
    return 0


def _cmd_partial_sum(args) -> int:
    with open(args.spec) as fh:
        coeffs = CoeffSeq.from_json(json.load(fh))
    d = args.d
    trunc = coeffs.max_head_index
    if args.L <= 2 * max(args.n, trunc):
        raise ValueError(
            f"--L must exceed twice the largest frequency ({max(args.n, trunc)})"
        )
    f = SampledTorusFn.sample(d, args.L, lambda pts: np.array(
        [synth(d, coeffs, trunc, p) for p in pts]))
    if not args.theta:
        raise ValueError("provide --theta (repeatable)")
    header = (["d", "n", "L", "route"] + [f"theta_{i+1}" for i in range(d)]
              + ["real", "imag"])
    rows = []
    for raw in args.theta:
        t = _parse_theta(raw, d)
        val = partial_sum(f, args.n, t, route=args.route)
        rows.append([d, args.n, args.L, args.route, *map(float, t), val.real, val.imag])
    _emit_rows(header, rows, args.format, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="l1torus",
        description="l1-summability toolkit on the d-dimensional torus",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kernel", help="evaluate shell sums, Dirichlet kernels, "
                                      "seed functions, or biorthogonal polynomials")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--what", choices=["E", "D", "G", "H", "h"], required=True,
                   help="E: shell sum, D: Dirichlet kernel, G: Dirichlet seed, "
                        "H: shell seed, h: biorthogonal polynomial")
    p.add_argument("--theta", action="append",
                   help="comma-separated angles (E/D) or one angle (G/H); repeatable")
    p.add_argument("--u", action="append", help="evaluation point for h; repeatable")
    p.add_argument("--grid", type=int, help="tensor grid points per axis for E/D")
    p.add_argument("--grid-u", help="start:stop:count grid for h")
    _add_output_flags(p)
    p.set_defaults(fn=_cmd_kernel)

    p = sub.add_parser("mnd", help="evaluate the B-spline Fourier mean")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--u", action="append", help="evaluation point; repeatable")
    p.add_argument("--grid-u", help="start:stop:count grid")
    p.add_argument("--method", choices=["closed", "series", "mc"], default="series")
    p.add_argument("--K", type=int, default=DEFAULT_SERIES_TERMS,
                   help="series truncation (series method)")
    p.add_argument("--budget", type=int, help="sample budget (mc method)")
    p.add_argument("--seed", type=int, default=_env_seed())
    _add_output_flags(p)
    p.set_defaults(fn=_cmd_mnd)

    p = sub.add_parser("verify", help="run identity verification suites")
    p.add_argument("--suite", action="append",
                   help=f"suite name; repeatable; default all. "
                        f"Known: {', '.join(sorted(SUITES))} "
                        f"(aliases: {', '.join(sorted(SUITE_ALIASES))})")
    p.add_argument("--d", type=int)
    p.add_argument("--nmax", type=int)
    p.add_argument("--N", type=int, help="largest index for the biortho suite")
    p.add_argument("--K", type=int, help="series truncation override")
    p.add_argument("--budget", type=int, help="Monte-Carlo budget override")
    p.add_argument("--tol", type=float, help="tolerance override")
    p.add_argument("--seed", type=int, default=_env_seed())
    p.add_argument("--out", help="write the JSON report to this file")
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("pdf", help="positive definiteness checks for a "
                                   "coefficient spec (JSON file)")
    p.add_argument("--spec", required=True, help="JSON file: {head: [...], tail: {...}}")
    p.add_argument("--d", type=int, default=2, help="dimension for the sampled Gram check")
    p.add_argument("--points", type=int, default=12)
    p.add_argument("--trunc", type=int)
    p.add_argument("--seed", type=int, default=_env_seed())
    p.add_argument("--out", help="write the JSON verdict to this file")
    p.set_defaults(fn=_cmd_pdf)

    p = sub.add_parser("count", help="l1 shell cardinalities")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--nmax", type=int)
    _add_output_flags(p)
    p.set_defaults(fn=_cmd_count)

    p = sub.add_parser("partial-sum", help="l1 partial sums of a synthesized function")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True, help="partial sum order")
    p.add_argument("--L", type=int, required=True, help="grid points per axis")
    p.add_argument("--spec", required=True, help="coefficient spec JSON file")
    p.add_argument("--theta", action="append", help="comma-separated angles; repeatable")
    p.add_argument("--route", choices=["coefficients", "convolution"],
                   default="coefficients")
    _add_output_flags(p)
    p.set_defaults(fn=_cmd_partial_sum)

    return parser


def main(argv=None) -> int:
    try:
        parser = build_parser()
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
