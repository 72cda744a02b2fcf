"""Command-line surface: compute / mc / sweep / verify / table.

Data goes to stdout (JSON lines or RFC-4180 CSV), diagnostics to stderr.
Exit codes: 0 success, 1 verification failure, 2 domain error, 3
non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from typing import Optional

from . import registry, verification
from .errors import (
    DegenerateGeometryError,
    DomainError,
    NonConvergenceError,
    NotInRegistryError,
)
from .geomc import McConfig, estimate_sylvester
from .probability import Distribution, sylvester_probability
from .quad import QuadratureConfig

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_DOMAIN = 2
EXIT_NONCONVERGENCE = 3

_RECORD_FIELDS = ("family", "d", "beta", "method", "value", "abs_error", "stderr", "trials", "seed")

_FAMILY_FLAGS = {"gauss": "gaussian", "beta": "beta", "betaprime": "beta_prime"}
_FAMILY_NAMES = {v: k for k, v in _FAMILY_FLAGS.items()}


def _record(family, d, beta, method, value, abs_error=None, stderr=None, trials=None, seed=None):
    return {
        "family": _FAMILY_NAMES[family],
        "d": d,
        "beta": beta,
        "method": method,
        "value": value,
        "abs_error": abs_error,
        "stderr": stderr,
        "trials": trials,
        "seed": seed,
    }


def _emit_records(records, fmt: str, out) -> None:
    if fmt == "json":
        for rec in records:
            print(json.dumps(rec), file=out)
        return
    writer = csv.DictWriter(out, fieldnames=_RECORD_FIELDS, lineterminator="\n")
    writer.writeheader()
    for rec in records:
        writer.writerow({k: ("" if v is None else v) for k, v in rec.items()})


def _quadrature_config(tol: float) -> QuadratureConfig:
    # tol is the relative target; the absolute floor sits four orders lower
    # so small probabilities still resolve to the same relative accuracy
    return QuadratureConfig(rel_tol=tol, abs_tol=tol * 1e-4)


def _distribution(args) -> Distribution:
    family = _FAMILY_FLAGS[args.family]
    beta = getattr(args, "beta", None)
    if family == "gaussian":
        if beta is not None:
            raise DomainError("--beta is not accepted for --family gauss")
        return Distribution(family, args.dim)
    if beta is None:
        raise DomainError(f"--family {args.family} requires --beta")
    return Distribution(family, args.dim, beta)


def _default_seed(explicit: Optional[int]) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get("SYLVESTER_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise DomainError(f"SYLVESTER_SEED must be an integer, got {env!r}") from None
    return 0


def _cmd_compute(args) -> int:
    dist = _distribution(args)
    method = {"auto": "auto", "quadrature": "quadrature", "closed-form": "closed_form"}[args.method]
    result = sylvester_probability(dist, method=method, cfg=_quadrature_config(args.tol))
    rec = _record(
        dist.family, dist.d, dist.beta, result.method, result.value,
        abs_error=result.abs_error_estimate,
    )
    _emit_records([rec], args.format, sys.stdout)
    return EXIT_OK


def _cmd_mc(args) -> int:
    dist = _distribution(args)
    mc = McConfig(trials=args.trials, seed=_default_seed(args.seed), workers=args.workers)
    res = estimate_sylvester(dist, mc)
    rec = _record(
        dist.family, dist.d, dist.beta, "monte-carlo", res.estimate,
        stderr=res.stderr, trials=res.trials, seed=res.seed,
    )
    _emit_records([rec], args.format, sys.stdout)
    return EXIT_OK


def _cmd_sweep(args) -> int:
    family = _FAMILY_FLAGS[args.family]
    if family == "gaussian":
        raise DomainError("sweep needs a parametric family: beta or betaprime")
    if args.steps < 1:
        raise DomainError("--steps must be >= 1")
    if not args.beta_max >= args.beta_min:
        raise DomainError("--beta-max must be >= --beta-min")
    cfg = _quadrature_config(args.tol)
    step = (args.beta_max - args.beta_min) / args.steps
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["beta", "value", "abs_error"])
    values = []
    for i in range(args.steps + 1):
        beta = args.beta_min + i * step
        try:
            dist = Distribution(family, args.dim, beta)
            result = sylvester_probability(dist, method="auto", cfg=cfg)
        except DomainError as exc:
            print(f"warning: skipping beta={beta:.6g}: {exc}", file=sys.stderr)
            continue
        values.append(result.value)
        writer.writerow([f"{beta:.12g}", f"{result.value:.16e}", f"{result.abs_error_estimate:.3e}"])
    if not values:
        raise DomainError("the whole sweep range lies outside the validity region")
    diffs = [b - a for a, b in zip(values, values[1:])]
    direction = "non-decreasing" if family == "beta" else "non-increasing"
    monotone = all(d >= -1e-9 for d in diffs) if family == "beta" else all(d <= 1e-9 for d in diffs)
    print(f"# monotone {direction}: {str(monotone).lower()}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    checks = verification.run_suite(args.suite, seed=_default_seed(args.seed), out=sys.stdout)
    failures = verification.hard_failures(checks)
    warns = [c for c in checks if not c.hard and not c.passed]
    print(
        f"# {len(checks)} checks: {sum(c.passed for c in checks)} passed, "
        f"{len(failures)} hard failures, {len(warns)} warnings"
    )
    return EXIT_VERIFY_FAILED if failures else EXIT_OK


def _cmd_table(args) -> int:
    keys = registry.TABLE_PRESETS[args.preset]
    rows = []
    for family, d, beta in keys:
        entry = registry.lookup(family, d, beta)
        rows.append(
            (
                _FAMILY_NAMES[family],
                str(d),
                "" if beta is None else f"{beta:g}",
                entry.description,
                f"{entry.value:.12g}",
            )
        )
    headers = ("family", "d", "beta", "exact expression", "value")
    widths = [max(len(h), *(len(r[i]) for r in rows)) for i, h in enumerate(headers)]
    print("  ".join(h.ljust(w) for h, w in zip(headers, widths)))
    for row in rows:
        print("  ".join(c.ljust(w) for c, w in zip(row, widths)))
    return EXIT_OK


def _add_distribution_flags(parser: argparse.ArgumentParser, with_beta: bool = True) -> None:
    parser.add_argument("--family", required=True, choices=sorted(_FAMILY_FLAGS))
    parser.add_argument("--dim", type=int, required=True, metavar="D", dest="dim")
    if with_beta:
        parser.add_argument("--beta", type=float, default=None, metavar="B")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sylvester",
        description="Probability that d+2 i.i.d. points from a Gaussian, beta, or "
        "beta-prime distribution in R^d form a simplex.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="deterministic probability for one distribution")
    _add_distribution_flags(p)
    p.add_argument("--method", choices=("auto", "quadrature", "closed-form"), default="auto")
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(handler=_cmd_compute)

    p = sub.add_parser("mc", help="Monte Carlo estimate via convex-hull membership")
    _add_distribution_flags(p)
    p.add_argument("--trials", type=int, default=100_000, metavar="N")
    p.add_argument("--seed", type=int, default=None, metavar="S")
    p.add_argument("--workers", type=int, default=1, metavar="K")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(handler=_cmd_mc)

    p = sub.add_parser("sweep", help="probability across an equally spaced beta grid (CSV)")
    _add_distribution_flags(p, with_beta=False)
    p.add_argument("--beta-min", type=float, required=True, metavar="A")
    p.add_argument("--beta-max", type=float, required=True, metavar="B")
    p.add_argument("--steps", type=int, required=True, metavar="K")
    p.add_argument("--tol", type=float, default=1e-6)
    p.set_defaults(handler=_cmd_sweep)

    p = sub.add_parser("verify", help="cross-route verification suite")
    p.add_argument("--suite", choices=("basic", "full"), default="basic")
    p.add_argument("--seed", type=int, default=None, metavar="S")
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("table", help="closed-form registry tables")
    p.add_argument("--preset", required=True, choices=sorted(registry.TABLE_PRESETS))
    p.set_defaults(handler=_cmd_table)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (DomainError, NotInRegistryError, DegenerateGeometryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except NonConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
