"""Command-line driver for the identity verifier.

Subcommands:

- ``check-algebra``:   structure axioms and instance invariants.
- ``verify-envelope``: the full identity ladder (shuffle laws, cobracket
  laws, codifferential and bracket extensions, coproduct laws, Q^2 = 0,
  the symmetric cobracket suite, specialization cross-checks).
- ``mutation``:        perturb one structure constant and require that at
  least one identity fails.

Exit codes: 0 all pass, 1 any fail, 2 config/usage error, 3 everything
relevant skipped by truncation.  Reports are deterministic given the
flags; elapsed time goes to stderr only.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from .instances import BUILTINS
from .suites import SuiteConfig, run_check_algebra, run_mutation, run_verify_envelope

USAGE_ERROR = 2


def _parse_param(text: str):
    key, sep, value = text.partition("=")
    if not sep:
        raise ValueError(f"--param wants key=value, got {text!r}")
    value = value.strip()
    if value and value[0] in "{[":
        return key, json.loads(value)
    try:
        return key, int(value)
    except ValueError:
        pass
    try:
        return key, Fraction(value)
    except ValueError:
        return key, value


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--algebra", default="poisson-super",
                     help=f"builtin name ({', '.join(sorted(BUILTINS))}) or a JSON structure file")
    sub.add_argument("--param", action="append", default=[], metavar="K=V",
                     help="instance parameter override; repeatable (JSON allowed for values)")
    sub.add_argument("--max-word-len", type=int, default=3, metavar="L")
    sub.add_argument("--max-sym-factors", type=int, default=3, metavar="N")
    sub.add_argument("--max-total-letters", type=int, default=4, metavar="T")
    sub.add_argument("--max-degree", type=int, default=None, metavar="M",
                     help="override the instance's degree truncation")
    sub.add_argument("--probe-gens", type=int, default=3, metavar="K",
                     help="number of low-degree generators the word families are built from")
    sub.add_argument("--seed", type=int, default=0, metavar="S")
    sub.add_argument("--jobs", type=int, default=1, metavar="J")
    sub.add_argument("--report", default=None, metavar="PATH",
                     help="write the JSON report here (UTF-8, newline-terminated)")
    sub.add_argument("--format", choices=("json", "text"), default="text",
                     help="stdout presentation")


def _config_from(args: argparse.Namespace, suites: tuple[str, ...]) -> SuiteConfig:
    params = dict(_parse_param(p) for p in args.param)
    if args.max_degree is not None:
        if args.algebra in BUILTINS:
            defaults = BUILTINS[args.algebra][1]
            key = "max_degree" if "max_degree" in defaults else "max_coef_degree"
            params.setdefault(key, args.max_degree)
        else:
            params.setdefault("max_degree", args.max_degree)
    return SuiteConfig(
        algebra=args.algebra,
        params=params,
        max_word_len=args.max_word_len,
        max_sym_factors=args.max_sym_factors,
        max_total_letters=args.max_total_letters,
        probe_gens=args.probe_gens,
        seed=args.seed,
        jobs=args.jobs,
        suites=suites,
    )


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="abhomotopy",
        description="exact verifier for homotopy envelopes of graded two-operation algebras",
    )
    subs = parser.add_subparsers(dest="command", required=True)
    for name in ("check-algebra", "verify-envelope", "mutation"):
        sub = subs.add_parser(name)
        _add_common(sub)
        if name == "verify-envelope":
            sub.add_argument("--suites", default="coalgebra,axioms,core,envelope",
                             help="comma-separated subset of: coalgebra,axioms,core,envelope")
        if name == "mutation":
            sub.add_argument("--rounds", type=int, default=1,
                             help="number of seeded single-constant perturbations")

    args = parser.parse_args(argv)
    started = time.monotonic()
    try:
        if args.command == "check-algebra":
            report = run_check_algebra(_config_from(args, ("axioms",)))
        elif args.command == "verify-envelope":
            suites = tuple(s for s in args.suites.split(",") if s)
            unknown = set(suites) - {"coalgebra", "axioms", "core", "envelope"}
            if unknown:
                raise ValueError(f"unknown suites: {sorted(unknown)}")
            report = run_verify_envelope(_config_from(args, suites))
        else:
            report = run_mutation(_config_from(args, ("core", "envelope")), rounds=args.rounds)
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR

    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(report.to_json())
    sys.stdout.write(report.to_json() if args.format == "json" else report.to_text())
    print(f"elapsed: {time.monotonic() - started:.2f}s", file=sys.stderr)
    return report.exit_code()


if __name__ == "__main__":
    sys.exit(main())
