"""Command-line interface.

Exit codes: 0 success, 2 invalid input, 3 computation failure, 4 theorem
inconsistency, 5 I/O error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from . import __version__
from .classify import check_bc_section, classify
from .configgen import FAMILIES, GenSpec, config_to_dict, generate, parse_config, serialize_config
from .errors import ComputationError, FatlinesError, InputError
from .exactalg import QQ, Field
from .symbolic import alpha, alpha_sequence, hilbert_function, type_of
from . import verify as verify_suite

EXIT_OK, EXIT_INPUT, EXIT_COMPUTE, EXIT_THEOREM, EXIT_IO = 0, 2, 3, 4, 5


class _IOFailure(Exception):
    pass


def default_field() -> Field:
    text = os.environ.get("FATLINES_FIELD")
    return Field.parse(text) if text else QQ


def _load(path: str):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise _IOFailure(str(exc)) from None
    return parse_config(text)


def _emit(config, payload: dict) -> None:
    doc = {"version": __version__, "field": config.field.to_json(), "label": config.label}
    doc.update(payload)
    print(json.dumps(doc, indent=2))


def cmd_gen(args) -> int:
    field = Field.parse(args.field) if args.field else default_field()
    config = generate(GenSpec(args.family, args.size, args.seed, field))
    print(serialize_config(config))
    return EXIT_OK


def cmd_alpha(args) -> int:
    config = _load(args.config)
    value, witness = alpha(config, args.m)
    _emit(config, {"m": args.m, "alpha": value, "witness": list(witness)})
    return EXIT_OK


def cmd_hilbert(args) -> int:
    config = _load(args.config)
    _emit(config, {"m": args.m, "tmax": args.tmax, "values": hilbert_function(config, args.m, args.tmax)})
    return EXIT_OK


def cmd_type(args) -> int:
    config = _load(args.config)
    _emit(config, type_of(config).as_dict())
    return EXIT_OK


def cmd_diffs(args) -> int:
    config = _load(args.config)
    if args.mmax < 2:
        raise InputError("--mmax must be at least 2")
    seq = alpha_sequence(config, args.mmax)
    _emit(config, {
        "mmax": args.mmax,
        "alphas": seq,
        "differences": [b - a for a, b in zip(seq, seq[1:])],
        "waldschmidt_estimates": [str(Fraction(a, m)) for m, a in enumerate(seq, start=1)],
    })
    return EXIT_OK


def cmd_classify(args) -> int:
    config = _load(args.config)
    report = classify(config, args.tmax, args.seed)
    _emit(config, report.as_dict())
    return EXIT_OK if report.theorem_consistent else EXIT_THEOREM


def cmd_section(args) -> int:
    config = _load(args.config)
    _emit(config, check_bc_section(config, args.seed).as_dict())
    return EXIT_OK


def cmd_verify(args) -> int:
    field = Field.parse(args.field) if args.field else default_field()
    results, text = verify_suite.run(args.dmax, args.seed, field)
    sys.stdout.write(text)
    return EXIT_OK if all(r.passed for r in results) else EXIT_THEOREM


def explore_trial(seed: int, lines: int, field: Field) -> dict:
    """One random configuration, classified; the record written to the JSONL log."""
    start = time.perf_counter()
    config = generate(GenSpec("random-lines", lines, seed, field))
    report = classify(config, seed=seed)
    return {
        "seed": seed,
        "config_json": json.dumps(config_to_dict(config), separators=(",", ":")),
        "alpha1": report.type.alpha1,
        "alpha2": report.type.alpha2,
        "t": report.type.t,
        "structure": report.structure.kind,
        "acm_verdict": report.acm.verdict,
        "theorem_consistent": report.theorem_consistent,
        "version": __version__,
        "field": field.to_json(),
        "elapsed_ms": round((time.perf_counter() - start) * 1000),
    }


def is_interesting(record: dict) -> bool:
    """t = 1 without ACM-ness: a candidate answer to the open existence question."""
    return record["t"] == 1 and record["acm_verdict"].startswith("FailsAt")


def cmd_explore(args) -> int:
    field = Field.parse(args.field) if args.field else default_field()
    if args.trials < 1:
        raise InputError("--trials must be at least 1")
    summary = {"trials": args.trials, "lines": args.lines, "seed": args.seed, "t1": 0, "acm_failures": 0,
               "interesting": 0, "inconsistent": 0}
    try:
        out = open(args.out, "a", encoding="utf-8")
    except OSError as exc:
        raise _IOFailure(str(exc)) from None
    with out:
        for i in range(args.trials):
            record = explore_trial(args.seed ^ i, args.lines, field)
            try:
                out.write(json.dumps(record) + "\n")
                out.flush()
            except OSError as exc:
                raise _IOFailure(str(exc)) from None
            summary["t1"] += record["t"] == 1
            summary["acm_failures"] += record["acm_verdict"].startswith("FailsAt")
            summary["inconsistent"] += not record["theorem_consistent"]
            if is_interesting(record):
                summary["interesting"] += 1
                print(f"INTERESTING: type (d-1,d) but not ACM, seed={record['seed']}", file=sys.stderr)
    print(json.dumps(summary, indent=2))
    return EXIT_OK if summary["inconsistent"] == 0 else EXIT_THEOREM


def _dmax(text: str) -> int:
    value = int(text)
    if value < 3:
        raise argparse.ArgumentTypeError("--dmax must be at least 3")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fatlines", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"fatlines {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a configuration as JSON")
    p.add_argument("--family", required=True, choices=list(FAMILIES))
    p.add_argument("--d", "--n", "--s", dest="size", type=int, default=None, help="family size")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--field", default=None, help="'Q' or 'GFP:<p>' (default: $FATLINES_FIELD or Q)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("alpha", help="least degree of the m-th symbolic power")
    p.add_argument("config")
    p.add_argument("--m", type=int, default=1)
    p.set_defaults(func=cmd_alpha)

    p = sub.add_parser("hilbert", help="Hilbert function of the m-th symbolic power")
    p.add_argument("config")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--tmax", type=int, required=True)
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("type", help="alpha of Z and of 2Z")
    p.add_argument("config")
    p.set_defaults(func=cmd_type)

    p = sub.add_parser("diffs", help="alpha of successive symbolic powers with their differences")
    p.add_argument("config")
    p.add_argument("--mmax", type=int, default=4)
    p.set_defaults(func=cmd_diffs)

    p = sub.add_parser("classify", help="classify a configuration of lines in P3")
    p.add_argument("config")
    p.add_argument("--tmax", type=int, default=None, help="default: number of lines + 2")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("section", help="classify a generic hyperplane section")
    p.add_argument("config")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_section)

    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("--dmax", type=_dmax, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--field", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("explore", help="classify random line configurations, appending JSONL records")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--lines", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--field", default=None)
    p.set_defaults(func=cmd_explore)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _IOFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ComputationError, FatlinesError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
