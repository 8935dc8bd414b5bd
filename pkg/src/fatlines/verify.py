"""The verification suite run by ``fatlines verify``.

Each check regenerates a family, recomputes its invariants exactly and
compares them with the values the classification results predict.  Output
is a plain-text table with no timing information, so two runs with the same
flags are byte-identical.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

from . import __version__
from .classify import acm_certificate, check_bc_section, classify
from .configgen import (
    collinear_points,
    cone_over_star,
    conic_points,
    coplanar,
    fig2_triple,
    pseudostar,
    skew_pair,
    star_points,
)
from .exactalg import QQ, Field
from .symbolic import alpha_differences, type_of


@dataclass(frozen=True)
class CheckResult:
    name: str
    params: str
    passed: bool
    detail: str


def _type_pair(config) -> tuple[int, int]:
    r = type_of(config)
    return r.alpha1, r.alpha2


def _expect_type(config, expected: tuple[int, int]) -> tuple[bool, str]:
    got = _type_pair(config)
    return got == expected, f"type {got} expected {expected}"


def _classified(config, kind: str, seed: int, expected_t: int | None = 1) -> tuple[bool, str]:
    report = classify(config, seed=seed)
    ok = report.theorem_consistent and report.structure.kind == kind
    if expected_t is not None:
        ok = ok and report.type.t == expected_t
    if kind != "other":
        ok = ok and report.acm.consistent
    t = report.type
    return ok, (
        f"type ({t.alpha1},{t.alpha2}) {report.structure.kind} {report.acm.verdict} "
        f"consistent={report.theorem_consistent}"
    )


def checks(dmax: int, seed: int = 0, field: Field = QQ) -> Iterator[tuple[str, str, Callable[[], tuple[bool, str]]]]:
    if dmax < 3:
        raise ValueError("dmax must be at least 3")
    for d in range(3, dmax + 1):
        yield "pseudostar-type", f"d={d}", lambda d=d: _expect_type(pseudostar(d, seed, field), (d - 1, d))
        yield "cone-type", f"d={d}", lambda d=d: _expect_type(cone_over_star(d, seed, field), (d - 1, d))
        yield "star-points-type", f"d={d}", lambda d=d: _expect_type(star_points(d, seed, field), (d - 1, d))
        yield "collinear-points-type", f"n={d}", lambda d=d: _expect_type(collinear_points(d, seed, field), (1, 2))
        yield "pseudostar-section", f"d={d}", lambda d=d: _section_is_star(pseudostar(d, seed, field), d, seed)
        yield "classify-pseudostar", f"d={d}", lambda d=d: _classified(pseudostar(d, seed, field), "pseudostar", seed)
        yield "classify-cone", f"d={d}", lambda d=d: _classified(cone_over_star(d, seed, field), "pseudostar", seed)
        yield "classify-coplanar", f"n={d}", lambda d=d: _classified(coplanar(d, seed, field), "coplanar", seed)
    yield "skew-pair", "-", lambda: _skew(seed, field)
    yield "fig2-triple", "-", lambda: _classified(fig2_triple(field), "other", seed, expected_t=2)
    yield "collinear-alpha-differences", "n=4 mmax=4", lambda: _diffs(collinear_points(4, seed, field), [1, 1, 1])
    yield "conic-alpha-differences", "n=5 mmax=4", lambda: _diffs(conic_points(5, seed, field), [2, 2, 2])


def _section_is_star(config, d: int, seed: int) -> tuple[bool, str]:
    s = check_bc_section(config, seed)
    ok = s.kind == "star" and s.star_d == d and s.alpha_equal and s.type_equal
    return ok, f"section {s.kind} d={s.star_d} section type {s.section_type} lines type {s.config_type}"


def _skew(seed: int, field: Field) -> tuple[bool, str]:
    config = skew_pair(field)
    got = _type_pair(config)
    cert = acm_certificate(config, tmax=4, seed=seed)
    ok = got == (2, 4) and cert.fails_at == 1 and cert.comparisons[1] == (3, 2)
    a, b = cert.comparisons[1]
    return ok, f"type {got} {cert.verdict} delta_h(1)={a} section_h(1)={b}"


def _diffs(config, expected: list[int]) -> tuple[bool, str]:
    got = alpha_differences(config, len(expected) + 1)
    return got == expected, f"differences {got} expected {expected}"


def run(dmax: int, seed: int = 0, field: Field = QQ) -> tuple[list[CheckResult], str]:
    results = []
    for name, params, check in checks(dmax, seed, field):
        passed, detail = check()
        results.append(CheckResult(name, params, passed, detail))
    return results, render(results, dmax, seed, field)


def render(results: list[CheckResult], dmax: int, seed: int, field: Field) -> str:
    lines = [f"fatlines {__version__} verify dmax={dmax} seed={seed} field={field.name}"]
    width = max(len(r.name) for r in results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{r.name:<{width}}  {r.params:<10}  {status}  {r.detail}")
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} checks passed")
    return "\n".join(lines) + "\n"
