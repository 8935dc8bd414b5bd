"""Structure detection for line configurations and a finite-degree ACM certificate.

For a union of lines X in P^3 and a hyperplane H containing none of them,
X is arithmetically Cohen-Macaulay exactly when the first difference of its
Hilbert function equals the Hilbert function of the points X ∩ H in every
degree.  ``acm_certificate`` compares the two up to a fixed degree only; a
positive verdict is evidence, never a proof.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb, isqrt

from .errors import InputError
from .exactalg import Matrix, nullspace
from .geometry import (
    HPoint,
    Hyperplane,
    LinearComponent,
    coplanar_witness,
    hyperplane_section,
    lines_meet,
    point_component,
    random_hyperplane,
)
from .symbolic import Configuration, TypeReport, alpha, hilbert, type_of


def _require_lines(config: Configuration) -> None:
    if config.ambient != "P3":
        raise InputError("this operation needs a configuration of lines in P3")


def star_size(count: int) -> int | None:
    """The d >= 3 with C(d, 2) == count, if there is one."""
    d = (1 + isqrt(1 + 8 * count)) // 2
    return d if d >= 3 and comb(d, 2) == count else None


# ---------------------------------------------------------------------------
# point configurations in P^2


def detect_collinear(points: list[HPoint]) -> Hyperplane | None:
    if not points:
        raise ValueError("need at least one point")
    field = points[0].field
    kernel = nullspace(Matrix.from_rows([p.coords for p in points], field))
    return Hyperplane.of(kernel[0], field) if kernel else None


def _line_through(p: HPoint, q: HPoint) -> Hyperplane:
    return Hyperplane.of(nullspace(Matrix.from_rows([p.coords, q.coords], p.field))[0], p.field)


@dataclass(frozen=True)
class StarCertificate:
    d: int
    lines: tuple[Hyperplane, ...]
    incidence: tuple[tuple[int, int], ...]  # per point, the two lines through it


def detect_star_points(points: list[HPoint]) -> StarCertificate | None:
    """Recognise the pairwise intersections of d lines of P^2, no three concurrent."""
    d = star_size(len(points))
    if d is None:
        return None
    members: dict[Hyperplane, set[int]] = {}
    for i, j in itertools.combinations(range(len(points)), 2):
        line = _line_through(points[i], points[j])
        if line not in members:
            members[line] = {k for k, p in enumerate(points) if line.contains(p)}
    lines = [line for line, on in members.items() if len(on) == d - 1]
    if len(lines) != d:
        return None
    incidence = []
    for k in range(len(points)):
        through = tuple(i for i, line in enumerate(lines) if k in members[line])
        if len(through) != 2:
            return None
        incidence.append(through)
    return StarCertificate(d, tuple(lines), tuple(incidence))


# ---------------------------------------------------------------------------
# line configurations in P^3


@dataclass(frozen=True)
class PseudostarCertificate:
    d: int
    planes: tuple[Hyperplane, ...]
    incidence: tuple[tuple[int, int], ...]  # per line, the two planes containing it

    def lines(self) -> list[LinearComponent]:
        return [LinearComponent((self.planes[i].integral(), self.planes[j].integral()), self.planes[i].field)
                for i, j in itertools.combinations(range(self.d), 2)]


def detect_pseudostar(config: Configuration) -> PseudostarCertificate | None:
    """Recognise the pairwise intersections of d planes, no three through a line."""
    _require_lines(config)
    lines = list(config.components)
    d = star_size(len(lines))
    if d is None:
        return None
    members: dict[Hyperplane, set[int]] = {}
    for i, j in itertools.combinations(range(len(lines)), 2):
        if lines_meet(lines[i], lines[j]).kind != "point":
            continue
        plane = coplanar_witness([lines[i], lines[j]])
        if plane not in members:
            members[plane] = {k for k, line in enumerate(lines) if line.lies_in(plane)}
    planes = [plane for plane, on in members.items() if len(on) == d - 1]
    if len(planes) != d:
        return None
    incidence = []
    for k in range(len(lines)):
        inside = tuple(i for i, plane in enumerate(planes) if k in members[plane])
        if len(inside) != 2:
            return None
        incidence.append(inside)
    cert = PseudostarCertificate(d, tuple(planes), tuple(incidence))
    # the planes must give back exactly these lines (this also rules out
    # three planes through a common line)
    if {line.key for line in cert.lines()} != {line.key for line in lines}:
        return None
    return cert


def section_configuration(config: Configuration, h: Hyperplane) -> tuple[Configuration, tuple[HPoint, ...]]:
    """The points X ∩ H, as a configuration in the chart H ≅ P^2."""
    section = hyperplane_section(config.components, h)
    comps = tuple(point_component(p) for p in section.points)
    return Configuration("P2", comps, config.field, f"section of {config.label}".strip()), section.points


@dataclass(frozen=True)
class AcmCertificate:
    tmax: int
    hyperplane: Hyperplane
    m: int
    # (first difference of H_X, H of the section) per degree, stopping at
    # the first disagreement
    comparisons: tuple[tuple[int, int], ...]
    fails_at: int | None

    @property
    def consistent(self) -> bool:
        return self.fails_at is None

    @property
    def verdict(self) -> str:
        return f"ConsistentUpTo({self.tmax})" if self.fails_at is None else f"FailsAt({self.fails_at})"

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "tmax": self.tmax,
            "m": self.m,
            "hyperplane": [str(x) for x in self.hyperplane.form],
            "comparisons": [{"t": t, "delta_h": a, "section_h": b} for t, (a, b) in enumerate(self.comparisons)],
        }


def acm_certificate(config: Configuration, tmax: int | None = None, seed: int = 0, m: int = 1) -> AcmCertificate:
    """Compare the first difference of H_X with H of a generic section up to ``tmax``.

    With m = 2 the same comparison is made for the double 2X and its
    section 2(X ∩ H).
    """
    _require_lines(config)
    if tmax is None:
        tmax = len(config) + 2
    if tmax < 1:
        raise InputError("tmax must be at least 1")
    h = random_hyperplane(seed, config.components)
    section, _ = section_configuration(config, h)
    comparisons = []
    fails_at = None
    previous = 0
    for t in range(tmax + 1):
        current = hilbert(config, m, t)
        pair = (current - previous, hilbert(section, m, t))
        comparisons.append(pair)
        previous = current
        if pair[0] != pair[1]:
            fails_at = t
            break
    return AcmCertificate(tmax, h, m, tuple(comparisons), fails_at)


@dataclass(frozen=True)
class Structure:
    kind: str  # "coplanar", "pseudostar" or "other"
    plane: Hyperplane | None = None
    certificate: PseudostarCertificate | None = None

    def as_dict(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.plane is not None:
            out["plane"] = [str(x) for x in self.plane.form]
        if self.certificate is not None:
            out["d"] = self.certificate.d
            out["planes"] = [[str(x) for x in p.form] for p in self.certificate.planes]
            out["incidence"] = [list(pair) for pair in self.certificate.incidence]
        return out


def detect_structure(config: Configuration) -> Structure:
    # coplanar first; a pseudostar always has d >= 3 planes, so never both
    plane = coplanar_witness(list(config.components))
    if plane is not None:
        return Structure("coplanar", plane=plane)
    cert = detect_pseudostar(config)
    if cert is not None:
        return Structure("pseudostar", certificate=cert)
    return Structure("other")


@dataclass(frozen=True)
class ClassificationReport:
    type: TypeReport
    structure: Structure
    acm: AcmCertificate
    theorem_consistent: bool
    violations: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        return {
            "type": self.type.as_dict(),
            "structure": self.structure.as_dict(),
            "acm": self.acm.as_dict(),
            "theorem_consistent": self.theorem_consistent,
            "violations": list(self.violations),
        }


def classify(config: Configuration, tmax: int | None = None, seed: int = 0) -> ClassificationReport:
    """Classify a line configuration and check both directions of the theorem.

    An ACM configuration of type (d-1, d) must be coplanar or a pseudostar.
    Conversely, coplanar lines and pseudostars always have type (d-1, d).
    """
    _require_lines(config)
    report_type = type_of(config)
    structure = detect_structure(config)
    acm = acm_certificate(config, tmax, seed)
    violations = []
    if acm.consistent and report_type.t == 1 and structure.kind == "other":
        violations.append("ACM-consistent of type (d-1,d) but neither coplanar nor a pseudostar")
    if structure.kind != "other" and report_type.t != 1:
        violations.append(f"{structure.kind} configuration has t = {report_type.t}")
    return ClassificationReport(report_type, structure, acm, not violations, tuple(violations))


@dataclass(frozen=True)
class SectionReport:
    hyperplane: Hyperplane
    points: tuple[HPoint, ...]
    kind: str  # "collinear", "star" or "other"
    star_d: int | None
    section_type: tuple[int, int]
    config_type: tuple[int, int]

    @property
    def alpha_equal(self) -> bool:
        return self.section_type[0] == self.config_type[0]

    @property
    def type_equal(self) -> bool:
        return self.section_type == self.config_type

    def as_dict(self) -> dict:
        return {
            "hyperplane": [str(x) for x in self.hyperplane.form],
            "points": [[str(x) for x in p.coords] for p in self.points],
            "kind": self.kind,
            "star_d": self.star_d,
            "section_type": list(self.section_type),
            "config_type": list(self.config_type),
            "alpha_equal": self.alpha_equal,
            "type_equal": self.type_equal,
        }


def check_bc_section(config: Configuration, seed: int = 0) -> SectionReport:
    """Classify a generic section and compare its type with the type in P^3."""
    _require_lines(config)
    h = random_hyperplane(seed, config.components)
    section, points = section_configuration(config, h)
    star = None
    if detect_collinear(list(points)) is not None:
        kind = "collinear"
    else:
        star = detect_star_points(list(points)) if len(points) >= 3 else None
        kind = "star" if star else "other"
    section_type = (alpha(section, 1)[0], alpha(section, 2)[0])
    config_type = (alpha(config, 1)[0], alpha(config, 2)[0])
    return SectionReport(h, points, kind, star.d if star else None, section_type, config_type)
