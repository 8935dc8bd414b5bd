"""Seeded generators for the configuration families, and the JSON format.

Document schema::

    {"ambient": "P2" | "P3", "field": "Q" | {"GFp": p}, "label": str,
     "components": [{"kind": "point" | "line", "forms": [[...], [...]]}]}
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from typing import Callable

from .errors import DegenerateDraw, DependentForms, FieldError, InputError, SchemaError
from .exactalg import QQ, Field, Matrix, rank
from .geometry import COEFF_BOUND, RETRY_BUDGET, LinearComponent
from .symbolic import AMBIENT_VARS, Configuration

X, Y, Z, W = [tuple(int(i == j) for j in range(4)) for i in range(4)]

# family -> minimum size, or None for fixed configurations
FAMILIES = {
    "star-points": 3,
    "pseudostar": 3,
    "cone": 3,
    "coplanar": 1,
    "collinear-points": 1,
    "conic-points": 1,
    "random-lines": 1,
    "skew": None,
    "fig2": None,
}


@dataclass(frozen=True)
class GenSpec:
    family: str
    size: int | None = None  # d for star/pseudostar/cone, n or s otherwise
    seed: int = 0
    field: Field = QQ

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InputError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")
        low = FAMILIES[self.family]
        if low is not None:
            if self.size is None:
                raise InputError(f"family {self.family} needs a size")
            if self.size < low:
                raise InputError(f"family {self.family} needs size >= {low}, got {self.size}")


def _draw(rng: random.Random, field: Field, n: int) -> tuple[int, ...]:
    while True:
        v = tuple(field.elem(rng.randint(-COEFF_BOUND, COEFF_BOUND)) for _ in range(n))
        if any(v):
            return v


def _in_general_position(forms: list[tuple], field: Field, k: int) -> bool:
    """True if every k of the forms (and every pair) are independent."""
    for size in sorted({2, k}):
        for sub in itertools.combinations(forms, size):
            if rank(Matrix.from_rows(sub, field)) < size:
                return False
    return True


def _retry(draw: Callable[[], Configuration | None], what: str) -> Configuration:
    for _ in range(RETRY_BUDGET):
        config = draw()
        if config is not None:
            return config
    raise DegenerateDraw(f"{what}: no admissible draw after {RETRY_BUDGET} attempts")


def _pairwise(ambient: str, forms: list[tuple], field: Field, label: str) -> Configuration:
    comps = tuple(LinearComponent((forms[i], forms[j]), field) for i, j in itertools.combinations(range(len(forms)), 2))
    return Configuration(ambient, comps, field, label)


def star_points(d: int, seed: int = 0, field: Field = QQ) -> Configuration:
    """Pairwise intersections of d lines of P^2, no three concurrent."""
    rng = random.Random(seed)

    def draw():
        lines = [_draw(rng, field, 3) for _ in range(d)]
        if not _in_general_position(lines, field, 3):
            return None
        return _pairwise("P2", lines, field, f"star-points d={d} seed={seed}")

    return _retry(draw, "star-points")


def pseudostar(d: int, seed: int = 0, field: Field = QQ) -> Configuration:
    """Pairwise intersections of d planes of P^3, no three through a common line."""
    rng = random.Random(seed)

    def draw():
        planes = [_draw(rng, field, 4) for _ in range(d)]
        # three planes share a line exactly when their forms have rank 2
        if not _in_general_position(planes, field, 3):
            return None
        return _pairwise("P3", planes, field, f"pseudostar d={d} seed={seed}")

    return _retry(draw, "pseudostar")


def cone_over_star(d: int, seed: int = 0, field: Field = QQ) -> Configuration:
    """Cone with apex (0:0:0:1) over a star configuration in the plane w = 0."""
    rng = random.Random(seed)

    def draw():
        traces = [_draw(rng, field, 3) for _ in range(d)]
        if not _in_general_position(traces, field, 3):
            return None
        return _pairwise("P3", [t + (0,) for t in traces], field, f"cone d={d} seed={seed}")

    return _retry(draw, "cone")


def coplanar(n: int, seed: int = 0, field: Field = QQ) -> Configuration:
    rng = random.Random(seed)

    def draw():
        plane = _draw(rng, field, 4)
        comps: list[LinearComponent] = []
        keys = set()
        for _ in range(n):
            other = _draw(rng, field, 4)
            if rank(Matrix.from_rows([plane, other], field)) < 2:
                return None
            c = LinearComponent((plane, other), field)
            if c.key in keys:
                return None
            keys.add(c.key)
            comps.append(c)
        return Configuration("P3", tuple(comps), field, f"coplanar n={n} seed={seed}")

    return _retry(draw, "coplanar")


def collinear_points(n: int, seed: int = 0, field: Field = QQ) -> Configuration:
    rng = random.Random(seed)

    def draw():
        line = _draw(rng, field, 3)
        comps: list[LinearComponent] = []
        keys = set()
        for _ in range(n):
            other = _draw(rng, field, 3)
            if rank(Matrix.from_rows([line, other], field)) < 2:
                return None
            c = LinearComponent((line, other), field)
            if c.key in keys:
                return None
            keys.add(c.key)
            comps.append(c)
        return Configuration("P2", tuple(comps), field, f"collinear-points n={n} seed={seed}")

    return _retry(draw, "collinear-points")


def conic_points(n: int, seed: int = 0, field: Field = QQ) -> Configuration:
    """n distinct points (1 : s : s^2) on the smooth conic y^2 = xz."""
    rng = random.Random(seed)

    def draw():
        params = [field.elem(rng.randint(-COEFF_BOUND, COEFF_BOUND)) for _ in range(n)]
        if len(set(params)) < n:
            return None
        comps = tuple(LinearComponent.of((-s, 1, 0), (-s * s, 0, 1), field) for s in params)
        return Configuration("P2", comps, field, f"conic-points n={n} seed={seed}")

    return _retry(draw, "conic-points")


def random_lines(s: int, seed: int = 0, field: Field = QQ) -> Configuration:
    rng = random.Random(seed)
    comps: list[LinearComponent] = []
    keys = set()
    for _ in range(s):
        for _ in range(RETRY_BUDGET):
            a, b = _draw(rng, field, 4), _draw(rng, field, 4)
            if rank(Matrix.from_rows([a, b], field)) < 2:
                continue
            c = LinearComponent((a, b), field)
            if c.key not in keys:
                break
        else:
            raise DegenerateDraw(f"random-lines: could not draw {s} distinct lines over {field}")
        keys.add(c.key)
        comps.append(c)
    return Configuration("P3", tuple(comps), field, f"random-lines s={s} seed={seed}")


def skew_pair(field: Field = QQ) -> Configuration:
    comps = (LinearComponent.of(X, Y, field), LinearComponent.of(Z, W, field))
    return Configuration("P3", comps, field, "skew pair")


def fig2_triple(field: Field = QQ) -> Configuration:
    """Lines (x,z), (y,z), (x,w): the first meets both others, which are skew."""
    comps = (LinearComponent.of(X, Z, field), LinearComponent.of(Y, Z, field), LinearComponent.of(X, W, field))
    return Configuration("P3", comps, field, "fig2 triple")


_SIZED = {
    "star-points": star_points,
    "pseudostar": pseudostar,
    "cone": cone_over_star,
    "coplanar": coplanar,
    "collinear-points": collinear_points,
    "conic-points": conic_points,
    "random-lines": random_lines,
}


def generate(spec: GenSpec) -> Configuration:
    if spec.family == "skew":
        return skew_pair(spec.field)
    if spec.family == "fig2":
        return fig2_triple(spec.field)
    return _SIZED[spec.family](spec.size, spec.seed, spec.field)


# ---------------------------------------------------------------------------
# JSON


def config_to_dict(config: Configuration) -> dict:
    return {
        "ambient": config.ambient,
        "field": config.field.to_json(),
        "label": config.label,
        "components": [
            {"kind": c.kind, "forms": [[int(x) for x in f] for f in c.forms]} for c in config.components
        ],
    }


def serialize_config(config: Configuration, indent: int | None = 2) -> str:
    return json.dumps(config_to_dict(config), indent=indent)


def _int_list(value, path: str, length: int) -> tuple[int, ...]:
    if not isinstance(value, list) or len(value) != length:
        raise SchemaError(path, f"expected a list of {length} integers")
    for i, x in enumerate(value):
        if type(x) is not int:
            raise SchemaError(f"{path}[{i}]", f"expected an integer, got {x!r}")
    return tuple(value)


def config_from_dict(doc) -> Configuration:
    if not isinstance(doc, dict):
        raise SchemaError("$", "expected a JSON object")
    unknown = set(doc) - {"ambient", "field", "label", "components"}
    if unknown:
        raise SchemaError("$", f"unexpected keys {sorted(unknown)}")
    for key in ("ambient", "field", "components"):
        if key not in doc:
            raise SchemaError(key, "missing")
    ambient = doc["ambient"]
    if ambient not in AMBIENT_VARS:
        raise SchemaError("ambient", f"expected 'P2' or 'P3', got {ambient!r}")
    try:
        field = Field.from_json(doc["field"])
    except FieldError as exc:
        raise SchemaError("field", str(exc)) from None
    label = doc.get("label", "")
    if not isinstance(label, str):
        raise SchemaError("label", "expected a string")
    comps_doc = doc["components"]
    if not isinstance(comps_doc, list) or not comps_doc:
        raise SchemaError("components", "expected a nonempty list")
    nvars = AMBIENT_VARS[ambient]
    kind = "point" if ambient == "P2" else "line"
    comps = []
    for i, item in enumerate(comps_doc):
        path = f"components[{i}]"
        if not isinstance(item, dict) or set(item) != {"kind", "forms"}:
            raise SchemaError(path, "expected an object with keys 'kind' and 'forms'")
        if item["kind"] != kind:
            raise SchemaError(f"{path}.kind", f"expected {kind!r} in {ambient}, got {item['kind']!r}")
        forms = item["forms"]
        if not isinstance(forms, list) or len(forms) != 2:
            raise SchemaError(f"{path}.forms", "expected two forms")
        f1 = _int_list(forms[0], f"{path}.forms[0]", nvars)
        f2 = _int_list(forms[1], f"{path}.forms[1]", nvars)
        try:
            comps.append(LinearComponent.of(f1, f2, field))
        except DependentForms as exc:
            raise DependentForms(f"{path}.forms: {exc}") from None
    return Configuration(ambient, tuple(comps), field, label)


def parse_config(text: str) -> Configuration:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    return config_from_dict(doc)

