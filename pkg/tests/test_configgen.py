from __future__ import annotations

import json

import pytest

from fatlines.classify import detect_pseudostar
from fatlines.configgen import (
    FAMILIES,
    GenSpec,
    config_to_dict,
    generate,
    parse_config,
    serialize_config,
)
from fatlines.errors import DependentForms, DuplicateComponent, InputError, SchemaError
from fatlines.exactalg import GF, QQ
from fatlines.geometry import HPoint, coplanar_witness

SIZES = {"star-points": 4, "pseudostar": 4, "cone": 4, "coplanar": 3, "collinear-points": 3,
         "conic-points": 5, "random-lines": 4, "skew": None, "fig2": None}


def test_fig2_ideals():
    config = generate(GenSpec("fig2"))
    assert [c.forms for c in config.components] == [
        ((1, 0, 0, 0), (0, 0, 1, 0)),
        ((0, 1, 0, 0), (0, 0, 1, 0)),
        ((1, 0, 0, 0), (0, 0, 0, 1)),
    ]


def test_skew_ideals():
    config = generate(GenSpec("skew"))
    assert [c.forms for c in config.components] == [((1, 0, 0, 0), (0, 1, 0, 0)), ((0, 0, 1, 0), (0, 0, 0, 1))]


def test_pseudostar_round_trips_through_classifier():
    config = generate(GenSpec("pseudostar", 4, seed=7))
    assert len(config) == 6
    cert = detect_pseudostar(config)
    assert cert is not None and cert.d == 4


@pytest.mark.parametrize("d", [3, 4, 5, 6])
def test_generated_families_satisfy_their_predicates(d):
    assert detect_pseudostar(generate(GenSpec("pseudostar", d, seed=d))).d == d
    cone = generate(GenSpec("cone", d, seed=d))
    apex = HPoint.of((0, 0, 0, 1))
    assert all(c.contains(apex) for c in cone.components)
    assert detect_pseudostar(cone).d == d
    assert coplanar_witness(list(generate(GenSpec("coplanar", d, seed=d)).components)) is not None


@pytest.mark.parametrize("family", list(FAMILIES))
def test_serialization_is_deterministic(family):
    a = serialize_config(generate(GenSpec(family, SIZES[family], seed=3)))
    b = serialize_config(generate(GenSpec(family, SIZES[family], seed=3)))
    assert a == b


@pytest.mark.parametrize("family", list(FAMILIES))
def test_round_trip(family):
    config = generate(GenSpec(family, SIZES[family], seed=11))
    back = parse_config(serialize_config(config))
    assert [c.key for c in back.components] == [c.key for c in config.components]
    assert config_to_dict(back) == config_to_dict(config)


def test_pseudostar_five_round_trip():
    config = generate(GenSpec("pseudostar", 5))
    assert parse_config(serialize_config(config)) == config


def test_gfp_round_trip():
    config = generate(GenSpec("random-lines", 3, seed=1, field=GF(10007)))
    assert json.loads(serialize_config(config))["field"] == {"GFp": 10007}
    assert parse_config(serialize_config(config)).field == GF(10007)


def test_random_lines_distinct():
    config = generate(GenSpec("random-lines", 8, seed=2))
    assert len({c.key for c in config.components}) == 8


def test_skew_document():
    doc = {"ambient": "P3", "field": "Q", "label": "x",
           "components": [{"kind": "line", "forms": [[1, 0, 0, 0], [0, 1, 0, 0]]},
                          {"kind": "line", "forms": [[0, 0, 1, 0], [0, 0, 0, 1]]}]}
    assert len(parse_config(json.dumps(doc))) == 2


def test_repeated_line_rejected():
    doc = {"ambient": "P3", "field": "Q",
           "components": [{"kind": "line", "forms": [[1, 0, 0, 0], [0, 1, 0, 0]]},
                          {"kind": "line", "forms": [[1, 1, 0, 0], [0, 2, 0, 0]]}]}
    with pytest.raises(DuplicateComponent):
        parse_config(json.dumps(doc))


@pytest.mark.parametrize(
    "doc,path",
    [
        ("[]", "$"),
        ('{"ambient": "P5", "field": "Q", "components": []}', "ambient"),
        ('{"ambient": "P3", "field": "R", "components": []}', "field"),
        ('{"ambient": "P3", "field": "Q", "components": []}', "components"),
        ('{"ambient": "P3", "field": "Q", "components": [{"kind": "point", "forms": [[1,0,0],[0,1,0]]}]}',
         "components[0].kind"),
        ('{"ambient": "P3", "field": "Q", "components": [{"kind": "line", "forms": [[1,0,0,0],[0,1,0]]}]}',
         "components[0].forms[1]"),
        ('{"ambient": "P3", "field": "Q", "components": [{"kind": "line", "forms": [[1,0,0,0],[0,1.5,0,0]]}]}',
         "components[0].forms[1][1]"),
    ],
)
def test_schema_errors_carry_paths(doc, path):
    with pytest.raises(SchemaError) as info:
        parse_config(doc)
    assert info.value.path == path


def test_dependent_forms_in_document():
    doc = '{"ambient": "P3", "field": "Q", "components": [{"kind": "line", "forms": [[1,0,0,0],[2,0,0,0]]}]}'
    with pytest.raises(DependentForms, match=r"components\[0\]"):
        parse_config(doc)


def test_invalid_json():
    with pytest.raises(SchemaError):
        parse_config("{not json")


def test_genspec_validation():
    with pytest.raises(InputError):
        GenSpec("nonsense", 3)
    with pytest.raises(InputError):
        GenSpec("pseudostar", 2)
    with pytest.raises(InputError):
        GenSpec("pseudostar")
    assert GenSpec("skew").field == QQ
