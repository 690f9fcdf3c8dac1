import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from liesphere.apollonius import Configuration
from liesphere.cycles import Hyperplane, PointAtInfinity, PointSphere, Sphere
from liesphere.errors import ParseError, ValidationError
from liesphere.io import (
    ConfigDocument,
    ReportDocument,
    Residual,
    config_to_obj,
    parse_config,
    report_from_obj,
    serialize,
)
from liesphere.scenarios import SCENARIOS, ScenarioSpec, build_scenario, random_configuration

coord = st.floats(-1e6, 1e6, allow_nan=False)
radius = coord.filter(lambda r: r != 0)


@st.composite
def documents(draw):
    n = draw(st.integers(1, 4))
    vec = st.lists(coord, min_size=n, max_size=n)
    cycle = st.one_of(
        st.builds(lambda c, r: {"type": "sphere", "center": c, "radius": r}, vec, radius),
        st.builds(lambda p: {"type": "point", "coords": p}, vec),
        st.builds(
            lambda nrm, d, o: {"type": "hyperplane", "normal": nrm, "offset": d, "orientation": o},
            vec.filter(lambda v: np.linalg.norm(v) > 1e-3), coord, st.sampled_from([1, -1]),
        ),
        st.just({"type": "infinity"}),
    )
    obj = {"dimension": n, "cycles": draw(st.lists(cycle, max_size=6))}
    if draw(st.booleans()):
        obj["label"] = draw(st.text(alphabet="abc XYZ-=é\"", max_size=10))
    return json.dumps(obj)


def test_minimal_document():
    doc = parse_config('{"dimension":2,"cycles":[{"type":"sphere","center":[0,0],"radius":1}]}')
    assert doc.dimension == 2 and doc.cycles == (Sphere((0.0, 0.0), 1.0),)
    assert doc.label is None


def test_all_cycle_kinds():
    text = json.dumps({"dimension": 2, "label": "x", "cycles": [
        {"type": "sphere", "center": [1, 2], "radius": -3},
        {"type": "hyperplane", "normal": [0, 1], "offset": 2, "orientation": -1},
        {"type": "hyperplane", "normal": [1, 0], "offset": 0},
        {"type": "point", "coords": [1, 1]},
        {"type": "infinity"},
    ]})
    doc = parse_config(text)
    assert doc.cycles == (
        Sphere((1, 2), -3), Hyperplane((0.0, 1.0), 2.0, -1), Hyperplane((1.0, 0.0), 0.0, 1),
        PointSphere((1, 1)), PointAtInfinity(2),
    )
    assert doc.label == "x"


def test_zero_radius_points_to_point_type():
    with pytest.raises(ValidationError) as info:
        parse_config('{"dimension":2,"cycles":[{"type":"sphere","center":[0,0],"radius":0}]}')
    assert '"point"' in info.value.message
    assert info.value.path == "cycles[0].radius"


def test_non_unit_normal_is_normalized_with_a_note():
    doc = parse_config('{"dimension":2,"cycles":[{"type":"hyperplane","normal":[3,4],"offset":10}]}')
    h = doc.cycles[0]
    assert h.unit_normal == pytest.approx((0.6, 0.8)) and h.offset == pytest.approx(2.0)
    assert len(doc.diagnostics) == 1 and "normalized" in doc.diagnostics[0]


@pytest.mark.parametrize("text, path", [
    ('{"dimension":2,"cycles":[],"extra":1}', "extra"),
    ('{"dimension":2,"cycles":[{"type":"sphere","center":[0,0],"radius":1,"r":2}]}', "cycles[0].r"),
    ('{"dimension":2,"cycles":[{"type":"sphere","center":[0],"radius":1}]}', "cycles[0].center"),
    ('{"dimension":2,"cycles":[{"type":"sphere","center":[0,"a"],"radius":1}]}', "cycles[0].center[1]"),
    ('{"dimension":2,"cycles":[{"type":"sphere","center":[0,true],"radius":1}]}', "cycles[0].center[1]"),
    ('{"dimension":2,"cycles":[{"type":"disk"}]}', "cycles[0].type"),
    ('{"dimension":2,"cycles":[{"type":"hyperplane","normal":[0,1],"offset":0,"orientation":0}]}',
     "cycles[0].orientation"),
    ('{"dimension":2,"cycles":[{"type":"hyperplane","normal":[0,0],"offset":0}]}', "cycles[0].normal"),
    ('{"dimension":0,"cycles":[]}', "dimension"),
    ('{"dimension":2.5,"cycles":[]}', "dimension"),
    ('{"dimension":2,"cycles":{}}', "cycles"),
    ('{"dimension":2,"cycles":[],"label":3}', "label"),
    ('[1, 2]', "$"),
    ('{"cycles":[]}', "$"),
])
def test_validation_paths(text, path):
    with pytest.raises(ValidationError) as info:
        parse_config(text)
    assert info.value.path == path


@pytest.mark.parametrize("text", [
    '{"dimension":2,\n "cycles":[',
    '{"dimension":2,"cycles":[{"type":"sphere","center":[NaN,0],"radius":1}]}',
    '{"dimension":2,"dimension":3,"cycles":[]}',
    "",
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_config(text)


def test_parse_error_has_position():
    with pytest.raises(ParseError) as info:
        parse_config('{"dimension":2,\n "cycles":[')
    assert info.value.to_dict()["line"] == 2


@given(documents())
def test_round_trip(text):
    doc = parse_config(text)
    again = parse_config(serialize(doc))
    assert again == doc
    assert serialize(again) == serialize(doc)


@pytest.mark.parametrize("name", SCENARIOS)
def test_scenario_configurations_round_trip(name):
    cfg = build_scenario(ScenarioSpec(name))
    doc = parse_config(serialize(cfg))
    assert doc.to_configuration().cycles == cfg.cycles


def test_random_configurations_round_trip_bit_exact():
    for n in (2, 3, 5):
        cfg = random_configuration(n, 1)
        back = parse_config(serialize(cfg)).to_configuration()
        assert back.cycles == cfg.cycles


def test_to_configuration_checks_count():
    doc = parse_config('{"dimension":2,"cycles":[{"type":"point","coords":[0,0]}]}')
    with pytest.raises(ValidationError):
        doc.to_configuration()


def test_report_round_trip_and_consistency():
    rep = ReportDocument(
        theorem="first_level",
        residuals=[Residual("a", 1e-12, 1e-8), Residual("b", 2e-9, 1e-8)],
        tolerances={"verify": 1e-8},
        tool_version="0.1.0",
        point=(1.0, 1.0),
        seed=4,
    )
    obj = json.loads(rep.to_json())
    assert obj["pass"] is True and obj["seed"] == 4 and obj["point"] == [1.0, 1.0]
    assert report_from_obj(obj) == rep
    obj["pass"] = False
    with pytest.raises(ValidationError):
        report_from_obj(obj)


def test_failed_residual_and_infinite_value():
    rep = ReportDocument("scenario", [Residual("x", float("inf"), 0.0)], {}, "0.1.0")
    obj = json.loads(rep.to_json())
    assert obj["pass"] is False and obj["residuals"][0]["value"] is None
    with pytest.raises(ValueError):
        ReportDocument("bogus", [], {}, "0")


def test_config_to_obj_from_configuration():
    cfg = Configuration(1, [Sphere((0,), 1), Sphere((3,), 1), PointSphere((1,))], "line")
    assert config_to_obj(cfg)["label"] == "line"
    assert ConfigDocument.from_configuration(cfg).dimension == 1
