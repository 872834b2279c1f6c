"""Round-trips, canonical JSON bytes, newline discipline."""

from __future__ import annotations

import json
import math

import pytest
from hypothesis import given

import strategies as own
from femlab import (
    Grid,
    dumps_canonical,
    encode_value,
    envelope_from_dict,
    envelope_to_dict,
    grid_from_dict,
    load_json,
    make_pl,
    measure_from_dict,
    measure_to_dict,
    model_from_interval,
    monge_ampere,
    pl_equal,
    potential_from_dict,
    potential_to_dict,
    rat,
    space_from_dict,
    space_to_dict,
    write_csv,
    write_json,
    write_jsonl,
)
from femlab.errors import ParseError
from femlab.ghlimits import FiniteMetricSpace

GRID3 = Grid(nodes=(-1, 0, 1), polytope=(0, 1))
REF_ND = make_pl(GRID3, (0, rat(1, 4), 1), 0, 1)


@given(u=own.potentials_on(GRID3))
def test_potential_round_trip(u):
    again = potential_from_dict(potential_to_dict(u))
    assert pl_equal(again, u)
    assert again.grid == u.grid
    assert (again.slope_left, again.slope_right) == (u.slope_left, u.slope_right)


def test_potential_dict_uses_explicit_denominators():
    doc = potential_to_dict(REF_ND)
    assert doc["values"] == ["0/1", "1/4", "1/1"]
    assert doc["slope_left"] == "0/1"
    assert doc["nodes"] == ["-1/1", "0/1", "1/1"]


def test_grid_round_trip():
    doc = {"nodes": ["-1/1", "0/1", "1/1"], "polytope": ["0/1", "1/1"]}
    assert grid_from_dict(doc) == GRID3


@given(u=own.potentials_on(GRID3))
def test_measure_round_trip(u):
    mu = monge_ampere(u)
    again = measure_from_dict(measure_to_dict(mu))
    assert again.grid == mu.grid
    assert again.masses == mu.masses


def test_envelope_round_trip():
    psi = model_from_interval(GRID3, (rat(0), rat(3, 4)), REF_ND)
    again = envelope_from_dict(envelope_to_dict(psi))
    assert again.Q == psi.Q
    assert pl_equal(again.potential, psi.potential)
    assert pl_equal(again.reference, psi.reference)


def test_space_round_trip():
    x = FiniteMetricSpace(("a", "b"), ((0, rat(1, 2)), (rat(1, 2), 0)), 1)
    again = space_from_dict(space_to_dict(x))
    assert again.labels == x.labels
    assert again.matrix == x.matrix
    assert again.basepoint == 1


def test_parse_errors_name_the_missing_piece():
    with pytest.raises(ParseError, match="missing field 'values'"):
        potential_from_dict({"nodes": ["0/1", "1/1"], "polytope": ["0/1", "1/1"]})
    with pytest.raises(ParseError, match="bad rational"):
        grid_from_dict({"nodes": ["zero"], "polytope": ["0/1", "1/1"]})
    with pytest.raises(ParseError, match="bad rational"):
        grid_from_dict({"nodes": ["1/0"], "polytope": ["0/1", "1/1"]})
    with pytest.raises(ParseError, match="missing field"):
        measure_from_dict(None)


def test_dumps_canonical_sorts_keys_and_strips_spaces():
    a = dumps_canonical({"b": 1, "a": [2, 3]})
    b = dumps_canonical({"a": [2, 3], "b": 1})
    assert a == b == '{"a":[2,3],"b":1}'


def test_encode_value_handles_rationals_and_infinities():
    doc = encode_value({"d": rat(1, 4), "caps": [math.inf, -math.inf, 0.5], "n": 3})
    assert doc == {"d": "1/4", "caps": ["inf", "-inf", 0.5], "n": 3}


def test_write_json_round_trips_through_load(tmp_path):
    path = tmp_path / "doc.json"
    write_json(path, {"x": "1/2", "y": [1, 2]})
    assert load_json(path) == {"x": "1/2", "y": [1, 2]}
    raw = path.read_bytes()
    assert raw.endswith(b"\n") and raw.count(b"\n") == 1
    assert b"\r" not in raw


def test_write_jsonl_one_object_per_line(tmp_path):
    path = tmp_path / "rows.jsonl"
    write_jsonl(path, [{"i": 0}, {"i": 1}])
    lines = path.read_bytes().split(b"\n")
    assert lines[-1] == b""
    assert [json.loads(l) for l in lines[:-1]] == [{"i": 0}, {"i": 1}]


def test_write_csv_uses_bare_newlines(tmp_path):
    path = tmp_path / "table.csv"
    write_csv(path, ["a", "b"], [[1, "1/2"], [2, "3/4"]])
    raw = path.read_bytes()
    assert raw == b"a,b\n1,1/2\n2,3/4\n"


def test_load_json_raises_parse_error_on_junk(tmp_path):
    path = tmp_path / "junk.json"
    path.write_text("{not json")
    with pytest.raises(ParseError, match="invalid JSON"):
        load_json(path)
