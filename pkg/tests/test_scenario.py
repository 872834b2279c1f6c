"""Scenario documents: parsing, validation wording, block execution."""

from __future__ import annotations

import copy
import json
import os

import pytest

from femlab import load_json, parse_scenario, run_scenario
from femlab.errors import AssertionFailed, ParseError, ValidationError

SCENARIO = os.path.join(os.path.dirname(__file__), "..", "scenarios", "canonical.json")


def base_doc():
    return {
        "grid": {"nodes": ["-1/1", "0/1", "1/1"], "polytope": ["0/1", "1/1"]},
        "reference": {
            "values": ["0/1", "1/4", "1/1"],
            "slope_left": "0/1",
            "slope_right": "1/1",
        },
        "experiments": [{"kind": "suite", "suite": "chains", "seed": 1, "count": 2}],
    }


def test_canonical_file_parses():
    scn = parse_scenario(load_json(SCENARIO))
    assert set(scn.potentials) == {"tent", "ramp"}
    assert set(scn.families) == {"nested"}
    assert len(scn.experiments) == 4
    assert scn.samples["seed"] == 2026


def test_document_must_be_an_object():
    with pytest.raises(ParseError, match="JSON object"):
        parse_scenario([1, 2])
    with pytest.raises(ParseError, match="experiments must be a list"):
        parse_scenario({"experiments": {"kind": "suite"}})


def test_empty_experiments_skip_all_other_validation():
    scn = parse_scenario({"experiments": []})
    assert scn.experiments == ()
    assert run_scenario({"experiments": []}, "/nonexistent/never-created") == []


def test_unknown_top_level_keys_are_rejected():
    doc = base_doc()
    doc["extra"] = 1
    with pytest.raises(ValidationError, match="unknown scenario keys: extra"):
        parse_scenario(doc)


def test_floats_are_not_rationals():
    doc = base_doc()
    doc["reference"]["values"][1] = 0.25
    with pytest.raises(ParseError, match='write the rational as "p/q"'):
        parse_scenario(doc)


def test_empty_intervals_are_rejected():
    doc = base_doc()
    doc["families"] = {"f": {"levels": [["1/2", "1/2"]], "limit": ["0/1", "1/2"]}}
    doc["experiments"] = [
        {"kind": "converge", "family": "f", "first": "a", "second": "a"}
    ]
    with pytest.raises(ValidationError, match="is empty"):
        parse_scenario(doc)


def test_degenerate_reference_is_rejected():
    doc = base_doc()
    # middle value on the chord: the slope measure misses the middle node
    doc["reference"]["values"] = ["0/1", "1/2", "1/1"]
    with pytest.raises(ValidationError, match="reference is degenerate"):
        parse_scenario(doc)


def test_nonconvex_potential_names_the_chord_pair():
    doc = base_doc()
    doc["potentials"] = {
        "bad": {"values": ["0/1", "1/1", "0/1"], "slope_left": "0/1", "slope_right": "1/1"}
    }
    with pytest.raises(ValidationError, match="potentials.bad.*decreases"):
        parse_scenario(doc)


def test_named_potentials_must_span_the_polytope():
    doc = base_doc()
    doc["potentials"] = {
        "narrow": {"values": ["0/1", "0/1", "1/2"], "slope_left": "0/1", "slope_right": "1/2"}
    }
    with pytest.raises(ValidationError, match="full-space"):
        parse_scenario(doc)


def test_bad_family_schedules_are_validation_errors():
    doc = base_doc()
    doc["families"] = {
        "f": {"levels": [["0/1", "3/4"], ["0/1", "3/4"]], "limit": ["0/1", "1/2"]}
    }
    with pytest.raises(ValidationError, match="families.f"):
        parse_scenario(doc)


def test_unresolved_names_are_caught():
    doc = base_doc()
    doc["experiments"] = [{"kind": "chain", "base": "ghost", "other": "ghost"}]
    with pytest.raises(ValidationError, match="unknown potential 'ghost'"):
        parse_scenario(doc)
    doc["experiments"] = [
        {"kind": "converge", "family": "ghost", "first": "a", "second": "b"}
    ]
    with pytest.raises(ValidationError, match="unknown family 'ghost'"):
        parse_scenario(doc)


def test_unknown_kinds_and_suites():
    doc = base_doc()
    doc["experiments"] = [{"kind": "prove"}]
    with pytest.raises(ValidationError, match="unknown kind 'prove'"):
        parse_scenario(doc)
    doc["experiments"] = [{"kind": "suite", "suite": "spectra", "seed": 1, "count": 1}]
    with pytest.raises(ValidationError, match="unknown suite 'spectra'"):
        parse_scenario(doc)


def test_seed_and_count_must_be_honest_integers():
    doc = base_doc()
    doc["experiments"][0]["seed"] = "1"
    with pytest.raises(ParseError, match="seed must be an integer"):
        parse_scenario(doc)
    doc = base_doc()
    doc["experiments"][0]["count"] = -3
    with pytest.raises(ParseError, match="count must be a non-negative integer"):
        parse_scenario(doc)
    doc = base_doc()
    doc["experiments"][0]["seed"] = True
    with pytest.raises(ParseError, match="seed must be an integer"):
        parse_scenario(doc)


def test_chain_steps_must_be_positive_integers():
    doc = load_json(SCENARIO)
    for block in doc["experiments"]:
        if block["kind"] == "chain":
            block["steps"] = [1, 0]
    with pytest.raises(ParseError, match="steps must be positive integers"):
        parse_scenario(doc)


def test_gh_needs_a_samples_block():
    doc = load_json(SCENARIO)
    del doc["samples"]
    doc["experiments"] = [b for b in doc["experiments"] if b["kind"] == "gh"]
    with pytest.raises(ValidationError, match="need a samples block"):
        parse_scenario(doc)


def test_gh_caps_must_be_a_nonempty_list():
    doc = load_json(SCENARIO)
    for block in doc["experiments"]:
        if block["kind"] == "gh":
            block["caps"] = []
    with pytest.raises(ParseError, match="caps must be a non-empty list"):
        parse_scenario(doc)


def test_run_writes_paths_in_block_order(tmp_path):
    paths = run_scenario(load_json(SCENARIO), str(tmp_path))
    names = [os.path.basename(p) for p in paths]
    assert names == [
        "suite_0_metric_axioms.jsonl",
        "converge_1.json",
        "chain_2.json",
        "gh_3.csv",
        "gh_3.json",
    ]
    assert all(os.path.exists(p) for p in paths)


def test_chain_block_reproduces_the_defect_law(tmp_path):
    run_scenario(load_json(SCENARIO), str(tmp_path))
    payload = json.loads((tmp_path / "chain_2.json").read_text())
    assert payload["check"] == "chain_defect_law"
    assert payload["pass"] is True
    assert payload["d"] == "1/4"
    chains = [row["chain"] for row in payload["rows"]]
    assert chains == ["1/2", "3/8", "5/16", "9/32", "17/64"]
    assert [row["defect"] for row in payload["rows"]] == [
        "1/4",
        "1/8",
        "1/16",
        "1/32",
        "1/64",
    ]
    assert payload["gap"] == "1/2"


def test_failing_block_raises_after_writing(tmp_path):
    doc = load_json(SCENARIO)
    doc["experiments"] = [
        b for b in doc["experiments"] if b["kind"] == "converge"
    ]
    doc["experiments"][0]["tolerance"] = 1e-9
    with pytest.raises(AssertionFailed) as err:
        run_scenario(doc, str(tmp_path))
    assert (tmp_path / "converge_0.json").exists()
    witnesses = err.value.witnesses
    assert witnesses[0]["block"] == 0
    assert witnesses[0]["kind"] == "converge"
    assert witnesses[0]["witness"]["pass"] is False
