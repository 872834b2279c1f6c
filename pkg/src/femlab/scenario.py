"""Scenario documents: one JSON file describing a deterministic run.

Schema (rationals are integers or canonical "p/q" strings; floats appear
only in caps and tolerances):

    {
      "grid": {"nodes": [...], "polytope": [a, b]},
      "reference": {"values": [...], "slope_left": s, "slope_right": s},
      "potentials": {"name": {"values": [...], "slope_left": s, "slope_right": s}},
      "families": {"name": {"levels": [[a, b], ...], "limit": [a, b]}},
      "samples": {"seed": int, "count": int, "cap": float, "sup_bound": float},
      "experiments": [
        {"kind": "suite", "suite": name, "seed": int, "count": int},
        {"kind": "converge", "family": name, "first": pot, "second": pot,
         "tolerance": float},
        {"kind": "chain", "base": pot, "other": pot, "interval": [a, b],
         "steps": [N, ...]},
        {"kind": "gh", "family": name, "caps": [c, ...], "tolerance": float}
      ]
    }

Every block with randomness carries an explicit seed, so identical files
produce byte-identical outputs.  An empty document runs nothing and
succeeds.  Output files are written before any failure is raised, so a
red run still leaves its full evidence on disk.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field

from ._rational import rat, rat_str
from .errors import (
    AssertionFailed,
    ConvexityViolation,
    ParseError,
    ScheduleInvalid,
    SlopeOutOfPolytope,
    ValidationError,
)
from .energy import energy_diff_report
from .families import (
    entropy_cap_filter,
    family_from_intervals,
    monotone_distance_convergence,
)
from .ghlimits import nested_family_distortions
from .grid_convex import (
    Grid,
    check_reference,
    make_pl,
    model_from_interval,
    model_project,
    pointwise_max,
)
from .measures import is_nondegenerate_reference
from .metric import chain_rho, dist, metric_context
from .report import encode_value
from .sampling import random_candidates
from .serialize import write_csv, write_json, write_jsonl
from .suites import SUITES, run_suite

DEFAULT_TOLERANCE = 1e-9
DEFAULT_CHAIN_STEPS = (1, 2, 4, 8, 16)

_TOP_KEYS = frozenset(
    ("grid", "reference", "potentials", "families", "samples", "experiments")
)
_KINDS = frozenset(("suite", "converge", "chain", "gh"))


@dataclass(frozen=True)
class Scenario:
    """Validated in-memory form of one scenario document."""

    grid: Grid = None
    reference: object = None
    potentials: dict = field(default_factory=dict)
    families: dict = field(default_factory=dict)
    samples: dict = None
    experiments: tuple = ()


def _require(doc, key, where):
    if key not in doc:
        raise ParseError("missing key %r in %s" % (key, where))
    return doc[key]


def _rational(value, where):
    if isinstance(value, float):
        raise ParseError(
            "%s: floats are not exact; write the rational as \"p/q\"" % where
        )
    try:
        return rat(value)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ParseError("%s: %s" % (where, exc))


def _interval(value, where):
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise ParseError("%s: interval must be a [lo, hi] pair" % where)
    lo = _rational(value[0], where)
    hi = _rational(value[1], where)
    if lo >= hi:
        raise ValidationError("%s: interval [%s, %s] is empty" % (where, rat_str(lo), rat_str(hi)))
    return (lo, hi)


def _potential(grid, spec, where):
    if not isinstance(spec, dict):
        raise ParseError("%s: expected an object" % where)
    values = [_rational(v, where + ".values") for v in _require(spec, "values", where)]
    sl = _rational(_require(spec, "slope_left", where), where + ".slope_left")
    sr = _rational(_require(spec, "slope_right", where), where + ".slope_right")
    try:
        return make_pl(grid, values, sl, sr)
    except (ConvexityViolation, SlopeOutOfPolytope, ValueError) as exc:
        raise ValidationError("%s: %s" % (where, exc))


def _seed(block, where):
    value = _require(block, "seed", where)
    if not isinstance(value, int) or isinstance(value, bool):
        raise ParseError("%s: seed must be an integer" % where)
    return value


def _count(block, where, default=None):
    value = block.get("count", default)
    if value is None:
        raise ParseError("missing key 'count' in %s" % where)
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise ParseError("%s: count must be a non-negative integer" % where)
    return value


def parse_scenario(doc) -> Scenario:
    """Validate one decoded JSON document into a Scenario.

    Structural problems (missing keys, bad rationals) raise ParseError;
    semantic ones (non-convex potential, degenerate reference, unresolved
    names, bad schedules) raise ValidationError.
    """
    if not isinstance(doc, dict):
        raise ParseError("scenario must be a JSON object")
    unknown = set(doc) - _TOP_KEYS
    if unknown:
        raise ValidationError("unknown scenario keys: %s" % ", ".join(sorted(unknown)))

    experiments = doc.get("experiments", [])
    if not isinstance(experiments, list):
        raise ParseError("experiments must be a list")
    if not experiments:
        return Scenario(experiments=())

    grid_spec = _require(doc, "grid", "scenario")
    nodes = [_rational(x, "grid.nodes") for x in _require(grid_spec, "nodes", "grid")]
    polytope = _interval(_require(grid_spec, "polytope", "grid"), "grid.polytope")
    try:
        grid = Grid(nodes=tuple(nodes), polytope=polytope)
    except ValueError as exc:
        raise ValidationError("grid: %s" % exc)

    reference = _potential(grid, _require(doc, "reference", "scenario"), "reference")
    check_reference(grid, reference)
    if not is_nondegenerate_reference(reference):
        raise ValidationError(
            "reference is degenerate: its slope measure must charge every node"
        )

    potentials = {}
    for name, spec in doc.get("potentials", {}).items():
        where = "potentials.%s" % name
        u = _potential(grid, spec, where)
        if u.dual_domain() != grid.polytope:
            raise ValidationError(
                "%s: named potentials are full-space data; end slopes must span "
                "the whole polytope (experiments project them into sectors)" % where
            )
        potentials[name] = u

    families = {}
    for name, spec in doc.get("families", {}).items():
        where = "families.%s" % name
        levels = [
            _interval(iv, where + ".levels") for iv in _require(spec, "levels", where)
        ]
        limit = _interval(_require(spec, "limit", where), where + ".limit")
        try:
            families[name] = family_from_intervals(grid, levels, limit, reference)
        except ScheduleInvalid as exc:
            raise ValidationError("%s: %s" % (where, exc))

    samples = doc.get("samples")
    if samples is not None:
        _seed(samples, "samples")
        _count(samples, "samples")

    def resolve(table, key, block, where, label):
        name = _require(block, key, where)
        if name not in table:
            raise ValidationError("%s: unknown %s %r" % (where, label, name))
        return name

    checked = []
    for i, block in enumerate(experiments):
        where = "experiments[%d]" % i
        if not isinstance(block, dict):
            raise ParseError("%s: expected an object" % where)
        kind = _require(block, "kind", where)
        if kind not in _KINDS:
            raise ValidationError(
                "%s: unknown kind %r; known: %s" % (where, kind, ", ".join(sorted(_KINDS)))
            )
        if kind == "suite":
            suite = _require(block, "suite", where)
            if suite not in SUITES:
                raise ValidationError("%s: unknown suite %r" % (where, suite))
            _seed(block, where)
            _count(block, where)
        elif kind == "converge":
            resolve(families, "family", block, where, "family")
            resolve(potentials, "first", block, where, "potential")
            resolve(potentials, "second", block, where, "potential")
        elif kind == "chain":
            resolve(potentials, "base", block, where, "potential")
            resolve(potentials, "other", block, where, "potential")
            if "interval" in block:
                _interval(block["interval"], where + ".interval")
            for n in block.get("steps", DEFAULT_CHAIN_STEPS):
                if not isinstance(n, int) or isinstance(n, bool) or n < 1:
                    raise ParseError("%s: steps must be positive integers" % where)
        else:
            resolve(families, "family", block, where, "family")
            caps = _require(block, "caps", where)
            if not isinstance(caps, list) or not caps:
                raise ParseError("%s: caps must be a non-empty list" % where)
            if samples is None:
                raise ValidationError(
                    "%s: gh experiments need a samples block for their seed" % where
                )
        checked.append(dict(block))

    return Scenario(
        grid=grid,
        reference=reference,
        potentials=potentials,
        families=families,
        samples=dict(samples) if samples is not None else None,
        experiments=tuple(checked),
    )


def _run_suite_block(scn, block, index, out_dir):
    records, summary = run_suite(
        block["suite"], block["seed"], block["count"], scn.grid, scn.reference
    )
    path = os.path.join(out_dir, "suite_%d_%s.jsonl" % (index, block["suite"]))
    write_jsonl(path, records + [summary])
    return summary["failures"] == 0, [path], {"summary": summary}


def _level_sequence(family, potential):
    envelopes = family.levels + (family.limit,)
    return [model_project(env, potential) for env in envelopes]


def _run_converge_block(scn, block, index, out_dir, tolerance):
    family = scn.families[block["family"]]
    tol = float(block.get("tolerance", tolerance))
    first = _level_sequence(family, scn.potentials[block["first"]])
    second = _level_sequence(family, scn.potentials[block["second"]])
    report = monotone_distance_convergence(family, first, second, tol)
    path = os.path.join(out_dir, "converge_%d.json" % index)
    write_json(path, report.as_dict())
    return report.passed, [path], report.as_dict()


def _run_chain_block(scn, block, index, out_dir):
    interval = block.get("interval")
    if interval is None:
        interval = scn.grid.polytope
    else:
        interval = _interval(interval, "experiments[%d].interval" % index)
    psi = model_from_interval(scn.grid, interval, scn.reference)
    ctx = metric_context(psi)
    base = model_project(psi, scn.potentials[block["base"]])
    other = model_project(psi, scn.potentials[block["other"]])
    hi, lo = pointwise_max(base, other), base
    d = dist(ctx, hi, lo)
    rep = energy_diff_report(ctx.energy_ctx, hi, lo)
    gap = rep.witnesses["int_against_ma_v"] - rep.witnesses["int_against_ma_u"]
    rows, passed = [], True
    for n in block.get("steps", DEFAULT_CHAIN_STEPS):
        value = chain_rho(ctx, hi, lo, n)
        defect = value - d
        rows.append({"N": n, "chain": value, "defect": defect})
        passed = passed and defect >= 0 and defect * (2 * n) == gap
    payload = {
        "check": "chain_defect_law",
        "pass": passed,
        "d": encode_value(d),
        "gap": encode_value(gap),
        "rows": encode_value(rows),
    }
    path = os.path.join(out_dir, "chain_%d.json" % index)
    write_json(path, payload)
    return passed, [path], payload


def _run_gh_block(scn, block, index, out_dir, tolerance):
    family = scn.families[block["family"]]
    rng = random.Random(scn.samples["seed"])
    candidates = random_candidates(rng, scn.grid, scn.reference, scn.samples["count"])
    if "cap" in scn.samples or "sup_bound" in scn.samples:
        pool = entropy_cap_filter(
            candidates,
            float(scn.samples.get("cap", float("inf"))),
            float(scn.samples.get("sup_bound", float("inf"))),
            scn.reference,
        )
        candidates = list(pool.members)
    tol = float(block.get("tolerance", tolerance))
    rows, report = nested_family_distortions(family, candidates, block["caps"], tol)
    csv_path = os.path.join(out_dir, "gh_%d.csv" % index)
    write_csv(
        csv_path,
        ("cap", "level", "members", "distortion", "distortion_float"),
        [
            (
                row["cap"],
                row["level"],
                row["members"],
                rat_str(row["distortion"]),
                float(row["distortion"]),
            )
            for row in rows
        ],
    )
    json_path = os.path.join(out_dir, "gh_%d.json" % index)
    write_json(json_path, report.as_dict())
    return report.passed, [csv_path, json_path], report.as_dict()


def run_scenario(doc, out_dir, tolerance: float = DEFAULT_TOLERANCE):
    """Execute a decoded scenario document, writing artifacts into out_dir.

    Returns the list of written paths.  Raises AssertionFailed after all
    blocks have run (and all files are written) if any block failed; the
    exception carries per-block witnesses.
    """
    scn = parse_scenario(doc)
    if not scn.experiments:
        return []
    os.makedirs(out_dir, exist_ok=True)
    written, failures = [], []
    for i, block in enumerate(scn.experiments):
        kind = block["kind"]
        if kind == "suite":
            passed, paths, witness = _run_suite_block(scn, block, i, out_dir)
        elif kind == "converge":
            passed, paths, witness = _run_converge_block(scn, block, i, out_dir, tolerance)
        elif kind == "chain":
            passed, paths, witness = _run_chain_block(scn, block, i, out_dir)
        else:
            passed, paths, witness = _run_gh_block(scn, block, i, out_dir, tolerance)
        written.extend(paths)
        if not passed:
            failures.append({"block": i, "kind": kind, "witness": witness})
    if failures:
        exc = AssertionFailed(
            "%d of %d experiment blocks failed" % (len(failures), len(scn.experiments))
        )
        exc.witnesses = failures
        raise exc
    return written
