"""Job descriptions, the batch runner, and deterministic reports.

A job is a JSON document: a field, variables, a defining ideal, a nestable
DG-ring construction, and a task list.  Reports echo the job, carry one
result record per task (failures are isolated per task), and serialize to
canonical JSON: identical jobs give byte-identical reports.  Timings never
enter the canonical report.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import groebner as gb
from .checks import CheckInputError, run_check
from .complexes import homology_hilbert_functions, truncation_oracle
from .dgring import DGRingRep, ElementOfH0, dg_from_ring, dg_tensor, koszul, trivial_extension
from .duality import (
    betti_table,
    dualizing_complex,
    dualizing_of_koszul,
    free_resolution,
    is_gorenstein_ring,
)
from .fields import field_from_json
from .hilbert import NEG_INF
from .invariants import compute_invariants, sentinel_json
from .modules import FPModule
from .parse import ParseError, parse_poly
from .rings import QuotientRing, quotient_ring_from_strings

SCHEMA_VERSION = 1


class JobError(ValueError):
    pass


@dataclass
class RunConfig:
    oracle_depth: int = 8
    budget: int = 400
    degree_cap: int | None = None

    def apply(self):
        if self.degree_cap is not None:
            gb.set_degree_cap(self.degree_cap)


def _build_module(spec: dict, ring: QuotientRing) -> FPModule:
    twists = tuple(spec.get("twists", (0,)))
    rels = []
    for col in spec.get("rels", []):
        if len(col) != len(twists):
            raise JobError("module relation column length must match twists")
        rels.append(tuple(parse_poly(t, ring.poly_ring) for t in col))
    return FPModule.cokernel(ring, twists, rels)


def build_dg(spec: dict, ring: QuotientRing) -> DGRingRep:
    kind = spec.get("kind", "ring")
    if kind == "ring":
        return dg_from_ring(ring)
    if kind == "koszul":
        base = build_dg(spec.get("base", {"kind": "ring"}), ring)
        degrees = spec.get("degrees")
        elems = []
        for idx, text in enumerate(spec.get("elements", [])):
            p = parse_poly(text, ring.poly_ring)
            deg = degrees[idx] if degrees is not None else None
            elems.append(ElementOfH0(p, degree=deg if p.is_zero() else None))
        return koszul(base, elems)
    if kind == "trivial_extension":
        module = _build_module(spec.get("module", {}), ring)
        return trivial_extension(ring, module, spec.get("shift", 1))
    if kind == "tensor":
        left = build_dg(spec["left"], ring)
        right = build_dg(spec["right"], ring)
        return dg_tensor(left, right)
    raise JobError(f"unknown dg construction {kind!r}")


def _job_context(job: dict):
    field = field_from_json(job.get("field"))
    variables = job.get("vars")
    if not variables:
        raise JobError("job must list variables")
    try:
        ring = quotient_ring_from_strings(variables, job.get("ideal", []), field)
        dg = build_dg(job.get("dg", {"kind": "ring"}), ring)
    except ParseError as exc:
        raise JobError(f"parse error: {exc}") from exc
    return field, ring, dg


def _task_invariants(dg: DGRingRep, task: dict, config: RunConfig) -> dict:
    ideals = task.get("ideals") or {}
    report = compute_invariants(
        dg,
        ideals=ideals,
        with_witness=task.get("witness", True),
        budget=config.budget,
    )
    return report.to_json()


def _oracle_record(K, depth: int) -> dict:
    oracle = truncation_oracle(K.underlying, depth)
    symbolic = homology_hilbert_functions(K.underlying, depth)
    return {
        "depth": depth,
        "agrees": oracle == symbolic,
        "oracle": {str(i): {str(t): v for t, v in row.items()} for i, row in sorted(oracle.items())},
    }


def _task_koszul(dg: DGRingRep, task: dict, config: RunConfig) -> dict:
    K = koszul(dg, task.get("elements", []))
    out = {
        "inf": sentinel_json(K.inf()),
        "sup": sentinel_json(K.sup()),
        "amp": sentinel_json(K.amp()),
        "h0_hilbert": K.h0.hilbert_series().to_json(),
        "dim_h0": sentinel_json(NEG_INF if K.h0.is_trivial() else K.h0.dim()),
        "homology": {
            str(i): hs.to_json() for i, hs in sorted(K.homology_table().items())
        },
    }
    depth = task.get("oracle_depth", config.oracle_depth)
    if depth:
        out["oracle"] = _oracle_record(K, depth)
    return out


def _task_duality(dg: DGRingRep, task: dict, config: RunConfig) -> dict:
    ring = dg.base
    gor, data = is_gorenstein_ring(ring)
    R = dualizing_complex(ring)
    out = {
        "ring_gorenstein": gor,
        "ring_data": data,
        "dualizing_amp": sentinel_json(R.amp()),
        "dualizing_inf": sentinel_json(R.inf()),
    }
    elements = task.get("elements")
    K = None
    if elements:
        K = koszul(dg, elements)
    elif dg.provenance[0] == "koszul":
        K = dg
    if K is not None and K.root_ring() is not None:
        D = dualizing_of_koszul(K)
        out["amp_koszul"] = sentinel_json(K.amp())
        out["amp_dual"] = sentinel_json(D.amp())
        out["amp_equal"] = out["amp_koszul"] == out["amp_dual"]
        out["dual_homology"] = {
            str(i): hs.to_json() for i, hs in sorted(D.homology_table().items())
        }
    return out


_SEQUENCE_KEYS = ("elements", "ideal", "first", "second", "alternates", "images")


def _resolve_sequences(task: dict, sequences: dict) -> dict:
    """Replace string-valued element lists with named top-level sequences."""
    out = dict(task)
    for key in _SEQUENCE_KEYS:
        value = out.get(key)
        if isinstance(value, str):
            if value not in sequences:
                raise JobError(f"unknown sequence name {value!r}")
            out[key] = sequences[value]
    if isinstance(out.get("alt_gens"), list):
        out["alt_gens"] = [
            sequences[v] if isinstance(v, str) else v for v in out["alt_gens"]
        ]
    return out


def _expect_matches(expected, actual) -> bool:
    """Deep subset comparison: every expected key/value must be present."""
    if isinstance(expected, dict):
        if not isinstance(actual, dict):
            return False
        return all(
            k in actual and _expect_matches(v, actual[k])
            for k, v in expected.items()
        )
    if isinstance(expected, list):
        return expected == actual
    return expected == actual


def run_job(job: dict, config: RunConfig | None = None) -> dict:
    """Execute all tasks in a job; per-task failures are isolated."""
    config = config or RunConfig()
    config.apply()
    report = {
        "schema": SCHEMA_VERSION,
        "job": job,
        "results": [],
        "notes": [],
    }
    try:
        field, ring, dg = _job_context(job)
    except (JobError, gb.InhomogeneousError, ValueError) as exc:
        report["error"] = str(exc)
        report["status"] = "input-error"
        return report
    sequences = job.get("sequences", {})
    for idx, task in enumerate(job.get("tasks", [])):
        kind = task.get("task")
        record = {"index": idx, "task": kind}
        try:
            task = _resolve_sequences(task, sequences)
            if kind == "invariants":
                record["result"] = _task_invariants(dg, task, config)
            elif kind == "koszul":
                record["result"] = _task_koszul(dg, task, config)
            elif kind == "duality":
                record["result"] = _task_duality(dg, task, config)
            elif kind == "check":
                record["result"] = run_check(
                    task.get("name", ""), dg, task, config
                )
            else:
                raise JobError(f"unknown task kind {kind!r}")
            record["status"] = "ok"
        except gb.DegreeCapExceeded as exc:
            record["status"] = "resource-cap"
            record["error"] = str(exc)
        except (JobError, CheckInputError, ParseError, ValueError) as exc:
            record["status"] = "error"
            record["error"] = str(exc)
        expected = task.get("expect")
        if expected is not None and record["status"] == "ok":
            # normalize tuples/int-keys through a JSON round trip
            actual = json.loads(json.dumps(record["result"]))
            if isinstance(expected, str):
                record["expected"] = expected
                record["meets_expectation"] = actual.get("verdict") == expected
            else:
                record["expected"] = expected
                record["meets_expectation"] = _expect_matches(expected, actual)
        elif expected is not None:
            record["expected"] = expected
            record["meets_expectation"] = False
        if record.get("result", {}).get("discrepancy_note"):
            report["notes"].append(
                {"task": idx, "note": record["result"]["discrepancy_note"]}
            )
        report["results"].append(record)
    statuses = [r["status"] for r in report["results"]]
    if any(s == "resource-cap" for s in statuses):
        report["status"] = "resource-cap"
    elif any(s == "error" for s in statuses):
        report["status"] = "task-error"
    else:
        report["status"] = "ok"
    report["expectations_met"] = all(
        r.get("meets_expectation", True) for r in report["results"]
    )
    return report


def canonical_json(report: dict) -> str:
    """Byte-stable serialization (no timings, sorted keys)."""
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def run_suite(paths, config: RunConfig | None = None) -> dict:
    """Run every fixture job and aggregate expectation outcomes."""
    config = config or RunConfig()
    aggregate = {
        "schema": SCHEMA_VERSION,
        "fixtures": [],
        "missing": [],
    }
    all_ok = True
    for path in sorted(str(p) for p in paths):
        entry = {"fixture": path.split("/")[-1]}
        try:
            with open(path, "r", encoding="utf-8") as fh:
                job = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            entry["status"] = "unreadable"
            entry["error"] = str(exc)
            aggregate["missing"].append(entry)
            all_ok = False
            continue
        report = run_job(job, config)
        entry["status"] = report["status"]
        entry["expectations_met"] = report["expectations_met"]
        entry["report"] = report
        if not (report["status"] == "ok" and report["expectations_met"]):
            all_ok = False
        aggregate["fixtures"].append(entry)
    aggregate["all_passed"] = all_ok
    return aggregate
