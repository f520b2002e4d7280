"""Simulated distributed overlap-estimation campaigns.

A scenario file pins down everything: the functional, the state preparation
per vertex, the device fleet, the edge-to-device assignment, shot counts,
and the master seed. Running a scenario is pure computation; the scenario
and report files are the whole protocol surface, so runs are replayable
byte for byte. The random stream of an edge depends only on the master
seed and the edge's canonical index, never on which device it landed on,
so re-assigning devices does not change the drawn statistics.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

import numpy as np

from .graphs import Edge, LinearFunctional, edge_key, functional_by_name, functional_from_doc
from .states import PureState, depolarize, named_state, overlap
from .witness import (
    OverlapEstimate,
    Verdict,
    certify_set_magic,
    hoeffding_halfwidth,
    proven_witness_name,
)

MAX_SCENARIO_QUBITS = 12
CI_METHOD = "hoeffding_union_bound"
THREADS_ENV = "MAGIC_CERT_THREADS"

STRATEGIES = ("single", "round_robin", "explicit")
STATE_SOURCES = ("local", "referee")

_SCENARIO_FIELDS = {
    "n", "vertices", "functional", "qpus", "assignment",
    "shots_per_edge", "delta", "master_seed", "state_source",
}


class ScenarioValidationError(ValueError):
    """Carries every validation failure, each tagged with its JSON path."""

    def __init__(self, errors: list[str]):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


@dataclass(frozen=True)
class QpuSpec:
    id: str
    qubit_capacity: int
    depolarizing_nu: float

    def __post_init__(self):
        if not self.id:
            raise ValueError("qpu id must be nonempty")
        if self.qubit_capacity < 1:
            raise ValueError("qubit_capacity must be positive")
        if not 0.0 <= self.depolarizing_nu <= 1.0:
            raise ValueError("depolarizing_nu must lie in [0, 1]")


@dataclass(frozen=True)
class Assignment:
    strategy: str
    qpu_id: Optional[str] = None
    edge_map: Optional[Mapping[Edge, str]] = None

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown assignment strategy {self.strategy!r}")
        if self.strategy == "single" and not self.qpu_id:
            raise ValueError("single strategy needs a qpu_id")
        if self.strategy == "explicit" and not self.edge_map:
            raise ValueError("explicit strategy needs an edge map")


@dataclass(frozen=True)
class Scenario:
    n: int
    vertices: Mapping[int, object]
    functional: LinearFunctional
    qpus: tuple[QpuSpec, ...]
    assignment: Assignment
    shots_per_edge: int
    delta: float
    master_seed: int
    state_source: str = "local"


def _entropy(seed: int) -> int:
    return seed & 0xFFFFFFFFFFFFFFFF


def swap_test_sample(rho, sigma, shots: int, stream: np.random.Generator) -> tuple[int, float]:
    """Simulate one swap-test campaign on a state pair.

    Outcome 0 fires with probability (1 + Tr(rho sigma)) / 2; the overlap
    estimate 2 zeros/shots - 1 is clipped into [0, 1].
    """
    if shots < 1:
        raise ValueError("shots must be positive")
    p_zero = 0.5 * (1.0 + overlap(rho, sigma))
    zeros = int(stream.binomial(shots, min(p_zero, 1.0)))
    estimate = min(max(2.0 * zeros / shots - 1.0, 0.0), 1.0)
    return zeros, estimate


def assign_edges(
    edges: Sequence[Edge], assignment: Assignment, qpus: Sequence[QpuSpec], n: int
) -> dict[Edge, str]:
    """Total edge-to-device map, capacity-checked (a swap job takes 2n+1 qubits)."""
    edges = sorted(edge_key(*e) for e in edges)
    by_id = {q.id: q for q in qpus}
    if len(by_id) != len(qpus):
        raise ValueError("duplicate qpu ids")
    if assignment.strategy == "single":
        if assignment.qpu_id not in by_id:
            raise ValueError(f"unknown qpu id {assignment.qpu_id!r}")
        mapping = {e: assignment.qpu_id for e in edges}
    elif assignment.strategy == "round_robin":
        mapping = {e: qpus[k % len(qpus)].id for k, e in enumerate(edges)}
    else:
        mapping = {}
        for e, qid in assignment.edge_map.items():
            e = edge_key(*e)
            if qid not in by_id:
                raise ValueError(f"unknown qpu id {qid!r} for edge {e}")
            mapping[e] = qid
        missing = set(edges) - set(mapping)
        extra = set(mapping) - set(edges)
        if missing or extra:
            raise ValueError(
                f"explicit assignment must cover the edges exactly; "
                f"missing {sorted(missing)}, extra {sorted(extra)}"
            )
    needed = 2 * n + 1
    for qid in sorted(set(mapping.values())):
        if by_id[qid].qubit_capacity < needed:
            raise ValueError(
                f"qpu {qid!r} capacity {by_id[qid].qubit_capacity} cannot fit "
                f"a swap job needing {needed} qubits (2n+1 for n={n})"
            )
    return mapping


@dataclass(frozen=True)
class RunReport:
    estimates: tuple[OverlapEstimate, ...]
    assignments: Mapping[Edge, str]
    workload: Mapping[str, dict]
    verdict: Verdict
    master_seed: int
    timestamp: Optional[str] = None


def _worker_count(n_jobs: int) -> int:
    cap = os.environ.get(THREADS_ENV)
    workers = os.cpu_count() or 1
    if cap is not None:
        try:
            workers = min(workers, int(cap))
        except ValueError:
            raise ValueError(f"{THREADS_ENV} must be an integer, got {cap!r}")
        if workers < 1:
            raise ValueError(f"{THREADS_ENV} must be at least 1")
    return max(1, min(workers, n_jobs))


def run_scenario(scenario: Scenario, timestamp: Optional[str] = None) -> RunReport:
    """Execute every edge job and certify the outcome.

    Deterministic in the scenario content: the sampling stream of edge k
    (in canonical sorted order) is seeded by (master_seed, k). The report
    carries no wall-clock time unless the caller supplies one.
    """
    f = scenario.functional
    edges = list(f.support)
    mapping = assign_edges(edges, scenario.assignment, scenario.qpus, scenario.n)
    by_id = {q.id: q for q in scenario.qpus}
    states = {v: named_state(lbl, scenario.n) for v, lbl in scenario.vertices.items()}
    per_edge_delta = scenario.delta / len(edges)
    ci = hoeffding_halfwidth(scenario.shots_per_edge, per_edge_delta)

    def job(k_edge: tuple[int, Edge]) -> OverlapEstimate:
        k, e = k_edge
        qpu = by_id[mapping[e]]
        u, v = e
        if scenario.state_source == "local":
            ru = depolarize(states[u], qpu.depolarizing_nu)
            rv = depolarize(states[v], qpu.depolarizing_nu)
        else:
            ru, rv = states[u], states[v]
        stream = np.random.default_rng([_entropy(scenario.master_seed), k])
        _, estimate = swap_test_sample(ru, rv, scenario.shots_per_edge, stream)
        return OverlapEstimate(e, estimate, scenario.shots_per_edge, ci, "swap_test")

    jobs = list(enumerate(edges))
    workers = _worker_count(len(jobs))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            estimates = tuple(pool.map(job, jobs))
    else:
        estimates = tuple(job(j) for j in jobs)

    verdict = certify_set_magic(f, estimates, scenario.delta)
    workload: dict[str, dict] = {}
    for e in edges:
        entry = workload.setdefault(mapping[e], {"edges": [], "total_shots": 0})
        entry["edges"].append(list(e))
        entry["total_shots"] += scenario.shots_per_edge
    return RunReport(estimates, mapping, workload, verdict, scenario.master_seed, timestamp)


def report_to_doc(report: RunReport) -> dict:
    return {
        "estimates": [
            {
                "edge": list(est.edge),
                "mean": est.mean,
                "ci_halfwidth": est.ci_halfwidth,
                "shots": est.shots,
                "method": est.method,
                "qpu": report.assignments[est.edge],
            }
            for est in report.estimates
        ],
        "workload": {qid: dict(w) for qid, w in sorted(report.workload.items())},
        "verdict": report.verdict.to_doc(),
        "meta": {
            "master_seed": report.master_seed,
            "ci_method": CI_METHOD,
            "timestamp": report.timestamp,
        },
    }


def estimates_csv(report: RunReport) -> str:
    lines = ["edge_i,edge_j,mean,ci,shots,qpu"]
    for est in report.estimates:
        i, j = est.edge
        lines.append(
            f"{i},{j},{est.mean!r},{est.ci_halfwidth!r},{est.shots},{report.assignments[est.edge]}"
        )
    return "\n".join(lines) + "\n"


def validate_report_doc(doc) -> list[str]:
    """Structural check of a report document; returns a list of problems."""
    problems = []
    if not isinstance(doc, dict):
        return ["report: must be an object"]
    for key in ("estimates", "workload", "verdict", "meta"):
        if key not in doc:
            problems.append(f"{key}: missing")
    if problems:
        return problems
    if not isinstance(doc["estimates"], list) or not doc["estimates"]:
        problems.append("estimates: must be a nonempty array")
    else:
        for k, est in enumerate(doc["estimates"]):
            for field, kinds in (
                ("edge", list), ("mean", (int, float)), ("ci_halfwidth", (int, float)),
                ("shots", int), ("method", str), ("qpu", str),
            ):
                if not isinstance(est, dict) or field not in est or not isinstance(est[field], kinds):
                    problems.append(f"estimates[{k}].{field}: missing or wrong type")
    verdict = doc["verdict"]
    for field in ("kind", "functional", "point", "conservative", "threshold", "confidence", "edges"):
        if not isinstance(verdict, dict) or field not in verdict:
            problems.append(f"verdict.{field}: missing")
    meta = doc["meta"]
    for field in ("master_seed", "ci_method", "timestamp"):
        if not isinstance(meta, dict) or field not in meta:
            problems.append(f"meta.{field}: missing")
    return problems


def _parse_vertices(raw, f: LinearFunctional, n: int, errors: list[str]) -> dict:
    if not isinstance(raw, dict):
        errors.append("vertices: must be an object keyed by vertex index")
        return {}
    vertices: dict[int, object] = {}
    for key, label in raw.items():
        try:
            v = int(key)
        except (TypeError, ValueError):
            errors.append(f"vertices.{key}: key is not a vertex index")
            continue
        if v not in f.graph.vertices:
            errors.append(f"vertices.{key}: not a vertex of the graph (1..{f.graph.m})")
            continue
        try:
            named_state(label, n)
        except ValueError as exc:
            errors.append(f"vertices.{key}: {exc}")
            continue
        vertices[v] = label
    missing = sorted(set(f.graph.vertices) - set(vertices))
    if missing:
        errors.append(f"vertices: missing labels for vertices {missing}")
    return vertices


def _parse_assignment(raw, errors: list[str]) -> Optional[Assignment]:
    if not isinstance(raw, dict):
        errors.append("assignment: must be an object")
        return None
    strategy = raw.get("strategy")
    if strategy not in STRATEGIES:
        errors.append(f"assignment.strategy: must be one of {list(STRATEGIES)}")
        return None
    if strategy == "single":
        extra = set(raw) - {"strategy", "qpu_id"}
        if extra:
            errors.append(f"assignment: unexpected fields {sorted(extra)}")
        qpu_id = raw.get("qpu_id")
        if not isinstance(qpu_id, str) or not qpu_id:
            errors.append("assignment.qpu_id: nonempty string required")
            return None
        return Assignment("single", qpu_id=qpu_id)
    if strategy == "round_robin":
        extra = set(raw) - {"strategy"}
        if extra:
            errors.append(f"assignment: unexpected fields {sorted(extra)}")
        return Assignment("round_robin")
    extra = set(raw) - {"strategy", "edges"}
    if extra:
        errors.append(f"assignment: unexpected fields {sorted(extra)}")
    raw_edges = raw.get("edges")
    if not isinstance(raw_edges, dict) or not raw_edges:
        errors.append("assignment.edges: object mapping 'i-j' to qpu id required")
        return None
    edge_map = {}
    for key, qid in raw_edges.items():
        parts = str(key).split("-")
        try:
            i, j = (int(p) for p in parts)
            e = edge_key(i, j)
        except ValueError:
            errors.append(f"assignment.edges[{key!r}]: key must look like 'i-j'")
            continue
        if not isinstance(qid, str) or not qid:
            errors.append(f"assignment.edges[{key!r}]: qpu id must be a nonempty string")
            continue
        edge_map[e] = qid
    return Assignment("explicit", edge_map=edge_map) if edge_map else None


def scenario_from_json(doc) -> Scenario:
    """Parse and fully validate a scenario document.

    Strict: unknown fields are rejected, and every failure is collected
    (with its JSON path) before raising, so one round trip surfaces all
    problems.
    """
    if not isinstance(doc, dict):
        raise ScenarioValidationError(["scenario: must be a JSON object"])
    errors: list[str] = []
    for key in sorted(set(doc) - _SCENARIO_FIELDS):
        errors.append(f"{key}: unexpected field")
    for key in ("n", "vertices", "functional", "qpus", "assignment",
                "shots_per_edge", "delta", "master_seed"):
        if key not in doc:
            errors.append(f"{key}: missing")
    if errors:
        raise ScenarioValidationError(errors)

    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool) or not 1 <= n <= MAX_SCENARIO_QUBITS:
        errors.append(f"n: integer in 1..{MAX_SCENARIO_QUBITS} required")
        raise ScenarioValidationError(errors)

    f: Optional[LinearFunctional] = None
    raw_f = doc["functional"]
    try:
        if isinstance(raw_f, str):
            f = functional_by_name(raw_f)
        elif isinstance(raw_f, dict):
            f = functional_from_doc(raw_f)
        else:
            raise ValueError("must be a functional name or an inline functional object")
    except ValueError as exc:
        errors.append(f"functional: {exc}")
    if f is not None:
        # scenarios exist to certify; a functional this machinery cannot
        # certify is caught here, before any sampling
        try:
            proven_witness_name(f)
        except ValueError as exc:
            errors.append(f"functional: {exc}")

    qpus: list[QpuSpec] = []
    raw_qpus = doc["qpus"]
    if not isinstance(raw_qpus, list) or not raw_qpus:
        errors.append("qpus: nonempty array required")
    else:
        for k, raw_q in enumerate(raw_qpus):
            if not isinstance(raw_q, dict):
                errors.append(f"qpus[{k}]: must be an object")
                continue
            extra = set(raw_q) - {"id", "qubit_capacity", "depolarizing_nu"}
            if extra:
                errors.append(f"qpus[{k}]: unexpected fields {sorted(extra)}")
                continue
            try:
                qpus.append(
                    QpuSpec(
                        str(raw_q.get("id", "")),
                        int(raw_q.get("qubit_capacity", 0)),
                        float(raw_q.get("depolarizing_nu", 0.0)),
                    )
                )
            except (TypeError, ValueError) as exc:
                errors.append(f"qpus[{k}]: {exc}")

    shots = doc["shots_per_edge"]
    if not isinstance(shots, int) or isinstance(shots, bool) or shots < 1:
        errors.append("shots_per_edge: positive integer required")
    delta = doc["delta"]
    if not isinstance(delta, (int, float)) or isinstance(delta, bool) or not 0.0 < delta < 1.0:
        errors.append("delta: number in (0, 1) required")
    master_seed = doc["master_seed"]
    if not isinstance(master_seed, int) or isinstance(master_seed, bool):
        errors.append("master_seed: integer required")
    state_source = doc.get("state_source", "local")
    if state_source not in STATE_SOURCES:
        errors.append(f"state_source: must be one of {list(STATE_SOURCES)}")

    vertices = _parse_vertices(doc["vertices"], f, n, errors) if f is not None else {}
    assignment = _parse_assignment(doc["assignment"], errors)

    if f is not None and assignment is not None and qpus and not errors:
        try:
            assign_edges(list(f.support), assignment, qpus, n)
        except ValueError as exc:
            errors.append(f"assignment: {exc}")

    if errors:
        raise ScenarioValidationError(errors)
    return Scenario(
        n=n,
        vertices=vertices,
        functional=f,
        qpus=tuple(qpus),
        assignment=assignment,
        shots_per_edge=shots,
        delta=float(delta),
        master_seed=master_seed,
        state_source=state_source,
    )
