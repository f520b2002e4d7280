import copy
import json

import numpy as np
import pytest

from conftest import random_density
from magiccert.graphs import cycle_functional
from magiccert.network import (
    Assignment,
    QpuSpec,
    ScenarioValidationError,
    assign_edges,
    estimates_csv,
    report_to_doc,
    run_scenario,
    scenario_from_json,
    swap_test_sample,
    validate_report_doc,
)
from magiccert.states import named_state, overlap, random_pure


def _scenario_doc(**over):
    doc = {
        "n": 1,
        "vertices": {"1": "zero", "2": "plus", "3": "one"},
        "functional": "c3",
        "qpus": [
            {"id": "alpha", "qubit_capacity": 5, "depolarizing_nu": 0.0},
            {"id": "beta", "qubit_capacity": 5, "depolarizing_nu": 0.0},
        ],
        "assignment": {"strategy": "round_robin"},
        "shots_per_edge": 2000,
        "delta": 0.05,
        "master_seed": 11,
    }
    doc.update(over)
    return doc


def test_swap_test_extremes():
    rng = np.random.default_rng(0)
    zeros, est = swap_test_sample(named_state("zero"), named_state("zero"), 5000, rng)
    assert zeros == 5000 and est == 1.0
    _, est = swap_test_sample(named_state("zero"), named_state("one"), 1_000_000,
                              np.random.default_rng(1))
    assert est < 0.01  # p(0) = 1/2, estimate clips at 0
    with pytest.raises(ValueError):
        swap_test_sample(named_state("zero"), named_state("zero"), 0, rng)


def test_swap_test_estimator_consistency():
    rng = np.random.default_rng(77)
    for _ in range(10):
        dim = int(rng.integers(2, 5))
        a = random_pure(dim, rng)
        b = random_density(dim, rng)
        true = overlap(a, b)
        _, est = swap_test_sample(a, b, 2_000_000, np.random.default_rng(int(rng.integers(1 << 30))))
        assert abs(est - true) < 0.005


def test_assign_edges_strategies():
    edges = [(1, 2), (1, 3), (2, 3)]
    qpus = (QpuSpec("a", 3, 0.0), QpuSpec("b", 3, 0.0))
    single = assign_edges(edges, Assignment("single", qpu_id="a"), qpus, 1)
    assert set(single.values()) == {"a"}
    rr = assign_edges(edges, Assignment("round_robin"), qpus, 1)
    assert rr == {(1, 2): "a", (1, 3): "b", (2, 3): "a"}
    explicit = assign_edges(
        edges,
        Assignment("explicit", edge_map={(1, 2): "a", (1, 3): "a", (2, 3): "b"}),
        qpus, 1,
    )
    assert explicit[(2, 3)] == "b"


def test_assign_edges_errors():
    edges = [(1, 2), (1, 3), (2, 3)]
    qpus = (QpuSpec("a", 3, 0.0), QpuSpec("b", 3, 0.0))
    with pytest.raises(ValueError):
        assign_edges(edges, Assignment("single", qpu_id="zeta"), qpus, 1)
    with pytest.raises(ValueError):
        assign_edges(edges, Assignment("single", qpu_id="a"), qpus, 2)  # needs 5 qubits
    with pytest.raises(ValueError):
        assign_edges(
            edges, Assignment("explicit", edge_map={(1, 2): "a"}), qpus, 1
        )
    with pytest.raises(ValueError):
        assign_edges(edges, Assignment("single", qpu_id="a"),
                     (QpuSpec("a", 3, 0.0), QpuSpec("a", 3, 0.0)), 1)
    # capacity only matters on devices actually used
    mixed = (QpuSpec("a", 3, 0.0), QpuSpec("tiny", 1, 0.0))
    assert assign_edges(edges, Assignment("single", qpu_id="a"), mixed, 1)


def test_run_scenario_deterministic():
    sc = scenario_from_json(_scenario_doc())
    a = report_to_doc(run_scenario(sc))
    b = report_to_doc(run_scenario(sc))
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    assert a["meta"]["timestamp"] is None
    stamped = report_to_doc(run_scenario(sc, timestamp="2024-05-01T00:00:00Z"))
    assert stamped["meta"]["timestamp"] == "2024-05-01T00:00:00Z"


def test_run_scenario_assignment_independent_streams():
    # estimates depend on the edge stream, not on which device runs it
    base = scenario_from_json(_scenario_doc())
    single = scenario_from_json(
        _scenario_doc(assignment={"strategy": "single", "qpu_id": "alpha"})
    )
    means_a = [e.mean for e in run_scenario(base).estimates]
    means_b = [e.mean for e in run_scenario(single).estimates]
    assert means_a == means_b


def test_run_scenario_seed_sensitivity():
    a = run_scenario(scenario_from_json(_scenario_doc()))
    b = run_scenario(scenario_from_json(_scenario_doc(master_seed=12)))
    assert [e.mean for e in a.estimates] != [e.mean for e in b.estimates]


def test_run_scenario_workload_partition():
    sc = scenario_from_json(_scenario_doc())
    rep = run_scenario(sc)
    support = set(sc.functional.support)
    seen = set()
    total = 0
    for qid, entry in rep.workload.items():
        for e in entry["edges"]:
            seen.add(tuple(e))
        total += entry["total_shots"]
    assert seen == support
    assert total == sc.shots_per_edge * len(support)
    assert set(rep.assignments) == support


def test_run_scenario_depolarizing_and_referee():
    noisy = _scenario_doc(
        qpus=[{"id": "alpha", "qubit_capacity": 3, "depolarizing_nu": 1.0}],
        assignment={"strategy": "single", "qpu_id": "alpha"},
        shots_per_edge=200_000,
    )
    rep = run_scenario(scenario_from_json(noisy))
    # full depolarization flattens every overlap to 1/2 regardless of labels
    for est in rep.estimates:
        assert abs(est.mean - 0.5) < 0.01
    assert rep.verdict.kind == "none"

    referee = run_scenario(scenario_from_json({**noisy, "state_source": "referee"}))
    by_edge = {e.edge: e.mean for e in referee.estimates}
    assert abs(by_edge[(1, 3)] - 0.0) < 0.01  # zero vs one survives untouched


def test_run_scenario_thread_env(monkeypatch):
    sc = scenario_from_json(_scenario_doc())
    base = report_to_doc(run_scenario(sc))
    monkeypatch.setenv("MAGIC_CERT_THREADS", "2")
    two = report_to_doc(run_scenario(sc))
    assert json.dumps(base, sort_keys=True) == json.dumps(two, sort_keys=True)
    monkeypatch.setenv("MAGIC_CERT_THREADS", "1")
    one = report_to_doc(run_scenario(sc))
    assert json.dumps(base, sort_keys=True) == json.dumps(one, sort_keys=True)
    monkeypatch.setenv("MAGIC_CERT_THREADS", "zero")
    with pytest.raises(ValueError):
        run_scenario(sc)
    monkeypatch.setenv("MAGIC_CERT_THREADS", "0")
    with pytest.raises(ValueError):
        run_scenario(sc)


def test_report_doc_and_csv():
    sc = scenario_from_json(_scenario_doc())
    rep = run_scenario(sc)
    doc = report_to_doc(rep)
    assert validate_report_doc(doc) == []
    assert doc["meta"]["ci_method"] == "hoeffding_union_bound"
    assert doc["meta"]["master_seed"] == 11
    assert len(doc["estimates"]) == 3
    for est in doc["estimates"]:
        assert est["qpu"] in {"alpha", "beta"}

    csv = estimates_csv(rep)
    lines = csv.strip().split("\n")
    assert lines[0] == "edge_i,edge_j,mean,ci,shots,qpu"
    assert len(lines) == 4
    i, j, mean, ci, shots, qpu = lines[1].split(",")
    assert (int(i), int(j)) == (1, 2)
    assert 0.0 <= float(mean) <= 1.0
    assert int(shots) == 2000


def test_validate_report_doc_problems():
    sc = scenario_from_json(_scenario_doc())
    doc = report_to_doc(run_scenario(sc))
    broken = copy.deepcopy(doc)
    del broken["verdict"]
    assert any("verdict" in p for p in validate_report_doc(broken))
    broken = copy.deepcopy(doc)
    broken["estimates"][0].pop("mean")
    assert any("estimates[0].mean" in p for p in validate_report_doc(broken))
    broken = copy.deepcopy(doc)
    broken["meta"].pop("master_seed")
    assert any("meta.master_seed" in p for p in validate_report_doc(broken))
    assert validate_report_doc([]) == ["report: must be an object"]


def test_scenario_validation_collects_all_errors():
    bad = _scenario_doc(
        n=0,
        shots_per_edge=2000,
    )
    with pytest.raises(ScenarioValidationError) as exc:
        scenario_from_json(bad)
    assert any(msg.startswith("n:") for msg in exc.value.errors)

    multi = _scenario_doc(
        vertices={"1": "zero", "2": "plus", "9": "one"},
        qpus=[{"id": "", "qubit_capacity": 3, "depolarizing_nu": 0.0}],
        delta=2.0,
    )
    with pytest.raises(ScenarioValidationError) as exc:
        scenario_from_json(multi)
    msgs = "\n".join(exc.value.errors)
    assert "vertices.9" in msgs
    assert "vertices: missing labels" in msgs
    assert "qpus[0]" in msgs
    assert "delta" in msgs


def test_scenario_rejects_unknown_fields_and_functionals():
    with pytest.raises(ScenarioValidationError) as exc:
        scenario_from_json(_scenario_doc(color="red"))
    assert exc.value.errors == ["color: unexpected field"]

    with pytest.raises(ScenarioValidationError) as exc:
        scenario_from_json(_scenario_doc(functional="h5",
                                         vertices={str(k): "zero" for k in range(1, 6)}))
    assert any("functional" in m and "proven witness" in m for m in exc.value.errors)

    with pytest.raises(ScenarioValidationError) as exc:
        scenario_from_json(_scenario_doc(state_source="teleported"))
    assert any("state_source" in m for m in exc.value.errors)


def test_scenario_vertex_and_capacity_validation():
    ghz = _scenario_doc(vertices={"1": "GHZ", "2": "plus", "3": "one"})
    with pytest.raises(ScenarioValidationError) as exc:
        scenario_from_json(ghz)
    assert any("vertices.1" in m for m in exc.value.errors)

    small = _scenario_doc(
        n=2,
        vertices={"1": "zero", "2": "plus", "3": "one"},
        qpus=[{"id": "alpha", "qubit_capacity": 3, "depolarizing_nu": 0.0}],
        assignment={"strategy": "single", "qpu_id": "alpha"},
    )
    with pytest.raises(ScenarioValidationError) as exc:
        scenario_from_json(small)
    assert any("capacity" in m for m in exc.value.errors)


def test_scenario_explicit_assignment_parse():
    doc = _scenario_doc(
        assignment={
            "strategy": "explicit",
            "edges": {"1-2": "alpha", "1-3": "beta", "2-3": "alpha"},
        }
    )
    sc = scenario_from_json(doc)
    rep = run_scenario(sc)
    assert rep.assignments[(1, 3)] == "beta"
    with pytest.raises(ScenarioValidationError):
        scenario_from_json(_scenario_doc(
            assignment={"strategy": "explicit", "edges": {"1x2": "alpha"}}
        ))
    with pytest.raises(ScenarioValidationError):
        scenario_from_json(_scenario_doc(assignment={"strategy": "warp"}))
