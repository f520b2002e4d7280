import numpy as np
import pytest

from magiccert.stabilizer import (
    clifford_generators,
    contains,
    enumerate_stabilizer_states,
    export_states,
    is_valid_stabilizer_overlap,
    overlap_spectrum,
)
from magiccert.states import PureState, named_state, phase_canonical, tensor


def _count_formula(n):
    out = 2**n
    for k in range(1, n + 1):
        out *= 2**k + 1
    return out


def test_state_counts():
    for n, want in [(1, 6), (2, 60), (3, 1080)]:
        sset = enumerate_stabilizer_states(n)
        assert len(sset) == want
        assert len(sset) == _count_formula(n)


def test_enumeration_bounds():
    with pytest.raises(ValueError):
        enumerate_stabilizer_states(0)
    with pytest.raises(ValueError):
        enumerate_stabilizer_states(4)


def test_states_normalized_and_canonical():
    for n in (1, 2):
        sset = enumerate_stabilizer_states(n)
        norms = np.linalg.norm(sset.matrix, axis=1)
        assert np.abs(norms - 1).max() < 1e-12
        for s in sset.states:
            canon = phase_canonical(s.amplitudes)
            assert np.abs(canon - s.amplitudes).max() < 1e-12


def test_no_duplicates_up_to_phase():
    for n in (1, 2):
        gram = enumerate_stabilizer_states(n).gram
        off = gram - np.eye(len(gram))
        # any duplicate pair would put a 1 off the diagonal
        assert off.max() < 1 - 1e-6


def test_closure_under_generators():
    for n in (1, 2):
        sset = enumerate_stabilizer_states(n)
        keys = {tuple(np.round(phase_canonical(v), 8) + 0.0) for v in sset.matrix}
        for g in clifford_generators(n):
            moved = sset.matrix @ g.T
            for row in moved:
                assert tuple(np.round(phase_canonical(row), 8) + 0.0) in keys


def test_generator_count_and_unitarity():
    for n, want in [(1, 2), (2, 6), (3, 12)]:
        gens = clifford_generators(n)
        assert len(gens) == want
        for g in gens:
            assert np.abs(g @ g.conj().T - np.eye(2**n)).max() < 1e-12


def test_contains():
    s1 = enumerate_stabilizer_states(1)
    assert contains(named_state("plus"), s1)
    phase = np.exp(1j * 0.7) * named_state("one").amplitudes
    assert contains(PureState(phase), s1)
    assert not contains(named_state("T"), s1)
    assert not contains(named_state("F"), s1)
    s2 = enumerate_stabilizer_states(2)
    assert contains(named_state("GHZ", 3), enumerate_stabilizer_states(3))
    assert not contains(tensor(named_state("T"), named_state("zero")), s2)
    with pytest.raises(ValueError):
        contains(named_state("zero"), s2)


def test_overlap_spectrum_values():
    want = {
        1: (0.0, 0.5, 1.0),
        2: (0.0, 0.25, 0.5, 1.0),
        3: (0.0, 0.125, 0.25, 0.5, 1.0),
    }
    for n, expect in want.items():
        got = overlap_spectrum(enumerate_stabilizer_states(n))
        assert len(got) == len(expect)
        assert np.abs(np.array(got) - np.array(expect)).max() < 1e-9


def test_is_valid_stabilizer_overlap():
    assert is_valid_stabilizer_overlap(1.0, 1) == (True, 0)
    assert is_valid_stabilizer_overlap(0.5, 1) == (True, 1)
    assert is_valid_stabilizer_overlap(0.25, 2) == (True, 2)
    assert is_valid_stabilizer_overlap(0.0, 3) == (True, None)
    ok, k = is_valid_stabilizer_overlap(0.125, 2)
    assert not ok and k is None  # 2^-3 needs three qubits
    assert is_valid_stabilizer_overlap(0.3, 1)[0] is False
    assert is_valid_stabilizer_overlap(0.5 + 1e-10, 1) == (True, 1)


def test_export_roundtrip(tmp_path):
    sset = enumerate_stabilizer_states(2)
    path = tmp_path / "stab2.txt"
    export_states(sset, path)
    lines = path.read_text().strip().split("\n")
    assert lines[0] == "n=2 count=60"
    assert len(lines) == 61
    parsed = []
    for line in lines[1:]:
        vals = np.array([float(x) for x in line.split(",")])
        parsed.append(vals[0::2] + 1j * vals[1::2])
    assert np.abs(np.vstack(parsed) - sset.matrix).max() == 0.0


def test_enumeration_deterministic():
    a = enumerate_stabilizer_states.__wrapped__(2)
    b = enumerate_stabilizer_states.__wrapped__(2)
    assert np.array_equal(a.matrix, b.matrix)
