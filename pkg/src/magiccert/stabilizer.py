"""Exhaustive n-qubit stabilizer state sets for small n.

Enumeration walks the Clifford orbit of |0...0> on dense state vectors:
breadth-first closure under per-qubit Hadamard and phase gates plus all
ordered CNOTs. At n <= 3 the orbit holds at most 1080 states, so dense
vectors stay simpler than tableau algebra and plug straight into the
overlap machinery. The closed-form count 2^n * prod_{k<=n} (2^k + 1)
serves as an independent cross-check in the tests.
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache, reduce
from typing import Optional

import numpy as np

from .states import PureState, phase_canonical, states_equal

MAX_QUBITS = 3
OVERLAP_CLASS_TOL = 1e-9
DEDUP_DECIMALS = 8

_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2.0)
_S = np.array([[1, 0], [0, 1j]], dtype=complex)


def _single_qubit_gate(gate: np.ndarray, qubit: int, n: int) -> np.ndarray:
    factors = [np.eye(2, dtype=complex)] * n
    factors[qubit] = gate
    return reduce(np.kron, factors)


def _cnot(control: int, target: int, n: int) -> np.ndarray:
    # permutation on basis indices; qubit 0 is the most significant bit
    dim = 2**n
    mat = np.zeros((dim, dim), dtype=complex)
    cbit = n - 1 - control
    tbit = n - 1 - target
    for b in range(dim):
        out = b ^ (1 << tbit) if (b >> cbit) & 1 else b
        mat[out, b] = 1.0
    return mat


def clifford_generators(n: int) -> list[np.ndarray]:
    """H and S on each qubit plus CNOT on each ordered qubit pair."""
    gens = []
    for q in range(n):
        gens.append(_single_qubit_gate(_H, q, n))
        gens.append(_single_qubit_gate(_S, q, n))
    for c in range(n):
        for t in range(n):
            if c != t:
                gens.append(_cnot(c, t, n))
    return gens


def _dedup_key(canonical: np.ndarray) -> tuple:
    parts = np.round(canonical.view(np.float64), DEDUP_DECIMALS) + 0.0  # kill -0.0
    return tuple(parts.tolist())


class StabilizerSet:
    """All pure n-qubit stabilizer states, one representative per global phase."""

    def __init__(self, n: int, states: tuple[PureState, ...]):
        self.n = n
        self.states = states

    def __len__(self) -> int:
        return len(self.states)

    @property
    def matrix(self) -> np.ndarray:
        """Row-stacked amplitudes, cached."""
        cached = getattr(self, "_matrix", None)
        if cached is None:
            cached = np.vstack([s.amplitudes for s in self.states])
            self._matrix = cached
        return cached

    @property
    def gram(self) -> np.ndarray:
        """Pairwise overlap table |<s_i|s_j>|^2, cached."""
        cached = getattr(self, "_gram", None)
        if cached is None:
            inner = self.matrix.conj() @ self.matrix.T
            cached = np.abs(inner) ** 2
            self._gram = cached
        return cached


@lru_cache(maxsize=None)
def enumerate_stabilizer_states(n: int) -> StabilizerSet:
    """Breadth-first Clifford closure of |0^n>, ordered lexicographically."""
    if not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"n must be between 1 and {MAX_QUBITS}, got {n}")
    gens = clifford_generators(n)
    start = np.zeros(2**n, dtype=complex)
    start[0] = 1.0
    seen = {_dedup_key(start): start}
    queue = deque([start])
    while queue:
        vec = queue.popleft()
        for g in gens:
            nxt = phase_canonical(g @ vec)
            key = _dedup_key(nxt)
            if key not in seen:
                seen[key] = nxt
                queue.append(nxt)
    ordered = [seen[k] for k in sorted(seen)]
    return StabilizerSet(n, tuple(PureState(v) for v in ordered))


def contains(psi: PureState, stab_set: StabilizerSet) -> bool:
    """True iff psi matches a stored state up to global phase (tol 1e-8)."""
    if psi.dim != 2**stab_set.n:
        raise ValueError(f"state dimension {psi.dim} does not match n = {stab_set.n}")
    scores = np.abs(stab_set.matrix.conj() @ psi.amplitudes) ** 2
    best = int(np.argmax(scores))
    return states_equal(psi, stab_set.states[best])


def is_valid_stabilizer_overlap(x: float, n: int) -> tuple[bool, Optional[int]]:
    """Classify an overlap value against the allowed n-qubit stabilizer grid.

    Returns (True, k) when x is within 1e-9 of 2^-k for some k in 0..n,
    (True, None) when x is within 1e-9 of zero, (False, None) otherwise.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if abs(x) < OVERLAP_CLASS_TOL:
        return True, None
    for k in range(n + 1):
        if abs(x - 2.0**-k) < OVERLAP_CLASS_TOL:
            return True, k
    return False, None


def overlap_spectrum(stab_set: StabilizerSet) -> tuple[float, ...]:
    """Sorted distinct pairwise overlap values, merged within 1e-9.

    Self-pairs are included, so the value 1 (equal states) is always
    present alongside 0 and the oblique powers of two.
    """
    gram = stab_set.gram
    iu = np.triu_indices(len(stab_set), k=0)
    vals = np.sort(gram[iu])
    distinct = [float(vals[0])]
    for v in vals[1:]:
        if v - distinct[-1] > OVERLAP_CLASS_TOL:
            distinct.append(float(v))
    return tuple(distinct)


def export_states(stab_set: StabilizerSet, path) -> None:
    """Write the set as a text file: one header line, then one state per line.

    Header is "n=<n> count=<count>"; each state line holds comma-separated
    re,im pairs at full precision, in enumeration order.
    """
    lines = [f"n={stab_set.n} count={len(stab_set)}"]
    for s in stab_set.states:
        parts = []
        for a in s.amplitudes:
            parts.append(repr(float(a.real)))
            parts.append(repr(float(a.imag)))
        lines.append(",".join(parts))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
