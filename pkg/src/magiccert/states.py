"""Quantum state containers and the two-state overlap primitive.

Pure states are raw amplitude vectors, density matrices dense Hermitian
matrices; both are validated once at construction so downstream code can
trust them. Pure-state equality is always up to global phase, via phase
canonicalization (first significant amplitude made real positive).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Union

import numpy as np

NORM_TOL = 1e-9
PHASE_EQ_TOL = 1e-8

PAULI_I = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized complex state vector."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size < 1:
            raise ValueError("state needs at least one amplitude")
        total = float(np.sum(np.abs(amps) ** 2))
        if abs(total - 1.0) > NORM_TOL:
            raise ValueError(f"amplitudes not normalized: sum |a|^2 = {total!r}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def density(self) -> "DensityMatrix":
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite matrix."""

    entries: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.entries, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError(f"density matrix must be square, got shape {mat.shape}")
        if float(np.max(np.abs(mat - mat.conj().T))) > NORM_TOL:
            raise ValueError("density matrix is not Hermitian")
        tr = complex(np.trace(mat))
        if abs(tr - 1.0) > NORM_TOL:
            raise ValueError(f"density matrix trace is {tr!r}, expected 1")
        evals = np.linalg.eigvalsh(mat)
        if float(evals[0]) < -NORM_TOL:
            raise ValueError(f"density matrix has negative eigenvalue {float(evals[0])!r}")
        mat.setflags(write=False)
        object.__setattr__(self, "entries", mat)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def purity(self) -> float:
        # Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
        return float(np.sum(np.abs(self.entries) ** 2))


State = Union[PureState, DensityMatrix]


def overlap(a: State, b: State) -> float:
    """Tr(rho_a rho_b). Real, symmetric, in [0, 1] for valid inputs."""
    da = a.dim
    db = b.dim
    if da != db:
        raise ValueError(f"dimension mismatch: {da} vs {db}")
    if isinstance(a, PureState) and isinstance(b, PureState):
        return float(abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2)
    if isinstance(a, PureState):
        return float(np.real(a.amplitudes.conj() @ b.entries @ a.amplitudes))
    if isinstance(b, PureState):
        return float(np.real(b.amplitudes.conj() @ a.entries @ b.amplitudes))
    return float(np.real(np.sum(a.entries * b.entries.T)))


def tensor(a: PureState, b: PureState) -> PureState:
    return PureState(np.kron(a.amplitudes, b.amplitudes))


def random_pure(dim: int, seed) -> PureState:
    """Haar-random pure state. Deterministic for a fixed seed."""
    if dim < 1:
        raise ValueError("dim must be positive")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return PureState(z / np.linalg.norm(z))


def depolarize(rho: State, nu: float) -> DensityMatrix:
    """(1 - nu) rho + nu I/D for noise strength nu in [0, 1]."""
    if not 0.0 <= nu <= 1.0:
        raise ValueError(f"noise strength must lie in [0, 1], got {nu!r}")
    if isinstance(rho, PureState):
        rho = rho.density()
    d = rho.dim
    return DensityMatrix((1.0 - nu) * rho.entries + nu * np.eye(d) / d)


def phase_canonical(amplitudes: np.ndarray, zero_tol: float = 1e-6) -> np.ndarray:
    """Rotate a global phase so the first significant amplitude is real positive."""
    amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
    idx = int(np.argmax(np.abs(amps) > zero_tol))
    pivot = amps[idx]
    if abs(pivot) <= zero_tol:
        raise ValueError("no significant amplitude to fix the phase against")
    return amps * (pivot.conjugate() / abs(pivot))


def states_equal(a: PureState, b: PureState, tol: float = PHASE_EQ_TOL) -> bool:
    """Entrywise equality up to a global phase."""
    if a.dim != b.dim:
        return False
    ca = phase_canonical(a.amplitudes)
    cb = phase_canonical(b.amplitudes)
    return float(np.max(np.abs(ca - cb))) <= tol


_INV_SQRT2 = 1.0 / np.sqrt(2.0)

# Bloch direction (1,1,1)/sqrt(3): polar angle arccos(1/sqrt 3), azimuth pi/4.
_F_THETA = np.arccos(1.0 / np.sqrt(3.0))

_SINGLE_QUBIT = {
    "zero": np.array([1.0, 0.0], dtype=complex),
    "one": np.array([0.0, 1.0], dtype=complex),
    "plus": np.array([_INV_SQRT2, _INV_SQRT2], dtype=complex),
    "minus": np.array([_INV_SQRT2, -_INV_SQRT2], dtype=complex),
    "plus_i": np.array([_INV_SQRT2, 1j * _INV_SQRT2], dtype=complex),
    "T": np.array([_INV_SQRT2, np.exp(1j * np.pi / 4) * _INV_SQRT2], dtype=complex),
    "F": np.array(
        [np.cos(_F_THETA / 2), np.exp(1j * np.pi / 4) * np.sin(_F_THETA / 2)],
        dtype=complex,
    ),
}


def named_state(label, n: int = 1) -> PureState:
    """Resolve a state label to a PureState on n qubits.

    String labels name single-qubit states (taken to the n-fold tensor
    power) or GHZ, which is pinned to n = 3. Dict labels select either
    {"computational": <bitstring>} or {"explicit": [[re, im], ...]}.
    """
    if n < 1:
        raise ValueError("qubit count must be positive")
    if isinstance(label, str):
        if label == "GHZ":
            if n != 3:
                raise ValueError(f"GHZ label requires n = 3, got n = {n}")
            amps = np.zeros(8, dtype=complex)
            amps[0] = amps[7] = _INV_SQRT2
            return PureState(amps)
        if label in _SINGLE_QUBIT:
            single = _SINGLE_QUBIT[label]
            return PureState(reduce(np.kron, [single] * n))
        raise ValueError(f"unknown state label {label!r}")
    if isinstance(label, dict) and len(label) == 1:
        (kind, value), = label.items()
        if kind == "computational":
            bits = str(value)
            if len(bits) != n or any(b not in "01" for b in bits):
                raise ValueError(f"computational label needs {n} bits of 0/1, got {value!r}")
            amps = np.zeros(2**n, dtype=complex)
            amps[int(bits, 2)] = 1.0
            return PureState(amps)
        if kind == "explicit":
            pairs = np.asarray(value, dtype=float)
            if pairs.ndim != 2 or pairs.shape != (2**n, 2):
                raise ValueError(f"explicit label needs {2**n} [re, im] pairs")
            return PureState(pairs[:, 0] + 1j * pairs[:, 1])
        raise ValueError(f"unknown state label kind {kind!r}")
    raise ValueError(f"malformed state label {label!r}")
