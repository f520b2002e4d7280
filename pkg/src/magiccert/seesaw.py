"""Coordinate-ascent maximization of overlap functionals over pure states.

One vertex update replaces a state by the top eigenvector of its effective
operator H_x = sum of coefficient * neighbor projector, which can only
raise the functional value. Sweeps repeat until the per-sweep improvement
drops below tolerance; independent seeded restarts guard against local
optima and are merged by best value (lowest restart index on ties).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Optional

import numpy as np

from .graphs import LinearFunctional, VertexLabeling, overlaps_from_labeling, evaluate
from .states import PureState

UPDATE_TIE_TOL = 1e-12


@dataclass(frozen=True)
class SeesawConfig:
    dim: int = 2
    restarts: int = 20
    max_sweeps: int = 500
    tol: float = 1e-10
    seed: int = 0

    def __post_init__(self):
        if self.dim < 2:
            raise ValueError("dim must be at least 2")
        if self.restarts < 1 or self.max_sweeps < 1:
            raise ValueError("restarts and max_sweeps must be positive")
        if self.tol <= 0:
            raise ValueError("tol must be positive")


@dataclass(frozen=True)
class OptResult:
    value: float
    states: VertexLabeling
    sweeps_used: int
    converged: bool
    zero_operator_hit: bool
    restart_index: int


def _entropy(seed: int) -> int:
    # SeedSequence entropy must be non-negative; fold negatives deterministically
    return seed & 0xFFFFFFFFFFFFFFFF


def _top_eigvec(h: np.ndarray) -> tuple[float, np.ndarray]:
    if h.shape == (2, 2):
        a = h[0, 0].real
        c = h[1, 1].real
        b = h[0, 1]
        half_gap = 0.5 * (a - c)
        root = np.hypot(half_gap, abs(b))
        lam = 0.5 * (a + c) + root
        if root < 1e-300:
            return lam, np.array([1.0, 0.0], dtype=complex)
        # pick the better-conditioned eigenvector branch
        if a >= c:
            vec = np.array([lam - c, b.conjugate()], dtype=complex)
        else:
            vec = np.array([b, lam - a], dtype=complex)
        norm = np.linalg.norm(vec)
        if norm < 1e-150:
            return lam, np.array([1.0, 0.0], dtype=complex) if a >= c else np.array([0.0, 1.0], dtype=complex)
        return lam, vec / norm
    evals, evecs = np.linalg.eigh(h)
    return float(evals[-1]), np.ascontiguousarray(evecs[:, -1])


def _functional_value(f: LinearFunctional, states: dict[int, np.ndarray]) -> float:
    total = f.constant
    for (u, v), c in f.coefficients.items():
        total += c * abs(np.vdot(states[u], states[v])) ** 2
    return float(total)


def _single_run(
    f: LinearFunctional,
    config: SeesawConfig,
    frozen: Mapping[int, np.ndarray],
    rng: np.random.Generator,
    on_update: Optional[Callable[[float], None]],
) -> tuple[float, dict[int, np.ndarray], int, bool, bool]:
    dim = config.dim
    free = [v for v in f.graph.vertices if v not in frozen]
    neighbors: dict[int, list[tuple[int, float]]] = {v: [] for v in f.graph.vertices}
    for (u, v), c in f.coefficients.items():
        if c != 0.0:
            neighbors[u].append((v, c))
            neighbors[v].append((u, c))

    states: dict[int, np.ndarray] = dict(frozen)
    for v in free:
        z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        states[v] = z / np.linalg.norm(z)

    zero_hit = False
    value = _functional_value(f, states)
    sweeps = 0
    converged = False
    for sweeps in range(1, config.max_sweeps + 1):
        for x in free:
            h = np.zeros((dim, dim), dtype=complex)
            for v, c in neighbors[x]:
                h += c * np.outer(states[v], states[v].conj())
            if not np.any(h):
                zero_hit = True
                continue
            lam, vec = _top_eigvec(h)
            rayleigh = float(np.real(states[x].conj() @ h @ states[x]))
            if lam - rayleigh > UPDATE_TIE_TOL:
                states[x] = vec
            if on_update is not None:
                on_update(_functional_value(f, states))
        new_value = _functional_value(f, states)
        if new_value - value < config.tol:
            value = max(value, new_value)
            converged = True
            break
        value = new_value
    return value, states, sweeps, converged, zero_hit


def seesaw_maximize(
    f: LinearFunctional,
    config: SeesawConfig | None = None,
    frozen: Mapping[int, PureState] | None = None,
    on_update: Optional[Callable[[float], None]] = None,
) -> OptResult:
    """Best functional value over pure-state labelings at fixed dimension.

    `frozen` pins chosen vertices to given states; only the remaining
    vertices are optimized. Deterministic for a fixed config.
    """
    config = config or SeesawConfig()
    frozen = frozen or {}
    frozen_raw: dict[int, np.ndarray] = {}
    for v, s in frozen.items():
        if v not in f.graph.vertices:
            raise ValueError(f"frozen vertex {v} not in graph")
        if s.dim != config.dim:
            raise ValueError(f"frozen state at vertex {v} has dim {s.dim}, expected {config.dim}")
        frozen_raw[v] = s.amplitudes

    best: tuple[float, dict, int, bool, bool, int] | None = None
    for r in range(config.restarts):
        rng = np.random.default_rng([_entropy(config.seed), r])
        value, states, sweeps, converged, zero_hit = _single_run(
            f, config, frozen_raw, rng, on_update
        )
        if best is None or value > best[0]:
            best = (value, states, sweeps, converged, zero_hit, r)

    value, states, sweeps, converged, zero_hit, r = best
    labeling = VertexLabeling({v: PureState(a) for v, a in states.items()})
    # re-evaluate through the public overlap path so the reported value
    # matches evaluate() on the reported states exactly
    exact = evaluate(f, overlaps_from_labeling(f.graph, labeling))
    return OptResult(exact, labeling, sweeps, converged, zero_hit, r)


@dataclass(frozen=True)
class CycleOptimum:
    """Closed-form qubit optimum of the cycle functional c_m."""

    m: int
    angles: tuple[float, ...]
    value: float

    def states(self) -> VertexLabeling:
        return VertexLabeling(
            {
                x + 1: PureState(np.array([np.cos(t), np.sin(t)], dtype=complex))
                for x, t in enumerate(self.angles)
            }
        )


def optimal_cycle_value(m: int) -> float:
    """(m-1) cos^2(pi/2m) - cos^2((1 - 1/m) pi/2), the qubit maximum of c_m."""
    if m < 3:
        raise ValueError("cycle functional needs m >= 3")
    return float((m - 1) * np.cos(np.pi / (2 * m)) ** 2 - np.cos((1 - 1 / m) * np.pi / 2) ** 2)


def optimal_cycle_states(m: int) -> CycleOptimum:
    """Real qubit states achieving the c_m qubit maximum.

    Vertex x sits at angle pi/2 -+ (x-1) pi/(2m) (minus for odd m, plus
    for even m), so consecutive edges carry cos^2(pi/2m) and the closing
    edge carries the far smaller cos^2((m-1) pi/2m).
    """
    if m < 3:
        raise ValueError("cycle functional needs m >= 3")
    sign = -1.0 if m % 2 else 1.0
    angles = tuple(np.pi / 2 + sign * (x - 1) * np.pi / (2 * m) for x in range(1, m + 1))
    return CycleOptimum(m, angles, optimal_cycle_value(m))


def classical_quantum_ratio(m: int) -> float:
    """Classical bound over qubit maximum for c_m; approaches 1 from below."""
    return float((m - 2) / optimal_cycle_value(m))
