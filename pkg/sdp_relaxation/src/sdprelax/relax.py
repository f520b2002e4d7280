"""Level-k upper bounds on edge functionals over the sampled moment hull.

The feasible set is every positive semidefinite matrix in the affine hull
of the sampled moment matrices; it contains the moment matrix of every
state tuple at the sampled dimension, so the optimum upper-bounds the true
functional maximum there. The hull is reparametrized over an orthonormal
direction basis (SVD of the sample differences) before solving, which
keeps the semidefinite program well conditioned even when the raw samples
are nearly dependent.

The bound is specific to the sampled dimension: the identity-corner entry
pins Tr[1] = dim, so hulls at different dimensions genuinely differ and a
result is only ever reported together with the dim that produced it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

import cvxpy as cp
import numpy as np

from .interchange import FunctionalDoc
from .moments import MomentMatrix, operator_words, sample_moment_basis

MAX_LEVEL = 3
DIRECTION_RTOL = 1e-9
SOLVER_CHAIN: tuple[tuple[str, dict], ...] = (
    ("SCS", {"eps": 1e-9, "max_iters": 200000}),
    ("CLARABEL", {}),
)


@dataclass(frozen=True)
class RelaxResult:
    """Outcome of one relaxation solve; upper_bound is None on failure."""

    functional: str
    level: int
    sample_dim: int
    basis_size: int
    upper_bound: Optional[float]
    solver_status: str

    def to_doc(self) -> dict:
        return {
            "functional": self.functional,
            "level": self.level,
            "sample_dim": self.sample_dim,
            "basis_size": self.basis_size,
            "upper_bound": self.upper_bound,
            "solver_status": self.solver_status,
        }


def default_sample_dim(functional: FunctionalDoc) -> int:
    return 2 * functional.m


def _direction_matrices(basis: Sequence[MomentMatrix]) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal spanning directions of the sampled affine hull."""
    b0 = basis[0].entries
    if len(basis) == 1:
        return b0, np.zeros((0, b0.size))
    diffs = np.stack([(b.entries - b0).ravel() for b in basis[1:]])
    _, svals, vt = np.linalg.svd(diffs, full_matrices=False)
    rank = int(np.sum(svals > DIRECTION_RTOL * svals[0]))
    return b0, vt[:rank]


def upper_bound(
    functional: FunctionalDoc,
    k: int,
    sample_dim: Optional[int] = None,
    seed: int = 0,
    solvers: Optional[Sequence[tuple[str, Mapping]]] = None,
) -> RelaxResult:
    """Solve the level-k relaxation and report the certified upper bound.

    Only a solve that terminates with status "optimal" produces a bound;
    anything weaker leaves upper_bound as None with the attempted solver
    statuses recorded in solver_status.
    """
    if k < 1 or k > MAX_LEVEL:
        raise ValueError(f"level k must be in 1..{MAX_LEVEL}")
    if sample_dim is None:
        sample_dim = default_sample_dim(functional)
    basis = sample_moment_basis(functional, k, sample_dim, seed=seed)
    words = operator_words(functional.m, k)
    index = {w: i for i, w in enumerate(words)}
    count = len(words)

    b0, directions = _direction_matrices(basis)
    rank = directions.shape[0]
    coords = cp.Variable(rank)
    flat = b0.ravel() + (directions.T @ coords if rank else 0)
    gamma = cp.reshape(flat, (count, count), order="C")
    gamma = (gamma + gamma.T) / 2
    objective = sum(
        c * gamma[index[(i,)], index[(j,)]] for (i, j), c in functional.coefficients.items()
    )
    problem = cp.Problem(cp.Maximize(objective), [gamma >> 0])

    attempts = []
    value = None
    for solver, options in solvers if solvers is not None else SOLVER_CHAIN:
        try:
            solved = problem.solve(solver=solver, **dict(options))
            attempts.append(f"{solver} {problem.status}")
            if problem.status == cp.OPTIMAL:
                value = float(solved)
                break
        except cp.error.SolverError:
            attempts.append(f"{solver} solver_error")
    return RelaxResult(
        functional=functional.name,
        level=k,
        sample_dim=sample_dim,
        basis_size=len(basis),
        upper_bound=value,
        solver_status="; ".join(attempts) if attempts else "no solver attempted",
    )
