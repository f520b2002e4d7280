"""Sampled moment matrices of operator words built from random pure states.

The operator list at level k contains the identity and every product of up
to k vertex states with no immediately repeated factor (pure states are
idempotent, so such words add nothing). For pure states the trace of any
word product reduces to a cyclic product of pairwise inner products, so a
whole moment matrix costs one m-by-m Gram matrix instead of dense algebra.

Entries are the real parts of Tr[S_i^dagger S_j]. The real part of a
Hermitian positive semidefinite Gram matrix is again positive semidefinite,
and conjugating every sampled state realizes the matching imaginary-flipped
sample, so restricting to real symmetric matrices loses nothing from the
sampled affine hull.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .interchange import FunctionalDoc

RANK_GAIN_RTOL = 1e-7
SATURATION_WINDOW = 25

Word = tuple[int, ...]


def operator_words(m: int, k: int) -> list[Word]:
    """All products of up to k of the m vertex states, identity first.

    Words are tuples of 1-based vertex indices; immediate repetitions are
    skipped because squaring a pure state is a no-op.
    """
    if m < 1:
        raise ValueError("m must be positive")
    if k < 1:
        raise ValueError("level k must be at least 1")
    out: list[Word] = [()]
    level: list[Word] = [()]
    for _ in range(k):
        nxt = []
        for w in level:
            for x in range(1, m + 1):
                if w and w[-1] == x:
                    continue
                nxt.append(w + (x,))
        out.extend(nxt)
        level = nxt
    return out


@dataclass(frozen=True)
class MomentMatrix:
    """One sampled matrix of word-product traces at a fixed level."""

    level: int
    operator_count: int
    entries: np.ndarray

    def __post_init__(self):
        e = np.asarray(self.entries, dtype=float)
        if e.shape != (self.operator_count, self.operator_count):
            raise ValueError("entries shape does not match the operator count")
        object.__setattr__(self, "entries", e)


def moment_matrix(vectors: list[np.ndarray], words: list[Word], level: int) -> MomentMatrix:
    """Moment matrix of the given pure-state vectors over the word list.

    The identity operator is unnormalized, so the corner entry equals the
    Hilbert-space dimension and each (identity, state-word) entry is the
    trace of that word product.
    """
    m = len(vectors)
    dim = len(vectors[0])
    gram = np.ones((m + 1, m + 1), dtype=complex)
    for a in range(1, m + 1):
        for b in range(1, m + 1):
            gram[a, b] = np.vdot(vectors[a - 1], vectors[b - 1])
    count = len(words)
    out = np.zeros((count, count), dtype=complex)
    for i, wi in enumerate(words):
        for j, wj in enumerate(words):
            if j < i:
                continue
            seq = tuple(reversed(wi)) + wj
            if not seq:
                out[i, j] = float(dim)
                continue
            val = 1.0 + 0j
            for t in range(len(seq) - 1):
                val *= gram[seq[t], seq[t + 1]]
            val *= gram[seq[-1], seq[0]]
            out[i, j] = val
            out[j, i] = np.conj(val)
    entries = ((out + out.conj().T) / 2).real
    return MomentMatrix(level=level, operator_count=count, entries=entries)


def _random_vectors(m: int, dim: int, rng: np.random.Generator) -> list[np.ndarray]:
    vecs = []
    for _ in range(m):
        z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        vecs.append(z / np.linalg.norm(z))
    return vecs


def sample_moment_basis(
    functional: FunctionalDoc,
    k: int,
    sample_dim: int,
    seed: int = 0,
    window: int = SATURATION_WINDOW,
) -> list[MomentMatrix]:
    """Sample moment matrices until their span stops growing.

    Random pure-state tuples at the given dimension are drawn and a matrix
    is kept whenever it is linearly independent of the ones already kept
    (Gram-Schmidt residual above RANK_GAIN_RTOL relative tolerance).
    Sampling stops after `window` consecutive draws add no new direction.
    """
    if sample_dim < 2:
        raise ValueError("sample_dim must be at least 2")
    if window < 1:
        raise ValueError("window must be positive")
    words = operator_words(functional.m, k)
    rng = np.random.default_rng(seed)
    basis: list[MomentMatrix] = []
    ortho: list[np.ndarray] = []
    no_gain = 0
    while no_gain < window:
        vecs = _random_vectors(functional.m, sample_dim, rng)
        mat = moment_matrix(vecs, words, k)
        v = mat.entries.ravel().copy()
        scale = np.linalg.norm(v)
        for o in ortho:
            v -= (v @ o) * o
        residual = np.linalg.norm(v)
        if residual > RANK_GAIN_RTOL * max(1.0, scale):
            ortho.append(v / residual)
            basis.append(mat)
            no_gain = 0
        else:
            no_gain += 1
    return basis
