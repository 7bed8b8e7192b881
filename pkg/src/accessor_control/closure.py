"""Real Lie algebra generated by skew-Hermitian traceless operators.

:func:`closure` grows a Hilbert-Schmidt orthonormal basis by commutator
closure.  Pairs ``(a, b)`` with ``a < b`` are processed first-in first-out in
the order their second member was accepted, so the pair queue is just a
cursor over the growing basis.  Commutators are computed in fixed-size
batches (optionally on a thread pool), projected against the basis with one
matrix product, then accepted or rejected strictly in queue order.  The
result therefore does not depend on the worker count.

:func:`closure_oracle` is an independent brute-force rank computation used
to cross-check small instances.
"""
from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

import numpy as np

from .errors import MaxBasisExceededError, NotSkewHermitianError, OracleTooLargeError
from .operators import Operator

log = logging.getLogger(__name__)

ZERO_NORM = 1e-14
_CHUNK = 16  # commutators per worker task; fixed so results ignore the worker count


@dataclass(frozen=True)
class ClosureConfig:
    """Knobs for :func:`closure`.

    ``batch_size`` pairs are commuted and projected together.  With
    ``deterministic=False`` the batch grows with ``workers``, which is faster
    on many cores but no longer bit-identical across worker counts.
    """

    independence_tol: float = 1e-8
    early_stop: bool = True
    max_basis: int | None = None
    deterministic: bool = True
    workers: int = 1
    batch_size: int = 64

    def __post_init__(self):
        if not 0.0 < self.independence_tol < 1.0:
            raise ValueError(f"independence_tol must lie in (0, 1), got {self.independence_tol}")
        if self.max_basis is not None and self.max_basis < 0:
            raise ValueError("max_basis must be non-negative")
        if self.workers < 1 or self.batch_size < 1:
            raise ValueError("workers and batch_size must be positive")


@dataclass(frozen=True)
class LieBasis:
    dim_ambient: int
    vectors: tuple[Operator, ...]
    saturated: bool
    stats: dict = field(default_factory=dict, compare=False)

    @property
    def dimension(self) -> int:
        return len(self.vectors)

    def gram(self) -> np.ndarray:
        v = np.stack([vectorize(op) for op in self.vectors]) if self.vectors else np.zeros((0, 0))
        return v @ v.T


def vectorize(op: Operator) -> np.ndarray:
    """Real vector ``[Re(entries), Im(entries)]`` (row-major), length ``2 n^2``.

    The Euclidean dot product of two such vectors is ``hs_inner``.
    """
    m = op.matrix if isinstance(op, Operator) else np.asarray(op)
    return np.concatenate([m.real.ravel(), m.imag.ravel()])


def unvectorize(v: np.ndarray, n: int) -> np.ndarray:
    nn = n * n
    return (v[:nn] + 1j * v[nn:]).reshape(n, n)


def _vectorize_stack(ms: np.ndarray) -> np.ndarray:
    k = ms.shape[0]
    return np.concatenate([ms.real.reshape(k, -1), ms.imag.reshape(k, -1)], axis=1)


def _check_generators(generators: Sequence[Operator]) -> int:
    if not generators:
        raise ValueError("at least one generator is required")
    n = generators[0].dim
    for idx, g in enumerate(generators):
        if g.dim != n:
            raise NotSkewHermitianError(f"generator {idx} has dimension {g.dim}, expected {n}")
        scale = max(1.0, g.norm())
        if not g.is_skew_hermitian(1e-10 * scale):
            raise NotSkewHermitianError(f"generator {idx} is not skew-Hermitian")
        if not g.is_traceless(1e-10 * scale):
            raise NotSkewHermitianError(f"generator {idx} is not traceless")
    return n


def _commute_chunk(mats: np.ndarray, ia: np.ndarray, ib: np.ndarray) -> np.ndarray:
    a, b = mats[ia], mats[ib]
    return a @ b - b @ a


class _Basis:
    """Growing orthonormal basis stored as stacked vectors plus matching matrices."""

    def __init__(self, n: int, capacity: int, tol: float):
        self.n = n
        self.tol = tol
        self.capacity = capacity
        self.vecs = np.empty((capacity, 2 * n * n))
        self.mats = np.empty((capacity, n, n), dtype=np.complex128)
        self.size = 0

    def project(self, w: np.ndarray, lo: int, hi: int) -> np.ndarray:
        """Remove components along rows ``lo:hi`` (two classical Gram-Schmidt passes)."""
        if hi <= lo:
            return w
        q = self.vecs[lo:hi]
        w = w - (w @ q.T) @ q
        return w - (w @ q.T) @ q

    def offer(self, residual: np.ndarray, pre_norm: float) -> bool:
        r = float(np.linalg.norm(residual))
        if r <= self.tol * pre_norm:
            return False
        if self.size >= self.capacity:
            raise MaxBasisExceededError(f"closure basis exceeded max_basis={self.capacity}")
        v = residual / r
        self.vecs[self.size] = v
        self.mats[self.size] = unvectorize(v, self.n)
        self.size += 1
        return True


def closure(generators: Sequence[Operator], cfg: ClosureConfig | None = None) -> LieBasis:
    """Orthonormal basis of the real Lie algebra generated by ``generators``."""
    cfg = cfg or ClosureConfig()
    generators = [g if isinstance(g, Operator) else Operator(g) for g in generators]
    n = _check_generators(generators)
    ceiling = n * n - 1
    capacity = ceiling if cfg.max_basis is None else min(cfg.max_basis, ceiling)
    basis = _Basis(n, capacity, cfg.independence_tol)
    t0 = time.perf_counter()

    for g in generators:
        w = vectorize(g)
        pre = float(np.linalg.norm(w))
        if pre < ZERO_NORM:
            continue
        w = w / pre
        basis.offer(basis.project(w, 0, basis.size), 1.0)
        if cfg.early_stop and basis.size == ceiling:
            break

    batch = cfg.batch_size if cfg.deterministic else cfg.batch_size * cfg.workers
    pool = ThreadPoolExecutor(cfg.workers) if cfg.workers > 1 else None
    a_cur, b_cur = 0, 1
    n_candidates = 0
    try:
        while b_cur < basis.size and not (cfg.early_stop and basis.size == ceiling):
            ia, ib = [], []
            while len(ia) < batch and b_cur < basis.size:
                ia.append(a_cur)
                ib.append(b_cur)
                a_cur += 1
                if a_cur == b_cur:
                    a_cur, b_cur = 0, b_cur + 1
            ia_arr, ib_arr = np.asarray(ia), np.asarray(ib)
            n_candidates += len(ia)

            slices = [slice(s, s + _CHUNK) for s in range(0, len(ia), _CHUNK)]
            if pool is not None:
                parts = list(pool.map(lambda sl: _commute_chunk(basis.mats, ia_arr[sl], ib_arr[sl]), slices))
            else:
                parts = [_commute_chunk(basis.mats, ia_arr[sl], ib_arr[sl]) for sl in slices]
            w = _vectorize_stack(np.concatenate(parts))

            pre = np.linalg.norm(w, axis=1)
            keep = pre >= ZERO_NORM
            if not keep.any():
                continue
            w, pre = w[keep], pre[keep]
            w = w / pre[:, None]
            base = basis.size
            w = basis.project(w, 0, base)
            for row in w:
                row = basis.project(row, base, basis.size)
                basis.offer(row, 1.0)
                if cfg.early_stop and basis.size == ceiling:
                    break
            log.debug("closure: %d candidates, dimension %d", n_candidates, basis.size)
    finally:
        if pool is not None:
            pool.shutdown()

    size = basis.size
    vectors = tuple(Operator._wrap(basis.mats[i].copy()) for i in range(size))
    stats = {"candidates": n_candidates, "seconds": time.perf_counter() - t0}
    return LieBasis(n, vectors, size == ceiling, stats)


def closure_oracle(generators: Sequence[Operator], max_dim: int = 8, max_generators: int = 8) -> int:
    """Lie algebra dimension by repeated all-pairs commutators and SVD rank.

    Each round takes an orthonormal basis of the current span, appends every
    pairwise commutator and recomputes the rank (singular values above
    ``1e-9 * largest``).  Stops when the rank no longer grows.
    """
    mats = [np.asarray(g.matrix if isinstance(g, Operator) else g, dtype=np.complex128) for g in generators]
    if not mats:
        return 0
    n = mats[0].shape[0]
    if n > max_dim or len(mats) > max_generators:
        raise OracleTooLargeError(f"oracle limited to n <= {max_dim} and <= {max_generators} generators")

    def as_rows(ms):
        return np.array([np.concatenate([m.real.ravel(), m.imag.ravel()]) for m in ms])

    def span(rows):
        if not len(rows):
            return rows, 0
        _, s, vt = np.linalg.svd(rows, full_matrices=False)
        if s[0] == 0.0:
            return vt[:0], 0
        r = int(np.sum(s > 1e-9 * s[0]))
        return vt[:r], r

    q, rank = span(as_rows(mats))
    while True:
        elems = [(v[: n * n] + 1j * v[n * n:]).reshape(n, n) for v in q]
        comms = [a @ b - b @ a for a, b in combinations(elems, 2)]
        rows = np.vstack([q] + ([as_rows(comms)] if comms else []))
        q, new_rank = span(rows)
        if new_rank <= rank:
            return rank
        rank = new_rank
