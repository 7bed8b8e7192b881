"""Sufficient controllability conditions and the end-to-end verdict.

Two conditions are checked:

* chain length: ``3**M >= n_tilde``;
* coupling rank: the matrix of coupling constants, with one row per
  admissible Pauli string and one column per transition ``(n, i, j, k)``,
  has full column rank.  That is the same as some square row subset having
  nonvanishing determinant.

Independently of both, the dynamical Lie algebra is computed by closure and
compared with ``su(N * 2**M)``.
"""
from __future__ import annotations

import builtins
import enum
import time
from dataclasses import asdict, dataclass, field
from typing import NamedTuple, Sequence

import numpy as np
import scipy.linalg

from .closure import ClosureConfig, closure
from .errors import DegenerateSamplerError, SpecValidationError
from .model import (
    AccessorSpec,
    CouplingKey,
    CouplingSpec,
    SystemSpec,
    control_generators,
    n_tilde,
)
from .selection import admissible_indices

RANK_TOL = 1e-10
SAMPLER_ATTEMPTS = 16
RNG_NAME = "numpy.PCG64"


def check_chain_length(system: SystemSpec, accessor: AccessorSpec) -> bool:
    return 3 ** accessor.n_qubits >= n_tilde(system)


def minimal_chain_length(system: SystemSpec) -> int:
    """Smallest ``M >= 1`` with ``3**M >= n_tilde``."""
    target, m = n_tilde(system), 1
    while 3 ** m < target:
        m += 1
    return m


@dataclass(frozen=True)
class CouplingMatrix:
    rows: tuple[str, ...]
    cols: tuple[tuple[int, int, int, int], ...]
    values: np.ndarray

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape


def build_coupling_matrix(system: SystemSpec, accessor: AccessorSpec, coupling: CouplingSpec) -> CouplingMatrix:
    rows = tuple(c.alphas for c in admissible_indices(system, accessor))
    cols = tuple(system.transitions())
    values = np.zeros((len(rows), len(cols)))
    for r, alpha in enumerate(rows):
        for c, t in enumerate(cols):
            values[r, c] = coupling.get(CouplingKey(alpha, *t))
    values.setflags(write=False)
    return CouplingMatrix(rows, cols, values)


class RankCheck(NamedTuple):
    full_rank: bool
    rank: int
    subset: tuple[str, ...]
    det_magnitude: float


def check_coupling_rank(matrix: CouplingMatrix, tol: float = RANK_TOL) -> RankCheck:
    """Numerical column rank of the coupling matrix and a well-conditioned square row subset.

    The subset comes from QR with column pivoting on the transpose, i.e.
    greedy row selection by largest remaining pivot.  It is reported in
    original row order.
    """
    g = np.asarray(matrix.values, dtype=float)
    n_rows, n_cols = g.shape
    if g.size == 0:
        return RankCheck(n_cols == 0, 0, (), 0.0)
    s = np.linalg.svd(g, compute_uv=False)
    rank = int(np.sum(s > tol * s[0])) if s[0] > 0 else 0
    if rank < n_cols:
        return RankCheck(False, rank, (), 0.0)
    _, _, piv = scipy.linalg.qr(g.T, mode="economic", pivoting=True)
    chosen = sorted(piv[:n_cols])
    det = abs(float(np.linalg.det(g[chosen])))
    return RankCheck(True, rank, tuple(matrix.rows[i] for i in chosen), det)


def sample_random_coupling(system: SystemSpec, accessor: AccessorSpec, seed: int,
                           range: tuple[float, float] = (-1.0, 1.0)) -> CouplingSpec:
    """Uniform random couplings for every admissible string and transition.

    Draws come from a seeded PCG64 stream in row-major (string, transition)
    order.  If the draw fails the rank check it is repeated with ``seed + 1``,
    up to 16 attempts in total.
    """
    if not check_chain_length(system, accessor):
        raise SpecValidationError(
            f"accessor with {accessor.n_qubits} qubits is too short: need 3^M >= {n_tilde(system)}",
            "accessor.qubits")
    lo, hi = range
    rows = [c.alphas for c in admissible_indices(system, accessor)]
    cols = system.transitions()
    for attempt in builtins.range(SAMPLER_ATTEMPTS):
        rng = np.random.Generator(np.random.PCG64(seed + attempt))
        draws = rng.uniform(lo, hi, size=(len(rows), len(cols)))
        spec = CouplingSpec({CouplingKey(a, *t): float(draws[r, c])
                             for r, a in enumerate(rows) for c, t in enumerate(cols)})
        if check_coupling_rank(build_coupling_matrix(system, accessor, spec)).full_rank:
            return spec
    raise DegenerateSamplerError(
        f"{SAMPLER_ATTEMPTS} consecutive draws from seed {seed} failed the coupling rank condition")


class Verdict(str, enum.Enum):
    CONTROLLABLE_CERTIFIED = "controllable_certified"
    CONDITIONS_FAIL = "conditions_fail"
    CLOSURE_INCOMPLETE = "closure_incomplete"
    # closure skipped on request and both sufficient conditions hold
    CONDITIONS_PASS = "conditions_pass"


def decide_verdict(closure_dimension: int | None, target_dimension: int,
                   chain_length_ok: bool, coupling_rank_ok: bool) -> Verdict:
    if closure_dimension is not None and closure_dimension == target_dimension:
        return Verdict.CONTROLLABLE_CERTIFIED
    if not (chain_length_ok and coupling_rank_ok):
        return Verdict.CONDITIONS_FAIL
    if closure_dimension is None:
        return Verdict.CONDITIONS_PASS
    return Verdict.CLOSURE_INCOMPLETE


@dataclass
class Report:
    n_total: int
    n_tilde: int
    target_dimension: int
    chain_length_ok: bool
    minimal_chain_length: int
    coupling_rank: int
    coupling_rank_ok: bool
    selected_subset: list[str]
    det_magnitude: float
    closure_dimension: int | None
    verdict: Verdict
    timings: dict[str, float] = field(default_factory=dict, compare=False)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["verdict"] = self.verdict.value
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        d = dict(d)
        d["verdict"] = Verdict(d["verdict"])
        d["selected_subset"] = list(d["selected_subset"])
        d["timings"] = dict(d.get("timings", {}))
        return cls(**d)


def decide_controllability(system: SystemSpec, accessor: AccessorSpec, coupling: CouplingSpec,
                           cfg: ClosureConfig | None = None, *, conditions_only: bool = False,
                           rank_tol: float = RANK_TOL, generator_order: Sequence[int] | None = None) -> Report:
    """Check both sufficient conditions, then certify by Lie closure unless ``conditions_only``.

    ``generator_order`` permutes the control generators fed to the closure;
    the verdict must not depend on it.
    """
    coupling.validate(system, accessor)
    t0 = time.perf_counter()
    n_total = system.dim * accessor.dim
    target = n_total * n_total - 1
    chain_ok = check_chain_length(system, accessor)
    rank = check_coupling_rank(build_coupling_matrix(system, accessor, coupling), rank_tol)
    t1 = time.perf_counter()

    dimension = None
    if not conditions_only:
        gens = list(control_generators(system, accessor, coupling))
        if generator_order is not None:
            if sorted(generator_order) != list(builtins.range(len(gens))):
                raise ValueError(f"generator_order must be a permutation of 0..{len(gens) - 1}")
            gens = [gens[i] for i in generator_order]
        dimension = closure(gens, cfg).dimension
    t2 = time.perf_counter()

    return Report(
        n_total=n_total,
        n_tilde=n_tilde(system),
        target_dimension=target,
        chain_length_ok=chain_ok,
        minimal_chain_length=minimal_chain_length(system),
        coupling_rank=rank.rank,
        coupling_rank_ok=rank.full_rank,
        selected_subset=list(rank.subset),
        det_magnitude=rank.det_magnitude,
        closure_dimension=dimension,
        verdict=decide_verdict(dimension, target, chain_ok, rank.full_rank),
        timings={"conditions_s": t1 - t0, "closure_s": t2 - t1, "total_s": t2 - t0},
    )
