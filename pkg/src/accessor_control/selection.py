"""Selection superoperators acting on single accessor qubits.

Each selector is a short nested commutator with ``i sigma^k`` (embedded as
``1_system (x) sigma^k``) that keeps one Pauli letter on qubit ``k``, maps
it onto a fixed letter and annihilates the other letters and the identity.

======  ========================================================  ==========
kind    action                                                    keeps
======  ========================================================  ==========
``xy``  ``1/4 [i s_x, [i s_y, *]]``                                x -> y
``yx``  ``1/4 [i s_y, [i s_x, *]]``                                y -> x
``zx``  ``1/4 [i s_z, [i s_x, *]]``                                z -> x
``xx``  ``1/8 [i s_z, [i s_x, [i s_y, *]]]``                       x -> x
======  ========================================================  ==========
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import DimensionError, IndexRangeError
from .model import PAULI_LETTERS, AccessorSpec, SystemSpec, coupling_term
from .operators import Operator, _PAULI

ANNIHILATION_TOL = 1e-12

# (commutator letters applied innermost-first, prefactor)
_TEMPLATES = {
    "xy": (("y", "x"), 0.25),
    "yx": (("x", "y"), 0.25),
    "zx": (("x", "z"), 0.25),
    "xx": (("y", "x", "z"), 0.125),
}
_LETTER_TO_KIND = {"x": "xx", "y": "yx", "z": "zx"}


@dataclass(frozen=True)
class SelectionKind:
    kind: str
    qubit: int

    def __post_init__(self):
        if self.kind not in _TEMPLATES:
            raise ValueError(f"unknown selection kind {self.kind!r}")
        if self.qubit < 1:
            raise IndexRangeError(f"qubit must be >= 1, got {self.qubit}")


@dataclass(frozen=True)
class SelectionChain:
    """One selector per qubit, chosen by the letters of ``alphas``."""

    alphas: str

    def __post_init__(self):
        if not self.alphas or any(a not in PAULI_LETTERS for a in self.alphas):
            raise ValueError(f"chain letters must be from x, y, z, got {self.alphas!r}")

    def __len__(self):
        return len(self.alphas)

    def kinds(self) -> list[SelectionKind]:
        return [SelectionKind(kind_for_letter(a), q) for q, a in enumerate(self.alphas, start=1)]


def kind_for_letter(letter: str) -> str:
    """Selector kind whose surviving letter is ``letter`` (mapped onto ``x``)."""
    try:
        return _LETTER_TO_KIND[letter]
    except KeyError:
        raise ValueError(f"letter must be x, y or z, got {letter!r}") from None


def _ad_qubit(axis: str, qubit: int, n_qubits: int, t: np.ndarray) -> np.ndarray:
    """``[i sigma_axis^qubit, t]`` where ``t`` has shape ``(d, 2**M, d, 2**M)`` flattened to 2-D."""
    dim = t.shape[0]
    left = dim >> n_qubits << (qubit - 1)
    right = 1 << (n_qubits - qubit)
    # view t as (left, 2, right) x (left, 2, right) and act on the qubit axis only
    t6 = t.reshape(left, 2, right, left, 2, right)
    s = 1j * _PAULI[axis]
    st = np.einsum("ab,lbrmcs->larmcs", s, t6)
    ts = np.einsum("lbrmcs,cd->lbrmds", t6, s)
    return (st - ts).reshape(dim, dim)


def _check_target(target: Operator, qubit: int, n_qubits: int) -> None:
    if not 1 <= qubit <= n_qubits:
        raise IndexRangeError(f"qubit {qubit} outside 1..{n_qubits}")
    if target.dim % (1 << n_qubits):
        raise DimensionError(f"operator dimension {target.dim} not divisible by 2^{n_qubits}")


def apply_selection(kind: SelectionKind, target: Operator, n_qubits: int) -> Operator:
    """Apply one selector to ``target`` on the space ``system (x) (C^2)^{n_qubits}``."""
    _check_target(target, kind.qubit, n_qubits)
    return Operator._wrap(_apply_kind(kind.kind, kind.qubit, n_qubits, target.matrix))


def _apply_kind(kind: str, qubit: int, n_qubits: int, t: np.ndarray) -> np.ndarray:
    letters, pref = _TEMPLATES[kind]
    for axis in letters:
        t = _ad_qubit(axis, qubit, n_qubits, t)
    return pref * t


def apply_chain(chain: SelectionChain, target: Operator) -> Operator:
    """Apply the selector for ``alphas[k-1]`` on qubit ``k``, qubit 1 first.

    The selectors act on different qubits and commute, so the order only
    matters for bitwise reproducibility.
    """
    n_qubits = len(chain.alphas)
    _check_target(target, 1, n_qubits)
    t = target.matrix
    for q, a in enumerate(chain.alphas, start=1):
        t = _apply_kind(kind_for_letter(a), q, n_qubits, t)
    return Operator._wrap(np.ascontiguousarray(t))


def all_chains(n_qubits: int) -> list[SelectionChain]:
    """Every letter string of length ``n_qubits`` in lexicographic x < y < z order."""
    return [SelectionChain("".join(p)) for p in product(PAULI_LETTERS, repeat=n_qubits)]


def chain_residuals(n_qubits: int) -> dict[str, float]:
    """Largest residual norm each chain leaves on the accessor couplings ``i sigma_x^k sigma_x^{k+1}``.

    The system factor is the identity on every coupling term and commutes
    through the selectors, so the check runs on the accessor space alone.
    """
    terms = [1j * coupling_term(n_qubits, k) for k in range(1, n_qubits)]
    out = {}
    for chain in all_chains(n_qubits):
        out[chain.alphas] = max((apply_chain(chain, t).norm() for t in terms), default=0.0)
    return out


def admissible_indices(system: SystemSpec, accessor: AccessorSpec) -> list[SelectionChain]:
    """Chains that annihilate every accessor coupling term (numerically, at 1e-12)."""
    res = chain_residuals(accessor.n_qubits)
    return [SelectionChain(a) for a, r in res.items() if r < ANNIHILATION_TOL]
