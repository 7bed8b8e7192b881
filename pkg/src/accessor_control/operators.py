"""Dense complex operator arithmetic.

Matrix units, Pauli strings, Kronecker products, commutators, the real
Hilbert-Schmidt inner product and the Chevalley generators of su(N).

Indices taken by the public constructors are 1-based, matching the usual
physics notation ``e_{r,c} = |r><c|``.  Internally everything is a numpy
``complex128`` array.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Sequence

import numpy as np

from .errors import DimensionCapError, DimensionError, IndexRangeError

DEFAULT_DIM_CAP = 4096

_PAULI = {
    "I": np.eye(2, dtype=np.complex128),
    "x": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}
PAULI_AXES = ("I", "x", "y", "z")


class Operator:
    """Immutable dense square complex matrix.

    The underlying array is copied on construction and marked read-only, so
    instances can be shared freely between threads.
    """

    __slots__ = ("_m",)

    def __init__(self, matrix):
        m = np.array(matrix, dtype=np.complex128, copy=True)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
            raise DimensionError(f"operator must be a non-empty square matrix, got shape {m.shape}")
        m.setflags(write=False)
        self._m = m

    @classmethod
    def _wrap(cls, m: np.ndarray) -> "Operator":
        # trusted fast path: caller hands over a fresh complex128 array
        op = cls.__new__(cls)
        m.setflags(write=False)
        op._m = m
        return op

    @classmethod
    def zeros(cls, dim: int) -> "Operator":
        return cls._wrap(np.zeros((dim, dim), dtype=np.complex128))

    @classmethod
    def identity(cls, dim: int) -> "Operator":
        return cls._wrap(np.eye(dim, dtype=np.complex128))

    @property
    def matrix(self) -> np.ndarray:
        """Read-only view of the entries."""
        return self._m

    @property
    def dim(self) -> int:
        return self._m.shape[0]

    def entry(self, r: int, c: int) -> complex:
        """Entry at 1-based row ``r`` and column ``c``."""
        if not (1 <= r <= self.dim and 1 <= c <= self.dim):
            raise IndexRangeError(f"entry ({r}, {c}) outside 1..{self.dim}")
        return complex(self._m[r - 1, c - 1])

    def trace(self) -> complex:
        return complex(np.trace(self._m))

    def dagger(self) -> "Operator":
        return Operator._wrap(self._m.conj().T.copy())

    def norm(self) -> float:
        """Frobenius (Hilbert-Schmidt) norm."""
        return float(np.linalg.norm(self._m))

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        return bool(np.max(np.abs(self._m - self._m.conj().T), initial=0.0) <= tol)

    def is_skew_hermitian(self, tol: float = 1e-12) -> bool:
        return bool(np.max(np.abs(self._m + self._m.conj().T), initial=0.0) <= tol)

    def is_traceless(self, tol: float = 1e-12) -> bool:
        return abs(np.trace(self._m)) <= tol

    def allclose(self, other: "Operator", atol: float = 1e-12) -> bool:
        other = _as_operator(other)
        if other.dim != self.dim:
            return False
        return bool(np.max(np.abs(self._m - other._m), initial=0.0) <= atol)

    def _check_dim(self, other: "Operator") -> None:
        if other.dim != self.dim:
            raise DimensionError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other):
        other = _as_operator(other)
        self._check_dim(other)
        return Operator._wrap(self._m + other._m)

    def __sub__(self, other):
        other = _as_operator(other)
        self._check_dim(other)
        return Operator._wrap(self._m - other._m)

    def __neg__(self):
        return Operator._wrap(-self._m)

    def __mul__(self, scalar):
        if isinstance(scalar, Operator):
            return NotImplemented
        return Operator._wrap(self._m * complex(scalar))

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return Operator._wrap(self._m / complex(scalar))

    def __matmul__(self, other):
        other = _as_operator(other)
        self._check_dim(other)
        return Operator._wrap(self._m @ other._m)

    def __eq__(self, other):
        if not isinstance(other, Operator):
            return NotImplemented
        return self._m.shape == other._m.shape and bool(np.array_equal(self._m, other._m))

    def __hash__(self):
        return hash((self._m.shape, self._m.tobytes()))

    def __repr__(self):
        return f"Operator(dim={self.dim})"


def _as_operator(x) -> Operator:
    return x if isinstance(x, Operator) else Operator(x)


def matrix_unit(dim: int, r: int, c: int) -> Operator:
    """``|r><c|`` in dimension ``dim`` (1-based indices)."""
    if not (1 <= r <= dim and 1 <= c <= dim):
        raise IndexRangeError(f"matrix unit ({r}, {c}) outside 1..{dim}")
    m = np.zeros((dim, dim), dtype=np.complex128)
    m[r - 1, c - 1] = 1.0
    return Operator._wrap(m)


def pauli(axis: str) -> Operator:
    """Single-qubit Pauli matrix; ``"I"`` is the identity."""
    try:
        return Operator._wrap(_PAULI[axis].copy())
    except KeyError:
        raise ValueError(f"unknown Pauli axis {axis!r}; expected one of {PAULI_AXES}") from None


def tensor(a: Operator, b: Operator, *, cap: int | None = None) -> Operator:
    """Kronecker product ``a (x) b``.

    Raises :class:`DimensionCapError` when the result would exceed ``cap``
    (default :data:`DEFAULT_DIM_CAP`).
    """
    a, b = _as_operator(a), _as_operator(b)
    cap = DEFAULT_DIM_CAP if cap is None else cap
    dim = a.dim * b.dim
    if dim > cap:
        raise DimensionCapError(f"tensor product dimension {dim} exceeds cap {cap}")
    return Operator._wrap(np.kron(a.matrix, b.matrix))


def tensor_all(factors: Sequence[Operator], *, cap: int | None = None) -> Operator:
    if not factors:
        raise ValueError("need at least one factor")
    return reduce(lambda x, y: tensor(x, y, cap=cap), factors)


def pauli_string(m: int, axes: Sequence[str] | str) -> Operator:
    """Ordered Kronecker product of Pauli matrices over qubits ``1..m``."""
    axes = list(axes)
    if len(axes) != m:
        raise DimensionError(f"Pauli string {''.join(axes)!r} has length {len(axes)}, expected {m}")
    return tensor_all([pauli(a) for a in axes])


def embed_qubit(n_qubits: int, qubit: int, axis: str, left_dim: int = 1) -> Operator:
    """``1_left (x) sigma_axis`` acting on 1-based ``qubit`` of an ``n_qubits`` chain."""
    if not 1 <= qubit <= n_qubits:
        raise IndexRangeError(f"qubit {qubit} outside 1..{n_qubits}")
    axes = ["I"] * n_qubits
    axes[qubit - 1] = axis
    op = pauli_string(n_qubits, axes)
    if left_dim > 1:
        op = tensor(Operator.identity(left_dim), op)
    return op


def commutator(a: Operator, b: Operator) -> Operator:
    """``a b - b a``."""
    a, b = _as_operator(a), _as_operator(b)
    a._check_dim(b)
    am, bm = a.matrix, b.matrix
    return Operator._wrap(am @ bm - bm @ am)


def hs_inner(a: Operator, b: Operator) -> float:
    """Real Hilbert-Schmidt inner product ``Re tr(a^dagger b)``."""
    a, b = _as_operator(a), _as_operator(b)
    a._check_dim(b)
    # Re tr(a^H b) = sum Re(conj(a_ij) b_ij)
    return float(np.vdot(a.matrix, b.matrix).real)


@dataclass(frozen=True)
class ChevalleyTriple:
    """Hermitian ``x, h, y`` on the two-state subspace ``{a, b}``.

    ``indices`` holds the level-pair label ``(n, i, j)``: state ``i`` of level
    ``n`` paired with state ``j`` of level ``n + 1``.
    """

    x_op: Operator
    h_op: Operator
    y_op: Operator
    indices: tuple[int, int, int]

    def by_k(self, k: int) -> Operator:
        """``s^k``: ``x`` for k=+1, ``h`` for k=0, ``y`` for k=-1."""
        if k == 1:
            return self.x_op
        if k == 0:
            return self.h_op
        if k == -1:
            return self.y_op
        raise ValueError(f"k must be one of +1, 0, -1, got {k!r}")


def chevalley_triple(system, n: int, i: int, j: int) -> ChevalleyTriple:
    """Chevalley generators coupling state ``(n, i)`` to state ``(n+1, j)``.

    ``system`` is a :class:`~accessor_control.model.SystemSpec`; its
    level-major flattening fixes the matrix positions.
    """
    n_levels = len(system.degeneracies)
    if not 1 <= n <= n_levels - 1:
        raise IndexRangeError(f"level n={n} outside 1..{n_levels - 1}")
    a = system.flat_index(n, i)
    b = system.flat_index(n + 1, j)
    d = system.dim
    eab, eba = matrix_unit(d, a, b), matrix_unit(d, b, a)
    x = eab + eba
    h = matrix_unit(d, a, a) - matrix_unit(d, b, b)
    y = 1j * (eab - eba)
    return ChevalleyTriple(x, h, y, (n, i, j))
