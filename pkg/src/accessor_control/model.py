"""System, accessor and coupling specifications and the Hamiltonians they define.

The full Hilbert space is ``system (x) qubit_1 (x) ... (x) qubit_M``.  System
states are ordered level-major: ``(1,1), (2,1), ..., (2,beta_2), (3,1), ...``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

import numpy as np

from .errors import IndexRangeError, InvalidCouplingError, InvalidKeyError, SpecValidationError
from .operators import (
    Operator,
    chevalley_triple,
    embed_qubit,
    pauli_string,
    tensor,
)

TRACE_TOL = 1e-10
COUPLING_ZERO_TOL = 1e-12
K_VALUES = (1, 0, -1)
PAULI_LETTERS = ("x", "y", "z")


@dataclass(frozen=True)
class SystemSpec:
    """Energies ``E_n`` and degeneracies ``beta_n`` of the controlled system."""

    energies: tuple[float, ...]
    degeneracies: tuple[int, ...]
    allow_degenerate_ground: bool = False

    def __post_init__(self):
        object.__setattr__(self, "energies", tuple(float(e) for e in self.energies))
        object.__setattr__(self, "degeneracies", tuple(self.degeneracies))
        if len(self.energies) != len(self.degeneracies):
            raise SpecValidationError("energies and degeneracies differ in length", "system.levels")
        if len(self.energies) < 2:
            raise SpecValidationError("at least two levels are required", "system.levels")
        for idx, b in enumerate(self.degeneracies):
            if isinstance(b, bool) or not isinstance(b, (int, np.integer)) or b < 1:
                raise SpecValidationError(
                    f"degeneracy must be a positive integer, got {b!r}",
                    f"system.levels[{idx}].degeneracy",
                )
        object.__setattr__(self, "degeneracies", tuple(int(b) for b in self.degeneracies))
        for idx, e in enumerate(self.energies):
            if not math.isfinite(e):
                raise SpecValidationError("energy must be finite", f"system.levels[{idx}].energy")
        if self.degeneracies[0] != 1 and not self.allow_degenerate_ground:
            raise SpecValidationError(
                "ground level must be non-degenerate (set allow_degenerate_ground to override)",
                "system.levels[0].degeneracy",
            )
        tr = sum(b * e for b, e in zip(self.degeneracies, self.energies))
        if abs(tr) > TRACE_TOL:
            raise SpecValidationError(
                f"trace condition violated: sum(beta_n * E_n) = {tr:.3g}, expected 0 "
                "(see recenter_energies)",
                "system.levels",
            )

    @classmethod
    def from_levels(cls, levels: Iterable[tuple[float, int]], **kw) -> "SystemSpec":
        levels = list(levels)
        return cls(tuple(e for e, _ in levels), tuple(b for _, b in levels), **kw)

    @property
    def n_levels(self) -> int:
        return len(self.degeneracies)

    @property
    def dim(self) -> int:
        """Total number of system states."""
        return sum(self.degeneracies)

    @cached_property
    def _offsets(self) -> tuple[int, ...]:
        out, acc = [], 0
        for b in self.degeneracies:
            out.append(acc)
            acc += b
        return tuple(out)

    def flat_index(self, n: int, i: int) -> int:
        """1-based position of state ``i`` of level ``n``."""
        if not 1 <= n <= self.n_levels:
            raise IndexRangeError(f"level {n} outside 1..{self.n_levels}")
        if not 1 <= i <= self.degeneracies[n - 1]:
            raise IndexRangeError(f"state {i} outside 1..{self.degeneracies[n - 1]} for level {n}")
        return self._offsets[n - 1] + i

    def level_pairs(self) -> Iterator[tuple[int, int, int]]:
        """All ``(n, i, j)`` coupling state ``(n,i)`` to ``(n+1,j)``, level-major."""
        for n in range(1, self.n_levels):
            for i in range(1, self.degeneracies[n - 1] + 1):
                for j in range(1, self.degeneracies[n] + 1):
                    yield (n, i, j)

    def transitions(self) -> list[tuple[int, int, int, int]]:
        """Transition keys ``(n, i, j, k)`` with ``k`` in ``(+1, 0, -1)`` order."""
        return [(n, i, j, k) for n, i, j in self.level_pairs() for k in K_VALUES]

    def has_transition(self, n: int, i: int, j: int) -> bool:
        return (
            1 <= n <= self.n_levels - 1
            and 1 <= i <= self.degeneracies[n - 1]
            and 1 <= j <= self.degeneracies[n]
        )


def recenter_energies(energies: Sequence[float], degeneracies: Sequence[int]) -> tuple[float, ...]:
    """Shift energies by their degeneracy-weighted mean so the trace vanishes."""
    total = sum(degeneracies)
    mean = sum(b * e for b, e in zip(degeneracies, energies)) / total
    return tuple(float(e) - mean for e in energies)


def flatten_index(system: SystemSpec, n: int, i: int) -> int:
    return system.flat_index(n, i)


def n_tilde(system: SystemSpec) -> int:
    """Number of system-side interaction operators, ``3 sum beta_n beta_{n+1}``."""
    b = system.degeneracies
    return 3 * sum(b[n] * b[n + 1] for n in range(len(b) - 1))


@dataclass(frozen=True)
class AccessorSpec:
    """Qubit chain: ``M`` qubits, frequencies ``omega_k`` and nearest-neighbour couplings ``c_k``."""

    n_qubits: int
    frequencies: tuple[float, ...]
    chain_couplings: tuple[float, ...]

    def __post_init__(self):
        if isinstance(self.n_qubits, bool) or not isinstance(self.n_qubits, (int, np.integer)) or self.n_qubits < 1:
            raise SpecValidationError(f"qubit count must be a positive integer, got {self.n_qubits!r}",
                                      "accessor.qubits")
        object.__setattr__(self, "n_qubits", int(self.n_qubits))
        object.__setattr__(self, "frequencies", tuple(float(w) for w in self.frequencies))
        object.__setattr__(self, "chain_couplings", tuple(float(c) for c in self.chain_couplings))
        if len(self.frequencies) != self.n_qubits:
            raise SpecValidationError(
                f"expected {self.n_qubits} frequencies, got {len(self.frequencies)}", "accessor.frequencies")
        if len(self.chain_couplings) != self.n_qubits - 1:
            raise SpecValidationError(
                f"expected {self.n_qubits - 1} chain couplings, got {len(self.chain_couplings)}",
                "accessor.chain_couplings")
        for k, c in enumerate(self.chain_couplings):
            if not abs(c) > COUPLING_ZERO_TOL:
                raise InvalidCouplingError(
                    f"chain coupling c_{k + 1} must be nonzero (coupling constant c_k != 0), got {c!r}",
                    f"accessor.chain_couplings[{k}]",
                )

    @property
    def dim(self) -> int:
        return 2 ** self.n_qubits


class CouplingKey(NamedTuple):
    """Index of one coupling constant: Pauli string ``alpha`` and transition ``(n, i, j, k)``."""

    alpha: str
    n: int
    i: int
    j: int
    k: int

    @property
    def transition(self) -> tuple[int, int, int, int]:
        return (self.n, self.i, self.j, self.k)


@dataclass(frozen=True)
class CouplingSpec:
    """Real coupling constants ``g`` keyed by :class:`CouplingKey`; absent keys mean zero."""

    entries: Mapping[CouplingKey, float] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for key, g in dict(self.entries).items():
            key = CouplingKey(*key)
            if isinstance(g, complex):
                raise SpecValidationError(f"coupling constant for {key} must be real", "interaction.entries")
            clean[key] = float(g)
        object.__setattr__(self, "entries", MappingProxyType(clean))

    def __len__(self):
        return len(self.entries)

    def get(self, key, default: float = 0.0) -> float:
        return self.entries.get(CouplingKey(*key), default)

    def validate(self, system: SystemSpec, accessor: AccessorSpec) -> None:
        for idx, key in enumerate(self.entries):
            loc = f"interaction.entries[{idx}]"
            if len(key.alpha) != accessor.n_qubits or any(a not in PAULI_LETTERS for a in key.alpha):
                raise InvalidKeyError(
                    f"Pauli string {key.alpha!r} must have {accessor.n_qubits} letters from x, y, z",
                    loc + ".pauli")
            if not system.has_transition(key.n, key.i, key.j):
                raise InvalidKeyError(f"({key.n}, {key.i}, {key.j}) is not a transition of the system", loc)
            if key.k not in K_VALUES:
                raise InvalidKeyError(f"k must be one of +1, 0, -1, got {key.k!r}", loc + ".k")

    def to_list(self) -> list[dict]:
        return [
            {"pauli": k.alpha, "n": k.n, "i": k.i, "j": k.j, "k": k.k, "g": g}
            for k, g in self.entries.items()
        ]

    @classmethod
    def from_list(cls, items: Iterable[Mapping]) -> "CouplingSpec":
        return cls({CouplingKey(d["pauli"], d["n"], d["i"], d["j"], d["k"]): d["g"] for d in items})


@dataclass(frozen=True)
class ControlChannelSet:
    """``[iH_0, i sigma_x^1, i sigma_y^1, ..., i sigma_x^M, i sigma_y^M]`` on the full space."""

    generators: tuple[Operator, ...]

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __getitem__(self, idx):
        return self.generators[idx]


def build_h_system(system: SystemSpec) -> Operator:
    diag = [e for e, b in zip(system.energies, system.degeneracies) for _ in range(b)]
    return Operator(np.diag(np.asarray(diag, dtype=np.complex128)))


def build_h_accessor(accessor: AccessorSpec) -> Operator:
    """``sum_k omega_k sigma_z^k + sum_k c_k sigma_x^k sigma_x^{k+1}``."""
    m = accessor.n_qubits
    h = Operator.zeros(2 ** m)
    for k, w in enumerate(accessor.frequencies, start=1):
        h = h + w * embed_qubit(m, k, "z")
    for k, c in enumerate(accessor.chain_couplings, start=1):
        h = h + c * coupling_term(m, k)
    return h


def coupling_term(n_qubits: int, k: int) -> Operator:
    """``sigma_x^k sigma_x^{k+1}`` on the accessor alone."""
    axes = ["I"] * n_qubits
    axes[k - 1] = axes[k] = "x"
    return pauli_string(n_qubits, axes)


def system_operator(system: SystemSpec, n: int, i: int, j: int, k: int) -> Operator:
    """``s^k_{nij}``."""
    return chevalley_triple(system, n, i, j).by_k(k)


def build_h_interaction(system: SystemSpec, accessor: AccessorSpec, coupling: CouplingSpec) -> Operator:
    """``sum g * s^k_{nij} (x) sigma_alpha`` over the coupling entries."""
    coupling.validate(system, accessor)
    d_s, m = system.dim, accessor.n_qubits
    total = np.zeros((d_s * 2 ** m, d_s * 2 ** m), dtype=np.complex128)
    # group by Pauli string so each Kronecker product is formed once
    sys_parts: dict[str, np.ndarray] = {}
    for key, g in coupling.entries.items():
        if g == 0.0:
            continue
        acc = sys_parts.setdefault(key.alpha, np.zeros((d_s, d_s), dtype=np.complex128))
        acc += g * system_operator(system, key.n, key.i, key.j, key.k).matrix
    for alpha, s in sys_parts.items():
        total += np.kron(s, pauli_string(m, alpha).matrix)
    return Operator(total)


def build_h0(system: SystemSpec, accessor: AccessorSpec, coupling: CouplingSpec) -> Operator:
    """Drift Hamiltonian ``H_S (x) 1 + 1 (x) H_A + H_SA``."""
    h_s = tensor(build_h_system(system), Operator.identity(accessor.dim))
    h_a = tensor(Operator.identity(system.dim), build_h_accessor(accessor))
    return h_s + h_a + build_h_interaction(system, accessor, coupling)


def control_generators(system: SystemSpec, accessor: AccessorSpec, coupling: CouplingSpec) -> ControlChannelSet:
    gens = [1j * build_h0(system, accessor, coupling)]
    for k in range(1, accessor.n_qubits + 1):
        gens.append(1j * embed_qubit(accessor.n_qubits, k, "x", left_dim=system.dim))
        gens.append(1j * embed_qubit(accessor.n_qubits, k, "y", left_dim=system.dim))
    return ControlChannelSet(tuple(gens))
