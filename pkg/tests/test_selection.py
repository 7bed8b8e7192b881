from itertools import product

import numpy as np
import pytest

from accessor_control import (
    AccessorSpec,
    CouplingKey,
    CouplingSpec,
    Operator,
    SelectionChain,
    SelectionKind,
    SystemSpec,
    admissible_indices,
    apply_chain,
    apply_selection,
    build_h0,
    chevalley_triple,
    kind_for_letter,
    pauli_string,
    tensor,
)
from accessor_control.errors import DimensionError, IndexRangeError
from accessor_control.model import coupling_term
from accessor_control.operators import embed_qubit

SIG = {
    "I": np.eye(2),
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]]),
    "z": np.diag([1.0 + 0j, -1.0]),
}

# surviving letter and where it goes, per kind (the property tables)
TABLE = {"xy": ("x", "y"), "yx": ("y", "x"), "zx": ("z", "x"), "xx": ("x", "x")}


def _embed(d_sys, m, qubit, axis):
    f = [SIG["I"]] * m
    f[qubit - 1] = SIG[axis]
    out = f[0]
    for g in f[1:]:
        out = np.kron(out, g)
    return np.kron(np.eye(d_sys), out)


def _comm(a, b):
    return a @ b - b @ a


def _oracle_selection(kind, qubit, d_sys, m, t):
    """Nested commutators written out with explicit Kronecker matrices."""
    s = {a: 1j * _embed(d_sys, m, qubit, a) for a in "xyz"}
    if kind == "xy":
        return 0.25 * _comm(s["x"], _comm(s["y"], t))
    if kind == "yx":
        return 0.25 * _comm(s["y"], _comm(s["x"], t))
    if kind == "zx":
        return 0.25 * _comm(s["z"], _comm(s["x"], t))
    return 0.125 * _comm(s["z"], _comm(s["x"], _comm(s["y"], t)))


@pytest.mark.parametrize("kind", ["xy", "yx", "zx", "xx"])
@pytest.mark.parametrize("qubit", [1, 2, 3])
def test_property_table(kind, qubit):
    keep, image = TABLE[kind]
    for alpha in "xyz":
        target = 1j * embed_qubit(3, qubit, alpha, left_dim=2)
        got = apply_selection(SelectionKind(kind, qubit), target, 3)
        expected = 1j * embed_qubit(3, qubit, image, left_dim=2) if alpha == keep else Operator.zeros(16)
        assert got.allclose(expected, atol=1e-12)


def test_selection_matches_explicit_commutators(rng):
    t = rng.normal(size=(12, 12)) + 1j * rng.normal(size=(12, 12))
    for kind, qubit in product(TABLE, (1, 2)):
        got = apply_selection(SelectionKind(kind, qubit), Operator(t), 2).matrix
        assert np.allclose(got, _oracle_selection(kind, qubit, 3, 2, t), atol=1e-12)


def test_selection_kills_identity_on_qubit():
    t = Operator(1j * np.kron(np.diag([1.0, -1.0, 0.0]), np.kron(SIG["x"], SIG["I"])))
    for kind in TABLE:
        assert apply_selection(SelectionKind(kind, 2), t, 2).norm() < 1e-14


def test_selection_dimension_checks():
    with pytest.raises(DimensionError):
        apply_selection(SelectionKind("xx", 1), Operator.identity(6), 2)
    with pytest.raises(IndexRangeError):
        apply_selection(SelectionKind("xx", 3), Operator.identity(8), 2)
    with pytest.raises(ValueError):
        SelectionKind("zz", 1)


def test_kind_for_letter():
    assert kind_for_letter("x") == "xx"
    assert kind_for_letter("y") == "yx"
    assert kind_for_letter("z") == "zx"
    with pytest.raises(ValueError):
        kind_for_letter("I")


def _chain_oracle(alphas, d_sys, t):
    m = len(alphas)
    for q, a in enumerate(alphas, start=1):
        t = _oracle_selection(kind_for_letter(a), q, d_sys, m, t)
    return t


def test_chain_eigen_action_two_level():
    system = SystemSpec((-2.0, 1.0), (1, 2))
    strings = ["".join(p) for p in product("xyz", repeat=2)]
    s_ops = [chevalley_triple(system, 1, 1, j).by_k(k) for j in (1, 2) for k in (1, 0, -1)]
    for s in s_ops:
        for alpha in strings:
            for beta in strings:
                target = 1j * tensor(s, pauli_string(2, beta))
                got = apply_chain(SelectionChain(alpha), target).matrix
                oracle = _chain_oracle(alpha, 3, target.matrix)
                assert np.allclose(got, oracle, atol=1e-12)
                # the chain maps its own string onto sigma_x sigma_x and kills the rest
                expected = 1j * tensor(s, pauli_string(2, "xx")) if alpha == beta else Operator.zeros(12)
                assert Operator(oracle).allclose(expected, atol=1e-12)


def test_chain_linear(rng):
    for alpha in ("xyz", "zzx", "yxy"):
        a = Operator(rng.normal(size=(16, 16)) + 1j * rng.normal(size=(16, 16)))
        b = Operator(rng.normal(size=(16, 16)) + 1j * rng.normal(size=(16, 16)))
        c = SelectionChain(alpha)
        assert apply_chain(c, a + b).allclose(apply_chain(c, a) + apply_chain(c, b), atol=1e-12)


def test_three_qubit_chains_kill_accessor_coupling():
    h_ai = 1j * tensor(Operator.identity(5), 0.7 * coupling_term(3, 1) - 1.3 * coupling_term(3, 2))
    for alphas in product("xyz", repeat=3):
        assert apply_chain(SelectionChain("".join(alphas)), h_ai).norm() < 1e-14


def test_admissible_indices():
    s2 = SystemSpec((-2.0, 1.0), (1, 2))
    two = [c.alphas for c in admissible_indices(s2, AccessorSpec(2, (1, 1), (1,)))]
    assert len(two) == 8 and "xx" not in two
    assert two == sorted(two)
    assert len(admissible_indices(s2, AccessorSpec(3, (1,) * 3, (1,) * 2))) == 27
    assert len(admissible_indices(s2, AccessorSpec(4, (1,) * 4, (1,) * 3))) == 81
    assert len(admissible_indices(s2, AccessorSpec(1, (1,), ()))) == 3


def test_two_level_selection_identity(rng):
    """S_xx^2 S_yx^1 (iH_0') isolates the yx couplings onto sigma_x sigma_x."""
    system = SystemSpec((-2.0, 1.0), (1, 2))
    accessor = AccessorSpec(2, (0.6, -1.4), (0.9,))
    strings = ["".join(p) for p in product("xyz", repeat=2)]
    coupling = CouplingSpec({CouplingKey(a, *t): rng.uniform(-1, 1)
                             for a in strings for t in system.transitions()})
    h0p = build_h0(system, accessor, coupling)
    for k, w in enumerate(accessor.frequencies, start=1):
        h0p = h0p - w * embed_qubit(2, k, "z", left_dim=3)
    got = apply_chain(SelectionChain("yx"), 1j * h0p)

    s_sum = Operator.zeros(3)
    for (n, i, j, k) in system.transitions():
        s_sum = s_sum + coupling.get(("yx", n, i, j, k)) * chevalley_triple(system, n, i, j).by_k(k)
    assert got.allclose(1j * tensor(s_sum, pauli_string(2, "xx")), atol=1e-12)

    # the xx chain also picks up the accessor's own coupling term
    got_xx = apply_chain(SelectionChain("xx"), 1j * h0p)
    s_xx = Operator.zeros(3)
    for (n, i, j, k) in system.transitions():
        s_xx = s_xx + coupling.get(("xx", n, i, j, k)) * chevalley_triple(system, n, i, j).by_k(k)
    expected = 1j * tensor(s_xx, pauli_string(2, "xx")) + 0.9j * tensor(Operator.identity(3), pauli_string(2, "xx"))
    assert got_xx.allclose(expected, atol=1e-12)
