import numpy as np
import pytest

from accessor_control import AccessorSpec, SystemSpec, Operator


def random_skew(rng, n, real=False):
    """Random traceless skew-Hermitian matrix."""
    a = rng.normal(size=(n, n))
    if not real:
        a = a + 1j * rng.normal(size=(n, n))
    x = a - a.conj().T
    x = x - np.trace(x) / n * np.eye(n)
    return Operator(x)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def two_level():
    return (SystemSpec((-2.0, 1.0), (1, 2)), AccessorSpec(2, (1.0, 1.0), (1.0,)))


@pytest.fixture
def three_level():
    return (SystemSpec((-4.0, 1.0, 1.0), (1, 2, 2)), AccessorSpec(3, (1.0, 1.0, 1.0), (1.0, 1.0)))


FAMILIES = ("generic", "single", "so", "block", "block_u1", "diagonal", "pauli")


def random_family(rng, n, family):
    """Random generator set of a known structure plus its analytic dimension (None if unknown)."""
    if family == "generic":
        return [random_skew(rng, n), random_skew(rng, n)], n * n - 1
    if family == "single":
        return [random_skew(rng, n)], 1
    if family == "so":
        return [random_skew(rng, n, real=True), random_skew(rng, n, real=True)], n * (n - 1) // 2
    if family in ("block", "block_u1"):
        a = n // 2
        b = n - a

        def blk():
            m = np.zeros((n, n), dtype=complex)
            m[:a, :a] = random_skew(rng, a).matrix
            m[a:, a:] = random_skew(rng, b).matrix
            return Operator(m)

        gens = [blk(), blk()]
        dim = (a * a - 1) + (b * b - 1)
        if family == "block_u1":
            gens.append(Operator(1j * np.diag([b] * a + [-a] * b).astype(complex)))
            dim += 1
        return gens, dim
    if family == "diagonal":
        gens = []
        for _ in range(3):
            d = rng.normal(size=n)
            gens.append(Operator(1j * np.diag(d - d.mean())))
        return gens, min(3, n - 1)
    if family == "pauli":
        from itertools import product
        from accessor_control import pauli_string
        strings = ["".join(p) for p in product("Ixyz", repeat=2)][1:]
        pick = rng.choice(len(strings), size=3, replace=False)
        return [1j * pauli_string(2, strings[i]) for i in pick], None
    raise ValueError(family)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
