import numpy as np
import pytest

from accessor_control import (
    ClosureConfig,
    Operator,
    closure,
    closure_oracle,
    control_generators,
    hs_inner,
    pauli,
    sample_random_coupling,
    vectorize,
)
from accessor_control.errors import MaxBasisExceededError, NotSkewHermitianError, OracleTooLargeError

from conftest import FAMILIES, random_family, random_skew

IX, IY, IZ = (1j * pauli(a) for a in "xyz")


def test_vectorize():
    assert not vectorize(Operator.zeros(3)).any()
    assert vectorize(IX).shape == (8,)
    assert vectorize(IX) @ vectorize(IX) == 2
    assert vectorize(IX) @ vectorize(IY) == 0


def test_vectorize_matches_hs_inner(rng):
    for _ in range(20):
        a = Operator(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))
        b = Operator(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))
        assert abs(vectorize(a) @ vectorize(b) - hs_inner(a, b)) < 1e-12


def test_small_closures():
    assert closure([IX, IY]).dimension == 3
    assert closure([IX, IY]).saturated
    assert closure([IZ]).dimension == 1
    assert closure([IZ, 2.5 * IZ]).dimension == 1
    assert closure_oracle([IX, IY]) == 3
    assert closure_oracle([IZ]) == 1


def test_oracle_generic_su3(rng):
    for _ in range(5):
        assert closure_oracle([random_skew(rng, 3), random_skew(rng, 3)]) == 8


@pytest.mark.parametrize("family", [f for f in FAMILIES if f != "pauli"])
@pytest.mark.parametrize("n", [3, 4, 5])
def test_known_dimensions(rng, family, n):
    gens, expected = random_family(rng, n, family)
    assert closure(gens).dimension == expected
    assert closure_oracle(gens) == expected


def test_pauli_subalgebras(rng):
    # {XX, ZZ} commute; {XI, ZI} span su(2) on qubit 1; {XI, IZ, ZX} gives more
    from accessor_control import pauli_string
    ps = lambda s: 1j * pauli_string(2, s)
    assert closure([ps("xx"), ps("zz")]).dimension == 2
    assert closure([ps("xI"), ps("zI")]).dimension == 3
    gens = [ps("xI"), ps("Iz"), ps("zx")]
    assert closure(gens).dimension == closure_oracle(gens)


def test_rejects_bad_generators():
    with pytest.raises(NotSkewHermitianError):
        closure([pauli("x")])
    with pytest.raises(NotSkewHermitianError):
        closure([Operator(1j * np.eye(2))])
    with pytest.raises(NotSkewHermitianError):
        closure([IX, Operator(1j * np.diag([1, -1, 0]))])
    with pytest.raises(ValueError):
        closure([])


def test_max_basis():
    with pytest.raises(MaxBasisExceededError):
        closure([IX, IY], ClosureConfig(max_basis=2))
    assert closure([IX, IY], ClosureConfig(max_basis=3)).dimension == 3


def test_config_validation():
    for bad in (0.0, 1.0, -1e-3):
        with pytest.raises(ValueError):
            ClosureConfig(independence_tol=bad)
    with pytest.raises(ValueError):
        ClosureConfig(workers=0)


def test_oracle_limits(rng):
    with pytest.raises(OracleTooLargeError):
        closure_oracle([random_skew(rng, 9)])
    with pytest.raises(OracleTooLargeError):
        closure_oracle([random_skew(rng, 3) for _ in range(9)])


def test_zero_generator_ignored():
    assert closure([Operator.zeros(2), IX]).dimension == 1


def _demo_generators(two_level, seed=1):
    system, accessor = two_level
    coupling = sample_random_coupling(system, accessor, seed)
    return list(control_generators(system, accessor, coupling))


def test_basis_invariants(two_level):
    basis = closure(_demo_generators(two_level))
    assert basis.dimension == 143
    g = basis.gram()
    assert np.max(np.abs(g - np.eye(basis.dimension))) < 1e-9
    for v in basis.vectors:
        assert v.is_skew_hermitian(1e-10) and v.is_traceless(1e-10)


def test_early_stop_agrees_with_full_run(two_level, rng):
    gens = _demo_generators(two_level)
    full = closure(gens, ClosureConfig(early_stop=False))
    assert full.dimension == closure(gens).dimension == 143
    for n in (4, 6):
        gens, _ = random_family(rng, n, "block_u1")
        assert closure(gens, ClosureConfig(early_stop=False)).dimension == closure(gens).dimension


def test_permutation_and_scaling_invariance(two_level):
    gens = _demo_generators(two_level)
    perm_rng = np.random.default_rng(7)
    for _ in range(5):
        order = perm_rng.permutation(len(gens))
        for scale in (0.1, -3.0, 250.0):
            gs = [gens[i] for i in order]
            gs[0] = scale * gs[0]
            assert closure(gs).dimension == 143


def test_deterministic_bitwise(two_level):
    gens = _demo_generators(two_level)
    a = closure(gens)
    b = closure(gens)
    c = closure(gens, ClosureConfig(workers=4))
    for other in (b, c):
        assert other.dimension == a.dimension
        assert all(np.array_equal(x.matrix, y.matrix) for x, y in zip(a.vectors, other.vectors))


def test_non_deterministic_mode_same_dimension(two_level):
    gens = _demo_generators(two_level)
    assert closure(gens, ClosureConfig(workers=3, deterministic=False)).dimension == 143
