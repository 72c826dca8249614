from fractions import Fraction
from math import comb, factorial

import pytest

from mfchains import actions as A
from mfchains.partitions import enumerate_partitions


def test_parse_presets():
    assert A.parse_action("un:n=3") == A.un(3)
    s = A.parse_action("symc:m=2")
    assert (s.kind, s.r, s.theta, s.n, s.peirce) == (A.JACK, 2, Fraction(1, 2), 3, 1)
    assert A.parse_action("matc:m=3").n == 9
    assert A.parse_action("skewc:m=2").n == 6
    sp = A.parse_action("sphere:n=5")
    assert (sp.r, sp.theta, sp.n) == (2, Fraction(3, 2), 5)
    assert A.parse_action("jack:r=3,theta=1/2,n=6") == A.symc(3)


@pytest.mark.parametrize(
    "bad",
    ["sphere:n=2", "jack:r=2,theta=0", "jack:r=2,theta=-1", "foo:n=1", "un", "un:n=0",
     "un:n=x", "jack:r=2,theta=1,n=5", "symc:m=2,extra=1"],
)
def test_parse_errors(bad):
    with pytest.raises(ValueError):
        A.parse_action(bad)


def test_spec_string_round_trips(preset):
    assert A.parse_action(str(preset)) == preset


def test_dimension_examples():
    assert A.dim_irrep(A.un(3), (2,)) == 6
    assert A.dim_irrep(A.symtorus(3), (2, 1, 0)) == 6
    assert A.dim_irrep(A.matc(2), (1, 0)) == 4
    assert A.dim_irrep(A.sphere(5), (1,)) == 5


def test_trivial_and_degree_one(preset):
    assert A.dim_irrep(preset, preset.zero()) == 1
    one = preset.states(1)
    assert sum(A.dim_irrep(preset, s) for s in one) == preset.n


def test_dimension_sum_is_homogeneous_polynomial_count(preset):
    n = preset.n
    for m in range(7):
        dims = [A.dim_irrep(preset, s) for s in preset.states(m)]
        assert all(isinstance(d, int) and d > 0 for d in dims)
        assert sum(dims) == comb(m + n - 1, n - 1)


def _hook_content_dim(lam, m):
    """Dimension of the GL_m irreducible with highest weight lam (hook-content formula)."""
    num, den = 1, 1
    conj = [sum(1 for v in lam if v > j) for j in range(lam[0])] if lam else []
    for i, row in enumerate(lam):
        for j in range(row):
            num *= m + j - i
            den *= (row - j - 1) + (conj[j] - i - 1) + 1
    return Fraction(num, den)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_matrix_action_is_squared_weyl_dimension(m):
    action = A.matc(m)
    for w in range(5):
        for lam in enumerate_partitions(w, m):
            assert A.dim_irrep(action, lam) == _hook_content_dim(lam, m) ** 2


def test_symtorus_dimension_is_orbit_size():
    action = A.symtorus(4)
    for lam in action.states_upto(4):
        full = lam + (0,) * (4 - len(lam))
        counts = [full.count(v) for v in set(full)]
        expected = factorial(4)
        for c in counts:
            expected //= factorial(c)
        assert A.dim_irrep(action, lam) == expected


def test_generic_theta_derives_ambient_dimension():
    a = A.jack(3, Fraction(1, 3))
    assert a.n == 3 + Fraction(1, 3) * 6
    # rational, non-geometric: dimension is a rational function value, not forced integral
    assert A.dim_irrep(a, ()) == 1
    assert A.dim_irrep(a, (1,)) == a.n


def test_invalid_states_rejected():
    with pytest.raises(ValueError):
        A.dim_irrep(A.symc(2), (1, 1, 1))
    with pytest.raises(ValueError):
        A.dim_irrep(A.un(3), (1, 1))
    with pytest.raises(ValueError):
        A.torus(2).normalize((1, 2, 3))
