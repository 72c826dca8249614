import json
from fractions import Fraction
from math import comb

import pytest
import sympy

from mfchains import actions as A
from mfchains.coefficients import genbin, genbin_table
from mfchains.oracles import fock, identities, jack
from mfchains.partitions import enumerate_partitions

F = Fraction


# -- Fock oracle -----------------------------------------------------------------


def test_fock_moment():
    assert fock.fock_moment((2, 1)) == 2
    assert fock.fock_moment((0, 0, 0)) == 1
    assert fock.fock_moment((3,)) == 6


def test_pascal_rows_and_laguerre():
    table = fock.gram_schmidt_genbin(A.un(1), 3)
    assert table == genbin_table(A.un(1), 3)
    q = fock.q_basis(A.un(1), 3)
    for m in range(4):
        assert q[(m,) if m else ()] == fock.laguerre_poly(1, m)


def test_torus_products_of_binomials():
    table = fock.gram_schmidt_genbin(A.torus(2), 3)
    for (lam, mu), v in table.entries.items():
        assert v == comb(lam[0], mu[0]) * comb(lam[1], mu[1])


@pytest.mark.parametrize("spec", ["un:n=1", "un:n=2", "un:n=3", "torus:n=1", "torus:n=2",
                                  "torus:n=3", "symtorus:n=2", "symtorus:n=3"])
def test_gram_schmidt_equals_engine(spec):
    action = A.parse_action(spec)
    assert fock.gram_schmidt_genbin(action, 4) == genbin_table(action, 4)


def test_gram_schmidt_is_independent_of_within_grade_order():
    action = A.symtorus(2)
    forward = fock.gram_schmidt_genbin(action, 3)
    backward = fock.gram_schmidt_genbin(action, 3, within_grade=lambda g: list(reversed(g)))
    assert forward == backward
    assert fock.q_basis(action, 3) == fock.q_basis(action, 3, within_grade=lambda g: g[::-1])


def test_fock_orthogonality():
    q = fock.q_basis(A.torus(2), 3)
    keys = list(q)
    for i, a in enumerate(keys):
        assert q[a].constant() == 1
        for b in keys[:i]:
            assert fock.fock_inner(q[a], q[b]) == 0


def test_oracle_limits():
    with pytest.raises(ValueError):
        fock.gram_schmidt_genbin(A.symc(2), 2)
    with pytest.raises(Exception):
        fock.gram_schmidt_genbin(A.un(4), 2)


# -- Jack oracle -----------------------------------------------------------------


def test_jack_examples():
    for theta in [F(1, 2), 1, 2]:
        assert jack.jack_polynomial((1,), theta, 3) == jack.SymPoly(3, {(1,): 1})
        assert jack.jack_polynomial((2,), theta, 2) == jack.SymPoly(
            2, {(2,): 1, (1, 1): F(2) * theta / (theta + 1)}
        )
    assert jack.jack_polynomial((2, 1), 1, 2) == jack.SymPoly(2, {(2, 1): 1})


def _schur(lam, r):
    xs = sympy.symbols(f"x1:{r + 1}")
    lam = tuple(lam) + (0,) * (r - len(lam))
    num = sympy.Matrix(r, r, lambda i, j: xs[i] ** (lam[j] + r - 1 - j)).det()
    den = sympy.Matrix(r, r, lambda i, j: xs[i] ** (r - 1 - j)).det()
    return sympy.Poly(sympy.cancel(num / den), *xs), xs


@pytest.mark.parametrize("r", [1, 2, 3])
def test_theta_one_is_schur(r):
    for w in range(5):
        for lam in enumerate_partitions(w, r):
            schur, xs = _schur(lam, r)
            expanded = jack.expand(jack.jack_polynomial(lam, 1, r))
            ours = sympy.Poly(
                sum((sympy.Rational(c.numerator, c.denominator) * sympy.prod(
                    x**e for x, e in zip(xs, k))) for k, c in expanded.items()),
                *xs,
            )
            assert ours == schur


def test_lassalle_examples():
    for theta in [F(1, 2), 1, 3]:
        assert jack.lassalle_oracle((1,), (), theta, 2) == 1
    assert jack.lassalle_oracle((2, 1), (1, 1), 1, 2) == F(3, 2)
    assert jack.lassalle_oracle((2, 1), (1,), 1, 2) == 3
    with pytest.raises(ValueError):
        jack.lassalle_oracle((2,), (1, 1), 1, 2)


@pytest.mark.parametrize("theta", [F(1, 2), F(1), F(3, 2), F(2), F(1, 3)])
def test_lassalle_equals_engine(theta):
    for r in (1, 2, 3):
        action = A.jack(r, theta)
        for lam in action.states_upto(4):
            for mu in action.states_upto(sum(lam)):
                if all(m <= l for m, l in zip(mu, lam + (0,) * 3)):
                    assert jack.lassalle_oracle(lam, mu, theta, r) == genbin(action, lam, mu)


# -- identity suites ---------------------------------------------------------------


def test_suite_examples():
    assert identities.check_identity("composition", A.un(4), 5).passed
    assert identities.check_identity("sums_of_rates", A.sphere(5), 6).passed
    assert identities.check_identity("gamma_power", A.torus(2), 4).passed


def test_all_suites_on_presets(preset):
    report = identities.check_identity("all", preset, 4)
    assert report.passed, report.failures[:3]


def test_report_format():
    report = identities.check_identity("scaling", A.symc(2), 3)
    data = json.loads(report.to_json())
    assert set(data) == {"suite", "action", "max_weight", "instances", "pass"}
    assert data["pass"] is True
    keys = [i["key"] for i in data["instances"]]
    assert keys == sorted(keys)
    assert set(data["instances"][0]) == {"key", "pass", "lhs", "rhs"}
    assert "PASS" in report.to_text()


def test_report_records_failures():
    report = identities.Report("demo", "un:n=1", 0)
    report.add("a", F(1), F(1))
    report.add("b", F(1), F(2))
    assert not report.passed
    assert [f["key"] for f in report.failures] == ["b"]


def test_unknown_suite_and_oracle_only_suite():
    with pytest.raises(KeyError):
        identities.check_identity("nope", A.un(1), 2)
    with pytest.raises(ValueError):
        identities.check_identity("gamma_power", A.symc(2), 2)
