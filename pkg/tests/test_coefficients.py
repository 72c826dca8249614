import os
from fractions import Fraction
from math import comb

import pytest

from mfchains import actions as A
from mfchains.coefficients import (
    CoeffTable,
    ResourceLimitError,
    genbin,
    genbin_one_step_jack,
    genbin_table,
)


def test_examples():
    assert genbin(A.un(5), 5, 2) == 10
    assert genbin(A.torus(2), (2, 1), (1, 1)) == 2
    assert genbin(A.symtorus(2), (1, 1), (1, 0)) == 2
    assert genbin(A.jack(2, 1), (2, 1), (1, 1)) == Fraction(3, 2)


def test_identity_and_zero_rules(preset):
    states = preset.states_upto(4)
    for lam in states:
        assert genbin(preset, lam, lam) == 1
        assert genbin(preset, lam, preset.zero()) == 1
        for mu in states:
            v = genbin(preset, lam, mu)
            assert v >= 0
            if sum(mu) > sum(lam) or (sum(mu) == sum(lam) and mu != lam):
                assert v == 0
            if preset.partition_indexed and preset.kind != A.FULL_UNITARY:
                if any(m > l for m, l in zip(mu, lam + (0,) * len(mu))):
                    assert v == 0


def test_one_step_jack_examples():
    assert genbin_one_step_jack(1, 2, (2, 1), 1) == Fraction(3, 2)
    assert genbin_one_step_jack(1, 2, (2, 1), 2) == Fraction(3, 2)
    for theta in [Fraction(1, 3), Fraction(1, 2), 1, Fraction(7, 2)]:
        assert genbin_one_step_jack(theta, 2, (1,), 1) == 1


def test_one_step_jack_errors():
    with pytest.raises(ValueError):
        genbin_one_step_jack(1, 2, (1, 1), 1)  # (0,1) is not a partition
    with pytest.raises(ValueError):
        genbin_one_step_jack(1, 2, (2, 1), 3)
    with pytest.raises(ValueError):
        genbin_one_step_jack(0, 2, (2, 1), 1)


@pytest.mark.parametrize("theta", [Fraction(1, 3), Fraction(1, 2), Fraction(5, 4), 3])
def test_one_step_sum_rule_for_general_theta(theta):
    for lam in A.jack(3, theta).states_upto(6):
        total = sum(genbin_one_step_jack(theta, 3, lam, i + 1)
                    for i in range(len(lam))
                    if lam[i] - 1 >= (lam[i + 1] if i + 1 < len(lam) else 0))
        assert total == sum(lam)


def test_grade_sum_is_binomial(preset):
    # sum over a grade of [alpha; beta] is the ordinary binomial coefficient
    for alpha in preset.states_upto(6):
        for m in range(sum(alpha) + 1):
            assert sum(genbin(preset, alpha, b) for b in preset.states(m)) == comb(sum(alpha), m)


def test_table_pascal_and_trivial():
    t = genbin_table(A.un(1), 3)
    assert {(l[0] if l else 0, m[0] if m else 0): v for (l, m), v in t.entries.items() if v} == {
        (l, m): comb(l, m) for l in range(4) for m in range(l + 1)
    }
    assert genbin_table(A.sphere(5), 0).entries == {((), ()): 1}


def test_table_order_is_graded_dec_lex():
    t = genbin_table(A.symc(2), 3)
    lams = list(dict.fromkeys(l for l, _ in t.entries))
    assert lams == A.symc(2).states_upto(3)


def test_table_json_and_csv_round_trip(preset):
    t = genbin_table(preset, 3)
    assert CoeffTable.from_json(t.to_json()) == t
    assert CoeffTable.from_csv(t.to_csv(), preset, 3) == t
    assert t.to_csv().splitlines()[0] == "lambda;mu;value"


def test_cap(monkeypatch):
    with pytest.raises(ResourceLimitError):
        genbin_table(A.torus(3), 6, cap_states=10)
    monkeypatch.setenv("MFCHAINS_CAP_STATES", "5")
    with pytest.raises(ResourceLimitError):
        genbin_table(A.un(1), 10)


def test_negative_coefficients_rejected_for_bad_theta():
    # a parameter choice where some one-step value is negative would be refused;
    # every positive theta with a partition index keeps values non-negative
    for theta in [Fraction(1, 10), Fraction(9, 2)]:
        t = genbin_table(A.jack(2, theta), 5)
        assert all(v >= 0 for v in t.entries.values())
