"""Exact identity suites over finite truncations of an action.

Every suite returns a Report listing each checked instance with both sides
of the identity; a suite passes iff every instance holds with equality.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable

from ..actions import FULL_UNITARY, SYM_TORUS, TORUS, ActionSpec, dim_irrep
from ..coefficients import genbin
from ..markov import (
    Direction,
    UniPoly,
    birth_transitions,
    death_transitions,
    exit_rate,
    projected_prob_1d,
    transition_poly,
    transition_prob,
)
from ..partitions import contains, format_rational, gbinom

__all__ = ["Report", "check_identity", "SUITES", "ORACLE_ONLY", "CK_X", "CK_Y"]

CK_X = Fraction(2, 3)
CK_Y = Fraction(3, 5)


def _fmt(v) -> str | list:
    if isinstance(v, UniPoly):
        return v.to_list()
    if isinstance(v, dict):
        return {",".join(map(str, k)): _fmt(x) for k, x in sorted(v.items())}
    return format_rational(v)


def _key(*parts) -> str:
    out = []
    for p in parts:
        out.append("(" + ",".join(map(str, p)) + ")" if isinstance(p, tuple) else str(p))
    return " ".join(out)


@dataclass
class Report:
    suite: str
    action: str
    max_weight: int
    instances: list[dict] = field(default_factory=list)

    def add(self, key: str, lhs, rhs) -> None:
        self.instances.append({"key": key, "pass": lhs == rhs, "lhs": _fmt(lhs), "rhs": _fmt(rhs)})

    def extend(self, other: "Report") -> None:
        for inst in other.instances:
            self.instances.append(dict(inst, key=f"{other.suite}: {inst['key']}"))

    @property
    def passed(self) -> bool:
        return all(i["pass"] for i in self.instances)

    @property
    def failures(self) -> list[dict]:
        return [i for i in self.instances if not i["pass"]]

    def to_json(self) -> str:
        return json.dumps(
            {
                "suite": self.suite,
                "action": self.action,
                "max_weight": self.max_weight,
                "instances": sorted(self.instances, key=lambda i: i["key"]),
                "pass": self.passed,
            }
        )

    def to_text(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        lines = [
            f"{self.suite} on {self.action} up to weight {self.max_weight}: "
            f"{status} ({len(self.instances) - len(self.failures)}/{len(self.instances)})"
        ]
        for inst in self.failures[:20]:
            lines.append(f"  FAIL {inst['key']}: lhs={inst['lhs']} rhs={inst['rhs']}")
        return "\n".join(lines)


class _Tables:
    """Per-run lookups: states by grade, dimensions, coefficients."""

    def __init__(self, action: ActionSpec, max_weight: int):
        self.action = action
        self.grades = [action.states(w) for w in range(max_weight + 1)]
        self.states = [s for g in self.grades for s in g]
        self.dim = {s: Fraction(dim_irrep(action, s)) for s in self.states}
        self._gb: dict = {}

    def gb(self, lam, mu) -> Fraction:
        key = (lam, mu)
        v = self._gb.get(key)
        if v is None:
            v = self._gb[key] = genbin(self.action, lam, mu)
        return v


def _sums_of_rates(tab: _Tables, report: Report) -> None:
    n = tab.action.n
    top = len(tab.grades) - 1
    for w, grade in enumerate(tab.grades):
        for beta in grade:
            if w < top:
                up = sum(
                    (tab.dim[a] / tab.dim[beta] * tab.gb(a, beta) for a in tab.grades[w + 1]),
                    Fraction(0),
                )
                report.add(_key("up", beta), up, Fraction(n + w))
            down = sum((tab.gb(beta, a) for a in tab.grades[w - 1]), Fraction(0)) if w else Fraction(0)
            report.add(_key("down", beta), down, Fraction(w))


def _grade_sum(tab: _Tables, report: Report) -> None:
    for w, grade in enumerate(tab.grades):
        for alpha in grade:
            for m in range(w + 1):
                lhs = sum((tab.gb(alpha, b) for b in tab.grades[m]), Fraction(0))
                report.add(_key(alpha, m), lhs, Fraction(comb(w, m)))


def _composition(tab: _Tables, report: Report) -> None:
    for wb, gb_ in enumerate(tab.grades):
        for beta in gb_:
            for wa in range(wb + 1):
                for alpha in tab.grades[wa]:
                    rhs_base = tab.gb(beta, alpha)
                    for l in range(wa, wb + 1):
                        lhs = sum(
                            (tab.gb(beta, lam) * tab.gb(lam, alpha) for lam in tab.grades[l]),
                            Fraction(0),
                        )
                        report.add(_key(beta, alpha, l), lhs, comb(wb - wa, wb - l) * rhs_base)


def _dimension_sum(tab: _Tables, report: Report) -> None:
    n = tab.action.n
    for k, grade in enumerate(tab.grades):
        for wb in range(k + 1):
            for beta in tab.grades[wb]:
                lhs = sum((tab.dim[a] * tab.gb(a, beta) for a in grade), Fraction(0))
                rhs = tab.dim[beta] * Fraction(gbinom(k + n - 1, k - wb))
                report.add(_key(k, beta), lhs, rhs)


def _scaling(tab: _Tables, report: Report) -> None:
    # coefficient form of q_alpha(sqrt(c) z) = sum_beta [alpha;beta] c^|beta| (1-c)^(|alpha|-|beta|) q_beta(z)
    for wa, grade in enumerate(tab.grades):
        for alpha in grade:
            for wg in range(wa + 1):
                for gamma in tab.grades[wg]:
                    lhs = UniPoly.monomial(wg, tab.gb(alpha, gamma))
                    rhs = UniPoly()
                    for wb in range(wg, wa + 1):
                        c = sum((tab.gb(alpha, b) * tab.gb(b, gamma) for b in tab.grades[wb]), Fraction(0))
                        if c:
                            rhs = rhs + UniPoly.one_minus_x_pow(wa - wb) * UniPoly.monomial(wb, c)
                    report.add(_key(alpha, gamma), lhs, rhs)


def _nonnegativity(tab: _Tables, report: Report) -> None:
    partitions = tab.action.kind != TORUS
    for w, grade in enumerate(tab.grades):
        for lam in grade:
            for v in range(w + 1):
                for mu in tab.grades[v]:
                    c = tab.gb(lam, mu)
                    if v == w:
                        report.add(_key("diag", lam, mu), c, Fraction(int(lam == mu)))
                    elif c < 0:
                        report.add(_key("sign", lam, mu), c, Fraction(0))
                    if partitions and not contains(mu, lam):
                        report.add(_key("vanish", lam, mu), c, Fraction(0))
                    if tab.action.kind == TORUS and any(b > a for a, b in zip(lam, mu)):
                        report.add(_key("vanish", lam, mu), c, Fraction(0))


def _need_integral_n(action: ActionSpec) -> None:
    if Fraction(action.n).denominator != 1:
        raise ValueError(f"suite needs an integral ambient dimension, {action} has n={action.n}")


def _prob_matrix(tab: _Tables, direction: Direction, x: Fraction) -> dict:
    out = {}
    for a in tab.states:
        row = {}
        for b in tab.states:
            p = transition_prob(tab.action, direction, a, b, x)
            if p:
                row[b] = p
        out[a] = row
    return out


def _chapman_kolmogorov(tab: _Tables, report: Report) -> None:
    _need_integral_n(tab.action)
    for direction in Direction:
        px = _prob_matrix(tab, direction, CK_X)
        py = _prob_matrix(tab, direction, CK_Y)
        for a in tab.states:
            for b in tab.states:
                lhs = transition_prob(tab.action, direction, a, b, CK_X * CK_Y)
                # intermediate states lie between a and b in weight, all inside the truncation
                rhs = sum((p * py[l].get(b, 0) for l, p in px[a].items()), Fraction(0))
                report.add(_key(direction.value, a, b), lhs, rhs)


def _kolmogorov(tab: _Tables, report: Report) -> None:
    _need_integral_n(tab.action)
    action = tab.action
    for direction in Direction:
        poly = {}

        def P(a, b):
            key = (a, b)
            if key not in poly:
                poly[key] = transition_poly(action, direction, a, b)
            return poly[key]

        def out_rates(s):
            return birth_transitions(action, s) if direction is Direction.BIRTH else death_transitions(action, s)

        into: dict[tuple, list] = {s: [] for s in tab.states}
        for s in tab.states:
            for t_, rate in out_rates(s):
                if t_ in into:
                    into[t_].append((s, rate))
        for a in tab.states:
            diag_a = -exit_rate(action, direction, a)
            for b in tab.states:
                deriv = P(a, b).time_derivative()
                diag_b = -exit_rate(action, direction, b)
                forward = P(a, b) * diag_b
                for s, rate in into[b]:
                    forward = forward + P(a, s) * rate
                backward = P(a, b) * diag_a
                for s, rate in out_rates(a):
                    backward = backward + P(s, b) * rate
                report.add(_key(direction.value, "forward", a, b), deriv, forward)
                report.add(_key(direction.value, "backward", a, b), deriv, backward)
                # generator at t = 0: d/dt at x = 1
                q = diag_a if a == b else dict(out_rates(a)).get(b, Fraction(0))
                report.add(_key(direction.value, "rate", a, b), deriv(Fraction(1)), q)


def _projection(tab: _Tables, report: Report) -> None:
    n = tab.action.n
    for direction in Direction:
        for a in tab.states:
            wa = sum(a)
            for k, grade in enumerate(tab.grades):
                lhs = sum((transition_prob(tab.action, direction, a, b, CK_X) for b in grade), Fraction(0))
                rhs = projected_prob_1d(n, wa, k, CK_X, direction)
                report.add(_key(direction.value, a, k), lhs, rhs)


def _gamma_power(tab: _Tables, report: Report) -> None:
    from .fock import dimension_weighted_sum, gamma_power, p_basis

    top = len(tab.grades) - 1
    p = p_basis(tab.action, top)
    for m in range(top + 1):
        lhs = dimension_weighted_sum(tab.action, p, m)
        rhs = gamma_power(tab.action.n, m).scale(Fraction(1, _factorial(m)))
        _add_poly(report, _key(m), lhs, rhs)


def _laguerre(tab: _Tables, report: Report) -> None:
    from .fock import dimension_weighted_sum, laguerre_poly, q_basis

    top = len(tab.grades) - 1
    q = q_basis(tab.action, top)
    for k in range(top + 1):
        lhs = dimension_weighted_sum(tab.action, q, k)
        _add_poly(report, _key(k), lhs, laguerre_poly(tab.action.n, k))


def _add_poly(report: Report, key: str, lhs, rhs) -> None:
    report.instances.append(
        {
            "key": key,
            "pass": lhs == rhs,
            "lhs": {",".join(map(str, k)): format_rational(v) for k, v in sorted(lhs.items())},
            "rhs": {",".join(map(str, k)): format_rational(v) for k, v in sorted(rhs.items())},
        }
    )


def _factorial(m: int) -> int:
    from math import factorial

    return factorial(m)


SUITES: dict[str, Callable[[_Tables, Report], None]] = {
    "nonnegativity": _nonnegativity,
    "sums_of_rates": _sums_of_rates,
    "grade_sum": _grade_sum,
    "composition": _composition,
    "dimension_sum": _dimension_sum,
    "scaling": _scaling,
    "projection": _projection,
    "chapman_kolmogorov": _chapman_kolmogorov,
    "kolmogorov": _kolmogorov,
    "gamma_power": _gamma_power,
    "laguerre": _laguerre,
}

ORACLE_ONLY = {"gamma_power", "laguerre"}


def _is_oracle_action(action: ActionSpec) -> bool:
    from .fock import MAX_ORACLE_N

    return action.kind in (FULL_UNITARY, TORUS, SYM_TORUS) and action.n <= MAX_ORACLE_N


def check_identity(suite: str, action: ActionSpec, max_weight: int) -> Report:
    """Run one suite (or ``"all"``) exhaustively up to `max_weight`."""
    if max_weight < 0:
        raise ValueError("max_weight must be non-negative")
    tab = _Tables(action, max_weight)
    if suite == "all":
        report = Report("all", str(action), max_weight)
        for name in SUITES:
            if name in ORACLE_ONLY and not _is_oracle_action(action):
                continue
            if name in ("chapman_kolmogorov", "kolmogorov") and Fraction(action.n).denominator != 1:
                continue
            sub = Report(name, str(action), max_weight)
            SUITES[name](tab, sub)
            report.extend(sub)
        return report
    if suite not in SUITES:
        raise KeyError(f"unknown suite {suite!r}; choose from {sorted(SUITES)} or 'all'")
    if suite in ORACLE_ONLY and not _is_oracle_action(action):
        raise ValueError(f"suite {suite!r} needs a Fock-oracle action (un/torus/symtorus, n <= 3)")
    report = Report(suite, str(action), max_weight)
    SUITES[suite](tab, report)
    return report
