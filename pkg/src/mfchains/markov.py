"""Rate generators and closed-form transition semigroups of the birth/death chains.

The time variable of record is ``x = exp(-t)`` in ``(0, 1]``.  Exact entry
points take rational `x`; float entry points convert `t` once and delegate.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy import sparse

from .actions import ActionSpec, dim_irrep, parse_action
from .coefficients import genbin, state_cap, ResourceLimitError
from .partitions import decode_state, encode_state, format_rational, gbinom, parse_rational

__all__ = [
    "Direction",
    "UniPoly",
    "Generator",
    "birth_transitions",
    "death_transitions",
    "transitions",
    "generator",
    "transition_prob",
    "transition_poly",
    "transition_prob_t",
    "projected_prob_1d",
    "uniformized_row",
    "exact_row",
    "TruncationError",
]


class Direction(str, Enum):
    BIRTH = "birth"
    DEATH = "death"

    @classmethod
    def parse(cls, value) -> "Direction":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"direction must be 'birth' or 'death', got {value!r}") from None


class TruncationError(RuntimeError):
    """The Poisson series did not reach the requested tail mass."""


class UniPoly:
    """Polynomial in ``x`` with exact rational coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        c = [Fraction(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> "UniPoly":
        return cls([0] * degree + [coeff])

    @classmethod
    def one_minus_x_pow(cls, k: int) -> "UniPoly":
        return cls([(-1) ** j * math.comb(k, j) for j in range(k + 1)])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + (c if not isinstance(acc, float) else float(c))
        return acc

    def __add__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return UniPoly([v + (b[i] if i < len(b) else 0) for i, v in enumerate(a)])

    def __neg__(self) -> "UniPoly":
        return UniPoly([-v for v in self.coeffs])

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            return UniPoly([v * other for v in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def compose_scale(self, y) -> "UniPoly":
        """p(y*x)."""
        return UniPoly([c * Fraction(y) ** k for k, c in enumerate(self.coeffs)])

    def derivative(self) -> "UniPoly":
        return UniPoly([k * c for k, c in enumerate(self.coeffs)][1:])

    def time_derivative(self) -> "UniPoly":
        """d/dt with x = exp(-t), i.e. ``-x d/dx``."""
        return UniPoly([-k * c for k, c in enumerate(self.coeffs)])

    def to_list(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    def __repr__(self) -> str:
        return f"UniPoly({[str(c) for c in self.coeffs]})"


# -- rates --------------------------------------------------------------------


def birth_transitions(action: ActionSpec, alpha) -> list[tuple[tuple, Fraction]]:
    """One-box-up targets with rates ``(d_beta/d_alpha) [beta; alpha]``."""
    alpha = action.normalize(alpha)
    return list(_birth(action, alpha))


@lru_cache(maxsize=None)
def _birth(action: ActionSpec, alpha: tuple) -> list[tuple[tuple, Fraction]]:
    d_alpha = Fraction(dim_irrep(action, alpha))
    out = []
    for beta in action.up(alpha):
        rate = Fraction(dim_irrep(action, beta)) / d_alpha * genbin(action, beta, alpha)
        if rate < 0:
            raise ArithmeticError(f"negative birth rate {alpha}->{beta} for {action}")
        if rate:
            out.append((beta, rate))
    return out


def death_transitions(action: ActionSpec, alpha) -> list[tuple[tuple, Fraction]]:
    """One-box-down targets with rates ``[alpha; beta]``; empty at the zero state."""
    alpha = action.normalize(alpha)
    return list(_death(action, alpha))


@lru_cache(maxsize=None)
def _death(action: ActionSpec, alpha: tuple) -> list[tuple[tuple, Fraction]]:
    out = []
    for beta in action.down(alpha):
        rate = genbin(action, alpha, beta)
        if rate < 0:
            raise ArithmeticError(f"negative death rate {alpha}->{beta} for {action}")
        if rate:
            out.append((beta, rate))
    return out


def transitions(action: ActionSpec, direction, alpha) -> list[tuple[tuple, Fraction]]:
    if Direction.parse(direction) is Direction.BIRTH:
        return birth_transitions(action, alpha)
    return death_transitions(action, alpha)


def exit_rate(action: ActionSpec, direction, alpha) -> Fraction:
    """Total jump rate out of `alpha` (minus the generator diagonal)."""
    w = sum(alpha)
    return Fraction(action.n + w) if Direction.parse(direction) is Direction.BIRTH else Fraction(w)


@dataclass
class Generator:
    """Sparse generator on the states of weight at most `max_weight`.

    Birth rows of top weight keep their true diagonal but lose their
    outgoing rates; they are listed in `boundary`.
    """

    action: ActionSpec
    direction: Direction
    max_weight: int
    states: list[tuple]
    rows: list[dict[int, Fraction]]
    diagonal: list[Fraction]
    boundary: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        self.index = {s: i for i, s in enumerate(self.states)}

    def __len__(self) -> int:
        return len(self.states)

    def entry(self, alpha, beta) -> Fraction:
        i, j = self.index[alpha], self.index[beta]
        if i == j:
            return self.diagonal[i]
        return self.rows[i].get(j, Fraction(0))

    def row_sum(self, i: int) -> Fraction:
        return self.diagonal[i] + sum(self.rows[i].values(), Fraction(0))

    def to_dense(self) -> list[list[Fraction]]:
        m = len(self.states)
        out = [[Fraction(0)] * m for _ in range(m)]
        for i in range(m):
            out[i][i] = self.diagonal[i]
            for j, v in self.rows[i].items():
                out[i][j] = v
        return out

    def to_scipy(self) -> sparse.csr_matrix:
        m = len(self.states)
        rr, cc, vv = [], [], []
        for i in range(m):
            rr.append(i)
            cc.append(i)
            vv.append(float(self.diagonal[i]))
            for j, v in self.rows[i].items():
                rr.append(i)
                cc.append(j)
                vv.append(float(v))
        return sparse.csr_matrix((vv, (rr, cc)), shape=(m, m))

    def entries(self):
        for i, s in enumerate(self.states):
            yield s, s, self.diagonal[i]
            for j, v in sorted(self.rows[i].items()):
                yield s, self.states[j], v

    def to_json(self) -> str:
        return json.dumps(
            {
                "action": str(self.action),
                "direction": self.direction.value,
                "max_weight": self.max_weight,
                "states": [encode_state(s) for s in self.states],
                "entries": [
                    {"from": encode_state(a), "to": encode_state(b), "rate": format_rational(v)}
                    for a, b, v in self.entries()
                ],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "Generator":
        data = json.loads(text)
        action = parse_action(data["action"])
        direction = Direction.parse(data["direction"])
        max_weight = int(data["max_weight"])
        states = [decode_state(s) for s in data["states"]]
        index = {s: i for i, s in enumerate(states)}
        rows: list[dict[int, Fraction]] = [{} for _ in states]
        diagonal = [Fraction(0)] * len(states)
        for e in data["entries"]:
            i, j = index[decode_state(e["from"])], index[decode_state(e["to"])]
            v = parse_rational(e["rate"])
            if i == j:
                diagonal[i] = v
            else:
                rows[i][j] = v
        boundary = frozenset(
            s for s in states if direction is Direction.BIRTH and sum(s) == max_weight
        )
        return cls(action, direction, max_weight, states, rows, diagonal, boundary)

    def to_csv(self) -> str:
        lines = ["from;to;rate"]
        for a, b, v in self.entries():
            lines.append(f"{','.join(map(str, a))};{','.join(map(str, b))};{format_rational(v)}")
        return "\n".join(lines) + "\n"


def generator(action: ActionSpec, direction, max_weight: int, cap_states: int | None = None) -> Generator:
    """Assemble the truncated generator with graded, decreasing-lex state indexing."""
    direction = Direction.parse(direction)
    if max_weight < 0:
        raise ValueError("max_weight must be non-negative")
    grades = [action.states(w) for w in range(max_weight + 1)]
    count = sum(len(g) for g in grades)
    cap = state_cap(cap_states)
    if count > cap:
        raise ResourceLimitError(f"{count} states exceed the cap of {cap}")
    states = [s for g in grades for s in g]
    index = {s: i for i, s in enumerate(states)}
    rows, diagonal, boundary = [], [], []
    for s in states:
        w = sum(s)
        diagonal.append(-exit_rate(action, direction, s))
        row: dict[int, Fraction] = {}
        if direction is Direction.BIRTH and w == max_weight:
            boundary.append(s)
        else:
            for target, rate in transitions(action, direction, s):
                row[index[target]] = rate
        rows.append(row)
    return Generator(action, direction, max_weight, states, rows, diagonal, frozenset(boundary))


# -- closed-form semigroups --------------------------------------------------------


def _check_x(x) -> Fraction:
    x = Fraction(x)
    if not 0 < x <= 1:
        raise ValueError(f"x = exp(-t) must lie in (0, 1], got {x}")
    return x


def _coefficient(action: ActionSpec, direction: Direction, alpha: tuple, beta: tuple):
    """(constant, power of (1-x), power of x) of a semigroup entry, or None if zero."""
    wa, wb = sum(alpha), sum(beta)
    if direction is Direction.BIRTH:
        if wb < wa:
            return None
        c = genbin(action, beta, alpha)
        if not c:
            return None
        c *= Fraction(dim_irrep(action, beta)) / Fraction(dim_irrep(action, alpha))
        return c, wb - wa, wa + action.n
    if wa < wb:
        return None
    c = genbin(action, alpha, beta)
    if not c:
        return None
    return c, wa - wb, wb


def transition_prob(action: ActionSpec, direction, alpha, beta, x) -> Fraction:
    """Exact ``p_t(alpha, beta)`` at ``x = exp(-t)``."""
    direction = Direction.parse(direction)
    alpha, beta = action.normalize(alpha), action.normalize(beta)
    x = _check_x(x)
    if x == 1:
        return Fraction(int(alpha == beta))
    parts = _coefficient(action, direction, alpha, beta)
    if parts is None:
        return Fraction(0)
    c, k, e = parts
    return c * (1 - x) ** k * x**e


def transition_poly(action: ActionSpec, direction, alpha, beta) -> UniPoly:
    """The same entry kept symbolic in ``x``.

    Only defined for integral n (birth entries carry ``x**(|alpha| + n)``).
    """
    direction = Direction.parse(direction)
    alpha, beta = action.normalize(alpha), action.normalize(beta)
    parts = _coefficient(action, direction, alpha, beta)
    if parts is None:
        return UniPoly()
    c, k, e = parts
    if Fraction(e).denominator != 1:
        raise ValueError(f"x exponent {e} is not an integer; use transition_prob instead")
    return UniPoly.one_minus_x_pow(k) * UniPoly.monomial(int(e), c)


def transition_prob_t(action: ActionSpec, direction, alpha, beta, t: float) -> float:
    """Float entry point: ``p_t`` for a time `t >= 0`."""
    if not math.isfinite(t) or t < 0:
        raise ValueError(f"t must be finite and non-negative, got {t}")
    direction = Direction.parse(direction)
    alpha, beta = action.normalize(alpha), action.normalize(beta)
    if t == 0:
        return float(alpha == beta)
    parts = _coefficient(action, direction, alpha, beta)
    if parts is None:
        return 0.0
    c, k, e = parts
    # (1 - e^{-t}) via expm1 keeps small-t accuracy
    return float(c) * (-math.expm1(-t)) ** k * math.exp(-t * float(e))


def projected_prob_1d(n, k: int, l: int, x, direction) -> Fraction:
    """Transition probability of the weight process ``|X_t|`` from k to l."""
    direction = Direction.parse(direction)
    x = _check_x(x)
    if k < 0 or l < 0:
        raise ValueError("weights must be non-negative")
    if direction is Direction.BIRTH:
        if l < k:
            return Fraction(0)
        # C(l+n-1, k+n-1) = C(l+n-1, l-k); the second form allows rational n
        return Fraction(gbinom(l + n - 1, l - k)) * (1 - x) ** (l - k) * x ** (k + n)
    if k < l:
        return Fraction(0)
    return Fraction(math.comb(k, l)) * x**l * (1 - x) ** (k - l)


def exact_row(action: ActionSpec, direction, alpha, t: float, max_weight: int) -> dict[tuple, float]:
    """Float row of the closed-form semigroup over states up to `max_weight`."""
    direction = Direction.parse(direction)
    alpha = action.normalize(alpha)
    wa = sum(alpha)
    grades = range(wa, max_weight + 1) if direction is Direction.BIRTH else range(0, wa + 1)
    out = {}
    for w in grades:
        for beta in action.states(w):
            p = transition_prob_t(action, direction, alpha, beta, t)
            if p:
                out[beta] = p
    return out


def _poisson_weights(rate_t: float, tail_tol: float, max_terms: int) -> np.ndarray:
    weights = []
    logw = -rate_t
    total = 0.0
    k = 0
    while True:
        w = math.exp(logw)
        weights.append(w)
        total += w
        if total >= 1.0 - tail_tol and k >= rate_t:
            return np.array(weights)
        k += 1
        if k > max_terms:
            raise TruncationError(
                f"Poisson series for rate*t={rate_t} did not reach 1-{tail_tol} in {max_terms} terms"
            )
        logw += math.log(rate_t) - math.log(k)


def uniformized_row(gen: Generator, alpha, t: float, tail_tol: float = 1e-12, max_terms: int = 100_000) -> dict[tuple, float]:
    """Row `alpha` of ``exp(tQ)`` by uniformization, independent of the closed form."""
    if not math.isfinite(t) or t < 0:
        raise ValueError(f"t must be finite and non-negative, got {t}")
    alpha = gen.action.normalize(alpha)
    if alpha not in gen.index:
        raise ValueError(f"state {alpha} is outside the generator")
    i = gen.index[alpha]
    rate = max((float(-d) for d in gen.diagonal), default=0.0)
    v = np.zeros(len(gen))
    v[i] = 1.0
    if t == 0 or rate == 0 or gen.diagonal[i] == 0:
        # absorbing start (or no motion at all)
        return {s: float(p) for s, p in zip(gen.states, v) if p}
    q = gen.to_scipy()
    step = (sparse.identity(len(gen), format="csr") + q / rate).T.tocsr()
    weights = _poisson_weights(rate * t, tail_tol, max_terms)
    acc = weights[0] * v
    for w in weights[1:]:
        v = step @ v
        acc += w * v
    return {s: float(p) for s, p in zip(gen.states, acc) if p != 0.0}
