"""Supported multiplicity-free actions and the dimensions of their irreducibles."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Sequence

from .partitions import (
    as_partition,
    compositions,
    covers_down,
    covers_up,
    enumerate_partitions,
    frequency,
    is_partition,
    rising,
)

__all__ = [
    "ActionSpec",
    "FULL_UNITARY",
    "TORUS",
    "SYM_TORUS",
    "JACK",
    "parse_action",
    "dim_irrep",
    "un",
    "torus",
    "symtorus",
    "jack",
    "symc",
    "matc",
    "skewc",
    "sphere",
    "PRESETS",
]

FULL_UNITARY = "FullUnitary"
TORUS = "Torus"
SYM_TORUS = "SymTorus"
JACK = "Jack"


@dataclass(frozen=True)
class ActionSpec:
    """A multiplicity-free action, fully resolved.

    For Jack actions `n` is the ambient dimension ``r + theta*r*(r-1)`` (it
    need not be an integer when theta is not one of the geometric values),
    and `label` keeps the preset the spec came from, if any.
    """

    kind: str
    n: int | Fraction
    r: int
    theta: Fraction | None = None
    label: str = field(default="", compare=False)

    @property
    def peirce(self) -> Fraction | None:
        return None if self.theta is None else 2 * self.theta

    @property
    def partition_indexed(self) -> bool:
        return self.kind != TORUS

    def __str__(self) -> str:
        if self.label:
            return self.label
        if self.kind == JACK:
            return f"jack:r={self.r},theta={self.theta.numerator}/{self.theta.denominator},n={self.n}"
        prefix = {FULL_UNITARY: "un", TORUS: "torus", SYM_TORUS: "symtorus"}[self.kind]
        return f"{prefix}:n={self.n}"

    # -- state space -----------------------------------------------------

    def normalize(self, state: Sequence[int] | int) -> tuple[int, ...]:
        """Canonical state index; raises ValueError if invalid for this action."""
        if self.kind == TORUS:
            if isinstance(state, int):
                raise ValueError("torus states are lattice points of length n")
            pt = tuple(int(v) for v in state)
            if len(pt) != self.n or any(v < 0 for v in pt):
                raise ValueError(f"invalid torus state {pt!r} for n={self.n}")
            return pt
        if not isinstance(state, int):
            state = tuple(int(v) for v in state)
            if not is_partition(state):
                raise ValueError(f"not a partition: {state!r}")
        lam = as_partition(state)
        if len(lam) > self.r:
            raise ValueError(f"partition {lam} has more than {self.r} rows")
        return lam

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.n if self.kind == TORUS else ()

    def states(self, w: int) -> list[tuple[int, ...]]:
        """States of weight `w` in decreasing lex order."""
        if self.kind == TORUS:
            return compositions(w, self.n)
        return enumerate_partitions(w, self.r)

    def states_upto(self, max_weight: int) -> list[tuple[int, ...]]:
        out = []
        for w in range(max_weight + 1):
            out.extend(self.states(w))
        return out

    def up(self, state: tuple[int, ...]) -> list[tuple[int, ...]]:
        """States one box above `state` (the support of a birth jump)."""
        if self.kind == TORUS:
            out = []
            for i in range(self.n):
                pt = list(state)
                pt[i] += 1
                out.append(tuple(pt))
            return out
        return covers_up(state, self.r)

    def down(self, state: tuple[int, ...]) -> list[tuple[int, ...]]:
        """States one box below `state` (the support of a death jump)."""
        if self.kind == TORUS:
            out = []
            for i in range(self.n):
                if state[i] > 0:
                    pt = list(state)
                    pt[i] -= 1
                    out.append(tuple(pt))
            return out
        return covers_down(state)


def un(n: int) -> ActionSpec:
    if n < 1:
        raise ValueError("n must be positive")
    return ActionSpec(FULL_UNITARY, n, 1)


def torus(n: int) -> ActionSpec:
    if n < 1:
        raise ValueError("n must be positive")
    return ActionSpec(TORUS, n, n)


def symtorus(n: int) -> ActionSpec:
    if n < 1:
        raise ValueError("n must be positive")
    return ActionSpec(SYM_TORUS, n, n)


def jack(r: int, theta, n=None, label: str = "") -> ActionSpec:
    """Jack-type action of rank `r`; `n` defaults to ``r + theta*r*(r-1)``."""
    theta = Fraction(theta)
    if r < 1:
        raise ValueError("rank r must be positive")
    if theta <= 0:
        raise ValueError(f"theta must be positive, got {theta}")
    ambient = r + theta * r * (r - 1)
    if n is not None and Fraction(n) != ambient:
        raise ValueError(
            f"n={n} is inconsistent with r={r}, theta={theta} (expected {ambient})"
        )
    if ambient.denominator == 1:
        ambient = int(ambient)
    return ActionSpec(JACK, ambient, r, theta, label)


def symc(m: int) -> ActionSpec:
    """U(m) on complex symmetric m x m matrices."""
    return jack(m, Fraction(1, 2), label=f"symc:m={m}")


def matc(m: int) -> ActionSpec:
    """U(m) x U(m) on m x m complex matrices."""
    return jack(m, 1, label=f"matc:m={m}")


def skewc(m: int) -> ActionSpec:
    """U(2m) on complex skew-symmetric 2m x 2m matrices."""
    return jack(m, 2, label=f"skewc:m={m}")


def sphere(n: int) -> ActionSpec:
    """SO(n) x T on C^n; rank two."""
    if n < 3:
        raise ValueError(f"sphere action needs n >= 3, got n={n}")
    return jack(2, Fraction(n - 2, 2), n, label=f"sphere:n={n}")


PRESETS = {
    "un": un,
    "torus": torus,
    "symtorus": symtorus,
    "symc": symc,
    "matc": matc,
    "skewc": skewc,
    "sphere": sphere,
}

_GRAMMAR = re.compile(r"^\s*([a-z]+)\s*:\s*(.+?)\s*$")
_REQUIRED = {
    "un": {"n"},
    "torus": {"n"},
    "symtorus": {"n"},
    "symc": {"m"},
    "matc": {"m"},
    "skewc": {"m"},
    "sphere": {"n"},
}


def parse_action(spec: str) -> ActionSpec:
    """Parse ``kind:key=value,...`` into an ActionSpec.

    >>> parse_action("symc:m=2").theta
    Fraction(1, 2)
    """
    m = _GRAMMAR.match(spec)
    if not m:
        raise ValueError(f"malformed action spec {spec!r}")
    kind, body = m.groups()
    params: dict[str, str] = {}
    for item in body.split(","):
        key, sep, value = item.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key or not value:
            raise ValueError(f"malformed parameter {item!r} in {spec!r}")
        if key in params:
            raise ValueError(f"duplicate parameter {key!r}")
        params[key] = value

    if kind == "jack":
        allowed = {"r", "theta", "n"}
        if not {"r", "theta"} <= params.keys() or not params.keys() <= allowed:
            raise ValueError("jack needs r and theta (and optionally n)")
        try:
            r = int(params["r"])
            theta = Fraction(params["theta"])
            n = Fraction(params["n"]) if "n" in params else None
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad jack parameter in {spec!r}: {exc}") from None
        return jack(r, theta, n)

    if kind not in PRESETS:
        raise ValueError(f"unknown action kind {kind!r}")
    if params.keys() != _REQUIRED[kind]:
        raise ValueError(f"{kind} takes parameters {sorted(_REQUIRED[kind])}")
    (key,) = _REQUIRED[kind]
    try:
        value = int(params[key])
    except ValueError:
        raise ValueError(f"{key} must be an integer in {spec!r}") from None
    if value < 1:
        raise ValueError(f"{key} must be positive in {spec!r}")
    return PRESETS[kind](value)


def _geometric(action: ActionSpec) -> bool:
    # parameter sets realized by an honest group action, where d_lambda is a dimension
    if action.kind != JACK:
        return True
    theta = action.theta
    if action.r == 1 or theta in (Fraction(1, 2), Fraction(1), Fraction(2)):
        return True
    return action.r == 2 and (2 * theta).denominator == 1


@lru_cache(maxsize=None)
def _upmeier(r: int, theta: Fraction, lam: tuple[int, ...]) -> Fraction:
    # Beta-function ratios with integer first argument a = lam_p - lam_q collapse to
    # rising factorials: B(a, b1)/B(a, b2) = (b2)_a / (b1)_a.
    parts = lam + (0,) * (r - len(lam))
    out = Fraction(1)
    for p in range(r):
        for q in range(p + 1, r):
            a = parts[p] - parts[q]
            gap = q - p
            out *= (a + theta * gap) / (theta * gap)
            out *= rising(theta * (gap + 1), a) / rising(theta * (gap - 1) + 1, a)
    return out


def dim_irrep(action: ActionSpec, lam: Sequence[int] | int) -> int | Fraction:
    """Dimension ``d_lambda`` of the irreducible subspace indexed by `lam`.

    Jack actions with non-geometric theta give a formal (rational)
    dimension; geometric ones must come out integral.
    """
    lam = action.normalize(lam)
    if action.kind == FULL_UNITARY:
        m = lam[0] if lam else 0
        return comb(m + action.n - 1, action.n - 1)
    if action.kind == TORUS:
        return 1
    if action.kind == SYM_TORUS:
        denom = 1
        for c in frequency(lam, action.n).values():
            denom *= factorial(c)
        return factorial(action.n) // denom
    value = _upmeier(action.r, action.theta, lam)
    if value.denominator == 1:
        return int(value)
    if _geometric(action):
        raise ArithmeticError(f"non-integral dimension {value} for {action} at {lam}")
    return value
