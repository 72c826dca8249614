"""Generalized binomial coefficients ``[lam; mu]`` for the supported actions.

FullUnitary, Torus and SymTorus use closed forms.  Jack actions start from
Lassalle's one-step formula and fill in multi-step values with the
composition identity

    sum_{|nu|=|mu|+1} [lam; nu][nu; mu] = (|lam| - |mu|) [lam; mu],

memoized per (action, lam, mu).
"""
from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence

from .actions import FULL_UNITARY, JACK, SYM_TORUS, TORUS, ActionSpec, parse_action
from .partitions import (
    as_partition,
    contains,
    covers_down,
    decode_state,
    distinct_permutations,
    encode_state,
    format_rational,
    parse_rational,
)

__all__ = [
    "genbin",
    "genbin_one_step_jack",
    "genbin_table",
    "CoeffTable",
    "ResourceLimitError",
    "DEFAULT_CAP_STATES",
    "state_cap",
]

DEFAULT_CAP_STATES = 200_000


class ResourceLimitError(RuntimeError):
    """A state space would exceed the configured cap."""


def state_cap(cap: int | None = None) -> int:
    """Resolve a state-count cap: explicit value, then MFCHAINS_CAP_STATES, then default."""
    if cap is not None:
        return cap
    env = os.environ.get("MFCHAINS_CAP_STATES")
    return int(env) if env else DEFAULT_CAP_STATES


def genbin_one_step_jack(theta, r: int, lam: Sequence[int], i: int) -> Fraction:
    """Lassalle's value of ``[lam; lam - e_i]`` (rows counted from 1)."""
    theta = Fraction(theta)
    if theta <= 0:
        raise ValueError("theta must be positive")
    if not 1 <= i <= r:
        raise ValueError(f"row index {i} out of range 1..{r}")
    lam = as_partition(lam)
    if len(lam) > r:
        raise ValueError(f"partition {lam} has more than {r} rows")
    parts = lam + (0,) * (r - len(lam))
    nxt = parts[i] if i < r else 0
    if parts[i - 1] - 1 < nxt:
        raise ValueError(f"removing a box from row {i} of {lam} is not a partition")
    li = parts[i - 1]
    out = li + theta * (r - i)
    for j in range(1, r + 1):
        if j == i:
            continue
        diff = li - parts[j - 1]
        den = diff + theta * (j - i)
        # lam_i - lam_j = theta*(i - j) is impossible for a partition and theta > 0
        assert den != 0
        out *= (diff + theta * (j - i - 1)) / den
    return Fraction(out)


def _closed_form(action: ActionSpec, lam: tuple, mu: tuple) -> int:
    if action.kind == FULL_UNITARY:
        return comb(lam[0] if lam else 0, mu[0] if mu else 0)
    if action.kind == TORUS:
        out = 1
        for a, b in zip(lam, mu):
            if b > a:
                return 0
            out *= comb(a, b)
        return out
    # SymTorus: summing over S_n counts every distinct arrangement of mu exactly
    # prod_j mu[j]! times, which cancels the prefactor.
    n = action.n
    lam_full = lam + (0,) * (n - len(lam))
    mu_full = mu + (0,) * (n - len(mu))
    total = 0
    for perm in distinct_permutations(mu_full):
        term = 1
        for a, b in zip(lam_full, perm):
            if b > a:
                term = 0
                break
            term *= comb(a, b)
        total += term
    return total


def _row_of_removed_box(lam: tuple, nu: tuple) -> int:
    for i, (a, b) in enumerate(zip(lam, nu + (0,) * (len(lam) - len(nu)))):
        if a != b:
            return i + 1
    raise ValueError("no box removed")


@lru_cache(maxsize=None)
def _jack(action: ActionSpec, lam: tuple, mu: tuple) -> Fraction:
    gap = sum(lam) - sum(mu)
    if gap == 0:
        return Fraction(int(lam == mu))
    if not contains(mu, lam):
        return Fraction(0)
    if gap == 1:
        return genbin_one_step_jack(action.theta, action.r, lam, _row_of_removed_box(lam, mu))
    if not mu:
        return Fraction(1)
    # composition identity at the grade just below lam: for a fixed mu the
    # memoized values [nu; mu] are shared by every lam above them
    total = Fraction(0)
    for nu in covers_down(lam):
        if contains(mu, nu):
            total += _jack(action, lam, nu) * _jack(action, nu, mu)
    return total / gap


def genbin(action: ActionSpec, lam, mu) -> Fraction:
    """Generalized binomial coefficient ``[lam; mu]`` as an exact rational."""
    lam = action.normalize(lam)
    mu = action.normalize(mu)
    if sum(mu) > sum(lam):
        return Fraction(0)
    if action.kind == JACK:
        return _jack(action, lam, mu)
    if action.kind != TORUS and not contains(mu, lam):
        return Fraction(0)
    return Fraction(_closed_form(action, lam, mu))


@dataclass
class CoeffTable:
    """All coefficients ``[lam; mu]`` with ``|mu| <= |lam| <= max_weight``."""

    action: ActionSpec
    max_weight: int
    entries: dict[tuple[tuple, tuple], Fraction] = field(default_factory=dict)

    def __getitem__(self, key: tuple[tuple, tuple]) -> Fraction:
        lam, mu = key
        return self.entries[(self.action.normalize(lam), self.action.normalize(mu))]

    def __len__(self) -> int:
        return len(self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoeffTable):
            return NotImplemented
        return (
            self.action == other.action
            and self.max_weight == other.max_weight
            and self.entries == other.entries
        )

    def to_json(self) -> str:
        rows = [
            {"lambda": encode_state(lam), "mu": encode_state(mu), "value": format_rational(v)}
            for (lam, mu), v in self.entries.items()
        ]
        return json.dumps(
            {"action": str(self.action), "max_weight": self.max_weight, "entries": rows}
        )

    @classmethod
    def from_json(cls, text: str) -> "CoeffTable":
        data = json.loads(text)
        action = parse_action(data["action"])
        entries = {
            (decode_state(row["lambda"]), decode_state(row["mu"])): parse_rational(row["value"])
            for row in data["entries"]
        }
        return cls(action, int(data["max_weight"]), entries)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, delimiter=";", lineterminator="\n")
        writer.writerow(["lambda", "mu", "value"])
        for (lam, mu), v in self.entries.items():
            writer.writerow(
                [",".join(map(str, lam)), ",".join(map(str, mu)), format_rational(v)]
            )
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, action: ActionSpec, max_weight: int) -> "CoeffTable":
        reader = csv.reader(io.StringIO(text), delimiter=";")
        header = next(reader)
        if header != ["lambda", "mu", "value"]:
            raise ValueError(f"unexpected CSV header {header}")
        entries = {}
        for lam, mu, value in reader:
            key = (
                tuple(int(v) for v in lam.split(",") if v),
                tuple(int(v) for v in mu.split(",") if v),
            )
            entries[key] = parse_rational(value)
        return cls(action, max_weight, entries)


def genbin_table(action: ActionSpec, max_weight: int, cap_states: int | None = None) -> CoeffTable:
    """Every coefficient up to `max_weight`, graded then decreasing-lex in both indices."""
    if max_weight < 0:
        raise ValueError("max_weight must be non-negative")
    grades = [action.states(w) for w in range(max_weight + 1)]
    count = sum(len(g) for g in grades)
    cap = state_cap(cap_states)
    if count > cap:
        raise ResourceLimitError(f"{count} states exceed the cap of {cap}")
    table = CoeffTable(action, max_weight)
    for w, grade in enumerate(grades):
        for lam in grade:
            for v in range(w + 1):
                for mu in grades[v]:
                    value = genbin(action, lam, mu)
                    if value < 0:
                        raise ArithmeticError(
                            f"negative coefficient [{lam}; {mu}] = {value} for {action}"
                        )
                    table.entries[(lam, mu)] = value
    return table
