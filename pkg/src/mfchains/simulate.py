"""Jump-chain sampler for the birth and death chains.

Each path draws from its own Philox stream keyed by ``(seed, path_index)``,
so a batch is reproducible bit for bit whatever the number of workers.
"""
from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

from ._jsonio import dumps17
from .actions import ActionSpec
from .markov import Direction, exit_rate, transitions
from .partitions import decode_state, encode_state

__all__ = [
    "Trajectory",
    "sample_path",
    "sample_paths",
    "sample_weight_path",
    "empirical_marginal",
    "tv_distance",
    "read_jsonl",
    "write_jsonl",
    "MAX_JUMPS",
]

MAX_JUMPS = 1_000_000
_MASK64 = (1 << 64) - 1
_TWO_M53 = 2.0**-53


@dataclass
class Trajectory:
    start: tuple
    events: list[tuple[float, tuple]]
    horizon: float
    seed: int = 0
    path: int = 0

    def state_at(self, t: float) -> tuple:
        if t < 0 or t > self.horizon:
            raise ValueError(f"time {t} outside [0, {self.horizon}]")
        state = self.start
        for time, s in self.events:
            if time > t:
                break
            state = s
        return state

    @property
    def final(self) -> tuple:
        return self.events[-1][1] if self.events else self.start

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "path": self.path,
            "start": encode_state(self.start),
            "horizon": float(self.horizon),
            "events": [{"t": float(t), "state": encode_state(s)} for t, s in self.events],
        }

    def to_json(self) -> str:
        return dumps17(self.to_dict())

    @classmethod
    def from_dict(cls, data: Mapping) -> "Trajectory":
        return cls(
            start=decode_state(data["start"]),
            events=[(float(e["t"]), decode_state(e["state"])) for e in data["events"]],
            horizon=float(data["horizon"]),
            seed=int(data.get("seed", 0)),
            path=int(data.get("path", 0)),
        )


def _stream(seed: int, path: int) -> np.random.Philox:
    # counter-based: the key alone fixes the stream, no sequential state shared
    return np.random.Philox(key=((path & _MASK64) << 64) | (seed & _MASK64))


class _Uniforms:
    """Uniforms on [0, 1) with 53 random bits, drawn from the stream in blocks."""

    __slots__ = ("_bitgen", "_block", "_pos")
    BLOCK = 16

    def __init__(self, bitgen: np.random.Philox):
        self._bitgen = bitgen
        self._block: list[float] = []
        self._pos = 0

    def __call__(self) -> float:
        if self._pos == len(self._block):
            raw = self._bitgen.random_raw(self.BLOCK)
            self._block = ((raw >> np.uint64(11)).astype(np.float64) * _TWO_M53).tolist()
            self._pos = 0
        u = self._block[self._pos]
        self._pos += 1
        return u


@lru_cache(maxsize=None)
def _jump_tables(action: ActionSpec, direction: Direction) -> dict:
    """Per-chain cache state -> jump table, so the hot loop hashes only the state."""
    return {}


def _jump_table(action: ActionSpec, direction: Direction, state: tuple):
    moves = transitions(action, direction, state)
    total = exit_rate(action, direction, state)
    acc = Fraction(0)
    cumulative = []
    for _, rate in moves:
        acc += rate
        cumulative.append(float(acc / total))
    if moves:
        # rates sum exactly to the exit rate; make the last threshold exact too
        cumulative[-1] = 1.0
    return float(total), tuple(s for s, _ in moves), tuple(cumulative)


def sample_path(
    action: ActionSpec,
    direction,
    start,
    t_max: float,
    seed: int,
    path: int = 0,
) -> Trajectory:
    """Simulate one path on ``[0, t_max]``; deterministic in all arguments."""
    direction = Direction.parse(direction)
    if not math.isfinite(t_max) or t_max <= 0:
        raise ValueError(f"t_max must be finite and positive, got {t_max}")
    state = action.normalize(start)
    start = state
    uniform = _Uniforms(_stream(seed, path))
    tables = _jump_tables(action, direction)
    t = 0.0
    events: list[tuple[float, tuple]] = []
    while True:
        entry = tables.get(state)
        if entry is None:
            # a racing thread may compute the same entry; both results are identical
            entry = tables[state] = _jump_table(action, direction, state)
        total, targets, cumulative = entry
        if not targets:
            break
        t += -math.log1p(-uniform()) / total
        if t > t_max:
            break
        u = uniform()
        k = 0
        while u >= cumulative[k]:
            k += 1
        state = targets[k]
        events.append((t, state))
        if len(events) >= MAX_JUMPS:
            raise RuntimeError(f"path exceeded {MAX_JUMPS} jumps before t_max={t_max}")
    return Trajectory(start, events, float(t_max), seed, path)


def sample_paths(
    action: ActionSpec,
    direction,
    start,
    t_max: float,
    seed: int,
    n_paths: int,
    threads: int = 1,
) -> list[Trajectory]:
    """Paths ``0..n_paths-1``, returned in path order regardless of `threads`."""
    if n_paths < 0:
        raise ValueError("n_paths must be non-negative")
    direction = Direction.parse(direction)
    start = action.normalize(start)
    if threads <= 1 or n_paths < 2:
        return [sample_path(action, direction, start, t_max, seed, i) for i in range(n_paths)]
    chunk = -(-n_paths // threads)

    def work(lo: int) -> list[Trajectory]:
        hi = min(lo + chunk, n_paths)
        return [sample_path(action, direction, start, t_max, seed, i) for i in range(lo, hi)]

    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(work, range(0, n_paths, chunk)))
    return [tr for part in parts for tr in part]


def sample_weight_path(n, direction, k0: int, t_max: float, seed: int, path: int = 0) -> Trajectory:
    """Direct simulation of the one-dimensional chain (birth rate k+n, death rate k)."""
    direction = Direction.parse(direction)
    if not math.isfinite(t_max) or t_max <= 0:
        raise ValueError(f"t_max must be finite and positive, got {t_max}")
    uniform = _Uniforms(_stream(seed, path))
    n = float(n)
    k = k0
    t = 0.0
    events = []
    while True:
        rate = k + n if direction is Direction.BIRTH else float(k)
        if rate == 0:
            break
        t += -math.log1p(-uniform()) / rate
        if t > t_max:
            break
        k = k + 1 if direction is Direction.BIRTH else k - 1
        events.append((t, (k,)))
        if len(events) >= MAX_JUMPS:
            raise RuntimeError(f"path exceeded {MAX_JUMPS} jumps")
    return Trajectory((k0,), events, float(t_max), seed, path)


def _order_key(state: tuple):
    return (sum(state), tuple(-v for v in state))


def empirical_marginal(trajectories: Sequence[Trajectory], t: float) -> dict[tuple, float]:
    """Relative frequency of the state occupied at time `t`."""
    if not trajectories:
        raise ValueError("no trajectories")
    counts: dict[tuple, int] = {}
    for tr in trajectories:
        if t > tr.horizon or t < 0:
            raise ValueError(f"time {t} outside [0, {tr.horizon}]")
        s = tr.state_at(t)
        counts[s] = counts.get(s, 0) + 1
    total = len(trajectories)
    return {s: counts[s] / total for s in sorted(counts, key=_order_key)}


def tv_distance(p: Mapping, q: Mapping) -> float:
    """Half the L1 distance over the union of supports."""
    keys = set(p) | set(q)
    return 0.5 * math.fsum(abs(p.get(k, 0.0) - q.get(k, 0.0)) for k in keys)


def write_jsonl(trajectories: Iterable[Trajectory], fh) -> None:
    for tr in trajectories:
        fh.write(tr.to_json())
        fh.write("\n")


def read_jsonl(fh) -> list[Trajectory]:
    return [Trajectory.from_dict(json.loads(line)) for line in fh if line.strip()]
