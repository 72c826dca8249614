"""First-principles coefficients from Gram-Schmidt in the Fock inner product.

Invariant polynomials for the FullUnitary, Torus and SymTorus actions are
functions of ``x_i = |z_i|^2`` only, so they are stored as sparse maps from
exponent vectors to rationals.  With the weight ``exp(-|z|^2)`` normalized to
mass one, ``<x^a, x^b> = prod_i (a_i + b_i)!``.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Callable, Mapping, Sequence

from ..actions import FULL_UNITARY, SYM_TORUS, TORUS, ActionSpec, dim_irrep
from ..coefficients import CoeffTable, ResourceLimitError
from ..partitions import compositions, distinct_permutations

__all__ = [
    "InvariantPoly",
    "fock_moment",
    "fock_inner",
    "gamma_power",
    "p_basis",
    "q_basis",
    "gram_schmidt_genbin",
    "laguerre_poly",
    "MAX_ORACLE_N",
]

MAX_ORACLE_N = 3


class InvariantPoly(dict):
    """Sparse polynomial in ``x_1..x_n`` (``x_i = |z_i|^2``) with rational coefficients."""

    def __init__(self, n: int, terms: Mapping[tuple, Fraction] | None = None):
        super().__init__()
        self.n = n
        if terms:
            for k, v in terms.items():
                if v:
                    self[tuple(k)] = Fraction(v)

    def copy(self) -> "InvariantPoly":
        return InvariantPoly(self.n, self)

    def __add__(self, other: "InvariantPoly") -> "InvariantPoly":
        out = self.copy()
        for k, v in other.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return out

    def __sub__(self, other: "InvariantPoly") -> "InvariantPoly":
        return self + other.scale(-1)

    def scale(self, c) -> "InvariantPoly":
        c = Fraction(c)
        return InvariantPoly(self.n, {k: v * c for k, v in self.items()})

    def __mul__(self, other: "InvariantPoly") -> "InvariantPoly":
        out: dict[tuple, Fraction] = {}
        for a, u in self.items():
            for b, v in other.items():
                key = tuple(i + j for i, j in zip(a, b))
                out[key] = out.get(key, 0) + u * v
        return InvariantPoly(self.n, out)

    def constant(self) -> Fraction:
        return self.get((0,) * self.n, Fraction(0))

    def homogeneous_part(self, degree: int) -> "InvariantPoly":
        return InvariantPoly(self.n, {k: v for k, v in self.items() if sum(k) == degree})

    def __eq__(self, other) -> bool:
        if isinstance(other, InvariantPoly):
            return self.n == other.n and dict.__eq__(self, other)
        return NotImplemented

    __hash__ = None


def fock_moment(m: Sequence[int]) -> int:
    """``<prod x_i^{m_i}, 1>`` in the Fock inner product: ``prod m_i!``."""
    out = 1
    for v in m:
        out *= factorial(v)
    return out


def fock_inner(f: InvariantPoly, g: InvariantPoly) -> Fraction:
    total = Fraction(0)
    for a, u in f.items():
        for b, v in g.items():
            total += u * v * fock_moment([i + j for i, j in zip(a, b)])
    return total


def gamma_power(n: int, m: int) -> InvariantPoly:
    """``gamma^m = (x_1 + ... + x_n)^m`` expanded multinomially."""
    terms = {}
    for a in compositions(m, n):
        coeff = factorial(m)
        for v in a:
            coeff //= factorial(v)
        terms[a] = Fraction(coeff)
    return InvariantPoly(n, terms)


def _torus_p(mu: tuple) -> InvariantPoly:
    return InvariantPoly(len(mu), {mu: Fraction(1, fock_moment(mu))})


def _p(action: ActionSpec, lam: tuple) -> InvariantPoly:
    n = action.n
    if action.kind == FULL_UNITARY:
        m = lam[0] if lam else 0
        return gamma_power(n, m).scale(Fraction(factorial(n - 1), factorial(m + n - 1)))
    if action.kind == TORUS:
        return _torus_p(lam)
    # SymTorus: average of |z^mu|^2 / mu! over the S_n-orbit of lam
    full = lam + (0,) * (n - len(lam))
    orbit = list(distinct_permutations(full))
    out = InvariantPoly(n)
    for mu in orbit:
        out = out + _torus_p(mu)
    return out.scale(Fraction(1, len(orbit)))


def p_basis(action: ActionSpec, max_weight: int) -> dict[tuple, InvariantPoly]:
    """The homogeneous invariants ``p_lam`` for all states up to `max_weight`."""
    _check(action)
    return {lam: _p(action, lam) for lam in action.states_upto(max_weight)}


def _check(action: ActionSpec) -> None:
    if action.kind not in (FULL_UNITARY, TORUS, SYM_TORUS):
        raise ValueError(f"no Fock oracle for {action.kind} actions")
    if action.n > MAX_ORACLE_N:
        raise ResourceLimitError(f"Fock oracle is capped at n <= {MAX_ORACLE_N}")


def q_basis(
    action: ActionSpec,
    max_weight: int,
    within_grade: Callable[[list[tuple]], list[tuple]] | None = None,
) -> dict[tuple, InvariantPoly]:
    """Orthogonalize the ``p_lam`` in graded order, normalized so ``q_lam(0) = 1``.

    `within_grade` may reorder each grade; the result must not depend on it.
    """
    p = p_basis(action, max_weight)
    order = []
    for w in range(max_weight + 1):
        grade = action.states(w)
        order.extend(within_grade(list(grade)) if within_grade else grade)
    done: list[tuple[InvariantPoly, Fraction]] = []
    q = {}
    for lam in order:
        v = p[lam]
        for u, norm in done:
            v = v - u.scale(fock_inner(p[lam], u) / norm)
        c0 = v.constant()
        if c0 == 0:
            raise ArithmeticError(f"degenerate orthogonalization at {lam}")
        v = v.scale(1 / c0)
        done.append((v, fock_inner(v, v)))
        q[lam] = v
    return q


def _solve(columns: list[InvariantPoly], target: InvariantPoly) -> list[Fraction]:
    """Exact solve of ``sum_k c_k columns[k] = target`` (must be consistent)."""
    keys = sorted({k for col in columns for k in col} | set(target))
    rows = [[col.get(k, Fraction(0)) for col in columns] + [target.get(k, Fraction(0))] for k in keys]
    ncol = len(columns)
    pivots = []
    r = 0
    for c in range(ncol):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            raise ArithmeticError("p-basis is linearly dependent")
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if any(row[-1] != 0 for row in rows[r:]):
        raise ArithmeticError("target is not in the span of the p-basis")
    return [rows[i][-1] for i in range(ncol)]


def gram_schmidt_genbin(
    action: ActionSpec,
    max_weight: int,
    within_grade: Callable[[list[tuple]], list[tuple]] | None = None,
) -> CoeffTable:
    """Coefficients ``[lam; mu]`` read off from ``q_lam = sum (-1)^|mu| [lam; mu] p_mu``."""
    q = q_basis(action, max_weight, within_grade)
    p = p_basis(action, max_weight)
    grades = [action.states(w) for w in range(max_weight + 1)]
    table = CoeffTable(action, max_weight)
    for w, grade in enumerate(grades):
        for lam in grade:
            for v in range(w + 1):
                part = q[lam].homogeneous_part(v)
                coeffs = _solve([p[mu] for mu in grades[v]], part)
                sign = -1 if v % 2 else 1
                for mu, c in zip(grades[v], coeffs):
                    table.entries[(lam, mu)] = sign * c
            if any(sum(k) > w for k in q[lam]):
                raise ArithmeticError(f"q_{lam} has degree above {w}")
    return table


def laguerre_poly(n: int, k: int) -> InvariantPoly:
    """``L_k^{(n-1)}(gamma) = sum_i (-1)^i C(k+n-1, k-i) gamma^i / i!``."""
    from math import comb

    out = InvariantPoly(n)
    for i in range(k + 1):
        out = out + gamma_power(n, i).scale(Fraction((-1) ** i * comb(k + n - 1, k - i), factorial(i)))
    return out


def dimension_weighted_sum(action: ActionSpec, basis: Mapping[tuple, InvariantPoly], w: int) -> InvariantPoly:
    """``sum_{|alpha| = w} d_alpha basis[alpha]``."""
    out = InvariantPoly(action.n)
    for alpha in action.states(w):
        out = out + basis[alpha].scale(dim_irrep(action, alpha))
    return out
