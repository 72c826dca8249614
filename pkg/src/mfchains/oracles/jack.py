"""Jack polynomials and the binomial-expansion oracle for Jack-type actions.

Jack polynomials are built in the monic ("P") normalization as eigenfunctions
of the Laplace-Beltrami type operator

    D = (1/(2 theta)) sum_i x_i^2 d_i^2 + sum_{i != j} x_i^2 / (x_i - x_j) d_i,

which is triangular on monomial symmetric functions with respect to
dominance.  Binomial coefficients are then read from the expansion of
``P_lam(1 + z) / P_lam(1^r)`` in the basis ``P_mu(z) / P_mu(1^r)``.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from ..coefficients import ResourceLimitError
from ..partitions import as_partition, contains, distinct_permutations, enumerate_partitions

__all__ = [
    "SymPoly",
    "jack_polynomial",
    "expand",
    "evaluate_at_ones",
    "lassalle_expansion",
    "lassalle_oracle",
    "MAX_ORACLE_RANK",
    "MAX_ORACLE_WEIGHT",
]

MAX_ORACLE_RANK = 3
MAX_ORACLE_WEIGHT = 5

Poly = dict  # exponent tuple (length r) -> Fraction


class SymPoly(dict):
    """Symmetric polynomial in r variables as coefficients of monomial symmetric functions."""

    def __init__(self, r: int, terms=None):
        super().__init__()
        self.r = r
        for k, v in (terms or {}).items():
            if v:
                self[as_partition(k)] = Fraction(v)

    def __eq__(self, other) -> bool:
        if isinstance(other, SymPoly):
            return self.r == other.r and dict.__eq__(self, other)
        return NotImplemented

    __hash__ = None


def _pad(lam: tuple, r: int) -> tuple:
    return lam + (0,) * (r - len(lam))


def monomial_symmetric(mu: tuple, r: int) -> Poly:
    return {perm: Fraction(1) for perm in distinct_permutations(_pad(mu, r))}


def expand(f: SymPoly) -> Poly:
    """Full monomial expansion of a SymPoly."""
    out: Poly = {}
    for mu, c in f.items():
        for perm in distinct_permutations(_pad(mu, f.r)):
            out[perm] = out.get(perm, 0) + c
    return out


def _add(out: Poly, key: tuple, value) -> None:
    s = out.get(key, 0) + value
    if s:
        out[key] = s
    else:
        out.pop(key, None)


def _apply_operator(f: Poly, theta: Fraction, r: int) -> Poly:
    """Apply D to a symmetric polynomial given by its full expansion."""
    out: Poly = {}
    half_alpha = 1 / (2 * theta)
    for a, c in f.items():
        diag = sum(v * (v - 1) for v in a)
        if diag:
            _add(out, a, c * half_alpha * diag)
    for i in range(r):
        for j in range(i + 1, r):
            for a, c in f.items():
                p, q = a[i], a[j]
                if p < q:
                    # its mirror image (same coefficient, f is symmetric) carries the pair
                    continue
                if p == q:
                    _add(out, a, c * p)
                    continue
                # [T(x^a) + T(x^{swap a})] with T = (x_i^2 d_i - x_j^2 d_j) / (x_i - x_j)
                base = list(a)
                for l in range(p - q + 1):
                    base[i], base[j] = p - l, q + l
                    _add(out, tuple(base), c * p)
                for l in range(p - q - 1):
                    base[i], base[j] = p - 1 - l, q + 1 + l
                    _add(out, tuple(base), -c * q)
    return out


@lru_cache(maxsize=None)
def _jack(lam: tuple, theta: Fraction, r: int) -> SymPoly:
    w = sum(lam)
    basis = [mu for mu in enumerate_partitions(w, r)]
    # basis is in decreasing lex order, a linear extension of dominance
    images = {mu: _apply_operator(monomial_symmetric(mu, r), theta, r) for mu in basis}

    def entry(nu, mu):
        return images[mu].get(_pad(nu, r), Fraction(0))

    eigen = entry(lam, lam)
    coeffs = {lam: Fraction(1)}
    for nu in basis[basis.index(lam) + 1:]:
        acc = Fraction(0)
        for mu, c in coeffs.items():
            acc += entry(nu, mu) * c
        gap = eigen - entry(nu, nu)
        if gap == 0:
            if acc != 0:
                raise ArithmeticError(f"eigenvalue collision at {nu} below {lam}")
            continue
        coeffs[nu] = acc / gap
    return SymPoly(r, coeffs)


def jack_polynomial(lam, theta, r: int) -> SymPoly:
    """Monic Jack polynomial ``P_lam(x_1..x_r; theta)`` in the monomial basis."""
    lam = as_partition(lam)
    theta = Fraction(theta)
    if theta <= 0:
        raise ValueError("theta must be positive")
    if len(lam) > r:
        raise ValueError(f"partition {lam} has more than {r} rows")
    if r > MAX_ORACLE_RANK or sum(lam) > MAX_ORACLE_WEIGHT:
        raise ResourceLimitError(
            f"Jack oracle is capped at r <= {MAX_ORACLE_RANK}, |lam| <= {MAX_ORACLE_WEIGHT}"
        )
    return _jack(lam, theta, r)


def evaluate_at_ones(f: SymPoly) -> Fraction:
    total = Fraction(0)
    for mu, c in f.items():
        total += c * sum(1 for _ in distinct_permutations(_pad(mu, f.r)))
    return total


def _shift_by_one(f: Poly) -> Poly:
    """Substitute ``x_i -> 1 + z_i``."""
    out: Poly = {}
    for a, c in f.items():
        terms = {(): Fraction(c)}
        for e in a:
            nxt = {}
            for key, v in terms.items():
                for k in range(e + 1):
                    nxt[key + (k,)] = nxt.get(key + (k,), 0) + v * comb(e, k)
            terms = nxt
        for key, v in terms.items():
            _add(out, key, v)
    return out


@lru_cache(maxsize=None)
def _expansion(lam: tuple, theta: Fraction, r: int) -> dict:
    p_lam = jack_polynomial(lam, theta, r)
    shifted = _shift_by_one(expand(p_lam))
    norm = evaluate_at_ones(p_lam)
    # coefficients of monomial symmetric functions: read at sorted exponents
    remaining = {
        as_partition(k): v / norm for k, v in shifted.items() if list(k) == sorted(k, reverse=True)
    }
    out = {}
    for w in range(sum(lam), -1, -1):
        for mu in enumerate_partitions(w, r):
            c = remaining.get(mu, Fraction(0))
            if c == 0:
                continue
            p_mu = jack_polynomial(mu, theta, r)
            for nu, v in p_mu.items():
                _add(remaining, nu, -c * v)
            value = evaluate_at_ones(p_mu)
            if value == 0:
                raise ArithmeticError(f"P_{mu}(1^{r}) vanishes")
            out[mu] = c * value
    if remaining:
        raise ArithmeticError(f"expansion of P_{lam}(1+z) left a remainder {remaining}")
    return out


def lassalle_expansion(lam, theta, r: int) -> dict[tuple, Fraction]:
    """All nonzero ``[lam; mu]`` from the shifted-argument expansion."""
    lam = as_partition(lam)
    return dict(_expansion(lam, Fraction(theta), r))


def lassalle_oracle(lam, mu, theta, r: int) -> Fraction:
    """Coefficient of ``P_mu(z)/P_mu(1^r)`` in ``P_lam(1+z)/P_lam(1^r)``."""
    lam, mu = as_partition(lam), as_partition(mu)
    if len(lam) > r or len(mu) > r:
        raise ValueError("partitions must have at most r rows")
    if not contains(mu, lam):
        raise ValueError(f"{mu} is not contained in {lam}")
    return lassalle_expansion(lam, theta, r).get(mu, Fraction(0))
