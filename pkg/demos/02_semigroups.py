#!/usr/bin/env python3
"""Rates, closed-form semigroups, and a numeric cross-check.

Run:  python3 demos/02_semigroups.py
"""
from fractions import Fraction

from mfchains import actions
from mfchains.markov import (
    birth_transitions,
    death_transitions,
    generator,
    projected_prob_1d,
    transition_poly,
    transition_prob,
    transition_prob_t,
    uniformized_row,
)

sphere = actions.sphere(5)

# A birth chain adds one box at a time; the total exit rate is n + |alpha|.
print("birth rates out of (1):", birth_transitions(sphere, (1,)))
print("death rates out of (2,1):", death_transitions(sphere, (2, 1)))

# The semigroup is a polynomial in x = exp(-t), known in closed form.
poly = transition_poly(sphere, "birth", (1,), (2, 1))
print("P_t((1) -> (2,1)) as a polynomial in x:", poly.to_list())
x = Fraction(2, 3)
print("at x = 2/3:", transition_prob(sphere, "birth", (1,), (2, 1), x))

# Summing over a grade forgets the shape: only the weight process remains,
# a Yule process with immigration rate n.
grade = sum(transition_prob(sphere, "birth", (1,), beta, x) for beta in sphere.states(3))
print("grade-3 mass:", grade, "== one-dimensional chain:", projected_prob_1d(5, 1, 3, x, "birth"))

# Numeric check: exp(tQ) by uniformization on a truncated state space.
t = 0.5
gen = generator(sphere, "birth", 45)
row = uniformized_row(gen, (1,), t)
worst = max(abs(row.get(b, 0.0) - transition_prob_t(sphere, "birth", (1,), b, t))
            for b in sphere.states_upto(15))
print(f"uniformization vs closed form at t={t}: max error {worst:.2e}")
