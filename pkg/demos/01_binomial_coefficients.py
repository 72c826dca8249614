#!/usr/bin/env python3
"""Generalized binomial coefficients across the supported actions.

Run:  python3 demos/01_binomial_coefficients.py
"""
from fractions import Fraction

from mfchains import actions, genbin, genbin_table
from mfchains.oracles import gram_schmidt_genbin, lassalle_oracle
from mfchains.partitions import format_rational

# The full unitary action on C^n has one state per degree m, and its
# coefficients are the ordinary binomial coefficients C(m, j).
un5 = actions.un(5)
print("un:n=5, row m=5:", [int(genbin(un5, 5, j)) for j in range(6)])

# The torus action is indexed by lattice points; coefficients factor.
torus2 = actions.torus(2)
print("torus:n=2  [(2,1); (1,1)] =", genbin(torus2, (2, 1), (1, 1)))

# The permutation-symmetrized torus is indexed by partitions with <= n rows.
sym2 = actions.symtorus(2)
print("symtorus:n=2  [(1,1); (1)] =", genbin(sym2, (1, 1), (1,)))

# Jordan-algebra actions are Jack-type: rank r and a parameter theta.
sphere = actions.sphere(5)
print("sphere:n=5 is", sphere, "with dimensions",
      {lam: actions.dim_irrep(sphere, lam) for lam in sphere.states_upto(2)})

table = genbin_table(actions.matc(2), 3)
print("\nmatc:m=2 coefficients up to weight 3 (nonzero entries):")
for (lam, mu), value in table.entries.items():
    if value and lam != mu:
        print(f"  [{lam}; {mu}] = {format_rational(value)}")

# Independent checks.  For the three torus-type actions the coefficients can
# be recomputed from scratch by Gram-Schmidt in the Fock inner product ...
for action in (actions.un(2), actions.torus(2), actions.symtorus(3)):
    same = gram_schmidt_genbin(action, 4) == genbin_table(action, 4)
    print(f"Gram-Schmidt oracle agrees on {action}: {same}")

# ... and for Jack-type actions by expanding a Jack polynomial at 1 + z.
theta = Fraction(1, 2)
print("Jack oracle [(2,1); (1)] at theta=1/2:", lassalle_oracle((2, 1), (1,), theta, 2),
      "engine:", genbin(actions.symc(2), (2, 1), (1,)))
