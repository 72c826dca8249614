#!/usr/bin/env python3
"""Monte Carlo paths against the exact marginal, plus a Young-diagram movie.

Run:  python3 demos/03_simulation.py
"""
from mfchains import actions
from mfchains.cli import render_diagram
from mfchains.markov import exact_row
from mfchains.simulate import empirical_marginal, sample_path, sample_paths, tv_distance

sphere = actions.sphere(5)
t = 0.5

paths = sample_paths(sphere, "birth", (), t, seed=7, n_paths=20_000, threads=2)
empirical = empirical_marginal(paths, t)
exact = exact_row(sphere, "birth", (), t, 60)
print(f"20000 paths, TV distance to the exact row at t={t}: {tv_distance(empirical, exact):.4f}")

print("\nmost likely states:")
for state, p in sorted(exact.items(), key=lambda kv: -kv[1])[:5]:
    print(f"  {state!s:8} exact {p:.4f}  empirical {empirical.get(state, 0.0):.4f}")

# One death path of the symmetrized torus chain, drawn frame by frame.
path = sample_path(actions.symtorus(3), "death", (3, 2, 1), 2.0, seed=1)
print()
print("\n\n".join(render_diagram(path)))
