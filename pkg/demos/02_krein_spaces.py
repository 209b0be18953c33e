"""Indefinite metrics on spinors: adjoints, compatible symmetries, witnesses.

A fundamental symmetry turns the indefinite Krein product into a scalar
product.  Most of them have no relation at all with the grading and real
structure; the compatible ones, for the anti-Lorentzian fiber, are exactly
the future-directed timelike directions.
"""

import numpy as np

from abw import (
    build_clifford,
    fiber_background,
    is_compatible_fundamental_symmetry,
    krein_adjoint,
    time_orientation_form,
)

mod = build_clifford(1, 3)
space = mod.space
g = mod.gammas

print("Krein adjoints against eta = gamma_0:")
print("  gamma_0^x - gamma_0:", np.linalg.norm(krein_adjoint(g[0], space.eta) - g[0]))
print("  (i 1)^x + i 1:     ", np.linalg.norm(krein_adjoint(1j * np.eye(4), space.eta) + 1j * np.eye(4)))

print("\nA boosted family of fundamental symmetries: each member squares to one")
print("and defines a scalar product, yet fails both compatibility relations:")
for lam in (0.5, 1.0, 2.0):
    eta_l = (1 + lam**2 / 2) * g[0] + (lam**2 / 2) * g[0] @ mod.chi0 + 1j * lam * g[0] @ g[1]
    sq = np.linalg.norm(eta_l @ eta_l - np.eye(4))
    pos = np.linalg.eigvalsh(space.eta @ eta_l).min()
    ok = is_compatible_fundamental_symmetry(eta_l, space)
    print(f"  lambda = {lam}: square residual {sq:.1e}, min eigenvalue {pos:.3f}, compatible: {ok}")

print("\nTime-orientation witnesses in the 1-form bimodule:")
beta = time_orientation_form(fiber_background(mod))
coeff = np.trace(g[0].conj().T @ beta) / 4
print(f"  (1,3): found, proportional to gamma_0 (residual "
      f"{np.linalg.norm(beta - coeff * g[0]):.1e})")
print(f"  (4,0): {time_orientation_form(fiber_background(build_clifford(4, 0)))} "
      "(a Euclidean fiber admits none)")
