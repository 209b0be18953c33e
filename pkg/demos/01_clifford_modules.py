"""Clifford modules for even signatures: relations, metrics, sign data.

Every module carries gamma matrices with exact unit entries, a spinor metric
making them selfadjoint, a chirality, and an antilinear real structure.  The
four structural signs determine a mod-8 index pair that tracks the metric
signature.
"""

import numpy as np

from abw import build_clifford, is_spin_group_element

for p, q in [(2, 0), (1, 3), (3, 1), (2, 2)]:
    mod = build_clifford(p, q)
    s = mod.space.signs
    print(f"signature ({p},{q}): spinor dimension {mod.spinor_dim}")
    print(f"  KO signs (eps, kappa, eps2, kappa2) = "
          f"({s.eps:+d}, {s.kappa:+d}, {s.eps2:+d}, {s.kappa2:+d})")
    print(f"  index pair (mu, nu) = {s.pair()}  [expected: "
          f"({(-p - q) % 8}, {(q - p) % 8})]")

print("\nThe dimension-four anti-Lorentzian module in the chiral basis:")
mod = build_clifford(1, 3)
for a, g in enumerate(mod.gammas):
    print(f"gamma_{a} =\n{np.array2string(g.real if np.isreal(g).all() else g, precision=0)}")

print("\nSpin group membership is decided by four predicates: preserving the")
print("vector span, commuting with the chirality and the real structure, and")
print("being Krein unitary up to sign.")
g = mod.gammas
for name, u in [
    ("identity", np.eye(4)),
    ("gamma_1 gamma_2 (rotation plane)", g[1] @ g[2]),
    ("gamma_0 gamma_1 (boost plane)", g[0] @ g[1]),
    ("gamma_1 alone (odd product)", g[1]),
    ("diag(2,1,1,1) (not unitary)", np.diag([2.0, 1, 1, 1])),
]:
    print(f"  {name}: {is_spin_group_element(u, mod)}")
