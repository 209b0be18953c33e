"""Symmetries of the finite background, solved and matched to closed forms.

Three nested solver problems: the odd centralizer (Majorana couplings), the
flavour algebra (six unitary generation blocks), and the unitary stabilizer
of the algebra.  Demanding that the 1-form bimodule also be preserved
collapses everything onto the gauge directions plus one extra phase: the
baryon-minus-lepton direction is forced, not chosen.
"""

from abw import (
    OperatorSubspace,
    automorphism_lie_algebra,
    build_sm_background,
    flavour_lie_algebra,
    generator_catalog,
    odd_centralizer,
    random_yukawa,
    stabilizer_lie_algebra,
    vertical_symmetry_report,
)

n_gen = 2
model = build_sm_background(random_yukawa(n_gen, seed=7))
cat = generator_catalog(n_gen)

print(f"Solver dimensions at N = {n_gen}:")
print(f"  odd centralizer: {odd_centralizer(model).dim}  (2 N^2 = {2 * n_gen**2})")
flav = flavour_lie_algebra(model)
print(f"  flavour algebra: {flav.dim}  (6 N^2 = {6 * n_gen**2})")
stab = stabilizer_lie_algebra(model)
print(f"  stabilizer:      {stab.dim}  (13 + 6 N^2 - 2 = {11 + 6 * n_gen**2})")

gauge = OperatorSubspace.span(cat.gauge())
print(f"  gauge span: {gauge.dim}, overlap with flavour: {gauge.intersect(flav).dim}")

print("\nBimodule stabilization cuts the symmetry algebra down:")
full = automorphism_lie_algebra(model.background)
span14 = OperatorSubspace.span(cat.all())
print(f"  full symmetry algebra: {full.dim} "
      f"(gauge 13 + the baryon-minus-lepton phase)")
print(f"  equals the explicit span: "
      f"{all(full.contains(x) for x in span14.basis) and full.dim == span14.dim}")

rep = vertical_symmetry_report(model)
print(f"  vertical part: {rep['vertical_dim']} phases, matches the catalog: "
      f"{rep['span_matches']}")

print("\nWith degenerate couplings the collapse fails (genericity matters):")
import dataclasses

y = random_yukawa(n_gen, seed=7)
degenerate = build_sm_background(dataclasses.replace(y, Y_e=y.Y_nu.copy()))
rep = vertical_symmetry_report(degenerate)
print(f"  vertical dimension with equal lepton couplings: {rep['vertical_dim']}")
