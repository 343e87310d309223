"""Exact geometry behind the lower and upper bounds.

A rectangular annulus splits into 2n shifted boxes; we check this by
exact Monte Carlo and exact areas.  Then we certify the cube that fits
between a max-norm ball and a smaller-norm ball of the same radius.

Run: python demos/annulus_geometry.py
"""

from fractions import Fraction as F

from limsup_annuli import ExponentProfile, RationalPoint, rect_annulus, rect_annulus_decompose
from limsup_annuli.geometry import cube_corner_certificate, union_volume
from limsup_annuli.verify import decomposition_check, sandwich_check

prof = ExponentProfile.uniform(2, 1, 1)
p = RationalPoint((1, 1), 2)
ann = rect_annulus(p, prof)
print("annulus at", [str(c) for c in p.center], "outer", [str(r) for r in ann.outer_radii],
      "inner", [str(r) for r in ann.inner_radii])
for rect in rect_annulus_decompose(p, prof):
    print("  box centre", [str(c) for c in rect.center], "half-widths", [str(r) for r in rect.radii])
print("areas:", ann.volume(), "=", union_volume(rect_annulus_decompose(p, prof)))

for check in (decomposition_check, sandwich_check):
    rep = check(prof, p, 100_000, seed=42)
    print(f"{rep.name}: {rep.violations} violations, {rep.boundary_skipped} boundary points skipped")

print()
for variant in ("corrected", "uncorrected"):
    cert = cube_corner_certificate(2, 2, variant)
    print(f"inscribed cube, {variant} constants: max-norm ok={cert.inf_ok}, "
          f"2-norm ok={cert.rho_ok}")
