"""Counting the small cubes needed to cover one shifted box.

The measured count (grid cells meeting the box) stays within a bounded
factor of the predicted power of q, and solving for the exponent where
the covering sums stop diverging gives the dimension again.

Run: python demos/covering_counts.py
"""

from limsup_annuli import ExponentProfile, dim_weighted
from limsup_annuli.cover import cover_sweep, critical_exponent

prof = ExponentProfile(2, (1, 1), (1, 1))
print("   q  j  k  predicted  measured  ratio")
for rep in cover_sweep(prof, [16, 64, 256, 1024]):
    print(f"{rep.q:>4}  {rep.j + 1}  {rep.k + 1}  {rep.predicted:>9}  {rep.measured:>8}  "
          f"{float(rep.ratio):.3f}")

value, table = critical_exponent(prof)
print()
print("critical exponent", value, "closed form", dim_weighted(prof).value)
