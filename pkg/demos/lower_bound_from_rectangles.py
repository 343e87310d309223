"""The rectangles-to-rectangles lower bound reproduces the closed form.

For each coordinate j we pick full-measure weights b and stretches t,
evaluate the lower bound, and take the best j.  The result equals the
formula exactly on random rational profiles.

Run: python demos/lower_bound_from_rectangles.py
"""

from fractions import Fraction as F

from limsup_annuli import ExponentProfile, dim_mtp, dim_weighted, rynne_oracle, select_exponents, ww_lower_bound
from limsup_annuli.mtp import consistency_sweep, weighted_instance

prof = ExponentProfile(2, (F(6, 5), F(3, 10)), (1, 1))
for j in range(prof.n):
    sel = select_exponents(prof, j)
    bound = ww_lower_bound(sel.instance())
    print(f"j={j + 1}: case {sel.case_tag}, b={[str(x) for x in sel.b]}, "
          f"t={[str(x) for x in sel.t]} -> {bound.value} at {bound.branch}")
print("best over j:", dim_mtp(prof).value, " closed form:", dim_weighted(prof).value)

# Without annuli the same bound gives weighted simultaneous approximation.
tau = (F(1), F(2))
print()
print("weighted approximation, tau =", ", ".join(map(str, tau)), "->", ww_lower_bound(weighted_instance(tau)).value,
      " oracle", rynne_oracle(2, tau))

rows = consistency_sweep(200, seed=7)
worst = max(r.abs_diff for r in rows)
print()
print(f"200 random profiles: largest difference {worst}")
