"""How the dimension of the annulus limsup set depends on the exponents.

Run: python demos/dimension_formulas.py
"""

from fractions import Fraction as F

from limsup_annuli import ExponentProfile, dim_isotropic, dim_isotropic_limit, dim_weighted, regime, threshold

n = 2
print(f"dimension n={n}, threshold for tau_psi = {threshold(n)}")
print()
print("tau_psi  tau_phi  dim     branch   regime")
for tp in (F(1, 2), F(1), F(2), F(3)):
    for tf in (F(1, 2), F(1), F(10)):
        r = dim_isotropic(n, tp, tf)
        print(f"{str(tp):>7}  {str(tf):>7}  {str(r.value):>6}  {r.branch:<8} {regime(n, tp)}")

# tau_phi -> 0 fills the hole (balls); tau_phi -> oo leaves only the boundary shell.
print()
print("n=3, tau_psi=1/2, tau_phi -> 0: ", dim_isotropic_limit(3, F(1, 2), "phi->0").value)
print("n=3, tau_psi=1/2, tau_phi -> oo:", dim_isotropic_limit(3, F(1, 2), "phi->inf").value)

# Different exponents per coordinate: rectangular annuli.
prof = ExponentProfile(3, (F(3, 2), 1, F(1, 2)), (1, 2, F(1, 3)))
r = dim_weighted(prof)
print()
print("rectangular annuli, tau_psi =", ", ".join(map(str, prof.tau_psi)),
      " tau_phi =", ", ".join(map(str, prof.tau_phi)))
print(f"  dimension {r.value}, worst coordinate j={r.witness_j + 1}, "
      f"cover choice k={r.witness_k[r.witness_j] + 1}")
for (j, k), v in sorted(r.details["table"].items()):
    print(f"    j={j + 1} k={k + 1}: {v}")
