"""Streaming shape families and finding the annuli that contain a point.

Run: python demos/enumerate_shapes.py
"""

from fractions import Fraction as F
import sys

from limsup_annuli import ExponentProfile, membership_scan
from limsup_annuli.enumeration import FamilySpec, count, dump_ndjson

prof = ExponentProfile.uniform(1, 1, 1)
spec = FamilySpec("shifted-rect", prof, j=0, sign=1)
print(count(spec, (1, 3)), "shapes for q in 1..3:")
dump_ndjson(spec, (1, 3), sys.stdout)

x = (F(3, 16),)
print()
print("annuli containing", x[0], "with q <= 8:")
for pt in membership_scan(x, prof, 8):
    print(f"  {pt.p[0]}/{pt.q}")
