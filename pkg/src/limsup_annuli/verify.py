"""Seeded Monte Carlo certificates for the geometric constructions.

Samples are rationals on a fine grid whose denominator is a multiple of
every denominator in play, so each membership test reduces to an exact
integer comparison and runs vectorised in numpy.  Points landing on any
boundary are set aside: open and closed versions of the sets differ only
there, and that set has measure zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

import numpy as np

from .errors import InvalidParameterError
from .formulas import ExponentProfile
from .geometry import (
    RationalPoint,
    cube_corner_certificate,
    rect_annulus,
    rect_annulus_decompose,
    union_volume,
)

RESOLUTION_BITS = 16
_INT_LIMIT = 2**62


@dataclass
class VerifyReport:
    name: str
    samples: int
    violations: int = 0
    boundary_skipped: int = 0
    scalar_mismatches: int = 0
    details: dict = field(default_factory=dict)

    @property
    def clean(self):
        return self.violations == 0 and self.scalar_mismatches == 0


def default_point(n, q):
    """The rational ``(1/q, ..., 1/q)``, away from the cube's faces."""
    return RationalPoint((1,) * n, q)


def _exact_shapes(p, profile):
    annulus = rect_annulus(p, profile)
    rects = rect_annulus_decompose(p, profile)
    if "rounded-outward" in annulus.flags or any(r.flags for r in rects):
        raise InvalidParameterError("Monte Carlo checks need rational radii (integer exponents)")
    return annulus, rects


def _grid(shapes):
    dens = [1]
    for s in shapes:
        for v in s.center:
            dens.append(v.denominator)
        for attr in ("radii", "outer_radii", "inner_radii"):
            for v in getattr(s, attr, ()):
                dens.append(v.denominator)
    D = lcm(*dens) * 2**RESOLUTION_BITS
    if 8 * D >= _INT_LIMIT:
        raise InvalidParameterError("grid denominator too large for int64 arithmetic")
    return D


def _scaled(vec, D):
    return np.array([int(v * D) for v in vec], dtype=np.int64)


class _Masks:
    """Integer-scaled membership tests for one annulus and its boxes."""

    def __init__(self, annulus, rects, D):
        self.D = D
        self.c = _scaled(annulus.center, D)
        self.R = _scaled(annulus.outer_radii, D)
        self.r = _scaled(annulus.inner_radii, D)
        self.rc = [_scaled(b.center, D) for b in rects]
        self.rh = [_scaled(b.radii, D) for b in rects]

    def annulus(self, X):
        d = np.abs(X - self.c)
        inside = np.all(d < self.R, axis=1) & np.any(d > self.r, axis=1)
        edge = np.any(d == self.R, axis=1) | np.any(d == self.r, axis=1)
        return inside, edge

    def rect(self, X, k):
        d = np.abs(X - self.rc[k])
        closed = np.all(d <= self.rh[k], axis=1)
        interior = np.all(d < self.rh[k], axis=1)
        return closed, interior, closed & ~interior


def _sample_box(rng, lo, hi, size):
    """Grid points strictly inside the box ``[lo, hi]`` (integer-scaled)."""
    cols = [rng.integers(a + 1, b, size=size, dtype=np.int64) for a, b in zip(lo, hi)]
    return np.stack(cols, axis=1)


def _to_point(row, D):
    return tuple(Fraction(int(v), D) for v in row)


def decomposition_check(profile: ExponentProfile, p: RationalPoint, samples, seed,
                        scalar_samples=500):
    """The ``2n`` shifted boxes and the rectangular annulus agree off boundaries.

    Counts points of the annulus missed by every box and points interior
    to some box lying outside the annulus; also compares the exact areas.
    The first ``scalar_samples`` points are re-checked with the Fraction
    predicates as an independent path.
    """
    annulus, rects = _exact_shapes(p, profile)
    D = _grid([annulus] + rects)
    m = _Masks(annulus, rects, D)
    lo = m.c - m.R
    hi = m.c + m.R
    rng = np.random.default_rng(seed)
    X = _sample_box(rng, lo, hi, samples)

    in_a, edge = m.annulus(X)
    any_closed = np.zeros(samples, dtype=bool)
    any_interior = np.zeros(samples, dtype=bool)
    for k in range(len(rects)):
        closed, interior, rim = m.rect(X, k)
        any_closed |= closed
        any_interior |= interior
        edge |= rim
    keep = ~edge
    uncovered = keep & in_a & ~any_closed
    stray = keep & any_interior & ~in_a

    mismatches = 0
    for row in X[:scalar_samples]:
        x = _to_point(row, D)
        if annulus.contains(x) != bool(m.annulus(row[None, :])[0][0]):
            mismatches += 1
        if any(b.contains(x) for b in rects) != bool(
                any(m.rect(row[None, :], k)[0][0] for k in range(len(rects)))):
            mismatches += 1

    area_union = union_volume(rects)
    area_annulus = annulus.volume()
    return VerifyReport(
        name="decomposition",
        samples=samples,
        violations=int(uncovered.sum() + stray.sum()) + (area_union != area_annulus),
        boundary_skipped=int(edge.sum()),
        scalar_mismatches=mismatches,
        details={"uncovered": int(uncovered.sum()), "stray": int(stray.sum()),
                 "in_annulus": int((keep & in_a).sum()),
                 "area_union": area_union, "area_annulus": area_annulus},
    )


def sandwich_check(profile: ExponentProfile, p: RationalPoint, samples, seed,
                   scalar_samples=500):
    """Interior points of every shifted box satisfy the strict annulus inequalities."""
    annulus, rects = _exact_shapes(p, profile)
    D = _grid([annulus] + rects)
    m = _Masks(annulus, rects, D)
    rng = np.random.default_rng(seed)
    per = [samples // len(rects) + (k < samples % len(rects)) for k in range(len(rects))]
    violations = 0
    mismatches = 0
    for k, size in enumerate(per):
        X = _sample_box(rng, m.rc[k] - m.rh[k], m.rc[k] + m.rh[k], size)
        in_a, _ = m.annulus(X)
        violations += int((~in_a).sum())
        for row in X[: scalar_samples // len(rects)]:
            x = _to_point(row, D)
            if not (rects[k].contains_interior(x) and annulus.contains(x)):
                mismatches += 1
    return VerifyReport("sandwich", samples, violations, 0, mismatches,
                        {"per_box": per})


def cube_check(n, rho, variant="corrected"):
    """Corner certificate as a report; violations count failing corners."""
    cert = cube_corner_certificate(n, rho, variant)
    bad = sum(1 for c in cert.corners if not (c.inf_ok and c.rho_ok))
    return VerifyReport(
        f"cube-{variant}", len(cert.corners), bad,
        details={"inf_ok": cert.inf_ok, "rho_ok": cert.rho_ok,
                 "tight_as_designed": cert.tight_as_designed()},
    )
