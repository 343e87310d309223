"""Covering counts behind the upper bound for rectangular annuli.

Each shifted box at level ``q`` is covered by cubes of radius
``q**-(1 + tau_k)`` for a chosen ``k``.  The predicted number of cubes is a
product of ``max{1, q**(excess)}`` factors; the measured number counts
half-open grid cells of side ``2r`` (anchored at 0) that meet the closed box.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import csv
import math

from ._numbers import as_fraction, exact_power, fmt
from .errors import InvalidParameterError
from .formulas import ExponentProfile
from .geometry import RationalPoint, Rect, shifted_rect


def _check_jk(profile, j, k):
    for name, v in (("j", j), ("k", k)):
        if not isinstance(v, int) or not 0 <= v < profile.n:
            raise InvalidParameterError(f"{name}={v!r} out of range for dimension {profile.n}")


def cover_exponent(profile: ExponentProfile, j, k):
    """Exponent ``E`` with predicted count ``q**E`` (for ``q >= 1``)."""
    _check_jk(profile, j, k)
    tk = profile.tau_k(j, k)
    e = max(0, tk - profile.tau_psi[j] - profile.tau_phi[j])
    for i in range(profile.n):
        if i != j:
            e += max(0, tk - profile.tau_psi[i])
    return e


def predicted_cover_count(profile: ExponentProfile, q, j, k):
    """``max{1, q**(tau_k - tau_psi_j - tau_phi_j)} prod_{i != j} max{1, q**(tau_k - tau_psi_i)}``.

    Exact (int or Fraction) when the power is rational, float otherwise.
    """
    e = cover_exponent(profile, j, k)
    exact = exact_power(q, -as_fraction(e))
    if exact is not None:
        return exact.numerator if exact.denominator == 1 else exact
    return float(q) ** float(e)


def cover_radius(profile: ExponentProfile, q, j, k):
    """Cube radius ``q**-(1 + tau_k)``; exact if rational, else float."""
    _check_jk(profile, j, k)
    e = 1 + as_fraction(profile.tau_k(j, k))
    exact = exact_power(q, e)
    return exact if exact is not None else float(q) ** -float(e)


def measured_cover_count(rect: Rect, r):
    """Grid cells of side ``2r`` anchored at 0 meeting the closed box.

    ``prod_i (floor((c_i + h_i)/2r) - floor((c_i - h_i)/2r) + 1)``, i.e.
    cells are half-open ``[2rk, 2r(k+1))`` and an endpoint on a grid line
    belongs to the cell above it.
    """
    if not isinstance(rect, Rect):
        raise InvalidParameterError("measured_cover_count expects a Rect")
    r = as_fraction(r)
    if r <= 0:
        raise InvalidParameterError(f"cell radius must be positive, got {r}")
    side = 2 * r
    total = 1
    for c, h in zip(rect.center, rect.radii):
        total *= math.floor((c + h) / side) - math.floor((c - h) / side) + 1
    return total


@dataclass(frozen=True)
class CoverReport:
    q: int
    j: int
    k: int
    predicted: object
    measured: int
    scale: Fraction

    @property
    def ratio(self):
        return self.measured / self.predicted


def cover_report(profile: ExponentProfile, q, j, k, sign=1, p=None):
    """Compare predicted and measured counts for one shifted box at ``p/q``."""
    p = RationalPoint((0,) * profile.n, q) if p is None else p
    rect = shifted_rect(p, profile, j, sign)
    scale = cover_radius(profile, q, j, k)
    if not isinstance(scale, Fraction):
        raise InvalidParameterError("measured counts need a rational cube radius")
    return CoverReport(q, j, k, predicted_cover_count(profile, q, j, k),
                       measured_cover_count(rect, scale), scale)


def cover_sweep(profile: ExponentProfile, qs, pairs=None):
    """Reports for every ``q`` in ``qs`` and every ``(j, k)`` (default: all)."""
    if pairs is None:
        pairs = [(j, k) for j in range(profile.n) for k in range(profile.n)]
    return [cover_report(profile, q, j, k) for q in qs for j, k in pairs]


def write_cover_csv(reports, fh):
    """CSV ``q, j, k, predicted, measured, ratio, scale_num, scale_den`` (1-based j, k)."""
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["q", "j", "k", "predicted", "measured", "ratio", "scale_num", "scale_den"])
    for rep in reports:
        w.writerow([rep.q, rep.j + 1, rep.k + 1, fmt(rep.predicted), rep.measured,
                    f"{float(rep.ratio):.12g}", rep.scale.numerator, rep.scale.denominator])


def critical_exponent(profile: ExponentProfile):
    """Critical exponent of the natural covers and its per-``(j, k)`` table.

    For each pair the Hausdorff ``s``-sum over ``q`` has general term
    ``q**(n + E(j, k) - (1 + tau_k) s)``; it stops diverging at the ``s``
    making that exponent ``-1``.  The cheapest cover (min over ``k``) is
    taken per ``j`` and the worst ``j`` (max) overall.

    Returns ``(value, table)`` with ``table[(j, k)] = s``.
    """
    n = profile.n
    table = {}
    for j in range(n):
        for k in range(n):
            slope = 1 + profile.tau_k(j, k)
            # n + E - slope*s = -1
            table[(j, k)] = (n + 1 + cover_exponent(profile, j, k)) / slope
    value = max(min(table[(j, k)] for k in range(n)) for j in range(n))
    return value, table
