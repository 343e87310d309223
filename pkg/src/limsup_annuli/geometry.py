"""Exact rational geometry of balls, rectangles and annuli centred at rationals.

Shapes are immutable and hold :class:`~fractions.Fraction` parameters.
Open regions (balls, annuli) use strict inequalities; rectangles are
closed.  Radii that are irrational (non-integer exponents) are rounded to
dyadic rationals, outward for containing regions and inward for contained
ones, and the shape records this in ``flags``.  Exact membership against
the unrounded radii is available through :func:`in_rect_annulus`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
import json
import math
from math import gcd

import sympy

from ._numbers import (
    DEFAULT_BITS,
    ESCALATION,
    as_fraction,
    decide,
    fmt,
    greater,
    less,
    power_bracket,
    root_bracket,
    rpow_compare,
)
from .errors import InvalidParameterError
from .formulas import ExponentProfile

INF = math.inf


# --------------------------------------------------------------------------
# points

@dataclass(frozen=True)
class RationalPoint:
    """The rational ``p/q`` with ``0 <= p_i <= q``."""

    p: tuple
    q: int

    def __post_init__(self):
        if isinstance(self.q, bool) or not isinstance(self.q, int) or self.q < 1:
            raise InvalidParameterError(f"q must be a positive integer, got {self.q!r}")
        p = tuple(int(v) for v in self.p)
        if not p:
            raise InvalidParameterError("p must have at least one coordinate")
        if any(v < 0 or v > self.q for v in p):
            raise InvalidParameterError(f"need 0 <= p_i <= q, got p={p}, q={self.q}")
        object.__setattr__(self, "p", p)

    @property
    def n(self):
        return len(self.p)

    @property
    def center(self):
        return tuple(Fraction(v, self.q) for v in self.p)

    def is_coprime(self):
        g = self.q
        for v in self.p:
            g = gcd(g, v)
        return g == 1


# --------------------------------------------------------------------------
# shapes

def _vec(v):
    return tuple(as_fraction(x) for x in v)


def _norm_value(rho):
    if rho in (INF, "inf", "oo"):
        return INF
    rho = as_fraction(rho)
    if rho <= 0:
        raise InvalidParameterError(f"norm exponent must be positive, got {rho}")
    return rho


@dataclass(frozen=True)
class Ball:
    """Open ball ``{x : ||x - center||_norm < radius}``."""

    center: tuple
    radius: Fraction
    norm: object = INF
    flags: tuple = ()
    kind = "ball"

    def __post_init__(self):
        object.__setattr__(self, "center", _vec(self.center))
        object.__setattr__(self, "radius", as_fraction(self.radius))
        object.__setattr__(self, "norm", _norm_value(self.norm))
        object.__setattr__(self, "flags", tuple(self.flags))
        if self.radius < 0:
            raise InvalidParameterError(f"radius must be nonnegative, got {self.radius}")

    @property
    def n(self):
        return len(self.center)

    def bbox(self):
        return (tuple(c - self.radius for c in self.center),
                tuple(c + self.radius for c in self.center))

    def contains(self, x):
        d = _offsets(self, x)
        return _norm_cmp(d, self.norm, self.radius) < 0


@dataclass(frozen=True)
class Rect:
    """Closed axis-parallel box ``prod [c_i - r_i, c_i + r_i]``."""

    center: tuple
    radii: tuple
    flags: tuple = ()
    kind = "rect"

    def __post_init__(self):
        object.__setattr__(self, "center", _vec(self.center))
        object.__setattr__(self, "radii", _vec(self.radii))
        object.__setattr__(self, "flags", tuple(self.flags))
        if len(self.radii) != len(self.center):
            raise InvalidParameterError("center and radii differ in length")
        if any(r < 0 for r in self.radii):
            raise InvalidParameterError(f"radii must be nonnegative, got {self.radii}")

    @property
    def n(self):
        return len(self.center)

    def bbox(self):
        return (tuple(c - r for c, r in zip(self.center, self.radii)),
                tuple(c + r for c, r in zip(self.center, self.radii)))

    def contains(self, x):
        d = _offsets(self, x)
        return all(di <= r for di, r in zip(d, self.radii))

    def contains_interior(self, x):
        d = _offsets(self, x)
        return all(di < r for di, r in zip(d, self.radii))

    def volume(self):
        v = Fraction(1)
        for r in self.radii:
            v *= 2 * r
        return v


@dataclass(frozen=True)
class Annulus:
    """Max-norm annulus ``r_in < ||x - center|| < r_out``."""

    center: tuple
    r_out: Fraction
    r_in: Fraction
    flags: tuple = ()
    kind = "annulus"

    def __post_init__(self):
        object.__setattr__(self, "center", _vec(self.center))
        object.__setattr__(self, "r_out", as_fraction(self.r_out))
        object.__setattr__(self, "r_in", as_fraction(self.r_in))
        object.__setattr__(self, "flags", tuple(self.flags))
        if not 0 <= self.r_in < self.r_out:
            raise InvalidParameterError(f"need 0 <= r_in < r_out, got {self.r_in}, {self.r_out}")

    @property
    def n(self):
        return len(self.center)

    def bbox(self):
        return (tuple(c - self.r_out for c in self.center),
                tuple(c + self.r_out for c in self.center))

    def contains(self, x):
        m = max(_offsets(self, x))
        return self.r_in < m < self.r_out


@dataclass(frozen=True)
class RectAnnulus:
    """Open box of half-widths ``outer_radii`` minus the closed inner box.

    A point belongs when every coordinate offset is below its outer radius
    and at least one exceeds its inner radius.
    """

    center: tuple
    outer_radii: tuple
    inner_radii: tuple
    flags: tuple = ()
    kind = "rect-annulus"

    def __post_init__(self):
        object.__setattr__(self, "center", _vec(self.center))
        object.__setattr__(self, "outer_radii", _vec(self.outer_radii))
        object.__setattr__(self, "inner_radii", _vec(self.inner_radii))
        object.__setattr__(self, "flags", tuple(self.flags))
        n = len(self.center)
        if len(self.outer_radii) != n or len(self.inner_radii) != n:
            raise InvalidParameterError("center and radii differ in length")
        if any(not 0 <= r < R for r, R in zip(self.inner_radii, self.outer_radii)):
            raise InvalidParameterError("need 0 <= inner < outer in every coordinate")

    @property
    def n(self):
        return len(self.center)

    def bbox(self):
        return (tuple(c - r for c, r in zip(self.center, self.outer_radii)),
                tuple(c + r for c, r in zip(self.center, self.outer_radii)))

    def contains(self, x):
        d = _offsets(self, x)
        return (all(di < R for di, R in zip(d, self.outer_radii))
                and any(di > r for di, r in zip(d, self.inner_radii)))

    def volume(self):
        outer = inner = Fraction(1)
        for R, r in zip(self.outer_radii, self.inner_radii):
            outer *= 2 * R
            inner *= 2 * r
        return outer - inner


@dataclass(frozen=True)
class QuasiAnnulus:
    """``B_inf(center, r) minus the closed B_rho(center, r)``."""

    center: tuple
    r: Fraction
    inner_norm: object
    flags: tuple = ()
    kind = "quasi-annulus"

    def __post_init__(self):
        object.__setattr__(self, "center", _vec(self.center))
        object.__setattr__(self, "r", as_fraction(self.r))
        object.__setattr__(self, "inner_norm", _norm_value(self.inner_norm))
        object.__setattr__(self, "flags", tuple(self.flags))
        if self.inner_norm == INF:
            raise InvalidParameterError("inner norm of a quasi-annulus must be finite")
        if self.r <= 0:
            raise InvalidParameterError(f"radius must be positive, got {self.r}")

    @property
    def n(self):
        return len(self.center)

    def bbox(self):
        return (tuple(c - self.r for c in self.center),
                tuple(c + self.r for c in self.center))

    def contains(self, x):
        d = _offsets(self, x)
        return max(d) < self.r and _norm_cmp(d, self.inner_norm, self.r) > 0


SHAPES = {cls.kind: cls for cls in (Ball, Rect, Annulus, RectAnnulus, QuasiAnnulus)}


def _offsets(shape, x):
    x = _vec(x)
    if len(x) != shape.n:
        raise InvalidParameterError(f"point has dimension {len(x)}, shape has {shape.n}")
    return tuple(abs(xi - ci) for xi, ci in zip(x, shape.center))


def _norm_cmp(d, rho, r):
    """Sign of ``||d||_rho - r``; overlapping enclosures count as equality."""
    if rho == INF:
        m = max(d)
        return (m > r) - (m < r)
    for bits in ESCALATION:
        c = rpow_compare(d, rho, r, bits)
        if c is not None:
            return c
    return 0


def contains(shape, x):
    """True iff ``x`` lies in ``shape`` (open sets strict, rectangles closed)."""
    return shape.contains(x)


def in_unit_cube(shape):
    lo, hi = shape.bbox()
    return all(v >= 0 for v in lo) and all(v <= 1 for v in hi)


# --------------------------------------------------------------------------
# families built from exponents

def _radius_brackets(q, tau_psi, tau_phi, bits):
    """Enclosures of ``psi(q)/q`` and ``(1 - phi(q)) psi(q)/q``."""
    e_out = 1 + as_fraction(tau_psi)
    outer = power_bracket(q, e_out, bits)
    cut = power_bracket(q, e_out + as_fraction(tau_phi), bits)
    inner = (outer[0] - cut[1], outer[1] - cut[0])
    return outer, inner


def annulus_family(p: RationalPoint, tau_psi, tau_phi, bits=DEFAULT_BITS):
    """Max-norm annulus at ``p/q`` with ``r_out = q**-(1+tau_psi)``.

    ``r_in = (1 - q**-tau_phi) r_out``.  When either radius is irrational
    the outer one is rounded up and the inner one down, so the returned
    shape contains the true annulus; the flag ``rounded-outward`` says so.
    ``q = 1`` makes ``r_in = 0`` and is flagged ``degenerate``.
    """
    if not isinstance(p, RationalPoint):
        raise InvalidParameterError("annulus_family expects a RationalPoint")
    outer, inner = _radius_brackets(p.q, tau_psi, tau_phi, bits)
    flags = []
    if outer[0] != outer[1] or inner[0] != inner[1]:
        flags.append("rounded-outward")
    r_in = max(inner[0], Fraction(0))
    if r_in == 0:
        flags.append("degenerate")
    return Annulus(p.center, outer[1], r_in, flags=tuple(flags))


def rect_annulus(p: RationalPoint, profile: ExponentProfile, bits=DEFAULT_BITS):
    """Rectangular annulus at ``p/q``; irrational radii rounded outward.

    A zero inner radius (``q = 1``) is flagged ``degenerate``.
    """
    _check_point(p, profile)
    outer, inner, rounded = [], [], False
    for i in range(profile.n):
        o, r = _radius_brackets(p.q, profile.tau_psi[i], profile.tau_phi[i], bits)
        rounded = rounded or o[0] != o[1] or r[0] != r[1]
        outer.append(o[1])
        inner.append(max(r[0], Fraction(0)))
    flags = ("rounded-outward",) if rounded else ()
    if any(r == 0 for r in inner):
        flags += ("degenerate",)
    return RectAnnulus(p.center, outer, inner, flags=flags)


def _check_point(p, profile):
    if not isinstance(p, RationalPoint):
        raise InvalidParameterError("expected a RationalPoint")
    if p.n != profile.n:
        raise InvalidParameterError(f"point has dimension {p.n}, profile has {profile.n}")


def _check_index(j, n):
    if isinstance(j, bool) or not isinstance(j, int) or not 0 <= j < n:
        raise InvalidParameterError(f"index {j!r} out of range for dimension {n}")


def shifted_rect(p: RationalPoint, profile: ExponentProfile, j, sign, bits=DEFAULT_BITS):
    """Closed box covering one of the two slabs of the annulus in coordinate ``j``.

    In coordinate ``j`` the box is the slab of signed offsets
    ``[(1 - phi_j) psi_j / q, psi_j / q]`` (mirrored for ``sign=-1``); in
    every other coordinate it has half-width ``psi_i / q``.  Irrational
    endpoints are rounded inward.
    """
    _check_point(p, profile)
    _check_index(j, profile.n)
    if sign not in (1, -1):
        raise InvalidParameterError(f"sign must be +1 or -1, got {sign!r}")
    center = list(p.center)
    radii = []
    rounded = False
    for i in range(profile.n):
        o, r = _radius_brackets(p.q, profile.tau_psi[i], profile.tau_phi[i], bits)
        rounded = rounded or o[0] != o[1] or (i == j and r[0] != r[1])
        if i == j:
            lo, hi = r[1], o[0]
            center[i] += sign * (lo + hi) / 2
            radii.append((hi - lo) / 2)
        else:
            radii.append(o[0])
    flags = ("rounded-inward",) if rounded else ()
    return Rect(center, radii, flags=flags)


def rect_annulus_decompose(p: RationalPoint, profile: ExponentProfile, bits=DEFAULT_BITS):
    """The ``2n`` shifted boxes, ordered ``(0,+), (0,-), (1,+), ...``.

    Their union is the rectangular annulus up to boundary points.
    """
    return [shifted_rect(p, profile, j, s, bits)
            for j in range(profile.n) for s in (1, -1)]


def in_rect_annulus(x, p: RationalPoint, profile: ExponentProfile):
    """Exact membership of ``x`` in the unrounded rectangular annulus at ``p/q``.

    Radii are enclosed at increasing precision until every comparison
    is settled; a point exactly on an irrational boundary raises
    :class:`~limsup_annuli.errors.IndeterminateError`.
    """
    _check_point(p, profile)
    x = _vec(x)
    if len(x) != profile.n:
        raise InvalidParameterError("dimension mismatch")
    d = [abs(xi - ci) for xi, ci in zip(x, p.center)]

    def verdict(bits):
        outer_ok, inner_hit = True, False
        for i in range(profile.n):
            o, r = _radius_brackets(p.q, profile.tau_psi[i], profile.tau_phi[i], bits)
            below = less(d[i], o)
            if below is False:
                return False
            if below is None:
                outer_ok = None
            above = greater(d[i], r)
            if above:
                inner_hit = True
            elif above is None and inner_hit is False:
                inner_hit = None
        if outer_ok is None:
            return None
        return inner_hit

    return decide(verdict)


def membership_scan(x, profile: ExponentProfile, Q, coprime=False):
    """All ``(p, q)`` with ``q <= Q`` whose rectangular annulus contains ``x``.

    Only the (at most two per coordinate) numerators with
    ``|q x_i - p_i| < 1`` can qualify, since every outer radius is at
    most ``1/q``.  Output is ordered by ``q`` then lexicographically by ``p``.
    """
    x = _vec(x)
    if len(x) != profile.n:
        raise InvalidParameterError("dimension mismatch")
    out = []
    for q in range(1, Q + 1):
        choices = []
        for xi in x:
            t = xi * q
            f = math.floor(t)
            cands = [f] if t == f else [f, f + 1]
            choices.append([c for c in cands if 0 <= c <= q])
        for pv in product(*choices):
            pt = RationalPoint(pv, q)
            if coprime and not pt.is_coprime():
                continue
            if in_rect_annulus(x, pt, profile):
                out.append(pt)
    return out


# --------------------------------------------------------------------------
# inscribed cube in B_inf minus B_rho

def cube_factors(n, rho, variant="corrected"):
    """Exact (sympy) offset and half-width factors of the inscribed cube.

    ``corrected``: offset ``(1 + n**(-1/rho))/2``, half-width
    ``(1 - n**(-1/rho))/2``.  ``uncorrected``: offset
    ``(n**(1/rho) + n**(-1/rho))/2``, half-width ``n**(1/rho) - n**(-1/rho)``,
    kept as a regression case because it does not fit inside the max-norm
    ball.  Both are multiples of the radius.
    """
    rho_s = sympy.Rational(str(as_fraction(rho)))
    s = sympy.Integer(n) ** (-1 / rho_s)
    if variant == "corrected":
        return (1 + s) / 2, (1 - s) / 2
    if variant == "uncorrected":
        big = sympy.Integer(n) ** (1 / rho_s)
        return (big + s) / 2, big - s
    raise InvalidParameterError(f"unknown variant {variant!r}")


@dataclass(frozen=True)
class CornerCheck:
    signs: tuple
    inf_norm: object
    rho_norm_pow: object
    inf_ok: bool
    rho_ok: bool
    inf_tight: bool
    rho_tight: bool


@dataclass(frozen=True)
class CubeCertificate:
    n: int
    rho: Fraction
    variant: str
    corners: tuple

    @property
    def inf_ok(self):
        return all(c.inf_ok for c in self.corners)

    @property
    def rho_ok(self):
        return all(c.rho_ok for c in self.corners)

    @property
    def passed(self):
        return self.inf_ok and self.rho_ok

    def tight_as_designed(self):
        """Max-norm equality exactly on corners with a ``+`` coordinate,
        rho-norm equality exactly on the all-``-`` corner."""
        return all(
            c.inf_tight == any(s > 0 for s in c.signs)
            and c.rho_tight == all(s < 0 for s in c.signs)
            for c in self.corners
        )


def _sign_of(expr):
    expr = sympy.simplify(expr)
    if expr == 0:
        return 0
    return 1 if bool(expr > 0) else -1


def cube_corner_certificate(n, rho, variant="corrected"):
    """Check all ``2**n`` corners of the cube around ``+offset * (1,...,1)``.

    Works at unit radius (both conditions scale).  A corner passes when
    its max-norm is at most 1 and its rho-norm at least 1; the comparison
    is exact in sympy, so equalities are detected as such.
    """
    rho = as_fraction(rho)
    if n < 1 or rho <= 0:
        raise InvalidParameterError("need n >= 1 and rho > 0")
    off, rad = cube_factors(n, rho, variant)
    rho_s = sympy.Rational(str(rho))
    corners = []
    for signs in product((1, -1), repeat=n):
        coords = [sympy.simplify(off + s * rad) for s in signs]
        inf_norm = sympy.Max(*[sympy.Abs(c) for c in coords])
        rho_pow = sympy.simplify(sum(sympy.Abs(c) ** rho_s for c in coords))
        si = _sign_of(inf_norm - 1)
        sr = _sign_of(rho_pow - 1)
        corners.append(CornerCheck(signs, inf_norm, rho_pow,
                                   si <= 0, sr >= 0, si == 0, sr == 0))
    return CubeCertificate(n, rho, variant, tuple(corners))


def inscribed_cube(p: RationalPoint, r, rho, signs=None, bits=DEFAULT_BITS):
    """Rational max-norm ball inside ``B_inf(p/q, r) minus B_rho(p/q, r)``.

    Per coordinate the cube spans signed offsets ``[r*s, r]`` with ``s``
    a rational upper bound for ``n**(-1/rho)``, so it sits inside the
    exact corrected cube.  ``signs`` picks the side in each coordinate;
    by default ``+1`` is used wherever the cube stays in ``[0, 1]``.
    """
    if not isinstance(p, RationalPoint):
        raise InvalidParameterError("inscribed_cube expects a RationalPoint")
    r = as_fraction(r)
    if r <= 0:
        raise InvalidParameterError(f"radius must be positive, got {r}")
    rho = _norm_value(rho)
    if rho == INF:
        raise InvalidParameterError("rho must be finite; the cube vanishes as rho -> inf")
    n = p.n
    s_lo, s_hi = root_bracket(n, rho, bits)
    offset = r * (1 + s_hi) / 2
    half = r * (1 - s_hi) / 2
    c = p.center

    def fits(i, sgn):
        m = c[i] + sgn * offset
        return m - half >= 0 and m + half <= 1

    if signs is None:
        chosen = []
        for i in range(n):
            options = [sgn for sgn in (1, -1) if fits(i, sgn)]
            if not options:
                raise InvalidParameterError(f"cube exits [0,1] in coordinate {i} for both signs")
            chosen.append(options[0])
        signs = tuple(chosen)
    else:
        signs = tuple(int(sgn) for sgn in signs)
        if len(signs) != n or any(sgn not in (1, -1) for sgn in signs):
            raise InvalidParameterError(f"signs must be {n} values in {{+1, -1}}")
        bad = [i for i in range(n) if not fits(i, signs[i])]
        if bad:
            raise InvalidParameterError(f"cube exits [0,1] in coordinates {bad}")
    flags = ("rounded-inward",) if s_lo != s_hi else ()
    center = tuple(ci + sgn * offset for ci, sgn in zip(c, signs))
    return Ball(center, half, INF, flags=flags)


# --------------------------------------------------------------------------
# volumes

def rect_intersection(rects):
    """Intersection of closed boxes, or None if it is empty or degenerate."""
    lo = [max(r.center[i] - r.radii[i] for r in rects) for i in range(rects[0].n)]
    hi = [min(r.center[i] + r.radii[i] for r in rects) for i in range(rects[0].n)]
    if any(a >= b for a, b in zip(lo, hi)):
        return None
    return Rect([(a + b) / 2 for a, b in zip(lo, hi)], [(b - a) / 2 for a, b in zip(lo, hi)])


def union_volume(rects):
    """Exact Lebesgue measure of a union of boxes by inclusion-exclusion."""
    total = Fraction(0)
    for size in range(1, len(rects) + 1):
        sgn = 1 if size % 2 else -1
        for group in combinations(rects, size):
            inter = rect_intersection(group)
            if inter is not None:
                total += sgn * inter.volume()
    return total


# --------------------------------------------------------------------------
# JSON

def _norm_json(rho):
    return "inf" if rho == INF else fmt(rho)


def shape_to_dict(shape):
    """Plain dict with rationals as ``"num/den"`` strings."""
    d = {"kind": shape.kind, "center": [fmt(c) for c in shape.center],
         "meta": {"flags": list(shape.flags)}}
    if isinstance(shape, Ball):
        d.update(radius=fmt(shape.radius), norm=_norm_json(shape.norm))
    elif isinstance(shape, Rect):
        d.update(radii=[fmt(r) for r in shape.radii], norm="inf")
    elif isinstance(shape, Annulus):
        d.update(radii=[fmt(shape.r_out), fmt(shape.r_in)], norm="inf")
    elif isinstance(shape, RectAnnulus):
        d.update(radii=[[fmt(r) for r in shape.outer_radii],
                        [fmt(r) for r in shape.inner_radii]], norm="inf")
    elif isinstance(shape, QuasiAnnulus):
        d.update(radius=fmt(shape.r), norm=_norm_json(shape.inner_norm))
    else:
        raise InvalidParameterError(f"not a shape: {shape!r}")
    return d


def shape_from_dict(d):
    kind = d["kind"]
    center = [Fraction(c) for c in d["center"]]
    flags = tuple(d.get("meta", {}).get("flags", ()))
    norm = INF if d.get("norm", "inf") == "inf" else Fraction(d["norm"])
    if kind == "ball":
        return Ball(center, Fraction(d["radius"]), norm, flags=flags)
    if kind == "rect":
        return Rect(center, [Fraction(r) for r in d["radii"]], flags=flags)
    if kind == "annulus":
        r_out, r_in = (Fraction(r) for r in d["radii"])
        return Annulus(center, r_out, r_in, flags=flags)
    if kind == "rect-annulus":
        outer, inner = d["radii"]
        return RectAnnulus(center, [Fraction(r) for r in outer],
                           [Fraction(r) for r in inner], flags=flags)
    if kind == "quasi-annulus":
        return QuasiAnnulus(center, Fraction(d["radius"]), norm, flags=flags)
    raise InvalidParameterError(f"unknown shape kind {kind!r}")


def shape_to_json(shape):
    return json.dumps(shape_to_dict(shape), sort_keys=True, separators=(",", ":"))


def shape_from_json(text):
    return shape_from_dict(json.loads(text))
