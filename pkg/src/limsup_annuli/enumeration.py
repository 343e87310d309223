"""Deterministic streaming of shape families centred at ``p/q``.

Shapes are produced in ``(q, lexicographic p)`` order with
``p in {0, ..., q}**n``.  Shapes that leave ``[0, 1]**n`` are still
emitted, with the ``clipped`` flag.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import product
import json

from sympy import divisors, mobius

from ._numbers import as_fraction, power_bracket
from .errors import InvalidParameterError
from .formulas import ExponentProfile
from .geometry import (
    Ball,
    QuasiAnnulus,
    RationalPoint,
    annulus_family,
    in_unit_cube,
    rect_annulus,
    shape_to_dict,
    shifted_rect,
)

KINDS = ("annulus", "rect-annulus", "quasi-annulus", "shifted-rect", "ball")
#: Largest stream length accepted before any shape is produced.
MAX_COUNT = 10**9


@dataclass(frozen=True)
class FamilySpec:
    """Which shape to place at every rational and with what exponents.

    ``rho`` is required for ``quasi-annulus``; ``j`` and ``sign`` for
    ``shifted-rect``.  ``coprime`` restricts to ``gcd(p, q) = 1``.
    """

    kind: str
    profile: ExponentProfile
    rho: object = None
    j: int | None = None
    sign: int | None = None
    coprime: bool = False

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidParameterError(f"unknown family kind {self.kind!r}")
        if (self.kind == "quasi-annulus") != (self.rho is not None):
            raise InvalidParameterError("rho is required for, and only for, quasi-annulus")
        if self.kind == "shifted-rect":
            if self.j is None or self.sign not in (1, -1):
                raise InvalidParameterError("shifted-rect needs j and sign")
        if self.kind == "annulus" and not self.profile.isotropic():
            raise InvalidParameterError("annulus family needs an isotropic profile")


def _check_range(q_range):
    q_lo, q_hi = q_range
    if not 1 <= q_lo <= q_hi:
        raise InvalidParameterError(f"need 1 <= q_lo <= q_hi, got {q_range}")
    return q_lo, q_hi


def _coprime_count(q, n):
    # numerators p in {0..q}^n with gcd(p_1, ..., p_n, q) = 1
    return sum(mobius(d) * (q // d + 1) ** n for d in divisors(q))


def count(spec: FamilySpec, q_range, limit=MAX_COUNT):
    """Number of shapes :func:`stream` will emit, without enumerating."""
    q_lo, q_hi = _check_range(q_range)
    n = spec.profile.n
    if spec.coprime:
        total = sum(int(_coprime_count(q, n)) for q in range(q_lo, q_hi + 1))
    else:
        total = sum((q + 1) ** n for q in range(q_lo, q_hi + 1))
    if limit is not None and total > limit:
        raise OverflowError(f"{total} shapes exceed the limit {limit}")
    return total


def shape_at(spec: FamilySpec, point: RationalPoint):
    prof = spec.profile
    if spec.kind == "annulus":
        shape = annulus_family(point, prof.tau_psi[0], prof.tau_phi[0])
    elif spec.kind == "rect-annulus":
        shape = rect_annulus(point, prof)
    elif spec.kind == "shifted-rect":
        shape = shifted_rect(point, prof, spec.j, spec.sign)
    else:
        lo, hi = power_bracket(point.q, 1 + as_fraction(prof.tau_psi[0]))
        flags = ("rounded-outward",) if lo != hi else ()
        if spec.kind == "ball":
            shape = Ball(point.center, hi, flags=flags)
        else:
            shape = QuasiAnnulus(point.center, hi, spec.rho, flags=flags)
    if not in_unit_cube(shape):
        shape = replace(shape, flags=shape.flags + ("clipped",))
    return shape


def stream(spec: FamilySpec, q_range, limit=MAX_COUNT):
    """Iterator over shapes in ``(q, lexicographic p)`` order.

    The total is checked against ``limit`` when this is called, before
    the first shape is produced.
    """
    q_lo, q_hi = _check_range(q_range)
    count(spec, q_range, limit)
    return _generate(spec, q_lo, q_hi)


def _generate(spec, q_lo, q_hi):
    n = spec.profile.n
    for q in range(q_lo, q_hi + 1):
        for p in product(range(q + 1), repeat=n):
            point = RationalPoint(p, q)
            if spec.coprime and not point.is_coprime():
                continue
            yield shape_at(spec, point)


def dump_ndjson(spec: FamilySpec, q_range, fh, limit=MAX_COUNT):
    """Write one JSON object per line; returns the number written."""
    k = 0
    for shape in stream(spec, q_range, limit):
        fh.write(json.dumps(shape_to_dict(shape), sort_keys=True, separators=(",", ":")))
        fh.write("\n")
        k += 1
    return k
