"""Closed-form Hausdorff dimensions for limsup sets of annuli.

Approximation functions are power laws ``psi(q) = q**-tau_psi`` (outer
radius ``psi(q)/q``) and ``phi(q) = q**-tau_phi`` (relative thickness), so a
problem is fully described by its exponents.  Rational inputs give exact
:class:`~fractions.Fraction` results; float inputs give floats.

Coordinates are indexed from 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
import math
from typing import Mapping, NamedTuple

from ._numbers import as_number
from .errors import InvalidParameterError, OutsideRegimeError

INNER_SENSITIVE = "inner-sensitive"
INSENSITIVE = "insensitive"
BOUNDARY = "boundary"


def _check_positive(name, x):
    x = as_number(x)
    if isinstance(x, float) and not math.isfinite(x):
        raise InvalidParameterError(f"{name} must be finite, got {x!r}")
    if x <= 0:
        raise InvalidParameterError(f"{name} must be positive, got {x}")
    return x


def _check_dim(n, minimum=1):
    if isinstance(n, bool) or not isinstance(n, int) or n < minimum:
        raise InvalidParameterError(f"dimension must be an integer >= {minimum}, got {n!r}")
    return n


@dataclass(frozen=True)
class ExponentProfile:
    """Dimension ``n`` with per-coordinate decay exponents.

    ``tau_psi[i]`` controls the outer radius in coordinate ``i`` and
    ``tau_phi[i]`` the thickness of the annulus in that coordinate.
    """

    n: int
    tau_psi: tuple
    tau_phi: tuple

    def __post_init__(self):
        _check_dim(self.n)
        tp = tuple(_check_positive("tau_psi", x) for x in self.tau_psi)
        tf = tuple(_check_positive("tau_phi", x) for x in self.tau_phi)
        if len(tp) != self.n or len(tf) != self.n:
            raise InvalidParameterError(
                f"expected {self.n} exponents, got {len(tp)} and {len(tf)}"
            )
        object.__setattr__(self, "tau_psi", tp)
        object.__setattr__(self, "tau_phi", tf)

    @classmethod
    def uniform(cls, n, tau_psi, tau_phi):
        return cls(n, (tau_psi,) * n, (tau_phi,) * n)

    def isotropic(self):
        return len(set(self.tau_psi)) == 1 and len(set(self.tau_phi)) == 1

    def theorem3_valid(self):
        """True when the exponents satisfy ``sum(tau_psi) >= 1``."""
        return sum(self.tau_psi) >= 1

    def tau_k(self, j, k):
        """Cover exponent attached to the pair ``(j, k)``."""
        if k == j:
            return self.tau_psi[j] + self.tau_phi[j]
        return self.tau_psi[k]

    def permuted(self, perm):
        return ExponentProfile(
            self.n,
            tuple(self.tau_psi[i] for i in perm),
            tuple(self.tau_phi[i] for i in perm),
        )


@dataclass(frozen=True)
class DimensionResult:
    """A dimension value together with the branch that produced it.

    ``value`` is None only when no formula applies (see
    :func:`limsup_annuli.mtp.dim_perturbed`).  ``witness_k`` holds, for every
    ``j``, the index minimising the inner expression.
    """

    value: object
    branch: str
    witness_j: int | None = None
    witness_k: tuple | None = None
    tie: bool = False
    within_hypotheses: bool = True
    details: Mapping = field(default_factory=dict, compare=False, hash=False)


def _argmin(values):
    best = min(values)
    idx = values.index(best)
    return idx, best, values.count(best) > 1


def _argmax(values):
    best = max(values)
    idx = values.index(best)
    return idx, best, values.count(best) > 1


def dim_isotropic(n, tau_psi, tau_phi):
    """Dimension of the limsup set of max-norm annuli with equal exponents.

    ``min{(n+1)/(1+tau_psi), (n+1+(n-1)tau_phi)/(1+tau_psi+tau_phi)}``.
    The result is flagged (not refused) when ``tau_psi < 1/n``.

    >>> dim_isotropic(2, 1, 1).value
    Fraction(4, 3)
    """
    _check_dim(n)
    tp = _check_positive("tau_psi", tau_psi)
    tf = _check_positive("tau_phi", tau_phi)
    first = (n + 1) / (1 + tp)
    second = (n + 1 + (n - 1) * tf) / (1 + tp + tf)
    if first < second:
        value, branch = first, "first"
    elif second < first:
        value, branch = second, "second"
    else:
        value, branch = first, BOUNDARY
    return DimensionResult(
        value=value,
        branch=branch,
        tie=branch == BOUNDARY,
        within_hypotheses=tp >= Fraction(1, n),
        details={"first": first, "second": second},
    )


def dim_isotropic_limit(n, tau_psi, limit):
    """Limits of :func:`dim_isotropic` as ``tau_phi -> 0`` or ``tau_phi -> inf``.

    ``limit`` is ``"phi->0"`` or ``"phi->inf"``.  The thickness exponent
    itself must be a positive real, so the endpoints are only reachable
    through this function.
    """
    _check_dim(n)
    tp = _check_positive("tau_psi", tau_psi)
    first = (n + 1) / (1 + tp)
    if limit == "phi->0":
        second = first
    elif limit == "phi->inf":
        second = Fraction(n - 1) if isinstance(first, Fraction) else float(n - 1)
    else:
        raise InvalidParameterError(f"unknown limit {limit!r}")
    if first < second:
        value, branch = first, "first"
    elif second < first:
        value, branch = second, "second"
    else:
        value, branch = first, BOUNDARY
    return DimensionResult(
        value=value,
        branch=branch,
        tie=branch == BOUNDARY,
        within_hypotheses=tp >= Fraction(1, n),
        details={"first": first, "second": second, "limit": limit},
    )


def dim_weighted(profile: ExponentProfile) -> DimensionResult:
    """Dimension of the limsup set of rectangular annuli.

    Evaluates ``max_j min_k (n + 1 + S(j, k)) / (1 + tau_k(j, k))`` where
    ``S`` collects the excess of ``tau_k`` over the other outer exponents and
    over the inner exponent of coordinate ``j``.  Ties resolve to the
    smallest index and set ``tie``.
    """
    if not isinstance(profile, ExponentProfile):
        raise InvalidParameterError("dim_weighted expects an ExponentProfile")
    n = profile.n
    tp, tf = profile.tau_psi, profile.tau_phi
    table = {}
    row_best = []
    row_arg = []
    tie = False
    for j in range(n):
        row = []
        for k in range(n):
            tk = profile.tau_k(j, k)
            excess = sum(tk - tp[i] for i in range(n) if i != j and tp[i] < tk)
            inner = max(0, tk - tp[j] - tf[j])
            val = (n + 1 + excess + inner) / (1 + tk)
            table[(j, k)] = val
            row.append(val)
        k_star, best, row_tie = _argmin(row)
        row_arg.append(k_star)
        row_best.append(best)
        tie = tie or row_tie
    j_star, value, col_tie = _argmax(row_best)
    tie = tie or col_tie
    return DimensionResult(
        value=value,
        branch=f"j={j_star},k={row_arg[j_star]}",
        witness_j=j_star,
        witness_k=tuple(row_arg),
        tie=tie,
        within_hypotheses=profile.theorem3_valid(),
        details={"table": table, "row_min": tuple(row_best)},
    )


def threshold(n):
    """The outer exponent ``2/(n-1)`` above which the thickness stops mattering."""
    if isinstance(n, bool) or not isinstance(n, int):
        raise InvalidParameterError(f"dimension must be an integer, got {n!r}")
    if n == 1:
        raise InvalidParameterError("no threshold in dimension 1")
    _check_dim(n, 2)
    return Fraction(2, n - 1)


def regime(n, tau_psi):
    """Classify ``tau_psi`` against :func:`threshold`.

    ``inner-sensitive`` means the thickness exponent can pull the
    dimension down towards ``n - 1``.
    """
    t = threshold(n)
    tp = _check_positive("tau_psi", tau_psi)
    if tp < t:
        return INNER_SENSITIVE
    if tp > t:
        return INSENSITIVE
    return BOUNDARY


class ExactOrderBound(NamedTuple):
    bound: object
    comparison: object


def exact_order_upper_bound(n, tau_psi, eps):
    """Upper bound for exact-order sets with ``f(q) = 1 - q**-eps``.

    Returns ``(bound, comparison)`` with ``comparison = (n+1)/(1+tau_psi)``;
    the bound is strictly smaller.  Only available below the threshold.
    """
    _check_dim(n, 2)
    tp = _check_positive("tau_psi", tau_psi)
    e = _check_positive("eps", eps)
    if tp >= threshold(n):
        raise OutsideRegimeError(
            f"bound not asserted for tau_psi >= 2/(n-1) = {threshold(n)}"
        )
    bound = (n + 1 + (n - 1) * e) / (1 + tp + e)
    comparison = (n + 1) / (1 + tp)
    if not bound < comparison:
        raise ArithmeticError(f"bound {bound} is not below {comparison}")
    return ExactOrderBound(bound, comparison)
