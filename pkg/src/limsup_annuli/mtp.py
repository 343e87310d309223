"""Mass-transference lower bounds and the conditions that feed them.

The central object is the rectangles-to-rectangles lower bound: given
Ahlfors exponents ``delta``, full-measure exponents ``a`` and stretch
exponents ``t``, the Hausdorff dimension of the shrunk limsup set is at
least a minimum over the candidate values ``A = {a_i + t_i}``.  Choosing
``a`` and ``t`` from an exponent profile (:func:`select_exponents`) turns
that bound into the rectangular-annulus dimension.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import csv
import io
import warnings

import numpy as np

from ._numbers import as_number, fmt, power_bracket
from .errors import (
    HypothesisWarning,
    InvalidParameterError,
    SelectionUndefinedError,
    UnsupportedDescriptorError,
)
from .formulas import DimensionResult, ExponentProfile, dim_weighted

ALL_LARGE = "all-large"
ELL_SPLIT = "ell-split"
SUM_ONE = "sum-one"


@dataclass(frozen=True)
class MtpInstance:
    """Inputs of the rectangles-to-rectangles bound.

    ``kappa`` appears in the bound without further definition in the
    source result; 0 reproduces the classical weighted values and is the
    default.
    """

    n: int
    delta: tuple
    a: tuple
    t: tuple
    kappa: object = 0

    def __post_init__(self):
        vecs = {}
        for name in ("delta", "a", "t"):
            v = tuple(as_number(x) for x in getattr(self, name))
            if len(v) != self.n:
                raise InvalidParameterError(f"{name} needs {self.n} entries, got {len(v)}")
            vecs[name] = v
        if any(x <= 0 for x in vecs["delta"]):
            raise InvalidParameterError("delta entries must be positive")
        if any(x <= 0 for x in vecs["a"]):
            raise InvalidParameterError("a entries must be positive")
        if any(x < 0 for x in vecs["t"]):
            raise InvalidParameterError("t entries must be nonnegative")
        kappa = as_number(self.kappa)
        if not 0 <= kappa <= 1:
            raise InvalidParameterError(f"kappa must lie in [0, 1], got {kappa}")
        for name, v in vecs.items():
            object.__setattr__(self, name, v)
        object.__setattr__(self, "kappa", kappa)

    def candidates(self):
        return sorted(set(ai + ti for ai, ti in zip(self.a, self.t)))


def partition(inst: MtpInstance, A):
    """Index sets ``(K1, K2, K3)`` at the candidate value ``A``."""
    k1 = tuple(j for j in range(inst.n) if inst.a[j] >= A)
    k2 = tuple(j for j in range(inst.n) if inst.a[j] + inst.t[j] <= A and j not in k1)
    k3 = tuple(j for j in range(inst.n) if j not in k1 and j not in k2)
    return k1, k2, k3


def bound_at(inst: MtpInstance, A):
    k1, k2, k3 = partition(inst, A)
    d, a, t, kappa = inst.delta, inst.a, inst.t, inst.kappa
    full = sum(d[j] for j in k1) + sum(d[j] for j in k2)
    ratio = (sum(a[j] * d[j] for j in k3) - sum(t[j] * d[j] for j in k2)) / A
    return full + kappa * sum(d[j] for j in k3) + (1 - kappa) * ratio


def ww_lower_bound(inst: MtpInstance) -> DimensionResult:
    """Minimum of the rectangles-to-rectangles bound over ``A = {a_i + t_i}``.

    Equal candidates are collapsed; the smallest minimising ``A`` wins.
    ``details`` carries ``A_star``, the partition there and the full table.
    """
    table = {A: bound_at(inst, A) for A in inst.candidates()}
    values = list(table.values())
    best = min(values)
    a_star = next(A for A, v in table.items() if v == best)
    k1, k2, k3 = partition(inst, a_star)
    a_index = next(i for i in range(inst.n) if inst.a[i] + inst.t[i] == a_star)
    return DimensionResult(
        value=best,
        branch=f"A={fmt(a_star)}",
        tie=values.count(best) > 1,
        details={"A_star": a_star, "A_index": a_index, "K1": k1, "K2": k2, "K3": k3,
                 "table": table},
    )


def rynne_oracle(n, tau):
    """Weighted simultaneous-approximation dimension, used as a cross-check.

    ``min_j (n + 1 + sum_{tau_i < tau_j} (tau_j - tau_i)) / (1 + tau_j)``.
    """
    tau = tuple(as_number(x) for x in tau)
    if len(tau) != n:
        raise InvalidParameterError(f"expected {n} exponents, got {len(tau)}")
    if any(x <= 0 for x in tau):
        raise InvalidParameterError("exponents must be positive")
    if sum(tau) < 1:
        warnings.warn(f"sum of exponents {sum(tau)} < 1", HypothesisWarning, stacklevel=2)
    return min(
        (n + 1 + sum(tj - ti for ti in tau if ti < tj)) / (1 + tj) for tj in tau
    )


# --------------------------------------------------------------------------
# exponent selection

@dataclass(frozen=True)
class ExponentSelection:
    """Weights ``b`` (summing to 1) with ``a = 1 + b`` and stretches ``t``.

    ``ell`` is the number of leading (largest) exponents whose weights are
    levelled in the ``ell-split`` case, otherwise None.  ``order`` is the
    descending sort permutation used internally; vectors are reported in
    the caller's coordinate order.
    """

    b: tuple
    a: tuple
    t: tuple
    case_tag: str
    ell: int | None
    order: tuple
    j: int | None = None

    def instance(self, delta=None, kappa=0):
        n = len(self.b)
        delta = (1,) * n if delta is None else delta
        return MtpInstance(n, delta, self.a, self.t, kappa)


def _is_one(x):
    return x == 1 if isinstance(x, Fraction) else abs(x - 1) <= 1e-12


def split_weights(tau_psi):
    """Weights ``b`` realising a full-measure rectangle family.

    If every exponent is at least ``1/n`` all weights are ``1/n``.
    Otherwise, with the exponents sorted in decreasing order, the ``ell``
    largest share ``(1 - sum of the rest)/ell`` and the rest keep their own
    exponent, ``ell`` being the largest index with a strict excess.  When
    the exponents sum to exactly 1 no such ``ell`` exists and ``b`` is the
    exponent vector itself.

    Returns ``(b, case_tag, ell, order)``.
    """
    tau = tuple(as_number(x) for x in tau_psi)
    n = len(tau)
    if sum(tau) < 1:
        raise SelectionUndefinedError(f"exponents sum to {sum(tau)} < 1")
    order = tuple(sorted(range(n), key=lambda i: tau[i], reverse=True))
    s = [tau[i] for i in order]
    if all(x >= Fraction(1, n) for x in s):
        return (Fraction(1, n),) * n, ALL_LARGE, None, order
    ell = None
    for l in range(1, n):
        if s[l - 1] > (1 - sum(s[l:])) / l:
            ell = l
    if ell is None:
        if not _is_one(sum(s)):
            raise SelectionUndefinedError(f"no admissible split for {tau}")
        sorted_b, tag = list(s), SUM_ONE
    else:
        level = (1 - sum(s[ell:])) / ell
        sorted_b, tag = [level] * ell + s[ell:], ELL_SPLIT
    b = [None] * n
    for pos, i in enumerate(order):
        b[i] = sorted_b[pos]
    return tuple(b), tag, ell, order


def select_exponents(profile: ExponentProfile, j) -> ExponentSelection:
    """Exponents ``(a, t)`` for the shifted rectangles in coordinate ``j``.

    ``t_i = tau_psi_i - b_i`` except ``t_j = tau_psi_j + tau_phi_j - b_j``.
    """
    if not isinstance(j, int) or not 0 <= j < profile.n:
        raise InvalidParameterError(f"index {j!r} out of range for dimension {profile.n}")
    if not profile.theorem3_valid():
        raise SelectionUndefinedError("selection needs sum(tau_psi) >= 1")
    b, tag, ell, order = split_weights(profile.tau_psi)
    t = [profile.tau_psi[i] - b[i] for i in range(profile.n)]
    t[j] = profile.tau_psi[j] + profile.tau_phi[j] - b[j]
    if not _is_one(sum(b)):
        raise SelectionUndefinedError(f"weights sum to {sum(b)}, not 1")
    if any(x < 0 for x in t):
        raise SelectionUndefinedError(f"negative stretch exponent in {t}")
    return ExponentSelection(b, tuple(1 + x for x in b), tuple(t), tag, ell, order, j)


def weighted_instance(tau_psi, kappa=0):
    """Instance for plain weighted approximation: ``a = 1 + b``, ``t = tau - b``."""
    b, _, _, _ = split_weights(tau_psi)
    tau = tuple(as_number(x) for x in tau_psi)
    n = len(tau)
    return MtpInstance(n, (1,) * n, tuple(1 + x for x in b),
                       tuple(ti - bi for ti, bi in zip(tau, b)), kappa)


def dim_mtp(profile: ExponentProfile, kappa=0) -> DimensionResult:
    """``max_j`` of the lower bound over the per-coordinate selections."""
    results = [ww_lower_bound(select_exponents(profile, j).instance(kappa=kappa))
               for j in range(profile.n)]
    values = [r.value for r in results]
    best = max(values)
    j_star = values.index(best)
    return DimensionResult(
        value=best,
        branch=f"j={j_star},{results[j_star].branch}",
        witness_j=j_star,
        tie=values.count(best) > 1,
        within_hypotheses=profile.theorem3_valid(),
        details={"A_star": results[j_star].details["A_star"], "per_j": tuple(values)},
    )


# --------------------------------------------------------------------------
# shifts and series

def shifted_rect_gamma(profile: ExponentProfile, j, q, phi_limit=False):
    """Centre shift ``(2 - phi_j(q)) psi_j(q) / (2q)`` in coordinate ``j``.

    ``phi_limit=True`` evaluates the ``tau_phi -> 0`` limit ``phi_j = 1``.
    Irrational values are returned as the midpoint of a 96-bit enclosure.
    """
    if not isinstance(j, int) or not 0 <= j < profile.n:
        raise InvalidParameterError(f"index {j!r} out of range for dimension {profile.n}")
    if q < 1:
        raise InvalidParameterError(f"q must be positive, got {q}")
    e = 1 + Fraction(profile.tau_psi[j])
    lo, hi = power_bracket(q, e)
    outer = (lo + hi) / 2
    if phi_limit:
        cut = outer
    else:
        lo, hi = power_bracket(q, e + Fraction(profile.tau_phi[j]))
        cut = (lo + hi) / 2
    gamma = [Fraction(0)] * profile.n
    gamma[j] = (2 * outer - cut) / 2
    return tuple(gamma)


@dataclass(frozen=True)
class PowerLaw:
    """Decay descriptor ``|gamma(q)| <= C * q**-g``."""

    C: object
    g: object

    def __post_init__(self):
        object.__setattr__(self, "C", as_number(self.C))
        object.__setattr__(self, "g", as_number(self.g))
        if self.C <= 0:
            raise InvalidParameterError("C must be positive")


def _as_power_law(desc):
    if isinstance(desc, PowerLaw):
        return desc
    if isinstance(desc, tuple) and len(desc) == 2:
        return PowerLaw(*desc)
    raise UnsupportedDescriptorError(f"only power-law decay is supported, got {desc!r}")


def check_shift_condition(gamma_decay, exponent_req):
    """Whether ``limsup |gamma(q)| q**exponent_req`` is finite.

    For ``|gamma| <= C q**-g`` this holds iff ``g >= exponent_req``.
    """
    law = _as_power_law(gamma_decay)
    return law.g >= as_number(exponent_req)


def gamma_decay(profile: ExponentProfile, j):
    """Power law dominating the centre shift of coordinate ``j``."""
    return PowerLaw(1, 1 + profile.tau_psi[j])


def classify_hf_series(n, tau_psi, s):
    """Convergence of ``sum q**n (psi(q)/q)**s`` for ``psi(q) = q**-tau_psi``.

    The general term is ``q**(n - (1 + tau_psi) s)``; the series diverges
    iff that exponent is at least ``-1``.
    """
    s = as_number(s)
    if s <= 0:
        raise InvalidParameterError(f"s must be positive, got {s}")
    exponent = n - (1 + as_number(tau_psi)) * s
    return "divergent" if exponent >= -1 else "convergent"


def dim_perturbed(n, tau_psi, gamma_decay) -> DimensionResult:
    """Dimension of the limsup set of balls with perturbed centres.

    ``(n + 1)/(1 + tau_psi)`` when the perturbation decays at least like
    ``q**(-1/n)``; otherwise the value is unknown (None).
    """
    tp = as_number(tau_psi)
    if tp <= 0:
        raise InvalidParameterError("tau_psi must be positive")
    within = tp >= Fraction(1, n)
    if not check_shift_condition(gamma_decay, Fraction(1, n)):
        return DimensionResult(None, "unknown", within_hypotheses=False,
                               details={"reason": "shift condition fails"})
    return DimensionResult((n + 1) / (1 + tp), "shift-condition", within_hypotheses=within)


# --------------------------------------------------------------------------
# seeded sweeps

SWEEP_COLUMNS_MAX_N = 4


def trial_seeds(seed, trials):
    """Per-trial seeds derived deterministically from one base seed."""
    ss = np.random.SeedSequence(seed)
    return [int(x) for x in ss.generate_state(trials, dtype=np.uint64)]


def random_profile(rng, n, denominator=20, top=60):
    """Rational profile with ``sum(tau_psi) >= 1`` (rejection sampling)."""
    while True:
        tp = tuple(Fraction(int(v), denominator) for v in rng.integers(1, top + 1, size=n))
        if sum(tp) >= 1:
            break
    tf = tuple(Fraction(int(v), denominator) for v in rng.integers(1, top + 1, size=n))
    return ExponentProfile(n, tp, tf)


@dataclass(frozen=True)
class SweepRow:
    seed: int
    profile: ExponentProfile
    dim_formula: object
    dim_mtp: object
    witness_j: int
    A_star: object

    @property
    def abs_diff(self):
        return abs(self.dim_formula - self.dim_mtp)


def consistency_sweep(trials, seed, dims=(2, 3, 4)):
    """Compare :func:`dim_weighted` with :func:`dim_mtp` on random profiles."""
    rows = []
    for ts in trial_seeds(seed, trials):
        rng = np.random.default_rng(ts)
        n = int(rng.choice(dims))
        profile = random_profile(rng, n)
        formula = dim_weighted(profile)
        lower = dim_mtp(profile)
        rows.append(SweepRow(ts, profile, formula.value, lower.value,
                             lower.witness_j, lower.details["A_star"]))
    return rows


def oracle_sweep(trials, seed, dims=(1, 2, 3, 4)):
    """Pairs ``(tau_psi, bound, oracle)`` for plain weighted approximation."""
    out = []
    for ts in trial_seeds(seed, trials):
        rng = np.random.default_rng(ts)
        n = int(rng.choice(dims))
        tau = random_profile(rng, n).tau_psi
        out.append((tau, ww_lower_bound(weighted_instance(tau)).value, rynne_oracle(n, tau)))
    return out


def sweep_header(max_n=SWEEP_COLUMNS_MAX_N):
    return (["seed", "n"]
            + [f"tau_psi_{i + 1}" for i in range(max_n)]
            + [f"tau_phi_{i + 1}" for i in range(max_n)]
            + ["dim_formula", "dim_mtp", "abs_diff", "witness_j", "A_star"])


def write_sweep_csv(rows, fh, max_n=SWEEP_COLUMNS_MAX_N):
    """Write rows with fixed columns; unused exponent slots stay empty.

    ``witness_j`` is written 1-based to match the coordinate labels.
    """
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(sweep_header(max_n))
    for r in rows:
        pad = [""] * (max_n - r.profile.n)
        w.writerow(
            [r.seed, r.profile.n]
            + [fmt(x) for x in r.profile.tau_psi] + pad
            + [fmt(x) for x in r.profile.tau_phi] + pad
            + [f"{float(r.dim_formula):.12g}", f"{float(r.dim_mtp):.12g}",
               f"{float(r.abs_diff):.3e}", r.witness_j + 1, fmt(r.A_star)]
        )


def sweep_csv_text(rows):
    buf = io.StringIO()
    write_sweep_csv(rows, buf)
    return buf.getvalue()
