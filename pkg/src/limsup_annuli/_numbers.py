"""Number coercion and rigorous brackets for powers ``q**(-e)``.

Every rational quantity in the package is a :class:`fractions.Fraction`.
Floats are accepted and kept as floats so that the generic arithmetic in
the formula modules degrades to binary floating point only when asked to.
"""

from fractions import Fraction
import math
import numbers

from mpmath import iv
from sympy import integer_nthroot

from .errors import IndeterminateError, InvalidParameterError

#: Default working precision (bits) for irrational radii.
DEFAULT_BITS = 96
#: Precisions tried, in order, before giving up on a boundary comparison.
ESCALATION = (96, 192, 384, 768, 1536)
#: Largest denominator accepted when parsing decimal strings.
MAX_DENOMINATOR = 10**6


def as_number(x):
    """Return ``x`` as a Fraction when it is rational, else as a float."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise InvalidParameterError(f"boolean is not a number: {x!r}")
    if isinstance(x, numbers.Integral):
        return Fraction(int(x))
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, numbers.Rational):
        return Fraction(x.numerator, x.denominator)
    if isinstance(x, numbers.Real):
        return float(x)
    raise InvalidParameterError(f"not a real number: {x!r}")


def as_fraction(x):
    """Exact rational value of ``x`` (floats are converted exactly)."""
    x = as_number(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise InvalidParameterError(f"non-finite value {x!r}")
        return Fraction(x)
    return x


def parse_rational(text, max_denominator=MAX_DENOMINATOR):
    """Parse ``"1.2"``, ``"3/7"`` or ``"2"`` into a Fraction.

    Decimal strings are exact; anything whose reduced denominator exceeds
    ``max_denominator`` is snapped with :meth:`Fraction.limit_denominator`.
    """
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidParameterError(f"cannot parse {text!r} as a rational") from exc
    if value.denominator > max_denominator:
        value = value.limit_denominator(max_denominator)
    return value


def parse_vector(text):
    return tuple(parse_rational(part) for part in text.split(","))


def fmt(x):
    """``"num/den"`` for rationals, shortest repr for floats."""
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def to_float12(x):
    """Float rounded to 12 significant digits, for reporting."""
    return float(f"{float(x):.12g}")


def _mpf_tuple_to_fraction(t):
    sign, man, exp, _ = t
    man = int(man)
    value = Fraction(man * 2**exp) if exp >= 0 else Fraction(man, 2**-exp)
    return -value if sign else value


def exact_power(q, e):
    """``q**(-e)`` as a Fraction if it is rational, otherwise ``None``."""
    q = int(q)
    e = Fraction(e)
    if e.denominator == 1:
        return Fraction(1, q ** e.numerator) if e >= 0 else Fraction(q ** -e.numerator)
    a, b = abs(e.numerator), e.denominator
    # perfect-power test only when the integer stays small
    if b <= 64 and a * max(q.bit_length(), 1) <= 20000:
        root, is_exact = integer_nthroot(q**a, b)
        if is_exact:
            return Fraction(1, root) if e > 0 else Fraction(root)
    return None


def power_bracket(q, e, bits=DEFAULT_BITS):
    """Rigorous rational enclosure ``lo <= q**(-e) <= hi``.

    ``lo == hi`` exactly when the power is rational.  Otherwise the
    endpoints are dyadic numbers with ``bits`` bits of mantissa obtained
    from outward-rounded interval arithmetic.
    """
    if q < 1:
        raise InvalidParameterError(f"q must be a positive integer, got {q}")
    e = as_fraction(e)
    exact = exact_power(q, e)
    if exact is not None:
        return exact, exact
    old = iv.prec
    try:
        iv.prec = bits
        val = iv.mpf(int(q)) ** (-(iv.mpf(e.numerator) / iv.mpf(e.denominator)))
        lo_t, hi_t = val._mpi_
    finally:
        iv.prec = old
    return _mpf_tuple_to_fraction(lo_t), _mpf_tuple_to_fraction(hi_t)


def rounded_power(q, e, direction, bits=DEFAULT_BITS):
    """``q**(-e)`` rounded ``"up"`` or ``"down"``; second item flags rounding."""
    lo, hi = power_bracket(q, e, bits)
    if lo == hi:
        return lo, False
    return (hi if direction == "up" else lo), True


def root_bracket(n, rho, bits=DEFAULT_BITS):
    """Enclosure of ``n**(-1/rho)``."""
    return power_bracket(n, Fraction(1) / as_fraction(rho), bits)


def decide(predicate, precisions=ESCALATION):
    """Evaluate a three-valued ``predicate(bits)`` with escalating precision.

    ``predicate`` returns True, False or None (undecided).  An undecided
    result at the last precision raises :class:`IndeterminateError`.
    """
    for bits in precisions:
        verdict = predicate(bits)
        if verdict is not None:
            return verdict
    raise IndeterminateError(f"undecided at {precisions[-1]} bits")


def less(d, bracket):
    """Three-valued ``d < value`` for ``value`` enclosed by ``bracket``."""
    lo, hi = bracket
    if d < lo:
        return True
    if d >= hi:
        return False
    return None


def greater(d, bracket):
    """Three-valued ``d > value`` for ``value`` enclosed by ``bracket``."""
    lo, hi = bracket
    if d > hi:
        return True
    if d <= lo:
        return False
    return None


def rpow_compare(values, rho, r, bits):
    """Compare ``sum(v**rho)`` with ``r**rho`` for nonnegative rationals.

    Returns -1, 0 or 1, or None when the enclosures overlap at ``bits``.
    Exact for integer ``rho``.
    """
    rho = Fraction(rho)
    if rho.denominator == 1:
        k = rho.numerator
        lhs = sum(v**k for v in values)
        rhs = r**k
        return (lhs > rhs) - (lhs < rhs)
    old = iv.prec
    try:
        iv.prec = bits
        er = iv.mpf(rho.numerator) / iv.mpf(rho.denominator)
        lhs = iv.mpf(0)
        for v in values:
            if v != 0:
                lhs += (iv.mpf(v.numerator) / iv.mpf(v.denominator)) ** er
        rhs = (iv.mpf(r.numerator) / iv.mpf(r.denominator)) ** er
        diff = lhs - rhs
        lo, hi = (_mpf_tuple_to_fraction(t) for t in diff._mpi_)
    finally:
        iv.prec = old
    if lo > 0:
        return 1
    if hi < 0:
        return -1
    return None


def is_integral(x):
    return isinstance(x, Fraction) and x.denominator == 1

