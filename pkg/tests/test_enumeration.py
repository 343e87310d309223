from fractions import Fraction as F
from itertools import product
from math import gcd
import io
import json

import pytest
from hypothesis import given, settings, strategies as st

from limsup_annuli.errors import InvalidParameterError
from limsup_annuli.enumeration import FamilySpec, count, dump_ndjson, stream
from limsup_annuli.formulas import ExponentProfile
from limsup_annuli.geometry import shape_from_json


def spec(kind="rect-annulus", n=2, **kw):
    return FamilySpec(kind, ExponentProfile.uniform(n, 1, 1), **kw)


@pytest.mark.parametrize("n, rng, expected", [(2, (1, 10), 505), (1, (1, 1), 2), (3, (2, 2), 27)])
def test_count_examples(n, rng, expected):
    assert count(spec(n=n), rng) == expected


def brute_coprime(n, q):
    return sum(1 for p in product(range(q + 1), repeat=n) if gcd(q, *p) == 1)


@given(st.integers(1, 3), st.integers(1, 12))
def test_coprime_count_against_brute(n, q):
    assert count(spec(n=n, coprime=True), (q, q)) == brute_coprime(n, q)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3), st.integers(1, 5), st.integers(0, 3), st.booleans())
def test_stream_length_matches_count(n, lo, width, coprime):
    s = spec(n=n, coprime=coprime)
    rng = (lo, lo + width)
    assert sum(1 for _ in stream(s, rng)) == count(s, rng)


def test_stream_order_and_clipping():
    s = spec("shifted-rect", n=1, j=0, sign=1)
    shapes = list(stream(s, (2, 2)))
    assert [sh.center for sh in shapes] == [(F(3, 16),), (F(11, 16),), (F(19, 16),)]
    assert ["clipped" in sh.flags for sh in shapes] == [False, False, True]


def test_stream_lex_order_within_q():
    got = [sh.center for sh in stream(spec("ball", n=2), (2, 2))]
    expected = [(F(a, 2), F(b, 2)) for a in range(3) for b in range(3)]
    assert got == expected


def test_overflow_raises_before_streaming():
    with pytest.raises(OverflowError):
        stream(spec(n=3), (1, 10**4))
    with pytest.raises(OverflowError):
        count(spec(n=1), (1, 100), limit=10)


def test_spec_validation():
    with pytest.raises(InvalidParameterError):
        spec("disk")
    with pytest.raises(InvalidParameterError):
        spec("quasi-annulus")
    with pytest.raises(InvalidParameterError):
        spec("shifted-rect", j=0)
    with pytest.raises(InvalidParameterError):
        FamilySpec("annulus", ExponentProfile(2, (1, 2), (1, 1)))
    with pytest.raises(InvalidParameterError):
        count(spec(), (3, 2))


@pytest.mark.parametrize("kind, extra", [
    ("annulus", {}), ("rect-annulus", {}), ("ball", {}),
    ("quasi-annulus", {"rho": 2}), ("shifted-rect", {"j": 1, "sign": -1}),
])
def test_ndjson_deterministic_and_round_trips(kind, extra):
    s = FamilySpec(kind, ExponentProfile.uniform(2, F(1, 2), 1), **extra)
    a, b = io.StringIO(), io.StringIO()
    assert dump_ndjson(s, (1, 4), a) == count(s, (1, 4))
    dump_ndjson(s, (1, 4), b)
    assert a.getvalue() == b.getvalue()
    for line in a.getvalue().splitlines():
        expected_kind = "rect" if kind == "shifted-rect" else kind
        assert json.loads(line)["kind"] == expected_kind
        back = shape_from_json(line)
        assert json.dumps(json.loads(line), sort_keys=True, separators=(",", ":")) == line
        assert back.kind == expected_kind
