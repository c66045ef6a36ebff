import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import agree_on, brute_distance_exponent, configs
from nuca import EpConfig, distance, distance_exponent, equals, format_config, parse_config, parse_word, format_word
from nuca.core import lcm, primitive_root


def test_sample_examples():
    x = EpConfig(b"\x00", b"\x01", 0, b"\x00")
    assert x.sample(0) == 1
    assert x.sample(-7) == 0
    y = EpConfig(b"\x00\x01", b"", 0, b"\x00\x01")
    assert y.sample(-1) == 1
    assert [y.sample(i) for i in range(-4, 4)] == [0, 1, 0, 1, 0, 1, 0, 1]


def test_normalize_examples():
    zero = EpConfig(b"\x00\x00", b"\x00", 3, b"\x00").normalize()
    assert (zero.left, zero.center, zero.right) == (b"\x00", b"", b"\x00")
    x = parse_config("0101*|01@0|0101*")
    n = x.normalize()
    assert len(n.left) == len(n.right) == 2
    assert n.center == b""
    assert agree_on(x, n, -20, 20)
    assert n.normalize().key() == n.key()


def test_literal_round_trip():
    for text in ["0*|102@-1|2*", "01*|@0|1*", "Z*|A0@5|1*"]:
        assert format_config(parse_config(text)) == text
    with pytest.raises(ValueError):
        parse_config("0|1@0|0*")
    with pytest.raises(ValueError):
        parse_config("0*|1@x|0*")
    with pytest.raises(ValueError):
        parse_word("0?")


def test_distance_examples():
    zero = EpConfig.uniform(0)
    assert distance_exponent(zero, zero) is None
    assert distance(zero, zero) == 0.0
    assert distance_exponent(zero, EpConfig.finite(0, b"\x01", 0)) == 0
    x = EpConfig.finite(0, b"\x01", 2)
    assert distance_exponent(zero, x) == 2
    assert distance(zero, x) == 0.25
    assert not equals(EpConfig.uniform(0), EpConfig.uniform(1))


@settings(max_examples=300, deadline=None)
@given(configs())
def test_normalize_preserves_samples(x):
    n = x.normalize()
    assert agree_on(x, n, -40, 40)
    assert primitive_root(n.left) == n.left and primitive_root(n.right) == n.right
    assert n.normalize().key() == n.key()
    # neither end of the center could be absorbed into the adjacent tail
    if n.center:
        assert n.center[0] != n.left[0]
        assert n.center[-1] != n.right[-1]


@settings(max_examples=300, deadline=None)
@given(configs(q=2, max_period=3, max_center=6, max_offset=6), st.integers(0, 5), st.integers(0, 5), st.integers(1, 3))
def test_reencodings_are_equal(x, grow_left, grow_right, reps):
    # same function, wider center, repeated tails: a differently phased encoding
    a, b = x.offset - grow_left, x.end + grow_right
    pl, pr = reps * len(x.left), reps * len(x.right)
    y = EpConfig.from_samples(x.values(a - pl, b + pr), a - pl, pl, b - a, pr)
    assert equals(x, y)
    assert hash(x) == hash(y)
    assert distance_exponent(x, y) is None


@settings(max_examples=300, deadline=None)
@given(configs(q=2, max_period=3, max_center=6, max_offset=6), configs(q=2, max_period=3, max_center=6, max_offset=6))
def test_equality_is_denotational(x, y):
    window = 3 * lcm(len(x.left), len(x.right), len(y.left), len(y.right)) + 20
    assert equals(x, y) == agree_on(x, y, -window, window)
    assert (hash(x) == hash(y)) or not equals(x, y)


@settings(max_examples=300, deadline=None)
@given(configs(q=2), configs(q=2), configs(q=2))
def test_metric_properties(x, y, z):
    nxy, nyz, nxz = distance_exponent(x, y), distance_exponent(y, z), distance_exponent(x, z)
    assert nxy == distance_exponent(y, x)
    assert (nxy is None) == equals(x, y)
    assert nxy == brute_distance_exponent(x, y, 60)
    inf = float("inf")
    val = lambda n: inf if n is None else n
    assert val(nxz) >= min(val(nxy), val(nyz))


@settings(max_examples=200, deadline=None)
@given(configs())
def test_left_tail_periodic(x):
    p = len(x.left)
    for i in range(x.offset - 30, x.offset):
        assert x.sample(i) == x.sample(i - p)


def test_exhaustive_small_equality():
    # every encoding with tails of length <= 2, center <= 2, offsets in [-1, 1] over two symbols
    words = [bytes(w) for n in range(3) for w in itertools.product(range(2), repeat=n)]
    tails = [w for w in words if w]
    seen = {}
    for left in tails:
        for right in tails:
            for center in words:
                for off in (-1, 0, 1):
                    x = EpConfig(left, center, off, right)
                    sig = tuple(x.sample(i) for i in range(-12, 13))
                    key = x.key()
                    assert seen.setdefault(key, sig) == sig
    # distinct keys denote distinct functions
    assert len(set(seen.values())) == len(seen)


def test_word_helpers():
    assert format_word(parse_word("0aZ")) == "0AZ"
    assert primitive_root(b"\x00\x01\x00\x01") == b"\x00\x01"
    assert lcm(2, 3, 4) == 12
    x = EpConfig.finite(0, b"\x01\x01", -1)
    assert x.shift(3).sample(2) == 1 and x.shift(3).sample(0) == 0
    assert x.with_window(5, b"\x01").sample(5) == 1
    assert x.is_finite_over(0) and not x.is_finite_over(1)
