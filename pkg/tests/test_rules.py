import itertools
import json
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import random_spec
from nuca import LocalRule, NuCaClass, NuCaSpec, apply, extend_word, self_compose
from nuca.core import ResourceBudgetError, words_of_length
from nuca.zoo import XOR, zoo_entry

IDENT = LocalRule.identity(2)


def test_apply_examples():
    for hood in itertools.product(range(3), repeat=3):
        assert LocalRule.identity(3)(*hood) == hood[1]
    r110 = LocalRule.from_wolfram(110)
    assert r110.format() == "01110110"
    assert apply(r110, (1, 1, 0)) == 1
    assert XOR(1, 0, 1) == 0
    with pytest.raises(ValueError):
        XOR.apply(b"\x00\x01")


def test_extend_word_examples():
    assert extend_word(XOR, b"\x01\x01") == b""
    assert extend_word(LocalRule.identity(3), b"\x00\x01\x02") == b"\x01"
    assert extend_word(XOR, b"\x00\x01\x01\x00") == b"\x01\x01"


def test_self_compose_examples():
    assert self_compose(XOR, 1) is XOR
    assert LocalRule.identity(2).self_compose(3) == LocalRule.identity(2, 3)
    xor2 = XOR.self_compose(2)
    assert xor2.radius == 2
    for w in itertools.product(range(2), repeat=5):
        assert xor2(*w) == w[0] ^ w[4]
    with pytest.raises(ResourceBudgetError):
        XOR.self_compose(30)


def test_window_locality_exhaustive():
    rng = random.Random(3)
    for _ in range(20):
        f = LocalRule(2, 1, bytes(rng.randrange(2) for _ in range(8)))
        for w in itertools.product(range(2), repeat=7):
            out = f.extend_word(bytes(w))
            for i in range(len(out)):
                assert out[i] == f.apply(bytes(w[i : i + 3]))


def test_composition_identity_exhaustive():
    rng = random.Random(4)
    for _ in range(10):
        f = LocalRule(2, 1, bytes(rng.randrange(2) for _ in range(8)))
        for m, n in [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3)]:
            big = f.self_compose(m + n)
            small = f.self_compose(m)
            rows = words_of_length(2, 2 * (m + n) + 1)
            inner = rows
            for _ in range(n):
                inner = f.apply_rows(inner)
            assert np.array_equal(big.array, small.apply_rows(inner)[:, 0])


def test_pad_preserves_map():
    f = LocalRule.from_wolfram(30)
    g = f.pad(2)
    for w in itertools.product(range(2), repeat=5):
        assert g(*w) == f(*w[1:4])
    with pytest.raises(ValueError):
        g.pad(1)


def test_rule_at_examples():
    f, g, h = LocalRule.from_wolfram(1), LocalRule.from_wolfram(2), LocalRule.from_wolfram(3)
    spec = NuCaSpec(2, 1, 1, (IDENT, h, IDENT), (f, g), (g, f, h))
    assert spec.rule_at(0) == h
    assert spec.rule_at(2) == spec.right[2 % 3]
    assert spec.rule_at(-6) == spec.left[(-6) % 2] == f
    assert spec.rule_at(-7) == g
    for i in range(2, 40):
        assert spec.rule_at(i) == spec.rule_at(i + 3)
        assert spec.rule_at(-i) == spec.rule_at(-i - 2)


def test_class_of():
    shift = LocalRule.shift(2)
    assert NuCaSpec.uniform(shift).class_of() is NuCaClass.UNIFORM_CA
    assert zoo_entry("z4").spec.class_of() is NuCaClass.DEFAULT_PERTURBED
    assert NuCaSpec.from_rules([IDENT], [IDENT, shift], [IDENT]).class_of() is NuCaClass.PERIODICALLY_PERTURBED
    # the inclusion chain is strict: each level has a member outside the one below
    levels = [zoo_entry(n).spec.class_of() for n in ("identity", "z4", "z3")]
    assert levels == [NuCaClass.UNIFORM_CA, NuCaClass.DEFAULT_PERTURBED, NuCaClass.PERIODICALLY_PERTURBED]


def test_n_compatibility():
    f, g = LocalRule.shift(2), IDENT
    assert zoo_entry("z4").spec.is_n_compatible(zoo_entry("z4").spec.default_rule(), 1000)
    spec = NuCaSpec.from_rules([g], [f], [f, g])
    assert spec.is_n_compatible(f, 1)
    assert not spec.is_n_compatible(f, 2)
    spec = NuCaSpec.from_rules([g], [f, f, f], [f, f, f])
    assert spec.is_n_compatible(f, 10)
    # wraparound counts: [f, g, f] contains the cyclic run f f
    assert NuCaSpec.from_rules([g], [f], [f, g, f]).is_n_compatible(f, 2)


def test_json_round_trip_and_errors(tmp_path):
    rng = random.Random(5)
    for _ in range(50):
        spec = random_spec(rng, q=3, max_radius=1)
        assert NuCaSpec.loads(spec.dumps()) == spec
        path = tmp_path / "s.json"
        spec.save(path)
        assert NuCaSpec.load(path) == spec
    doc = {"alphabet": 2, "radius": 1, "left": ["01100110"], "right": ["01100110"]}
    assert NuCaSpec.from_json(doc).k == 0
    with pytest.raises(ValueError):
        NuCaSpec.from_json({"alphabet": 2, "radius": 1, "left": ["01100110"], "right": ["00000000"]})
    with pytest.raises(ValueError):
        NuCaSpec.loads("{not json")
    with pytest.raises(ValueError):
        NuCaSpec.loads(json.dumps({"alphabet": 2, "radius": 1, "left": ["0110"], "right": ["0110"]}))
    with pytest.raises(ValueError):
        NuCaSpec.loads(json.dumps({"alphabet": 2, "radius": 1, "k": 1, "window": ["01100110"], "left": ["01100110"], "right": ["01100110"]}))
    with pytest.raises(ValueError):
        NuCaSpec.loads(json.dumps({"radius": 1}))


def test_mixed_radii_are_padded():
    spec = NuCaSpec.from_rules([LocalRule.identity(2, 0)], [XOR], [LocalRule.from_function(2, 2, lambda *a: a[0])])
    assert spec.radius == 2
    assert all(r.radius == 2 for r in spec.all_rules)


def test_large_alphabet_literal():
    f = LocalRule.from_function(40, 0, lambda a: (a + 1) % 40)
    assert LocalRule.parse(f.format(), 40, 0) == f


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 255), st.lists(st.integers(0, 1), min_size=3, max_size=20))
def test_wolfram_table_matches_numbering(number, word):
    f = LocalRule.from_wolfram(number)
    out = f.extend_word(bytes(word))
    for i, v in enumerate(out):
        a, b, c = word[i : i + 3]
        assert v == (number >> (4 * a + 2 * b + c)) & 1


def test_trim_keeps_rule_map():
    rng = random.Random(6)
    for _ in range(50):
        spec = random_spec(rng)
        t = spec.trim()
        assert t.k <= spec.k
        for i in range(-30, 31):
            assert t.rule_at(i) == spec.rule_at(i)
