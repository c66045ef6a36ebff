"""Acceptance criteria 1-7, each timed against its limit.

Run with pytest (a summary section lists one line per criterion) or
directly as ``python3 tests/test_acceptance.py``.
"""
import itertools
import random

import numpy as np
from acceptance_log import RESULTS, criterion
from helpers import agree_on, brute_distance_exponent, random_config, random_dnuca, random_p1_spec, random_spec, reference_step
from nuca import (
    EpConfig,
    LocalRule,
    NuCaSpec,
    decide_injective,
    decide_surjective,
    distance_exponent,
    embed_in_ca,
    equals,
    pack_config,
    pack_spec,
    step,
)
from nuca.conjugacy import block_size
from nuca.core import lcm, primitive_root, words_of_length
from nuca.dynamics import (
    AlmostEquicontinuousCert,
    Equicontinuous,
    NoBlockingWordUpTo,
    certify_strongly_blocking,
    classify_ca,
    refute_blocking,
)
from nuca.oracles import ConsistentUpTo, RefutedAt, has_preimage, injectivity_witness_oracle, surjectivity_oracle
from nuca.zoo import (
    F9,
    SPREAD2,
    RewriteState,
    regle3_sequence,
    rewrite_run,
    sens1_check,
    sens2_times,
    z8_window_check,
    zoo_catalog,
    zoo_entry,
)


def test_criterion_1_verdict_table():
    expected = {
        "z4": (False, False),
        "z5": (False, False),
        "z2": (False, True),
        "shift": (True, True),
        "constant": (False, False),
        "identity": (True, True),
    }
    with criterion(1, "verdict table", 10):
        for name, want in expected.items():
            spec = zoo_entry(name).spec
            s, i = decide_surjective(spec), decide_injective(spec)
            assert (s.surjective, i.injective) == want, name
            if not i.injective:
                x, y = i.witness
                assert x != y and step(spec, x) == step(spec, y), name
        z5 = zoo_entry("z5").spec
        zero, one = EpConfig.uniform(0), EpConfig.uniform(1)
        assert step(z5, zero) == step(z5, one)


def test_criterion_2_oracle_agreement():
    with criterion(2, "decider/oracle agreement on 200 random specs", 120):
        rng = random.Random(2024)
        for _ in range(200):
            spec = random_p1_spec(rng, max_k=1)
            s = decide_surjective(spec)
            if s.surjective:
                assert surjectivity_oracle(spec, 6) == ConsistentUpTo(6)
            else:
                res = surjectivity_oracle(spec, 8)
                assert isinstance(res, RefutedAt) and res.n <= 8
                assert not has_preimage(spec, s.word, s.position)
            i = decide_injective(spec)
            pair = injectivity_witness_oracle(spec)
            assert i.injective == (pair is None)
            if not i.injective:
                x, y = i.witness
                assert x != y and step(spec, x) == step(spec, y)
            # blocking certificates and refutations never meet
            f = spec.right[0]
            u = bytes(rng.randrange(2) for _ in range(rng.randint(1, 3)))
            assert certify_strongly_blocking(f, u, 1) is None or refute_blocking(f, u, 1, horizon=10, padding=5) is None


def test_criterion_3_structural_implications():
    with criterion(3, "injective dnuCA: default injective and spec surjective", 60):
        rng = random.Random(3)
        violations = 0
        for _ in range(200):
            spec = random_dnuca(rng, max_k=2)
            if decide_injective(spec).injective:
                default_ok = decide_injective(NuCaSpec.uniform(spec.right[0])).injective
                violations += not (default_ok and decide_surjective(spec).surjective)
        assert violations == 0, f"{violations} violations"


def test_criterion_4_conjugacy_and_embedding():
    with criterion(4, "packing and embedding identities, verdict invariance", 30):
        rng = random.Random(4)
        for _ in range(100):
            spec = random_spec(rng, max_radius=2, max_period=2, max_k=2)
            x = random_config(rng)
            T = rng.randint(1, 20)
            packed, amap = pack_spec(spec)
            ca, annotate, _ = embed_in_ca(spec)
            uniform = NuCaSpec.uniform(ca)
            px, ax = pack_config(amap, x), annotate(x)
            for _ in range(T):
                x, px, ax = step(spec, x), step(packed, px), step(uniform, ax)
                assert pack_config(amap, x) == px
                assert annotate(x) == ax
        for entry in zoo_catalog():
            spec = entry.spec
            base = block_size(spec)
            packed, _ = pack_spec(spec, block=2 if base == 1 else base)
            assert decide_surjective(packed).surjective == decide_surjective(spec).surjective, entry.name
            assert decide_injective(packed).injective == decide_injective(spec).injective, entry.name


def _agreeing_spec(rng, f, n, radius=2):
    k = n + 3
    rand = lambda: LocalRule(f.q, radius, bytes(rng.randrange(f.q) for _ in range(f.q ** (2 * radius + 1))))
    window = [f if 0 <= i < n else rand() for i in range(-k, k + 1)]
    return NuCaSpec.from_rules(window, [rand(), rand()], [rand()])


def test_criterion_5_dynamics():
    failures = []
    with criterion(5, "blocking words and classification", 60):
        if certify_strongly_blocking(F9, "202", 1) is None:
            failures.append("certify(F9, 202, 1) returned no certificate")
        res = classify_ca(SPREAD2)
        if not (isinstance(res, AlmostEquicontinuousCert) and res.blocking_word == b"\x02"):
            failures.append(f"classify_ca(spread-2) = {res!r}")
        res = classify_ca(LocalRule.identity(2))
        if not (isinstance(res, Equicontinuous) and (res.q, res.p) == (0, 1)):
            failures.append(f"classify_ca(identity) = {res!r}")
        res = classify_ca(LocalRule.shift(2))
        if not (isinstance(res, NoBlockingWordUpTo) and res.max_len == 4):
            failures.append(f"classify_ca(shift) = {res!r}")
        rng = random.Random(5)
        mismatches = 0
        certified = [(LocalRule.identity(2), b"\x01"), (SPREAD2, b"\x02"), (SPREAD2, b"\x01\x02"), (LocalRule.constant(2, 0), b"\x01\x01\x00")]
        for f, u in certified:
            cert = certify_strongly_blocking(f, u, 1)
            T = cert.preperiod + 2 * cert.period
            for _ in range(20):
                spec = _agreeing_spec(rng, f, len(u))
                for _ in range(10):
                    x = random_config(rng, q=f.q).with_window(0, u)
                    for t in range(T + 1):
                        mismatches += x.window(cert.offset, cert.offset) != cert.column_at(t)
                        x = step(spec, x)
        if mismatches:
            failures.append(f"{mismatches} column mismatches")
        assert not failures, "; ".join(failures)


def test_criterion_6_lemma_suite():
    with criterion(6, "rewriting, regle3, sensitivity and frozen-2 lemmas", 300):
        for n in range(5):
            for w in itertools.product(range(3), repeat=n):
                for flag in (0, 1):
                    assert isinstance(rewrite_run(RewriteState(bytes(w), flag), 10_000), int), (w, flag)
        for n in range(6):
            for w in itertools.product(range(3), repeat=n):
                assert isinstance(regle3_sequence(bytes(w), 10_000), int), w
        for n in range(5):
            for w in itertools.product(range(3), repeat=n):
                assert sens1_check(bytes(w), 10_000, 100) is not None, w
        for n in range(4):
            for w in itertools.product(range(3), repeat=n):
                assert len(sens2_times(bytes(w), 10_000, 5)) == 5, w
        rng = random.Random(6)
        for n in range(7):
            for _ in range(50):
                x = random_config(rng, q=3)
                assert z8_window_check(x, n), (n, x)


def _property_suites():
    rng = random.Random(7)
    # core: normalization and metric, 1000 random triples
    for _ in range(1000):
        x, y, z = (random_config(rng, q=2, max_period=3, half_width=5) for _ in range(3))
        n = x.normalize()
        assert agree_on(x, n, -40, 40) and primitive_root(n.left) == n.left and primitive_root(n.right) == n.right
        assert n.normalize().key() == n.key()
        window = 3 * lcm(len(x.left), len(x.right), len(y.left), len(y.right)) + 20
        assert equals(x, y) == agree_on(x, y, -window, window)
        dxy, dyz, dxz = distance_exponent(x, y), distance_exponent(y, z), distance_exponent(x, z)
        assert dxy == distance_exponent(y, x) == brute_distance_exponent(x, y, 60)
        val = lambda d: float("inf") if d is None else d
        assert val(dxz) >= min(val(dxy), val(dyz))
    # engine: pointwise consistency on [-50, 50], 1000 random pairs
    for _ in range(1000):
        q = rng.choice([2, 3])
        spec = random_spec(rng, q=q, max_radius=2 if q == 2 else 1)
        x = random_config(rng, q=q)
        assert step(spec, x).window(-50, 50) == reference_step(spec, x, -50, 50)
    # rules: composition identities, exhaustive over all elementary rules
    for number in range(256):
        f = LocalRule.from_wolfram(number)
        for m, n in [(1, 1), (1, 2), (2, 1)]:
            rows = words_of_length(2, 2 * (m + n) + 1)
            inner = rows
            for _ in range(n):
                inner = f.apply_rows(inner)
            assert np.array_equal(f.self_compose(m + n).array, f.self_compose(m).apply_rows(inner)[:, 0])


def test_criterion_7_property_suites():
    with criterion(7, "core, engine and rules property suites"):
        _property_suites()


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    for test in tests:
        try:
            test()
        except Exception:
            pass
    print("\n".join(RESULTS))
