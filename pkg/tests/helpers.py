"""Shared generators and brute-force references for the test suite."""
from __future__ import annotations

import random

import numpy as np
from hypothesis import strategies as st

from nuca import EpConfig, LocalRule, NuCaSpec

# elementary rules that are surjective as uniform CA; mixing them in keeps
# random specs from being almost always non-surjective
SURJECTIVE_ECA = [15, 51, 85, 170, 204, 240, 90, 150, 60, 102, 105, 195, 165, 153, 30, 86, 45, 75, 89, 101, 106, 120, 135, 149, 169, 225]


def random_rule(rng: random.Random, q: int = 2, radius: int = 1, bias: float = 0.7) -> LocalRule:
    if q == 2 and radius == 1 and rng.random() < bias:
        return LocalRule.from_wolfram(rng.choice(SURJECTIVE_ECA))
    return LocalRule(q, radius, bytes(rng.randrange(q) for _ in range(q ** (2 * radius + 1))))


def random_p1_spec(rng: random.Random, max_k: int = 1) -> NuCaSpec:
    """Period-1 spec over two symbols with radius 1."""
    k = rng.randrange(max_k + 1)
    return NuCaSpec(2, 1, k, tuple(random_rule(rng) for _ in range(2 * k + 1)), (random_rule(rng),), (random_rule(rng),))


def random_dnuca(rng: random.Random, max_k: int = 2) -> NuCaSpec:
    k = rng.randrange(max_k + 1)
    f = random_rule(rng)
    return NuCaSpec(2, 1, k, tuple(random_rule(rng) for _ in range(2 * k + 1)), (f,), (f,))


def random_spec(rng: random.Random, q: int = 2, max_radius: int = 2, max_period: int = 3, max_k: int = 2) -> NuCaSpec:
    r = rng.randrange(max_radius + 1)
    k = rng.randrange(max_k + 1)
    pl, pr = rng.randint(1, max_period), rng.randint(1, max_period)
    rule = lambda: random_rule(rng, q, r, bias=0.0)
    return NuCaSpec(q, r, k, tuple(rule() for _ in range(2 * k + 1)), tuple(rule() for _ in range(pl)), tuple(rule() for _ in range(pr)))


def random_config(rng: random.Random, q: int = 2, max_period: int = 3, half_width: int = 6) -> EpConfig:
    word = lambda n: bytes(rng.randrange(q) for _ in range(n))
    width = rng.randint(0, 2 * half_width)
    return EpConfig(word(rng.randint(1, max_period)), word(width), rng.randint(-half_width, half_width) - width // 2,
                    word(rng.randint(1, max_period)))


def configs(q: int = 3, max_period: int = 4, max_center: int = 8, max_offset: int = 10):
    """Hypothesis strategy for raw (unnormalized) eventually periodic configurations."""
    sym = st.integers(0, q - 1)
    tail = st.lists(sym, min_size=1, max_size=max_period).map(bytes)
    return st.builds(EpConfig, tail, st.lists(sym, max_size=max_center).map(bytes), st.integers(-max_offset, max_offset), tail)


def reference_step(spec: NuCaSpec, x: EpConfig, a: int, b: int) -> bytes:
    """Cells ``[a, b]`` of the image computed one cell at a time."""
    r = spec.radius
    out = []
    for i in range(a, b + 1):
        hood = bytes(x.sample(j) for j in range(i - r, i + r + 1))
        out.append(spec.rule_at(i).apply(hood))
    return bytes(out)


def agree_on(x: EpConfig, y: EpConfig, a: int, b: int) -> bool:
    return all(x.sample(i) == y.sample(i) for i in range(a, b + 1))


def brute_distance_exponent(x: EpConfig, y: EpConfig, reach: int) -> int | None:
    for n in range(reach + 1):
        if x.sample(n) != y.sample(n) or x.sample(-n) != y.sample(-n):
            return n
    return None


def rng_array(seed: int):
    return np.random.default_rng(seed)
