"""Block packing to radius 1 / structural period 1, and embedding into a uniform CA."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import EpConfig, ResourceBudgetError, budget, codes_of, digits_of, lcm
from .rules import LocalRule, NuCaSpec


@dataclass(frozen=True)
class PackedAlphabetMap:
    """Bijection between length-``block`` words over ``q`` symbols and ``q**block`` packed symbols."""

    q: int
    block: int

    @property
    def packed_q(self) -> int:
        return self.q**self.block

    def encode(self, word) -> int:
        if len(word) != self.block:
            raise ValueError(f"expected a word of length {self.block}")
        out = 0
        for a in word:
            out = out * self.q + a
        return out

    def decode(self, symbol: int) -> bytes:
        if not 0 <= symbol < self.packed_q:
            raise ValueError("packed symbol out of range")
        return digits_of(np.array([symbol]), self.q, self.block)[0].astype(np.uint8).tobytes()

    def encode_word(self, word: bytes) -> bytes:
        if len(word) % self.block:
            raise ValueError("word length is not a multiple of the block size")
        arr = np.frombuffer(word, dtype=np.uint8).reshape(-1, self.block)
        return codes_of(arr, self.q).astype(np.uint8).tobytes()

    def decode_word(self, word: bytes) -> bytes:
        codes = np.frombuffer(word, dtype=np.uint8)
        return digits_of(codes, self.q, self.block).astype(np.uint8).tobytes()


def pack_config(amap: PackedAlphabetMap, x: EpConfig) -> EpConfig:
    """``pack(x)_i`` encodes ``x[i*b : (i+1)*b]``."""
    b = amap.block
    if b == 1:
        return x
    s = (x.offset // b) * b
    e = -(-x.end // b) * b
    ll = lcm(len(x.left), b)
    rl = lcm(len(x.right), b)
    raw = x.values(s - ll, e + rl).astype(np.uint8).tobytes()
    packed = amap.encode_word(raw)
    return EpConfig.from_samples(packed, (s - ll) // b, ll // b, (e - s) // b, rl // b).normalize()


def unpack_config(amap: PackedAlphabetMap, y: EpConfig) -> EpConfig:
    b = amap.block
    if b == 1:
        return y
    return EpConfig(
        amap.decode_word(y.left), amap.decode_word(y.center), y.offset * b, amap.decode_word(y.right)
    ).normalize()


def block_size(spec: NuCaSpec) -> int:
    """Smallest multiple of both tail periods that is at least the radius."""
    period = lcm(spec.left_period, spec.right_period)
    return period * max(1, math.ceil(spec.radius / period))


def pack_spec(spec: NuCaSpec, block: int | None = None, cap: int | None = None) -> tuple[NuCaSpec, PackedAlphabetMap]:
    """Conjugate ``spec`` to a radius-1 spec with period-1 tails.

    ``block`` defaults to :func:`block_size`; any multiple of it also works.
    Returns the packed spec and the alphabet map realizing the conjugacy
    (``pack_config(amap, step(spec, x)) == step(packed, pack_config(amap, x))``).
    """
    base = block_size(spec)
    b = base if block is None else block
    if b % base:
        raise ValueError(f"block size must be a multiple of {base}")
    amap = PackedAlphabetMap(spec.q, b)
    if b == 1:
        if spec.radius == 1:
            return spec, amap
        # radius 0: only padding is needed
        return NuCaSpec.from_rules([r.pad(1) for r in spec.window], [r.pad(1) for r in spec.left], [r.pad(1) for r in spec.right]), amap
    cap = budget() if cap is None else cap
    Q = amap.packed_q
    if Q > 256 or Q**3 > cap:
        raise ResourceBudgetError(f"packing needs block size {b}: alphabet {spec.q}**{b} is too large")

    r = spec.radius
    triples = digits_of(np.arange(Q**3, dtype=np.int64), spec.q, 3 * b)
    k2 = -(-spec.k // b)

    def packed_rule(cell: int) -> LocalRule:
        out = np.zeros(Q**3, dtype=np.int64)
        for j in range(b):
            rule = spec.rule_at(cell * b + j)
            nb = triples[:, b + j - r : b + j + r + 1]
            out = out * spec.q + rule.array[codes_of(nb, spec.q)]
        return LocalRule(Q, 1, out.astype(np.uint8).tobytes())

    cache: dict[tuple, LocalRule] = {}

    def cached(cell: int) -> LocalRule:
        key = tuple(spec.rule_at(cell * b + j) for j in range(b))
        if key not in cache:
            cache[key] = packed_rule(cell)
        return cache[key]

    window = [cached(i) for i in range(-k2, k2 + 1)]
    # tails are period 1 after packing: pick a cell deep inside each tail
    far = k2 + 1
    left = cached(-far)
    right = cached(far)
    return NuCaSpec(Q, 1, k2, tuple(window), (left,), (right,)), amap


def embed_in_ca(spec: NuCaSpec, cap: int | None = None) -> tuple[LocalRule, Callable[[EpConfig], EpConfig], list[LocalRule]]:
    """Embed the spec as a subsystem of a CA over ``A x {rules}``.

    Product symbol ``j * q + a`` stands for the pair (cell value ``a``, rule
    number ``j``); only rules that actually occur are numbered, in order of
    first occurrence (window, then left tail, then right tail).

    Returns ``(ca_rule, annotate, numbering)`` with
    ``annotate(step(spec, x)) == step(uniform(ca_rule), annotate(x))``.
    """
    numbering: list[LocalRule] = []
    for rule in spec.all_rules:
        if rule not in numbering:
            numbering.append(rule)
    n, q, r = len(numbering), spec.q, spec.radius
    B = q * n
    width = 2 * r + 1
    cap = budget() if cap is None else cap
    if B > 256 or B**width > cap:
        raise ResourceBudgetError(f"product alphabet {B} with radius {r} exceeds the table budget")
    hoods = digits_of(np.arange(B**width, dtype=np.int64), B, width)
    values = hoods % q
    centre_rule = hoods[:, r] // q
    inner = codes_of(values, q)
    tables = np.stack([rule.array for rule in numbering])
    out = centre_rule * q + tables[centre_rule, inner]
    ca = LocalRule(B, r, out.astype(np.uint8).tobytes())

    index = {rule: j for j, rule in enumerate(numbering)}
    rule_code = np.array([index[rule] for rule in spec.left + spec.window + spec.right], dtype=np.int64)

    def annotate(x: EpConfig) -> EpConfig:
        ml = lcm(len(x.left), spec.left_period)
        mr = lcm(len(x.right), spec.right_period)
        s = min(x.offset, -spec.k)
        e = max(x.end, spec.k + 1)
        pos = np.arange(s - ml, e + mr)
        vals = x.values(s - ml, e + mr) + q * rule_code[spec.rule_indices(pos)]
        return EpConfig.from_samples(vals.astype(np.uint8).tobytes(), s - ml, ml, e - s, mr).normalize()

    return ca, annotate, numbering


def project_first_track(q: int, y: EpConfig) -> EpConfig:
    """Inverse of the annotation on its image: keep the cell values."""
    first = lambda w: bytes(s % q for s in w)
    return EpConfig(first(y.left), first(y.center), y.offset, first(y.right)).normalize()
