"""Blocking words, equicontinuity of uniform CA, and classification of default-rule specs.

A word ``u`` is *strongly s-blocking* for ``f`` at offset ``d`` when the
cells ``[d, d+s)`` of a cylinder ``[u]`` follow the same trajectory under
every automaton that applies ``f`` on the cells of ``u``, whatever the
surrounding cells do.  Because cells outside ``u`` may run arbitrary rules,
the ``r`` symbols on each side of ``u`` can take any value at every step,
so the set of words reachable on ``u``'s cells evolves deterministically:

    R_0 = {u},   R_{t+1} = { f(a w b) : w in R_t, |a| = |b| = r }.

Subsets of ``A^|u|`` eventually cycle, which makes the question decidable.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .core import EpConfig, as_word, ResourceBudgetError, budget, codes_of, digits_of, format_word, lcm, words_of_length
from .engine import orbit_analyze
from .rules import LocalRule, NuCaSpec


# -- strong blocking ---------------------------------------------------------------


def _word_over(f: LocalRule, u) -> bytes:
    u = as_word(u)
    if any(a >= f.q for a in u):
        raise ValueError(f"word {u!r} has symbols outside the alphabet of size {f.q}")
    return u


@dataclass(frozen=True)
class BlockingCertificate:
    """Proof that ``word`` is strongly ``width``-blocking at ``offset``.

    ``column_trace[t]`` is the forced content of ``[offset, offset+width)``
    at time ``t`` for ``t < preperiod + period``; afterwards it repeats with
    the given period.  ``reachable_trace[t]`` is the reachable set ``R_t``.
    """

    word: bytes
    width: int
    offset: int
    preperiod: int
    period: int
    column_trace: tuple[bytes, ...]
    reachable_trace: tuple[frozenset[bytes], ...] = field(repr=False)

    def column_at(self, t: int) -> bytes:
        if t >= self.preperiod:
            t = self.preperiod + (t - self.preperiod) % self.period
        return self.column_trace[t]

    def to_json(self) -> dict:
        return {
            "word": format_word(self.word),
            "width": self.width,
            "offset": self.offset,
            "preperiod": self.preperiod,
            "period": self.period,
            "column_trace": [format_word(c) for c in self.column_trace],
        }


def reachable_sets(f: LocalRule, u: bytes, cap: int | None = None):
    """Yield the reachable sets ``R_0, R_1, ...`` as sorted code arrays, up to the first repeat.

    Returns (via ``StopIteration.value``) the index where the cycle starts.
    """
    q, r, n = f.q, f.radius, len(u)
    cap = budget() if cap is None else cap
    if q**n > cap:
        raise ResourceBudgetError(f"reachable sets over {q}**{n} words exceed the budget")
    outside = words_of_length(q, 2 * r)
    current = np.array([codes_of(np.frombuffer(u, dtype=np.uint8), q)], dtype=np.int64)
    seen: dict[bytes, int] = {}
    t = 0
    while True:
        key = current.tobytes()
        if key in seen:
            return seen[key]
        seen[key] = t
        yield current
        rows = digits_of(current, q, n)
        ext = np.empty((len(rows), len(outside), n + 2 * r), dtype=np.int64)
        ext[:, :, :r] = outside[None, :, :r]
        ext[:, :, r : r + n] = rows[:, None, :]
        ext[:, :, r + n :] = outside[None, :, r:]
        nxt = f.apply_rows(ext.reshape(-1, n + 2 * r))
        current = np.unique(codes_of(nxt, q))
        t += 1


def certify_strongly_blocking(f: LocalRule, u, s: int, cap: int | None = None) -> BlockingCertificate | None:
    """Certificate for the least offset at which ``u`` is strongly ``s``-blocking, or ``None``."""
    u = _word_over(f, u)
    n = len(u)
    if not 1 <= s <= n:
        raise ValueError("need 1 <= s <= |u|")
    q = f.q
    offsets = set(range(n - s + 1))
    sets = []
    gen = reachable_sets(f, u, cap)
    while True:
        try:
            codes = next(gen)
        except StopIteration as stop:
            start = stop.value
            break
        sets.append(codes)
        rows = digits_of(codes, q, n)
        for d in list(offsets):
            cols = rows[:, d : d + s]
            if (cols != cols[0]).any():
                offsets.discard(d)
        if not offsets:
            return None
    d = min(offsets)
    column = tuple(digits_of(c[:1], q, n)[0, d : d + s].astype(np.uint8).tobytes() for c in sets)
    reach = tuple(frozenset(bytes(row.astype(np.uint8)) for row in digits_of(c, q, n)) for c in sets)
    return BlockingCertificate(u, s, d, start, len(sets) - start, column, reach)


# -- plain blocking refutation ------------------------------------------------------


@dataclass(frozen=True)
class BlockingRefutation:
    """For every offset, two contexts around ``word`` whose columns split.

    ``pairs[d] = (x, y, t)``: the words ``x`` and ``y`` (each ``m`` cells,
    ``word``, ``m`` cells) differ only outside ``word`` and the uniform CA
    gives different contents of ``[m+d, m+d+width)`` at time ``t``.
    """

    word: bytes
    width: int
    padding: int
    pairs: dict[int, tuple[bytes, bytes, int]]

    def configurations(self, d: int, background: int = 0) -> tuple[EpConfig, EpConfig]:
        """The pair for offset ``d`` as configurations with ``word`` at cell 0."""
        x, y, _ = self.pairs[d]
        return EpConfig.finite(background, x, -self.padding), EpConfig.finite(background, y, -self.padding)


def refute_blocking(f: LocalRule, u, s: int, horizon: int = 30, padding: int = 6, samples: int = 1 << 16, seed: int = 0):
    """Search contexts of ``u`` showing that no offset is ``s``-blocking for the uniform CA ``f``.

    Contexts are all words ``a u b`` with ``|a| = |b| = padding`` (a seeded
    random sample when there are more than ``samples``).  The evolution
    of the inner cells is exact for ``min(horizon, padding // r)`` steps.
    Returns ``None`` when some offset resists every context.
    """
    u = _word_over(f, u)
    q, r, n, m = f.q, f.radius, len(u), padding
    if not 1 <= s <= n:
        raise ValueError("need 1 <= s <= |u|")
    steps = min(horizon, m // r) if r else horizon
    total = q ** (2 * m)
    if total <= samples:
        ctx = words_of_length(q, 2 * m)
    else:
        rng = np.random.default_rng(seed)
        ctx = rng.integers(0, q, size=(samples, 2 * m))
        ctx[0] = 0
    rows = np.empty((len(ctx), 2 * m + n), dtype=np.int64)
    rows[:, :m] = ctx[:, :m]
    rows[:, m : m + n] = np.frombuffer(u, dtype=np.uint8)
    rows[:, m + n :] = ctx[:, m:]
    full = rows
    history = [rows[:, m : m + n]]
    cur = rows
    lost = 0
    for _ in range(steps):
        cur = f.apply_rows(cur)
        lost += r
        history.append(cur[:, m - lost : m - lost + n])
    pairs: dict[int, tuple[bytes, bytes, int]] = {}
    for d in range(n - s + 1):
        for t, h in enumerate(history):
            cols = codes_of(h[:, d : d + s], q)
            diff = np.flatnonzero(cols != cols[0])
            if diff.size:
                x = full[0].astype(np.uint8).tobytes()
                y = full[diff[0]].astype(np.uint8).tobytes()
                pairs[d] = (x, y, t)
                break
        else:
            return None
    return BlockingRefutation(u, s, m, pairs)


def find_strongly_blocking(f: LocalRule, s: int, max_len: int, cap: int | None = None):
    """First word (by length, then lexicographically) certified strongly ``s``-blocking."""
    for n in range(max(s, 1), max_len + 1):
        for w in itertools.product(range(f.q), repeat=n):
            cert = certify_strongly_blocking(f, bytes(w), s, cap)
            if cert is not None:
                return bytes(w), cert
    return None


# -- equicontinuity ---------------------------------------------------------------


def _power_matches(f: LocalRule, q_: int, p: int, cap: int) -> bool:
    """``f^(q+p)(u) == f^q(u[pr : |u|-pr])`` for every ``u`` of length ``2(q+p)r + 1``."""
    Q, r = f.q, f.radius
    width = 2 * (q_ + p) * r + 1
    if Q**width > cap:
        raise ResourceBudgetError(f"composition table {Q}**{width} exceeds the budget")
    rows = words_of_length(Q, width)
    hi = rows
    for _ in range(q_ + p):
        hi = f.apply_rows(hi)
    lo = rows[:, p * r : width - p * r]
    for _ in range(q_):
        lo = f.apply_rows(lo)
    return bool((hi[:, 0] == lo[:, 0]).all())


def equicontinuity_search(f: LocalRule, max_q: int = 3, max_p: int = 3, cap: int | None = None):
    """Least ``(q, p)`` (by ``q+p``, then ``q``) with ``F^(q+p) = F^q``, or ``None``."""
    cap = budget() if cap is None else cap
    candidates = sorted(((a, b) for a in range(max_q + 1) for b in range(1, max_p + 1)), key=lambda c: (c[0] + c[1], c[0]))
    for q_, p in candidates:
        ok = _power_matches_r0(f, q_, p) if f.radius == 0 else _power_matches(f, q_, p, cap)
        if ok:
            return q_, p
    return None


def _power_matches_r0(f: LocalRule, q_: int, p: int) -> bool:
    # radius 0: the CA is a symbol map applied pointwise
    table = list(f.table)
    for a in range(f.q):
        x = a
        for _ in range(q_):
            x = table[x]
        y = x
        for _ in range(p):
            y = table[y]
        if x != y:
            return False
    return True


@dataclass(frozen=True)
class Equicontinuous:
    q: int
    p: int
    block_len: int
    verified: bool | None = None

    def describe(self) -> str:
        note = {True: "all blocks certified", False: "block check FAILED", None: "block check skipped"}[self.verified]
        return f"equicontinuous: F^{self.q + self.p} = F^{self.q}, blocks of length {self.block_len} ({note})"


@dataclass(frozen=True)
class AlmostEquicontinuousCert:
    blocking_word: bytes
    certificate: BlockingCertificate = field(repr=False, compare=False)

    def describe(self) -> str:
        c = self.certificate
        return f"almost equicontinuous: strongly {c.width}-blocking word {format_word(self.blocking_word)} at offset {c.offset}"


@dataclass(frozen=True)
class NoBlockingWordUpTo:
    max_len: int
    horizon: int
    refuted: int = 0
    candidates: int = 0

    def describe(self) -> str:
        return (
            f"no strongly blocking word up to length {self.max_len} "
            f"({self.refuted}/{self.candidates} refuted within {self.horizon} steps)"
        )


def classify_ca(f: LocalRule, max_word_len: int = 4, max_q: int = 3, max_p: int = 3, horizon: int = 30, cap: int | None = None):
    """Equicontinuous, almost equicontinuous (with certificate), or bounded evidence of neither."""
    cap = budget() if cap is None else cap
    try:
        found = equicontinuity_search(f, max_q, max_p, cap)
    except ResourceBudgetError:
        found = None
    if found is not None:
        q_, p = found
        k = (2 * p + 2 * q_ + 1) * max(f.radius, 1)
        verified = None
        if f.q ** (2 * k) <= cap:
            s = max(f.radius, 1)
            verified = all(
                certify_strongly_blocking(f, bytes(w), s, cap) is not None for w in itertools.product(range(f.q), repeat=k)
            )
        return Equicontinuous(q_, p, k, verified)
    s = max(f.radius, 1)
    hit = find_strongly_blocking(f, s, max_word_len, cap)
    if hit is not None:
        return AlmostEquicontinuousCert(hit[0], hit[1])
    refuted = candidates = 0
    for n in range(s, max_word_len + 1):
        for w in itertools.product(range(f.q), repeat=n):
            candidates += 1
            if refute_blocking(f, bytes(w), s, horizon, samples=1 << 12) is not None:
                refuted += 1
    return NoBlockingWordUpTo(max_word_len, horizon, refuted, candidates)


@dataclass(frozen=True)
class NuCaClassification:
    """``kind`` is ``"equicontinuous"``, ``"almost equicontinuous"`` or ``"unknown"``."""

    kind: str
    default: LocalRule | None = None
    evidence: object = None
    reason: str = ""

    def describe(self) -> str:
        head = self.kind
        if self.evidence is not None and hasattr(self.evidence, "describe"):
            head += f"; default rule: {self.evidence.describe()}"
        if self.reason:
            head += f" ({self.reason})"
        return head


def classify_nuca(spec: NuCaSpec, max_word_len: int = 4, max_q: int = 3, max_p: int = 3, horizon: int = 30, cap: int | None = None):
    """Classify a spec whose two tails run one and the same default rule ``f``.

    Equicontinuous when ``f`` is and the spec is ``k``-compatible with
    ``f`` for the block length ``k``; almost equicontinuous when ``f`` has a
    strongly ``r``-blocking word ``u`` and the spec is ``|u|``-compatible.
    """
    f = spec.default_rule()
    if f is None:
        return NuCaClassification("unknown", reason="tails do not share a single default rule")
    verdict = classify_ca(f, max_word_len, max_q, max_p, horizon, cap)
    if isinstance(verdict, Equicontinuous):
        if spec.is_n_compatible(f, verdict.block_len):
            return NuCaClassification("equicontinuous", f, verdict)
        hit = find_strongly_blocking(f, spec.radius, max_word_len, cap)
        if hit is not None:
            verdict = AlmostEquicontinuousCert(hit[0], hit[1])
    if isinstance(verdict, AlmostEquicontinuousCert):
        if spec.is_n_compatible(f, len(verdict.blocking_word)):
            return NuCaClassification("almost equicontinuous", f, verdict)
        return NuCaClassification("unknown", f, verdict, reason="not compatible with the blocking word length")
    return NuCaClassification("unknown", f, verdict)


# -- ultimate periodicity of the global map ---------------------------------------------


@dataclass(frozen=True)
class GlobalPeriodicity:
    q: int
    p: int
    samples: int


@dataclass(frozen=True)
class Inconclusive:
    reason: str


def random_config(rng: np.random.Generator, q: int, max_period: int = 3, half_width: int = 8) -> EpConfig:
    pl, pr = rng.integers(1, max_period + 1, size=2)
    width = int(rng.integers(0, 2 * half_width + 2))
    off = int(rng.integers(-half_width, half_width + 1 - width + half_width)) if width else 0
    return EpConfig(
        rng.integers(0, q, size=pl).astype(np.uint8).tobytes(),
        rng.integers(0, q, size=width).astype(np.uint8).tobytes(),
        off,
        rng.integers(0, q, size=pr).astype(np.uint8).tobytes(),
    )


def detect_global_ultimate_periodicity(spec: NuCaSpec, samples: int = 50, max_steps: int = 500, seed: int = 0):
    """Sampled check that ``H^(q'+p') = H^(q')``: every sampled orbit must become periodic.

    Returns the largest preperiod and the lcm of the periods observed.
    """
    rng = np.random.default_rng(seed)
    qs, ps = [], []
    for _ in range(samples):
        x = random_config(rng, spec.q)
        rep = orbit_analyze(spec, x, max_steps=max_steps)
        if not rep.ultimately_periodic:
            return Inconclusive(f"orbit of {x} not periodic within {max_steps} steps ({rep.exceeded})")
        qs.append(rep.preperiod)
        ps.append(rep.period)
    return GlobalPeriodicity(max(qs), lcm(*ps), samples)
