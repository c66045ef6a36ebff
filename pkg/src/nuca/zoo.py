"""Named example automata and executable checks of their finer properties.

Catalog (``q`` symbols, radius 1 throughout):

========  =========================================================
``z1``    constant 0 everywhere except a constant 1 at cell 0
``z2``    shift toward the center: ``x_{i+1}`` left of 0, ``x_{i-1}`` right, identity at 0
``z3``    constant 1 on even cells, constant 0 on odd cells
``z4``    ``x_{i-1}`` everywhere except the identity at cell 0
``z5``    ``x_{i-1} xor x_{i+1}`` everywhere except constant 0 at cell 0
``z6``    the three-symbol rule ``F9`` as a uniform CA
``z7``    ``F9`` everywhere except constant 1 at cell 0
``z8a``   spread-2 rule as a uniform CA
``z8b``   spread-2 rule everywhere except constant 2 at cell 0
========  =========================================================

plus the uniform shift, identity and constant CA over two symbols.
``H(x)_i = x_0`` (every cell copying cell 0) has unbounded radius and
cannot be written as a spec.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .core import EpConfig, as_word, format_word
from .engine import Trace, step, trace
from .rules import LocalRule, NuCaClass, NuCaSpec


def _f9(x: int, c: int, y: int) -> int:
    if c == 0:
        return 1 if 1 in (x, y) else 0
    if c == 1:
        return 2 if 2 in (x, y) else 1
    return 0 if 1 in (x, y) else 2


F9 = LocalRule.from_function(3, 1, _f9)
SPREAD2 = LocalRule.from_function(3, 1, lambda x, y, z: 2 if 2 in (x, y, z) else z)
XOR = LocalRule.from_function(2, 1, lambda a, b, c: a ^ c)

Z7 = NuCaSpec.with_default(F9, {0: LocalRule.constant(3, 1)})


@dataclass(frozen=True)
class ZooEntry:
    """A named spec with the verdicts it is known to have (``None``: not asserted)."""

    name: str
    title: str
    spec: NuCaSpec
    surjective: bool | None = None
    injective: bool | None = None
    nuca_class: NuCaClass | None = None
    classification: str | None = None
    note: str = ""
    seed_config: EpConfig | None = field(default=None, compare=False)


def zoo_catalog() -> list[ZooEntry]:
    c0, c1 = LocalRule.constant(2, 0), LocalRule.constant(2, 1)
    ident = LocalRule.identity(2)
    right, left = LocalRule.shift(2, 1, 1), LocalRule.shift(2, 1, -1)
    return [
        ZooEntry("z1", "constant 0 with constant 1 at the origin", NuCaSpec.with_default(c0, {0: c1}), False, False,
                 NuCaClass.DEFAULT_PERTURBED),
        ZooEntry("z2", "shift toward the center", NuCaSpec.from_rules([ident], [right], [left]), False, True,
                 NuCaClass.PERIODICALLY_PERTURBED),
        ZooEntry("z3", "parity constants", NuCaSpec.from_rules([c1], [c1, c0], [c1, c0]), False, False,
                 NuCaClass.PERIODICALLY_PERTURBED, note="period-2 tails: a periodically perturbed automaton"),
        ZooEntry("z4", "shift with the identity at the origin", NuCaSpec.with_default(left, {0: ident}), False, False,
                 NuCaClass.DEFAULT_PERTURBED),
        ZooEntry("z5", "xor with 0 frozen at the origin", NuCaSpec.with_default(XOR, {0: c0}), False, False,
                 NuCaClass.DEFAULT_PERTURBED),
        ZooEntry("z6", "three-symbol rule F9", NuCaSpec.uniform(F9), nuca_class=NuCaClass.UNIFORM_CA,
                 classification="unknown", note="no strongly blocking word is certified"),
        ZooEntry("z7", "F9 with 1 frozen at the origin", Z7, False, nuca_class=NuCaClass.DEFAULT_PERTURBED,
                 classification="unknown", note="sensitive, see sens1_check and sens2_check"),
        ZooEntry("z8a", "spread-2 rule", NuCaSpec.uniform(SPREAD2), nuca_class=NuCaClass.UNIFORM_CA,
                 classification="almost equicontinuous"),
        ZooEntry("z8b", "spread-2 rule with 2 frozen at the origin", NuCaSpec.with_default(SPREAD2, {0: LocalRule.constant(3, 2)}),
                 False, nuca_class=NuCaClass.DEFAULT_PERTURBED, classification="almost equicontinuous",
                 note="equicontinuous; see z8_window_check"),
        ZooEntry("shift", "uniform shift", NuCaSpec.uniform(right), True, True, NuCaClass.UNIFORM_CA, "unknown"),
        ZooEntry("identity", "uniform identity", NuCaSpec.uniform(ident), True, True, NuCaClass.UNIFORM_CA, "equicontinuous"),
        ZooEntry("constant", "uniform constant 0", NuCaSpec.uniform(c0), False, False, NuCaClass.UNIFORM_CA, "equicontinuous"),
    ]


def zoo_entry(name: str) -> ZooEntry:
    for entry in zoo_catalog():
        if entry.name == name:
            return entry
    raise KeyError(f"no zoo entry named {name!r}")


def verify_entry(entry: ZooEntry) -> list[tuple[str, object, object]]:
    """Run the deciders and classifier on an entry: ``(check, expected, got)`` rows."""
    from .debruijn import decide_injective, decide_surjective
    from .dynamics import classify_nuca

    rows: list[tuple[str, object, object]] = [("class", entry.nuca_class, entry.spec.class_of())]
    if entry.surjective is not None:
        rows.append(("surjective", entry.surjective, decide_surjective(entry.spec).surjective))
    if entry.injective is not None:
        rows.append(("injective", entry.injective, decide_injective(entry.spec).injective))
    if entry.classification is not None:
        rows.append(("classification", entry.classification, classify_nuca(entry.spec).kind))
    return rows


def render(entry: ZooEntry, steps: int = 200, width: int = 200, seed: int = 0) -> Trace:
    """Space-time diagram from a seeded random window of ``width`` cells centered on 0."""
    x = entry.seed_config
    if x is None:
        rng = np.random.default_rng(seed)
        q = entry.spec.q
        x = EpConfig(rng.integers(0, q, size=7).astype(np.uint8).tobytes(),
                     rng.integers(0, q, size=width).astype(np.uint8).tobytes(), -(width // 2),
                     rng.integers(0, q, size=5).astype(np.uint8).tobytes())
    a = -(width // 2)
    return trace(entry.spec, x, a, a + width - 1, steps - 1)


# -- the rewriting system behind the sensitivity of z7 ---------------------------------


@dataclass(frozen=True)
class RewriteState:
    word: bytes
    flag: int

    def __str__(self) -> str:
        return f"({format_word(self.word) or 'ε'},{self.flag})"


def _f(word: bytes) -> bytes:
    return F9.extend_word(word)


def rewrite_rule(state: RewriteState) -> int:
    """Number (1..7) of the rule that applies to ``state``."""
    if not state.word:
        return 7
    last = state.word[-1]
    return {(0, 0): 1, (1, 0): 2, (2, 0): 3, (0, 1): 4, (1, 1): 5, (2, 1): 6}[last, state.flag]


def rewrite_step(state: RewriteState) -> RewriteState:
    u, rule = state.word[:-1], rewrite_rule(state)
    if rule == 1:
        return RewriteState(u, 0)
    if rule == 2:
        return RewriteState(u, 1)
    if rule == 3:
        return RewriteState(_f(b"\x01" + u + b"\x02\x00"), 0)
    if rule == 4:
        return RewriteState(_f(b"\x01" + u + b"\x00"), 1)
    if rule == 5:
        return RewriteState(u, 1)
    if rule == 6:
        return RewriteState(_f(b"\x01" + u + b"\x02"), 0)
    return RewriteState(b"", 1)


@dataclass(frozen=True)
class Exceeded:
    steps: int


def rewrite_run(state: RewriteState, max_steps: int = 10_000):
    """Steps needed to reach ``(ε, 1)``, or :class:`Exceeded`."""
    final = RewriteState(b"", 1)
    for m in range(max_steps + 1):
        if state == final:
            return m
        state = rewrite_step(state)
    return Exceeded(max_steps)


def regle3_sequence(u, max_steps: int = 10_000):
    """Least ``m`` with ``u^(m) = 1^(|u|+1)`` where ``u^(0) = u2``, ``u^(n+1) = f(1 u^(n) 0)``."""
    w = as_word(u) + b"\x02"
    target = b"\x01" * len(w)
    for m in range(max_steps + 1):
        if w == target:
            return m
        w = _f(b"\x01" + w + b"\x00")
    return Exceeded(max_steps)


FORBIDDEN = (b"\x00\x01", b"\x01\x02", b"\x02\x00", b"\x02\x02")


def forbidden_free(w) -> bool:
    """No factor among ``01, 12, 20, 22``."""
    w = as_word(w)
    return not any(bad in w for bad in FORBIDDEN)


def suffix_forbidden_free(x: EpConfig, i: int) -> bool:
    """``forbidden_free(x_[i, oo))``, decided on a finite stretch covering a full right period."""
    x = x.normalize()
    last = max(x.end, i) + len(x.right) + 1
    return forbidden_free(x.window(i, last))


def propagation_check(x: EpConfig, i: int, steps: int, spec: NuCaSpec = Z7) -> bool:
    """Along the orbit of ``x``: whenever ``y_[i,oo)`` is forbidden-free, so is ``H(y)_[i+1,oo)``."""
    y = x
    for _ in range(steps):
        nxt = step(spec, y)
        if suffix_forbidden_free(y, i) and not suffix_forbidden_free(nxt, i + 1):
            return False
        y = nxt
    return True


def one_sided(u, tail: int) -> EpConfig:
    """``u tail^oo`` on cells ``0, 1, ...``, padded on the left with the same symbol."""
    return EpConfig.finite(tail, as_word(u), 0)


def sens1_check(u, horizon: int = 10_000, window: int = 100, spec: NuCaSpec = Z7):
    """Least ``n0 <= horizon`` after which cell 1 of ``H^n(u 0^oo)`` reads 1 for ``window`` consecutive steps."""
    x = one_sided(u, 0)
    run = 0
    for n in range(1, horizon + window + 1):
        x = step(spec, x)
        run = run + 1 if x.sample(1) == 1 else 0
        if run == window:
            n0 = n - window
            return n0 if n0 <= horizon else None
    return None


def sens2_times(u, horizon: int = 10_000, count: int = 5, spec: NuCaSpec = Z7) -> list[int]:
    """Times ``m <= horizon`` (at most ``count``) with ``H^m(u 2^oo)_1 = 2``."""
    x = one_sided(u, 2)
    out = []
    for m in range(1, horizon + 1):
        x = step(spec, x)
        if x.sample(1) == 2:
            out.append(m)
            if len(out) == count:
                break
    return out


def sens2_check(u, n: int, horizon: int = 10_000, spec: NuCaSpec = Z7):
    """Some ``m`` in ``(n, horizon]`` with ``H^m(u 2^oo)_1 = 2``, or ``None``."""
    x = one_sided(u, 2)
    for m in range(1, horizon + 1):
        x = step(spec, x)
        if m > n and x.sample(1) == 2:
            return m
    return None


def z8_window_check(x: EpConfig, n: int, extra: int = 20, spec: NuCaSpec | None = None, y: EpConfig | None = None) -> bool:
    """For the frozen-2 automaton: ``H^k(x)_[-n,n]`` is all 2 for ``n < k <= n + extra``.

    With ``y`` given (agreeing with ``x`` on ``[-2n, 2n]``) the windows of
    both orbits must also agree for ``k <= n``.
    """
    spec = zoo_entry("z8b").spec if spec is None else spec
    twos = b"\x02" * (2 * n + 1)
    for k in range(n + extra + 1):
        if y is not None and k <= n and x.window(-n, n) != y.window(-n, n):
            return False
        if k > n and x.window(-n, n) != twos:
            return False
        x = step(spec, x)
        if y is not None:
            y = step(spec, y)
    return True


def injective_on_finite(spec: NuCaSpec, background: int, half_width: int) -> bool:
    """Distinct images for all ``background``-finite configurations supported in ``[-h, h]``."""
    images = set()
    count = 0
    for w in itertools.product(range(spec.q), repeat=2 * half_width + 1):
        images.add(step(spec, EpConfig.finite(background, bytes(w), -half_width)))
        count += 1
    return len(images) == count
