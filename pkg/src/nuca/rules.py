"""Local rules as lookup tables and the finitary description of a non-uniform CA."""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Mapping, Sequence

import numpy as np

from .core import (
    DIGITS,
    ResourceBudgetError,
    as_word,
    budget,
    check_word,
    codes_of,
    format_word,
    parse_word,
    words_of_length,
)


@dataclass(frozen=True)
class LocalRule:
    """A map ``A^(2r+1) -> A`` stored as a table in ascending neighborhood order.

    ``table[sum(a_m * q**(2r-m))]`` is the image of ``(a_0, ..., a_2r)``;
    ``a_0`` is the leftmost cell.
    """

    q: int
    radius: int
    table: bytes

    def __post_init__(self):
        if not isinstance(self.table, bytes):
            object.__setattr__(self, "table", as_word(self.table))
        if self.radius < 0:
            raise ValueError("radius must be nonnegative")
        if len(self.table) != self.q ** self.width:
            raise ValueError(f"table length {len(self.table)} != {self.q}**{self.width}")
        check_word(self.table, self.q)

    @property
    def width(self) -> int:
        return 2 * self.radius + 1

    @cached_property
    def array(self) -> np.ndarray:
        return np.frombuffer(self.table, dtype=np.uint8).astype(np.int64)

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_function(cls, q: int, radius: int, func: Callable[..., int]) -> "LocalRule":
        """Tabulate ``func(a_0, ..., a_2r)``."""
        words = words_of_length(q, 2 * radius + 1)
        return cls(q, radius, bytes(int(func(*row)) for row in words.tolist()))

    @classmethod
    def from_wolfram(cls, number: int) -> "LocalRule":
        """Elementary CA by Wolfram number (``q = 2``, ``r = 1``)."""
        if not 0 <= number < 256:
            raise ValueError("Wolfram numbers are 0..255")
        return cls(2, 1, bytes((number >> i) & 1 for i in range(8)))

    @classmethod
    def identity(cls, q: int, radius: int = 1) -> "LocalRule":
        return cls.from_function(q, radius, lambda *a: a[radius])

    @classmethod
    def constant(cls, q: int, symbol: int, radius: int = 1) -> "LocalRule":
        return cls(q, radius, bytes([symbol]) * q ** (2 * radius + 1))

    @classmethod
    def shift(cls, q: int, radius: int = 1, direction: int = 1) -> "LocalRule":
        """``F(x)_i = x_{i + direction}`` (direction ``+1`` reads the right neighbour)."""
        if abs(direction) > radius:
            raise ValueError("shift distance exceeds radius")
        return cls.from_function(q, radius, lambda *a: a[radius + direction])

    @classmethod
    def parse(cls, text: str, q: int, radius: int) -> "LocalRule":
        if "," in text or q > len(DIGITS):
            table = bytes(int(t) for t in text.split(","))
        else:
            table = parse_word(text)
        return cls(q, radius, table)

    def format(self) -> str:
        if self.q > len(DIGITS):
            return ",".join(str(s) for s in self.table)
        return format_word(self.table)

    # -- evaluation -------------------------------------------------------

    def index(self, neighborhood: Sequence[int]) -> int:
        idx = 0
        for a in neighborhood:
            idx = idx * self.q + a
        return idx

    def apply(self, neighborhood) -> int:
        neighborhood = as_word(neighborhood)
        if len(neighborhood) != self.width:
            raise ValueError(f"neighborhood must have length {self.width}")
        return self.table[self.index(neighborhood)]

    def __call__(self, *neighborhood: int) -> int:
        return self.apply(bytes(neighborhood))

    def apply_rows(self, rows: np.ndarray) -> np.ndarray:
        """Extend the rule to every row of a 2-D symbol array (rows shrink by ``2r``)."""
        rows = np.asarray(rows, dtype=np.int64)
        n = rows.shape[-1] - 2 * self.radius
        if n <= 0:
            return rows[..., :0]
        idx = np.zeros(rows.shape[:-1] + (n,), dtype=np.int64)
        for m in range(self.width):
            idx = idx * self.q + rows[..., m : m + n]
        return self.array[idx]

    def extend_word(self, word) -> bytes:
        """``f(u)``: empty when ``|u| <= 2r``, else ``f`` applied to every length-``2r+1`` window."""
        word = as_word(word)
        if len(word) <= 2 * self.radius:
            return b""
        row = np.frombuffer(word, dtype=np.uint8).astype(np.int64)
        return self.apply_rows(row[None, :])[0].astype(np.uint8).tobytes()

    def self_compose(self, n: int, cap: int | None = None) -> "LocalRule":
        """The local rule of ``F**n`` (radius ``n * r``)."""
        if n < 1:
            raise ValueError("n must be >= 1")
        if n == 1:
            return self
        width = 2 * n * self.radius + 1
        cap = budget() if cap is None else cap
        if self.q**width > cap:
            raise ResourceBudgetError(f"table of size {self.q}**{width} exceeds budget {cap}")
        rows = words_of_length(self.q, width)
        for _ in range(n):
            rows = self.apply_rows(rows)
        return LocalRule(self.q, n * self.radius, rows[:, 0].astype(np.uint8).tobytes())

    def pad(self, radius: int) -> "LocalRule":
        """Same map viewed with a larger radius (extra cells ignored)."""
        if radius < self.radius:
            raise ValueError("cannot shrink radius")
        if radius == self.radius:
            return self
        extra = radius - self.radius
        words = words_of_length(self.q, 2 * radius + 1)
        inner = words[:, extra : extra + self.width]
        return LocalRule(self.q, radius, self.array[codes_of(inner, self.q)].astype(np.uint8).tobytes())

    def __repr__(self) -> str:
        table = self.format()
        if len(table) > 40:
            table = table[:37] + "..."
        return f"LocalRule(q={self.q}, radius={self.radius}, table={table!r})"


class NuCaClass(enum.IntEnum):
    """Strongest class of the chain CA < dnuCA < pnuCA < rnuCA."""

    UNIFORM_CA = 0
    DEFAULT_PERTURBED = 1
    PERIODICALLY_PERTURBED = 2
    RADIUS_UNIFORM = 3


def _rules(rules) -> tuple[LocalRule, ...]:
    if isinstance(rules, LocalRule):
        return (rules,)
    return tuple(rules)


@dataclass(frozen=True)
class NuCaSpec:
    """Finitary non-uniform CA.

    The rule at cell ``i`` is ``window[i + k]`` for ``|i| <= k``,
    ``right[i % len(right)]`` for ``i > k`` and ``left[i % len(left)]``
    for ``i < -k`` (Python's ``%``, so residues lie in ``0..p-1``).
    """

    q: int
    radius: int
    k: int
    window: tuple[LocalRule, ...]
    left: tuple[LocalRule, ...]
    right: tuple[LocalRule, ...]
    tables: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        for name in ("window", "left", "right"):
            object.__setattr__(self, name, _rules(getattr(self, name)))
        if self.k < 0:
            raise ValueError("k must be nonnegative")
        if len(self.window) != 2 * self.k + 1:
            raise ValueError(f"window must hold 2k+1 = {2 * self.k + 1} rules")
        if not self.left or not self.right:
            raise ValueError("tails must be nonempty")
        for rule in self.all_rules:
            if rule.q != self.q or rule.radius != self.radius:
                raise ValueError("all rules must share alphabet and radius (pad them first)")
        stacked = np.stack([rule.array for rule in self.left + self.window + self.right])
        object.__setattr__(self, "tables", stacked)

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_rules(cls, window, left, right) -> "NuCaSpec":
        """Build from rules of possibly different radii, padding all to the largest."""
        window, left, right = _rules(window), _rules(left), _rules(right)
        everything = window + left + right
        q = everything[0].q
        radius = max(rule.radius for rule in everything)
        if any(rule.q != q for rule in everything):
            raise ValueError("all rules must share the alphabet")
        pad = lambda rules: tuple(rule.pad(radius) for rule in rules)
        return cls(q, radius, (len(window) - 1) // 2, pad(window), pad(left), pad(right))

    @classmethod
    def uniform(cls, rule: LocalRule) -> "NuCaSpec":
        return cls(rule.q, rule.radius, 0, (rule,), (rule,), (rule,))

    @classmethod
    def with_default(cls, default: LocalRule, exceptions: Mapping[int, LocalRule]) -> "NuCaSpec":
        """dnuCA applying ``default`` everywhere except at the cells in ``exceptions``."""
        k = max((abs(i) for i in exceptions), default=0)
        window = [exceptions.get(i, default) for i in range(-k, k + 1)]
        return cls.from_rules(window, (default,), (default,))

    # -- structure --------------------------------------------------------

    @property
    def all_rules(self) -> tuple[LocalRule, ...]:
        return self.window + self.left + self.right

    @property
    def left_period(self) -> int:
        return len(self.left)

    @property
    def right_period(self) -> int:
        return len(self.right)

    def rule_at(self, i: int) -> LocalRule:
        if i > self.k:
            return self.right[i % len(self.right)]
        if i < -self.k:
            return self.left[i % len(self.left)]
        return self.window[i + self.k]

    def rule_indices(self, positions: np.ndarray) -> np.ndarray:
        """Row of :attr:`tables` used at each position."""
        pos = np.asarray(positions, dtype=np.int64)
        pl, pw = len(self.left), len(self.window)
        out = np.empty(len(pos), dtype=np.int64)
        lo = pos < -self.k
        hi = pos > self.k
        mid = ~(lo | hi)
        out[lo] = pos[lo] % pl
        out[mid] = pl + pos[mid] + self.k
        out[hi] = pl + pw + pos[hi] % len(self.right)
        return out

    def class_of(self) -> NuCaClass:
        rules = set(self.all_rules)
        if len(rules) == 1:
            return NuCaClass.UNIFORM_CA
        if len(self.left) == len(self.right) == 1 and self.left == self.right:
            return NuCaClass.DEFAULT_PERTURBED
        return NuCaClass.PERIODICALLY_PERTURBED

    def default_rule(self) -> LocalRule | None:
        """The single default rule when both tails are the same constant rule."""
        if len(self.left) == len(self.right) == 1 and self.left == self.right:
            return self.right[0]
        return None

    def is_n_compatible(self, rule: LocalRule, n: int) -> bool:
        """Whether ``rule`` is applied on length-``n`` intervals arbitrarily far out on both sides."""
        return _longest_cyclic_run(self.left, rule) >= n and _longest_cyclic_run(self.right, rule) >= n

    def trim(self) -> "NuCaSpec":
        """Smallest window: drop outer window cells whose rule agrees with the tails."""
        k = self.k
        while k > 0 and self.window[self.k + k] == self.right[k % len(self.right)] and (
            self.window[self.k - k] == self.left[(-k) % len(self.left)]
        ):
            k -= 1
        if k == self.k:
            return self
        return NuCaSpec(self.q, self.radius, k, self.window[self.k - k : self.k + k + 1], self.left, self.right)

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        fmt = lambda rules: [rule.format() for rule in rules]
        return {
            "alphabet": self.q,
            "radius": self.radius,
            "k": self.k,
            "window": fmt(self.window),
            "left": fmt(self.left),
            "right": fmt(self.right),
        }

    @classmethod
    def from_json(cls, doc: Mapping) -> "NuCaSpec":
        try:
            q = int(doc["alphabet"])
            radius = int(doc["radius"])

            def rule(item):
                if isinstance(item, Mapping):
                    return LocalRule.parse(str(item["table"]), q, int(item["radius"]))
                return LocalRule.parse(str(item), q, radius)

            left = [rule(item) for item in doc["left"]]
            right = [rule(item) for item in doc["right"]]
            if "window" in doc:
                window = [rule(item) for item in doc["window"]]
                if "k" in doc and len(window) != 2 * int(doc["k"]) + 1:
                    raise ValueError("window length does not match k")
            else:
                if left[0] != right[0]:
                    raise ValueError("no window given and the tails disagree at cell 0")
                window = [right[0]]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed spec document: {exc}") from None
        return cls.from_rules(window, left, right)

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def loads(cls, text: str) -> "NuCaSpec":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"spec is not valid JSON: {exc}") from None
        return cls.from_json(doc)

    @classmethod
    def load(cls, path) -> "NuCaSpec":
        with open(path) as fh:
            return cls.loads(fh.read())

    def save(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh, indent=1)
            fh.write("\n")


def _longest_cyclic_run(rules: tuple[LocalRule, ...], rule: LocalRule) -> float:
    hits = [r == rule for r in rules]
    if all(hits):
        return float("inf")
    best = run = 0
    for hit in hits + hits:
        run = run + 1 if hit else 0
        best = max(best, run)
    return best


def apply(rule: LocalRule, neighborhood) -> int:
    return rule.apply(neighborhood)


def extend_word(rule: LocalRule, word) -> bytes:
    return rule.extend_word(word)


def self_compose(rule: LocalRule, n: int) -> LocalRule:
    return rule.self_compose(n)
