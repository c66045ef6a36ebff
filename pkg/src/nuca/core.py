"""Alphabets, words and eventually periodic bi-infinite configurations.

Symbols are small nonnegative integers and words are stored as ``bytes``
(so ``q <= 256``).  An :class:`EpConfig` describes a configuration
``x : Z -> A`` by a finite center word placed at ``offset`` and two
periodic tails anchored at the center boundaries::

    x_i = center[i - offset]                  offset <= i < end
    x_i = left[(i - offset) % len(left)]      i < offset
    x_i = right[(i - end) % len(right)]       i >= end

where ``end = offset + len(center)``.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

DIGITS = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ"

DEFAULT_BUDGET = 1 << 22


class ResourceBudgetError(RuntimeError):
    """A computation would exceed its configured state or table budget."""


def budget(default: int = DEFAULT_BUDGET) -> int:
    """State/table cap, overridable through the ``NUCA_BUDGET`` environment variable."""
    value = os.environ.get("NUCA_BUDGET")
    if value:
        return int(value)
    return default


def as_word(symbols: Iterable[int] | bytes | str) -> bytes:
    """Coerce digits, text (``"0-9A-Z"``) or an integer sequence into a word."""
    if isinstance(symbols, bytes):
        return symbols
    if isinstance(symbols, str):
        return parse_word(symbols)
    if isinstance(symbols, np.ndarray):
        return symbols.astype(np.uint8).tobytes()
    return bytes(symbols)


def parse_word(text: str) -> bytes:
    try:
        return bytes(DIGITS.index(ch) for ch in text.upper())
    except ValueError:
        raise ValueError(f"bad symbol in word {text!r}") from None


def format_word(word: bytes | Sequence[int]) -> str:
    return "".join(DIGITS[s] for s in word)


def check_word(word: bytes, q: int) -> None:
    if q < 2:
        raise ValueError("alphabet size must be at least 2")
    if word and max(word) >= q:
        raise ValueError(f"symbol {max(word)} outside alphabet of size {q}")


def primitive_root(word: bytes) -> bytes:
    """Shortest ``w`` with ``word == w * m``."""
    n = len(word)
    for d in range(1, n + 1):
        if n % d == 0 and word[d:] + word[:d] == word:
            return word[:d]
    return word


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out


def words_of_length(q: int, n: int) -> np.ndarray:
    """All words of length ``n`` as rows of a ``(q**n, n)`` array, in ascending order."""
    codes = np.arange(q**n, dtype=np.int64)
    return digits_of(codes, q, n)


def digits_of(codes: np.ndarray, q: int, n: int) -> np.ndarray:
    """Base-``q`` digits of ``codes``, most significant first."""
    out = np.empty((len(codes), n), dtype=np.int64)
    rest = np.asarray(codes, dtype=np.int64).copy()
    for j in range(n - 1, -1, -1):
        out[:, j] = rest % q
        rest //= q
    return out


def codes_of(digits: np.ndarray, q: int) -> np.ndarray:
    """Inverse of :func:`digits_of` along the last axis."""
    digits = np.asarray(digits, dtype=np.int64)
    out = np.zeros(digits.shape[:-1], dtype=np.int64)
    for j in range(digits.shape[-1]):
        out = out * q + digits[..., j]
    return out


@dataclass(frozen=True, eq=False)
class EpConfig:
    """Eventually periodic configuration; ``==`` compares denoted functions."""

    left: bytes
    center: bytes
    offset: int
    right: bytes

    def __post_init__(self):
        for name in ("left", "center", "right"):
            value = getattr(self, name)
            if not isinstance(value, bytes):
                object.__setattr__(self, name, as_word(value))
        if not self.left or not self.right:
            raise ValueError("tails must be nonempty")
        object.__setattr__(self, "offset", int(self.offset))

    @classmethod
    def uniform(cls, symbol: int) -> "EpConfig":
        return cls(bytes([symbol]), b"", 0, bytes([symbol]))

    @classmethod
    def finite(cls, background: int, word, offset: int = 0) -> "EpConfig":
        """``background``-finite configuration carrying ``word`` at ``offset``."""
        a = bytes([background])
        return cls(a, as_word(word), offset, a)

    @classmethod
    def from_samples(cls, values, start: int, left_len: int, center_len: int, right_len: int) -> "EpConfig":
        """Build from a sampled stretch ``values`` covering ``[start, start + left_len + center_len + right_len)``.

        The first ``left_len`` values become the left period, the last
        ``right_len`` the right period.  The caller guarantees that the
        function really is periodic with those periods outside the center.
        """
        raw = as_word(values)
        c0 = left_len
        c1 = left_len + center_len
        return cls(raw[:c0], raw[c0:c1], start + left_len, raw[c1 : c1 + right_len])

    @property
    def end(self) -> int:
        return self.offset + len(self.center)

    def sample(self, i: int) -> int:
        if i < self.offset:
            return self.left[(i - self.offset) % len(self.left)]
        if i >= self.end:
            return self.right[(i - self.end) % len(self.right)]
        return self.center[i - self.offset]

    def values(self, a: int, b: int) -> np.ndarray:
        """Symbols on the half-open interval ``[a, b)`` as an int64 array."""
        pos = np.arange(a, b, dtype=np.int64)
        out = np.empty(len(pos), dtype=np.int64)
        lo = pos < self.offset
        hi = pos >= self.end
        mid = ~(lo | hi)
        if lo.any():
            left = np.frombuffer(self.left, dtype=np.uint8)
            out[lo] = left[(pos[lo] - self.offset) % len(self.left)]
        if hi.any():
            right = np.frombuffer(self.right, dtype=np.uint8)
            out[hi] = right[(pos[hi] - self.end) % len(self.right)]
        if mid.any():
            center = np.frombuffer(self.center, dtype=np.uint8)
            out[mid] = center[pos[mid] - self.offset]
        return out

    def window(self, a: int, b: int) -> bytes:
        """Closed interval ``[a, b]`` as a word."""
        return self.values(a, b + 1).astype(np.uint8).tobytes()

    def is_finite_over(self, symbol: int) -> bool:
        n = self.normalize()
        return n.left == n.right == bytes([symbol])

    def normalize(self) -> "EpConfig":
        return self._canonical

    @cached_property
    def _canonical(self) -> "EpConfig":
        left = primitive_root(self.left)
        right = primitive_root(self.right)
        # Rotate the reduced left tail so its anchoring at offset is unchanged.
        left = self.left[len(self.left) - len(left) :]
        right = self.right[: len(right)]
        pl, pr = len(left), len(right)
        x = EpConfig(left, self.center, self.offset, right)

        span = pl + pr
        a = x.offset - pl
        arr = x.values(a, x.end + span)
        same = arr[pl:] == arr[:-pl]
        bad = np.flatnonzero(~same)
        if len(bad) == 0:
            return _periodic_canonical(x, pl)
        s = a + pl + int(bad[0])

        a2 = x.offset - span
        arr = x.values(a2, x.end + pr)
        same = arr[:-pr] == arr[pr:]
        bad = np.flatnonzero(~same)
        if len(bad) == 0:
            return _periodic_canonical(x, pr)
        e = a2 + int(bad[-1]) + 1

        # Tail regions may overlap by less than a period; the boundary then sits at e.
        off = min(s, e)
        end = e
        vals = x.values(off - pl, end + pr)
        return EpConfig.from_samples(vals, off - pl, pl, end - off, pr)

    def key(self) -> tuple:
        n = self._canonical
        return (n.left, n.center, n.offset, n.right)

    def __eq__(self, other):
        if not isinstance(other, EpConfig):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def shift(self, s: int) -> "EpConfig":
        """Re-offset: the returned configuration ``y`` has ``y_{i+s} = x_i``."""
        return EpConfig(self.left, self.center, self.offset + s, self.right)

    def with_window(self, start: int, word) -> "EpConfig":
        """Overwrite ``[start, start + len(word))`` with ``word``."""
        word = as_word(word)
        a = min(start, self.offset)
        b = max(start + len(word), self.end)
        pl, pr = len(self.left), len(self.right)
        vals = self.values(a - pl, b + pr)
        vals[start - a + pl : start - a + pl + len(word)] = np.frombuffer(word, dtype=np.uint8)
        return EpConfig.from_samples(vals, a - pl, pl, b - a, pr)

    def __str__(self) -> str:
        return format_config(self)

    def __repr__(self) -> str:
        return f"EpConfig({format_config(self)!r})"


def _periodic_canonical(x: EpConfig, p: int) -> EpConfig:
    vals = x.values(-p, p)
    return EpConfig.from_samples(vals, -p, p, 0, p)


def equals(x: EpConfig, y: EpConfig) -> bool:
    return x.key() == y.key()


def distance_exponent(x: EpConfig, y: EpConfig) -> int | None:
    """The ``n`` of ``d(x, y) = 2**-n``, or ``None`` when ``x == y``."""
    if equals(x, y):
        return None
    x, y = x.normalize(), y.normalize()
    reach = max(abs(x.offset), abs(x.end), abs(y.offset), abs(y.end))
    reach += lcm(len(x.left), len(y.left), len(x.right), len(y.right)) + 1
    pos = np.arange(-reach, reach + 1)
    diff = x.values(-reach, reach + 1) != y.values(-reach, reach + 1)
    return int(np.abs(pos[diff]).min())


def distance(x: EpConfig, y: EpConfig) -> float:
    n = distance_exponent(x, y)
    return 0.0 if n is None else 2.0**-n


def parse_config(text: str) -> EpConfig:
    """Parse ``"<left>*|<center>@<offset>|<right>*"``, e.g. ``0*|102@-1|2*``."""
    try:
        left, middle, right = text.strip().split("|")
        center, offset = middle.split("@")
        if not (left.endswith("*") and right.endswith("*")):
            raise ValueError
        return EpConfig(parse_word(left[:-1]), parse_word(center), int(offset), parse_word(right[:-1]))
    except ValueError:
        raise ValueError(f"malformed configuration literal {text!r}") from None


def format_config(x: EpConfig) -> str:
    return f"{format_word(x.left)}*|{format_word(x.center)}@{x.offset}|{format_word(x.right)}*"
