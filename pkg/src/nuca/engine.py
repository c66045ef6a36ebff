"""Exact global-map stepping of a :class:`NuCaSpec` on eventually periodic configurations."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import EpConfig, format_word, lcm
from .rules import NuCaSpec


def step(spec: NuCaSpec, x: EpConfig) -> EpConfig:
    """One application of the global map.

    Far enough left (right) every cell uses a left (right) tail rule on a
    periodic neighborhood, so the image is periodic there with period
    ``lcm(rule period, configuration period)``; one such block on each
    side of a directly evaluated center determines the whole image.
    """
    r, k = spec.radius, spec.k
    ml = lcm(len(spec.left), len(x.left))
    mr = lcm(len(spec.right), len(x.right))
    s = min(x.offset - r, -k)
    e = max(x.end + r, k + 1)
    a, b = s - ml, e + mr
    cells = x.values(a - r, b + r)
    if cells.size and cells.max() >= spec.q:
        raise ValueError("configuration uses symbols outside the spec alphabet")
    n = b - a
    idx = np.zeros(n, dtype=np.int64)
    for m in range(2 * r + 1):
        idx = idx * spec.q + cells[m : m + n]
    rows = spec.rule_indices(np.arange(a, b))
    y = spec.tables[rows, idx]
    return EpConfig.from_samples(y.astype(np.uint8).tobytes(), a, ml, e - s, mr).normalize()


def iterate(spec: NuCaSpec, x: EpConfig, steps: int) -> EpConfig:
    for _ in range(steps):
        x = step(spec, x)
    return x


def orbit(spec: NuCaSpec, x: EpConfig, steps: int):
    """Yield ``x, H(x), ..., H^steps(x)``."""
    yield x
    for _ in range(steps):
        x = step(spec, x)
        yield x


@dataclass(frozen=True)
class Trace:
    """Space-time diagram restricted to the cells ``[a, b]``."""

    a: int
    b: int
    rows: tuple[bytes, ...]

    def column(self, i: int) -> bytes:
        return bytes(row[i - self.a] for row in self.rows)

    def to_array(self) -> np.ndarray:
        return np.array([list(row) for row in self.rows], dtype=np.uint8).reshape(len(self.rows), self.b - self.a + 1)

    def text(self) -> str:
        return "\n".join(format_word(row) for row in self.rows)

    def to_pgm(self, q: int) -> bytes:
        """Binary P5 image, one pixel per cell, symbols scaled to 0..255."""
        arr = self.to_array().astype(np.int64)
        scale = 255 // max(q - 1, 1)
        pixels = (arr * scale).astype(np.uint8)
        h, w = pixels.shape
        return f"P5\n{w} {h}\n255\n".encode() + pixels.tobytes()

    def save_pgm(self, path, q: int) -> None:
        with open(path, "wb") as fh:
            fh.write(self.to_pgm(q))


def trace(spec: NuCaSpec, x: EpConfig, a: int, b: int, steps: int) -> Trace:
    if a > b:
        raise ValueError("empty window")
    rows = [y.window(a, b) for y in orbit(spec, x, steps)]
    return Trace(a, b, tuple(rows))


def read_pgm(data: bytes) -> np.ndarray:
    """Parse a binary P5 image written by :meth:`Trace.to_pgm`."""
    magic, dims, _maxval, rest = data.split(b"\n", 3)
    if magic != b"P5":
        raise ValueError("not a binary PGM")
    w, h = (int(t) for t in dims.split())
    return np.frombuffer(rest, dtype=np.uint8).reshape(h, w)


@dataclass(frozen=True)
class OrbitReport:
    """Outcome of :func:`orbit_analyze`.

    ``preperiod``/``period`` are set when ``H^(q+p)(x) = H^q(x)`` was
    detected; otherwise ``exceeded`` names the budget that ran out.
    """

    preperiod: int | None = None
    period: int | None = None
    steps: int = 0
    max_center_width: int = 0
    exceeded: str | None = None

    @property
    def ultimately_periodic(self) -> bool:
        return self.period is not None


def orbit_analyze(spec: NuCaSpec, x: EpConfig, max_steps: int = 1000, max_center_width: int = 10_000) -> OrbitReport:
    seen: dict[tuple, int] = {}
    widest = 0
    for t in range(max_steps + 1):
        key = x.key()
        if key in seen:
            q = seen[key]
            return OrbitReport(preperiod=q, period=t - q, steps=t, max_center_width=widest)
        seen[key] = t
        widest = max(widest, len(x.normalize().center))
        if widest > max_center_width:
            return OrbitReport(steps=t, max_center_width=widest, exceeded="center width")
        if t < max_steps:
            x = step(spec, x)
    return OrbitReport(steps=max_steps, max_center_width=widest, exceeded="steps")
