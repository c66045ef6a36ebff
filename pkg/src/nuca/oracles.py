"""Brute-force cross-checks for the graph deciders.

Nothing here touches :mod:`nuca.debruijn`: preimages are enumerated
directly from the rule tables and the pair graph is rebuilt cell by cell.
"""
from __future__ import annotations

import functools
import itertools
from collections import deque
from dataclasses import dataclass

import numpy as np

from .conjugacy import pack_spec, unpack_config
from .core import EpConfig, ResourceBudgetError, budget, format_word, primitive_root
from .engine import step
from .rules import NuCaSpec


@dataclass(frozen=True)
class RefutedAt:
    word: bytes
    position: int
    n: int

    def line(self) -> str:
        return f"refuted at n={self.n} word={format_word(self.word)}@{self.position}"


@dataclass(frozen=True)
class ConsistentUpTo:
    n: int

    def line(self) -> str:
        return f"consistent up to n={self.n}"


def _images(spec: NuCaSpec, start: int, width: int, cap: int) -> np.ndarray:
    """Codes of the images on ``[start, start+width)`` of every word on ``[start-r, start+width+r)``."""
    q, r = spec.q, spec.radius
    span = width + 2 * r
    if q**span > cap:
        raise ResourceBudgetError(f"oracle would enumerate {q}**{span} words")
    pre = np.arange(q**span, dtype=np.int64)
    hood_mod = q ** (2 * r + 1)
    rows = spec.rule_indices(np.arange(start, start + width))
    out = np.zeros_like(pre)
    for j in range(width):
        # neighborhood of cell start+j = digits j .. j+2r (most significant first)
        hood = (pre // q ** (span - 2 * r - 1 - j)) % hood_mod
        out = out * q + spec.tables[rows[j], hood]
    return out


def has_preimage(spec: NuCaSpec, word: bytes, position: int) -> bool:
    """Does some configuration map onto ``word`` placed at ``position``?"""
    q, r = spec.q, spec.radius
    # states: the last 2r preimage symbols read so far
    states = set(itertools.product(range(q), repeat=2 * r))
    for j, target in enumerate(word):
        rule = spec.rule_at(position + j)
        states = {(s + (a,))[1:] for s in states for a in range(q) if rule.apply(s + (a,)) == target}
        if not states:
            return False
    return True


def _shrink(spec: NuCaSpec, word: bytes, position: int) -> tuple[bytes, int]:
    """Trim a preimage-free word from both ends while it stays preimage-free."""
    changed = True
    while changed and len(word) > 1:
        changed = False
        for cut, shift in ((word[1:], 1), (word[:-1], 0)):
            if not has_preimage(spec, cut, position + shift):
                word, position, changed = cut, position + shift, True
                break
    return word, position


def surjectivity_oracle(spec: NuCaSpec, max_half_width: int, shrink: bool = True, cap: int | None = None):
    """Search target words on ``[-n, n]`` for ``n = k+1 .. L`` with no preimage.

    ``RefutedAt`` is a proof of non-surjectivity (the reported word is
    shrunk to a minimal preimage-free factor unless ``shrink`` is off);
    ``ConsistentUpTo`` only says no orphan of that size exists.
    """
    cap = budget() if cap is None else cap
    for n in range(spec.k + 1, max_half_width + 1):
        width = 2 * n + 1
        seen = np.zeros(spec.q**width, dtype=bool)
        seen[_images(spec, -n, width, cap)] = True
        missing = np.flatnonzero(~seen)
        if missing.size:
            code = int(missing[0])
            word = bytes((code // spec.q ** (width - 1 - j)) % spec.q for j in range(width))
            position = -n
            if shrink:
                word, position = _shrink(spec, word, position)
            return RefutedAt(word, position, n)
    return ConsistentUpTo(max_half_width)


# -- injectivity -------------------------------------------------------------


def injectivity_witness_oracle(spec: NuCaSpec, bound: int = 64) -> tuple[EpConfig, EpConfig] | None:
    """Look for two configurations with equal images by a lasso search.

    The pair graph is walked without any SCC bookkeeping: a left loop at
    cell ``-k``, a path through the window that disagrees somewhere, and a
    right loop at cell ``k+1``.  ``bound`` limits loop lengths.  A
    returned pair is checked by simulation; ``None`` is not a proof.
    """
    target = spec.trim()
    block = 1
    if target.left_period != 1 or target.right_period != 1 or target.radius < 1:
        target, amap = pack_spec(target)
        target = target.trim()
        block = amap.block
    found = _lasso(target, bound)
    if found is None:
        return None
    x, y = found
    if block > 1:
        x, y = unpack_config(amap, x), unpack_config(amap, y)
    if x == y or step(spec, x) != step(spec, y):
        raise AssertionError("oracle produced an invalid pair")
    return x, y


def _lasso(spec: NuCaSpec, bound: int):
    q, r, k = spec.q, spec.radius, spec.k
    words = list(itertools.product(range(q), repeat=2 * r))

    @functools.cache
    def moves(index, u, v):
        """Pair moves out of a vertex at ``index``: ``(next_index, u', v', differ)``."""
        out = []
        edges = []
        if index == -k:
            edges.append((-k, spec.left[0]))
        if index <= k:
            edges.append((index + 1, spec.rule_at(index)))
        if index == k + 1:
            edges.append((k + 1, spec.right[0]))
        for nxt, rule in edges:
            for a in range(q):
                for b in range(q):
                    if rule.apply(u + (a,)) == rule.apply(v + (b,)):
                        out.append((nxt, (u + (a,))[1:], (v + (b,))[1:], u != v or a != b))
        return tuple(out)

    def loop(index, u, v):
        """Shortest closed walk staying at ``index``, as a list of states."""
        start = (u, v)
        parent = {start: None}
        depth = {start: 0}
        todo = deque([start])
        while todo:
            cur = todo.popleft()
            if depth[cur] >= bound:
                continue
            for nxt_index, u2, v2, _ in moves(index, *cur):
                if nxt_index != index:
                    continue
                if (u2, v2) == start:
                    path = [cur]
                    while parent[path[-1]] is not None:
                        path.append(parent[path[-1]])
                    return path[::-1]
                if (u2, v2) not in parent:
                    parent[u2, v2] = cur
                    depth[u2, v2] = depth[cur] + 1
                    todo.append((u2, v2))
        return None

    left_loops = {}
    right_loops = {}
    for u in words:
        for v in words:
            c = loop(-k, u, v)
            if c is not None:
                left_loops[u, v] = c
            c = loop(k + 1, u, v)
            if c is not None:
                right_loops[u, v] = c
    # BFS over (index, u, v, differed) from left loop states to a right loop state after a difference
    parent = {}
    todo = deque()
    for u, v in sorted(left_loops):
        state = (-k, u, v, False)
        parent[state] = None
        todo.append(state)
    while todo:
        state = todo.popleft()
        index, u, v, differed = state
        if index == k + 1 and differed and (u, v) in right_loops:
            walk = [state]
            while parent[walk[-1]] is not None:
                walk.append(parent[walk[-1]])
            walk.reverse()
            return _spell(spec, left_loops[walk[0][1:3]], walk, right_loops[u, v])
        for nxt in moves(index, u, v):
            nstate = (nxt[0], nxt[1], nxt[2], differed or nxt[3])
            if nstate not in parent:
                parent[nstate] = state
                todo.append(nstate)
    return None


def _spell(spec: NuCaSpec, left_loop, walk, right_loop):
    """Configurations spelled by ``left_loop^inf walk right_loop^inf``."""
    r, k = spec.radius, spec.k
    # the last state at index -k is cell -k; its window starts at cell -k-r
    last_left = max(i for i, s in enumerate(walk) if s[0] == -k)
    first_cell = -k - last_left
    out = []
    for track in (1, 2):
        left = bytes(s[track - 1][0] for s in left_loop)
        center = bytes(s[track][0] for s in walk[:-1])
        right = bytes(s[track - 1][0] for s in right_loop)
        out.append(EpConfig(left, center, first_cell - r, right).normalize())
    return tuple(out)


# -- preimage counting ----------------------------------------------------------


def _primitive_words(q: int, max_period: int) -> list[bytes]:
    out = []
    for p in range(1, max_period + 1):
        for w in itertools.product(range(q), repeat=p):
            w = bytes(w)
            if primitive_root(w) == w:
                out.append(w)
    return out


def count_preimages_bounded(spec: NuCaSpec, y: EpConfig, max_period: int = 2, half_width: int = 3) -> set[EpConfig]:
    """All preimages of ``y`` with tails of period ``<= max_period`` and the
    non-periodic part inside ``[-half_width, half_width]``.

    Complete only within those bounds.
    """
    q = spec.q
    tails = _primitive_words(q, max_period)
    width = 2 * half_width + 1
    n = len(tails) ** 2 * q**width
    if n > budget():
        raise ResourceBudgetError(f"{n} candidate preimages")
    found = set()
    for left in tails:
        for right in tails:
            for center in itertools.product(range(q), repeat=width):
                x = EpConfig(left, bytes(center), -half_width, right)
                if x not in found and step(spec, x) == y:
                    found.add(x.normalize())
    return found
