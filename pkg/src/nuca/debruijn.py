"""De Bruijn and product graphs of period-1 specs; surjectivity and injectivity deciders.

Vertices of the De Bruijn graph are pairs ``(u, alpha)`` with ``u`` a word
of length ``2r`` and ``alpha`` in ``[-k, k+1]``; an edge ``(u,a) -> (v,b)``
stands for one cell whose neighborhood is ``u[0] v`` and carries the
label ``(rule(u[0] v), bit)`` where the bit is 1 only on the loops at
``k+1``.  Paths spell configurations, labels spell their images.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy import sparse

from . import graphs
from .conjugacy import PackedAlphabetMap, pack_spec, unpack_config
from .core import EpConfig, ResourceBudgetError, budget, digits_of, format_config, format_word, parse_config, parse_word
from .engine import step
from .rules import NuCaSpec

# edge kinds
LEFT, INNER, RIGHT = 0, 1, 2

DEFAULT_STATE_CAP = 1 << 20


@dataclass(frozen=True, eq=False)
class DeBruijnGraph:
    q: int
    radius: int
    k: int
    src: np.ndarray
    dst: np.ndarray
    sym: np.ndarray
    bit: np.ndarray
    kind: np.ndarray

    @property
    def word_count(self) -> int:
        return self.q ** (2 * self.radius)

    @property
    def n_vertices(self) -> int:
        return self.word_count * (2 * self.k + 2)

    @property
    def n_edges(self) -> int:
        return len(self.src)

    def vertex(self, word: bytes, alpha: int) -> int:
        code = 0
        for a in word:
            code = code * self.q + a
        return (alpha + self.k) * self.word_count + code

    def word_code(self, v) -> np.ndarray | int:
        return v % self.word_count

    def index_of(self, v) -> np.ndarray | int:
        return v // self.word_count - self.k

    def vertex_label(self, v: int) -> tuple[bytes, int]:
        word = digits_of(np.array([v % self.word_count]), self.q, 2 * self.radius)[0]
        return word.astype(np.uint8).tobytes(), int(v // self.word_count - self.k)

    def out_degree(self) -> np.ndarray:
        return np.bincount(self.src, minlength=self.n_vertices)

    @cached_property
    def label_matrices(self) -> dict[tuple[int, int], sparse.csr_matrix]:
        """Sparse ``V x V`` transition matrix for each label ``(symbol, bit)``."""
        out = {}
        n = self.n_vertices
        for a in range(self.q):
            for b in (0, 1):
                sel = (self.sym == a) & (self.bit == b)
                data = np.ones(int(sel.sum()), dtype=np.int32)
                out[a, b] = sparse.csr_matrix((data, (self.src[sel], self.dst[sel])), shape=(n, n))
        return out


def _require_normal_form(spec: NuCaSpec) -> None:
    if spec.left_period != 1 or spec.right_period != 1 or spec.radius < 1:
        raise ValueError("De Bruijn construction needs period-1 tails and radius >= 1 (use pack_spec)")


def build_debruijn(spec: NuCaSpec) -> DeBruijnGraph:
    _require_normal_form(spec)
    q, r, k = spec.q, spec.radius, spec.k
    W = q ** (2 * r)
    u = np.repeat(np.arange(W, dtype=np.int64), q)
    a = np.tile(np.arange(q, dtype=np.int64), W)
    hood = u * q + a
    v = hood % W
    parts = []

    def add(alpha, beta, rule, bit, kind):
        base_s = (alpha + k) * W
        base_d = (beta + k) * W
        out = rule.array[hood]
        parts.append((base_s + u, base_d + v, out, np.full(len(u), bit), np.full(len(u), kind)))

    add(-k, -k, spec.left[0], 0, LEFT)
    for alpha in range(-k, k + 1):
        add(alpha, alpha + 1, spec.rule_at(alpha), 0, INNER)
    add(k + 1, k + 1, spec.right[0], 1, RIGHT)
    src, dst, sym, bit, kind = (np.concatenate(col) for col in zip(*parts))
    return DeBruijnGraph(q, r, k, src, dst, sym, bit, kind)


# -- surjectivity -------------------------------------------------------------


@dataclass(frozen=True)
class SurjectivityVerdict:
    surjective: bool
    word: bytes | None = None
    position: int | None = None
    states: int = 0

    def line(self) -> str:
        if self.surjective:
            return "surjective: yes"
        return f"surjective: no witness={format_word(self.word)}@{self.position}"

    def to_json(self) -> dict:
        out = {"surjective": self.surjective}
        if not self.surjective:
            out["witness"] = {"word": format_word(self.word), "position": self.position}
        return out


def _normal_form(spec: NuCaSpec) -> tuple[NuCaSpec, PackedAlphabetMap]:
    spec = spec.trim()
    if spec.left_period == 1 and spec.right_period == 1 and spec.radius >= 1:
        return spec, PackedAlphabetMap(spec.q, 1)
    packed, amap = pack_spec(spec)
    return packed.trim(), amap


def decide_surjective(spec: NuCaSpec, state_cap: int | None = None) -> SurjectivityVerdict:
    """Surjective iff every word of ``(A x 0)* (A x 1)*`` labels a path of the De Bruijn graph.

    All vertices are initial and final.  The containment is checked on the
    fly by subset construction synchronised with the two-state automaton
    of the pattern language; the first empty subset found by breadth-first
    search gives a shortest word with no preimage.
    """
    norm, amap = _normal_form(spec)
    graph = build_debruijn(norm)
    cap = budget(DEFAULT_STATE_CAP) if state_cap is None else state_cap
    mats = graph.label_matrices
    n = graph.n_vertices
    start = np.ones(n, dtype=bool)

    def key(mask):
        return np.packbits(mask).tobytes()

    parent: dict[tuple[bytes, int], tuple | None] = {(key(start), 0): None}
    todo = deque([(start, 0)])
    while todo:
        mask, phase = todo.popleft()
        here = (key(mask), phase)
        labels = [(a, 0) for a in range(graph.q)] * (phase == 0) + [(a, 1) for a in range(graph.q)]
        for label in labels:
            nxt = (mats[label].T @ mask.astype(np.int32)) > 0
            if not nxt.any():
                word, bits = _unwind(parent, here, label)
                zeros = bits.count(0)
                position = norm.k + 1 - zeros
                raw = bytes(word)
                if amap.block > 1:
                    raw = amap.decode_word(raw)
                return SurjectivityVerdict(False, raw, position * amap.block, len(parent))
            state = (key(nxt), label[1])
            if state not in parent:
                parent[state] = (here, label)
                if len(parent) > cap:
                    raise ResourceBudgetError(f"subset construction exceeded {cap} states")
                todo.append((nxt, label[1]))
    return SurjectivityVerdict(True, states=len(parent))


def _unwind(parent, state, last):
    labels = [last]
    while parent[state] is not None:
        state, label = parent[state]
        labels.append(label)
    labels.reverse()
    return [a for a, _ in labels], [b for _, b in labels]


# -- product graph and injectivity -----------------------------------------------


@dataclass(frozen=True, eq=False)
class ProductGraph:
    graph: DeBruijnGraph
    src: np.ndarray
    dst: np.ndarray
    bit: np.ndarray

    @property
    def word_count(self) -> int:
        return self.graph.word_count

    @property
    def n_vertices(self) -> int:
        return self.graph.word_count**2 * (2 * self.graph.k + 2)

    def vertex(self, u: bytes, v: bytes, alpha: int) -> int:
        W = self.word_count
        g = self.graph
        cu = g.vertex(u, 0) - g.k * W
        cv = g.vertex(v, 0) - g.k * W
        return (alpha + g.k) * W * W + cu * W + cv

    def split(self, p: int) -> tuple[int, int, int]:
        """``(u_code, v_code, alpha)`` of a product vertex."""
        W = self.word_count
        alpha, rest = divmod(p, W * W)
        return rest // W, rest % W, alpha - self.graph.k

    def index_of(self, p: int) -> int:
        return p // (self.word_count**2) - self.graph.k

    @cached_property
    def succ(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.n_vertices)]
        order = np.lexsort((self.dst, self.src))
        for s, d in zip(self.src[order].tolist(), self.dst[order].tolist()):
            out[s].append(d)
        return out

    @cached_property
    def edge_bits(self) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = {}
        for s, d, b in zip(self.src.tolist(), self.dst.tolist(), self.bit.tolist()):
            out[s, d] = min(b, out.get((s, d), 1))
        return out

    def initial(self) -> set[int]:
        W2 = self.word_count**2
        return set(range(0, W2))

    def final(self) -> set[int]:
        W2 = self.word_count**2
        base = (2 * self.graph.k + 1) * W2
        return set(range(base, base + W2))


def build_product(graph: DeBruijnGraph, cap: int | None = None) -> ProductGraph:
    """Pairs of De Bruijn edges leaving the same index with equal labels."""
    cap = budget() if cap is None else cap
    W, q = graph.word_count, graph.q
    if (W * q) ** 2 * (2 * graph.k + 2) * 2 > cap:
        raise ResourceBudgetError("product graph exceeds the budget")
    parts = []
    for kind in (LEFT, INNER, RIGHT):
        sel = graph.kind == kind
        src, dst, sym, bit = graph.src[sel], graph.dst[sel], graph.sym[sel], graph.bit[sel]
        # edges of one kind come in blocks of W*q per source index
        for start in range(0, len(src), W * q):
            s, d, o = src[start : start + W * q], dst[start : start + W * q], sym[start : start + W * q]
            eq = o[:, None] == o[None, :]
            i, j = np.nonzero(eq)
            alpha_s = s[i] // W
            alpha_d = d[i] // W
            ps = alpha_s * W * W + (s[i] % W) * W + s[j] % W
            pd = alpha_d * W * W + (d[i] % W) * W + d[j] % W
            same = (s[i] == s[j]) & (d[i] == d[j])
            parts.append((ps, pd, np.where(same, 0, 1)))
    src, dst, bit = (np.concatenate(col) for col in zip(*parts))
    return ProductGraph(graph, src, dst, bit)


@dataclass(frozen=True, eq=False)
class ReducedProductGraph:
    """Nontrivial SCCs of the product graph plus everything on paths between them."""

    product: ProductGraph
    comp: list[int]
    nontrivial: frozenset[int]
    nodes: frozenset[int]
    succ: list[list[int]]

    @property
    def n_components(self) -> int:
        return len(set(self.comp))

    @property
    def cyclic_nodes(self) -> set[int]:
        return {v for v in range(len(self.comp)) if self.comp[v] in self.nontrivial}

    @property
    def n_edges(self) -> int:
        return sum(len(s) for s in self.succ)

    def is_empty(self) -> bool:
        return not self.nodes


def build_reduced(product: ProductGraph) -> ReducedProductGraph:
    n = product.n_vertices
    succ = product.succ
    comp = graphs.tarjan_scc(n, succ)
    nontrivial = graphs.nontrivial_components(n, succ, comp)
    cyclic = [v for v in range(n) if comp[v] in nontrivial]
    fwd = graphs.reachable(cyclic, succ)
    bwd = graphs.reachable(cyclic, graphs.reverse(n, succ))
    nodes = fwd & bwd
    dsucc = [[w for w in succ[v] if w in bwd] if v in fwd else [] for v in range(n)]
    return ReducedProductGraph(product, comp, frozenset(nontrivial), frozenset(nodes), dsucc)


@dataclass(frozen=True)
class InjectivityVerdict:
    injective: bool
    witness: tuple[EpConfig, EpConfig] | None = None

    def line(self) -> str:
        if self.injective:
            return "injective: yes"
        x, y = self.witness
        return f"injective: no witness={format_config(x)};{format_config(y)}"

    def to_json(self) -> dict:
        out = {"injective": self.injective}
        if not self.injective:
            out["witness"] = [format_config(c) for c in self.witness]
        return out


def decide_injective(spec: NuCaSpec) -> InjectivityVerdict:
    """Injective iff no initial-to-final path of the reduced product graph crosses a 1-edge."""
    norm, amap = _normal_form(spec)
    product = build_product(build_debruijn(norm))
    red = build_reduced(product)
    bits = product.edge_bits
    init = product.initial() & red.nodes
    fin = product.final() & red.nodes
    r1 = graphs.reachable(init, red.succ)
    r2 = graphs.reachable(fin, graphs.reverse(product.n_vertices, red.succ))
    for s in sorted(r1):
        for t in red.succ[s]:
            if t in r2 and bits[s, t] == 1:
                x, y = _witness(red, init, fin, s, t)
                if amap.block > 1:
                    x, y = unpack_config(amap, x), unpack_config(amap, y)
                if step(spec, x) != step(spec, y) or x == y:
                    raise AssertionError("internal error: injectivity witness failed verification")
                return InjectivityVerdict(False, (x, y))
    return InjectivityVerdict(True)


def _witness(red: ReducedProductGraph, init, fin, s, t) -> tuple[EpConfig, EpConfig]:
    product = red.product
    n = product.n_vertices
    pred = graphs.reverse(n, red.succ)
    cyclic = red.cyclic_nodes
    head = graphs.shortest_path(init, {s}, red.succ)
    tail = graphs.shortest_path([t], fin, red.succ)
    back = graphs.shortest_path([head[0]], cyclic, pred)[::-1]
    fwd = graphs.shortest_path([tail[-1]], cyclic, red.succ)
    c_left, c_right = back[0], fwd[-1]
    scc = lambda c: {v for v in range(n) if red.comp[v] == red.comp[c]}
    loop_left = graphs.cycle_through(c_left, red.succ, scc(c_left))
    loop_right = graphs.cycle_through(c_right, red.succ, scc(c_right))
    walk = back[:-1] + head + tail + fwd[1:]
    return _configs_from_walk(product, loop_left[:-1], walk, loop_right[:-1])


def _configs_from_walk(product: ProductGraph, loop_left, walk, loop_right) -> tuple[EpConfig, EpConfig]:
    """Two configurations spelled by ``loop_left^inf walk loop_right^inf``."""
    g = product.graph
    r, k = g.radius, g.k
    # the last vertex at index -k sits at cell -k
    last_left = max(i for i, p in enumerate(walk) if product.index_of(p) == -k)
    first_cell = -k - last_left

    def track(which):
        words = []
        for part in (loop_left, walk, loop_right):
            codes = [product.split(p)[which] for p in part]
            words.append(digits_of(np.array(codes, dtype=np.int64), g.q, 2 * r)[:, 0].astype(np.uint8).tobytes())
        left, center, right = words
        # vertex at cell j holds x[j-r : j+r]; the walk's last vertex is also the right loop's first
        return EpConfig(left, center[:-1], first_cell - r, right).normalize()

    return track(0), track(1)


_VERDICT = re.compile(
    r"^(?P<prop>surjective|injective): (?P<ans>yes|no)(?: witness=(?P<wit>\S+))?$"
)


def parse_verdict_line(line: str) -> dict:
    """Parse a line produced by ``SurjectivityVerdict.line``/``InjectivityVerdict.line``."""
    m = _VERDICT.match(line.strip())
    if not m:
        raise ValueError(f"not a verdict line: {line!r}")
    out: dict = {m["prop"]: m["ans"] == "yes"}
    if m["wit"]:
        if m["prop"] == "surjective":
            word, pos = m["wit"].rsplit("@", 1)
            out["witness"] = (parse_word(word), int(pos))
        else:
            a, b = m["wit"].split(";")
            out["witness"] = (parse_config(a), parse_config(b))
    return out
