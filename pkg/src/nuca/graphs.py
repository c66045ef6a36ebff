"""Graph helpers on integer-labelled vertices with adjacency lists."""
from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence


def tarjan_scc(n: int, succ: Sequence[Sequence[int]]) -> list[int]:
    """Strongly connected components of a graph on ``range(n)``.

    Returns ``comp`` with ``comp[v]`` the component number of ``v``;
    components are numbered in reverse topological order.  Iterative, so
    deep graphs do not hit the recursion limit.
    """
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    comp = [-1] * n
    stack: list[int] = []
    counter = 0
    ncomp = 0
    for root in range(n):
        if index[root] >= 0:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            nbrs = succ[v]
            if i < len(nbrs):
                work[-1] = (v, i + 1)
                w = nbrs[i]
                if index[w] < 0:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
    return comp


def nontrivial_components(n: int, succ: Sequence[Sequence[int]], comp: Sequence[int]) -> set[int]:
    """Components holding a cycle: more than one vertex, or a self-loop."""
    sizes: dict[int, int] = {}
    for c in comp:
        sizes[c] = sizes.get(c, 0) + 1
    out = {c for c, size in sizes.items() if size > 1}
    for v in range(n):
        if v in succ[v]:
            out.add(comp[v])
    return out


def reachable(sources: Iterable[int], succ: Sequence[Sequence[int]], allowed=None) -> set[int]:
    seen = set()
    todo = deque()
    for s in sources:
        if (allowed is None or s in allowed) and s not in seen:
            seen.add(s)
            todo.append(s)
    while todo:
        v = todo.popleft()
        for w in succ[v]:
            if w not in seen and (allowed is None or w in allowed):
                seen.add(w)
                todo.append(w)
    return seen


def reverse(n: int, succ: Sequence[Sequence[int]]) -> list[list[int]]:
    pred: list[list[int]] = [[] for _ in range(n)]
    for v in range(n):
        for w in succ[v]:
            pred[w].append(v)
    return pred


def shortest_path(sources: Iterable[int], targets, succ: Sequence[Sequence[int]], allowed=None) -> list[int] | None:
    """Shortest vertex path from any source to any target (BFS, neighbours in list order)."""
    parent: dict[int, int | None] = {}
    todo = deque()
    for s in sources:
        if (allowed is None or s in allowed) and s not in parent:
            parent[s] = None
            todo.append(s)
    while todo:
        v = todo.popleft()
        if v in targets:
            path = [v]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            return path[::-1]
        for w in succ[v]:
            if w not in parent and (allowed is None or w in allowed):
                parent[w] = v
                todo.append(w)
    return None


def cycle_through(v: int, succ: Sequence[Sequence[int]], allowed=None) -> list[int] | None:
    """Shortest closed walk ``[v, ..., v]`` (the final ``v`` included)."""
    starts = [w for w in succ[v] if allowed is None or w in allowed]
    if v in starts:
        return [v, v]
    path = shortest_path(starts, {v}, succ, allowed)
    if path is None:
        return None
    return [v] + path
