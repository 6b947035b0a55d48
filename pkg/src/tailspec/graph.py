"""Finite simple graphs with an optional anchor vertex.

Vertices are labelled 1..n. The anchor marks the vertex where a one-sided
infinite path (the tail) gets attached.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np


Edge = tuple[int, int]


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[Edge] = field(default_factory=frozenset)
    anchor: Optional[int] = None

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {self.n}")
        canon = set()
        for e in self.edges:
            i, j = (int(v) for v in e)
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ValueError(f"edge {e} has an endpoint outside [1, {self.n}]")
            canon.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", frozenset(canon))
        if self.anchor is not None and not 1 <= self.anchor <= self.n:
            raise ValueError(f"anchor {self.anchor} outside [1, {self.n}]")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Iterable[int]], anchor: Optional[int] = None) -> "Graph":
        return cls(n, frozenset(tuple(e) for e in edges), anchor)

    def with_anchor(self, anchor: Optional[int]) -> "Graph":
        return Graph(self.n, self.edges, anchor)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> list[int]:
        out = []
        for i, j in self.edges:
            if i == v:
                out.append(j)
            elif j == v:
                out.append(i)
        return sorted(out)

    def adjacency_lists(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {v: [] for v in range(1, self.n + 1)}
        for i, j in sorted(self.edges):
            adj[i].append(j)
            adj[j].append(i)
        return adj

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def adjacency_matrix(self, dtype=int) -> np.ndarray:
        """Dense 0/1 adjacency matrix; row/column ``k`` is vertex ``k + 1``."""
        a = np.zeros((self.n, self.n), dtype=dtype)
        for i, j in self.edges:
            a[i - 1, j - 1] = 1
            a[j - 1, i - 1] = 1
        return a

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        adj = self.adjacency_lists()
        seen = {1}
        stack = [1]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    # -- serialization ----------------------------------------------------

    def to_dict(self) -> dict:
        d: dict = {"n": self.n, "edges": [list(e) for e in sorted(self.edges)]}
        if self.anchor is not None:
            d["anchor"] = self.anchor
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Graph":
        if not isinstance(d, dict) or "n" not in d:
            raise ValueError("graph JSON must be an object with an integer field 'n'")
        n = d["n"]
        if not isinstance(n, int) or isinstance(n, bool):
            raise ValueError("'n' must be an integer")
        edges = d.get("edges", [])
        if not isinstance(edges, list) or any(
            not isinstance(e, list) or len(e) != 2 or not all(isinstance(v, int) for v in e)
            for e in edges
        ):
            raise ValueError("'edges' must be an array of 2-element integer arrays")
        anchor = d.get("anchor")
        if anchor is not None and (not isinstance(anchor, int) or isinstance(anchor, bool)):
            raise ValueError("'anchor' must be an integer")
        return cls.from_edges(n, edges, anchor)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "Graph":
        return cls.from_dict(json.loads(text))


def build_path(m: int) -> Graph:
    if m < 1:
        raise ValueError(f"path needs at least one vertex, got m={m}")
    return Graph.from_edges(m, [(i, i + 1) for i in range(1, m)])


def build_cycle(m: int) -> Graph:
    if m < 3:
        raise ValueError(f"cycle needs at least three vertices, got m={m}")
    return Graph.from_edges(m, [(i, i + 1) for i in range(1, m)] + [(1, m)])


def build_multistar(kappa: Iterable[int]) -> Graph:
    """Star K_{1,n} whose j-th edge is subdivided into a ray of ``kappa[j]`` vertices.

    The root is vertex 1 and is the anchor. Rays are laid out consecutively,
    each listed from the vertex adjacent to the root outwards.
    """
    kappa = tuple(kappa)
    if not kappa:
        raise ValueError("kappa must be nonempty")
    if any(k < 1 for k in kappa):
        raise ValueError(f"star ray lengths must be >= 1, got {kappa}")
    edges = []
    nxt = 2
    for k in kappa:
        edges.append((1, nxt))
        edges.extend((v, v + 1) for v in range(nxt, nxt + k - 1))
        nxt += k
    return Graph.from_edges(nxt - 1, edges, anchor=1)


def build_flower(kappa: Iterable[int]) -> Graph:
    """Cycles of ``kappa[j] + 1`` vertices glued at a common root (vertex 1, the anchor)."""
    kappa = tuple(kappa)
    if not kappa:
        raise ValueError("kappa must be nonempty")
    if any(k < 2 for k in kappa):
        raise ValueError(f"flower petals need k >= 2, got {kappa}")
    edges = []
    nxt = 2
    for k in kappa:
        petal = list(range(nxt, nxt + k))
        edges.append((1, petal[0]))
        edges.extend(zip(petal, petal[1:]))
        edges.append((petal[-1], 1))
        nxt += k
    return Graph.from_edges(nxt - 1, edges, anchor=1)


def couple(g1: Graph, g2: Graph) -> Graph:
    """Disjoint union of ``g1`` and ``g2`` plus the bridge between their anchors.

    ``g2`` is relabelled by shifting its vertices by ``g1.n``. The result keeps
    ``g1``'s anchor.
    """
    if g1.anchor is None or g2.anchor is None:
        raise ValueError("both graphs need an anchor to be coupled")
    shift = g1.n
    edges = set(g1.edges)
    edges.update((i + shift, j + shift) for i, j in g2.edges)
    edges.add((g1.anchor, g2.anchor + shift))
    return Graph(g1.n + g2.n, frozenset(edges), g1.anchor)


def delete_vertices(g: Graph, vertices: Iterable[int]) -> Graph:
    """Induced subgraph on the remaining vertices, relabelled in increasing order.

    The anchor survives (relabelled) if it was not deleted.
    """
    gone = set(vertices)
    bad = [v for v in gone if not 1 <= v <= g.n]
    if bad:
        raise ValueError(f"vertices {sorted(bad)} outside [1, {g.n}]")
    keep = [v for v in range(1, g.n + 1) if v not in gone]
    relabel = {v: i for i, v in enumerate(keep, start=1)}
    edges = frozenset(
        (relabel[i], relabel[j]) for i, j in g.edges if i in relabel and j in relabel
    )
    anchor = relabel.get(g.anchor) if g.anchor is not None else None
    return Graph(len(keep), edges, anchor)


def simple_cycles_through(g: Graph, v: int) -> list[frozenset[int]]:
    """Vertex sets of all simple cycles (length >= 3) through ``v``.

    One entry per cycle, not per vertex set: distinct cycles on the same
    vertices (three 4-cycles in K4, say) each appear, since the cycle-sum in
    Schwenk's expansion counts them separately.
    """
    if not 1 <= v <= g.n:
        raise ValueError(f"vertex {v} outside [1, {g.n}]")
    adj = g.adjacency_lists()
    cycles: list[frozenset[int]] = []
    path = [v]
    on_path = {v}

    def extend(u: int) -> None:
        for w in adj[u]:
            if w == v:
                # each cycle is met twice (once per direction); keep one
                if len(path) >= 3 and path[1] < path[-1]:
                    cycles.append(frozenset(path))
            elif w not in on_path:
                path.append(w)
                on_path.add(w)
                extend(w)
                path.pop()
                on_path.remove(w)

    extend(v)
    return cycles
