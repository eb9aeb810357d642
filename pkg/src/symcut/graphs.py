"""Graph representation, named-family generators, and edge-list parsing.

Vertices are dense 0-based integers so that adjacency can live in
per-vertex bitmasks; the enumeration kernels rely on that. The word-size
cap of 64 vertices is enforced at construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GraphError

MAX_VERTICES = 64

FAMILY_KINDS = ("path", "cycle", "complete", "complete_bipartite", "star")


class Graph:
    """Undirected simple graph on vertices 0..n-1.

    Edges are canonical ``(u, v)`` tuples with ``u < v``; ``adjacency[v]``
    is the neighbor bitmask of ``v``. Instances are immutable after
    construction and safe to share across threads.
    """

    __slots__ = ("n", "edges", "m", "adjacency")

    def __init__(self, n: int, edges) -> None:
        if n < 1:
            raise GraphError("graph needs at least one vertex")
        if n > MAX_VERTICES:
            raise GraphError(f"vertex count {n} exceeds the bitmask limit {MAX_VERTICES}")
        canon = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) outside vertex range 0..{n - 1}")
            canon.add((u, v) if u < v else (v, u))
        self.n = n
        self.edges = tuple(sorted(canon))
        self.m = len(self.edges)
        adjacency = [0] * n
        for u, v in self.edges:
            adjacency[u] |= 1 << v
            adjacency[v] |= 1 << u
        self.adjacency = tuple(adjacency)

    def degree(self, v: int) -> int:
        return self.adjacency[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return (self.adjacency[u] >> v) & 1 == 1

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class FamilySpec:
    """A named graph family instance, e.g. cycle:8 or complete_bipartite:3,3."""

    kind: str
    params: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.kind}:{','.join(str(p) for p in self.params)}"


def parse_family_spec(text: str) -> FamilySpec:
    kind, sep, rest = text.partition(":")
    kind = kind.strip()
    if kind not in FAMILY_KINDS:
        raise GraphError(f"unknown family '{kind}' (choices: {', '.join(FAMILY_KINDS)})")
    if not sep or not rest.strip():
        raise GraphError(f"family spec '{text}' is missing size parameters")
    try:
        params = tuple(int(p) for p in rest.split(","))
    except ValueError:
        raise GraphError(f"non-integer size in family spec '{text}'") from None
    if any(p <= 0 for p in params):
        raise GraphError(f"family sizes must be positive in '{text}'")
    want = 2 if kind == "complete_bipartite" else 1
    if len(params) != want:
        raise GraphError(f"family '{kind}' takes {want} size parameter(s)")
    return FamilySpec(kind, params)


def generate_family(spec: FamilySpec) -> Graph:
    kind, params = spec.kind, spec.params
    if kind == "path":
        n = params[0]
        return Graph(n, [(i, i + 1) for i in range(n - 1)])
    if kind == "cycle":
        n = params[0]
        if n < 3:
            raise GraphError("cycle needs at least 3 vertices")
        return Graph(n, [(i, (i + 1) % n) for i in range(n)])
    if kind == "complete":
        n = params[0]
        return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
    if kind == "complete_bipartite":
        a, b = params
        return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])
    if kind == "star":
        n = params[0]
        return Graph(n, [(0, i) for i in range(1, n)])
    raise GraphError(f"unknown family '{kind}'")


def parse_edge_list(text: str) -> Graph:
    """Parse whitespace-separated "u v" lines into a graph.

    '#' starts a comment, blank lines are skipped, and the first
    non-comment line may be "n <count>" to declare the vertex count
    (required for trailing isolated vertices). Without a declaration the
    vertex count is 1 + the largest label seen.
    """
    declared_n = None
    pairs = []
    first_line = True
    max_label = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if first_line and toks[0] == "n":
            if len(toks) != 2:
                raise GraphError(f"line {lineno}: header must be 'n <count>'")
            try:
                declared_n = int(toks[1])
            except ValueError:
                raise GraphError(f"line {lineno}: malformed vertex count '{toks[1]}'") from None
            first_line = False
            continue
        first_line = False
        if len(toks) != 2:
            raise GraphError(f"line {lineno}: expected 'u v', got '{line}'")
        try:
            u, v = int(toks[0]), int(toks[1])
        except ValueError:
            raise GraphError(f"line {lineno}: malformed vertex label in '{line}'") from None
        if u < 0 or v < 0:
            raise GraphError(f"line {lineno}: negative vertex label")
        if u == v:
            raise GraphError(f"line {lineno}: self-loop at vertex {u}")
        pairs.append((u, v))
        max_label = max(max_label, u, v)
    if declared_n is None:
        if not pairs:
            raise GraphError("empty edge list and no 'n <count>' header")
        n = max_label + 1
    else:
        n = declared_n
        if max_label >= n:
            raise GraphError(f"vertex label {max_label} outside declared count {n}")
    return Graph(n, pairs)


def serialize_edge_list(graph: Graph) -> str:
    """Inverse of :func:`parse_edge_list`: round-trips to an equal graph."""
    lines = [f"n {graph.n}"]
    lines.extend(f"{u} {v}" for u, v in graph.edges)
    return "\n".join(lines) + "\n"


def random_graph(n: int, p: float, rng: np.random.Generator) -> Graph:
    """Erdos-Renyi G(n, p) drawn from the supplied generator."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    keep = rng.random(len(pairs)) < p
    return Graph(n, [e for e, k in zip(pairs, keep) if k])
