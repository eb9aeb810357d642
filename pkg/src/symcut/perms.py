"""Permutation groups acting on vertices and on spin configurations.

Automorphism groups are found by backtracking over vertex images inside
the cells of an iterated neighbor-color refinement; the bipartition
stabilizer runs the same search seeded with the two part colors, so
setwise stabilization is built into the search instead of filtered
afterwards. Enumerated element lists are stored as a (order, n) uint8
image matrix so that Burnside sums and closures stay vectorized.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bitops import mask_sites, sites_mask
from .errors import CapExceededError, GroupNotEnumeratedError
from .graphs import FamilySpec, Graph

DEFAULT_GROUP_CAP = 1_000_000

CONFIG_ORBIT_CAP = 1 << 20
PAIR_ORBIT_CAP = 1 << 24

# truncated searches keep at most this many elements as a partial generating set
_PARTIAL_GENERATORS = 16


@dataclass(frozen=True)
class Permutation:
    """A bijection of {0..n-1}, stored as its image tuple."""

    images: tuple[int, ...]

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(tuple(range(n)))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        # (p * q)(i) = p(q(i)), i.e. apply q first
        return Permutation(tuple(self.images[j] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def to_line(self) -> str:
        return " ".join(str(i) for i in self.images)


@dataclass(frozen=True)
class Bipartition:
    """A balanced vertex split with |A| = floor(n/2), stored as bitmasks."""

    n: int
    a_mask: int

    def __post_init__(self):
        if not 0 <= self.a_mask < (1 << self.n):
            raise ValueError("part A outside vertex range")
        if self.a_mask.bit_count() != self.n // 2:
            raise ValueError(
                f"|A| = {self.a_mask.bit_count()} but a balanced split of {self.n} "
                f"vertices needs |A| = {self.n // 2}"
            )

    @staticmethod
    def first_half(n: int) -> "Bipartition":
        return Bipartition(n, (1 << (n // 2)) - 1)

    @staticmethod
    def from_sites(n: int, sites) -> "Bipartition":
        sites = list(sites)
        if len(set(sites)) != len(sites):
            raise ValueError("duplicate vertex in part A")
        if any(not 0 <= s < n for s in sites):
            raise ValueError("part A vertex outside 0..n-1")
        return Bipartition(n, sites_mask(sites))

    @property
    def b_mask(self) -> int:
        return ((1 << self.n) - 1) ^ self.a_mask

    @property
    def a_sites(self) -> list[int]:
        return mask_sites(self.a_mask)

    @property
    def b_sites(self) -> list[int]:
        return mask_sites(self.b_mask)


def apply_perm(p: Permutation, config: int) -> int:
    """Site permutation of a spin configuration: output bit p(i) = input bit i."""
    out = 0
    for i, gi in enumerate(p.images):
        out |= ((config >> i) & 1) << gi
    return out


class PermGroup:
    """A permutation group given by generators, optionally fully enumerated.

    ``elements`` is an (order, n) uint8 image matrix present iff the group
    was enumerated within the element cap. ``order_is_exact`` is False when
    ``order`` is only a lower bound (truncated search), in which case
    ``generators_complete`` is False as well and orbit machinery refuses
    the group.
    """

    __slots__ = ("n", "generators", "elements", "order", "order_is_exact",
                 "generators_complete")

    def __init__(self, n: int, generators, elements, order: int,
                 order_is_exact: bool = True, generators_complete: bool = True):
        self.n = n
        self.generators = tuple(generators)
        self.elements = elements
        self.order = int(order)
        self.order_is_exact = order_is_exact
        self.generators_complete = generators_complete

    @property
    def enumerated(self) -> bool:
        return self.elements is not None

    def element_perms(self) -> list[Permutation]:
        if not self.enumerated:
            raise GroupNotEnumeratedError("group has no element list")
        return [Permutation(tuple(int(x) for x in row)) for row in self.elements]

    def is_abelian(self) -> bool:
        if not self.generators_complete:
            raise GroupNotEnumeratedError("cannot decide abelianness without complete generators")
        gens = self.generators
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                if gens[i] * gens[j] != gens[j] * gens[i]:
                    return False
        return True

    def __repr__(self) -> str:
        tag = "" if self.order_is_exact else ">="
        return f"PermGroup(n={self.n}, order{'' if self.order_is_exact else ' '}{tag}{self.order})"


def close_generators(n: int, generators, cap: int) -> np.ndarray | None:
    """BFS closure of the generators as a sorted image matrix, or None over cap."""
    ident = np.arange(n, dtype=np.uint8)
    gen_rows = [np.array(g.images, dtype=np.uint8) for g in generators]
    known = {ident.tobytes()}
    rows = [ident]
    frontier = [ident]
    for g in gen_rows:
        b = g.tobytes()
        if b not in known:
            known.add(b)
            rows.append(g)
            frontier.append(g)
    while frontier:
        stack = np.stack(frontier)
        nxt = []
        for g in gen_rows:
            prods = stack[:, g]  # right-multiply: (f*g)(i) = f(g(i))
            for row in prods:
                b = row.tobytes()
                if b not in known:
                    known.add(b)
                    rows.append(row)
                    nxt.append(row)
            if len(known) > cap:
                return None
        frontier = nxt
    mat = np.stack(rows)
    order = np.lexsort(mat.T[::-1])  # lexicographic by image tuple
    return mat[order]


def _reduce_generators(n: int, elements: np.ndarray) -> list[Permutation]:
    """Greedy minimal-ish generating set scanned in lexicographic order.

    Each accepted generator at least doubles the generated subgroup, so at
    most log2(order) generators come out.
    """
    ident = np.arange(n, dtype=np.uint8)
    known = {ident.tobytes()}
    gens: list[np.ndarray] = []
    target = len(elements)
    for row in elements:
        if len(known) == target:
            break
        row = np.asarray(row, dtype=np.uint8)
        if row.tobytes() in known:
            continue
        gens.append(row)
        # re-close over the enlarged generating set
        known = {ident.tobytes()}
        frontier = [ident]
        while frontier:
            stack = np.stack(frontier)
            nxt = []
            for g in gens:
                for prod in stack[:, g]:
                    b = prod.tobytes()
                    if b not in known:
                        known.add(b)
                        nxt.append(prod)
            frontier = nxt
    return [Permutation(tuple(int(x) for x in g)) for g in gens]


def _preserves_edges(graph: Graph, p: Permutation) -> bool:
    return all(graph.has_edge(p(u), p(v)) for u, v in graph.edges)


def _refine_colors(graph: Graph, colors: list[int]) -> list[int]:
    """Iterated neighbor-color refinement to a stable vertex coloring."""
    n = graph.n
    neigh = [mask_sites(graph.adjacency[v]) for v in range(n)]
    while True:
        sigs = [(colors[v], tuple(sorted(colors[u] for u in neigh[v]))) for v in range(n)]
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if new == colors:
            return colors
        colors = new


def _search_colored(graph: Graph, colors: list[int], cap: int):
    """All color-preserving automorphisms by backtracking over vertex images.

    Vertices are assigned in ascending label order; candidate images are
    drawn from the vertex's refinement cell in ascending order, which makes
    the enumeration deterministic. Returns (image tuples, complete flag);
    complete is False when more than ``cap`` automorphisms exist.
    """
    n = graph.n
    adj = graph.adjacency
    color_mask = {}
    for v, c in enumerate(colors):
        color_mask[c] = color_mask.get(c, 0) | (1 << v)
    img = [0] * n
    found: list[tuple[int, ...]] = []
    truncated = False

    def rec(k: int, used: int) -> None:
        nonlocal truncated
        if truncated:
            return
        if k == n:
            found.append(tuple(img))
            if len(found) > cap:
                truncated = True
            return
        cand = color_mask[colors[k]] & ~used
        for j in range(k):
            if (adj[k] >> j) & 1:
                cand &= adj[img[j]]
            else:
                cand &= ~adj[img[j]]
            if not cand:
                return
        while cand:
            w = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            img[k] = w
            rec(k + 1, used | (1 << w))
            if truncated:
                return

    rec(0, 0)
    return found, not truncated


def _group_from_search(n: int, found, complete: bool) -> PermGroup:
    if complete:
        mat = np.array(sorted(found), dtype=np.uint8)
        gens = _reduce_generators(n, mat)
        return PermGroup(n, gens, mat, len(mat))
    partial = [Permutation(t) for t in found[:_PARTIAL_GENERATORS + 1] if t != tuple(range(n))]
    return PermGroup(n, partial[:_PARTIAL_GENERATORS], None, len(found),
                     order_is_exact=False, generators_complete=False)


def _family_generators(graph: Graph, family: FamilySpec) -> tuple[list[Permutation], int] | None:
    """Known closed-form generators (and order) for cycle and complete graphs."""
    n = graph.n
    if family.kind == "cycle" and n >= 3:
        rotation = Permutation(tuple((i + 1) % n for i in range(n)))
        reflection = Permutation(tuple((-i) % n for i in range(n)))
        order = 2 * n
        return [rotation, reflection], order
    if family.kind == "complete":
        if n == 1:
            return [], 1
        gens = [Permutation(tuple(_swapped(n, i, i + 1))) for i in range(n - 1)]
        import math

        return gens, math.factorial(n)
    return None


def _swapped(n: int, i: int, j: int) -> list[int]:
    images = list(range(n))
    images[i], images[j] = images[j], images[i]
    return images


def _group_from_known_generators(graph: Graph, gens: list[Permutation], order: int,
                                 cap: int, check_part: int | None = None) -> PermGroup:
    for g in gens:
        if not _preserves_edges(graph, g):
            raise AssertionError(f"emitted generator {g.to_line()} does not preserve edges")
        if check_part is not None and _map_mask(g, check_part) != check_part:
            raise AssertionError(f"emitted generator {g.to_line()} does not preserve the part")
    elements = close_generators(graph.n, gens, cap) if order <= cap else None
    if elements is not None and len(elements) != order:
        raise AssertionError(f"closure size {len(elements)} != expected order {order}")
    return PermGroup(graph.n, gens, elements, order)


def _map_mask(p: Permutation, mask: int) -> int:
    out = 0
    for s in mask_sites(mask):
        out |= 1 << p(s)
    return out


def automorphism_group(graph: Graph, cap: int = DEFAULT_GROUP_CAP,
                       family: FamilySpec | None = None) -> PermGroup:
    """The full edge-preserving permutation group of ``graph``.

    For cycle and complete family graphs the generators are emitted
    directly (rotation + reflection, adjacent transpositions) and checked
    against the edge set, which keeps huge symmetric groups workable; the
    generic path enumerates every automorphism by colored backtracking and
    truncates past ``cap`` elements.
    """
    if family is not None:
        known = _family_generators(graph, family)
        if known is not None:
            gens, order = known
            return _group_from_known_generators(graph, gens, order, cap)
    colors = _refine_colors(graph, [0] * graph.n)
    found, complete = _search_colored(graph, colors, cap)
    return _group_from_search(graph.n, found, complete)


def bipartition_stabilizer(graph: Graph, bip: Bipartition, cap: int = DEFAULT_GROUP_CAP,
                           family: FamilySpec | None = None) -> PermGroup:
    """The subgroup of automorphisms mapping part A onto itself.

    Computed as the automorphism group of the 2-colored graph (color 0 =
    part A, color 1 = part B) so stabilization is built into the search.
    Complete graphs get direct generators: transpositions within each part.
    """
    if bip.n != graph.n:
        raise ValueError("bipartition degree does not match graph")
    if family is not None and family.kind == "complete":
        import math

        gens = []
        for sites in (bip.a_sites, bip.b_sites):
            gens.extend(
                Permutation(tuple(_swapped(graph.n, sites[i], sites[i + 1])))
                for i in range(len(sites) - 1)
            )
        order = math.factorial(len(bip.a_sites)) * math.factorial(len(bip.b_sites))
        return _group_from_known_generators(graph, gens, order, cap, check_part=bip.a_mask)
    base = [0 if (bip.a_mask >> v) & 1 else 1 for v in range(graph.n)]
    colors = _refine_colors(graph, base)
    found, complete = _search_colored(graph, colors, cap)
    return _group_from_search(graph.n, found, complete)


def cycle_count_on(p: Permutation, mask: int) -> int:
    """Number of cycles of ``p`` restricted to the vertices in ``mask``."""
    sites = mask_sites(mask)
    site_set = set(sites)
    for s in sites:
        if p(s) not in site_set:
            raise ValueError(f"permutation does not stabilize the mask (moves {s} out)")
    seen = set()
    cycles = 0
    for s in sites:
        if s in seen:
            continue
        cycles += 1
        t = s
        while t not in seen:
            seen.add(t)
            t = p(t)
    return cycles


def burnside_orbit_count(grp: PermGroup, mask: int) -> int:
    """Average number of masked configurations fixed by a group element.

    Each element fixes exactly 2**cycles configurations, where cycles is
    its cycle count on the masked sites. The sum must divide exactly; a
    remainder signals a bug and raises.
    """
    if not grp.enumerated:
        raise GroupNotEnumeratedError("Burnside count needs the full element list")
    sites = np.array(mask_sites(mask), dtype=np.int64)
    k = len(sites)
    if k == 0:
        return 1
    elems = grp.elements.astype(np.int64)
    if not np.isin(elems[:, sites], sites).all():
        raise ValueError("some group element does not stabilize the mask")
    m = len(elems)
    cur = np.broadcast_to(sites, (m, k)).copy()
    low = cur.copy()
    for _ in range(k):  # cycles inside the mask have length <= k
        cur = np.take_along_axis(elems, cur, axis=1)
        np.minimum(low, cur, out=low)
    cycles = (low == sites).sum(axis=1)
    total = int((np.int64(1) << cycles).sum())
    if total % m != 0:
        raise RuntimeError(f"Burnside sum {total} not divisible by group order {m}")
    return total // m


def config_action_table(p: Permutation, sites) -> np.ndarray:
    """Image table of the induced action on dense masked configurations.

    ``sites`` lists the masked vertices ascending; dense bit a of the
    output holds dense bit position of p(sites[a]). Requires ``p`` to map
    the site set onto itself.
    """
    sites = list(sites)
    pos = {s: a for a, s in enumerate(sites)}
    try:
        dense = [pos[p(s)] for s in sites]
    except KeyError:
        raise ValueError("permutation does not stabilize the masked sites") from None
    k = len(sites)
    table = np.zeros(1 << k, dtype=np.int64)
    configs = np.arange(1 << k, dtype=np.int64)
    for a in range(k):
        table |= ((configs >> a) & 1) << dense[a]
    return table


def orbit_labels(size: int, tables) -> np.ndarray:
    """Union-find by min-label propagation: labels[c] = smallest orbit member."""
    labels = np.arange(size, dtype=np.int64)
    while True:
        prev = labels.copy()
        for t in tables:
            np.minimum(labels, labels[t], out=labels)
            np.minimum.at(labels, t, labels)
        labels = labels[labels]  # path compression
        if np.array_equal(labels, prev):
            return labels


def orbits_of_configs(grp: PermGroup, mask: int) -> list[np.ndarray]:
    """Explicit orbit partition of all masked configurations.

    Orbits are sorted internally and listed by their smallest member, so
    the output is deterministic. The orbit count always equals the
    Burnside count when the group is enumerated.
    """
    if not grp.generators_complete:
        raise GroupNotEnumeratedError("orbit partition needs a complete generating set")
    sites = mask_sites(mask)
    k = len(sites)
    if k > 20:
        raise CapExceededError("orbits_of_configs", f"2^{k} configurations")
    tables = [config_action_table(g, sites) for g in grp.generators]
    labels = orbit_labels(1 << k, tables)
    reps = np.unique(labels)
    return [np.flatnonzero(labels == r).astype(np.int64) for r in reps]
