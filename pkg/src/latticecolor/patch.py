"""Patches of a lattice graph and their toroidal wraps.

A patch collects the translates of a basis graph over an n-by-m block of
cells.  Wrapping reduces every vertex modulo the block, which turns the
patch into a multigraph on the torus; each wrapped edge remembers the patch
edge it came from, so the wrap is invertible.  A colored wrap whose
multigraph has no self-loop induces a proper coloring of the whole lattice,
which is why everything downstream works on wrapped patches.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .basis import BasisGraph, CellVertex, Edge, make_edge
from .multigraph import MultiGraph


def patch_size_sequence() -> Iterator[tuple[int, int]]:
    """All patch sizes (n, m), each exactly once, cheapest first.

    Sorted by (n*m, max(n, m), n) ascending, so the search tries small areas
    before large ones and squarish blocks before skewed ones of equal area:
    (1,1), (1,2), (2,1), (1,3), (3,1), (2,2), (1,4), ...
    """
    area = 0
    while True:
        area += 1
        pairs = [(n, area // n) for n in range(1, area + 1) if area % n == 0]
        pairs.sort(key=lambda nm: (max(nm), nm[0]))
        yield from pairs


@dataclass(frozen=True)
class Patch:
    """The union of basis translates over cells (x, y), 0 <= x < n, 0 <= y < m."""

    basis: BasisGraph
    n: int
    m: int
    vertices: tuple[CellVertex, ...]
    edges: tuple[Edge, ...]


def build_patch(basis: BasisGraph, n: int, m: int) -> Patch:
    """Assemble the n-by-m patch of a valid basis.

    Distinct translates of distinct basis edges never coincide when the basis
    has no redundant edges, so the patch holds exactly n*m*|E(B)| edges; a
    shortfall means the basis was redundant and is reported as such.
    """
    if n < 1 or m < 1:
        raise ValueError(f"patch size must be positive, got ({n}, {m})")
    vertices = set()
    edges = set()
    for y in range(m):
        for x in range(n):
            for v in basis.vertices:
                vertices.add(v.shift(x, y))
            for u, v in basis.edges:
                edges.add(make_edge(u.shift(x, y), v.shift(x, y)))
    if len(edges) != n * m * len(basis.edges):
        raise ValueError("patch edge count collapsed; basis has redundant edges")
    return Patch(basis, n, m, tuple(sorted(vertices)), tuple(sorted(edges)))


def pbc(v: CellVertex, n: int, m: int) -> CellVertex:
    """Reduce a vertex into the n-by-m cell block with floored modulo."""
    return CellVertex(v.dx % n, v.dy % m, v.s)


@dataclass(frozen=True)
class WrappedPatch:
    """A patch reduced onto the torus; edge labels are the pre-wrap pairs."""

    basis: BasisGraph
    n: int
    m: int
    graph: MultiGraph

    def self_loop_labels(self) -> list[Edge]:
        """Pre-wrap edges that closed into loops; empty means safe to color."""
        return [label for _, _, label in self.graph.self_loops()]


def wrap(patch: Patch) -> WrappedPatch:
    """Reduce every patch vertex modulo the block; keep all edge copies.

    Edges falling onto the same wrapped pair stay distinct parallel edges,
    and an edge whose endpoints collide becomes a self-loop.  The original
    pair rides along as the label, so :func:`unwrap` can reinstate it.
    """
    n, m = patch.n, patch.m
    wrapped_vertices = {pbc(v, n, m) for v in patch.vertices}
    wrapped_edges = [(pbc(u, n, m), pbc(v, n, m), (u, v)) for u, v in patch.edges]
    return WrappedPatch(patch.basis, n, m, MultiGraph(wrapped_vertices, wrapped_edges))


@dataclass(frozen=True)
class ColoredPatch:
    """A patch whose every edge carries a color from 0..k-1."""

    patch: Patch
    colors: dict[Edge, int]
    k: int

    def __post_init__(self):
        missing = set(self.patch.edges) - set(self.colors)
        extra = set(self.colors) - set(self.patch.edges)
        if missing or extra:
            raise ValueError(f"coloring does not match patch edges "
                             f"({len(missing)} missing, {len(extra)} extra)")


def unwrap(wrapped: WrappedPatch, colors: dict[Edge, int]) -> ColoredPatch:
    """Undo the wrap, carrying each copy's color back to its patch edge.

    Every parallel copy must be colored; a partial coloring is rejected
    because a missing copy would silently delete a lattice edge.
    """
    labels = [label for _, _, label in wrapped.graph.edges]
    missing = [lab for lab in labels if lab not in colors]
    if missing:
        raise ValueError(f"{len(missing)} wrapped edges are uncolored, "
                         f"first: {missing[0]}")
    patch = build_patch(wrapped.basis, wrapped.n, wrapped.m)
    edge_colors = {label: colors[label] for label in labels}
    k = len(set(edge_colors.values()))
    return ColoredPatch(patch, edge_colors, k)


def reseed(patch: Patch) -> tuple[BasisGraph, dict[CellVertex, CellVertex]]:
    """Re-describe an n-by-m patch as a basis with one cell of n*m*n_S seeds.

    Vertices inside the block become the new seeds; every other vertex maps
    to the translate, by whole blocks, of the seed its position reduces to.
    The lattice induced by the new basis equals the one induced by the old,
    just described with a coarser cell.
    """
    n, m, ns = patch.n, patch.m, patch.basis.n_seeds

    def remap(v: CellVertex) -> CellVertex:
        s_new = (v.dy % m * n + v.dx % n) * ns + v.s
        return CellVertex(v.dx // n, v.dy // m, s_new)

    table = {v: remap(v) for v in patch.vertices}
    new_edges = [(remap(u), remap(v)) for u, v in patch.edges]
    new_vertices = set(table.values())
    for w in new_vertices.copy():
        new_vertices.add(CellVertex(0, 0, w.s))
    return BasisGraph(n * m * ns, new_vertices, new_edges), table
