"""Geometric descriptions of lattices: points in the plane plus bonds.

A geometric lattice is two independent translation vectors, a list of seed
points inside the unit cell, and bonds given as (seed index, cell offset)
pairs.  Bonds can also be inferred from a uniform bond length.  The
geometry only matters for building and drawing; everything combinatorial
happens on the basis graph extracted by :func:`to_basis_graph`.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .basis import BasisGraph, CellVertex, edge_translation_class, normalize_basis

Vec = tuple[float, float]
GeoEnd = tuple[int, tuple[int, int]]
GeoEdge = tuple[GeoEnd, GeoEnd]

_EDGE_WINDOW = 2  # cell offsets scanned by infer_edges: [-2, 2] squared


@dataclass(frozen=True)
class GeometricLattice:
    """Plane geometry of a periodic lattice.

    ``seeds`` must lie in the half-open parallelogram spanned by ``v1`` and
    ``v2`` so that every lattice point has exactly one (seed, cell) name.
    ``geo_edges`` may be empty while bonds are still to be inferred.
    """

    v1: Vec
    v2: Vec
    seeds: tuple[Vec, ...]
    geo_edges: tuple[GeoEdge, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "v1", (float(self.v1[0]), float(self.v1[1])))
        object.__setattr__(self, "v2", (float(self.v2[0]), float(self.v2[1])))
        object.__setattr__(self, "seeds",
                           tuple((float(x), float(y)) for x, y in self.seeds))
        object.__setattr__(self, "geo_edges", tuple(
            ((int(i), (int(a), int(b))), (int(j), (int(c), int(d))))
            for (i, (a, b)), (j, (c, d)) in self.geo_edges))
        det = self.v1[0] * self.v2[1] - self.v1[1] * self.v2[0]
        scale = max(abs(c) for c in self.v1 + self.v2)
        if scale == 0 or abs(det) <= 1e-12 * scale * scale:
            raise ValueError("v1 and v2 must be linearly independent")
        if not self.seeds:
            raise ValueError("at least one seed point is required")
        for p in self.seeds:
            a, b = self.fractional(p)
            if not (-1e-9 <= a < 1 - 1e-9 and -1e-9 <= b < 1 - 1e-9):
                raise ValueError(f"seed {p} lies outside the half-open unit cell")
        ns = len(self.seeds)
        for end in [e for pair in self.geo_edges for e in pair]:
            if not 0 <= end[0] < ns:
                raise ValueError(f"edge endpoint {end} names no seed")

    def fractional(self, p: Vec) -> Vec:
        """Coordinates of p in the (v1, v2) frame."""
        det = self.v1[0] * self.v2[1] - self.v1[1] * self.v2[0]
        a = (p[0] * self.v2[1] - p[1] * self.v2[0]) / det
        b = (self.v1[0] * p[1] - self.v1[1] * p[0]) / det
        return a, b

    def position(self, v: CellVertex) -> Vec:
        sx, sy = self.seeds[v.s]
        return (sx + v.dx * self.v1[0] + v.dy * self.v2[0],
                sy + v.dx * self.v1[1] + v.dy * self.v2[1])


def _end_to_vertex(end: GeoEnd) -> CellVertex:
    i, (a, b) = end
    return CellVertex(a, b, i)


def to_basis_graph(lattice: GeometricLattice) -> BasisGraph:
    """Extract the basis graph behind a geometric lattice.

    Each geometric edge becomes a basis edge on (offset, seed) triples; the
    result is anchored to the origin cell.  Two geometric edges that are
    cell translates of one another would describe the same lattice bonds
    twice, so redundancy is rejected here by name rather than detected
    downstream.
    """
    raw = BasisGraph(
        len(lattice.seeds),
        [CellVertex(0, 0, s) for s in range(len(lattice.seeds))],
        [(_end_to_vertex(p), _end_to_vertex(q)) for p, q in lattice.geo_edges],
    )
    classes: dict = {}
    for p, q in lattice.geo_edges:
        key = edge_translation_class(_end_to_vertex(p), _end_to_vertex(q))
        if key in classes:
            raise ValueError(f"redundant geometric edges (translates): "
                             f"{classes[key]} and {(p, q)}")
        classes[key] = (p, q)
    return normalize_basis(raw)


def infer_edges(lattice: GeometricLattice, bond_length: float,
                rel_tol: float = 1e-6) -> GeometricLattice:
    """Connect every pair of lattice points at the given bond length.

    Offsets up to two cells away in each direction are scanned and matches
    deduplicated by translation class.  A match on the scan boundary means
    the cell vectors are so skewed that two cells cannot contain a bond;
    that is reported as an error rather than silently truncated.  Seeds
    that end up with no bonds at all are suspicious and draw a warning.
    """
    if bond_length <= 0:
        raise ValueError("bond length must be positive")
    tol = rel_tol * bond_length
    found: dict = {}
    W = _EDGE_WINDOW
    for i, (x0, y0) in enumerate(lattice.seeds):
        for j, (x1, y1) in enumerate(lattice.seeds):
            for a in range(-W, W + 1):
                for b in range(-W, W + 1):
                    if i == j and (a, b) == (0, 0):
                        continue
                    px = x1 + a * lattice.v1[0] + b * lattice.v2[0]
                    py = y1 + a * lattice.v1[1] + b * lattice.v2[1]
                    d = math.hypot(px - x0, py - y0)
                    if abs(d - bond_length) <= tol:
                        if abs(a) == W or abs(b) == W:
                            raise ValueError(
                                f"bond at scan-window boundary between seeds "
                                f"{i} and {j}, offset {(a, b)}; cell vectors "
                                f"too skewed for reliable inference")
                        u, v = CellVertex(0, 0, i), CellVertex(a, b, j)
                        key = edge_translation_class(u, v)
                        found.setdefault(key, ((i, (0, 0)), (j, (a, b))))
    edges = tuple(found[k] for k in sorted(found))
    degree = [0] * len(lattice.seeds)
    for (i, _), (j, _) in edges:
        degree[i] += 1
        degree[j] += 1
    for s, d in enumerate(degree):
        if d == 0:
            warnings.warn(f"seed {s} has no bonds at length {bond_length}")
    return GeometricLattice(lattice.v1, lattice.v2, lattice.seeds, edges)
