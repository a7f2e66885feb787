"""Finite descriptions of infinite periodic lattice graphs.

A lattice graph lives on vertices addressed by an integer cell offset
``(dx, dy)`` and a seed id ``s``; the whole graph is the union of all
integer translates of one finite basis graph.  Seeds are the vertices of
cell ``(0, 0)``.  This module holds the vertex and basis types plus the
bookkeeping that keeps a basis well formed: anchoring edges to the origin
cell, spotting edges that are translates of one another, and the JSON
exchange format.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .errors import InputFormatError


class CellVertex(NamedTuple):
    """A lattice vertex: cell offset (dx, dy) plus seed id s within the cell."""

    dx: int
    dy: int
    s: int

    def shift(self, x: int, y: int) -> "CellVertex":
        """Translate by (x, y) cells; the seed id never changes."""
        return CellVertex(self.dx + x, self.dy + y, self.s)


# An undirected edge is stored as a pair ordered by the natural tuple order,
# so equal edges compare equal no matter how their endpoints arrived.
Edge = tuple[CellVertex, CellVertex]


def make_edge(u: CellVertex, v: CellVertex) -> Edge:
    return (u, v) if u <= v else (v, u)


def _seed_key(v: CellVertex) -> tuple[int, int, int]:
    # Canonical comparisons order vertices by (s, dx, dy).
    return (v.s, v.dx, v.dy)


def edge_translation_class(u: CellVertex, v: CellVertex) -> Edge:
    """Canonical representative of an edge under cell translations.

    Two edges of a basis induce the same set of lattice edges exactly when
    they have the same representative.  Each endpoint is trial-translated to
    cell (0, 0); of the two anchorings the one with the lexicographically
    smaller ((s, dx, dy), (s, dx, dy)) key wins.
    """
    a = (CellVertex(0, 0, u.s), v.shift(-u.dx, -u.dy))
    b = (CellVertex(0, 0, v.s), u.shift(-v.dx, -v.dy))
    if (_seed_key(a[0]), _seed_key(a[1])) <= (_seed_key(b[0]), _seed_key(b[1])):
        return a
    return b


@dataclass(frozen=True)
class BasisGraph:
    """One repeating unit of a lattice graph.

    ``n_seeds`` fixes the seed id range 0..n_seeds-1.  ``vertices`` holds
    every declared vertex (isolated ones included); ``edges`` holds unordered
    vertex pairs.  Construction only enforces shape and integer types;
    structural health is reported by :func:`validate_basis` so that sick
    bases can still be built and inspected.
    """

    n_seeds: int
    vertices: tuple[CellVertex, ...]
    edges: tuple[Edge, ...]

    def __init__(self, n_seeds: int,
                 vertices: Iterable[CellVertex] = (),
                 edges: Iterable[tuple[CellVertex, CellVertex]] = ()):
        if not isinstance(n_seeds, int) or isinstance(n_seeds, bool) or n_seeds < 1:
            raise ValueError(f"n_seeds must be a positive integer, got {n_seeds!r}")
        vs = {CellVertex(*v) for v in vertices}
        es = set()
        for u, v in edges:
            u, v = CellVertex(*u), CellVertex(*v)
            es.add(make_edge(u, v))
            vs.add(u)
            vs.add(v)
        for v in vs:
            for c in v:
                if not isinstance(c, int) or isinstance(c, bool):
                    raise ValueError(f"vertex fields must be integers, got {v!r}")
        object.__setattr__(self, "n_seeds", n_seeds)
        object.__setattr__(self, "vertices", tuple(sorted(vs)))
        object.__setattr__(self, "edges", tuple(sorted(es)))

    def seed_ids_used(self) -> set[int]:
        return {v.s for v in self.vertices}


def span_bounds(basis: BasisGraph) -> tuple[int, int]:
    """Largest |dx| and |dy| over endpoints of edges; (0, 0) when edgeless.

    These bounds control how far a single basis edge can reach across cells,
    which is what the wrap-safety patch sizes are computed from.  Isolated
    vertices do not count: they never produce an edge to wrap.
    """
    dx = dy = 0
    for u, v in basis.edges:
        dx = max(dx, abs(u.dx), abs(v.dx))
        dy = max(dy, abs(u.dy), abs(v.dy))
    return dx, dy


def normalize_basis(basis: BasisGraph) -> BasisGraph:
    """Translate every edge so at least one endpoint sits in cell (0, 0).

    Edges that already touch the origin cell are left exactly as given, so a
    normalized basis passes through unchanged.  Edges are otherwise moved to
    their canonical anchoring; translate-equivalent copies collapse onto one
    another in the process.  Seeds for every referenced id are added so the
    result validates cleanly.  The induced lattice graph is unchanged.
    """
    out_edges: set[Edge] = set()
    for u, v in basis.edges:
        if u == v:
            raise ValueError(f"edge with identical endpoints: {u}")
        if (u.dx, u.dy) == (0, 0) or (v.dx, v.dy) == (0, 0):
            out_edges.add(make_edge(u, v))
        else:
            a, b = edge_translation_class(u, v)
            out_edges.add(make_edge(a, b))
    vs = set(basis.vertices)
    for u, v in out_edges:
        vs.add(u)
        vs.add(v)
    for s in {w.s for w in vs}:
        vs.add(CellVertex(0, 0, s))
    return BasisGraph(basis.n_seeds, vs, out_edges)


def detect_redundant(basis: BasisGraph) -> list[tuple[Edge, Edge]]:
    """All unordered pairs of distinct edges related by a cell translation."""
    groups: dict[Edge, list[Edge]] = {}
    for e in basis.edges:
        groups.setdefault(edge_translation_class(*e), []).append(e)
    pairs = []
    for key in sorted(groups):
        members = groups[key]
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                pairs.append((members[i], members[j]))
    return pairs


def validate_basis(basis: BasisGraph) -> list[str]:
    """Check the structural invariants; return one message per violation.

    A healthy basis has: every seed id in range, an origin-cell seed vertex
    for every id in use, every edge anchored to cell (0, 0) by at least one
    endpoint, no edge joining a vertex to itself, and no edge that is a
    cell translate of another.
    """
    problems = []
    for v in basis.vertices:
        if not 0 <= v.s < basis.n_seeds:
            problems.append(f"seed id out of range 0..{basis.n_seeds - 1}: {v}")
    present = set(basis.vertices)
    for s in sorted(basis.seed_ids_used()):
        if CellVertex(0, 0, s) not in present:
            problems.append(f"missing origin seed vertex (0, 0, {s})")
    for u, v in basis.edges:
        if u == v:
            problems.append(f"edge with identical endpoints: {u}")
        elif (u.dx, u.dy) != (0, 0) and (v.dx, v.dy) != (0, 0):
            problems.append(f"edge between two non-origin cells "
                            f"(not anchored): {(u, v)}")
    for e, f in detect_redundant(basis):
        problems.append(f"redundant edges (translates of each other): {e} and {f}")
    return problems


# ---------------------------------------------------------------------------
# JSON exchange format


def _as_int(x, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise InputFormatError(f"{what} must be a JSON integer, got {x!r}")
    return x


def _as_vertex(cell, what: str) -> CellVertex:
    if not isinstance(cell, list) or len(cell) != 3:
        raise InputFormatError(f"{what} must be a [dx, dy, s] triple, got {cell!r}")
    return CellVertex(*(_as_int(c, what) for c in cell))


def basis_from_json(text: str) -> BasisGraph:
    """Parse the basis exchange format.

    Expected shape::

        {"n_seeds": 2,
         "vertices": [[0, 0, 0], [0, 0, 1], ...],
         "edges": [[[0, 0, 0], [0, 0, 1]], ...]}

    All cells must be JSON integers; floats, NaN and infinities are rejected.
    """
    def no_const(name):
        raise InputFormatError(f"non-finite number {name} is not allowed")

    try:
        doc = json.loads(text, parse_constant=no_const)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputFormatError("top level must be a JSON object")
    for key in ("n_seeds", "vertices", "edges"):
        if key not in doc:
            raise InputFormatError(f"missing key {key!r}")
    n_seeds = _as_int(doc["n_seeds"], "n_seeds")
    if n_seeds < 1:
        raise InputFormatError(f"n_seeds must be positive, got {n_seeds}")
    if not isinstance(doc["vertices"], list) or not isinstance(doc["edges"], list):
        raise InputFormatError("vertices and edges must be JSON arrays")
    vertices = [_as_vertex(c, "vertex") for c in doc["vertices"]]
    edges = []
    for pair in doc["edges"]:
        if not isinstance(pair, list) or len(pair) != 2:
            raise InputFormatError(f"edge must be a pair of vertices, got {pair!r}")
        edges.append((_as_vertex(pair[0], "edge endpoint"),
                      _as_vertex(pair[1], "edge endpoint")))
    return BasisGraph(n_seeds, vertices, edges)


def basis_to_json(basis: BasisGraph) -> str:
    doc = {
        "n_seeds": basis.n_seeds,
        "vertices": [list(v) for v in basis.vertices],
        "edges": [[list(u), list(v)] for u, v in basis.edges],
    }
    return json.dumps(doc, indent=2, sort_keys=True)


# ---------------------------------------------------------------------------
# Stock fixtures used throughout the test suite and the docs.


def honeycomb_basis() -> BasisGraph:
    """Two seeds; one of them bonds to its three neighbouring cells' seeds."""
    a, b = CellVertex(0, 0, 0), CellVertex(0, 0, 1)
    c, d = CellVertex(1, 0, 0), CellVertex(0, 1, 0)
    return BasisGraph(2, [a, b, c, d], [(a, b), (b, c), (b, d)])


def square_basis() -> BasisGraph:
    """One seed bonded to the cells on its right and above."""
    a, b, c = CellVertex(0, 0, 0), CellVertex(1, 0, 0), CellVertex(0, 1, 0)
    return BasisGraph(1, [a, b, c], [(a, b), (a, c)])
