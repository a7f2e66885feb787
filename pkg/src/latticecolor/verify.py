"""Independent checks that a colored patch really tiles the whole lattice.

A colored patch claims more than it shows: gluing translated copies of it
must stay properly colored everywhere, including across the seams.  The
checks here never reuse the search machinery.  They re-describe the colored
patch as a one-cell coloring basis, lay out enough translated copies to
contain every edge around a central cell, and inspect the result directly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .basis import BasisGraph, CellVertex, Edge, make_edge, span_bounds
from .patch import ColoredPatch, build_patch, reseed


@dataclass
class SuperPatch:
    """N by M translated copies of a colored patch, colors kept as found.

    When two copies lay the same edge down with the same color the copies
    agree and the edge is stored once; disagreeing colors are all kept so
    the conflict surfaces in the checks instead of being merged away.
    """

    basis: BasisGraph
    n: int
    m: int
    N: int
    M: int
    edges: dict[Edge, tuple[int, ...]]


def expand(colored: ColoredPatch, N: int, M: int) -> SuperPatch:
    """Glue an N by M grid of copies, each translated by whole patches."""
    if N < 1 or M < 1:
        raise ValueError(f"expansion factors must be positive, got ({N}, {M})")
    n, m = colored.patch.n, colored.patch.m
    merged: dict[Edge, set[int]] = {}
    for y in range(M):
        for x in range(N):
            for (u, v), color in colored.colors.items():
                e = make_edge(u.shift(n * x, m * y), v.shift(n * x, m * y))
                merged.setdefault(e, set()).add(color)
    edges = {e: tuple(sorted(cs)) for e, cs in merged.items()}
    return SuperPatch(colored.patch.basis, n, m, N, M, edges)


def _reseeded_coloring(colored: ColoredPatch) -> ColoredPatch:
    """The same coloring written over the one-cell basis of the patch."""
    new_basis, table = reseed(colored.patch)
    new_colors = {make_edge(table[u], table[v]): c
                  for (u, v), c in colored.colors.items()}
    return ColoredPatch(build_patch(new_basis, 1, 1), new_colors, colored.k)


def check_induced(colored: ColoredPatch) -> list[tuple]:
    """Decide whether the induced infinite coloring is proper.

    The patch coloring is rewritten over a one-cell basis, surrounded with
    enough copies that every lattice edge touching the central cell is
    present, and each central vertex is inspected for repeated colors.
    Properness at the central copy extends to the whole lattice by
    translation symmetry, so an empty return is a proof, not a sample.

    Violations are tuples (vertex, color, edges) in the coordinates of the
    reseeded basis.
    """
    seeded = _reseeded_coloring(colored)
    dx, dy = span_bounds(seeded.patch.basis)
    reach = max(dx, dy)
    R = 2 * reach + 1
    sup = expand(seeded, R, R)

    center = (reach, reach)
    incident: dict[CellVertex, list] = {}
    for (u, v), cs in sup.edges.items():
        for w in (u, v):
            if (w.dx, w.dy) == center:
                incident.setdefault(w, []).append(((u, v), cs))

    conflicts = []
    for w in sorted(incident):
        by_color: dict[int, list] = {}
        for e, cs in incident[w]:
            for c in cs:
                by_color.setdefault(c, []).append(e)
        for c in sorted(by_color):
            if len(by_color[c]) > 1:
                conflicts.append((w, c, tuple(sorted(by_color[c]))))
    return conflicts


def seed_uniqueness_check(colored: ColoredPatch) -> list[tuple]:
    """Necessary condition screen: seeds may not repeat inside a color class.

    Over the reseeded one-cell description, a color class in which some
    seed id appears at two endpoint slots (two edges, or both ends of one)
    always induces a conflict somewhere in the lattice.  Passing this check
    does not prove properness; failing it disproves it cheaply.
    """
    seeded = _reseeded_coloring(colored)
    by_color: dict[int, list[Edge]] = {}
    for e, c in seeded.colors.items():
        by_color.setdefault(c, []).append(e)
    violations = []
    for c in sorted(by_color):
        slots: dict[int, int] = {}
        for u, v in by_color[c]:
            for w in (u, v):
                slots[w.s] = slots.get(w.s, 0) + 1
        for s in sorted(slots):
            if slots[s] > 1:
                violations.append((c, s, slots[s]))
    return violations


def matching_check(sup: SuperPatch) -> list[tuple]:
    """Every color class must be a matching away from the boundary.

    A vertex is interior when its degree inside the super patch equals its
    degree in the infinite lattice, so all of its edges are visible; any
    interior vertex meeting one color twice is a violation.  Boundary
    vertices are skipped: their missing edges make one-color multiplicity
    meaningless there.
    """
    lattice_degree: dict[int, int] = {}
    for u, v in sup.basis.edges:
        for w in (u, v):
            lattice_degree[w.s] = lattice_degree.get(w.s, 0) + 1

    incident: dict[CellVertex, list] = {}
    for (u, v), cs in sup.edges.items():
        incident.setdefault(u, []).append(((u, v), cs))
        incident.setdefault(v, []).append(((u, v), cs))

    violations = []
    for w in sorted(incident):
        if len(incident[w]) != lattice_degree.get(w.s, 0):
            continue
        by_color: dict[int, list] = {}
        for e, cs in incident[w]:
            for c in cs:
                by_color.setdefault(c, []).append(e)
        for c in sorted(by_color):
            if len(by_color[c]) > 1:
                violations.append((w, c, tuple(sorted(by_color[c]))))
    return violations
