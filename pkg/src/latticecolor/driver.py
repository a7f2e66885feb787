"""The coloring search over patch sizes.

To color an infinite periodic lattice, try patch sizes in cheapest-first
order; for each size, wrap the patch onto the torus, refuse wraps that
close an edge into a self-loop, and hand the multigraph to an engine with
the palette the request calls for.  The first success is returned together
with the size it happened at and a log of every size that was tried.

Three request types: t=1 asks for exactly max-degree many colors (may be
impossible for class II lattices, hence the area cap), t=2 for max-degree
plus one (always reachable), t=3 for any proper coloring, greedily.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from typing import Optional, Union

from .basis import BasisGraph, span_bounds, validate_basis
from .coloring import (SolveStatus, exact_color, greedy_proper, misra_gries,
                       verify_proper)
from .patch import (ColoredPatch, build_patch, patch_size_sequence, unwrap,
                    wrap)

DEFAULT_T1_MAX_AREA = 64

ENGINES = ("auto", "exact", "misra-gries")


@dataclass
class ColoringResult:
    """A successful run: the colored patch plus how it was obtained."""

    colored: ColoredPatch
    n: int
    m: int
    t: int
    k: int
    delta: int
    stats: dict


@dataclass
class AreaExhausted:
    """Every size within the area cap failed; the log says how."""

    max_area: int
    delta: int
    stats: dict


def lattice_max_degree(basis: BasisGraph) -> int:
    """Max degree of the infinite lattice.

    Computed on the wrapped patch at (dx_max+1, dy_max+1): that size can
    never close a self-loop, and a loop-free wrap preserves the lattice
    degrees exactly.
    """
    dx, dy = span_bounds(basis)
    wrapped = wrap(build_patch(basis, dx + 1, dy + 1))
    assert not wrapped.self_loop_labels()
    return wrapped.graph.max_degree()


def _type_achieved(k_used: int, delta: int) -> int:
    if k_used <= delta:
        return 1
    if k_used == delta + 1:
        return 2
    return 3


def color_lattice(basis: BasisGraph, t: int,
                  initial: Optional[tuple[int, int]] = None,
                  max_area: Optional[int] = None,
                  engine: str = "auto",
                  budget: Optional[int] = None) -> Union[ColoringResult, AreaExhausted]:
    """Search patch sizes until one wraps and colors, or the area cap falls.

    Sizes run through :func:`patch_size_sequence` starting at ``initial``.
    A wrap with self-loops is rejected with one diagnostic per loop.  With
    t=1 an unbounded search could run forever on a class II lattice, so a
    default area cap of 64 cells applies; t=2 and t=3 terminate on their
    own and get no default cap.  Budget overruns at one size advance the
    search to the next size rather than aborting.
    """
    problems = validate_basis(basis)
    if problems:
        raise ValueError("invalid basis: " + "; ".join(problems))
    if t not in (1, 2, 3):
        raise ValueError(f"t must be 1, 2 or 3, got {t}")
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}")
    if engine == "misra-gries" and t == 1:
        raise ValueError("misra-gries cannot target exactly max-degree colors")
    if max_area is None and t == 1:
        max_area = DEFAULT_T1_MAX_AREA

    delta = lattice_max_degree(basis)
    t_start = time.perf_counter()
    stats: dict = {"patches_tried": 0, "solver_nodes": 0, "mg_steps": 0,
                   "events": []}

    def note(n, m, outcome, **detail):
        stats["events"].append({"n": n, "m": m, "outcome": outcome, **detail})

    def finish(colored, n, m, k_used):
        stats["wall_time_s"] = time.perf_counter() - t_start
        return ColoringResult(colored, n, m, _type_achieved(k_used, delta),
                              k_used, delta, stats)

    sizes = patch_size_sequence()
    if initial is not None:
        first = (int(initial[0]), int(initial[1]))
        if first[0] < 1 or first[1] < 1:
            raise ValueError(f"initial patch size must be positive, got {first}")
        for size in sizes:
            if size == first:
                break
        sizes = _chain(first, sizes)

    for n, m in sizes:
        if max_area is not None and n * m > max_area:
            stats["wall_time_s"] = time.perf_counter() - t_start
            return AreaExhausted(max_area, delta, stats)
        stats["patches_tried"] += 1
        wrapped = wrap(build_patch(basis, n, m))
        loops = wrapped.self_loop_labels()
        if loops:
            note(n, m, "self_loops", count=len(loops),
                 loops=[_edge_doc(e) for e in loops])
            continue
        assert wrapped.graph.max_degree() == delta

        if t == 3:
            colors = greedy_proper(wrapped.graph)
            note(n, m, "colored", engine="greedy")
        else:
            k_target = delta if t == 1 else delta + 1
            use_mg = (engine == "misra-gries"
                      or (engine == "auto" and t == 2 and wrapped.graph.is_simple()))
            if use_mg:
                if not wrapped.graph.is_simple():
                    note(n, m, "not_simple")
                    continue
                colors = misra_gries(wrapped.graph, stats)
                note(n, m, "colored", engine="misra-gries")
            else:
                res = exact_color(wrapped.graph, k_target, budget)
                stats["solver_nodes"] += res.nodes
                if res.status is SolveStatus.UNSAT:
                    note(n, m, "unsat", k=k_target, nodes=res.nodes)
                    continue
                if res.status is SolveStatus.BUDGET_EXCEEDED:
                    note(n, m, "budget_exceeded", k=k_target, nodes=res.nodes)
                    continue
                colors = res.colors
                note(n, m, "colored", engine="exact")

        assert verify_proper(wrapped.graph, colors) == []
        k_used = len(set(colors.values())) if colors else 0
        return finish(unwrap(wrapped, colors), n, m, k_used)

    raise AssertionError("size sequence is infinite")  # pragma: no cover


def _chain(first, rest):
    yield first
    yield from rest


def one_pass_nearly_minimal(basis: BasisGraph) -> ColoringResult:
    """One-pass nearly minimal coloring at the guaranteed-simple patch size.

    The patch (2*dx_max+1) by (2*dy_max+1) always wraps to a simple graph,
    so a single Misra-Gries run colors it with at most max-degree plus one
    colors; no size search happens.  Runs in time polynomial in the span
    bound and the basis edge count.
    """
    dx, dy = span_bounds(basis)
    size = (2 * dx + 1, 2 * dy + 1)
    result = color_lattice(basis, t=2, initial=size, engine="misra-gries")
    assert isinstance(result, ColoringResult) and (result.n, result.m) == size
    return result


# ---------------------------------------------------------------------------
# Result JSON


def _edge_doc(edge):
    u, v = edge
    return [list(u), list(v)]


def coloring_edges_doc(colored: ColoredPatch) -> list:
    return [[list(u), list(v), colored.colors[(u, v)]]
            for u, v in colored.patch.edges]


def result_to_json(result: ColoringResult) -> str:
    doc = {
        "n": result.n,
        "m": result.m,
        "t": result.t,
        "k": result.k,
        "delta": result.delta,
        "edges": coloring_edges_doc(result.colored),
        "stats": result.stats,
    }
    return json.dumps(doc, indent=2, sort_keys=True)
