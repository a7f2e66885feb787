"""Edge coloring engines.

Four engines with different contracts, all deterministic:

* :func:`misra_gries` colors any simple graph with at most max_degree + 1
  colors in polynomial time.
* :func:`exact_color` decides k-edge-colorability of a loop-free multigraph
  by complete backtracking, so it can both find minimum colorings and prove
  that none exist.
* :func:`greedy_proper` is the cheap fallback; it may waste colors but never
  uses more than 2*max_degree - 1.
* :func:`chromatic_index_bruteforce` recomputes the chromatic index by a
  counting argument with no search at all, which makes it a genuinely
  independent cross-check for the exact solver on small graphs.

Colorings are dictionaries from edge label to color; :func:`verify_proper`
judges them, reporting uncolored edges and same-color incidences as
distinct kinds of violation.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Hashable, Optional

from .errors import BudgetExceeded
from .multigraph import MultiGraph


class SolveStatus(Enum):
    SAT = "SAT"
    UNSAT = "UNSAT"
    BUDGET_EXCEEDED = "BUDGET_EXCEEDED"


@dataclass
class SolveResult:
    status: SolveStatus
    colors: Optional[dict]
    nodes: int


def verify_proper(graph: MultiGraph, colors: dict) -> list[tuple]:
    """Judge a (possibly partial) coloring.

    Returns a list of violations, empty when the coloring is total and
    proper.  Each violation is a tuple: ("uncolored", label) for an edge
    with no color, ("conflict", vertex, color, labels) when a vertex meets
    the same color more than once.  A colored self-loop always conflicts
    with itself since both ends land on one vertex.
    """
    problems: list[tuple] = []
    for _, _, label in graph.edges:
        if label not in colors:
            problems.append(("uncolored", label))
    for v in graph.vertices:
        by_color: dict[int, list] = {}
        for u, w, label in graph.incident(v):
            if label not in colors:
                continue
            count = 2 if u == w else 1
            by_color.setdefault(colors[label], []).extend([label] * count)
        for color in sorted(by_color):
            labels = by_color[color]
            if len(labels) > 1:
                problems.append(("conflict", v, color, tuple(labels)))
    return problems


def greedy_proper(graph: MultiGraph) -> dict:
    """First-fit coloring in deterministic edge order.

    Each edge takes the smallest color unused at both endpoints, which is
    always possible within 2*max_degree - 1 colors.  Self-loops are refused:
    no proper coloring can include one.
    """
    if graph.self_loops():
        raise ValueError("graph has self-loops; no proper edge coloring exists")
    used: dict[Hashable, set[int]] = {v: set() for v in graph.vertices}
    colors: dict = {}
    for u, v, label in graph.edges:
        c = 0
        while c in used[u] or c in used[v]:
            c += 1
        colors[label] = c
        used[u].add(c)
        used[v].add(c)
    return colors


# ---------------------------------------------------------------------------
# Exact solver


def exact_color(graph: MultiGraph, k: int, budget: Optional[int] = None) -> SolveResult:
    """Decide whether the multigraph admits a proper k-edge-coloring.

    Complete backtracking over edges sorted by descending endpoint degree
    sum, colors tried in ascending order.  Symmetry is broken by allowing a
    color only once every smaller color has appeared, so the first edge is
    pinned to color 0 and identical inputs always yield the identical
    coloring.  Forward checking prunes a branch as soon as some uncolored
    edge has no color left, or some vertex has fewer free colors than
    uncolored incident edges.  ``budget`` caps the number of assignments
    tried; exceeding it reports BUDGET_EXCEEDED rather than an answer.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if graph.self_loops():
        raise ValueError("graph has self-loops; no proper edge coloring exists")
    edges = sorted(graph.edges,
                   key=lambda e: (-(graph.degree(e[0]) + graph.degree(e[1])),
                                  e[0], e[1], repr(e[2])))
    n_edges = len(edges)
    if n_edges == 0:
        return SolveResult(SolveStatus.SAT, {}, 0)
    if k == 0:
        return SolveResult(SolveStatus.UNSAT, None, 0)

    full = (1 << k) - 1
    used = {v: 0 for v in graph.vertices}
    free_count = {v: k for v in graph.vertices}
    pending = {v: 0 for v in graph.vertices}
    incident_idx: dict[Hashable, list[int]] = {v: [] for v in graph.vertices}
    for i, (u, v, _) in enumerate(edges):
        pending[u] += 1
        pending[v] += 1
        incident_idx[u].append(i)
        incident_idx[v].append(i)

    assignment = [0] * n_edges
    colored = [False] * n_edges
    nodes = 0

    def feasible_after(u, v) -> bool:
        # Capacity at the two touched endpoints, then one-step lookahead on
        # every uncolored edge that shares an endpoint with them.
        if free_count[u] < pending[u] or free_count[v] < pending[v]:
            return False
        for w in (u, v):
            for j in incident_idx[w]:
                if colored[j]:
                    continue
                a, b, _ = edges[j]
                if not (~(used[a] | used[b])) & full:
                    return False
        return True

    def solve(idx: int, max_used: int) -> bool:
        nonlocal nodes
        if idx == n_edges:
            return True
        u, v, _ = edges[idx]
        avail = (~(used[u] | used[v])) & full
        hi = min(k - 1, max_used + 1)
        for c in range(hi + 1):
            bit = 1 << c
            if not avail & bit:
                continue
            nodes += 1
            if budget is not None and nodes > budget:
                raise BudgetExceeded
            assignment[idx] = c
            colored[idx] = True
            used[u] |= bit
            used[v] |= bit
            free_count[u] -= 1
            free_count[v] -= 1
            pending[u] -= 1
            pending[v] -= 1
            ok = feasible_after(u, v) and solve(idx + 1, max(max_used, c))
            if ok:
                return True
            colored[idx] = False
            used[u] &= ~bit
            used[v] &= ~bit
            free_count[u] += 1
            free_count[v] += 1
            pending[u] += 1
            pending[v] += 1
        return False

    try:
        sat = solve(0, -1)
    except BudgetExceeded:
        return SolveResult(SolveStatus.BUDGET_EXCEEDED, None, nodes)
    if not sat:
        return SolveResult(SolveStatus.UNSAT, None, nodes)
    colors = {edges[i][2]: assignment[i] for i in range(n_edges)}
    return SolveResult(SolveStatus.SAT, colors, nodes)


# ---------------------------------------------------------------------------
# Misra and Gries


def misra_gries(graph: MultiGraph, stats: Optional[dict] = None) -> dict:
    """Color a simple graph with at most max_degree + 1 colors.

    The classic constructive proof of Vizing's bound, specialised to simple
    graphs.  For each uncolored edge (u, v) a maximal fan of u is built
    starting at v: each next fan vertex is joined to u by a color free at
    the previous one.  With c free at u and d free at the last fan vertex,
    inverting the maximal path through u of edges alternating d and c makes
    d free at u while keeping the coloring proper.  Some prefix of the fan
    then survives as a fan with d free at its tip; rotating that prefix
    shifts every fan edge's color one step down and frees the tip edge,
    which takes d.  Every step keeps the partial coloring proper, so after
    the last edge the whole graph is properly colored.

    Edges are processed in lexicographic order and every tie inside the
    algorithm is broken toward the smallest color or vertex, so the result
    is deterministic.  ``stats`` (optional) accumulates operation counts.
    """
    if not graph.is_simple():
        raise ValueError("misra_gries requires a simple graph")
    if stats is None:
        stats = {}
    stats.setdefault("mg_steps", 0)

    delta = graph.max_degree()
    n_colors = delta + 1
    # at[v][c] = neighbor joined to v by an edge colored c
    at: dict[Hashable, dict[int, Hashable]] = {v: {} for v in graph.vertices}
    pair_color: dict[tuple, int] = {}
    label_of = {}
    for u, v, label in graph.edges:
        label_of[(u, v)] = label

    def pkey(u, v):
        return (u, v) if u <= v else (v, u)

    def set_color(u, v, c):
        old = pair_color.get(pkey(u, v))
        if old is not None:
            del at[u][old]
            del at[v][old]
        pair_color[pkey(u, v)] = c
        at[u][c] = v
        at[v][c] = u

    def uncolor(u, v):
        old = pair_color.pop(pkey(u, v))
        del at[u][old]
        del at[v][old]
        return old

    def free_color(v) -> int:
        for c in range(n_colors):
            if c not in at[v]:
                return c
        raise AssertionError("no free color; degree bookkeeping is wrong")

    def is_free(c, v) -> bool:
        return c not in at[v]

    def invert_path(u, c, d):
        """Swap colors c and d along the maximal d-first path from u."""
        path = []
        cur, col = u, d
        while True:
            nxt = at[cur].get(col)
            if nxt is None:
                break
            path.append((cur, nxt, col))
            cur, col = nxt, (c if col == d else d)
        for a, b, col in path:
            uncolor(a, b)
        for a, b, col in path:
            set_color(a, b, c if col == d else d)
        stats["mg_steps"] += len(path)

    def prefix_is_fan(u, fan) -> bool:
        for i in range(1, len(fan)):
            col = pair_color.get(pkey(u, fan[i]))
            if col is None or not is_free(col, fan[i - 1]):
                return False
        return True

    for u, v, _ in graph.edges:
        # Maximal fan of u starting at v, extended greedily by smallest color.
        fan = [v]
        in_fan = {v}
        while True:
            tip = fan[-1]
            extended = False
            for c in range(n_colors):
                if is_free(c, tip):
                    w = at[u].get(c)
                    if w is not None and w not in in_fan:
                        fan.append(w)
                        in_fan.add(w)
                        extended = True
                        break
            if not extended:
                break
        stats["mg_steps"] += len(fan)

        c = free_color(u)
        d = free_color(fan[-1])
        if c != d:
            invert_path(u, c, d)
        # After the inversion d is free at u; find the first fan prefix that
        # is still a fan and whose tip has d free, then rotate it.
        j = None
        for i in range(len(fan)):
            if is_free(d, fan[i]) and prefix_is_fan(u, fan[: i + 1]):
                j = i
                break
        if j is None:
            raise AssertionError("no rotatable fan prefix; invariant broken")
        for i in range(j):
            set_color(u, fan[i], uncolor(u, fan[i + 1]))
        set_color(u, fan[j], d)
        stats["mg_steps"] += j + 1

    return {label_of[pk]: c for pk, c in pair_color.items()}


# ---------------------------------------------------------------------------
# Independent chromatic index oracle


def chromatic_index_bruteforce(graph: MultiGraph) -> int:
    """Chromatic index by inclusion-exclusion, for graphs of at most 16 edges.

    A k-edge-coloring is a cover of the line graph by k independent sets.
    Counting independent sets of every induced sub-edge-set with a subset
    convolution argument decides, for each k, whether such a cover exists;
    the smallest feasible k is the chromatic index.  No backtracking is
    involved, so this is an independent oracle for :func:`exact_color`.
    """
    if graph.self_loops():
        raise ValueError("chromatic index is undefined for graphs with self-loops")
    m = len(graph.edges)
    if m > 16:
        raise ValueError(f"bruteforce oracle is limited to 16 edges, got {m}")
    if m == 0:
        return 0

    conflict = [0] * m
    for i, (u1, v1, _) in enumerate(graph.edges):
        for j, (u2, v2, _) in enumerate(graph.edges):
            if i != j and len({u1, v1} & {u2, v2}) > 0:
                conflict[i] |= 1 << j

    size = 1 << m
    indep = [0] * size
    indep[0] = 1
    for s in range(1, size):
        low = (s & -s).bit_length() - 1
        rest = s & ~(1 << low)
        indep[s] = indep[rest] + indep[rest & ~conflict[low]]

    sign = [1 if (m - bin(s).count("1")) % 2 == 0 else -1 for s in range(size)]
    for k in range(graph.max_degree(), m + 1):
        total = 0
        for s in range(size):
            total += sign[s] * indep[s] ** k
        if total > 0:
            return k
    raise AssertionError("chromatic index search exhausted all palettes")
