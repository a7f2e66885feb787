"""A small labelled multigraph.

Wrapping a finite patch onto a torus can stack several patch edges onto the
same vertex pair, or close one into a loop.  Nothing may be merged or
dropped in that step, so edges here carry a label that keeps each parallel
copy distinct and lets the wrap be undone exactly.  Degrees count a
self-loop twice.
"""

from __future__ import annotations

from typing import Hashable, Iterable, Sequence


class MultiGraph:
    """Immutable-by-convention multigraph with globally unique edge labels."""

    def __init__(self, vertices: Iterable[Hashable],
                 edges: Iterable[tuple[Hashable, Hashable, Hashable]]):
        vs = set(vertices)
        seen_labels = set()
        es = []
        for u, v, label in edges:
            if label in seen_labels:
                raise ValueError(f"duplicate edge label: {label!r}")
            seen_labels.add(label)
            if u not in vs or v not in vs:
                raise ValueError(f"edge {label!r} uses an undeclared vertex")
            es.append((u, v, label) if not v < u else (v, u, label))
        self.vertices: tuple = tuple(sorted(vs))
        self.edges: tuple = tuple(sorted(es, key=lambda e: (e[0], e[1], repr(e[2]))))
        self._incident: dict = {v: [] for v in self.vertices}
        for e in self.edges:
            u, v, _ = e
            self._incident[u].append(e)
            if v != u:
                self._incident[v].append(e)

    def degree(self, v) -> int:
        d = 0
        for u, w, _ in self._incident[v]:
            d += 2 if u == w else 1
        return d

    def max_degree(self) -> int:
        return max((self.degree(v) for v in self.vertices), default=0)

    def incident(self, v) -> Sequence[tuple]:
        """Edges touching v, each exactly once even if it is a loop at v."""
        return tuple(self._incident[v])

    def self_loops(self) -> list[tuple]:
        return [e for e in self.edges if e[0] == e[1]]

    def is_simple(self) -> bool:
        """No loops and no two edges on the same vertex pair."""
        pairs = set()
        for u, v, _ in self.edges:
            if u == v or (u, v) in pairs:
                return False
            pairs.add((u, v))
        return True

    def __len__(self) -> int:
        return len(self.edges)

    def __repr__(self) -> str:
        return f"MultiGraph({len(self.vertices)} vertices, {len(self.edges)} edges)"
