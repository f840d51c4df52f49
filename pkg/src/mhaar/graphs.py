"""Simple undirected graphs on 0..n-1, stored as per-vertex adjacency bitsets.

Python ints are the bitsets, so all the hot set algebra (neighbourhood
intersections, cell counts in refinement) is C-level popcount work.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Optional


class Graph:
    __slots__ = ("n", "bits")

    def __init__(self, n: int, bits: Optional[list[int]] = None):
        self.n = n
        self.bits = bits if bits is not None else [0] * n

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        g = Graph(n)
        for u, v in edges:
            g.add_edge(u, v)
        return g

    def add_edge(self, u: int, v: int) -> None:
        if u == v:
            raise ValueError(f"loop at vertex {u}")
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise ValueError(f"edge ({u}, {v}) out of range")
        self.bits[u] |= 1 << v
        self.bits[v] |= 1 << u

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.bits[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.bits[v].bit_count()

    def degrees(self) -> list[int]:
        return [b.bit_count() for b in self.bits]

    def neighbors(self, v: int) -> Iterator[int]:
        b = self.bits[v]
        while b:
            low = b & -b
            yield low.bit_length() - 1
            b ^= low

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            b = self.bits[u] >> (u + 1) << (u + 1)  # only v > u
            while b:
                low = b & -b
                yield (u, low.bit_length() - 1)
                b ^= low

    def edge_count(self) -> int:
        return sum(b.bit_count() for b in self.bits) // 2

    def is_regular(self) -> bool:
        degs = self.degrees()
        return len(set(degs)) <= 1

    def on_triangle(self, v: int) -> bool:
        bv = self.bits[v]
        b = bv
        while b:
            low = b & -b
            if bv & self.bits[low.bit_length() - 1]:
                return True
            b ^= low
        return False

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            b = frontier
            while b:
                low = b & -b
                nxt |= self.bits[low.bit_length() - 1]
                b ^= low
            frontier = nxt & ~seen
            seen |= nxt
        return seen.bit_count() == self.n

    def triangle_count(self, v: int) -> int:
        """Number of triangles through v."""
        total = 0
        for u in self.neighbors(v):
            total += (self.bits[v] & self.bits[u]).bit_count()
        return total // 2

    def triangle_counts(self) -> list[int]:
        return [self.triangle_count(v) for v in range(self.n)]

    def has_triangle_through(self, v: int) -> bool:
        return any((self.bits[v] & self.bits[u]) for u in self.neighbors(v))

    def relabeled(self, perm: list[int]) -> "Graph":
        """Graph with vertex v renamed perm[v]."""
        g = Graph(self.n)
        for u, v in self.edges():
            g.add_edge(perm[u], perm[v])
        return g

    def copy(self) -> "Graph":
        return Graph(self.n, list(self.bits))

    def upper_bitstring(self) -> tuple[int, ...]:
        """Row-major upper-triangle adjacency bits, for lex comparisons."""
        out = []
        for u in range(self.n):
            for v in range(u + 1, self.n):
                out.append(self.bits[u] >> v & 1)
        return tuple(out)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.bits == other.bits

    def __hash__(self) -> int:
        return hash((self.n, tuple(self.bits)))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edge_count()})"
