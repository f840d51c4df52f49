"""Connection matrices over a finite group and the graphs they define.

A connection matrix over a group G with m parts assigns a subset
T[i][j] of G to every ordered pair of parts, subject to T[j][i] being
the elementwise inverse of T[i][j] and the diagonal sets avoiding the
identity.  The derived graph has vertex set G x {1..m}; the neighbours
of (g, i) in part j are (t*g, j) for t in T[i][j].

Only the upper triangle and the diagonal are stored; the lower triangle
is derived.  Vertex (g, i) maps to index (i-1)*|G| + g.
"""

from __future__ import annotations

import json
from typing import Iterable, Mapping, Optional, Union

from .graphs import Graph
from .groups import Group, GroupError, parse_group_spec

BlockInput = Union[Mapping[tuple[int, int], Iterable[int]],
                   Iterable[tuple[int, int, Iterable[int]]]]


class CayleyError(ValueError):
    pass


class ConnectionMatrix:
    """Upper-triangle + diagonal storage of the block sets T[i][j].

    blocks: mapping (i, j) -> subset of G, 1 <= i < j <= m, or an
    iterable of (i, j, subset) triples.  diagonal: mapping i -> subset.
    Missing blocks are empty.  Diagonal sets must be inverse-closed and
    identity-free; the lower triangle is always T[i][j] inverted.
    """

    def __init__(self, group: Group, m: int, blocks: Optional[BlockInput] = None,
                 diagonal: Optional[Mapping[int, Iterable[int]]] = None):
        if m < 2:
            raise CayleyError(f"need at least 2 parts, got {m}")
        self.group = group
        self.m = m
        self._upper: dict[tuple[int, int], frozenset[int]] = {}
        self._diag: dict[int, frozenset[int]] = {}

        if blocks is not None:
            if isinstance(blocks, Mapping):
                items = [(i, j, elems) for (i, j), elems in blocks.items()]
            else:
                items = [(i, j, elems) for i, j, elems in blocks]
            seen = set()
            for i, j, elems in items:
                if (i, j) in seen:
                    raise CayleyError(f"block ({i}, {j}) given twice")
                seen.add((i, j))
                self._set_block(i, j, elems)
        if diagonal is not None:
            for i, elems in diagonal.items():
                self._set_diag(i, elems)

    def _check_subset(self, elems: Iterable[int], where: str) -> frozenset[int]:
        s = frozenset(elems)
        for e in s:
            if not isinstance(e, int) or not (0 <= e < self.group.order):
                raise CayleyError(f"element {e!r} in block {where} not in the group")
        return s

    def _set_block(self, i: int, j: int, elems: Iterable[int]) -> None:
        if not (1 <= i < j <= self.m):
            raise CayleyError(f"block index ({i}, {j}) not in upper triangle of m={self.m}")
        s = self._check_subset(elems, f"({i}, {j})")
        if s:
            self._upper[(i, j)] = s
        else:
            self._upper.pop((i, j), None)

    def _set_diag(self, i: int, elems: Iterable[int]) -> None:
        if not (1 <= i <= self.m):
            raise CayleyError(f"diagonal index {i} out of range for m={self.m}")
        s = self._check_subset(elems, f"({i}, {i})")
        if 0 in s:
            raise CayleyError(f"identity in diagonal block ({i}, {i})")
        if self.group.inv_set(s) != s:
            raise CayleyError(f"diagonal block ({i}, {i}) is not inverse-closed")
        if s:
            self._diag[i] = s
        else:
            self._diag.pop(i, None)

    # -- access ---------------------------------------------------------

    def block(self, i: int, j: int) -> frozenset[int]:
        """T[i][j] for any pair, lower triangle derived by inversion."""
        if not (1 <= i <= self.m and 1 <= j <= self.m):
            raise CayleyError(f"block index ({i}, {j}) out of range for m={self.m}")
        if i == j:
            return self._diag.get(i, frozenset())
        if i < j:
            return self._upper.get((i, j), frozenset())
        return self.group.inv_set(self._upper.get((j, i), frozenset()))

    def upper_items(self) -> list[tuple[int, int, frozenset[int]]]:
        out = [(i, j, s) for (i, j), s in self._upper.items()]
        out += [(i, i, s) for i, s in self._diag.items()]
        return sorted(out)

    def valency(self, i: int) -> int:
        return sum(len(self.block(i, j)) for j in range(1, self.m + 1))

    def valencies(self) -> tuple[int, ...]:
        return tuple(self.valency(i) for i in range(1, self.m + 1))

    def is_regular(self) -> bool:
        return len(set(self.valencies())) <= 1

    def diagonal_empty(self) -> bool:
        return not self._diag

    def edge_count(self) -> int:
        n = self.group.order
        off = sum(len(s) for s in self._upper.values())
        dia = sum(len(s) for s in self._diag.values())
        # each diagonal edge {g, t*g} arises from both t and t^-1
        return n * off + n * dia // 2

    def __repr__(self) -> str:
        return (f"ConnectionMatrix({self.group!r}, m={self.m}, "
                f"valencies={self.valencies()})")

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, ConnectionMatrix)
                and self.group.table == other.group.table
                and self.m == other.m
                and self._upper == other._upper
                and self._diag == other._diag)

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        # compact group form only when the descriptor reproduces the exact
        # table; otherwise a relabeled copy would deserialize incorrectly
        grp: Union[str, dict] = self.group.to_json()
        if self.group.descriptor:
            try:
                if parse_group_spec(self.group.descriptor).table == self.group.table:
                    grp = self.group.descriptor
            except GroupError:
                pass
        entries = [{"i": i, "j": j, "elems": sorted(s)} for i, j, s in self.upper_items()]
        return {"group": grp, "m": self.m, "entries": entries}

    @staticmethod
    def from_json(data: dict) -> "ConnectionMatrix":
        if not isinstance(data, dict) or "group" not in data or "m" not in data:
            raise CayleyError("connection matrix JSON needs 'group' and 'm' keys")
        grp = data["group"]
        group = parse_group_spec(grp) if isinstance(grp, str) else Group.from_json(grp)
        blocks = {}
        diagonal = {}
        for e in data.get("entries", ()):
            i, j, elems = e["i"], e["j"], e["elems"]
            if i == j:
                diagonal[i] = elems
            elif i < j:
                blocks[(i, j)] = elems
            else:
                raise CayleyError(f"entry ({i}, {j}) below the diagonal")
        return ConnectionMatrix(group, data["m"], blocks, diagonal)


def load_matrix(path: str) -> ConnectionMatrix:
    with open(path, encoding="utf-8") as fh:
        return ConnectionMatrix.from_json(json.load(fh))


# -- vertex indexing ------------------------------------------------------


def vertex_of(part: int, elem: int, group_order: int) -> int:
    return (part - 1) * group_order + elem


def part_elem_of(vertex: int, group_order: int) -> tuple[int, int]:
    return vertex // group_order + 1, vertex % group_order


# -- the derived graph -----------------------------------------------------


def build_graph(cm: ConnectionMatrix) -> Graph:
    g = cm.group
    n = g.order
    graph = Graph(cm.m * n)
    bits = graph.bits
    for i, j, s in cm.upper_items():
        base_i = (i - 1) * n
        base_j = (j - 1) * n
        for x in range(n):
            u = base_i + x
            for t in s:
                # t != 1 on the diagonal, so u != v always
                v = base_j + g.mul(t, x)
                bits[u] |= 1 << v
                bits[v] |= 1 << u
    return graph


def right_translation(cm_or_group: Union[ConnectionMatrix, Group], m_or_elem: int,
                      elem: Optional[int] = None) -> list[int]:
    """Permutation (h, i) -> (h*g, i) of the vertex set, as an index list.

    Call as right_translation(cm, g) or right_translation(group, m, g).
    This is an automorphism of every derived graph over the group.
    """
    if isinstance(cm_or_group, ConnectionMatrix):
        group, m, g = cm_or_group.group, cm_or_group.m, m_or_elem
    else:
        if elem is None:
            raise TypeError("right_translation(group, m, elem) needs three arguments")
        group, m, g = cm_or_group, m_or_elem, elem
    n = group.order
    perm = [0] * (m * n)
    for i in range(m):
        base = i * n
        for h in range(n):
            perm[base + h] = base + group.mul(h, g)
    return perm


# -- structural checks -------------------------------------------------------


class HaarVerdict:
    __slots__ = ("ok", "reason")

    def __init__(self, ok: bool, reason: str = ""):
        self.ok = ok
        self.reason = reason

    def __bool__(self) -> bool:
        return self.ok

    def __repr__(self) -> str:
        return f"HaarVerdict(ok={self.ok}, reason={self.reason!r})"


def is_m_haar(cm: ConnectionMatrix) -> HaarVerdict:
    """Empty diagonal plus equal part valencies; names the first violation."""
    for i in range(1, cm.m + 1):
        if cm.block(i, i):
            return HaarVerdict(False, f"diagonal block ({i}, {i}) is nonempty")
    vals = cm.valencies()
    for i in range(1, cm.m):
        if vals[i] != vals[0]:
            return HaarVerdict(
                False, f"part {i + 1} has valency {vals[i]}, part 1 has {vals[0]}")
    return HaarVerdict(True)
