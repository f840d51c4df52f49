"""Graph automorphism groups by individualization and refinement.

The search keeps an ordered partition of the vertices, refined to
equitability (cells split by neighbour counts against splitter cells,
subcells ordered by count).  Non-discrete partitions branch on the
first non-singleton cell.  The first leaf fixes a reference ordering;
every later leaf proposes the map carrying the reference ordering to
its own, which is accepted only if it verifiably preserves adjacency.
Accepted generators feed a stabilizer chain (Schreier-Sims), which
yields the exact group order, orbit pruning along the first path, and
membership tests.  Subtrees are pruned when their refinement-trace
invariant differs from the first path's at the same depth; equal hashes
are always explored, so a hash collision costs time, never soundness.

Vertex colourings are derived from the graph alone (degree and triangle
count per vertex), so results are label-independent.
"""

from __future__ import annotations

import os
import sys
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .cayley import ConnectionMatrix, build_graph, is_m_haar
from .graphs import Graph
from .groups import CapacityError

DEFAULT_MAX_VERTICES = 1024
_FNV = 1099511628211
_MASK = (1 << 64) - 1


def _max_vertices() -> int:
    raw = os.environ.get("MHAAR_MAX_VERTICES", "")
    try:
        return int(raw) if raw else DEFAULT_MAX_VERTICES
    except ValueError:
        return DEFAULT_MAX_VERTICES


def _hmix(h: int, x: int) -> int:
    # fixed-multiplier rolling hash: stable across processes and runs
    return ((h ^ (x & _MASK)) * _FNV) & _MASK


# -- permutation helpers ------------------------------------------------------


def _pmul(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    """(p*q)(x) = p(q(x))."""
    return tuple(p[v] for v in q)


def _pinv(p: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def _is_automorphism(bits: list[int], p: Sequence[int]) -> bool:
    for u, row in enumerate(bits):
        image = 0
        b = row
        while b:
            low = b & -b
            image |= 1 << p[low.bit_length() - 1]
            b ^= low
        if image != bits[p[u]]:
            return False
    return True


# -- stabilizer chain ---------------------------------------------------------


class _StabChain:
    """Base-and-strong-generating-set bookkeeping for a permutation group.

    The base is only ever appended to, so a caller-supplied hint fixes
    the leading base points; level i then exactly stabilizes base[:i].
    """

    def __init__(self, n: int, base_hint: Sequence[int] = ()):
        self.n = n
        self.identity = tuple(range(n))
        self.base: list[int] = []
        self.levels: list[list[tuple[int, ...]]] = []
        self.trans: list[dict[int, tuple[int, ...]]] = []
        for b in base_hint:
            self._append_base(b)

    def _append_base(self, b: int) -> None:
        self.base.append(b)
        self.levels.append([])
        self.trans.append({b: self.identity})

    def gens_from(self, level: int) -> list[tuple[int, ...]]:
        out: list[tuple[int, ...]] = []
        for lv in range(level, len(self.base)):
            out.extend(self.levels[lv])
        return out

    def _recompute_transversal(self, i: int) -> None:
        gens = self.gens_from(i)
        b = self.base[i]
        t = {b: self.identity}
        frontier = [b]
        while frontier:
            nxt = []
            for p in frontier:
                up = t[p]
                for s in gens:
                    q = s[p]
                    if q not in t:
                        t[q] = _pmul(s, up)
                        nxt.append(q)
            frontier = nxt
        self.trans[i] = t

    def sift(self, g: tuple[int, ...], start: int = 0) -> tuple[tuple[int, ...], int]:
        h = g
        for i in range(start, len(self.base)):
            p = h[self.base[i]]
            u = self.trans[i].get(p)
            if u is None:
                return h, i
            h = _pmul(_pinv(u), h)
        return h, len(self.base)

    def contains(self, g: tuple[int, ...]) -> bool:
        res, _ = self.sift(g)
        return res == self.identity

    def order(self) -> int:
        o = 1
        for t in self.trans:
            o *= len(t)
        return o

    def add_generator(self, g: tuple[int, ...]) -> bool:
        res, lvl = self.sift(g)
        if res == self.identity:
            return False
        if lvl == len(self.base):
            b = min(x for x in range(self.n) if res[x] != x)
            self._append_base(b)
        self.levels[lvl].append(res)
        self._close(lvl)
        return True

    def _close(self, start: int) -> None:
        # re-establish the Schreier condition at every level <= start;
        # an insertion at a deeper level restarts the sweep there
        i = start
        while i >= 0:
            self._recompute_transversal(i)
            inserted = self._check_level(i)
            if inserted is None:
                i -= 1
            else:
                i = inserted

    def _check_level(self, i: int) -> Optional[int]:
        t = self.trans[i]
        gens = self.gens_from(i)
        for p, up in list(t.items()):
            for s in gens:
                sch = _pmul(_pinv(t[s[p]]), _pmul(s, up))
                if sch == self.identity:
                    continue
                res, lvl = self.sift(sch, i + 1)
                if res == self.identity:
                    continue
                if lvl == len(self.base):
                    b = min(x for x in range(self.n) if res[x] != x)
                    self._append_base(b)
                self.levels[lvl].append(res)
                return lvl
        return None


# -- equitable refinement -----------------------------------------------------


def _refine(bits: list[int], cells: list[int], worklist: list[int], h: int) -> int:
    """Refine cells in place to equitability; returns the updated trace hash."""
    wl = list(worklist)
    qi = 0
    while qi < len(wl):
        splitter = wl[qi]
        qi += 1
        ci = 0
        while ci < len(cells):
            cell = cells[ci]
            if cell.bit_count() > 1:
                buckets: dict[int, int] = {}
                b = cell
                while b:
                    low = b & -b
                    cnt = (bits[low.bit_length() - 1] & splitter).bit_count()
                    buckets[cnt] = buckets.get(cnt, 0) | low
                    b ^= low
                if len(buckets) > 1:
                    counts = sorted(buckets)
                    parts = [buckets[c] for c in counts]
                    cells[ci : ci + 1] = parts
                    h = _hmix(h, ci)
                    for c in counts:
                        h = _hmix(h, c)
                        h = _hmix(h, buckets[c].bit_count())
                    wl.extend(parts)
                    ci += len(parts) - 1
            ci += 1
    return h


# -- the search ----------------------------------------------------------------


@dataclass
class AutResult:
    """Automorphism group of a graph: exact order, verified generators."""

    order: int
    generators: list[tuple[int, ...]]
    orbits: list[tuple[int, ...]]
    nodes: int = 0

    def orbit_of(self, v: int) -> tuple[int, ...]:
        for orb in self.orbits:
            if v in orb:
                return orb
        raise ValueError(f"vertex {v} not in any orbit")

    def stabilizer_order(self, v: int) -> int:
        # orbit-stabilizer: |G_v| = |G| / |orbit(v)|
        return self.order // len(self.orbit_of(v))

    def is_trivial(self) -> bool:
        return self.order == 1


def _orbits_of(n: int, gens: Sequence[tuple[int, ...]]) -> list[tuple[int, ...]]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for v, w in enumerate(g):
            rv, rw = find(v), find(w)
            if rv != rw:
                parent[rw] = rv
    groups: dict[int, list[int]] = {}
    for v in range(n):
        groups.setdefault(find(v), []).append(v)
    return sorted(tuple(sorted(vs)) for vs in groups.values())


class _Jump(Exception):
    __slots__ = ("depth",)

    def __init__(self, depth: int):
        self.depth = depth


def automorphism_group(graph: Graph, initial_colors: Optional[Sequence[int]] = None,
                       max_vertices: Optional[int] = None) -> AutResult:
    """Exact automorphism group of the graph.

    initial_colors restricts automorphisms to colour-preserving ones;
    leave it None for the plain automorphism group.  The vertex cap
    guards against accidental huge inputs (override with the
    MHAAR_MAX_VERTICES environment variable or the max_vertices arg).
    """
    n = graph.n
    cap = max_vertices if max_vertices is not None else _max_vertices()
    if n > cap:
        raise CapacityError(
            f"graph has {n} vertices, over the cap of {cap} "
            "(set MHAAR_MAX_VERTICES or pass max_vertices to raise it)")
    if n == 0:
        return AutResult(1, [], [])
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * n + 200))
    bits = graph.bits

    if initial_colors is None:
        keys: list = [(graph.degree(v), graph.triangle_count(v)) for v in range(n)]
    else:
        if len(initial_colors) != n:
            raise ValueError("initial_colors length must equal vertex count")
        keys = list(initial_colors)
    cells: list[int] = []
    h0 = 0
    for k in sorted(set(keys)):
        mask = 0
        for v in range(n):
            if keys[v] == k:
                mask |= 1 << v
        cells.append(mask)
        h0 = _hmix(h0, mask.bit_count())
    h0 = _refine(bits, cells, list(cells), h0)

    identity = tuple(range(n))
    chain: Optional[_StabChain] = None
    found: list[tuple[int, ...]] = []
    first_leaf: Optional[list[int]] = None
    first_invs: list[int] = []
    first_branch: list[int] = []
    stats = {"nodes": 0}

    def stab_gens(depth: int) -> list[tuple[int, ...]]:
        if chain is None or depth >= len(chain.base):
            return []
        return chain.gens_from(depth)

    def orbit_hits(v: int, tried: set[int], gens: list[tuple[int, ...]]) -> bool:
        if not gens:
            return False
        seen = {v}
        frontier = [v]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = g[x]
                if y in seen:
                    continue
                if y in tried:
                    return True
                seen.add(y)
                frontier.append(y)
        return False

    def recurse(cells: list[int], h: int, depth: int, on_first: bool, anchor: int) -> None:
        nonlocal first_leaf, chain
        stats["nodes"] += 1
        if on_first and first_leaf is None and len(first_invs) == depth:
            first_invs.append(h)

        target = -1
        for idx, c in enumerate(cells):
            if c.bit_count() > 1:
                target = idx
                break

        if target < 0:
            lam = [c.bit_length() - 1 for c in cells]
            if first_leaf is None:
                first_leaf = lam
                return
            sigma_l = [0] * n
            for zv, lv in zip(first_leaf, lam):
                sigma_l[zv] = lv
            sigma = tuple(sigma_l)
            if sigma != identity and _is_automorphism(bits, sigma):
                if chain is None:
                    chain = _StabChain(n, base_hint=first_branch)
                if chain.add_generator(sigma):
                    found.append(sigma)
                raise _Jump(anchor)
            return

        cell = cells[target]
        tried: set[int] = set()
        b = cell
        while b:
            low = b & -b
            v = low.bit_length() - 1
            b ^= low
            if on_first and first_leaf is None:
                first_branch.append(v)
            elif on_first:
                if v != first_branch[depth] and orbit_hits(v, tried, stab_gens(depth)):
                    continue
            child = list(cells)
            child[target : target + 1] = [low, cell ^ low]
            ch = _hmix(h, target)
            ch = _refine(bits, child, [low], ch)
            ch = _hmix(ch, len(child))
            child_first = on_first and first_leaf is None
            if not child_first and first_leaf is not None:
                if depth + 1 >= len(first_invs) or ch != first_invs[depth + 1]:
                    tried.add(v)
                    continue
            try:
                recurse(child, ch, depth + 1,
                        child_first, depth + 1 if child_first else anchor)
            except _Jump as jp:
                if jp.depth != depth:
                    raise
            tried.add(v)

    try:
        recurse(cells, h0, 0, True, 0)
    except _Jump:
        # a generator found at the root's own depth unwinds to here
        pass

    order = chain.order() if chain is not None else 1
    orbits = _orbits_of(n, found)
    return AutResult(order, found, orbits, stats["nodes"])


def aut_order(graph: Graph) -> int:
    return automorphism_group(graph).order


# canonical public name for the engine entry point
automorphisms = automorphism_group


# -- brute-force oracle --------------------------------------------------------

BRUTE_FORCE_LIMIT = 9


def brute_force_aut_order(graph: Graph, limit: int = BRUTE_FORCE_LIMIT) -> int:
    """|Aut| by pruned enumeration of all vertex bijections.

    Independent of the refinement machinery on purpose; capped at
    `limit` vertices because the tree is factorial in the worst case.
    """
    n = graph.n
    if n > limit:
        raise CapacityError(f"brute force capped at {limit} vertices, got {n}")
    if n == 0:
        return 1
    bits = graph.bits
    degs = [b.bit_count() for b in bits]
    img = [0] * n
    used = [False] * n
    count = 0

    def rec(u: int) -> None:
        nonlocal count
        if u == n:
            count += 1
            return
        for w in range(n):
            if used[w] or degs[w] != degs[u]:
                continue
            ok = True
            for u2 in range(u):
                if (bits[u] >> u2 & 1) != (bits[w] >> img[u2] & 1):
                    ok = False
                    break
            if ok:
                img[u] = w
                used[w] = True
                rec(u + 1)
                used[w] = False
        return

    rec(0)
    return count


# -- verdicts ------------------------------------------------------------------


@dataclass
class Verdict:
    """Outcome of a structural check, with the first failure spelled out."""

    ok: bool
    aut_order: Optional[int]
    reason: str = ""
    valencies: tuple[int, ...] = field(default_factory=tuple)

    def __bool__(self) -> bool:
        return self.ok


def is_m_hgr(cm: ConnectionMatrix) -> Verdict:
    """Regular, diagonal-free, and the graph's full group is as small as
    the right translations force it to be: |Aut| equals the group order."""
    haar = is_m_haar(cm)
    vals = cm.valencies()
    if not haar:
        return Verdict(False, None, haar.reason, vals)
    aut = automorphism_group(build_graph(cm))
    if aut.order != cm.group.order:
        return Verdict(False, aut.order,
                       f"automorphism group has order {aut.order}, "
                       f"group has order {cm.group.order}", vals)
    return Verdict(True, aut.order, "", vals)


def is_m_pgsr(cm: ConnectionMatrix) -> Verdict:
    """Diagonal-free with |Aut| equal to the group order; valencies free."""
    vals = cm.valencies()
    for i in range(1, cm.m + 1):
        if cm.block(i, i):
            return Verdict(False, None, f"diagonal block ({i}, {i}) is nonempty", vals)
    aut = automorphism_group(build_graph(cm))
    if aut.order != cm.group.order:
        return Verdict(False, aut.order,
                       f"automorphism group has order {aut.order}, "
                       f"group has order {cm.group.order}", vals)
    return Verdict(True, aut.order, "", vals)
