"""Finite groups as multiplication tables.

Elements are integers 0..n-1 with the identity fixed at index 0.  The table
stores table[a][b] = a*b.  Constructors for the families used elsewhere
(cyclic, elementary abelian, dihedral, A4, Q8, the exponent-3 extraspecial
group of order 27, direct products) all produce documented canonical element
orders, so the same group always comes back with the same table and the same
named generators.
"""

from __future__ import annotations

import itertools
import json
import random
import re
from typing import Iterable, Optional, Sequence

MAX_RANK_SEARCH_ORDER = 512
MAX_RANK = 6

# generator letters used by elementary abelian naming, in canonical order
_GEN_LETTERS = "xyzwvu"


class GroupError(ValueError):
    """A table failed the group axioms, or an argument is not a group element."""


class CapacityError(RuntimeError):
    """The request exceeds a documented size cap."""


class Group:
    """A finite group given by its multiplication table.

    The constructor checks the axioms: identity at index 0, each row and
    column a permutation, inverses present, associativity (full triple sweep
    for order <= 64, seeded random sampling above).
    """

    def __init__(self, table: Sequence[Sequence[int]], names: Optional[Sequence[str]] = None,
                 descriptor: Optional[str] = None, gens: Optional[dict[str, int]] = None):
        n = len(table)
        if n == 0:
            raise GroupError("empty table")
        self.order = n
        self.table = tuple(tuple(row) for row in table)
        for a, row in enumerate(self.table):
            if len(row) != n:
                raise GroupError(f"row {a} has length {len(row)}, expected {n}")
            for b, v in enumerate(row):
                if not (0 <= v < n):
                    raise GroupError(f"entry table[{a}][{b}] = {v} out of range")
        if names is not None and len(names) != n:
            raise GroupError("names length does not match order")
        self.names = tuple(names) if names is not None else tuple(
            "1" if i == 0 else f"g{i}" for i in range(n))
        self.descriptor = descriptor
        self.gens = dict(gens) if gens else {}
        self._validate()
        self._inv = self._compute_inverses()
        self._orders: Optional[tuple[int, ...]] = None
        self._abelian: Optional[bool] = None
        self._rank: Optional[int] = None
        self._min_gens: Optional[tuple[int, ...]] = None

    def _validate(self) -> None:
        n, t = self.order, self.table
        for a in range(n):
            if t[0][a] != a or t[a][0] != a:
                raise GroupError(f"index 0 is not an identity at element {a}")
            if len(set(t[a])) != n:
                raise GroupError(f"row {a} is not a permutation")
            if len({t[b][a] for b in range(n)}) != n:
                raise GroupError(f"column {a} is not a permutation")
        for a in range(n):
            if all(t[a][b] != 0 for b in range(n)):
                raise GroupError(f"element {a} has no inverse")
        if n <= 64:
            triples: Iterable[tuple[int, int, int]] = itertools.product(range(n), repeat=3)
        else:
            rng = random.Random(0xA550C)
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n))
                       for _ in range(4096))
        for a, b, c in triples:
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise GroupError(f"associativity fails on triple ({a}, {b}, {c})")

    def _compute_inverses(self) -> tuple[int, ...]:
        inv = [0] * self.order
        for a in range(self.order):
            inv[a] = self.table[a].index(0)
        return tuple(inv)

    # -- arithmetic ---------------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            return self.power(self._inv[a], -k)
        r = 0
        for _ in range(k):
            r = self.table[r][a]
        return r

    def element_order(self, a: int) -> int:
        if self._orders is None:
            orders = []
            for g in range(self.order):
                k, x = 1, g
                while x != 0:
                    x = self.table[x][g]
                    k += 1
                orders.append(k)
            self._orders = tuple(orders)
        return self._orders[a]

    def element_orders(self) -> tuple[int, ...]:
        self.element_order(0)
        assert self._orders is not None
        return self._orders

    def is_abelian(self) -> bool:
        if self._abelian is None:
            n, t = self.order, self.table
            self._abelian = all(t[a][b] == t[b][a] for a in range(n) for b in range(a + 1, n))
        return self._abelian

    def name(self, a: int) -> str:
        return self.names[a]

    @property
    def label(self) -> str:
        return self.descriptor or f"order-{self.order} group"

    def mul_set(self, elems: Iterable[int], g: int) -> frozenset[int]:
        """Right-translate a subset: {e*g for e in elems}."""
        return frozenset(self.table[e][g] for e in elems)

    def inv_set(self, elems: Iterable[int]) -> frozenset[int]:
        return frozenset(self._inv[e] for e in elems)

    def __repr__(self) -> str:
        d = self.descriptor or "custom"
        return f"Group({d}, order={self.order})"

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {"order": self.order, "table": [list(r) for r in self.table],
                "names": list(self.names)}

    @staticmethod
    def from_json(data: dict) -> "Group":
        if not isinstance(data, dict) or "order" not in data or "table" not in data:
            raise GroupError("group JSON needs 'order' and 'table' keys")
        if data["order"] != len(data["table"]):
            raise GroupError("declared order does not match table size")
        return Group(data["table"], names=data.get("names"), descriptor=data.get("descriptor"))


def load_group(path: str) -> Group:
    with open(path, encoding="utf-8") as fh:
        return Group.from_json(json.load(fh))


# -- constructors ------------------------------------------------------------


def cyclic(n: int) -> Group:
    """Cyclic group of order n; element i is x^i."""
    if n < 1:
        raise GroupError("cyclic order must be >= 1")
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    names = ["1"] + [f"x^{i}" if i > 1 else "x" for i in range(1, n)]
    gens = {"x": 1 % n}
    return Group(table, names=names, descriptor=f"C{n}", gens=gens)


def product(factors: Sequence[Group]) -> Group:
    """Direct product with lexicographic tuple ordering of elements."""
    if not factors:
        return cyclic(1)
    if len(factors) == 1:
        return factors[0]
    orders = [g.order for g in factors]
    tuples = list(itertools.product(*[range(o) for o in orders]))
    index = {t: i for i, t in enumerate(tuples)}
    n = len(tuples)
    table = [[0] * n for _ in range(n)]
    for i, ta in enumerate(tuples):
        for j, tb in enumerate(tuples):
            table[i][j] = index[tuple(g.table[a][b] for g, a, b in zip(factors, ta, tb))]
    names = []
    for t in tuples:
        if all(c == 0 for c in t):
            names.append("1")
        else:
            names.append("(" + ",".join(g.names[c] for g, c in zip(factors, t)) + ")")
    descriptor = None
    if all(g.descriptor for g in factors):
        parts: list[str] = []
        for g in factors:
            parts.extend(g.descriptor.split("x"))  # flatten nested products
        descriptor = "x".join(parts)
    return Group(table, names=names, descriptor=descriptor)


def elem_abelian(p: int, k: int) -> Group:
    """Elementary abelian group of order p^k; canonical generators x, y, z, ...

    Elements are exponent vectors in lexicographic order, so the factor-i
    generator sits at index p^(k-1-i).
    """
    if p not in (2, 3):
        raise GroupError("elementary abelian constructor supports p in {2, 3}")
    if k < 1:
        raise GroupError("k must be >= 1")
    if k > len(_GEN_LETTERS):
        raise CapacityError(f"at most {len(_GEN_LETTERS)} factors supported")
    vecs = list(itertools.product(range(p), repeat=k))
    index = {v: i for i, v in enumerate(vecs)}
    n = p ** k
    table = [[index[tuple((a + b) % p for a, b in zip(va, vb))] for vb in vecs] for va in vecs]
    names = []
    for v in vecs:
        if all(c == 0 for c in v):
            names.append("1")
        else:
            names.append(" ".join(
                _GEN_LETTERS[i] if c == 1 else f"{_GEN_LETTERS[i]}^{c}"
                for i, c in enumerate(v) if c))
    gens = {_GEN_LETTERS[i]: p ** (k - 1 - i) for i in range(k)}
    return Group(table, names=names, descriptor=f"C{p}^{k}" if k > 1 else f"C{p}", gens=gens)


def dihedral(n: int) -> Group:
    """Dihedral group of ORDER n (even, >= 6): n/2 rotations, n/2 reflections.

    Element i < n/2 is the rotation x^i; element n/2 + i is x^i y.  Generators:
    x the rotation of order n/2, y a reflection.
    """
    if n < 6 or n % 2:
        raise GroupError("dihedral order must be an even integer >= 6")
    r = n // 2

    def idx(i: int, e: int) -> int:
        return i % r + r * e

    table = [[0] * n for _ in range(n)]
    for i, e in itertools.product(range(r), range(2)):
        for j, d in itertools.product(range(r), range(2)):
            # (x^i y^e)(x^j y^d): move x^j past y^e
            jj = j if e == 0 else -j
            table[idx(i, e)][idx(j, d)] = idx(i + jj, (e + d) % 2)
    names = [("1" if i == 0 else f"x^{i}" if i > 1 else "x") for i in range(r)]
    names += [("y" if i == 0 else f"x^{i} y" if i > 1 else "x y") for i in range(r)]
    return Group(table, names=names, descriptor=f"D{n}", gens={"x": 1, "y": r})


def _perm_group(perms: list[tuple[int, ...]], names: list[str], descriptor: str,
                gen_names: dict[str, tuple[int, ...]]) -> Group:
    index = {p: i for i, p in enumerate(perms)}
    n = len(perms)
    table = [[0] * n for _ in range(n)]
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            table[i][j] = index[tuple(p[q[k]] for k in range(len(p)))]
    gens = {nm: index[p] for nm, p in gen_names.items()}
    return Group(table, names=names, descriptor=descriptor, gens=gens)


def alternating4() -> Group:
    """A4 as the even permutations of 4 points, identity first, lex order.

    Generators: x the lexicographically least 3-cycle, y the least double
    transposition; |x| = 3, |y| = 2 and |xy| = 3 always hold in A4.
    """
    perms = [p for p in itertools.permutations(range(4)) if _perm_parity(p) == 0]
    perms.sort()
    names = ["1"] + ["(" + " ".join(map(str, p)) + ")" for p in perms[1:]]

    def order_of(p: tuple[int, ...]) -> int:
        q, k = p, 1
        while q != (0, 1, 2, 3):
            q = tuple(p[q[i]] for i in range(4))
            k += 1
        return k

    x = next(p for p in perms if order_of(p) == 3)
    y = next(p for p in perms if order_of(p) == 2)
    return _perm_group(perms, names, "A4", {"x": x, "y": y})


def _perm_parity(p: Sequence[int]) -> int:
    inv = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return inv % 2


def quaternion8() -> Group:
    """Quaternion group of order 8: 1, -1, i, -i, j, -j, k, -k."""
    basis = ["1", "i", "j", "k"]
    mult = {  # basis products with sign
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }

    def idx(sign: int, b: str) -> int:
        return 2 * basis.index(b) + (0 if sign > 0 else 1)

    n = 8
    table = [[0] * n for _ in range(n)]
    for (s1, b1) in itertools.product((1, -1), basis):
        for (s2, b2) in itertools.product((1, -1), basis):
            s, b = mult[(b1, b2)]
            table[idx(s1, b1)][idx(s2, b2)] = idx(s1 * s2 * s, b)
    names = []
    for b in basis:
        names.extend([b, f"-{b}"])
    return Group(table, names=names, descriptor="Q8", gens={"i": idx(1, "i"), "j": idx(1, "j")})


def extraspecial27() -> Group:
    """The nonabelian group of order 27 and exponent 3 (Heisenberg over GF(3)).

    Elements are triples (a, b, c) in lex order with product
    (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b'); generators x=(1,0,0),
    y=(0,1,0), z=(0,0,1) with z central and [x, y] = z up to inversion.
    """
    vecs = list(itertools.product(range(3), repeat=3))
    index = {v: i for i, v in enumerate(vecs)}
    n = 27
    table = [[0] * n for _ in range(n)]
    for va in vecs:
        for vb in vecs:
            prod = ((va[0] + vb[0]) % 3, (va[1] + vb[1]) % 3,
                    (va[2] + vb[2] + va[0] * vb[1]) % 3)
            table[index[va]][index[vb]] = index[prod]
    names = []
    for v in vecs:
        if v == (0, 0, 0):
            names.append("1")
        else:
            names.append(" ".join(f"{l}^{c}" if c > 1 else l
                                  for l, c in zip("xyz", v) if c))
    gens = {"x": index[(1, 0, 0)], "y": index[(0, 1, 0)], "z": index[(0, 0, 1)]}
    return Group(table, names=names, descriptor="X27", gens=gens)


# -- generation-rank machinery -----------------------------------------------


def subgroup_generated(g: Group, elems: Iterable[int]) -> frozenset[int]:
    """Closure of a subset under multiplication (always contains the identity)."""
    seen = {0}
    frontier = [0]
    seeds = [e for e in elems]
    for e in seeds:
        if e not in seen:
            seen.add(e)
            frontier.append(e)
    while frontier:
        a = frontier.pop()
        for b in seeds:
            for c in (g.table[a][b], g.table[b][a]):
                if c not in seen:
                    seen.add(c)
                    frontier.append(c)
    return frozenset(seen)


def _check_rank_capacity(g: Group) -> None:
    if g.order > MAX_RANK_SEARCH_ORDER:
        raise CapacityError(
            f"generating-rank search capped at order {MAX_RANK_SEARCH_ORDER}, got {g.order}")


def _find_generating_tuple(g: Group, t: int) -> Optional[tuple[int, ...]]:
    """First lex ascending t-tuple that generates g, with closure pruning.

    For the minimum rank it is safe to demand each element lie outside the
    closure of its predecessors: otherwise it could be dropped, contradicting
    minimality.
    """
    n = g.order
    if t == 0:
        return () if n == 1 else None

    def extend(prefix: tuple[int, ...], closure: frozenset[int], start: int) -> Optional[tuple[int, ...]]:
        depth_left = t - len(prefix)
        if depth_left == 0:
            return prefix if len(closure) == n else None
        # each proper extension at least doubles the subgroup, so the final
        # order is >= |closure| * 2^depth_left; overshoot means no completion
        if len(closure) << depth_left > n:
            return None
        for e in range(start, n):
            if e in closure:
                continue
            new_closure = _extend_closure(g, closure, e)
            res = extend(prefix + (e,), new_closure, e + 1)
            if res is not None:
                return res
        return None

    return extend((), frozenset([0]), 1)


def _extend_closure(g: Group, closure: frozenset[int], e: int) -> frozenset[int]:
    seen = set(closure)
    frontier = [e]
    seen.add(e)
    while frontier:
        a = frontier.pop()
        for b in list(seen):
            for c in (g.table[a][b], g.table[b][a]):
                if c not in seen:
                    seen.add(c)
                    frontier.append(c)
    return frozenset(seen)


def minimal_generating_size(g: Group) -> int:
    """d(G): the least number of generators, by exhaustive pruned search."""
    if g._rank is not None:
        return g._rank
    _check_rank_capacity(g)
    for t in range(0, MAX_RANK + 1):
        if _find_generating_tuple(g, t) is not None:
            g._rank = t
            return t
    raise CapacityError(f"rank exceeds cap {MAX_RANK}")


def minimal_generating_set(g: Group) -> tuple[int, ...]:
    """A deterministic minimum generating tuple.

    Unless G is elementary abelian of exponent 2 (or trivial), the first
    element has order >= 3: when the lexicographic search returns only
    involutions, some product h_i*h_j has order >= 3 (otherwise the group
    would be elementary abelian 2), and h_i is replaced by that product.
    """
    if g._min_gens is not None:
        return g._min_gens
    t = minimal_generating_size(g)
    tup = _find_generating_tuple(g, t)
    assert tup is not None
    g._min_gens = _reorder_min_gens(g, tup)
    return g._min_gens


def _reorder_min_gens(g: Group, tup: tuple[int, ...]) -> tuple[int, ...]:
    if not tup:
        return tup
    orders = [g.element_order(h) for h in tup]
    if max(orders) >= 3:
        i = next(i for i, o in enumerate(orders) if o >= 3)
        return (tup[i],) + tup[:i] + tup[i + 1:]
    if _is_elem_abelian_2(g):
        return tup
    for i, j in itertools.combinations(range(len(tup)), 2):
        prod = g.table[tup[i]][tup[j]]
        if g.element_order(prod) >= 3:
            rest = tuple(h for k, h in enumerate(tup) if k != i)
            return (prod,) + rest
    raise GroupError("exhausted involution products without finding order >= 3; "
                     "group should have been elementary abelian 2")


def _is_elem_abelian_2(g: Group) -> bool:
    return g.is_abelian() and all(o <= 2 for o in g.element_orders())


def pair_with_order_ge4(g: Group) -> tuple[int, int]:
    """First generating pair (x, y) with |x| >= 4, in lex element order.

    Raises GroupError naming the known exceptional types when no such pair
    exists (for 2-generated groups these are exactly C2^2, C3^2, D6, A4 and
    the order-27 exponent-3 extraspecial group).
    """
    _check_rank_capacity(g)
    n = g.order
    for x in range(1, n):
        if g.element_order(x) < 4:
            continue
        cx = subgroup_generated(g, [x])
        if len(cx) == n:
            return (x, 0)  # cyclic: x alone generates, identity completes the pair
        for y in range(1, n):
            if y in cx:
                continue
            if len(_extend_closure(g, cx, y)) == n:
                return (x, y)
    raise GroupError(
        "no generating pair with first element of order >= 4; for 2-generated "
        "groups the only such cases are C2^2, C3^2, D6, A4 and X27")


def triple_with_order_ge3(g: Group) -> tuple[int, int, int]:
    """First generating triple (x, y, z) with |x| >= 3, for rank-3 groups.

    Raises GroupError when no such triple exists (among rank-3 groups this is
    exactly the elementary abelian C2^3).
    """
    if minimal_generating_size(g) != 3:
        raise GroupError("triple_with_order_ge3 requires a rank-3 group")
    n = g.order
    for x in range(1, n):
        if g.element_order(x) < 3:
            continue
        cx = subgroup_generated(g, [x])
        for y in range(1, n):
            if y in cx:
                continue
            cxy = _extend_closure(g, cx, y)
            for z in range(y + 1, n):
                if z in cxy:
                    continue
                if len(_extend_closure(g, cxy, z)) == n:
                    return (x, y, z)
    raise GroupError("no generating triple with first element of order >= 3 "
                     "(for rank-3 groups this means C2^3)")


# -- recognition of the twelve catalog groups --------------------------------

# tag -> (order, abelian?, sorted element orders); the triple separates each
# member from every other group of the same order
_CATALOG_INVARIANTS: dict[str, tuple[int, bool, tuple[int, ...]]] = {
    "C1": (1, True, (1,)),
    "C2": (2, True, (1, 2)),
    "C3": (3, True, (1, 3, 3)),
    "C4": (4, True, (1, 2, 4, 4)),
    "C5": (5, True, (1, 5, 5, 5, 5)),
    "C6": (6, True, (1, 2, 3, 3, 6, 6)),
    "C2^2": (4, True, (1, 2, 2, 2)),
    "C2^3": (8, True, (1,) + (2,) * 7),
    "C3^2": (9, True, (1,) + (3,) * 8),
    "D6": (6, False, (1, 2, 2, 2, 3, 3)),
    "A4": (12, False, (1, 2, 2, 2) + (3,) * 8),
    "X27": (27, False, (1,) + (3,) * 26),
}

CATALOG_TAGS = tuple(_CATALOG_INVARIANTS)


def identify_catalog_group(g: Group) -> Optional[str]:
    """Tag of the catalog group isomorphic to g, or None.

    Works on arbitrary ingested tables: the invariant triple
    (order, abelian flag, element-order multiset) separates all twelve
    catalog members from every other isomorphism type of the same order.
    """
    triple = (g.order, g.is_abelian(), tuple(sorted(g.element_orders())))
    for tag, inv in _CATALOG_INVARIANTS.items():
        if triple == inv:
            return tag
    return None


def catalog_group(tag: str) -> Group:
    """Construct the catalog group with the given tag."""
    builders = {
        "C1": lambda: cyclic(1), "C2": lambda: cyclic(2), "C3": lambda: cyclic(3),
        "C4": lambda: cyclic(4), "C5": lambda: cyclic(5), "C6": lambda: cyclic(6),
        "C2^2": lambda: elem_abelian(2, 2), "C2^3": lambda: elem_abelian(2, 3),
        "C3^2": lambda: elem_abelian(3, 2), "D6": lambda: dihedral(6),
        "A4": alternating4, "X27": extraspecial27,
    }
    if tag not in builders:
        raise GroupError(f"unknown catalog tag {tag!r}")
    return builders[tag]()


# -- group spec parsing -------------------------------------------------------

_TOKEN_RE = re.compile(r"^(?:C(\d+)(?:\^(\d+))?|D(\d+)|Q8|A4|X27)$")


def parse_group_spec(spec: str) -> Group:
    """Build a group from a compact descriptor.

    Grammar: Cn, Cn^k, Dn (n = group order, even, >= 6), Q8, A4, X27,
    and products of these joined by a lowercase "x" (spaces optional),
    e.g. "C2^2xC4" or "D8 x C3".  A spec starting with "@" names a JSON
    multiplication-table file instead.
    """
    spec = spec.strip()
    if not spec:
        raise GroupError("empty group spec")
    if spec.startswith("@"):
        return load_group(spec[1:])
    factors = []
    pos = 0
    for raw in spec.split("x"):
        token = raw.strip()
        at = pos + len(raw) - len(raw.lstrip())
        pos += len(raw) + 1
        mm = _TOKEN_RE.match(token)
        if not mm:
            raise GroupError(
                f"bad group token {token!r} at position {at} "
                "(expected Cn, Cn^k, Dn, Q8, A4, X27, or @file)")
        if token == "Q8":
            factors.append(quaternion8())
        elif token == "A4":
            factors.append(alternating4())
        elif token == "X27":
            factors.append(extraspecial27())
        elif mm.group(3) is not None:
            factors.append(dihedral(int(mm.group(3))))
        else:
            n = int(mm.group(1))
            if mm.group(2) is not None:
                k = int(mm.group(2))
                if k < 1:
                    raise GroupError(f"bad exponent in {token!r}")
                if n in (2, 3):
                    factors.append(elem_abelian(n, k))
                else:
                    factors.extend(cyclic(n) for _ in range(k))
            else:
                factors.append(cyclic(n))
    return factors[0] if len(factors) == 1 else product(factors)
