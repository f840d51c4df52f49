"""Witness synthesis: decide whether an m-part Haar-type regular graphical
representation exists for a group, and build one when it does.

The decision is a finite exception table: existence fails only for a
handful of small groups at m in 3..9 (clauses a-d below).  Everywhere
else a witness is assembled from one of four sources:

  * a recorded catalog matrix (the twelve special small groups),
  * a chain extension of a small partial base (catalog or generic),
  * rank-dependent generic recipes at m = 3 and m = 4,
  * an asymmetric regular template graph (groups of order 1 and 2,
    large m), whose identity-only blocks give |G| disjoint copies.

Every route can be re-verified by the automorphism engine; synthesize
does so by default and refuses to return an unverified failure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .autos import Verdict, is_m_hgr
from .catalog import (asymmetric_regular_graph, build_entry, entries,
                      lift_base_entry, matrix_from_graph)
from .cayley import ConnectionMatrix
from .groups import (Group, GroupError, identify_catalog_group,
                     minimal_generating_set, pair_with_order_ge4,
                     triple_with_order_ge3)
from .lift import lift_base

HGR_MIN_PARTS = 3

# all (group, parts) pairs admitting no representation, by clause
_NO_HGR_CLAUSES = (
    ("a", 3, ("C1", "C2", "C3", "C4", "C5", "C2^2", "D6")),
    ("b", 4, ("C1", "C2", "C3")),
    ("c", 5, ("C1", "C2")),
    ("d", 6, ("C1",)),
    ("d", 7, ("C1",)),
    ("d", 8, ("C1",)),
    ("d", 9, ("C1",)),
)
NONEXISTENT: dict[tuple[str, int], str] = {
    (tag, m): clause for clause, m, tags in _NO_HGR_CLAUSES for tag in tags}


class SynthesisError(RuntimeError):
    """A synthesized witness failed its own verification (internal bug)."""


def _require_parts(m: int) -> None:
    if m == 2:
        raise ValueError(
            "m=2 is outside the classification; use the search module to "
            "decide individual two-part cases")
    if m < HGR_MIN_PARTS:
        raise ValueError(f"m must be >= {HGR_MIN_PARTS}, got {m}")


def nonexistence_clause(group: Group, m: int) -> Optional[str]:
    """Clause letter (a-d) if (group, m) is an exception, else None."""
    _require_parts(m)
    tag = identify_catalog_group(group)
    if tag is None:
        return None
    return NONEXISTENT.get((tag, m))


def has_m_hgr(group: Group, m: int) -> bool:
    return nonexistence_clause(group, m) is None


# -- generic recipes, by minimal generating size -------------------------------


def _two_gen_elements(g: Group) -> tuple[int, int]:
    x, y = pair_with_order_ge4(g)
    if y == 0:
        y = g.power(x, 3)  # cyclic: the cube is independent enough of x
    return x, y


def _two_gen_hgr(g: Group, m: int) -> dict:
    x, y = _two_gen_elements(g)
    xi, yi = g.inv(x), g.inv(y)
    if m == 3:
        return {(1, 2): [0, x, yi], (1, 3): [0, x, xi], (2, 3): [x, xi, y]}
    return {(1, 2): [0, x], (1, 3): [0, x], (2, 4): [0, x],
            (1, 4): [0], (2, 3): [0], (3, 4): [x, y]}


def _two_gen_base(g: Group, parts: int) -> dict:
    x, y = _two_gen_elements(g)
    xi, yi = g.inv(x), g.inv(y)
    if parts == 3:
        return {(1, 2): [0, x, yi], (1, 3): [0, x, xi], (2, 3): [x, xi]}
    return {(1, 2): [0, x], (1, 3): [0, x], (2, 4): [0, x],
            (1, 4): [0], (2, 3): [0], (3, 4): [y]}


def _three_gen_hgr(g: Group, m: int) -> dict:
    x, y, z = triple_with_order_ge3(g)
    xi, yi = g.inv(x), g.inv(y)
    if m == 3:
        return {(1, 2): [0, x, xi], (1, 3): [0, yi, z], (2, 3): [0, xi, z]}
    return {(1, 2): [0, x], (1, 3): [0, x], (1, 4): [0], (2, 3): [0],
            (2, 4): [0, y], (3, 4): [y, z]}


def _three_gen_base(g: Group, parts: int) -> dict:
    x, y, z = triple_with_order_ge3(g)
    xi = g.inv(x)
    if parts == 3:
        return {(1, 2): [0, x, y], (1, 3): [0, y, z], (2, 3): [0, z]}
    return {(1, 2): [0, x], (1, 3): [0, z], (1, 4): [0], (2, 3): [xi],
            (2, 4): [0, y], (3, 4): [x]}


def _spanning_sets(g: Group) -> dict[str, list[int]]:
    """The six connection sets used by the rank >= 4 recipes.

    Sizes are forced by minimality of the generating set; a collision
    would mean a redundant generator, so it is checked loudly.
    """
    hs = list(minimal_generating_set(g))
    t = len(hs)
    if t < 4:
        raise GroupError(f"rank >= 4 recipe asked for a rank-{t} group")
    mul, inv = g.mul, g.inv
    step = mul(hs[1], inv(hs[0]))
    sets = {
        "full": [0] + hs,
        "skew": [0, hs[0], step] + hs[2:],
        "diffs": [0, hs[0]] + [mul(hs[i], inv(hs[i - 1])) for i in range(1, t)],
        "diffs_cut": [0, hs[0]] + [mul(hs[i], inv(hs[i - 1])) for i in range(1, t - 1)],
        "head": [0] + hs[: t - 1],
        "mix": [mul(mul(hs[0], hs[1]), mul(hs[2], hs[3])),
                mul(hs[0], mul(hs[2], hs[3])),
                mul(hs[1], mul(hs[2], hs[3]))]
               + [mul(hs[i], step) for i in range(2, t)],
    }
    want = {"full": t + 1, "skew": t + 1, "diffs": t + 1,
            "diffs_cut": t, "head": t, "mix": t + 1}
    for name, elems in sets.items():
        if len(set(elems)) != want[name]:
            raise GroupError(
                f"connection set {name!r} degenerated ({len(set(elems))} "
                f"distinct of {want[name]}) for group {g.label}")
    return sets


def _high_rank_hgr(g: Group, m: int) -> dict:
    s = _spanning_sets(g)
    if m == 3:
        return {(1, 2): s["full"], (1, 3): s["skew"], (2, 3): s["diffs"]}
    return {(1, 2): s["full"], (1, 4): s["full"], (3, 4): s["full"],
            (1, 3): s["skew"], (2, 3): s["diffs"], (2, 4): s["mix"]}


def _high_rank_base(g: Group, parts: int) -> dict:
    s = _spanning_sets(g)
    if parts == 3:
        return {(1, 2): s["full"], (1, 3): s["skew"], (2, 3): s["diffs_cut"]}
    return {(1, 2): s["full"], (1, 4): s["full"], (3, 4): s["head"],
            (1, 3): s["skew"], (2, 3): s["diffs"], (2, 4): s["mix"]}


def generic_hgr(group: Group, m: int) -> tuple[ConnectionMatrix, str]:
    """Rank-dispatched witness at m = 3 or 4 for groups outside the catalog."""
    if m not in (3, 4):
        raise ValueError(f"generic recipes cover m in (3, 4), got {m}")
    t = len(minimal_generating_set(group))
    if t <= 2:
        blocks, label = _two_gen_hgr(group, m), "2-generated"
    elif t == 3:
        blocks, label = _three_gen_hgr(group, m), "3-generated"
    else:
        blocks, label = _high_rank_hgr(group, m), f"rank-{t}"
    return ConnectionMatrix(group, m, blocks), label


def generic_base(group: Group, parts: int) -> tuple[ConnectionMatrix, str]:
    """Rank-dispatched chain-extension base on 3 or 4 parts."""
    if parts not in (3, 4):
        raise ValueError(f"generic bases have 3 or 4 parts, got {parts}")
    t = len(minimal_generating_set(group))
    if t <= 2:
        blocks, label = _two_gen_base(group, parts), "2-generated"
    elif t == 3:
        blocks, label = _three_gen_base(group, parts), "3-generated"
    else:
        blocks, label = _high_rank_base(group, parts), f"rank-{t}"
    return ConnectionMatrix(group, parts, blocks), label


# -- the decision procedure ----------------------------------------------------


@dataclass
class SynthesisResult:
    group: Group
    m: int
    exists: bool
    route: str
    matrix: Optional[ConnectionMatrix] = None
    clause: Optional[str] = None
    verdict: Optional[Verdict] = None

    def __str__(self) -> str:
        head = f"{self.group.label} m={self.m}: "
        if not self.exists:
            return head + f"no witness exists (classification clause {self.clause})"
        v = "" if self.verdict is None else f", |Aut|={self.verdict.aut_order}"
        return head + f"witness via {self.route}{v}"


def _catalog_witness(tag: str, group: Group, m: int, seed: int) -> tuple[ConnectionMatrix, str]:
    direct = entries(tag=tag, m=m, kind="hgr")
    if direct:
        return build_entry(direct[0], group), f"catalog entry [{direct[0]}]"
    if tag in ("C1", "C2"):
        # beyond the recorded range (so m >= 10): copies of an asymmetric
        # regular template carry exactly Sym(|G|) = |G| symmetries
        template = asymmetric_regular_graph(m, seed=seed)
        return (matrix_from_graph(group, template),
                f"asymmetric 4-regular template (seed={seed})")
    base_entry = lift_base_entry(tag, m)
    base = build_entry(base_entry, group)
    return (lift_base(base, m),
            f"chain extension of catalog base [{base_entry}]")


def _generic_witness(group: Group, m: int) -> tuple[ConnectionMatrix, str]:
    if m in (3, 4):
        cm, label = generic_hgr(group, m)
        return cm, f"generic {label} recipe"
    parts = 3 if m % 2 else 4
    base, label = generic_base(group, parts)
    return (lift_base(base, m),
            f"chain extension of generic {label} {parts}-part base")


def synthesize(group: Group, m: int, verify: bool = True, seed: int = 0) -> SynthesisResult:
    """Decide existence for (group, m) and construct a witness if any.

    verify=True re-checks the witness with the automorphism engine and
    raises SynthesisError if it fails (which would be an internal bug).
    seed only affects the template route for groups of order 1 and 2.
    """
    _require_parts(m)
    tag = identify_catalog_group(group)
    clause = NONEXISTENT.get((tag, m)) if tag is not None else None
    if clause is not None:
        return SynthesisResult(group, m, False,
                               f"classification clause ({clause})", clause=clause)
    if tag is not None:
        cm, route = _catalog_witness(tag, group, m, seed)
    else:
        cm, route = _generic_witness(group, m)
    verdict = None
    if verify:
        verdict = is_m_hgr(cm)
        if not verdict:
            raise SynthesisError(
                f"synthesized witness for {group.label}, m={m} via {route} "
                f"failed verification: {verdict.reason}")
    return SynthesisResult(group, m, True, route, matrix=cm, verdict=verdict)
