"""Chain extension: grow a small PGSR base into an m-part witness.

A base on b parts (b in {3, 4, 5}) with valency pattern
(k+1, ..., k+1, k, ..., k) — b-2 parts of valency k+1, two of valency k
— extends to any m of the right parity by appending a chain of parts:

  - {1}-links at (i, i+2) for b-1 <= i <= m-2,
  - a filler block M of size k-1 at (i, i+1) for every i of the same
    parity as b+1 with b+1 <= i <= m-3,
  - a filler block N of size k at (m-1, m).

The two base parts of valency k each pick up one {1}-link, the chain
parts total k+1 each, so the result is (k+1)-regular.  No chain block
pair closes a triangle, so all triangles stay inside the base parts;
together with the {1}-links this pins every automorphism to the base,
and the extension inherits |Aut| = |G|.

Base requirements checked here: diagonal-free, the valency pattern for
some k with 2 <= k <= |G|, a triangle through every base vertex, and
(unless skipped) |Aut| = |G|.  relax_fillers=True waives k <= |G| and
clamps the filler sizes to |G|; the result then loses regularity but
keeps |Aut| = |G| for the bases shipped in the catalog.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .autos import automorphism_group
from .cayley import CayleyError, ConnectionMatrix, build_graph


class LiftError(ValueError):
    pass


VALID_BASE_PARTS = (3, 4, 5)


def min_target_parts(base_parts: int) -> int:
    return {3: 5, 4: 6, 5: 7}[base_parts]


def chain_filler_layout(base_parts: int, m: int) -> dict:
    """Block positions of the chain, without any group content.

    Returns {"one_links": [(i, i+2), ...], "small_fillers": [(i, i+1), ...],
    "large_filler": (m-1, m)} with the base untouched at parts 1..base_parts.
    """
    if base_parts not in VALID_BASE_PARTS:
        raise LiftError(f"base must have 3, 4, or 5 parts, got {base_parts}")
    lo = min_target_parts(base_parts)
    if m < lo:
        raise LiftError(f"a {base_parts}-part base extends to m >= {lo}, got m={m}")
    if m % 2 != lo % 2:
        raise LiftError(
            f"a {base_parts}-part base extends to {'odd' if lo % 2 else 'even'} m only, "
            f"got m={m}")
    small = [(i, i + 1) for i in range(base_parts + 1, m - 2)
             if i % 2 == (base_parts + 1) % 2]
    links = [(i, i + 2) for i in range(base_parts - 1, m - 1)]
    return {"one_links": links, "small_fillers": small, "large_filler": (m - 1, m)}


def _pattern_k(valencies: tuple[int, ...]) -> Optional[int]:
    """k such that valencies == (k+1,)*(b-2) + (k,)*2, or None."""
    b = len(valencies)
    k = valencies[-1]
    if valencies == (k + 1,) * (b - 2) + (k, k):
        return k
    return None


def triangle_profile(cm: ConnectionMatrix) -> tuple[str, ...]:
    """Which vertices of each part lie on 3-cycles: 'all', 'none', 'mixed'.

    The extension works because triangles exist through every base
    vertex and through no chain vertex, so this is both a precondition
    check (base parts must read 'all') and a diagnostic on the result
    (chain parts must read 'none').
    """
    graph = build_graph(cm)
    n = cm.group.order
    out = []
    for i in range(cm.m):
        flags = [graph.on_triangle(i * n + a) for a in range(n)]
        out.append("all" if all(flags) else "none" if not any(flags) else "mixed")
    return tuple(out)


@dataclass
class LiftPlan:
    """Resolved parameters of a chain extension."""

    base_parts: int
    m: int
    k: int
    filler_small: frozenset[int]
    filler_large: frozenset[int]
    relaxed: bool


def plan_lift(base: ConnectionMatrix, m: int,
              filler_small: Optional[Iterable[int]] = None,
              filler_large: Optional[Iterable[int]] = None,
              relax_fillers: bool = False) -> LiftPlan:
    """Validate the base shape and resolve filler sets.

    Defaults are the lexicographically least subsets of the right size.
    Every violated hypothesis is reported by name.
    """
    b = base.m
    if b not in VALID_BASE_PARTS:
        raise LiftError(f"base must have 3, 4, or 5 parts, got {b}")
    for i in range(1, b + 1):
        if base.block(i, i):
            raise LiftError(f"base violates the empty-diagonal hypothesis at part {i}")
    k = _pattern_k(base.valencies())
    if k is None:
        raise LiftError(
            f"base valencies {base.valencies()} do not match the required pattern "
            f"(k+1 on the first {b - 2} parts, k on the last two)")
    if k < 2:
        raise LiftError(f"base violates the hypothesis k >= 2 (k={k})")
    n = base.group.order
    if k > n and not relax_fillers:
        raise LiftError(
            f"base violates the hypothesis k <= |G| (k={k}, |G|={n}); "
            "pass relax_fillers=True to clamp the filler sizes instead")
    bad = [i + 1 for i, s in enumerate(triangle_profile(base)) if s != "all"]
    if bad:
        raise LiftError(
            "base violates the triangle hypothesis: parts "
            f"{bad} have vertices on no 3-cycle")
    size_small = min(k - 1, n) if relax_fillers else k - 1
    size_large = min(k, n) if relax_fillers else k
    if filler_small is None:
        small = frozenset(range(size_small))
    else:
        small = frozenset(filler_small)
        if len(small) != size_small:
            raise LiftError(f"filler_small must have {size_small} elements, got {len(small)}")
    if filler_large is None:
        large = frozenset(range(size_large))
    else:
        large = frozenset(filler_large)
        if len(large) != size_large:
            raise LiftError(f"filler_large must have {size_large} elements, got {len(large)}")
    # parity/minimum checks live in chain_filler_layout
    chain_filler_layout(b, m)
    return LiftPlan(b, m, k, small, large, relax_fillers)


def lift_base(base: ConnectionMatrix, m: int,
              filler_small: Optional[Iterable[int]] = None,
              filler_large: Optional[Iterable[int]] = None,
              relax_fillers: bool = False,
              check_base: bool = True) -> ConnectionMatrix:
    """Extend a 3/4/5-part PGSR base to an m-part connection matrix.

    With check_base=True the base is also required to have a triangle
    through every vertex and |Aut| equal to the group order.
    """
    plan = plan_lift(base, m, filler_small, filler_large, relax_fillers)
    if check_base:
        bg = build_graph(base)
        for v in range(bg.n):
            if not bg.has_triangle_through(v):
                raise LiftError(
                    f"base violates the triangle hypothesis: vertex {v} "
                    "is on no triangle")
        aut = automorphism_group(bg)
        if aut.order != base.group.order:
            raise LiftError(
                f"base is not a PGSR: |Aut|={aut.order}, group order "
                f"{base.group.order}")
    layout = chain_filler_layout(plan.base_parts, m)
    blocks: dict[tuple[int, int], frozenset[int]] = {}
    for i, j, s in base.upper_items():
        blocks[(i, j)] = s
    for pos in layout["one_links"]:
        blocks[pos] = frozenset([0])
    for pos in layout["small_fillers"]:
        blocks[pos] = plan.filler_small
    blocks[layout["large_filler"]] = plan.filler_large
    try:
        return ConnectionMatrix(base.group, m, blocks)
    except CayleyError as exc:  # pragma: no cover - layout never collides
        raise LiftError(f"internal layout conflict: {exc}") from exc


def lift3(base: ConnectionMatrix, m: int, **kw) -> ConnectionMatrix:
    """Extend a 3-part base with pattern (k+1, k, k) to odd m >= 5."""
    if base.m != 3:
        raise LiftError(f"lift3 needs a 3-part base, got {base.m} parts")
    return lift_base(base, m, **kw)


def lift4(base: ConnectionMatrix, m: int, **kw) -> ConnectionMatrix:
    """Extend a 4-part base with pattern (k+1, k+1, k, k) to even m >= 6."""
    if base.m != 4:
        raise LiftError(f"lift4 needs a 4-part base, got {base.m} parts")
    return lift_base(base, m, **kw)


def lift5(base: ConnectionMatrix, m: int, **kw) -> ConnectionMatrix:
    """Extend a 5-part base with pattern (k+1, k+1, k+1, k, k) to odd m >= 7."""
    if base.m != 5:
        raise LiftError(f"lift5 needs a 5-part base, got {base.m} parts")
    return lift_base(base, m, **kw)
