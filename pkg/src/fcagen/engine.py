"""Intent and pseudo-intent enumeration.

The main path enumerates closed and pseudo-closed attribute sets jointly
in lectic order, growing an implication list as pseudo-intents are found
and using implicational closure to step between them. A naive
definition-transcribing brute force over all attribute subsets is kept
as an independent oracle for small widths.
"""

from __future__ import annotations

from dataclasses import dataclass

from .context import FormalContext, closure
from .bitset import iter_bits

BRUTE_FORCE_MAX_ATTRIBUTES = 12


@dataclass(frozen=True)
class IpiCoordinate:
    """Intent count and pseudo-intent count of one context."""

    intents: int
    pseudo_intents: int


@dataclass(frozen=True)
class Implication:
    """Attribute implication premise -> conclusion (both bitmasks)."""

    premise: int
    conclusion: int


class ClosureTable:
    """Per-context closure evaluator.

    Precomputes, for every attribute, the set of distinct rows carrying
    it. Double derivation of B is then |B| intersections plus one
    superset test per attribute, independent of duplicate rows.
    """

    __slots__ = ("m", "full", "extents", "universe")

    def __init__(self, ctx: FormalContext):
        self.m = ctx.n_attributes
        self.full = (1 << self.m) - 1
        distinct = sorted(set(ctx.rows))
        self.universe = (1 << len(distinct)) - 1
        extents = [0] * self.m
        for i, row in enumerate(distinct):
            bit = 1 << i
            for j in iter_bits(row):
                extents[j] |= bit
        self.extents = extents

    def closure(self, b: int) -> int:
        extent = self.universe
        rest = b
        while rest:
            low = rest & -rest
            extent &= self.extents[low.bit_length() - 1]
            rest ^= low
        if extent == 0:
            return self.full
        out = 0
        for j, ext in enumerate(self.extents):
            if ext & extent == extent:
                out |= 1 << j
        return out


def lin_closure(implications, b: int) -> int:
    """Smallest superset of ``b`` respecting every implication."""
    imps = [
        (imp.premise, imp.conclusion) if isinstance(imp, Implication) else imp
        for imp in implications
    ]
    changed = True
    while changed:
        changed = False
        for premise, conclusion in imps:
            if premise & ~b == 0 and conclusion & ~b:
                b |= conclusion
                changed = True
    return b


def _lin_closure_bounded(imps, b: int, forbidden: int) -> int:
    """lin_closure over (premise, conclusion) pairs; -1 once ``forbidden`` bits appear."""
    changed = True
    while changed:
        changed = False
        for premise, conclusion in imps:
            if premise & ~b == 0 and conclusion & ~b:
                b |= conclusion
                if b & forbidden:
                    return -1
                changed = True
    return b


def _next_closed(closure_fn, a: int, m: int) -> int:
    """Lectic successor of ``a`` in the closure system of ``closure_fn``."""
    for i in range(m - 1, -1, -1):
        bit = 1 << i
        if a & bit:
            continue
        lower = bit - 1
        candidate = closure_fn((a & lower) | bit)
        if candidate & lower == a & lower:
            return candidate
    raise AssertionError("no lectic successor below the full attribute set")


def _next_preclosed(imps, a: int, m: int) -> int:
    """Lectic successor among sets closed under the current implication list."""
    for i in range(m - 1, -1, -1):
        bit = 1 << i
        if a & bit:
            continue
        lower = bit - 1
        forbidden = lower & ~a
        candidate = _lin_closure_bounded(imps, (a & lower) | bit, forbidden)
        if candidate >= 0:
            return candidate
    raise AssertionError("no lectic successor below the full attribute set")


def _walk_closed_and_pseudo_closed(table: ClosureTable):
    """Yield (set, its double derivation) for every intent and pseudo-intent.

    Visits exactly the sets that are closed or pseudo-closed, in lectic
    order. A visited set equals its double derivation iff it is an
    intent; otherwise it is a pseudo-intent and its implication joins
    the list steering the remaining walk.
    """
    imps = []
    closure_fn = table.closure
    full = table.full
    m = table.m
    a = 0
    while True:
        c = closure_fn(a)
        yield a, c
        if c != a:
            imps.append((a, c))
        if a == full:
            return
        a = _next_preclosed(imps, a, m)


def enumerate_intents(ctx: FormalContext) -> list[int]:
    """All closed attribute sets in lectic order, as bitmasks."""
    table = ClosureTable(ctx)
    out = []
    a = table.closure(0)
    while True:
        out.append(a)
        if a == table.full:
            return out
        a = _next_closed(table.closure, a, table.m)


def enumerate_pseudo_intents(ctx: FormalContext) -> list[int]:
    """All pseudo-intents in lectic order, as bitmasks."""
    table = ClosureTable(ctx)
    return [a for a, c in _walk_closed_and_pseudo_closed(table) if c != a]


def duquenne_guigues_base(ctx: FormalContext) -> list[Implication]:
    """Implications P -> P'' over the pseudo-intents P, in lectic order."""
    table = ClosureTable(ctx)
    return [
        Implication(a, c)
        for a, c in _walk_closed_and_pseudo_closed(table)
        if c != a
    ]


def ipi_coordinate(ctx: FormalContext) -> IpiCoordinate:
    """Intent and pseudo-intent counts from one joint enumeration pass."""
    table = ClosureTable(ctx)
    intents = 0
    pseudo = 0
    for a, c in _walk_closed_and_pseudo_closed(table):
        if c == a:
            intents += 1
        else:
            pseudo += 1
    return IpiCoordinate(intents, pseudo)


def _check_oracle_scale(ctx: FormalContext):
    if ctx.n_attributes > BRUTE_FORCE_MAX_ATTRIBUTES:
        raise ValueError(
            f"brute force is limited to {BRUTE_FORCE_MAX_ATTRIBUTES} attributes"
        )


def brute_force_intents(ctx: FormalContext) -> set[int]:
    """Oracle: scan all attribute subsets for B == B''."""
    _check_oracle_scale(ctx)
    return {
        b for b in range(1 << ctx.n_attributes) if closure(ctx, b) == b
    }


def brute_force_pseudo_intents(ctx: FormalContext) -> set[int]:
    """Oracle: transcribe the recursive definition over subsets by cardinality.

    P is a pseudo-intent iff P != P'' and every previously marked
    pseudo-intent Q that is a proper subset of P satisfies Q'' <= P.
    """
    _check_oracle_scale(ctx)
    marked = []
    for b in sorted(range(1 << ctx.n_attributes), key=lambda s: s.bit_count()):
        cb = closure(ctx, b)
        if cb == b:
            continue
        if all(cq & ~b == 0 for q, cq in marked if q != b and q & ~b == 0):
            marked.append((b, cb))
    return {q for q, _ in marked}
