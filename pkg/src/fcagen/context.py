"""Formal contexts as bitmask cross-tables.

A context is a set of objects, a set of attributes, and an incidence
relation between them. Each object's incidences are stored as one
integer bitmask over attribute indices (bit ``j`` set = object has
attribute ``j``), so derivations reduce to word-sized set operations.

Duplicate incidence rows are allowed: the random generators draw
objects independently and never deduplicate.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .bitset import iter_bits, mask_from_indices

MAX_ATTRIBUTES = 63


class ParseError(ValueError):
    """Malformed Burmeister input. ``line`` is the 1-based offending line."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class FormalContext:
    """Immutable objects x attributes cross-table.

    ``rows[g]`` is the attribute bitmask of object ``g``. Safe to share
    across workers; every operation on it is a pure function.
    """

    objects: tuple[str, ...]
    attributes: tuple[str, ...]
    rows: tuple[int, ...]

    def __post_init__(self):
        m = len(self.attributes)
        if not 1 <= m <= MAX_ATTRIBUTES:
            raise ValueError(
                f"attribute count must be in [1, {MAX_ATTRIBUTES}], got {m}"
            )
        if len(self.rows) != len(self.objects):
            raise ValueError("need exactly one incidence row per object")
        full = (1 << m) - 1
        for g, row in enumerate(self.rows):
            if row < 0 or row & ~full:
                raise ValueError(f"row {g} does not fit attribute width {m}")
        if len(set(self.objects)) != len(self.objects):
            raise ValueError("object names must be unique")
        if len(set(self.attributes)) != len(self.attributes):
            raise ValueError("attribute names must be unique")

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_attributes(self) -> int:
        return len(self.attributes)

    @property
    def attribute_mask(self) -> int:
        """Bitmask of the full attribute set."""
        return (1 << len(self.attributes)) - 1

    @property
    def object_mask(self) -> int:
        """Bitmask of the full object set."""
        return (1 << len(self.objects)) - 1

    @classmethod
    def from_rows(cls, rows, n_attributes, objects=None, attributes=None):
        """Build a context from incidence masks, naming g<i> / m<j> by default."""
        rows = tuple(rows)
        if objects is None:
            objects = tuple(f"g{i}" for i in range(len(rows)))
        if attributes is None:
            attributes = tuple(f"m{j}" for j in range(n_attributes))
        if len(attributes) != n_attributes:
            raise ValueError("attribute name count does not match width")
        return cls(tuple(objects), tuple(attributes), rows)

    def transpose(self) -> "FormalContext":
        """Swap the roles of objects and attributes."""
        if not 1 <= len(self.objects) <= MAX_ATTRIBUTES:
            raise ValueError(
                f"transpose needs an object count in [1, {MAX_ATTRIBUTES}]"
            )
        cols = [0] * len(self.attributes)
        for g, row in enumerate(self.rows):
            bit = 1 << g
            for j in iter_bits(row):
                cols[j] |= bit
        return FormalContext(self.attributes, self.objects, tuple(cols))


def contranominal_scale(n: int) -> FormalContext:
    """The context ([n], [n], !=): row i carries every attribute except i."""
    if n < 1:
        raise ValueError("contranominal scale needs n >= 1")
    full = (1 << n) - 1
    return FormalContext.from_rows([full ^ (1 << i) for i in range(n)], n)


def fixed_density_context(n_attributes: int, density: int) -> FormalContext:
    """Context whose rows are all C(n, density) attribute subsets of that size."""
    if not 0 <= density <= n_attributes:
        raise ValueError("density must be between 0 and the attribute count")
    rows = [
        mask_from_indices(comb)
        for comb in combinations(range(n_attributes), density)
    ]
    return FormalContext.from_rows(rows, n_attributes)


def _check_object_set(ctx: FormalContext, a: int):
    if a < 0 or a & ~ctx.object_mask:
        raise ValueError("object set contains indices outside the context")


def _check_attribute_set(ctx: FormalContext, b: int):
    if b < 0 or b & ~ctx.attribute_mask:
        raise ValueError("attribute set contains indices outside the context")


def object_derivation(ctx: FormalContext, a: int) -> int:
    """Attributes shared by every object in ``a``; all of M for the empty set."""
    _check_object_set(ctx, a)
    result = ctx.attribute_mask
    for g in iter_bits(a):
        result &= ctx.rows[g]
    return result


def attribute_derivation(ctx: FormalContext, b: int) -> int:
    """Objects whose row contains every attribute in ``b``; all of G for empty ``b``."""
    _check_attribute_set(ctx, b)
    result = 0
    for g, row in enumerate(ctx.rows):
        if row & b == b:
            result |= 1 << g
    return result


def closure(ctx: FormalContext, b: int) -> int:
    """The double derivation of ``b``: extensive, monotone, idempotent."""
    return object_derivation(ctx, attribute_derivation(ctx, b))


def contains_full_contranominal(ctx: FormalContext) -> bool:
    """True iff for every attribute j some row equals M minus {j}.

    Equivalent to the context containing a subcontext isomorphic to the
    contranominal scale over the full attribute set.
    """
    full = ctx.attribute_mask
    present = set(ctx.rows)
    return all(full ^ (1 << j) in present for j in range(ctx.n_attributes))


def row_sum_profile(ctx: FormalContext) -> list[int]:
    """Number of attributes per object, in object order."""
    return [row.bit_count() for row in ctx.rows]


def write_burmeister(ctx: FormalContext) -> str:
    """Serialize to Burmeister .cxt text (LF newlines, 'X'/'.' incidence)."""
    lines = ["B", "", str(ctx.n_objects), str(ctx.n_attributes), ""]
    lines.extend(ctx.objects)
    lines.extend(ctx.attributes)
    for row in ctx.rows:
        lines.append(
            "".join("X" if row >> j & 1 else "." for j in range(ctx.n_attributes))
        )
    return "\n".join(lines) + "\n"


def read_burmeister(data) -> FormalContext:
    """Parse Burmeister .cxt text (str or bytes). Raises ParseError with line numbers."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    lines = data.split("\n")
    # a single trailing newline leaves one empty final element
    if lines and lines[-1] == "":
        lines.pop()

    def get(idx: int) -> str:
        if idx >= len(lines):
            raise ParseError(idx + 1, "unexpected end of input")
        return lines[idx]

    if get(0).strip() != "B":
        raise ParseError(1, "expected Burmeister magic line 'B'")
    if get(1) != "":
        raise ParseError(2, "expected empty line after magic")
    try:
        n_objects = int(get(2))
    except ValueError:
        raise ParseError(3, f"expected object count, got {get(2)!r}") from None
    try:
        n_attributes = int(get(3))
    except ValueError:
        raise ParseError(4, f"expected attribute count, got {get(3)!r}") from None
    if n_objects < 0:
        raise ParseError(3, "object count must be non-negative")
    if n_attributes < 1:
        raise ParseError(4, "attribute count must be at least 1")
    if get(4) != "":
        raise ParseError(5, "expected empty line after counts")

    base = 5
    objects = tuple(get(base + i) for i in range(n_objects))
    attributes = tuple(get(base + n_objects + j) for j in range(n_attributes))
    rows = []
    row_base = base + n_objects + n_attributes
    for g in range(n_objects):
        lineno = row_base + g + 1
        text = get(row_base + g)
        if len(text) != n_attributes:
            raise ParseError(
                lineno, f"row has {len(text)} cells, expected {n_attributes}"
            )
        row = 0
        for j, ch in enumerate(text):
            if ch == "X":
                row |= 1 << j
            elif ch != ".":
                raise ParseError(lineno, f"illegal incidence character {ch!r}")
        rows.append(row)
    for extra in range(row_base + n_objects, len(lines)):
        if lines[extra].strip():
            raise ParseError(extra + 1, "trailing content after incidence rows")
    return FormalContext(objects, attributes, tuple(rows))
