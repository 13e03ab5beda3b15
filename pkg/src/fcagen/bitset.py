"""Bitmask helpers for index sets.

Attribute and object subsets are plain Python ints: bit ``i`` set means
index ``i`` is a member. All set algebra is then ``&``, ``|``, ``^`` and
``~`` restricted to the relevant width.
"""

from __future__ import annotations

from typing import Iterable, Iterator


def mask_from_indices(indices: Iterable[int]) -> int:
    """Pack non-negative indices into a bitmask."""
    mask = 0
    for i in indices:
        if i < 0:
            raise ValueError(f"index must be non-negative, got {i}")
        mask |= 1 << i
    return mask


def indices_from_mask(mask: int) -> tuple[int, ...]:
    """Unpack a bitmask into its sorted member indices."""
    return tuple(iter_bits(mask))


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def lectic_lt(a: int, b: int) -> bool:
    """Lectic order: a < b iff the smallest differing index belongs to b."""
    diff = a ^ b
    if diff == 0:
        return False
    return bool(b & (diff & -diff))
