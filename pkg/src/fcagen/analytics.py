"""Batch measurement of generated contexts.

Turns contexts into (intents, pseudo-intents) records, aggregates them
into histograms and distinct-coordinate growth curves, and provides the
Coupon Collector moments that predict how quickly uniform draws cover
all N categories (and hence how quickly generators assemble full
contranominal scales).
"""

from __future__ import annotations

import math
import multiprocessing
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

from .context import FormalContext, contains_full_contranominal
from .engine import ipi_coordinate
from .generators import GeneratorSpec, generate
from .rng import RngState, split


@dataclass(frozen=True)
class IpiRecord:
    """Measurement of one generated context."""

    context_index: int
    intents: int
    pseudo_intents: int
    contranominal: bool
    object_count: int


@dataclass(frozen=True)
class DistinctCurve:
    """Distinct (intents, pseudo-intents) totals after each checkpoint."""

    checkpoints: tuple[int, ...]
    distinct: tuple[int, ...]

    def __post_init__(self):
        if list(self.checkpoints) != sorted(set(self.checkpoints)):
            raise ValueError("checkpoints must be strictly increasing")
        for count, seen in zip(self.checkpoints, self.distinct):
            if seen > count:
                raise ValueError("distinct totals cannot exceed generated totals")
        if list(self.distinct) != sorted(self.distinct):
            raise ValueError("distinct totals must be non-decreasing")


def coupon_mean(n: int) -> float:
    """Expected uniform draws to see all n categories: n * H_n."""
    if n < 1:
        raise ValueError("need at least one category")
    return n * math.fsum(1.0 / k for k in range(1, n + 1))


def coupon_std(n: int) -> float:
    """Standard deviation of the draws needed to see all n categories."""
    if n < 1:
        raise ValueError("need at least one category")
    variance = n * math.fsum((n - k) / (k * k) for k in range(1, n + 1))
    return math.sqrt(variance)


def simulate_coupon_draws(rng: RngState, n: int) -> int:
    """One Monte-Carlo run: uniform draws until all n categories appeared."""
    if n < 1:
        raise ValueError("need at least one category")
    full = (1 << n) - 1
    seen = 0
    draws = 0
    while seen != full:
        seen |= 1 << rng.discrete_uniform(0, n - 1)
        draws += 1
    return draws


def measure_context(ctx: FormalContext, context_index: int = 0) -> IpiRecord:
    """I-PI coordinate plus the contranominal flag for one context."""
    coord = ipi_coordinate(ctx)
    contranominal = contains_full_contranominal(ctx)
    if contranominal and (
        coord.intents != 1 << ctx.n_attributes or coord.pseudo_intents != 0
    ):
        raise RuntimeError(
            "invariant violation: full contranominal context must have "
            "2^|M| intents and no pseudo-intents"
        )
    return IpiRecord(
        context_index=context_index,
        intents=coord.intents,
        pseudo_intents=coord.pseudo_intents,
        contranominal=contranominal,
        object_count=ctx.n_objects,
    )


def measure_contexts(contexts: Iterable[FormalContext]) -> list[IpiRecord]:
    return [measure_context(ctx, i) for i, ctx in enumerate(contexts)]


def _measure_generated(args) -> IpiRecord:
    spec, index = args
    ctx = generate(replace(spec, seed=split(spec.seed, index)))
    return measure_context(ctx, index)


def measure_batch(spec: GeneratorSpec, count: int, jobs: int = 1) -> list[IpiRecord]:
    """Generate and measure ``count`` contexts.

    Record i always derives from the split seed (spec.seed, i), so the
    result is identical for any ``jobs`` value; workers only change the
    schedule.
    """
    if count < 0:
        raise ValueError("count must be non-negative")
    tasks = [(spec, i) for i in range(count)]
    if jobs <= 1 or count < 2:
        return [_measure_generated(t) for t in tasks]
    chunk = max(1, count // (jobs * 8))
    with multiprocessing.Pool(jobs) as pool:
        return pool.map(_measure_generated, tasks, chunksize=chunk)


def pi_histogram(records: Iterable[IpiRecord], omit_zero: bool = False) -> dict[int, int]:
    """Contexts per pseudo-intent count; ``omit_zero`` drops the 0 bin."""
    hist: dict[int, int] = {}
    for record in records:
        hist[record.pseudo_intents] = hist.get(record.pseudo_intents, 0) + 1
    if omit_zero:
        hist.pop(0, None)
    return hist


def contranominal_count(records: Iterable[IpiRecord]) -> int:
    return sum(1 for r in records if r.contranominal)


def default_checkpoints(total: int, points: int = 40) -> tuple[int, ...]:
    """Roughly log-spaced checkpoints from 1 to ``total``."""
    if total < 1:
        raise ValueError("total must be at least 1")
    raw = {
        max(1, round(total ** (i / (points - 1)))) if points > 1 else total
        for i in range(points)
    }
    raw.add(total)
    return tuple(sorted(raw))


def distinct_at_checkpoints(records: Sequence[IpiRecord],
                            checkpoints: Sequence[int]) -> DistinctCurve:
    """Fold records (in index order) into a distinct-coordinate curve."""
    checkpoints = tuple(checkpoints)
    if any(c < 1 or c > len(records) for c in checkpoints):
        raise ValueError("checkpoints must lie in [1, len(records)]")
    seen: set[tuple[int, int]] = set()
    totals = []
    next_cp = 0
    for i, record in enumerate(records, start=1):
        seen.add((record.intents, record.pseudo_intents))
        while next_cp < len(checkpoints) and checkpoints[next_cp] == i:
            totals.append(len(seen))
            next_cp += 1
    return DistinctCurve(checkpoints, tuple(totals))


def distinct_curve(spec: GeneratorSpec, total: int,
                   checkpoints: Sequence[int] | None = None,
                   jobs: int = 1) -> DistinctCurve:
    """Running count of distinct I-PI coordinates over a generated batch."""
    if checkpoints is None:
        checkpoints = default_checkpoints(total)
    records = measure_batch(spec, total, jobs=jobs)
    return distinct_at_checkpoints(records, checkpoints)
