"""Degree-preserving randomizations of a reference context.

All three constructions fix the attribute set and object count of the
reference and randomize rows: permutation keeps every row sum exactly,
the categorical model resamples row sums from the reference's degree
histogram, and the Dirichlet model first perturbs that histogram with a
Dirichlet prior (one draw per output context) before resampling.
"""

from __future__ import annotations

from dataclasses import dataclass

from .context import FormalContext, row_sum_profile
from .generators import categorical_incidence
from .rng import DirichletParams, RngState

DEFAULT_PRECISION_FACTOR = 1000.0


@dataclass(frozen=True)
class DegreeDistribution:
    """Histogram over {0, ..., |M|} of attributes per object."""

    counts: tuple[int, ...]

    def __post_init__(self):
        if any(c < 0 for c in self.counts):
            raise ValueError("degree counts must be non-negative")

    @property
    def total(self) -> int:
        return sum(self.counts)

    @property
    def normalized(self) -> tuple[float, ...]:
        """counts / |G|; requires at least one object."""
        total = self.total
        if total == 0:
            raise ValueError("cannot normalize a distribution over zero objects")
        return tuple(c / total for c in self.counts)


def degree_distribution(ctx: FormalContext) -> DegreeDistribution:
    counts = [0] * (ctx.n_attributes + 1)
    for k in row_sum_profile(ctx):
        counts[k] += 1
    return DegreeDistribution(tuple(counts))


def _require_reference_objects(ctx: FormalContext):
    if ctx.n_objects == 0:
        raise ValueError("reference context must have at least one object")


def permutation_null(ctx: FormalContext, rng: RngState) -> FormalContext:
    """Replace every row by a uniform subset of the same size.

    Row sums, and hence the degree distribution, are preserved exactly;
    object order is preserved.
    """
    _require_reference_objects(ctx)
    m = ctx.n_attributes
    rows = tuple(rng.random_k_subset(m, row.bit_count()) for row in ctx.rows)
    return FormalContext(ctx.objects, ctx.attributes, rows)


def categorical_null(ctx: FormalContext, rng: RngState) -> FormalContext:
    """Resample each object's degree from the reference degree histogram.

    The output degree distribution matches the reference in expectation,
    and its support never leaves the reference's support.
    """
    _require_reference_objects(ctx)
    probabilities = degree_distribution(ctx).normalized
    rows = categorical_incidence(rng, ctx.n_objects, ctx.n_attributes, probabilities)
    return FormalContext(ctx.objects, ctx.attributes, tuple(rows))


def dirichlet_null(ctx: FormalContext, rng: RngState,
                   beta: float | None = None) -> FormalContext:
    """Like categorical_null, through a Dirichlet prior around the reference.

    The normalized reference degree distribution is the base measure
    (zero components stay exactly zero); one probability vector is drawn
    per output context. Large beta keeps it close to the reference; the
    default is 1000 * (|M| + 1).
    """
    _require_reference_objects(ctx)
    if beta is None:
        beta = DEFAULT_PRECISION_FACTOR * (ctx.n_attributes + 1)
    alpha = degree_distribution(ctx).normalized
    p = rng.dirichlet(DirichletParams(alpha, beta))
    rows = categorical_incidence(rng, ctx.n_objects, ctx.n_attributes, p)
    return FormalContext(ctx.objects, ctx.attributes, tuple(rows))
