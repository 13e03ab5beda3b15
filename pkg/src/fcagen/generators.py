"""Random context generation models.

Three models over a fixed attribute set M: the direct coin toss (one
Bernoulli coin per cell), the indirect coin toss (Binomial row sums,
then a uniform subset of that size), and the Dirichlet model (row-sum
probabilities drawn once per context from a Dirichlet prior, then used
as a categorical over {0, ..., |M|}).

Sampling order within a context is pinned: object count, then the row
probability parameter (p, or beta and p), then per-object draws in
object order. A GeneratorSpec therefore reproduces its context exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterator

from .context import MAX_ATTRIBUTES, FormalContext
from .rng import DirichletParams, RngState, split

MODELS = ("direct", "indirect", "dirichlet")
BETA_MODES = ("base", "fixed", "uniform", "scaled")
DEFAULT_SCALE_FACTOR = 0.1


@dataclass(frozen=True)
class GeneratorSpec:
    """Which model to run, its parameters, and the seed.

    ``object_count=None`` draws |G| uniformly from [|M|, 2^|M|] (the
    default); a fixed value is for null models and tests. ``beta_mode``
    only applies to the dirichlet model: "base" uses |M|+1, "fixed" uses
    ``beta`` as given, "uniform" redraws it per context from
    (0, |M|+1], and "scaled" uses c * (|M|+1).
    """

    model: str
    attribute_count: int
    beta_mode: str = "base"
    beta: float | None = None
    c: float | None = None
    alpha: tuple[float, ...] | None = None
    object_count: int | None = None
    seed: int = 0

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}, expected one of {MODELS}")
        if not 1 <= self.attribute_count <= MAX_ATTRIBUTES:
            raise ValueError(
                f"attribute count must be in [1, {MAX_ATTRIBUTES}]"
            )
        if self.beta_mode not in BETA_MODES:
            raise ValueError(
                f"unknown beta mode {self.beta_mode!r}, expected one of {BETA_MODES}"
            )
        if self.beta_mode == "fixed" and not (self.beta and self.beta > 0):
            raise ValueError("fixed beta mode needs beta > 0")
        if self.c is not None and not self.c > 0:
            raise ValueError("scale factor c must be positive")
        if self.alpha is not None:
            object.__setattr__(self, "alpha", tuple(float(a) for a in self.alpha))
            if len(self.alpha) != self.attribute_count + 1:
                raise ValueError("alpha must have |M|+1 components")
            # full validation (non-negativity, unit sum) happens in DirichletParams
        if self.object_count is not None and self.object_count < 0:
            raise ValueError("object count must be non-negative")


def variation_a(attribute_count: int, seed: int = 0) -> GeneratorSpec:
    """Dirichlet model with the precision redrawn per context from (0, |M|+1]."""
    return GeneratorSpec("dirichlet", attribute_count, beta_mode="uniform", seed=seed)


def variation_b(attribute_count: int, seed: int = 0, c: float = DEFAULT_SCALE_FACTOR) -> GeneratorSpec:
    """Dirichlet model with small fixed precision beta = c * (|M|+1)."""
    return GeneratorSpec("dirichlet", attribute_count, beta_mode="scaled", c=c, seed=seed)


def resolve_beta(beta_mode: str, attribute_count: int, rng: RngState,
                 beta: float | None = None, c: float | None = None) -> float:
    """Concrete precision value for one context under the given mode."""
    k = attribute_count + 1
    if beta_mode == "base":
        return float(k)
    if beta_mode == "fixed":
        if not (beta and beta > 0):
            raise ValueError("fixed beta mode needs beta > 0")
        return float(beta)
    if beta_mode == "scaled":
        factor = DEFAULT_SCALE_FACTOR if c is None else c
        if not factor > 0:
            raise ValueError("scale factor c must be positive")
        return factor * k
    if beta_mode == "uniform":
        # Uniform(0, |M|+1]; an exact 0 would degenerate the Dirichlet
        while True:
            value = rng.uniform01() * k
            if value > 0.0:
                return value
    raise ValueError(f"unknown beta mode {beta_mode!r}")


def direct_incidence(rng: RngState, object_count: int, attribute_count: int,
                     p: float) -> list[int]:
    """One Bernoulli(p) coin per (object, attribute) cell."""
    rows = []
    for _ in range(object_count):
        row = 0
        for j in range(attribute_count):
            if rng.bernoulli(p):
                row |= 1 << j
        rows.append(row)
    return rows


def indirect_incidence(rng: RngState, object_count: int, attribute_count: int,
                       p: float) -> list[int]:
    """Binomial(|M|, p) attributes per object, placed as a uniform subset."""
    rows = []
    for _ in range(object_count):
        theta = rng.binomial(attribute_count, p)
        rows.append(rng.random_k_subset(attribute_count, theta))
    return rows


def categorical_incidence(rng: RngState, object_count: int, attribute_count: int,
                          probabilities) -> list[int]:
    """Row sums drawn from Categorical(probabilities) over {0, ..., |M|}."""
    rows = []
    for _ in range(object_count):
        theta = rng.categorical(probabilities)
        rows.append(rng.random_k_subset(attribute_count, theta))
    return rows


def _draw_object_count(spec: GeneratorSpec, rng: RngState) -> int:
    if spec.object_count is not None:
        return spec.object_count
    m = spec.attribute_count
    return rng.discrete_uniform(m, 2**m)


def uniform_base_measure(attribute_count: int) -> tuple[float, ...]:
    """The uniform base measure over {0, ..., |M|}."""
    k = attribute_count + 1
    return (1.0 / k,) * k


def gen_direct_coin_toss(spec: GeneratorSpec, rng: RngState) -> FormalContext:
    if spec.model != "direct":
        raise ValueError(f"spec model is {spec.model!r}, expected 'direct'")
    n = _draw_object_count(spec, rng)
    p = rng.uniform01()
    rows = direct_incidence(rng, n, spec.attribute_count, p)
    return FormalContext.from_rows(rows, spec.attribute_count)


def gen_indirect_coin_toss(spec: GeneratorSpec, rng: RngState) -> FormalContext:
    if spec.model != "indirect":
        raise ValueError(f"spec model is {spec.model!r}, expected 'indirect'")
    n = _draw_object_count(spec, rng)
    p = rng.uniform01()
    rows = indirect_incidence(rng, n, spec.attribute_count, p)
    return FormalContext.from_rows(rows, spec.attribute_count)


def gen_dirichlet(spec: GeneratorSpec, rng: RngState) -> FormalContext:
    if spec.model != "dirichlet":
        raise ValueError(f"spec model is {spec.model!r}, expected 'dirichlet'")
    m = spec.attribute_count
    n = _draw_object_count(spec, rng)
    alpha = spec.alpha if spec.alpha is not None else uniform_base_measure(m)
    beta = resolve_beta(spec.beta_mode, m, rng, beta=spec.beta, c=spec.c)
    p = rng.dirichlet(DirichletParams(alpha, beta))
    rows = categorical_incidence(rng, n, m, p)
    return FormalContext.from_rows(rows, m)


_DISPATCH = {
    "direct": gen_direct_coin_toss,
    "indirect": gen_indirect_coin_toss,
    "dirichlet": gen_dirichlet,
}


def generate(spec: GeneratorSpec) -> FormalContext:
    """One context from the spec's own seed."""
    return _DISPATCH[spec.model](spec, RngState(spec.seed))


def generate_batch(spec: GeneratorSpec, count: int) -> Iterator[FormalContext]:
    """Contexts 0..count-1, each from the split seed (spec.seed, index)."""
    if count < 0:
        raise ValueError("count must be non-negative")
    for index in range(count):
        yield generate(replace(spec, seed=split(spec.seed, index)))
