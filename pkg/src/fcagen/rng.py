"""Seeded sampling primitives.

A 64-bit seed fully determines a sample stream; ``split`` derives child
seeds for reproducible batches regardless of worker scheduling. The
gamma sampler is the Marsaglia-Tsang squeeze for shapes >= 1 with the
usual power boost below 1, degenerating to exactly 0 at shape 0 so that
zero base-measure components stay zero through the Dirichlet transform.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from itertools import accumulate

import numpy as np

ALPHA_SUM_TOLERANCE = 1e-12
PROB_SUM_TOLERANCE = 1e-9
_MAX_SEED = 2**64


def split(seed: int, index: int) -> int:
    """Deterministic 64-bit child seed for stream ``index`` of ``seed``."""
    ss = np.random.SeedSequence(seed, spawn_key=(index,))
    return int(ss.generate_state(1, np.uint64)[0])


@dataclass(frozen=True)
class DirichletParams:
    """Base measure ``alpha`` (sums to 1) and precision ``beta`` (> 0)."""

    alpha: tuple[float, ...]
    beta: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(float(a) for a in self.alpha))
        if len(self.alpha) < 2:
            raise ValueError("base measure needs at least 2 components")
        if any(a < 0 for a in self.alpha):
            raise ValueError("base measure components must be non-negative")
        if not any(a > 0 for a in self.alpha):
            raise ValueError("base measure must have a positive component")
        total = math.fsum(self.alpha)
        if abs(total - 1.0) > ALPHA_SUM_TOLERANCE:
            raise ValueError(f"base measure must sum to 1, got {total!r}")
        if not self.beta > 0:
            raise ValueError("precision must be positive")

    @property
    def k(self) -> int:
        return len(self.alpha)


class RngState:
    """Deterministic sample stream seeded by a 64-bit integer.

    Single-owner: never share one instance across concurrent workers;
    give each worker ``RngState(split(root_seed, worker_index))``.
    """

    def __init__(self, seed: int):
        seed = int(seed)
        if not 0 <= seed < _MAX_SEED:
            raise ValueError("seed must be an unsigned 64-bit integer")
        self.seed = seed
        self._gen = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))

    def __repr__(self):
        return f"RngState(seed={self.seed})"

    def uniform01(self) -> float:
        """One draw from Uniform[0, 1)."""
        return float(self._gen.random())

    def discrete_uniform(self, lo: int, hi: int) -> int:
        """Uniform integer from the inclusive range [lo, hi]."""
        if lo > hi:
            raise ValueError(f"empty range [{lo}, {hi}]")
        if lo >= 0:
            return int(self._gen.integers(lo, hi, endpoint=True, dtype=np.uint64))
        return int(self._gen.integers(lo, hi, endpoint=True, dtype=np.int64))

    def bernoulli(self, p: float) -> int:
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"bernoulli probability out of [0, 1]: {p}")
        return 1 if self._gen.random() < p else 0

    def binomial(self, n: int, p: float) -> int:
        if n < 0:
            raise ValueError("trial count must be non-negative")
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"binomial probability out of [0, 1]: {p}")
        return int(self._gen.binomial(n, p))

    def gamma(self, shape: float) -> float:
        """Gamma(shape, 1) draw; exactly 0.0 for the degenerate shape 0."""
        if shape < 0:
            raise ValueError("shape must be non-negative")
        if shape == 0:
            return 0.0
        if shape < 1.0:
            # Gamma(a) = Gamma(a + 1) * U^(1/a)
            u = self._gen.random()
            return self._gamma_at_least_one(shape + 1.0) * u ** (1.0 / shape)
        return self._gamma_at_least_one(shape)

    def _gamma_at_least_one(self, shape: float) -> float:
        gen = self._gen
        d = shape - 1.0 / 3.0
        c = 1.0 / math.sqrt(9.0 * d)
        while True:
            x = gen.standard_normal()
            v = 1.0 + c * x
            if v <= 0.0:
                continue
            v = v * v * v
            u = gen.random()
            if u == 0.0:
                continue
            xx = x * x
            if u < 1.0 - 0.0331 * xx * xx:
                return d * v
            if math.log(u) < 0.5 * xx + d * (1.0 - v + math.log(v)):
                return d * v

    def dirichlet(self, params: DirichletParams) -> list[float]:
        """Probability vector via normalized Gamma(beta * alpha_i, 1) draws.

        Components with alpha_i = 0 are exactly 0; the result sums to
        exactly 1.0 after renormalization.
        """
        shapes = [params.beta * a for a in params.alpha]
        total = 0.0
        for _ in range(100):
            z = [self.gamma(s) for s in shapes]
            total = math.fsum(z)
            if total > 0.0:
                break
        if total <= 0.0:
            raise RuntimeError("gamma draws underflowed to zero repeatedly")
        y = [zi / total for zi in z]
        top = max(range(len(y)), key=y.__getitem__)
        for _ in range(3):
            residue = 1.0 - math.fsum(y)
            if residue == 0.0:
                break
            y[top] += residue
        return y

    def categorical(self, p) -> int:
        """Index c with probability p[c]; p must be non-negative and sum to 1."""
        cum = list(accumulate(p))
        if any(x < 0 for x in p):
            raise ValueError("categorical probabilities must be non-negative")
        if abs(cum[-1] - 1.0) > PROB_SUM_TOLERANCE:
            raise ValueError(f"categorical probabilities must sum to 1, got {cum[-1]!r}")
        idx = bisect_right(cum, self._gen.random())
        if idx >= len(cum):
            # rounding slack at the top: fall back to the last positive bucket
            idx = max(i for i, x in enumerate(p) if x > 0)
        return idx

    def random_k_subset(self, n: int, k: int) -> int:
        """Uniform k-element subset of {0, ..., n-1} as a bitmask (partial shuffle)."""
        if not 0 <= k <= n:
            raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
        if k == 0:
            return 0
        if k == n:
            return (1 << n) - 1
        pool = list(range(n))
        draws = self._gen.integers(np.arange(k), n)
        mask = 0
        for j in range(k):
            d = int(draws[j])
            pool[j], pool[d] = pool[d], pool[j]
            mask |= 1 << pool[j]
        return mask
