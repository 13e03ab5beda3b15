"""Random generation and measurement of formal contexts.

Generate cross-tables with coin-toss or Dirichlet models, count their
intents and pseudo-intents, build degree-preserving null models of a
reference context, and aggregate batches into plot-ready records.
"""

__version__ = "0.1.0"

from .analytics import (
    DistinctCurve,
    IpiRecord,
    contranominal_count,
    coupon_mean,
    coupon_std,
    default_checkpoints,
    distinct_at_checkpoints,
    distinct_curve,
    measure_batch,
    measure_context,
    measure_contexts,
    pi_histogram,
    simulate_coupon_draws,
)
from .context import (
    FormalContext,
    ParseError,
    attribute_derivation,
    closure,
    contains_full_contranominal,
    contranominal_scale,
    fixed_density_context,
    object_derivation,
    read_burmeister,
    row_sum_profile,
    write_burmeister,
)
from .engine import (
    Implication,
    IpiCoordinate,
    brute_force_intents,
    brute_force_pseudo_intents,
    duquenne_guigues_base,
    enumerate_intents,
    enumerate_pseudo_intents,
    ipi_coordinate,
    lin_closure,
)
from .generators import (
    GeneratorSpec,
    categorical_incidence,
    direct_incidence,
    gen_direct_coin_toss,
    gen_dirichlet,
    gen_indirect_coin_toss,
    generate,
    generate_batch,
    indirect_incidence,
    resolve_beta,
    uniform_base_measure,
    variation_a,
    variation_b,
)
from .nullmodels import (
    DegreeDistribution,
    categorical_null,
    degree_distribution,
    dirichlet_null,
    permutation_null,
)
from .rng import DirichletParams, RngState, split
