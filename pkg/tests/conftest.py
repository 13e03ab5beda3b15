import hypothesis.strategies as st
from hypothesis import settings

from fcagen import FormalContext, RngState

settings.register_profile("suite", deadline=None)
settings.load_profile("suite")


@st.composite
def contexts(draw, max_attributes=8, max_objects=10, min_objects=0):
    """Random small formal contexts."""
    m = draw(st.integers(1, max_attributes))
    g = draw(st.integers(min_objects, max_objects))
    rows = draw(st.lists(st.integers(0, (1 << m) - 1), min_size=g, max_size=g))
    return FormalContext.from_rows(rows, m)


def random_context(rng: RngState, max_attributes=6, max_objects=12) -> FormalContext:
    """Uniform random context for seeded bulk checks."""
    m = rng.discrete_uniform(1, max_attributes)
    g = rng.discrete_uniform(0, max_objects)
    rows = [rng.discrete_uniform(0, (1 << m) - 1) for _ in range(g)]
    return FormalContext.from_rows(rows, m)
