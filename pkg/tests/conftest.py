import numpy as np
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from ppt_forge.spectra import SchmidtVector

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def schmidt_vectors(draw, min_size=1, max_size=6, min_coeff=1e-3):
    """Full-rank coefficient vectors; the floor keeps the SDPs well conditioned."""
    n = draw(st.integers(min_size, max_size))
    raw = draw(st.lists(st.floats(min_coeff, 1.0), min_size=n, max_size=n))
    v = np.asarray(raw) / sum(raw)
    return SchmidtVector.from_values(v)


def random_vector(rng, d):
    e = rng.exponential(size=d)
    return SchmidtVector.from_values(e / e.sum())


def random_positive_vector(rng, d, floor=1e-3):
    while True:
        v = random_vector(rng, d)
        if v.coeffs[0] >= floor:
            return v
