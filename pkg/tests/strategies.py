import numpy as np
import hypothesis.strategies as st

from hypothesis import assume
from hypothesis.extra.numpy import arrays

from qutritwalk.types import PositionDistribution


unit_floats = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False, allow_infinity=False)
gammas = st.floats(min_value=0.0, max_value=1.0, allow_nan=False, allow_infinity=False)


@st.composite
def hermitian_matrices(draw, scale=1.0):
    re = draw(arrays(np.float64, (3, 3), elements=unit_floats))
    im = draw(arrays(np.float64, (3, 3), elements=unit_floats))
    a = scale * (re + 1j * im)
    return 0.5 * (a + a.conj().T)


@st.composite
def coin_states(draw):
    parts = draw(arrays(np.float64, (6,), elements=unit_floats))
    z = parts[:3] + 1j * parts[3:]
    norm = np.linalg.norm(z)
    assume(norm > 1e-3)
    return z / norm


@st.composite
def distributions(draw, t_max=6):
    weights = draw(arrays(
        np.float64,
        (2 * t_max + 1,),
        elements=st.floats(min_value=0.0, max_value=1.0, allow_nan=False),
    ))
    assume(weights.sum() > 1e-3)
    return PositionDistribution(probs=weights / weights.sum(), t=t_max, t_max=t_max)
