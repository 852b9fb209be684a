import math

import numpy as np
import pytest

from complextrees.family import family_alphabet

TAU = (1 + math.sqrt(5)) / 2
S5 = math.sqrt(5)

FIG0 = (0.4 + 0.1j, 0.2 + 0.3j, 0.2 - 0.1j)
GOLDEN = (
    (-1 + S5) / 2,
    complex((-2 + S5) / 2, math.sqrt(5 - 2 * S5) / 2),
    complex((-2 + S5) / 2, -math.sqrt(5 - 2 * S5) / 2),
)
HALF = (0.5, complex(0.25, math.sqrt(15) / 12), complex(0.25, -math.sqrt(15) / 12))


def sample_region_R(count, seed=20190712):
    """Deterministic parameters in R by rejection from the unit disk."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        r = math.sqrt(rng.uniform(1e-6, 1.0))
        z = r * complex(math.cos(t := rng.uniform(0, 2 * math.pi)), math.sin(t))
        if family_alphabet(z).in_R:
            out.append(z)
    return out


@pytest.fixture
def golden():
    return GOLDEN


@pytest.fixture
def fig0():
    return FIG0


@pytest.fixture
def half():
    return HALF
