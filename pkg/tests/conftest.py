import math

import numpy as np
import pytest

from qotto import BathPair, BlochVector23, LevelStructure, from_bloch

# reference parameter set used across the suite
REF_LEVELS = LevelStructure(1.0, 2.0)
REF_BATHS = BathPair(0.5, 5.0)

# exact reference Gibbs populations, frozen from a 50-digit evaluation of
# (1, e^-2, e^-0.4) / Z
REF_P1 = 0.55381555039246508
REF_P2 = 0.074950784373204811
REF_P3 = 0.37123366523433011
REF_DP0 = 0.29628288086112530


@pytest.fixture
def ref_levels():
    return REF_LEVELS


@pytest.fixture
def ref_baths():
    return REF_BATHS


@pytest.fixture
def rng():
    return np.random.default_rng(987654321)


def random_state(rng, max_radius_fraction=1.0):
    """A random valid state of the family used here: real populations plus
    a 2-3 coherence inside the Bloch disk."""
    p1 = rng.uniform(0.05, 0.9)
    s = 1.0 - p1
    radius = s * rng.uniform(0.0, max_radius_fraction)
    angle = rng.uniform(-math.pi, math.pi)
    bloch = BlochVector23(y=radius * math.sin(angle), z=radius * math.cos(angle))
    return from_bloch(p1, bloch, s)


def random_engine_setup(rng, margin=1.3):
    """Random gaps and temperatures comfortably inside the engine regime."""
    dec = rng.uniform(0.3, 2.0)
    deh = dec * rng.uniform(1.2, 3.0)
    t_c = rng.uniform(0.2, 2.0)
    t_h = t_c * (deh / dec) * rng.uniform(margin, 4.0)
    return LevelStructure(dec, deh), BathPair(t_c, t_h)
