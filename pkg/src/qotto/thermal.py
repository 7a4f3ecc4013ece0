"""Gibbs fixed points, bath bookkeeping, and the thermalization stroke.

The cold bath couples the ground level to the cold excited level (gap
delta_e_c, temperature t_c); the hot bath couples the ground level to
the hot excited level (gap delta_e_h, temperature t_h).  Bath contact is
always long enough that the state lands exactly on the two-bath Gibbs
fixed point and every coherence is erased.

Sign conventions, used everywhere in the package:
    heat  q > 0  flows bath -> system,
    work  w > 0  is energy extracted from the system,
so over a steady-state cycle w = q_h + q_c and the bath entropy change
is ds_baths = -q_h/t_h - q_c/t_c.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgument, NegativeTemperatureRequired
from .qutrit import check_populations, check_state


@dataclass(frozen=True)
class LevelStructure:
    """Energy gaps of the two excited levels above the ground level."""

    delta_e_c: float
    delta_e_h: float

    def __post_init__(self):
        if not 0.0 < self.delta_e_c < self.delta_e_h:
            raise InvalidArgument(
                "need 0 < delta_e_c < delta_e_h, got "
                f"({self.delta_e_c}, {self.delta_e_h})"
            )


@dataclass(frozen=True)
class BathPair:
    """Temperatures of the cold (levels 1&2) and hot (levels 1&3) baths."""

    t_c: float
    t_h: float

    def __post_init__(self):
        for name, t in (("t_c", self.t_c), ("t_h", self.t_h)):
            if not (t > 0.0 and np.isfinite(t)):
                raise InvalidArgument(f"{name} must be positive and finite, got {t}")


@dataclass(frozen=True)
class HeatLedger:
    """Heats absorbed from each bath and the resulting bath entropy change."""

    q_c: float
    q_h: float
    ds_baths: float


def gibbs_steady_state(levels: LevelStructure, baths: BathPair) -> np.ndarray:
    """Two-bath Gibbs fixed point (1, e^{-dEc/Tc}, e^{-dEh/Th}) / Z."""
    weights = np.array(
        [1.0,
         np.exp(-levels.delta_e_c / baths.t_c),
         np.exp(-levels.delta_e_h / baths.t_h)]
    )
    return weights / weights.sum()


def temperatures_from_populations(levels: LevelStructure, p) -> BathPair:
    """Invert the Gibbs map: the bath pair whose fixed point is p.

    Raises NegativeTemperatureRequired if an excited population reaches
    the ground population (no positive temperature produces that).
    """
    p = check_populations(p)
    if p[1] >= p[0] or p[2] >= p[0]:
        raise NegativeTemperatureRequired(
            f"populations {p} need an excited level at least as populated "
            "as the ground level"
        )
    t_c = levels.delta_e_c / np.log(p[0] / p[1])
    t_h = levels.delta_e_h / np.log(p[0] / p[2])
    return BathPair(t_c=float(t_c), t_h=float(t_h))


def mean_energy(state_or_populations, levels: LevelStructure) -> float:
    """Mean energy with the ground level pinned at zero."""
    arr = np.asarray(state_or_populations)
    if arr.ndim == 2:
        p = np.diag(arr).real
    else:
        p = arr.real.astype(float)
    return float(levels.delta_e_c * p[1] + levels.delta_e_h * p[2])


def thermal_stroke(
    rho: np.ndarray, levels: LevelStructure, baths: BathPair
) -> tuple[np.ndarray, HeatLedger]:
    """Project the state onto the Gibbs fixed point and account the heats.

    Each bath exchanges (gap) x (net population change of its own excited
    level); the ground level carries no energy, and coherence is destroyed
    without any heat contribution.
    """
    rho = check_state(rho)
    p_in = np.diag(rho).real
    p_eq = gibbs_steady_state(levels, baths)
    q_c = float(levels.delta_e_c * (p_eq[1] - p_in[1]))
    q_h = float(levels.delta_e_h * (p_eq[2] - p_in[2]))
    ds_baths = -q_h / baths.t_h - q_c / baths.t_c
    ledger = HeatLedger(q_c=q_c, q_h=q_h, ds_baths=float(ds_baths))
    return np.diag(p_eq).astype(complex), ledger


def efficiency(levels: LevelStructure) -> float:
    """Work per unit of hot-bath heat: 1 - delta_e_c / delta_e_h."""
    return 1.0 - levels.delta_e_c / levels.delta_e_h


def carnot_efficiency(baths: BathPair) -> float:
    return 1.0 - baths.t_c / baths.t_h
