"""One two-stroke engine unit in steady state, with coherence swapping.

A cycle starts on the unit's Gibbs fixed point, optionally receives
coherence from a donor particle (a population-preserving full swap),
runs the work-stroke rotation, optionally hands its fresh coherence to
an acceptor particle (same kind of swap, after the rotation), and then
re-thermalizes.  Every entropy change lands in the per-cycle ledger:

    ds_tot = ds_baths + ds_acpt + ds_dnr

with ds_acpt = -C(state after the rotation) and ds_dnr = +C(donor),
C being the coherence measure.  Whenever the post-rotation coherence is
extracted, ds_tot collapses to the populations-only relative entropy
D(p_after_rotation || p_gibbs), which is the engine's whole entropy
story in a single nonnegative number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    InvalidAcceptor,
    InvalidArgument,
    NotAnEngine,
    PopulationMismatch,
    ZeroWork,
)
from .qutrit import (
    BlochVector23,
    apply_work_unitary,
    check_state,
    coherence_measure,
    dephase,
    from_bloch,
)
from .thermal import (
    BathPair,
    LevelStructure,
    carnot_efficiency,
    efficiency,
    gibbs_steady_state,
    mean_energy,
    thermal_stroke,
)

# Relative tolerance for the population match required by a swap.
POPULATION_MATCH_TOL = 1e-9

# Off-diagonal magnitude above which a would-be diagonal particle is rejected.
DIAGONAL_TOL = 1e-12

MODES = ("bare", "with_ce", "with_ce_ci")


@dataclass(frozen=True)
class EngineUnit:
    """A three-level unit: gaps, bath temperatures, work-stroke angle."""

    levels: LevelStructure
    baths: BathPair
    delta_theta: float

    def __post_init__(self):
        # delta_theta = 0 is allowed as the degenerate do-nothing stroke.
        if not 0.0 <= self.delta_theta <= math.pi:
            raise InvalidArgument(
                f"delta_theta must lie in [0, pi], got {self.delta_theta}"
            )


@dataclass(frozen=True)
class CycleLedger:
    """Per-cycle energy and entropy bookkeeping (energies in the unit of
    the gaps, entropies in nats)."""

    w: float
    q_c: float
    q_h: float
    ds_baths: float
    ds_acpt: float
    ds_dnr: float
    ds_tot: float
    c_extracted: float
    c_injected: float


def _require_population_match(a: np.ndarray, b: np.ndarray, tol: float) -> None:
    pa = np.diag(a).real
    pb = np.diag(b).real
    scale = np.maximum(np.abs(pa), np.abs(pb))
    bad = np.abs(pa - pb) > tol * np.maximum(scale, 1e-300)
    if np.any(bad):
        raise PopulationMismatch(
            f"populations differ beyond tolerance: {pa} vs {pb}"
        )


def _require_diagonal(rho: np.ndarray, role: str) -> None:
    off = rho - np.diag(np.diag(rho))
    if np.max(np.abs(off)) > DIAGONAL_TOL:
        raise InvalidAcceptor(f"{role} must be coherence-free (diagonal)")


def coherence_extract(
    engine: np.ndarray, acceptor: np.ndarray, tol: float = POPULATION_MATCH_TOL
) -> tuple[np.ndarray, np.ndarray, float]:
    """Swap the engine particle with a diagonal acceptor of identical
    populations, moving the engine's coherence into the acceptor.

    Returns (engine_after, acceptor_after, ds_acpt) where
    ds_acpt = -C(engine) is the acceptor's entropy change.  The swap moves
    no energy: populations match, so neither particle's energy changes.
    """
    engine = check_state(engine)
    acceptor = check_state(acceptor)
    _require_diagonal(acceptor, "acceptor")
    _require_population_match(engine, acceptor, tol)
    ds_acpt = -coherence_measure(engine)
    return acceptor.copy(), engine.copy(), ds_acpt


def coherence_inject(
    engine: np.ndarray, donor: np.ndarray, tol: float = POPULATION_MATCH_TOL
) -> tuple[np.ndarray, np.ndarray, float]:
    """Time-reversed extraction: swap a coherent donor into a diagonal
    engine with identical populations.

    Returns (engine_after, donor_after, ds_dnr) with ds_dnr = +C(donor),
    the entropy the donor gains by losing its coherence.
    """
    engine = check_state(engine)
    donor = check_state(donor)
    _require_diagonal(engine, "engine (before injection)")
    _require_population_match(engine, donor, tol)
    ds_dnr = coherence_measure(donor)
    return donor.copy(), engine.copy(), ds_dnr


def make_matched_donor(
    populations, coherence_fraction: float = 1.0
) -> np.ndarray:
    """A donor state with the given populations and a fraction of the
    maximal excited-subspace coherence positivity allows.

    fraction = 1 puts the excited block at the edge of the Bloch disk,
    fraction = 0 reproduces the diagonal state.  Negative fractions flip
    the coherence sign.
    """
    p = np.asarray(populations, dtype=float)
    if not -1.0 <= coherence_fraction <= 1.0:
        raise InvalidArgument(
            f"coherence_fraction must lie in [-1, 1], got {coherence_fraction}"
        )
    y_max = 2.0 * math.sqrt(max(p[1] * p[2], 0.0))
    bloch = BlochVector23(y=coherence_fraction * y_max, z=float(p[2] - p[1]))
    return from_bloch(float(p[0]), bloch, float(p[1] + p[2]))


def run_cycle(
    unit: EngineUnit,
    mode: str = "bare",
    donor: np.ndarray | None = None,
    tol: float = POPULATION_MATCH_TOL,
) -> CycleLedger:
    """One steady-state cycle of a single unit.

    mode "bare":        rotate, then let the baths erase the coherence.
    mode "with_ce":     rotate, extract the coherence into a fresh
                        dephased acceptor, then thermalize.
    mode "with_ce_ci":  additionally start by injecting the given donor
                        (its populations must match the Gibbs state).
    """
    if mode not in MODES:
        raise InvalidArgument(f"unknown mode {mode!r}, expected one of {MODES}")
    if (donor is None) == (mode == "with_ce_ci"):
        raise InvalidArgument("a donor is required exactly in mode 'with_ce_ci'")

    p_eq = gibbs_steady_state(unit.levels, unit.baths)
    state = np.diag(p_eq).astype(complex)

    ds_dnr = 0.0
    if mode == "with_ce_ci":
        state, _, ds_dnr = coherence_inject(state, donor, tol)
    c_injected = ds_dnr  # the donor's entropy gain is exactly its coherence

    energy_before = mean_energy(state, unit.levels)
    rotated = apply_work_unitary(state, unit.delta_theta)
    w = energy_before - mean_energy(rotated, unit.levels)

    ds_acpt = 0.0
    c_extracted = 0.0
    state = rotated
    if mode in ("with_ce", "with_ce_ci"):
        acceptor = dephase(rotated)
        c_extracted = coherence_measure(rotated)
        state, _, ds_acpt = coherence_extract(rotated, acceptor, tol)

    _, heats = thermal_stroke(state, unit.levels, unit.baths)
    ds_tot = heats.ds_baths + ds_acpt + ds_dnr
    return CycleLedger(
        w=float(w),
        q_c=heats.q_c,
        q_h=heats.q_h,
        ds_baths=heats.ds_baths,
        ds_acpt=float(ds_acpt),
        ds_dnr=float(ds_dnr),
        ds_tot=float(ds_tot),
        c_extracted=float(c_extracted),
        c_injected=float(c_injected),
    )


def run_cycle_no_inversion(
    unit: EngineUnit, donor: np.ndarray, tol: float = POPULATION_MATCH_TOL
) -> CycleLedger:
    """Single-bath-temperature engine driven purely by injected coherence.

    With t_c = t_h the Gibbs state has no population inversion, so a bare
    unit cannot extract work; a coherent donor tilts the Bloch vector off
    the south pole and the rotation can then lower the energy.  A
    zero-coherence donor simply yields a ledger with w <= 0.
    """
    if not math.isclose(unit.baths.t_c, unit.baths.t_h, rel_tol=1e-12):
        raise InvalidArgument(
            "the no-inversion setup uses a single temperature, got "
            f"t_c={unit.baths.t_c} t_h={unit.baths.t_h}"
        )
    return run_cycle(unit, "with_ce_ci", donor=donor, tol=tol)


def entropy_pollution(ledger: CycleLedger) -> float:
    """Total entropy generated per unit of extracted work."""
    if abs(ledger.w) <= 1e-14:
        raise ZeroWork("cycle produced no work; entropy pollution undefined")
    return ledger.ds_tot / ledger.w


def ep_closed_form_no_ce(levels: LevelStructure, baths: BathPair) -> float:
    """Entropy pollution of any engine that neither injects nor extracts
    coherence: (eta_c - eta) / (eta * t_c).

    Independent of the rotation angle and of the per-cycle population
    change; zero exactly at the Carnot point.
    """
    eta = efficiency(levels)
    eta_c = carnot_efficiency(baths)
    if eta <= 0.0:
        raise NotAnEngine(f"efficiency {eta} is not positive")
    if eta > eta_c:
        raise NotAnEngine(
            f"efficiency {eta} exceeds the Carnot efficiency {eta_c}; "
            "the device runs as a refrigerator"
        )
    return (eta_c - eta) / (eta * baths.t_c)


def split_cycle_experiment(
    unit: EngineUnit, n_splits: int
) -> list[tuple[int, float]]:
    """Entropy pollution when one reference stroke is split into n smaller
    coherence-extracting cycles producing the same total work.

    The reference stroke is the unit's own delta_theta from the north
    pole.  Split n replaces it with n cycles whose angle moves each
    excited population by 1/n of the reference change, so the total work
    is fixed while each cycle hugs the Gibbs state ever closer.  Returns
    [(n, ep_with_ce) for n in 1..n_splits].
    """
    if n_splits < 1:
        raise InvalidArgument(f"n_splits must be >= 1, got {n_splits}")
    p_eq = gibbs_steady_state(unit.levels, unit.baths)
    if p_eq[2] <= p_eq[1]:
        raise NotAnEngine("no population inversion; the reference stroke "
                          "extracts no work")
    reference_drop = 1.0 - math.cos(unit.delta_theta)
    results = []
    for n in range(1, n_splits + 1):
        angle = math.acos(1.0 - reference_drop / n)
        small = EngineUnit(unit.levels, unit.baths, angle)
        ledger = run_cycle(small, "with_ce")
        results.append((n, entropy_pollution(ledger)))
    return results
