"""The N-unit collective machine: schedule, pipeline simulation, closed forms.

Units are chained so that each one continues the rotation where the
previous one stopped.  The bath temperatures of unit i+1 are chosen so
that its Gibbs populations equal the populations the traveling state has
after unit i's rotation; the swap between neighbours then moves only
coherence, never energy.  One state therefore visits all N units in turn
(an assembly line), accumulating the collective angle omega = N * dtheta,
while each unit's own particle re-thermalizes with its private baths.

All excited populations along the chain interpolate between the base
unit's p2 and p3, so any positive-temperature base state yields a valid
schedule for every omega <= pi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .engine import CycleLedger, coherence_extract
from .errors import InvalidArgument, WrongOmega
from .qutrit import apply_work_unitary, coherence_measure, relative_entropy
from .thermal import (
    BathPair,
    LevelStructure,
    gibbs_steady_state,
    mean_energy,
    temperatures_from_populations,
    thermal_stroke,
)

OMEGA_TOL = 1e-12


@dataclass(frozen=True)
class UnitSchedule:
    """One slot of the chain: starting angle, Gibbs populations, baths."""

    theta_start: float
    p_eq: np.ndarray
    baths: BathPair


@dataclass(frozen=True)
class CollectiveSchedule:
    n_units: int
    delta_theta: float
    omega: float
    levels: LevelStructure
    base_baths: BathPair
    per_unit: tuple[UnitSchedule, ...]
    invariant_p1: float
    invariant_s: float
    dp0: float

    def populations_at(self, theta: float) -> np.ndarray:
        """Populations of the traveling state at rotation angle theta."""
        z = self.dp0 * math.cos(theta)
        return np.array(
            [self.invariant_p1,
             0.5 * (self.invariant_s - z),
             0.5 * (self.invariant_s + z)]
        )


@dataclass(frozen=True)
class CollectiveRunResult:
    per_unit_ledgers: tuple[CycleLedger, ...]
    total_w: float
    total_q_h: float
    total_q_c: float
    total_ds: float
    ep: float


def build_schedule(
    levels: LevelStructure,
    base_baths: BathPair,
    n_units: int,
    delta_theta: float,
) -> CollectiveSchedule:
    """Bath schedule for an N-unit chain with per-unit angle delta_theta.

    Unit i starts at angle (i-1) * delta_theta; its populations follow the
    base unit's Bloch circle and its temperatures are the unique positive
    pair with that Gibbs state.
    """
    if n_units < 1:
        raise InvalidArgument(f"n_units must be >= 1, got {n_units}")
    if delta_theta <= 0.0:
        raise InvalidArgument(f"delta_theta must be > 0, got {delta_theta}")
    omega = n_units * delta_theta
    if omega > math.pi + 1e-9:
        raise InvalidArgument(
            f"omega = {omega} exceeds pi; split the chain into pi-sized "
            "groups instead (see saturated_work)"
        )
    p_base = gibbs_steady_state(levels, base_baths)
    p1 = float(p_base[0])
    s = float(p_base[1] + p_base[2])
    dp0 = float(p_base[2] - p_base[1])

    units = []
    for i in range(n_units):
        theta = i * delta_theta
        if i == 0:
            p_eq, baths = p_base, base_baths
        else:
            z = dp0 * math.cos(theta)
            p_eq = np.array([p1, 0.5 * (s - z), 0.5 * (s + z)])
            baths = temperatures_from_populations(levels, p_eq)
        units.append(UnitSchedule(theta_start=theta, p_eq=p_eq, baths=baths))
    return CollectiveSchedule(
        n_units=n_units,
        delta_theta=delta_theta,
        omega=omega,
        levels=levels,
        base_baths=base_baths,
        per_unit=tuple(units),
        invariant_p1=p1,
        invariant_s=s,
        dp0=dp0,
    )


def omega_pi_schedule(
    levels: LevelStructure, base_baths: BathPair, n_units: int
) -> CollectiveSchedule:
    """Schedule with delta_theta = pi / n, exhausting the inversion."""
    return build_schedule(levels, base_baths, n_units, math.pi / n_units)


def run_collective_cycle(schedule: CollectiveSchedule) -> CollectiveRunResult:
    """Simulate one collective cycle along the chain.

    The traveling state starts as unit 1's Gibbs state.  Unit i rotates it
    by delta_theta and swaps it into unit i+1 (whose freshly thermalized
    particle is the matching diagonal acceptor); unit N keeps its rotated
    state and lets its own baths erase the residual coherence.  Per-unit
    ledgers follow the single-unit accounting; the run total counts only
    bath entropies, because no particle leaves the device.
    """
    levels = schedule.levels
    n = schedule.n_units
    traveling = np.diag(schedule.per_unit[0].p_eq).astype(complex)
    ledgers = []
    for i, slot in enumerate(schedule.per_unit):
        c_in = coherence_measure(traveling)
        energy_in = mean_energy(traveling, levels)
        rotated = apply_work_unitary(traveling, schedule.delta_theta)
        w = energy_in - mean_energy(rotated, levels)

        if i < n - 1:
            # the next unit's thermal particle is this unit's acceptor
            acceptor = np.diag(
                gibbs_steady_state(levels, schedule.per_unit[i + 1].baths)
            ).astype(complex)
            own_particle, traveling, ds_acpt = coherence_extract(rotated, acceptor)
            c_out = -ds_acpt
        else:
            own_particle = rotated
            ds_acpt = 0.0
            c_out = 0.0

        _, heats = thermal_stroke(own_particle, levels, slot.baths)
        ds_dnr = c_in
        ledgers.append(CycleLedger(
            w=float(w),
            q_c=heats.q_c,
            q_h=heats.q_h,
            ds_baths=heats.ds_baths,
            ds_acpt=float(ds_acpt),
            ds_dnr=float(ds_dnr),
            ds_tot=float(heats.ds_baths + ds_acpt + ds_dnr),
            c_extracted=float(c_out),
            c_injected=float(c_in),
        ))

    total_w = sum(l.w for l in ledgers)
    total_ds = sum(l.ds_baths for l in ledgers)
    ep = total_ds / total_w if abs(total_w) > 1e-14 else math.nan
    return CollectiveRunResult(
        per_unit_ledgers=tuple(ledgers),
        total_w=float(total_w),
        total_q_h=float(sum(l.q_h for l in ledgers)),
        total_q_c=float(sum(l.q_c for l in ledgers)),
        total_ds=float(total_ds),
        ep=float(ep),
    )


def collective_work_closed_form(
    levels: LevelStructure, dp0: float, omega: float
) -> float:
    """Work of the chain: (E_h - E_c) * dp0 * sin^2(omega / 2)."""
    if dp0 < 0.0:
        raise InvalidArgument(f"dp0 must be >= 0, got {dp0}")
    gap = levels.delta_e_h - levels.delta_e_c
    return gap * dp0 * math.sin(0.5 * omega) ** 2


def swo_work(
    levels: LevelStructure, dp0: float, n_units: int, delta_theta: float
) -> float:
    """Total work of n standalone copies of the strongest unit, each
    rotating by delta_theta from the full inversion dp0."""
    gap = levels.delta_e_h - levels.delta_e_c
    return n_units * gap * dp0 * math.sin(0.5 * delta_theta) ** 2


def m_units_for(delta_theta: float) -> int:
    """Number of units needed for a pi rotation at the given angle."""
    if delta_theta <= 0.0:
        raise InvalidArgument(f"delta_theta must be > 0, got {delta_theta}")
    return max(1, round(math.pi / delta_theta))


def saturated_work(
    levels: LevelStructure,
    dp0: float,
    n_units: int,
    m_units: int,
    delta_theta: float,
) -> float:
    """Work of n units grouped into pi-sized chains of m units each.

    Complete groups contribute (E_h - E_c) * dp0 apiece; the leftover
    n mod m units form one shorter chain.  For n < m this reduces to the
    single-chain closed form.
    """
    if m_units < 1:
        raise InvalidArgument(f"m_units must be >= 1, got {m_units}")
    if m_units != m_units_for(delta_theta):
        raise InvalidArgument(
            f"m_units = {m_units} does not match round(pi / delta_theta) = "
            f"{m_units_for(delta_theta)}"
        )
    if n_units < 0:
        raise InvalidArgument(f"n_units must be >= 0, got {n_units}")
    gap = levels.delta_e_h - levels.delta_e_c
    complete, remainder = divmod(n_units, m_units)
    return gap * dp0 * (
        complete + math.sin(0.5 * remainder * delta_theta) ** 2
    )


def _require_omega_pi(schedule: CollectiveSchedule) -> None:
    if abs(schedule.omega - math.pi) > OMEGA_TOL:
        raise WrongOmega(
            f"operation requires omega = pi, got {schedule.omega:.17g}"
        )


def pairwise_residual(
    result: CollectiveRunResult, schedule: CollectiveSchedule, i: int
) -> float:
    """Bath entropy left over by the mirror pair (i, N+1-i) at omega = pi.

    The coherence terms of mirror units cancel exactly, so the residual
    equals the pair's two population relative entropies and shrinks as
    1/N^2.  For odd N the middle unit pairs with itself; by convention the
    residual is then twice its own bath entropy.
    """
    _require_omega_pi(schedule)
    n = schedule.n_units
    if not 1 <= i <= n:
        raise InvalidArgument(f"unit index {i} out of range 1..{n}")
    j = n + 1 - i
    ds_i = result.per_unit_ledgers[i - 1].ds_baths
    if i == j:
        return 2.0 * ds_i
    return ds_i + result.per_unit_ledgers[j - 1].ds_baths


def omega_pi_total_entropy(schedule: CollectiveSchedule) -> float:
    """Total entropy of the omega = pi chain from populations alone:
    sum_i D(p_eq^(i+1) || p_eq^(i)), the last term ending on the mirror
    of the base state."""
    _require_omega_pi(schedule)
    total = 0.0
    for i, slot in enumerate(schedule.per_unit):
        if i + 1 < schedule.n_units:
            p_next = schedule.per_unit[i + 1].p_eq
        else:
            p_next = schedule.populations_at(schedule.omega)
        total += relative_entropy(
            np.diag(p_next).astype(complex),
            np.diag(slot.p_eq).astype(complex),
        )
    return float(total)
