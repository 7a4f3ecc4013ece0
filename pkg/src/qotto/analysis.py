"""Baselines, scaling fits, and tabulated sweeps.

Two standalone references frame every comparison with the collective
machine, always restricted to bath temperatures the collective itself
uses:

    SWO  - n copies of the strongest unit (the one with full inversion),
    SEPO - n copies of the least-polluting unit, index ceil(n/2), the
           one starting just above the equator.

Sweep results are collected in :class:`SweepTable`, a plain rectangular
row store with deterministic ordering and lossless (17 significant
digits) CSV output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .collective import (
    CollectiveRunResult,
    CollectiveSchedule,
    m_units_for,
    omega_pi_schedule,
    run_collective_cycle,
    saturated_work,
    swo_work,
)
from .engine import CycleLedger, EngineUnit, entropy_pollution, run_cycle
from .errors import InvalidArgument, ZeroWork
from .thermal import BathPair, LevelStructure, gibbs_steady_state


def _format_value(value) -> str:
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    v = float(value)
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return "%.17g" % v


@dataclass
class SweepTable:
    """Rectangular, order-preserving experiment results."""

    columns: tuple[str, ...]
    rows: list[tuple] = field(default_factory=list)

    def append(self, *values) -> None:
        if len(values) != len(self.columns):
            raise InvalidArgument(
                f"row has {len(values)} values for {len(self.columns)} columns"
            )
        self.rows.append(tuple(values))

    def column(self, name: str) -> list:
        idx = self.columns.index(name)
        return [row[idx] for row in self.rows]

    def write_csv(self, stream, header_lines: tuple[str, ...] = ()) -> None:
        """Emit '#'-prefixed header lines, the column header, then rows
        with 17-significant-digit numbers ('inf' for infinities)."""
        for line in header_lines:
            stream.write(f"# {line}\n")
        stream.write(",".join(self.columns) + "\n")
        for row in self.rows:
            stream.write(",".join(_format_value(v) for v in row) + "\n")


def loglog_slope(xs, ys) -> float:
    """Least-squares slope of ln y against ln x."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.size < 3 or ys.size != xs.size:
        raise InvalidArgument("need at least 3 matched points")
    if np.any(xs <= 0.0) or np.any(ys <= 0.0):
        raise InvalidArgument("log-log fit needs strictly positive data")
    slope, _ = np.polyfit(np.log(xs), np.log(ys), 1)
    return float(slope)


def sepo_reference(schedule: CollectiveSchedule) -> tuple[int, float]:
    """Index and standalone entropy pollution of the chain's most
    reversible unit (ceil(n/2), just above the equator).

    The unit runs a bare cycle with its own scheduled baths and the
    chain's delta_theta.  The exact-equator unit has zero inversion and
    is never selected; ZeroWork guards the degenerate case anyway.
    """
    if schedule.n_units < 2:
        raise InvalidArgument("sepo reference needs at least 2 units")
    index = math.ceil(schedule.n_units / 2)
    slot = schedule.per_unit[index - 1]
    unit = EngineUnit(schedule.levels, slot.baths, schedule.delta_theta)
    ledger = run_cycle(unit, "bare")
    if abs(ledger.w) < 1e-14:
        raise ZeroWork(f"reference unit {index} produced no work")
    return index, entropy_pollution(ledger)


def _swo_unit_ep(schedule: CollectiveSchedule) -> float:
    unit = EngineUnit(schedule.levels, schedule.base_baths, schedule.delta_theta)
    return entropy_pollution(run_cycle(unit, "bare"))


def ep_ratio_curve(
    levels: LevelStructure,
    base_baths: BathPair,
    n_list,
    baseline: str = "swo",
) -> SweepTable:
    """Entropy pollution of the omega = pi chain against a standalone
    baseline, per n.  Columns: n, ep_coll, ep_baseline, ratio."""
    if baseline not in ("swo", "sepo"):
        raise InvalidArgument(f"baseline must be 'swo' or 'sepo', got {baseline!r}")
    table = SweepTable(("n", "ep_coll", "ep_baseline", "ratio"))
    for n in sorted(int(n) for n in n_list):
        schedule = omega_pi_schedule(levels, base_baths, n)
        result = run_collective_cycle(schedule)
        ep_coll = result.ep
        if baseline == "swo":
            ep_base = _swo_unit_ep(schedule)
        else:
            _, ep_base = sepo_reference(schedule)
        table.append(n, ep_coll, ep_base, ep_coll / ep_base)
    return table


def boost_curve(
    levels: LevelStructure,
    base_baths: BathPair,
    delta_theta: float,
    n_list,
) -> SweepTable:
    """Grouped collective work against the standalone-copies baseline,
    per n at fixed delta_theta.  Columns: n, w_coll, w_swo, n_w_1swo."""
    p_eq = gibbs_steady_state(levels, base_baths)
    dp0 = float(p_eq[2] - p_eq[1])
    m = m_units_for(delta_theta)
    w_1swo = swo_work(levels, dp0, 1, delta_theta)
    table = SweepTable(("n", "w_coll", "w_swo", "n_w_1swo"))
    for n in sorted(int(n) for n in n_list):
        w_coll = saturated_work(levels, dp0, n, m, delta_theta)
        table.append(n, w_coll, swo_work(levels, dp0, n, delta_theta), n * w_1swo)
    return table


def w_over_ep(result_or_ledger) -> float:
    """Work times reversibility, w / ep.  Returns +inf when the entropy
    pollution vanishes or is negative (the reversible limit)."""
    if isinstance(result_or_ledger, CollectiveRunResult):
        w = result_or_ledger.total_w
        ep = result_or_ledger.ep
    elif isinstance(result_or_ledger, CycleLedger):
        w = result_or_ledger.w
        ep = entropy_pollution(result_or_ledger)
    else:
        raise InvalidArgument(
            "expected a CollectiveRunResult or CycleLedger, got "
            f"{type(result_or_ledger).__name__}"
        )
    if ep <= 0.0:
        return math.inf
    return w / ep


def w_over_ep_ratio_curve(
    levels: LevelStructure,
    base_baths: BathPair,
    n_list,
    baseline: str = "swo",
) -> SweepTable:
    """w/ep of the omega = pi chain against a standalone baseline, per n.
    Columns: n, w_ep_coll, w_ep_baseline, ratio."""
    if baseline not in ("swo", "sepo"):
        raise InvalidArgument(f"baseline must be 'swo' or 'sepo', got {baseline!r}")
    table = SweepTable(("n", "w_ep_coll", "w_ep_baseline", "ratio"))
    for n in sorted(int(n) for n in n_list):
        schedule = omega_pi_schedule(levels, base_baths, n)
        result = run_collective_cycle(schedule)
        w_ep_coll = w_over_ep(result)
        if baseline == "swo":
            unit = EngineUnit(levels, base_baths, schedule.delta_theta)
            ledger = run_cycle(unit, "bare")
            w_ep_base = n * ledger.w / entropy_pollution(ledger)
        else:
            index, ep_base = sepo_reference(schedule)
            slot = schedule.per_unit[index - 1]
            unit = EngineUnit(levels, slot.baths, schedule.delta_theta)
            w_ep_base = n * run_cycle(unit, "bare").w / ep_base
        table.append(n, w_ep_coll, w_ep_base, w_ep_coll / w_ep_base)
    return table
