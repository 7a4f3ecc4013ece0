"""Command line front end: config files in, reproducible CSV tables out.

Config format is flat ``key=value``, one pair per line, ``#`` comments.
Angles accept plain numbers or ``pi`` expressions (``pi``, ``pi/20``,
``0.5*pi``).  ``n_list`` accepts an inclusive range ``start:stop:step``
or an explicit comma list ``8,16,32``.

Subcommands:
    qotto run <config> [--output <path>]
    qotto selftest [--output-dir <dir>]
    qotto list-experiments
"""

from __future__ import annotations

import argparse
import math
import re
import sys
from dataclasses import dataclass, replace

import numpy as np

from . import analysis, collective, engine, thermal
from .errors import ConfigError, QottoError
from .qutrit import relative_entropy

EXPERIMENTS = (
    "single",
    "collective",
    "boost-curve",
    "ep-scaling",
    "ep-ratio",
    "omega-pi",
    "split-cycle",
    "no-inversion",
)

_PI_PATTERN = re.compile(
    r"^\s*(?:([0-9.eE+-]+)\s*\*\s*)?pi\s*(?:/\s*([0-9.eE+-]+))?\s*$"
)

_DYADIC_DEFAULT = tuple(2 ** k for k in range(11))  # 1 .. 1024


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str = "single"
    delta_e_c: float = 1.0
    delta_e_h: float = 2.0
    t_c: float = 0.5
    t_h: float = 5.0
    n: int | None = None
    n_list: tuple[int, ...] | None = None
    delta_theta: float | None = None
    omega: float | None = None
    baseline: str = "swo"
    output: str | None = None


def _parse_angle(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        pass
    match = _PI_PATTERN.match(text)
    if match is None:
        raise ValueError(f"cannot parse angle {text!r}")
    coeff = float(match.group(1)) if match.group(1) else 1.0
    divisor = float(match.group(2)) if match.group(2) else 1.0
    return coeff * math.pi / divisor


def _parse_n_list(text: str) -> tuple[int, ...]:
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError("range must be start:stop:step")
        start, stop, step = (int(p) for p in parts)
        if step <= 0 or stop < start:
            raise ValueError("range must be increasing with positive step")
        return tuple(range(start, stop + 1, step))
    return tuple(int(p) for p in text.split(","))


def parse_config(text: str) -> ExperimentConfig:
    """Parse and fully validate a config, applying per-experiment defaults."""
    values: dict[str, object] = {}
    lines_of: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        parser = _KEY_PARSERS.get(key)
        if parser is None:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        try:
            values[key] = parser(value)
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: {exc}") from None
        lines_of[key] = lineno

    def fail(key: str, message: str):
        if key in lines_of:
            raise ConfigError(f"line {lines_of[key]}: {message}")
        raise ConfigError(message)

    cfg = ExperimentConfig(**values)

    if cfg.experiment not in EXPERIMENTS:
        fail("experiment",
             f"unknown experiment {cfg.experiment!r}; see list-experiments")
    for key in ("delta_e_c", "delta_e_h", "t_c", "t_h"):
        if getattr(cfg, key) <= 0.0:
            fail(key, f"{key} must be positive, got {getattr(cfg, key)}")
    if cfg.delta_e_c >= cfg.delta_e_h:
        fail("delta_e_c", "need delta_e_c < delta_e_h")
    if cfg.delta_theta is not None and cfg.omega is not None:
        fail("omega", "give exactly one of delta_theta and omega")
    if cfg.baseline not in ("swo", "sepo"):
        fail("baseline", f"baseline must be swo or sepo, got {cfg.baseline!r}")
    if "baseline" in values and cfg.experiment != "ep-ratio":
        fail("baseline", "baseline is only meaningful for experiment ep-ratio")
    if cfg.n is not None and cfg.n < 1:
        fail("n", f"n must be >= 1, got {cfg.n}")
    if cfg.n_list is not None and any(n < 1 for n in cfg.n_list):
        fail("n_list", "all n values must be >= 1")

    return _resolve(cfg, values, fail)


def _resolve(cfg: ExperimentConfig, given: dict, fail) -> ExperimentConfig:
    """Fill per-experiment defaults and reject meaningless keys."""
    exp = cfg.experiment

    uses_n = exp in ("collective", "omega-pi")
    uses_n_list = exp in ("boost-curve", "ep-scaling", "ep-ratio", "split-cycle")
    if "n" in given and not uses_n:
        fail("n", f"experiment {exp} does not take n")
    if "n_list" in given and not uses_n_list:
        fail("n_list", f"experiment {exp} does not take n_list")
    if exp in ("single", "no-inversion", "split-cycle", "boost-curve"):
        if "omega" in given:
            fail("omega", f"experiment {exp} is parameterized by delta_theta")
    if exp in ("omega-pi", "ep-scaling", "ep-ratio"):
        for key in ("delta_theta", "omega"):
            if key in given:
                fail(key, f"experiment {exp} derives its angles from n; "
                          "do not set them")

    if exp == "no-inversion" and not math.isclose(cfg.t_c, cfg.t_h, rel_tol=1e-12):
        fail("t_h", "no-inversion runs on a single temperature: set t_c = t_h")

    defaults: dict[str, object] = {}
    if exp in ("single", "no-inversion") and cfg.delta_theta is None:
        defaults["delta_theta"] = math.pi / 4
    if exp == "split-cycle" and cfg.delta_theta is None:
        defaults["delta_theta"] = math.pi / 2
    if exp == "boost-curve" and cfg.delta_theta is None:
        defaults["delta_theta"] = math.pi / 20
    if exp == "collective":
        if cfg.n is None:
            defaults["n"] = 10
        if cfg.delta_theta is None and cfg.omega is None:
            defaults["omega"] = math.pi
    if exp == "omega-pi" and cfg.n is None:
        defaults["n"] = 20
    if exp == "boost-curve" and cfg.n_list is None:
        defaults["n_list"] = tuple(range(1, 101))
    if exp == "ep-scaling" and cfg.n_list is None:
        defaults["n_list"] = tuple(2 ** k for k in range(3, 10))  # 8 .. 512
    if exp == "ep-ratio" and cfg.n_list is None:
        defaults["n_list"] = tuple(range(2, 65))
    if exp == "split-cycle" and cfg.n_list is None:
        defaults["n_list"] = _DYADIC_DEFAULT
    if cfg.output is None:
        defaults["output"] = f"{exp}.csv"

    cfg = replace(cfg, **defaults)

    # derive the per-unit angle where the experiment runs a chain
    if exp == "collective" and cfg.delta_theta is None:
        cfg = replace(cfg, delta_theta=cfg.omega / cfg.n)
    if exp == "omega-pi":
        cfg = replace(cfg, delta_theta=math.pi / cfg.n, omega=math.pi)
    if exp == "collective" and cfg.omega is None:
        cfg = replace(cfg, omega=cfg.n * cfg.delta_theta)
    return cfg


_KEY_PARSERS = {
    "experiment": str,
    "delta_e_c": float,
    "delta_e_h": float,
    "t_c": float,
    "t_h": float,
    "n": int,
    "n_list": _parse_n_list,
    "delta_theta": _parse_angle,
    "omega": _parse_angle,
    "baseline": str,
    "output": str,
}


def _levels_baths(cfg: ExperimentConfig):
    levels = thermal.LevelStructure(cfg.delta_e_c, cfg.delta_e_h)
    baths = thermal.BathPair(cfg.t_c, cfg.t_h)
    return levels, baths


def _ledger_row(prefix: tuple, ledger: engine.CycleLedger, ep: float) -> tuple:
    return prefix + (
        ledger.w, ledger.q_c, ledger.q_h, ledger.ds_baths, ledger.ds_acpt,
        ledger.ds_dnr, ledger.ds_tot, ledger.c_extracted, ledger.c_injected, ep,
    )


_LEDGER_COLUMNS = (
    "w", "q_c", "q_h", "ds_baths", "ds_acpt", "ds_dnr", "ds_tot",
    "c_extracted", "c_injected", "ep",
)


def _run_single(cfg: ExperimentConfig) -> analysis.SweepTable:
    levels, baths = _levels_baths(cfg)
    unit = engine.EngineUnit(levels, baths, cfg.delta_theta)
    table = analysis.SweepTable(("mode",) + _LEDGER_COLUMNS)
    for mode_id, mode in enumerate(("bare", "with_ce")):
        ledger = engine.run_cycle(unit, mode)
        table.append(*_ledger_row((mode_id,), ledger, engine.entropy_pollution(ledger)))
    return table


def _run_collective(cfg: ExperimentConfig) -> analysis.SweepTable:
    levels, baths = _levels_baths(cfg)
    schedule = collective.build_schedule(levels, baths, cfg.n, cfg.delta_theta)
    result = collective.run_collective_cycle(schedule)
    table = analysis.SweepTable(
        ("unit", "theta_start", "t_c", "t_h") + _LEDGER_COLUMNS
    )
    for index, (slot, ledger) in enumerate(
        zip(schedule.per_unit, result.per_unit_ledgers), start=1
    ):
        ep = ledger.ds_tot / ledger.w if abs(ledger.w) > 1e-300 else math.inf
        table.append(*_ledger_row(
            (index, slot.theta_start, slot.baths.t_c, slot.baths.t_h),
            ledger, ep,
        ))
    # totals row: unit 0, bath columns zeroed, other columns summed
    ledgers = result.per_unit_ledgers
    table.append(
        0, schedule.omega, 0.0, 0.0,
        result.total_w, result.total_q_c, result.total_q_h,
        sum(l.ds_baths for l in ledgers), sum(l.ds_acpt for l in ledgers),
        sum(l.ds_dnr for l in ledgers), sum(l.ds_tot for l in ledgers),
        sum(l.c_extracted for l in ledgers), sum(l.c_injected for l in ledgers),
        result.ep,
    )
    return table


def _run_omega_pi(cfg: ExperimentConfig) -> analysis.SweepTable:
    levels, baths = _levels_baths(cfg)
    schedule = collective.omega_pi_schedule(levels, baths, cfg.n)
    result = collective.run_collective_cycle(schedule)
    table = analysis.SweepTable(
        ("unit", "theta_start", "t_c", "t_h", "w", "q_c", "q_h",
         "ds_baths", "d_step")
    )
    for index, (slot, ledger) in enumerate(
        zip(schedule.per_unit, result.per_unit_ledgers), start=1
    ):
        if index < schedule.n_units:
            p_next = schedule.per_unit[index].p_eq
        else:
            p_next = schedule.populations_at(schedule.omega)
        d_step = relative_entropy(
            np.diag(p_next).astype(complex),
            np.diag(slot.p_eq).astype(complex),
        )
        table.append(index, slot.theta_start, slot.baths.t_c, slot.baths.t_h,
                     ledger.w, ledger.q_c, ledger.q_h, ledger.ds_baths, d_step)
    return table


def _run_ep_scaling(cfg: ExperimentConfig) -> analysis.SweepTable:
    levels, baths = _levels_baths(cfg)
    table = analysis.SweepTable(("n", "ep", "total_w", "total_ds"))
    for n in sorted(cfg.n_list):
        schedule = collective.omega_pi_schedule(levels, baths, n)
        result = collective.run_collective_cycle(schedule)
        table.append(n, result.ep, result.total_w, result.total_ds)
    return table


def _run_split_cycle(cfg: ExperimentConfig) -> analysis.SweepTable:
    levels, baths = _levels_baths(cfg)
    unit = engine.EngineUnit(levels, baths, cfg.delta_theta)
    wanted = sorted(set(cfg.n_list))
    results = dict(engine.split_cycle_experiment(unit, max(wanted)))
    table = analysis.SweepTable(("n", "ep"))
    for n in wanted:
        table.append(n, results[n])
    return table


def _run_no_inversion(cfg: ExperimentConfig) -> analysis.SweepTable:
    levels, baths = _levels_baths(cfg)
    unit = engine.EngineUnit(levels, baths, cfg.delta_theta)
    p_eq = thermal.gibbs_steady_state(levels, baths)
    donor = engine.make_matched_donor(p_eq, coherence_fraction=1.0)
    ledger = engine.run_cycle_no_inversion(unit, donor)
    table = analysis.SweepTable(
        _LEDGER_COLUMNS[:-1] + ("efficiency", "gap_efficiency")
    )
    table.append(
        ledger.w, ledger.q_c, ledger.q_h, ledger.ds_baths, ledger.ds_acpt,
        ledger.ds_dnr, ledger.ds_tot, ledger.c_extracted, ledger.c_injected,
        ledger.w / ledger.q_h, thermal.efficiency(levels),
    )
    return table


def run_experiment(cfg: ExperimentConfig) -> analysis.SweepTable:
    """Dispatch a resolved config to its experiment builder."""
    levels, baths = _levels_baths(cfg)
    if cfg.experiment == "single":
        return _run_single(cfg)
    if cfg.experiment == "collective":
        return _run_collective(cfg)
    if cfg.experiment == "boost-curve":
        return analysis.boost_curve(levels, baths, cfg.delta_theta, cfg.n_list)
    if cfg.experiment == "ep-scaling":
        return _run_ep_scaling(cfg)
    if cfg.experiment == "ep-ratio":
        return analysis.ep_ratio_curve(levels, baths, cfg.n_list, cfg.baseline)
    if cfg.experiment == "omega-pi":
        return _run_omega_pi(cfg)
    if cfg.experiment == "split-cycle":
        return _run_split_cycle(cfg)
    if cfg.experiment == "no-inversion":
        return _run_no_inversion(cfg)
    raise ConfigError(f"unknown experiment {cfg.experiment!r}")


def header_lines(cfg: ExperimentConfig) -> tuple[str, ...]:
    """The resolved config, echoed as comment lines of the CSV."""
    lines = [f"experiment={cfg.experiment}"]
    for key in ("delta_e_c", "delta_e_h", "t_c", "t_h"):
        lines.append(f"{key}={getattr(cfg, key):.17g}")
    if cfg.n is not None:
        lines.append(f"n={cfg.n}")
    if cfg.n_list is not None:
        lines.append("n_list=" + ",".join(str(n) for n in cfg.n_list))
    if cfg.delta_theta is not None:
        lines.append(f"delta_theta={cfg.delta_theta:.17g}")
    if cfg.omega is not None:
        lines.append(f"omega={cfg.omega:.17g}")
    if cfg.experiment == "ep-ratio":
        lines.append(f"baseline={cfg.baseline}")
    lines.append(f"output={cfg.output}")
    levels, baths = _levels_baths(cfg)
    p_eq = thermal.gibbs_steady_state(levels, baths)
    lines.append(f"derived_dp0={p_eq[2] - p_eq[1]:.17g}")
    if cfg.delta_theta is not None:
        lines.append(f"derived_m={collective.m_units_for(cfg.delta_theta)}")
    return tuple(lines)


def write_table(cfg: ExperimentConfig, table: analysis.SweepTable, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as stream:
        table.write_csv(stream, header_lines(cfg))


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="qotto",
        description="Collective three-level Otto engine simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_parser = sub.add_parser("run", help="run an experiment config")
    run_parser.add_argument("config", help="path to a key=value config file")
    run_parser.add_argument("--output", help="override the output CSV path")

    selftest_parser = sub.add_parser(
        "selftest", help="run the invariant suite and emit reference CSVs"
    )
    selftest_parser.add_argument(
        "--output-dir", default="selftest_out",
        help="directory for the generated CSVs (default: selftest_out)",
    )

    sub.add_parser("list-experiments", help="list available experiments")

    args = parser.parse_args(argv)

    if args.command == "list-experiments":
        for name in EXPERIMENTS:
            print(name)
        return 0

    if args.command == "selftest":
        from .selftest import run_selftest

        return run_selftest(args.output_dir)

    try:
        with open(args.config, "r", encoding="utf-8") as handle:
            cfg = parse_config(handle.read())
        table = run_experiment(cfg)
        output = args.output or cfg.output
        write_table(cfg, table, output)
    except QottoError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"IOError: {exc}", file=sys.stderr)
        return 2
    print(output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
