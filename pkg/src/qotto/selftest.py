"""Built-in invariant suite and reference-CSV generator.

Runs a deterministic (seeded) battery of the package's core identities
and writes one CSV per figure-worthy experiment, so downstream plotting
has known-good inputs.  Every check prints one ok/FAIL line.
"""

from __future__ import annotations

import math
import os

import numpy as np

from . import analysis, collective, engine, thermal
from .cli import ExperimentConfig, header_lines, run_experiment
from .qutrit import (
    BlochVector23,
    apply_work_unitary,
    from_bloch,
    relative_entropy,
    to_bloch,
    von_neumann_entropy,
)

REF_LEVELS = thermal.LevelStructure(1.0, 2.0)
REF_BATHS = thermal.BathPair(0.5, 5.0)


def _random_engine_setup(rng):
    dec = rng.uniform(0.3, 2.0)
    deh = dec * rng.uniform(1.2, 3.0)
    t_c = rng.uniform(0.2, 2.0)
    # keep a margin inside the engine regime so inversion is not degenerate
    t_h = t_c * (deh / dec) * rng.uniform(1.3, 4.0)
    return thermal.LevelStructure(dec, deh), thermal.BathPair(t_c, t_h)


def _check_gibbs_round_trip(rng):
    worst = 0.0
    for _ in range(200):
        levels, baths = _random_engine_setup(rng)
        p = thermal.gibbs_steady_state(levels, baths)
        back = thermal.temperatures_from_populations(levels, p)
        worst = max(worst, abs(back.t_c - baths.t_c) / baths.t_c,
                    abs(back.t_h - baths.t_h) / baths.t_h)
    return worst < 1e-12, f"max relative temperature error {worst:.3g}"


def _check_entropy_identities(rng):
    worst = 0.0
    for _ in range(200):
        p = rng.dirichlet((2.0, 2.0, 2.0))
        q = rng.dirichlet((2.0, 2.0, 2.0))
        rho1 = np.diag(q).astype(complex)
        rho2 = np.diag(p).astype(complex)
        ds = von_neumann_entropy(rho2) - von_neumann_entropy(rho1)
        first = -float(((p - q) * np.log(q)).sum()) - relative_entropy(rho2, rho1)
        second = -float(((p - q) * np.log(p)).sum()) + relative_entropy(rho1, rho2)
        worst = max(worst, abs(ds - first), abs(ds - second))
    return worst < 1e-9, f"max identity violation {worst:.3g}"


def _check_unitary_conservation(rng):
    worst = 0.0
    for _ in range(200):
        p1 = rng.uniform(0.1, 0.8)
        s = 1.0 - p1
        radius = s * rng.uniform(0.0, 1.0)
        angle = rng.uniform(-math.pi, math.pi)
        bloch = BlochVector23(y=radius * math.sin(angle),
                              z=radius * math.cos(angle))
        state = from_bloch(p1, bloch, s)
        rotated = apply_work_unitary(state, rng.uniform(0.0, math.pi))
        worst = max(
            worst,
            abs(np.linalg.eigvalsh(rotated) - np.linalg.eigvalsh(state)).max(),
            abs(rotated[0, 0].real - p1),
            abs(to_bloch(rotated).radius - radius),
        )
    return worst < 1e-12, f"max conserved-quantity drift {worst:.3g}"


def _check_total_entropy_identity(rng):
    worst = 0.0
    min_ds = math.inf
    for _ in range(300):
        levels, baths = _random_engine_setup(rng)
        unit = engine.EngineUnit(levels, baths, rng.uniform(0.05, math.pi))
        p_eq = thermal.gibbs_steady_state(levels, baths)
        if rng.uniform() < 0.5:
            ledger = engine.run_cycle(unit, "with_ce")
        else:
            donor = engine.make_matched_donor(p_eq, rng.uniform(-1.0, 1.0))
            ledger = engine.run_cycle(unit, "with_ce_ci", donor=donor)
        # reconstruct the post-rotation populations from the heats alone
        p_w = np.array([p_eq[0],
                        p_eq[1] - ledger.q_c / levels.delta_e_c,
                        p_eq[2] - ledger.q_h / levels.delta_e_h])
        reference = relative_entropy(
            np.diag(p_w).astype(complex), np.diag(p_eq).astype(complex)
        )
        worst = max(worst, abs(ledger.ds_tot - reference))
        min_ds = min(min_ds, ledger.ds_tot)
    ok = worst < 1e-10 and min_ds > -1e-10
    return ok, f"max |ds_tot - D| {worst:.3g}, min ds_tot {min_ds:.3g}"


def _check_bare_ep_closed_form():
    closed = engine.ep_closed_form_no_ce(REF_LEVELS, REF_BATHS)
    worst = 0.0
    for dtheta in (math.pi / 64, math.pi / 16, math.pi / 4):
        unit = engine.EngineUnit(REF_LEVELS, REF_BATHS, dtheta)
        ep = engine.entropy_pollution(engine.run_cycle(unit, "bare"))
        worst = max(worst, abs(ep - closed))
    return worst < 1e-8, f"closed form {closed:.6g}, max deviation {worst:.3g}"


def _check_collective_telescoping(rng):
    worst = 0.0
    for _ in range(30):
        levels, baths = _random_engine_setup(rng)
        n = int(rng.integers(1, 33))
        omega = rng.uniform(0.3, math.pi)
        schedule = collective.build_schedule(levels, baths, n, omega / n)
        result = collective.run_collective_cycle(schedule)
        formula = collective.collective_work_closed_form(
            levels, schedule.dp0, schedule.omega
        )
        worst = max(worst, abs(result.total_w - formula) / formula)
    return worst < 1e-10, f"max relative work defect {worst:.3g}"


def _check_omega_pi_entropy():
    worst = 0.0
    for n in (6, 20, 33):
        schedule = collective.omega_pi_schedule(REF_LEVELS, REF_BATHS, n)
        result = collective.run_collective_cycle(schedule)
        reference = collective.omega_pi_total_entropy(schedule)
        worst = max(worst, abs(result.total_ds - reference))
    return worst < 1e-10, f"max |sum ds_baths - sum D| {worst:.3g}"


def _check_mirror_coherence():
    # at omega = pi, unit i's incoming coherence equals unit N+1-i's
    # outgoing coherence (both vanish at the poles)
    schedule = collective.omega_pi_schedule(REF_LEVELS, REF_BATHS, 20)
    result = collective.run_collective_cycle(schedule)
    ledgers = result.per_unit_ledgers
    worst = max(
        abs(ledgers[i].c_injected - ledgers[20 - 1 - i].c_extracted)
        for i in range(20)
    )
    return worst < 1e-10, f"max mirror coherence defect {worst:.3g}"


def _check_boost_bound():
    worst = math.inf
    for n in range(2, 65):
        schedule = collective.omega_pi_schedule(REF_LEVELS, REF_BATHS, n)
        w_coll = collective.collective_work_closed_form(
            REF_LEVELS, schedule.dp0, schedule.omega
        )
        w_swo = collective.swo_work(REF_LEVELS, schedule.dp0, n, schedule.delta_theta)
        worst = min(worst, w_coll / w_swo - (4.0 / math.pi ** 2) * n)
    return worst > -1e-9, f"min boost margin above 4N/pi^2: {worst:.3g}"


CHECKS = (
    ("gibbs round trip", _check_gibbs_round_trip, True),
    ("entropy change identities", _check_entropy_identities, True),
    ("work unitary conserved quantities", _check_unitary_conservation, True),
    ("total entropy = D(p_w||p_eq), second law", _check_total_entropy_identity, True),
    ("bare entropy pollution closed form", _check_bare_ep_closed_form, False),
    ("collective work telescoping", _check_collective_telescoping, True),
    ("omega-pi entropy identity", _check_omega_pi_entropy, False),
    ("mirror unit coherence symmetry", _check_mirror_coherence, False),
    ("collective work boost bound", _check_boost_bound, False),
)

# reference CSVs, one per figure kind (plus the raw per-unit chain table)
SELFTEST_CONFIGS = {
    "boost.csv": ExperimentConfig(
        experiment="boost-curve", delta_theta=math.pi / 20,
        n_list=tuple(range(1, 101)), output="boost.csv",
    ),
    "omega_pi_units.csv": ExperimentConfig(
        experiment="omega-pi", n=20, delta_theta=math.pi / 20, omega=math.pi,
        output="omega_pi_units.csv",
    ),
    "ep_ratio_sepo.csv": ExperimentConfig(
        experiment="ep-ratio", baseline="sepo", n_list=tuple(range(2, 41)),
        output="ep_ratio_sepo.csv",
    ),
    "ep_scaling.csv": ExperimentConfig(
        experiment="ep-scaling", n_list=tuple(2 ** k for k in range(3, 10)),
        output="ep_scaling.csv",
    ),
}


def run_selftest(output_dir: str = "selftest_out") -> int:
    """Run every invariant check, write the reference CSVs, return 0/1."""
    rng = np.random.default_rng(20240725)
    failures = 0
    for name, check, needs_rng in CHECKS:
        ok, detail = check(rng) if needs_rng else check()
        print(f"{'ok  ' if ok else 'FAIL'} {name}: {detail}")
        failures += 0 if ok else 1

    os.makedirs(output_dir, exist_ok=True)
    for filename, cfg in SELFTEST_CONFIGS.items():
        table = run_experiment(cfg)
        path = os.path.join(output_dir, filename)
        with open(path, "w", encoding="utf-8", newline="\n") as stream:
            table.write_csv(stream, header_lines(cfg))
        print(f"ok   wrote {path}")

    if failures:
        print(f"{failures} check(s) FAILED")
        return 1
    print("all checks passed")
    return 0
