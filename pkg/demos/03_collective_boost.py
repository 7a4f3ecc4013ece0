"""Collective chains: quadratic work boost and its saturation.

N weakly driven units pass one traveling state down the line, each
continuing the rotation where the previous one stopped.  At fixed
per-unit drive dtheta the chain's work grows like N^2 until the
accumulated angle hits pi, after which grouping into pi-sized chains
keeps a 4M/pi^2 advantage over standalone operation.

Reproduces the crossover table (quadratic -> boosted-linear) for M = 20.
"""

import math

import numpy as np

from qotto import (
    BathPair,
    LevelStructure,
    boost_curve,
    build_schedule,
    collective_work_closed_form,
    gibbs_steady_state,
    m_units_for,
    run_collective_cycle,
    saturated_work,
    swo_work,
)

levels = LevelStructure(1.0, 2.0)
baths = BathPair(0.5, 5.0)
p_eq = gibbs_steady_state(levels, baths)
dp0 = p_eq[2] - p_eq[1]

dtheta = math.pi / 20
m = m_units_for(dtheta)
print(f"per-unit drive dtheta = pi/20, so m = {m} units complete a pi turn\n")

print("simulated chain vs closed form (E_h - E_c) dp0 sin^2(omega/2):")
for n in (1, 5, 10, 20):
    schedule = build_schedule(levels, baths, n, dtheta)
    result = run_collective_cycle(schedule)
    formula = collective_work_closed_form(levels, dp0, n * dtheta)
    print(f"  n = {n:3d}: simulated {result.total_w:.9f}   "
          f"formula {formula:.9f}   defect {abs(result.total_w - formula):.1e}")
print()

w_1 = swo_work(levels, dp0, 1, dtheta)
print("the boost table (work relative to n standalone copies):")
print(f"  {'n':>4} {'w_coll':>12} {'w_n_swo':>12} {'boost':>8}")
for n in (2, 5, 10, 20, 40, 100, 400):
    w_coll = saturated_work(levels, dp0, n, m, dtheta)
    w_swo = swo_work(levels, dp0, n, dtheta)
    print(f"  {n:4d} {w_coll:12.6f} {w_swo:12.6f} {w_coll / w_swo:8.3f}")
print()

table = boost_curve(levels, baths, dtheta, range(1, 401))
ns = np.array(table.column("n"), dtype=float)
relative = np.array(table.column("w_coll")) / w_1
quadratic = ns[ns <= m / 4]
c = math.exp(float(np.mean(np.log(relative[: len(quadratic)] / quadratic**2))))
late = ns >= 10 * m
slope = float(np.polyfit(ns[late], relative[late], 1)[0])
print(f"quadratic regime (n <= m/4): w_coll/w_1swo ~ c n^2 with c = {c:.4f}")
print(f"saturated regime slope: {slope:.4f} vs 4m/pi^2 = {4 * m / math.pi**2:.4f}")
print("so even deep in saturation the chain beats standalone linearly,")
print(f"by the factor {slope:.2f} per added unit instead of 1.")
