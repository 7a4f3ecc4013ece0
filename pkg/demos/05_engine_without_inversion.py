"""An engine with a single bath temperature and no population inversion.

With t_c = t_h the Gibbs state keeps the hot excited level UNDER the
cold one, so the stochastic route to work is closed: a bare rotation
only pumps energy in.  Injecting coherence from a matched donor tilts
the Bloch vector off the south pole, and the same rotation now extracts
work, at the usual gap efficiency, with the donor's entropy increase
keeping the books legal.
"""

import math

from qotto import (
    BathPair,
    EngineUnit,
    LevelStructure,
    gibbs_steady_state,
    make_matched_donor,
    run_cycle_no_inversion,
)

levels = LevelStructure(1.0, 2.0)
baths = BathPair(1.0, 1.0)
p_eq = gibbs_steady_state(levels, baths)
print(f"single-temperature fixed point: p = {p_eq}")
print(f"no inversion: p3 - p2 = {p_eq[2] - p_eq[1]:+.6f}\n")

unit = EngineUnit(levels, baths, math.pi / 4)

print(f"{'donor coherence':>16} {'w':>12} {'q_h':>12} {'w/q_h':>8} {'ds_tot':>10}")
for fraction in (0.0, 0.25, 0.5, 0.75, 1.0):
    donor = make_matched_donor(p_eq, coherence_fraction=fraction)
    ledger = run_cycle_no_inversion(unit, donor)
    eta = ledger.w / ledger.q_h if abs(ledger.q_h) > 1e-15 else float("nan")
    print(f"{fraction:16.2f} {ledger.w:+12.6f} {ledger.q_h:+12.6f} "
          f"{eta:8.3f} {ledger.ds_tot:10.6f}")

print()
print("a coherence-free donor leaves the rotation pushing TOWARD inversion")
print("(w < 0, the drive pays); enough coherence turns the device into an")
print("engine, and its efficiency stays pinned at 1 - dEc/dEh = 0.5 because")
print("the donor swap moves entropy, never energy.")
