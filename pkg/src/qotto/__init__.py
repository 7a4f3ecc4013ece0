"""qotto: collective three-level Otto engines with coherence swapping.

A deterministic numpy toolkit for the over-thermalized two-stroke
three-level engine, the coherence extraction/injection swaps that couple
units, the resulting N-unit collective machine, and the entropy
accounting (entropy pollution, scaling laws) around all of it.
"""

from .errors import (
    ConfigError,
    InfiniteDivergence,
    InvalidAcceptor,
    InvalidArgument,
    InvalidState,
    NegativeTemperatureRequired,
    NotAnEngine,
    PopulationMismatch,
    QottoError,
    WrongOmega,
    ZeroWork,
)
from .qutrit import (
    BlochVector23,
    apply_work_unitary,
    check_populations,
    check_state,
    coherence_measure,
    dephase,
    from_bloch,
    relative_entropy,
    to_bloch,
    von_neumann_entropy,
    work_unitary,
)
from .thermal import (
    BathPair,
    HeatLedger,
    LevelStructure,
    carnot_efficiency,
    efficiency,
    gibbs_steady_state,
    mean_energy,
    temperatures_from_populations,
    thermal_stroke,
)
from .engine import (
    CycleLedger,
    EngineUnit,
    coherence_extract,
    coherence_inject,
    entropy_pollution,
    ep_closed_form_no_ce,
    make_matched_donor,
    run_cycle,
    run_cycle_no_inversion,
    split_cycle_experiment,
)
from .collective import (
    CollectiveRunResult,
    CollectiveSchedule,
    UnitSchedule,
    build_schedule,
    collective_work_closed_form,
    m_units_for,
    omega_pi_schedule,
    omega_pi_total_entropy,
    pairwise_residual,
    run_collective_cycle,
    saturated_work,
    swo_work,
)
from .analysis import (
    SweepTable,
    boost_curve,
    ep_ratio_curve,
    loglog_slope,
    sepo_reference,
    w_over_ep,
    w_over_ep_ratio_curve,
)

__version__ = "0.1.0"
