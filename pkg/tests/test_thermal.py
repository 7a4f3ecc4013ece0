import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from qotto import (
    BathPair,
    InvalidArgument,
    LevelStructure,
    NegativeTemperatureRequired,
    apply_work_unitary,
    carnot_efficiency,
    efficiency,
    gibbs_steady_state,
    mean_energy,
    temperatures_from_populations,
    thermal_stroke,
)
from conftest import REF_DP0, REF_P1, REF_P2, REF_P3, random_engine_setup


class TestTypes:
    def test_level_ordering_enforced(self):
        with pytest.raises(InvalidArgument):
            LevelStructure(2.0, 1.0)
        with pytest.raises(InvalidArgument):
            LevelStructure(-1.0, 1.0)

    def test_bath_positivity_enforced(self):
        with pytest.raises(InvalidArgument):
            BathPair(-0.5, 5.0)
        with pytest.raises(InvalidArgument):
            BathPair(0.5, math.inf)


class TestGibbsSteadyState:
    def test_reference_values(self, ref_levels, ref_baths):
        p = gibbs_steady_state(ref_levels, ref_baths)
        assert_allclose(p, [REF_P1, REF_P2, REF_P3], atol=1e-15)
        assert_allclose(p, [0.553815, 0.074951, 0.371234], atol=1e-6)
        assert_allclose(p[2] - p[1], REF_DP0, atol=1e-15)
        # second path: scalar Boltzmann factors
        z = 1.0 + math.exp(-1.0 / 0.5) + math.exp(-2.0 / 5.0)
        assert_allclose(p, [1.0 / z, math.exp(-2.0) / z, math.exp(-0.4) / z],
                        rtol=1e-14)

    def test_equal_boltzmann_factors_kill_inversion(self):
        levels = LevelStructure(1.0, 2.0)
        baths = BathPair(0.7, 1.4)  # dEc/Tc == dEh/Th
        p = gibbs_steady_state(levels, baths)
        assert_allclose(p[1], p[2], rtol=1e-14)

    def test_single_temperature_is_monotone(self):
        p = gibbs_steady_state(LevelStructure(1.0, 2.0), BathPair(1.0, 1.0))
        assert p[0] > p[1] > p[2]

    def test_ground_always_dominates(self, rng):
        for _ in range(100):
            levels, baths = random_engine_setup(rng)
            p = gibbs_steady_state(levels, baths)
            assert p[0] > p[1] and p[0] > p[2]


class TestTemperaturesFromPopulations:
    def test_round_trip_from_reference(self, ref_levels, ref_baths):
        p = gibbs_steady_state(ref_levels, ref_baths)
        baths = temperatures_from_populations(ref_levels, p)
        assert_allclose([baths.t_c, baths.t_h], [0.5, 5.0], rtol=1e-12)

    def test_mirrored_populations(self, ref_levels, ref_baths):
        # swapping the excited populations of the reference state gives
        # exactly (2.5, 1.0): the Boltzmann logs are 0.4 and 2.0
        p = gibbs_steady_state(ref_levels, ref_baths)
        mirror = np.array([p[0], p[2], p[1]])
        baths = temperatures_from_populations(ref_levels, mirror)
        assert_allclose([baths.t_c, baths.t_h], [2.5, 1.0], rtol=1e-12)

    def test_round_trip_random(self, rng):
        for _ in range(200):
            levels, baths = random_engine_setup(rng)
            p = gibbs_steady_state(levels, baths)
            back = temperatures_from_populations(levels, p)
            assert_allclose([back.t_c, back.t_h], [baths.t_c, baths.t_h],
                            rtol=1e-12)

    def test_excited_at_ground_level_rejected(self, ref_levels):
        with pytest.raises(NegativeTemperatureRequired):
            temperatures_from_populations(ref_levels, [0.4, 0.4, 0.2])
        with pytest.raises(NegativeTemperatureRequired):
            temperatures_from_populations(ref_levels, [0.3, 0.2, 0.5])


class TestThermalStroke:
    def test_gibbs_state_is_fixed_point(self, ref_levels, ref_baths):
        p = gibbs_steady_state(ref_levels, ref_baths)
        out, heats = thermal_stroke(np.diag(p).astype(complex),
                                    ref_levels, ref_baths)
        assert heats.q_c == 0.0 and heats.q_h == 0.0 and heats.ds_baths == 0.0
        assert_allclose(out, np.diag(p))

    def test_idempotent_and_diagonal(self, ref_levels, ref_baths, rng):
        from conftest import random_state

        rho = random_state(rng)
        out, _ = thermal_stroke(rho, ref_levels, ref_baths)
        assert np.max(np.abs(out - np.diag(np.diag(out)))) == 0.0
        again, heats = thermal_stroke(out, ref_levels, ref_baths)
        assert_allclose(again, out)
        assert heats.q_c == 0.0 and heats.q_h == 0.0

    def test_bath_entropy_matches_population_logs(self, rng):
        # ds_baths = -sum_j dp_j ln p_eq_j whenever the ground population
        # is untouched
        for _ in range(200):
            levels, baths = random_engine_setup(rng)
            p_eq = gibbs_steady_state(levels, baths)
            shift = min(p_eq[1], p_eq[2]) * rng.uniform(-0.9, 0.9)
            p_w = p_eq + np.array([0.0, shift, -shift])
            _, heats = thermal_stroke(np.diag(p_w).astype(complex),
                                      levels, baths)
            dp = p_w - p_eq
            reference = -float((dp * np.log(p_eq)).sum())
            assert abs(heats.ds_baths - reference) < 1e-10

    def test_heats_ignore_coherence(self, ref_levels, ref_baths, rng):
        from qotto import dephase
        from conftest import random_state

        rho = random_state(rng)
        _, with_coherence = thermal_stroke(rho, ref_levels, ref_baths)
        _, dephased = thermal_stroke(dephase(rho), ref_levels, ref_baths)
        assert with_coherence == dephased

    def test_energy_balance(self, rng):
        from conftest import random_state

        for _ in range(100):
            levels, baths = random_engine_setup(rng)
            rho = random_state(rng)
            out, heats = thermal_stroke(rho, levels, baths)
            delta_e = mean_energy(out, levels) - mean_energy(rho, levels)
            assert abs((heats.q_c + heats.q_h) - delta_e) < 1e-12


class TestEfficiencies:
    def test_gap_ratio(self, ref_levels):
        assert efficiency(ref_levels) == 0.5

    def test_carnot(self, ref_baths):
        assert carnot_efficiency(ref_baths) == 0.9

    def test_carnot_point_has_zero_inversion(self):
        levels = LevelStructure(1.0, 2.0)
        baths = BathPair(0.7, 1.4)
        assert_allclose(efficiency(levels), carnot_efficiency(baths), rtol=1e-14)
        p = gibbs_steady_state(levels, baths)
        assert abs(p[2] - p[1]) < 1e-14

    def test_engine_regime_bounded_by_carnot(self, rng):
        for _ in range(100):
            levels, baths = random_engine_setup(rng)
            assert efficiency(levels) <= carnot_efficiency(baths) + 1e-12
