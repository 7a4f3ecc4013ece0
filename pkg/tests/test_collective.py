import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from qotto import (
    EngineUnit,
    InvalidArgument,
    WrongOmega,
    apply_work_unitary,
    build_schedule,
    coherence_measure,
    collective_work_closed_form,
    gibbs_steady_state,
    m_units_for,
    omega_pi_schedule,
    omega_pi_total_entropy,
    pairwise_residual,
    relative_entropy,
    run_collective_cycle,
    run_cycle,
    saturated_work,
    swo_work,
    temperatures_from_populations,
)
from conftest import REF_DP0, random_engine_setup


class TestBuildSchedule:
    def test_single_unit_uses_base_baths(self, ref_levels, ref_baths):
        schedule = build_schedule(ref_levels, ref_baths, 1, 0.4)
        assert schedule.per_unit[0].baths == ref_baths
        assert schedule.per_unit[0].theta_start == 0.0
        assert_allclose(schedule.per_unit[0].p_eq,
                        gibbs_steady_state(ref_levels, ref_baths))

    def test_shared_invariants(self, ref_levels, ref_baths):
        schedule = omega_pi_schedule(ref_levels, ref_baths, 17)
        for slot in schedule.per_unit:
            p = slot.p_eq
            assert abs(p[0] - schedule.invariant_p1) < 1e-12
            assert abs((p[1] + p[2]) - schedule.invariant_s) < 1e-12

    def test_chaining_condition(self, ref_levels, ref_baths):
        # each unit's fixed point carries exactly the populations the
        # traveling state has when it arrives there
        schedule = build_schedule(ref_levels, ref_baths, 12, math.pi / 15)
        traveling = np.diag(schedule.per_unit[0].p_eq).astype(complex)
        for nxt in schedule.per_unit[1:]:
            traveling = apply_work_unitary(traveling, schedule.delta_theta)
            assert_allclose(np.diag(traveling).real, nxt.p_eq, atol=1e-12)
            round_trip = gibbs_steady_state(ref_levels, nxt.baths)
            assert_allclose(round_trip, nxt.p_eq, atol=1e-12)

    def test_final_rotation_reaches_the_mirror(self, ref_levels, ref_baths):
        # the populations handed to "nothing" by the last unit of a pi
        # chain are the mirror of the base state, whose temperatures are
        # exactly (2.5, 1.0) for the reference parameters
        schedule = omega_pi_schedule(ref_levels, ref_baths, 20)
        mirror = schedule.populations_at(schedule.omega)
        p = gibbs_steady_state(ref_levels, ref_baths)
        assert_allclose(mirror, [p[0], p[2], p[1]], atol=1e-12)
        baths = temperatures_from_populations(ref_levels, mirror)
        assert_allclose([baths.t_c, baths.t_h], [2.5, 1.0], rtol=1e-12)

    def test_odd_chain_middle_unit_sits_above_equator(self, ref_levels, ref_baths):
        for n in (7, 15, 33):
            schedule = omega_pi_schedule(ref_levels, ref_baths, n)
            middle = math.ceil(n / 2)
            theta = schedule.per_unit[middle - 1].theta_start
            assert_allclose(math.pi / 2 - theta, math.pi / (2 * n), atol=1e-12)

    def test_guards(self, ref_levels, ref_baths):
        with pytest.raises(InvalidArgument):
            build_schedule(ref_levels, ref_baths, 0, 0.1)
        with pytest.raises(InvalidArgument):
            build_schedule(ref_levels, ref_baths, 5, 0.0)
        with pytest.raises(InvalidArgument):
            build_schedule(ref_levels, ref_baths, 5, 1.0)  # omega > pi


class TestRunCollectiveCycle:
    def test_single_unit_chain_equals_bare_cycle(self, ref_levels, ref_baths):
        schedule = build_schedule(ref_levels, ref_baths, 1, 0.6)
        result = run_collective_cycle(schedule)
        reference = run_cycle(EngineUnit(ref_levels, ref_baths, 0.6), "bare")
        ledger = result.per_unit_ledgers[0]
        assert ledger == reference
        assert result.total_w == reference.w
        assert result.total_ds == reference.ds_baths

    def test_pi_chain_extracts_the_full_inversion(self, ref_levels, ref_baths):
        schedule = omega_pi_schedule(ref_levels, ref_baths, 10)
        result = run_collective_cycle(schedule)
        assert_allclose(result.total_w, REF_DP0, atol=1e-12)

    def test_totals_match_ledgers(self, ref_levels, ref_baths):
        schedule = omega_pi_schedule(ref_levels, ref_baths, 9)
        result = run_collective_cycle(schedule)
        assert_allclose(result.total_w,
                        sum(l.w for l in result.per_unit_ledgers), atol=1e-15)
        assert_allclose(result.total_q_h,
                        sum(l.q_h for l in result.per_unit_ledgers), atol=1e-15)
        assert_allclose(result.total_ds,
                        sum(l.ds_baths for l in result.per_unit_ledgers),
                        atol=1e-15)

    def test_per_unit_invariants(self, ref_levels, ref_baths):
        schedule = omega_pi_schedule(ref_levels, ref_baths, 14)
        result = run_collective_cycle(schedule)
        eta = 1.0 - ref_levels.delta_e_c / ref_levels.delta_e_h
        for i, ledger in enumerate(result.per_unit_ledgers, start=1):
            assert abs(ledger.w - (ledger.q_h + ledger.q_c)) < 1e-12
            assert ledger.ds_tot >= -1e-10
            assert abs(ledger.w / ledger.q_h - eta) < 1e-10
            if i < schedule.n_units:
                # every unit with an acceptor obeys the populations-only
                # total-entropy identity
                p_now = schedule.per_unit[i - 1].p_eq
                p_next = schedule.per_unit[i].p_eq
                d = relative_entropy(np.diag(p_next).astype(complex),
                                     np.diag(p_now).astype(complex))
                assert abs(ledger.ds_tot - d) < 1e-10

    def test_bath_entropy_sign_pattern(self, ref_levels, ref_baths):
        # upper-hemisphere units heat the books, lower-hemisphere units
        # clean them; the unit starting exactly on the equator is neutral
        schedule = omega_pi_schedule(ref_levels, ref_baths, 20)
        result = run_collective_cycle(schedule)
        ds = [l.ds_baths for l in result.per_unit_ledgers]
        assert all(v > 0 for v in ds[:10])
        assert abs(ds[10]) < 1e-12
        assert all(v < 0 for v in ds[11:])

    def test_collective_efficiency(self, ref_levels, ref_baths):
        schedule = omega_pi_schedule(ref_levels, ref_baths, 12)
        result = run_collective_cycle(schedule)
        eta = 1.0 - ref_levels.delta_e_c / ref_levels.delta_e_h
        assert abs(result.total_w / result.total_q_h - eta) < 1e-10

    def test_mirror_coherence_symmetry(self, ref_levels, ref_baths):
        schedule = omega_pi_schedule(ref_levels, ref_baths, 16)
        result = run_collective_cycle(schedule)
        ledgers = result.per_unit_ledgers
        n = schedule.n_units
        for i in range(n):
            assert abs(
                ledgers[i].c_injected - ledgers[n - 1 - i].c_extracted
            ) < 1e-10


class TestClosedForms:
    def test_zero_angle(self, ref_levels):
        assert collective_work_closed_form(ref_levels, 0.3, 0.0) == 0.0

    def test_reference_pi_value(self, ref_levels):
        assert_allclose(
            collective_work_closed_form(ref_levels, REF_DP0, math.pi),
            REF_DP0, atol=1e-15,
        )

    def test_matches_simulation(self, rng):
        for _ in range(50):
            levels, baths = random_engine_setup(rng)
            n = int(rng.integers(1, 30))
            omega = rng.uniform(0.3, math.pi)
            schedule = build_schedule(levels, baths, n, omega / n)
            result = run_collective_cycle(schedule)
            formula = collective_work_closed_form(levels, schedule.dp0,
                                                  schedule.omega)
            assert abs(result.total_w - formula) <= 1e-10 * abs(formula)

    def test_negative_inversion_rejected(self, ref_levels):
        with pytest.raises(InvalidArgument):
            collective_work_closed_form(ref_levels, -0.1, 1.0)


class TestStandaloneBaselines:
    def test_single_copy(self, ref_levels, ref_baths):
        ledger = run_cycle(EngineUnit(ref_levels, ref_baths, 0.35), "bare")
        assert_allclose(swo_work(ref_levels, REF_DP0, 1, 0.35), ledger.w,
                        atol=1e-12)

    def test_ten_copies_frozen_value(self, ref_levels):
        # 10 (dEh - dEc) dp0 sin^2(pi/20), frozen at 50 digits
        assert_allclose(swo_work(ref_levels, REF_DP0, 10, math.pi / 10),
                        0.072505581757257208, atol=1e-15)

    def test_boost_ratio_at_pi(self, ref_levels):
        w_coll = collective_work_closed_form(ref_levels, REF_DP0, math.pi)
        w_swo = swo_work(ref_levels, REF_DP0, 10, math.pi / 10)
        ratio = w_coll / w_swo
        assert_allclose(ratio, 4.0863458189061401, rtol=1e-12)
        assert ratio >= (4.0 / math.pi**2) * 10

    def test_boost_bound_and_small_angle_limit(self, ref_levels):
        for n in range(2, 65):
            ratio = collective_work_closed_form(
                ref_levels, REF_DP0, math.pi
            ) / swo_work(ref_levels, REF_DP0, n, math.pi / n)
            assert ratio >= (4.0 / math.pi**2) * n - 1e-9
        small = collective_work_closed_form(ref_levels, REF_DP0, 0.01) / swo_work(
            ref_levels, REF_DP0, 50, 0.01 / 50
        )
        assert small == pytest.approx(50.0, rel=1e-4)


class TestSaturatedWork:
    def test_one_complete_group(self, ref_levels):
        m = 20
        value = saturated_work(ref_levels, REF_DP0, m, m, math.pi / 20)
        assert_allclose(value, REF_DP0, atol=1e-12)

    def test_reference_partial_group(self, ref_levels):
        # floor(45/20) = 2 complete groups plus a 5-unit tail:
        # dp0 (2 + sin^2(pi/8)), frozen at 50 digits
        value = saturated_work(ref_levels, REF_DP0, 45, 20, math.pi / 20)
        assert_allclose(value, 0.63595538504961942, atol=1e-14)
        assert_allclose(value / REF_DP0, 2.1464466094067262, rtol=1e-12)

    def test_below_saturation_reduces_to_closed_form(self, ref_levels):
        for n in range(1, 20):
            assert_allclose(
                saturated_work(ref_levels, REF_DP0, n, 20, math.pi / 20),
                collective_work_closed_form(ref_levels, REF_DP0, n * math.pi / 20),
                atol=1e-15,
            )

    def test_grouping_matches_simulation(self, ref_levels, ref_baths):
        m = 8
        dtheta = math.pi / m
        for n in (11, 16, 29):
            complete, remainder = divmod(n, m)
            total = complete * run_collective_cycle(
                omega_pi_schedule(ref_levels, ref_baths, m)
            ).total_w
            if remainder:
                total += run_collective_cycle(
                    build_schedule(ref_levels, ref_baths, remainder, dtheta)
                ).total_w
            assert_allclose(
                saturated_work(ref_levels, REF_DP0, n, m, dtheta), total,
                rtol=1e-10,
            )

    def test_m_units_consistency_enforced(self, ref_levels):
        with pytest.raises(InvalidArgument):
            saturated_work(ref_levels, REF_DP0, 10, 7, math.pi / 20)
        assert m_units_for(math.pi / 20) == 20


class TestPairwiseResidual:
    def test_equals_relative_entropy_terms(self, ref_levels, ref_baths):
        schedule = omega_pi_schedule(ref_levels, ref_baths, 6)
        result = run_collective_cycle(schedule)
        for i in (1, 2, 3):
            residual = pairwise_residual(result, schedule, i)
            p_list = [slot.p_eq for slot in schedule.per_unit]
            p_list.append(schedule.populations_at(schedule.omega))
            d_i = relative_entropy(np.diag(p_list[i]).astype(complex),
                                   np.diag(p_list[i - 1]).astype(complex))
            j = 6 + 1 - i
            d_j = relative_entropy(np.diag(p_list[j]).astype(complex),
                                   np.diag(p_list[j - 1]).astype(complex))
            assert abs(residual - (d_i + d_j)) < 1e-10

    def test_middle_unit_pairs_with_itself(self, ref_levels, ref_baths):
        schedule = omega_pi_schedule(ref_levels, ref_baths, 7)
        result = run_collective_cycle(schedule)
        residual = pairwise_residual(result, schedule, 4)
        assert_allclose(residual,
                        2.0 * result.per_unit_ledgers[3].ds_baths, atol=1e-15)

    def test_index_bounds(self, ref_levels, ref_baths):
        schedule = omega_pi_schedule(ref_levels, ref_baths, 6)
        result = run_collective_cycle(schedule)
        with pytest.raises(InvalidArgument):
            pairwise_residual(result, schedule, 0)
        with pytest.raises(InvalidArgument):
            pairwise_residual(result, schedule, 7)

    def test_requires_pi_chain(self, ref_levels, ref_baths):
        schedule = build_schedule(ref_levels, ref_baths, 6, math.pi / 12)
        result = run_collective_cycle(schedule)
        with pytest.raises(WrongOmega):
            pairwise_residual(result, schedule, 1)


class TestOmegaPiTotalEntropy:
    def test_single_unit_directly(self, ref_levels, ref_baths):
        schedule = omega_pi_schedule(ref_levels, ref_baths, 1)
        p = gibbs_steady_state(ref_levels, ref_baths)
        mirror = np.array([p[0], p[2], p[1]])
        expected = relative_entropy(np.diag(mirror).astype(complex),
                                    np.diag(p).astype(complex))
        assert_allclose(omega_pi_total_entropy(schedule), expected, atol=1e-13)

    def test_matches_simulated_heats(self, ref_levels, ref_baths):
        for n in (2, 7, 20, 33):
            schedule = omega_pi_schedule(ref_levels, ref_baths, n)
            result = run_collective_cycle(schedule)
            assert abs(result.total_ds - omega_pi_total_entropy(schedule)) < 1e-10

    def test_wrong_omega_rejected(self, ref_levels, ref_baths):
        schedule = build_schedule(ref_levels, ref_baths, 6, math.pi / 12)
        with pytest.raises(WrongOmega):
            omega_pi_total_entropy(schedule)

    def test_partial_chain_total_includes_residual_coherence(
        self, ref_levels, ref_baths
    ):
        # below omega = pi the last unit's leftover coherence is erased by
        # its baths: total entropy = sum of step divergences + C(last)
        schedule = build_schedule(ref_levels, ref_baths, 6, math.pi / 12)
        result = run_collective_cycle(schedule)
        steps = 0.0
        for i, slot in enumerate(schedule.per_unit):
            p_next = (schedule.per_unit[i + 1].p_eq if i + 1 < 6
                      else schedule.populations_at(schedule.omega))
            steps += relative_entropy(np.diag(p_next).astype(complex),
                                      np.diag(slot.p_eq).astype(complex))
        base = np.diag(schedule.per_unit[0].p_eq).astype(complex)
        last_state = apply_work_unitary(base, schedule.omega)
        residual = coherence_measure(last_state)
        assert residual > 1e-4
        assert abs(result.total_ds - (steps + residual)) < 1e-10
