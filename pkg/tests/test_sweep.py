"""Sweep grids, per-point degradation, determinism and resonance search."""

import cmath
import math

import pytest

from spinhall.qw_medium import QwParams
from spinhall.strata import ReflectionPair
from spinhall.shifts import transverse_shifts
from spinhall.sweep import (
    Scenario,
    SweepSpec,
    build_stack,
    find_resonance,
    run_sweep,
)

BREWSTER_222 = 0.97969212158629573  # atan(sqrt(2.22))


def base_qw(**overrides) -> QwParams:
    params = dict(
        gamma_bl=1.36, gamma_bd=0.68, gamma_cl=1.36, gamma_cd=0.8,
        gamma_dl=0.8, gamma_dd=0.5,
        beta=0.0184, g=-1.0, f=1.0, delta=2.0, omega_c=0.0,
    )
    params.update(overrides)
    return QwParams(**params)


def base_scenario(**overrides) -> Scenario:
    kwargs = dict(
        qw=base_qw(),
        epsilon1=2.22 + 0j,
        epsilon3=2.22 + 0j,
        d1_um=0.2,
        d2_um=5.0,
        lambda_um=1.85,
    )
    kwargs.update(overrides)
    return Scenario(**kwargs)


def vacuum_scenario() -> Scenario:
    # beta = 0 empties the middle layer; unit walls remove the interfaces
    return base_scenario(qw=base_qw(beta=0.0), epsilon1=1.0 + 0j, epsilon3=1.0 + 0j)


class TestRunSweep:
    def test_vacuum_rows_are_flagged_zeros(self):
        rows = run_sweep(vacuum_scenario(), SweepSpec("theta", 0.2, 1.2, 11))
        for row in rows:
            assert row.re_abs < 1e-14 and row.rm_abs < 1e-14
            assert row.h_singular and row.v_singular
            assert row.error is None

    def test_rows_in_ascending_order(self):
        rows = run_sweep(base_scenario(), SweepSpec("theta", 0.3, 1.2, 31))
        values = [row.value for row in rows]
        assert values == sorted(values)
        assert values[0] == 0.3 and values[-1] == 1.2

    def test_control_sweep_positive_and_non_increasing(self):
        spec = SweepSpec("omega_c", 0.0, 6.0, 61, fixed={"theta": 0.979})
        shifts = [row.delta_h_plus_lambda for row in run_sweep(base_scenario(), spec)]
        assert all(s > 0 for s in shifts)
        assert all(b <= a + 1e-12 for a, b in zip(shifts, shifts[1:]))

    def test_splitting_sweep_grows_the_shift(self):
        spec = SweepSpec("delta", 0.0, 8.0, 61, fixed={"theta": 0.979})
        rows = run_sweep(base_scenario(qw=base_qw(omega_c=2.0)), spec)
        magnitudes = [abs(row.delta_h_plus_lambda) for row in rows]
        assert all(b >= a - 1e-12 for a, b in zip(magnitudes, magnitudes[1:]))

    def test_ratio_product_is_one_when_regular(self):
        rows = run_sweep(base_scenario(), SweepSpec("theta", 0.3, 1.2, 101))
        for row in rows:
            if not (row.h_singular or row.v_singular):
                assert row.ratio_em * row.ratio_me == pytest.approx(1.0, abs=1e-9)

    def test_rows_reproduce_shift_formulas(self):
        rows = run_sweep(base_scenario(), SweepSpec("theta", 0.5, 1.1, 41))
        for row in rows:
            pair = ReflectionPair(
                r_e=row.re_abs * cmath.exp(1j * row.phi_e),
                r_m=row.rm_abs * cmath.exp(1j * row.phi_m),
            )
            again = transverse_shifts(pair, 1.85, row.value)
            assert again.delta_h_plus == pytest.approx(row.delta_h_plus_lambda, rel=1e-9)
            assert again.delta_v_plus == pytest.approx(row.delta_v_plus_lambda, rel=1e-9)

    def test_deterministic(self):
        scenario = base_scenario(qw=base_qw(omega_c=1.3))
        spec = SweepSpec("theta", 0.2, 1.3, 201)
        assert run_sweep(scenario, spec) == run_sweep(scenario, spec)

    def test_threaded_run_matches_serial(self):
        scenario = base_scenario()
        spec = SweepSpec("omega_c", 0.0, 5.0, 101, fixed={"theta": 0.979})
        assert run_sweep(scenario, spec, threads=4) == run_sweep(scenario, spec, threads=1)

    def test_dead_medium_degrades_to_error_rows(self):
        dead = QwParams(
            gamma_bl=0.0, gamma_bd=0.0, gamma_cl=0.0, gamma_cd=0.0,
            gamma_dl=0.0, gamma_dd=0.0,
            beta=0.0184, g=-1.0, f=1.0, delta=0.0, omega_c=0.0,
        )
        rows = run_sweep(base_scenario(qw=dead), SweepSpec("theta", 0.3, 1.2, 7))
        for row in rows:
            assert row.error is not None and "SingularParameterError" in row.error
            assert math.isnan(row.re_abs)
            assert row.h_singular and row.v_singular


class TestCavityResonanceStructure:
    def test_ratio_blows_up_near_brewster_angle(self):
        # the calibrated cavity nearly extinguishes TM around theta = 0.98
        from spinhall.qw_medium import susceptibility
        from spinhall.strata import Kinematics, reflection_pair

        scenario = base_scenario()
        stack = build_stack(scenario, susceptibility(scenario.qw).chi)
        pair = reflection_pair(stack, Kinematics(1.85, 0.98))
        assert abs(pair.r_e) / abs(pair.r_m) > 1e2

    def test_shift_flips_sign_across_the_resonance(self):
        from spinhall.qw_medium import susceptibility
        from spinhall.strata import Kinematics, reflection_pair

        scenario = base_scenario()
        stack = build_stack(scenario, susceptibility(scenario.qw).chi)

        def shift_at(theta):
            pair = reflection_pair(stack, Kinematics(1.85, theta))
            return transverse_shifts(pair, 1.85, theta).delta_h_plus

        below, above = shift_at(0.979), shift_at(0.98)
        assert below > 10.0   # tens of wavelengths on the low-angle flank
        assert above < -10.0  # and the opposite sign past the peak


class TestSweepSpecValidation:
    def test_unknown_variable(self):
        with pytest.raises(ValueError, match="variable"):
            SweepSpec("waist", 0.0, 1.0, 5)

    def test_reversed_range(self):
        with pytest.raises(ValueError, match="lo < hi"):
            SweepSpec("theta", 1.2, 0.3, 5)

    def test_theta_window_domain(self):
        with pytest.raises(ValueError, match=r"theta must lie in \(0, pi/2\)"):
            SweepSpec("theta", 0.0, 1.0, 5)

    def test_non_theta_sweep_needs_fixed_theta(self):
        with pytest.raises(ValueError, match="fixed"):
            SweepSpec("omega_c", 0.0, 6.0, 5)

    def test_unknown_fixed_key(self):
        with pytest.raises(ValueError, match="unknown fixed"):
            SweepSpec("omega_c", 0.0, 6.0, 5, fixed={"theta": 0.9, "waist": 1.0})


class TestFindResonance:
    def test_thick_slab_peak_at_brewster(self):
        # beta = 0 and a zero-thickness middle layer make the two walls one
        # thick slab; its TM null pins the ratio peak at atan(sqrt(eps))
        slab = base_scenario(qw=base_qw(beta=0.0), d1_um=25.0, d2_um=0.0)
        result = find_resonance(slab, (0.9, 1.05))
        assert not result.boundary
        assert result.theta_star == pytest.approx(BREWSTER_222, abs=1e-3)
        assert result.ratio_em_peak > 1e2

    def test_cavity_resonance_layout(self):
        result = find_resonance(base_scenario(), (0.9, 1.05))
        assert not result.boundary
        assert 0.9 < result.theta_star < 1.05
        assert result.ratio_em_peak > 1e2

    def test_refinement_beats_coarser_scans(self):
        scenario = base_scenario()
        result = find_resonance(scenario, (0.95, 1.0))
        chi_rows = run_sweep(scenario, SweepSpec("theta", 0.95, 1.0, 200))
        coarse_peak = max(
            row.ratio_em for row in chi_rows if not math.isnan(row.ratio_em)
        )
        assert result.ratio_em_peak >= coarse_peak

    def test_boundary_peak_warns(self):
        # thin lossless slab below its Brewster angle: the ratio climbs
        # monotonically, so the window edge holds the maximum
        slab = base_scenario(qw=base_qw(beta=0.0), d2_um=0.0)
        result = find_resonance(slab, (0.3, 0.8))
        assert result.boundary
        assert result.theta_star == 0.8

    def test_window_domain_checked(self):
        with pytest.raises(ValueError, match="window"):
            find_resonance(base_scenario(), (0.0, 1.0))


class TestScenarioValidation:
    def test_zero_wall_rejected(self):
        with pytest.raises(ValueError, match="epsilon1"):
            base_scenario(epsilon1=0.0)

    def test_negative_thickness_rejected(self):
        with pytest.raises(ValueError, match="d2_um"):
            base_scenario(d2_um=-1.0)

    def test_build_stack_layout(self):
        scenario = base_scenario()
        stack = build_stack(scenario, 0.5j)
        assert [layer.epsilon for layer in stack.layers] == [2.22 + 0j, 1.0 + 0.5j, 2.22 + 0j]
        assert [layer.thickness_um for layer in stack.layers] == [0.2, 5.0, 0.2]
