"""End-to-end simulations of both cloning setups against closed forms."""

import math
from dataclasses import replace

import numpy as np
import pytest

from pccloner.cloner import (
    EQUATOR_PHASES,
    HybridConfig,
    SbsConfig,
    coincidence_project,
    coincidence_rates,
    equator_scan,
    run_hybrid,
    run_sbs,
    twirl,
    with_settings,
)
from pccloner.state import (
    DegenerateOutcomeError,
    Mode,
    ModeSet,
    PolarizationQubit,
    norm,
    product_state,
)
from pccloner.theory import (
    HYBRID_REFERENCE,
    SBS_IDEAL_R_V,
    SBS_REFERENCE,
    hybrid_filter_settings,
    hybrid_success,
    pc_fidelities,
    sbs_filter_settings,
    sbs_success,
)

F_SYM = 0.5 * (1.0 + 1.0 / math.sqrt(2.0))

IDEAL_SBS = SbsConfig(r_v=SBS_IDEAL_R_V, r_h=1.0 - SBS_IDEAL_R_V)
IDEAL_HYBRID = HybridConfig(r_fc=0.5, r_v=0.5, r_h=0.5, sigma_eta=0.5)


def sbs_config(q, r_v=SBS_REFERENCE[0], r_h=SBS_REFERENCE[1]):
    cfg = SbsConfig(r_v=r_v, r_h=r_h)
    return with_settings(cfg, sbs_filter_settings(q, r_v, r_h))


def hybrid_config(q, r_v=HYBRID_REFERENCE[0], r_h=HYBRID_REFERENCE[1]):
    cfg = HybridConfig(r_v=r_v, r_h=r_h)
    return with_settings(cfg, hybrid_filter_settings(q, r_v, r_h))


class TestIdealOperation:
    def test_symmetric_sbs(self):
        out = run_sbs(PolarizationQubit.equatorial(0.0), IDEAL_SBS)
        assert out.f1 == pytest.approx(F_SYM, abs=1e-12)
        assert out.f2 == pytest.approx(F_SYM, abs=1e-12)
        assert out.p_succ == pytest.approx(1.0 / 3.0, abs=1e-12)

    def test_symmetric_hybrid(self):
        out = run_hybrid(PolarizationQubit.equatorial(0.0), IDEAL_HYBRID)
        assert out.f1 == pytest.approx(F_SYM, abs=1e-12)
        assert out.f2 == pytest.approx(F_SYM, abs=1e-12)
        assert out.p_succ == pytest.approx(1.0 / 16.0, abs=1e-12)

    def test_default_config_is_reference_device(self):
        assert SbsConfig().r_v == SBS_REFERENCE[0]
        assert SbsConfig().r_h == SBS_REFERENCE[1]
        assert HybridConfig().r_v == HYBRID_REFERENCE[0]
        assert HybridConfig().r_fc == 0.5

    def test_vertical_input_clones_perfectly(self):
        v = PolarizationQubit.vertical()
        for out in (run_sbs(v, sbs_config(0.8)), run_hybrid(v, hybrid_config(0.6))):
            assert out.f1 == pytest.approx(1.0, abs=1e-12)
            assert out.f2 == pytest.approx(1.0, abs=1e-12)

    def test_horizontal_input_splits_by_asymmetry(self):
        # |H>|V> -> sqrt(q)|VH> + sqrt(1-q)|HV>: fidelity against |H>
        q = 0.93
        out = run_sbs(PolarizationQubit.horizontal(), sbs_config(q))
        assert out.f1 == pytest.approx(1.0 - q, abs=1e-9)
        assert out.f2 == pytest.approx(q, abs=1e-9)

    def test_success_is_input_independent(self):
        cfg = sbs_config(0.7)
        inputs = [
            PolarizationQubit.vertical(),
            PolarizationQubit.horizontal(),
            PolarizationQubit.equatorial(1.3),
            PolarizationQubit(1.0, 0.4),
        ]
        probs = [run_sbs(s, cfg).p_succ for s in inputs]
        assert max(probs) - min(probs) < 1e-12


class TestCommutingDiagram:
    def test_sbs_matches_closed_form(self):
        for q in np.linspace(0.02, 0.98, 25):
            out = run_sbs(PolarizationQubit.equatorial(0.4), sbs_config(q))
            want = pc_fidelities(q)
            assert out.f1 == pytest.approx(want.f1, abs=1e-12)
            assert out.f2 == pytest.approx(want.f2, abs=1e-12)

    def test_hybrid_matches_closed_form(self):
        for q in np.linspace(0.02, 0.98, 25):
            out = run_hybrid(PolarizationQubit.equatorial(-0.9), hybrid_config(q))
            want = pc_fidelities(q)
            assert out.f1 == pytest.approx(want.f1, abs=1e-12)
            assert out.f2 == pytest.approx(want.f2, abs=1e-12)

    def test_exchange_symmetry(self):
        for q in (0.07, 0.25, 0.4):
            a = run_sbs(PolarizationQubit.equatorial(0.0), sbs_config(q))
            b = run_sbs(PolarizationQubit.equatorial(0.0), sbs_config(1.0 - q))
            assert a.f1 == pytest.approx(b.f2, abs=1e-12)
            assert a.f2 == pytest.approx(b.f1, abs=1e-12)

    def test_success_matches_closed_form(self):
        for q in np.linspace(0.05, 0.95, 7):
            sim = run_sbs(PolarizationQubit.equatorial(0.0), sbs_config(q)).p_succ
            assert sim == pytest.approx(sbs_success(q, *SBS_REFERENCE), abs=1e-12)
            sim = run_hybrid(PolarizationQubit.equatorial(0.0), hybrid_config(q)).p_succ
            want = hybrid_success(q, 0.5, *HYBRID_REFERENCE)
            assert sim == pytest.approx(want, abs=1e-12)

    def test_residual_phase_closed_form(self):
        # uncompensated phase delta on arm 1: F1 = (1 + sqrt(1-q) cos d)/2,
        # while F2 is untouched (a local unitary on arm 1 cannot move it)
        q = 0.5
        for delta in (0.5, 2.1, math.pi):
            cfg = replace(IDEAL_SBS, residual_phase=delta)
            out = run_sbs(PolarizationQubit.equatorial(0.8), cfg)
            assert out.f1 == pytest.approx(
                0.5 * (1.0 + math.sqrt(1.0 - q) * math.cos(delta)), abs=1e-12
            )
            assert out.f2 == pytest.approx(
                0.5 * (1.0 + math.sqrt(q)), abs=1e-12
            )
            assert out.p_succ == pytest.approx(1.0 / 3.0, abs=1e-12)


class TestOutcomeAccounting:
    def test_rates_sum_to_success(self):
        out = run_sbs(PolarizationQubit.equatorial(0.2), sbs_config(0.8))
        assert out.c_sum == pytest.approx(out.p_succ, abs=1e-12)
        assert out.f1 == pytest.approx((out.c_pp + out.c_pm) / out.c_sum, abs=1e-15)
        assert out.f2 == pytest.approx((out.c_pp + out.c_mp) / out.c_sum, abs=1e-15)
        for c in (out.c_pp, out.c_pm, out.c_mp, out.c_mm):
            assert 0.0 <= c <= 1.0

    def test_fidelities_match_reduced_density_overlap(self):
        # independent route: F_k = <psi| tr_other |post><post| |psi>
        for q, phi in [(0.5, 0.0), (0.75, 1.1), (0.93, -2.0)]:
            psi = PolarizationQubit.equatorial(phi)
            out = run_sbs(psi, sbs_config(q))
            ms = out.postselected_state.mode_set
            a = np.zeros((2, 2), dtype=complex)
            for r, p1 in enumerate(("H", "V")):
                for c, p2 in enumerate(("H", "V")):
                    i = ms.mode_index[Mode("1", p1, 0)]
                    j = ms.mode_index[Mode("2", p2, 0)]
                    key = (i, j) if i <= j else (j, i)
                    a[r, c] = out.postselected_state.amps[ms.pair_index[key]]
            amps = psi.amplitudes()
            vec = np.array([amps["H"], amps["V"]])
            f1 = float(np.real(vec.conj() @ (a @ a.conj().T) @ vec))
            f2 = float(np.real(vec.conj() @ (a.T @ a.conj()) @ vec))
            assert f1 == pytest.approx(out.f1, abs=1e-12)
            assert f2 == pytest.approx(out.f2, abs=1e-12)

    def test_analyzer_rates_on_pure_products(self):
        ms = ModeSet.for_arms(("1", "2"))
        psi = PolarizationQubit.equatorial(0.6)
        both_plus = product_state(ms, psi, "1", psi, "2")
        rates = coincidence_rates(both_plus, psi)
        assert np.allclose(rates, (1.0, 0.0, 0.0, 0.0), atol=1e-12)
        orth = psi.orthogonal()
        both_minus = product_state(ms, orth, "1", orth, "2")
        rates = coincidence_rates(both_minus, psi)
        assert np.allclose(rates, (0.0, 0.0, 0.0, 1.0), atol=1e-12)

    def test_coincidence_project_keeps_supported_state(self):
        ms = ModeSet.for_arms(("1", "2"))
        state = product_state(
            ms, PolarizationQubit.equatorial(0.1), "1", PolarizationQubit.vertical(), "2"
        )
        projected, prob = coincidence_project(state)
        assert prob == pytest.approx(1.0, abs=1e-12)
        assert np.allclose(projected.amps, state.amps, atol=1e-12)
        assert norm(projected) == pytest.approx(1.0)

    def test_bunched_output_raises_degenerate_outcome(self):
        balanced = SbsConfig(r_v=0.5, r_h=0.5)
        with pytest.raises(DegenerateOutcomeError):
            run_sbs(PolarizationQubit.vertical(), balanced)


class TestPhaseCovariance:
    def test_ideal_scan_rows_identical(self):
        scan = equator_scan(run_sbs, sbs_config(0.7))
        f1s = [row.f1 for row in scan.rows]
        f2s = [row.f2 for row in scan.rows]
        assert len(scan.rows) == 9
        assert [row.phi for row in scan.rows] == list(EQUATOR_PHASES)
        assert max(f1s) - min(f1s) < 1e-10
        assert max(f2s) - min(f2s) < 1e-10
        assert scan.f1_std < 1e-10

    def test_scan_mean_matches_twirl(self):
        cfg = sbs_config(0.7)
        scan = equator_scan(run_sbs, cfg)
        t1, t2 = twirl(run_sbs, PolarizationQubit.equatorial(0.0), cfg)
        assert scan.f1_mean == pytest.approx(t1, abs=1e-9)
        assert scan.f2_mean == pytest.approx(t2, abs=1e-9)

    def test_twirl_quadrature_converged_at_8(self):
        probe = PolarizationQubit.equatorial(0.3)
        hard = replace(
            IDEAL_SBS, ancilla=PolarizationQubit(0.15, 0.4), residual_phase=0.7
        )
        for cfg in (IDEAL_SBS, hard):
            t8 = twirl(run_sbs, probe, cfg, n_phases=8)
            t64 = twirl(run_sbs, probe, cfg, n_phases=64)
            assert t8[0] == pytest.approx(t64[0], abs=1e-12)
            assert t8[1] == pytest.approx(t64[1], abs=1e-12)

    def test_twirl_is_phase_independent(self):
        hard = replace(IDEAL_HYBRID, ancilla=PolarizationQubit(0.2, 0.0))
        a = twirl(run_hybrid, PolarizationQubit.equatorial(0.0), hard)
        b = twirl(run_hybrid, PolarizationQubit.equatorial(2.2), hard)
        assert a[0] == pytest.approx(b[0], abs=1e-12)
        assert a[1] == pytest.approx(b[1], abs=1e-12)

    def test_twirl_rejects_bad_phase_count(self):
        with pytest.raises(ValueError):
            twirl(run_sbs, PolarizationQubit.equatorial(0.0), IDEAL_SBS, 0)


class TestConfigValidation:
    def test_ratio_must_be_positive(self):
        with pytest.raises(ValueError):
            run_sbs(PolarizationQubit.vertical(), replace(IDEAL_SBS, sigma_eta=0.0))

    def test_overlap_range(self):
        with pytest.raises(ValueError):
            run_sbs(PolarizationQubit.vertical(), replace(IDEAL_SBS, overlap=1.5))

    def test_absolute_transmittance_range(self):
        with pytest.raises(ValueError):
            run_sbs(PolarizationQubit.vertical(), replace(IDEAL_SBS, eta_abs=1.5))

    def test_with_settings_copies_ratios(self):
        settings = sbs_filter_settings(0.8, *SBS_REFERENCE)
        cfg = with_settings(SbsConfig(), settings)
        assert cfg.sigma_eta == settings.sigma_eta
        assert cfg.sigma_nu == settings.sigma_nu
