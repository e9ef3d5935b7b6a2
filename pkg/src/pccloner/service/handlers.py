"""Command implementations shared by the HTTP endpoints and the CLI."""

from __future__ import annotations

import math

import numpy as np

from ..cloner import (
    EQUATOR_PHASES,
    CloningOutcome,
    HybridConfig,
    SbsConfig,
    run_hybrid,
    run_sbs,
    with_settings,
)
from ..counts import sample_counts
from ..elements import InfeasibleFilterError, tilt_for_ratio
from ..imperfections import hom_dip_curve
from ..state import PolarizationQubit
from ..theory import (
    hybrid_filter_settings,
    pc_fidelities,
    sbs_filter_settings,
    universal_fidelities,
)
from .models import (
    CloneRequest,
    FiltersRequest,
    FrontierRequest,
    HomRequest,
    PsuccRequest,
    SampleCountsRequest,
    TableResponse,
    significant,
)

COLUMNS: dict[str, tuple[str, ...]] = {
    "frontier": ("q", "f1_pc", "f2_pc", "p", "f1_univ", "f2_univ"),
    "filters": ("q", "sigma_eta", "sigma_nu", "tilt_eta", "tilt_nu", "feasible"),
    "clone": (
        "q",
        "kind",
        "phi",
        "f1",
        "f2",
        "p_succ",
        "c_pp",
        "c_pm",
        "c_mp",
        "c_mm",
        "f1_std",
        "f2_std",
    ),
    "psucc": ("q", "p_succ"),
    "sample-counts": (
        "kind",
        "rep",
        "c_pp",
        "c_pm",
        "c_mp",
        "c_mm",
        "f1",
        "f2",
        "f1_std",
        "f2_std",
    ),
    "hom": ("overlap", "p_coinc"),
}


def frontier(req: FrontierRequest) -> TableResponse:
    """Clone-fidelity trade-off for both cloner families on one grid."""
    rows = []
    for q in req.grid.values():
        pc = pc_fidelities(q)
        uni = universal_fidelities(q)
        rows.append(
            {
                "q": significant(q),
                "f1_pc": significant(pc.f1),
                "f2_pc": significant(pc.f2),
                "p": significant(q),
                "f1_univ": significant(uni.f1),
                "f2_univ": significant(uni.f2),
            }
        )
    return TableResponse(spec=req.model_dump(), rows=rows)


def _settings_for(setup: str, q: float, r_v: float, r_h: float):
    if setup == "sbs":
        return sbs_filter_settings(q, r_v, r_h)
    return hybrid_filter_settings(q, r_v, r_h)


def filters(req: FiltersRequest) -> TableResponse:
    """Filter ratios plus the plate tilts that realize them."""
    plate = req.plate.to_plate()
    rows = []
    for q in req.q_values():
        settings = _settings_for(req.setup, q, req.r_v, req.r_h)
        tilts = []
        feasible = True
        for sigma in (settings.sigma_eta, settings.sigma_nu):
            try:
                tilts.append(tilt_for_ratio(min(sigma, 1.0 / sigma), plate))
            except InfeasibleFilterError:
                tilts.append(None)
                feasible = False
        rows.append(
            {
                "q": significant(q),
                "sigma_eta": significant(settings.sigma_eta),
                "sigma_nu": significant(settings.sigma_nu),
                "tilt_eta": significant(tilts[0]),
                "tilt_nu": significant(tilts[1]),
                "feasible": feasible,
            }
        )
    return TableResponse(spec=req.model_dump(), rows=rows)


def _config_and_runner(req) -> tuple[object, object]:
    plate = req.plate.to_plate() if req.mode == "realistic" else None
    ancilla = PolarizationQubit(
        getattr(req, "ancilla_theta", 0.0), getattr(req, "ancilla_phi", 0.0)
    )
    common = dict(
        r_v=req.r_v,
        r_h=req.r_h,
        residual_phase=getattr(req, "residual_phase", 0.0),
        overlap=getattr(req, "overlap", 1.0),
        ancilla=ancilla,
        plate=plate,
    )
    if req.setup == "sbs":
        return SbsConfig(**common), run_sbs
    return HybridConfig(r_fc=req.r_fc, **common), run_hybrid


def _outcome_row(q: float, phi: float, out: CloningOutcome) -> dict:
    return {
        "q": significant(q),
        "kind": "state",
        "phi": significant(phi),
        "f1": significant(out.f1),
        "f2": significant(out.f2),
        "p_succ": significant(out.p_succ),
        "c_pp": significant(out.c_pp),
        "c_pm": significant(out.c_pm),
        "c_mp": significant(out.c_mp),
        "c_mm": significant(out.c_mm),
        "f1_std": None,
        "f2_std": None,
    }


def clone(req: CloneRequest) -> TableResponse:
    """Equator scans of the configured cloner across the asymmetry grid."""
    base, runner = _config_and_runner(req)
    rows = []
    for q in req.q_values():
        cfg = with_settings(base, _settings_for(req.setup, q, req.r_v, req.r_h))
        outcomes = [
            runner(PolarizationQubit.equatorial(phi), cfg)
            for phi in EQUATOR_PHASES
        ]
        rows.extend(
            _outcome_row(q, phi, out)
            for phi, out in zip(EQUATOR_PHASES, outcomes)
        )
        f1s = np.array([o.f1 for o in outcomes])
        f2s = np.array([o.f2 for o in outcomes])
        rows.append(
            {
                "q": significant(q),
                "kind": "mean",
                "phi": None,
                "f1": significant(float(f1s.mean())),
                "f2": significant(float(f2s.mean())),
                "p_succ": significant(float(np.mean([o.p_succ for o in outcomes]))),
                "c_pp": None,
                "c_pm": None,
                "c_mp": None,
                "c_mm": None,
                "f1_std": significant(float(f1s.std(ddof=1))),
                "f2_std": significant(float(f2s.std(ddof=1))),
            }
        )
    return TableResponse(spec=req.model_dump(), rows=rows)


def psucc(req: PsuccRequest) -> TableResponse:
    """End-to-end success probability across the asymmetry grid."""
    base, runner = _config_and_runner(req)
    probe = PolarizationQubit.equatorial(0.0)
    rows = []
    for q in req.q_grid.values():
        cfg = with_settings(base, _settings_for(req.setup, q, req.r_v, req.r_h))
        out = runner(probe, cfg)
        rows.append({"q": significant(q), "p_succ": significant(out.p_succ)})
    return TableResponse(spec=req.model_dump(), rows=rows)


def sample_counts_cmd(req: SampleCountsRequest) -> TableResponse:
    """Poisson-sampled repeated measurements of one cloner setting."""
    base, runner = _config_and_runner(req)
    cfg = with_settings(base, _settings_for(req.setup, req.q, req.r_v, req.r_h))
    out = runner(PolarizationQubit.equatorial(req.phi), cfg)
    summary = sample_counts(
        out, req.pair_rate, req.duration, req.repetitions, req.seed
    )
    rows = []
    for i, rec in enumerate(summary.records):
        rows.append(
            {
                "kind": "rep",
                "rep": i,
                "c_pp": rec.c_pp,
                "c_pm": rec.c_pm,
                "c_mp": rec.c_mp,
                "c_mm": rec.c_mm,
                "f1": significant(rec.f1),
                "f2": significant(rec.f2),
                "f1_std": None,
                "f2_std": None,
            }
        )
    rows.append(
        {
            "kind": "summary",
            "rep": None,
            "c_pp": None,
            "c_pm": None,
            "c_mp": None,
            "c_mm": None,
            "f1": significant(summary.f1_mean),
            "f2": significant(summary.f2_mean),
            "f1_std": significant(summary.f1_std),
            "f2_std": significant(summary.f2_std),
        }
    )
    return TableResponse(spec=req.model_dump(), rows=rows)


def hom(req: HomRequest) -> TableResponse:
    """Coincidence dip of two identical photons versus temporal overlap."""
    rows = [
        {"overlap": significant(s), "p_coinc": significant(p)}
        for s, p in hom_dip_curve(req.reflectance, req.s_grid.values())
    ]
    return TableResponse(spec=req.model_dump(), rows=rows)


COMMANDS = {
    "frontier": (FrontierRequest, frontier),
    "filters": (FiltersRequest, filters),
    "clone": (CloneRequest, clone),
    "psucc": (PsuccRequest, psucc),
    "sample-counts": (SampleCountsRequest, sample_counts_cmd),
    "hom": (HomRequest, hom),
}
