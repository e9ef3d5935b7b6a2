"""Experimental imperfection models and calibration helpers.

Partial temporal overlap of the photon pair is modeled with a second
time bin on every mode: the ancilla arrives as s|bin 0⟩ + sqrt(1-s^2)|bin 1⟩
while the signal stays in bin 0, and detectors sum over bins.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

from .cloner import (
    ARM_1,
    ARM_2,
    CloningOutcome,
    Runner,
    coincidence_project,
)
from .elements import apply_all, beam_splitter
from .state import DegenerateOutcomeError, ModeSet, PolarizationQubit, product_state

GOLDEN_RATIO = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class ImperfectionParams:
    """Bundle of imperfection knobs applied on top of a cloner config."""

    overlap: float = 1.0
    residual_phase: float = 0.0
    ancilla_theta: float = 0.0
    ancilla_phi: float = 0.0

    def apply_to(self, cfg):
        return replace(
            cfg,
            overlap=self.overlap,
            residual_phase=self.residual_phase,
            ancilla=PolarizationQubit(self.ancilla_theta, self.ancilla_phi),
        )


def run_with_overlap(
    runner: Runner,
    input_qubit: PolarizationQubit,
    cfg,
    overlap: float,
) -> CloningOutcome:
    """Run a cloner with temporal overlap s, always on the two-bin space."""
    if not 0.0 <= overlap <= 1.0:
        raise ValueError(f"overlap must lie in [0, 1], got {overlap}")
    return runner(input_qubit, replace(cfg, overlap=overlap), n_bins=2)


def apply_ancilla_offset(cfg, theta: float, phi: float = 0.0):
    """Config copy whose ancilla is tipped away from the |V⟩ pole."""
    return replace(cfg, ancilla=PolarizationQubit(theta, phi))


def hom_coincidence(reflectance: float, overlap: float) -> float:
    """Coincidence probability of two V photons meeting on a splitter."""
    if not 0.0 <= overlap <= 1.0:
        raise ValueError(f"overlap must lie in [0, 1], got {overlap}")
    ms = ModeSet.for_arms((ARM_1, ARM_2), (0, 1))
    s = overlap
    state = product_state(
        ms,
        PolarizationQubit.vertical(),
        ARM_1,
        PolarizationQubit.vertical(),
        ARM_2,
        {0: s, 1: math.sqrt(max(0.0, 1.0 - s * s))},
    )
    state = apply_all(state, [beam_splitter(reflectance, (ARM_1, ARM_2), (0, 1))])
    try:
        _, p = coincidence_project(state)
    except DegenerateOutcomeError:
        return 0.0
    return p


def hom_dip_curve(
    reflectance: float,
    overlaps: Sequence[float],
) -> list[tuple[float, float]]:
    """(overlap, coincidence probability) pairs for a two-photon splitter.

    On a balanced splitter the curve follows (1 - s^2) / 2, the textbook
    bunching dip.
    """
    return [(float(s), hom_coincidence(reflectance, float(s))) for s in overlaps]


@dataclass(frozen=True)
class OverlapFit:
    """Result of fitting the temporal overlap to measured fidelities."""

    overlap: float
    residual: float
    at_boundary: bool


def _golden_minimize(fun, lo: float, hi: float, tol: float) -> float:
    """Golden-section minimizer of a unimodal scalar function on [lo, hi]."""
    a, b = lo, hi
    c = b - GOLDEN_RATIO * (b - a)
    d = a + GOLDEN_RATIO * (b - a)
    fc, fd = fun(c), fun(d)
    while (b - a) > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN_RATIO * (b - a)
            fc = fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN_RATIO * (b - a)
            fd = fun(d)
    return 0.5 * (a + b)


def fit_overlap(
    measured_f1: float,
    measured_f2: float,
    runner: Runner,
    cfg,
    input_qubit: PolarizationQubit | None = None,
    tol: float = 1e-5,
) -> OverlapFit:
    """Temporal overlap that best explains a measured fidelity pair.

    Golden-section search of the squared fidelity mismatch over
    s in [0, 1]; `at_boundary` flags minima pinned to either end, where
    the measured pair cannot be bracketed by the overlap model.
    """
    if input_qubit is None:
        input_qubit = PolarizationQubit.equatorial(0.0)

    def mismatch(s: float) -> float:
        out = run_with_overlap(runner, input_qubit, cfg, s)
        return (out.f1 - measured_f1) ** 2 + (out.f2 - measured_f2) ** 2

    best = _golden_minimize(mismatch, 0.0, 1.0, tol)
    residual = mismatch(best)
    at_boundary = min(best, 1.0 - best) <= 2.0 * tol and (
        mismatch(min(1.0, max(0.0, round(best)))) <= residual + tol * tol
    )
    if at_boundary:
        best = float(round(best))
        residual = mismatch(best)
    return OverlapFit(overlap=float(best), residual=float(residual), at_boundary=at_boundary)
