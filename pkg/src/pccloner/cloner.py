"""End-to-end simulations of the two optical cloning setups.

Both setups take a signal qubit plus a |V⟩-pole ancilla photon, interfere
them, filter polarizations, and postselect on one photon per output arm:

* `run_sbs`: signal and ancilla meet directly on an unbalanced two-arm
  splitter; per-arm filters tune the asymmetry.
* `run_hybrid`: the photons first bunch into one fiber of a balanced
  coupler, then a bulk splitter separates them; one filter sits in the
  common path, the other in output arm 2.

Clone 1 leaves in arm "1", clone 2 in arm "2"; fidelities are read from
coincidence rates between polarization analyzers set to the input state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .elements import (
    FresnelPlate,
    OpticalElement,
    apply_all,
    beam_splitter,
    filter_from_ratio,
    phase_shifter,
    pol_beam_splitter,
)
from .state import (
    Mode,
    ModeSet,
    PolarizationQubit,
    TwoPhotonState,
    normalize,
    product_state,
)

ARM_1 = "1"
ARM_2 = "2"

EQUATOR_PHASES = tuple(k * math.pi / 4.0 for k in range(-4, 5))


def _vertical() -> PolarizationQubit:
    return PolarizationQubit.vertical()


@dataclass(frozen=True)
class SbsConfig:
    """Unbalanced-splitter cloner configuration.

    `sigma_eta` filters arm 2 and `sigma_nu` arm 1, each as intensity
    ratio (t_V/t_H)^2.  `eta_abs`/`nu_abs` scale the favored-polarization
    amplitude (1 = lossless); `plate` switches both filters to the tilted
    glass-plate model instead.  `overlap` is the temporal mode overlap of
    the two photons and `residual_phase` an uncompensated differential
    H/V phase on arm 1.
    """

    r_v: float = 0.758
    r_h: float = 0.179
    sigma_eta: float = 1.0
    sigma_nu: float = 1.0
    eta_abs: float = 1.0
    nu_abs: float = 1.0
    residual_phase: float = 0.0
    overlap: float = 1.0
    ancilla: PolarizationQubit = field(default_factory=_vertical)
    plate: FresnelPlate | None = None

    def __post_init__(self) -> None:
        _validate_common(self)
        if not 0.0 <= self.r_v <= 1.0 or not 0.0 <= self.r_h <= 1.0:
            raise ValueError("reflectances must lie in [0, 1]")


@dataclass(frozen=True)
class HybridConfig:
    """Fiber-coupler + bulk-splitter cloner configuration.

    The filter with ratio `sigma_eta` acts on both photons in the common
    path after bunching; `sigma_nu` filters output arm 2 only.
    """

    r_fc: float = 0.5
    r_v: float = 0.509
    r_h: float = 0.466
    sigma_eta: float = 1.0
    sigma_nu: float = 1.0
    eta_abs: float = 1.0
    nu_abs: float = 1.0
    residual_phase: float = 0.0
    overlap: float = 1.0
    ancilla: PolarizationQubit = field(default_factory=_vertical)
    plate: FresnelPlate | None = None

    def __post_init__(self) -> None:
        _validate_common(self)
        if not 0.0 <= self.r_fc <= 1.0:
            raise ValueError("coupler reflectance must lie in [0, 1]")
        if not 0.0 < self.r_v < 1.0 or not 0.0 < self.r_h < 1.0:
            raise ValueError("bulk splitter reflectances must lie strictly in (0, 1)")


def _validate_common(cfg) -> None:
    if cfg.sigma_eta <= 0.0 or cfg.sigma_nu <= 0.0:
        raise ValueError("filter ratios must be positive")
    if not 0.0 <= cfg.overlap <= 1.0:
        raise ValueError(f"overlap must lie in [0, 1], got {cfg.overlap}")
    if not 0.0 < cfg.eta_abs <= 1.0 or not 0.0 < cfg.nu_abs <= 1.0:
        raise ValueError("favored-amplitude transmittances must lie in (0, 1]")


@dataclass(frozen=True)
class CloningOutcome:
    """Coincidence probabilities per input pair and derived figures.

    c_xy is the probability that the arm-1 analyzer fires in outcome x
    and arm 2 in y, with "+" the input state and "-" its orthogonal;
    their sum is the success probability.
    """

    f1: float
    f2: float
    p_succ: float
    c_pp: float
    c_pm: float
    c_mp: float
    c_mm: float
    postselected_state: TwoPhotonState | None = field(
        default=None, compare=False, repr=False
    )

    @property
    def c_sum(self) -> float:
        return self.c_pp + self.c_pm + self.c_mp + self.c_mm


Runner = Callable[[PolarizationQubit, object], CloningOutcome]


def _bins_for(cfg, n_bins: int | None) -> tuple[int, ...]:
    if n_bins is None:
        n_bins = 1 if cfg.overlap == 1.0 else 2
    if n_bins not in (1, 2):
        raise ValueError(f"n_bins must be 1 or 2, got {n_bins}")
    return tuple(range(n_bins))


def _ancilla_bins(cfg, bins: tuple[int, ...]) -> dict[int, complex] | None:
    if len(bins) == 1:
        if cfg.overlap != 1.0:
            raise ValueError("overlap below 1 needs the two-bin mode set")
        return None
    s = cfg.overlap
    return {0: s, 1: math.sqrt(max(0.0, 1.0 - s * s))}


def _mask_project(state: TwoPhotonState, keep: np.ndarray) -> TwoPhotonState:
    return TwoPhotonState(state.mode_set, np.where(keep, state.amps, 0.0))


def coincidence_project(state: TwoPhotonState) -> tuple[TwoPhotonState, float]:
    """Postselect one photon in each arm.

    Returns the renormalized postselected state together with the
    postselection probability (squared norm before renormalization).
    """
    ms = state.mode_set
    keep = np.array([ms.modes[i].arm != ms.modes[j].arm for i, j in ms.pairs])
    projected = _mask_project(state, keep)
    normalized, n = normalize(projected)
    return normalized, n * n


def _bunch_project(state: TwoPhotonState, arm: str) -> TwoPhotonState:
    """Keep only the components with both photons in `arm` (no renorm)."""
    ms = state.mode_set
    keep = np.array(
        [ms.modes[i].arm == arm and ms.modes[j].arm == arm for i, j in ms.pairs]
    )
    return _mask_project(state, keep)


def coincidence_rates(
    state: TwoPhotonState,
    analyzer: PolarizationQubit,
    arms: tuple[str, str] = (ARM_1, ARM_2),
) -> tuple[float, float, float, float]:
    """Four analyzer-outcome probabilities (++, +-, -+, --) of a state.

    Both arms project onto {analyzer, orthogonal}; temporal bins are
    summed over (bin-insensitive detectors).  For a unit-norm state in
    the coincidence subspace the four rates add up to one.
    """
    ms = state.mode_set
    bins = ms.bins
    plus = analyzer.amplitudes()
    minus = analyzer.orthogonal().amplitudes()
    rates = []
    for coef1 in (plus, minus):
        for coef2 in (plus, minus):
            total = 0.0
            for b1 in bins:
                for b2 in bins:
                    amp = 0.0 + 0.0j
                    for p1, a1 in coef1.items():
                        for p2, a2 in coef2.items():
                            i = ms.mode_index[Mode(arms[0], p1, b1)]
                            j = ms.mode_index[Mode(arms[1], p2, b2)]
                            key = (i, j) if i <= j else (j, i)
                            amp += np.conj(a1) * np.conj(a2) * state.amps[
                                ms.pair_index[key]
                            ]
                    total += float(abs(amp) ** 2)
            rates.append(total)
    return rates[0], rates[1], rates[2], rates[3]


def _filters(cfg, bins) -> tuple[OpticalElement, OpticalElement]:
    """(GP_eta, GP_nu) elements; GP arms differ between the two setups."""
    eta_arm = ARM_2 if isinstance(cfg, SbsConfig) else ARM_1
    gp_eta = filter_from_ratio(
        cfg.sigma_eta, eta_arm, bins, favored_abs=cfg.eta_abs, plate=cfg.plate
    )
    nu_arm = ARM_1 if isinstance(cfg, SbsConfig) else ARM_2
    gp_nu = filter_from_ratio(
        cfg.sigma_nu, nu_arm, bins, favored_abs=cfg.nu_abs, plate=cfg.plate
    )
    return gp_eta, gp_nu


def _finish(
    state: TwoPhotonState, input_qubit: PolarizationQubit
) -> CloningOutcome:
    post, p_succ = coincidence_project(state)
    r_pp, r_pm, r_mp, r_mm = coincidence_rates(post, input_qubit)
    c = np.array([r_pp, r_pm, r_mp, r_mm]) * p_succ
    c_sum = float(c.sum())
    return CloningOutcome(
        f1=float((c[0] + c[1]) / c_sum),
        f2=float((c[0] + c[2]) / c_sum),
        p_succ=p_succ,
        c_pp=float(c[0]),
        c_pm=float(c[1]),
        c_mp=float(c[2]),
        c_mm=float(c[3]),
        postselected_state=post,
    )


def run_sbs(
    input_qubit: PolarizationQubit,
    cfg: SbsConfig | None = None,
    n_bins: int | None = None,
) -> CloningOutcome:
    """Clone `input_qubit` on the unbalanced-splitter setup.

    Pipeline: two-photon input -> unbalanced splitter -> compensation
    phase (plus any residual) on arm 1 -> per-arm filters -> coincidence
    postselection -> analyzer rates.
    """
    cfg = cfg or SbsConfig()
    bins = _bins_for(cfg, n_bins)
    ms = ModeSet.for_arms((ARM_1, ARM_2), bins)
    state = product_state(
        ms, input_qubit, ARM_1, cfg.ancilla, ARM_2, _ancilla_bins(cfg, bins)
    )
    gp_eta, gp_nu = _filters(cfg, bins)
    elements = [
        pol_beam_splitter(cfg.r_v, cfg.r_h, (ARM_1, ARM_2), bins),
        # the splitter convention leaves one relative minus sign on the
        # crossed H-V coincidence term; a pi phase on arm 1's H mode is
        # the compensation the aligned instrument applies
        phase_shifter(math.pi + cfg.residual_phase, ARM_1, bins),
        gp_nu,
        gp_eta,
    ]
    return _finish(apply_all(state, elements), input_qubit)


def run_hybrid(
    input_qubit: PolarizationQubit,
    cfg: HybridConfig | None = None,
    n_bins: int | None = None,
) -> CloningOutcome:
    """Clone `input_qubit` on the bunching + bulk-splitter setup.

    Pipeline: two-photon input -> balanced coupler -> postselect both
    photons in arm 1 -> common-path filter -> bulk splitter -> arm-2
    filter -> coincidence postselection -> analyzer rates.
    """
    cfg = cfg or HybridConfig()
    bins = _bins_for(cfg, n_bins)
    ms = ModeSet.for_arms((ARM_1, ARM_2), bins)
    state = product_state(
        ms, input_qubit, ARM_1, cfg.ancilla, ARM_2, _ancilla_bins(cfg, bins)
    )
    state = apply_all(state, [beam_splitter(cfg.r_fc, (ARM_1, ARM_2), bins)])
    state = _bunch_project(state, ARM_1)
    gp_eta, gp_nu = _filters(cfg, bins)
    elements = [
        gp_eta,
        # reflectance feeds arm 1: block [[r_p, t_p], [t_p, -r_p]]
        pol_beam_splitter(1.0 - cfg.r_v, 1.0 - cfg.r_h, (ARM_1, ARM_2), bins),
        gp_nu,
    ]
    state = apply_all(state, elements)
    if cfg.residual_phase:
        state = apply_all(state, [phase_shifter(cfg.residual_phase, ARM_1, bins)])
    return _finish(state, input_qubit)


def twirl(
    runner: Runner,
    input_qubit: PolarizationQubit,
    cfg,
    n_phases: int = 8,
) -> tuple[float, float]:
    """Phase-averaged clone fidelities (F1, F2).

    Pools the coincidence rates over n_phases equally spaced extra
    phases on the input and takes the fidelity ratios of the pooled
    rates, mirroring counts accumulated under a randomized phase. The
    rates are trigonometric polynomials of degree two in the extra
    phase, so the uniform quadrature is exact for n_phases >= 5.
    """
    if n_phases < 1:
        raise ValueError("n_phases must be positive")
    c_pp = c_pm = c_mp = c_sum = 0.0
    for k in range(n_phases):
        shifted = input_qubit.with_phi(
            input_qubit.phi + 2.0 * math.pi * k / n_phases
        )
        outcome = runner(shifted, cfg)
        c_pp += outcome.c_pp
        c_pm += outcome.c_pm
        c_mp += outcome.c_mp
        c_sum += outcome.c_sum
    return (c_pp + c_pm) / c_sum, (c_pp + c_mp) / c_sum


@dataclass(frozen=True)
class ScanRow:
    phi: float
    f1: float
    f2: float
    p_succ: float


@dataclass(frozen=True)
class EquatorScan:
    """Cloner performance across nine equatorial input states."""

    rows: tuple[ScanRow, ...]
    f1_mean: float
    f1_std: float
    f2_mean: float
    f2_std: float


def equator_scan(runner: Runner, cfg) -> EquatorScan:
    """Run the cloner on the nine equator states phi = k*pi/4, k = -4..4."""
    rows = []
    for phi in EQUATOR_PHASES:
        outcome = runner(PolarizationQubit.equatorial(phi), cfg)
        rows.append(ScanRow(phi, outcome.f1, outcome.f2, outcome.p_succ))
    f1s = np.array([r.f1 for r in rows])
    f2s = np.array([r.f2 for r in rows])
    return EquatorScan(
        rows=tuple(rows),
        f1_mean=float(f1s.mean()),
        f1_std=float(f1s.std(ddof=1)),
        f2_mean=float(f2s.mean()),
        f2_std=float(f2s.std(ddof=1)),
    )


def with_settings(cfg, settings) -> object:
    """Copy of a config with the filter ratios of a FilterSettings."""
    return replace(cfg, sigma_eta=settings.sigma_eta, sigma_nu=settings.sigma_nu)
