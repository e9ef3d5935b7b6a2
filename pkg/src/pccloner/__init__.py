"""Simulation of tunably asymmetric phase-covariant cloning of photons.

Two linear-optics realizations of 1 -> 2 polarization-qubit cloning are
modeled photon-by-photon: an unbalanced beam-splitter setup and a hybrid
fiber-coupler + bulk-splitter setup, both tuned by polarization filters.
"""

from .cloner import (
    CloningOutcome,
    EquatorScan,
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
from .elements import (
    FresnelPlate,
    InfeasibleFilterError,
    OpticalElement,
    apply_element,
    beam_splitter,
    compose,
    filter_from_ratio,
    fresnel_plate,
    phase_shifter,
    pol_beam_splitter,
    pol_filter,
    tilt_for_ratio,
    wave_plate,
)
from .state import (
    DegenerateOutcomeError,
    Mode,
    ModeSet,
    PolarizationQubit,
    TwoPhotonState,
    inner_product,
    norm,
    normalize,
    product_state,
)
from .theory import (
    FidelityPair,
    FilterSettings,
    HYBRID_REFERENCE,
    SBS_IDEAL_R_V,
    SBS_REFERENCE,
    SingularSplitterError,
    feasible_q_range,
    hybrid_filter_settings,
    hybrid_success,
    pc_fidelities,
    sbs_filter_settings,
    sbs_success,
    universal_fidelities,
)

__version__ = "0.1.0"

__all__ = [
    "CloningOutcome",
    "DegenerateOutcomeError",
    "EquatorScan",
    "FidelityPair",
    "FilterSettings",
    "FresnelPlate",
    "HYBRID_REFERENCE",
    "HybridConfig",
    "InfeasibleFilterError",
    "Mode",
    "ModeSet",
    "OpticalElement",
    "PolarizationQubit",
    "SBS_IDEAL_R_V",
    "SBS_REFERENCE",
    "SbsConfig",
    "SingularSplitterError",
    "TwoPhotonState",
    "apply_element",
    "beam_splitter",
    "coincidence_project",
    "coincidence_rates",
    "compose",
    "equator_scan",
    "feasible_q_range",
    "filter_from_ratio",
    "fresnel_plate",
    "hybrid_filter_settings",
    "hybrid_success",
    "inner_product",
    "norm",
    "normalize",
    "pc_fidelities",
    "phase_shifter",
    "pol_beam_splitter",
    "pol_filter",
    "product_state",
    "run_hybrid",
    "run_sbs",
    "sbs_filter_settings",
    "sbs_success",
    "tilt_for_ratio",
    "twirl",
    "universal_fidelities",
    "wave_plate",
    "with_settings",
]
