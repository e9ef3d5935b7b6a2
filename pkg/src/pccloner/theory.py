"""Closed-form predictions for tunably asymmetric phase-covariant cloning.

All formulas refer to 1 -> 2 cloning of polarization qubits where the
asymmetry q in the ideal transformation

    |V>|V> -> |V>|V>,   |H>|V> -> sqrt(q)|V>|H> + sqrt(1-q)|H>|V>

splits the clone fidelities between the two output arms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# Intensity reflectances (R_V, R_H) of the reference devices.
SBS_REFERENCE = (0.758, 0.179)
HYBRID_REFERENCE = (0.509, 0.466)
# Splitting ratio at which an unbalanced splitter clones symmetrically
# without any filtering: R_V = (1 + 1/sqrt(3)) / 2.
SBS_IDEAL_R_V = 0.5 * (1.0 + 1.0 / math.sqrt(3.0))

SINGULAR_SPLITTER_TOL = 1e-6


class SingularSplitterError(ValueError):
    """R_V = 1/2 makes the direct-pass amplitude vanish (no cloning)."""


@dataclass(frozen=True)
class FidelityPair:
    """Clone fidelities (arm 1, arm 2) for equatorial input states."""

    f1: float
    f2: float


@dataclass(frozen=True)
class FilterSettings:
    """Intensity attenuation ratios for the two polarization filters.

    sigma_eta = (eta_V / eta_H)^2 and sigma_nu = (nu_V / nu_H)^2; both are
    realizable by passive filters for any q strictly inside (0, 1), after
    normalizing the favored polarization's transmittance to one.
    """

    q: float
    sigma_eta: float
    sigma_nu: float
    feasible: bool


def _check_q(q: float, *, open_interval: bool) -> None:
    if open_interval:
        if not 0.0 < q < 1.0:
            raise ValueError(f"asymmetry q must lie in (0, 1), got {q}")
    elif not 0.0 <= q <= 1.0:
        raise ValueError(f"asymmetry q must lie in [0, 1], got {q}")


def _check_reflectance(name: str, value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {value}")


def _direct_pass(r_v: float) -> float:
    """r_V^2 - t_V^2 = 2 R_V - 1, guarded against the singular point."""
    gap = 2.0 * r_v - 1.0
    if abs(gap) < SINGULAR_SPLITTER_TOL:
        raise SingularSplitterError(
            f"R_V = {r_v} is too close to 1/2; the V-V pass amplitude vanishes"
        )
    return gap


def pc_fidelities(q: float) -> FidelityPair:
    """Ideal phase-covariant clone fidelities at asymmetry q."""
    _check_q(q, open_interval=False)
    return FidelityPair(
        f1=0.5 * (1.0 + math.sqrt(1.0 - q)),
        f2=0.5 * (1.0 + math.sqrt(q)),
    )


def universal_fidelities(p: float) -> FidelityPair:
    """Optimal asymmetric universal-cloner fidelities at asymmetry p."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"asymmetry p must lie in [0, 1], got {p}")
    denom = 2.0 * (1.0 - p + p * p)
    return FidelityPair(
        f1=1.0 - (1.0 - p) ** 2 / denom,
        f2=1.0 - p * p / denom,
    )


def sbs_filter_settings(q: float, r_v: float, r_h: float) -> FilterSettings:
    """Filter ratios that tune the unbalanced-splitter cloner to asymmetry q.

    sigma_eta = R_V R_H / ((2 R_V - 1)^2 q)
    sigma_nu  = (1 - R_V)(1 - R_H) / ((2 R_V - 1)^2 (1 - q))
    """
    _check_q(q, open_interval=True)
    _check_reflectance("R_V", r_v)
    _check_reflectance("R_H", r_h)
    gap2 = _direct_pass(r_v) ** 2
    return FilterSettings(
        q=q,
        sigma_eta=r_v * r_h / (gap2 * q),
        sigma_nu=(1.0 - r_v) * (1.0 - r_h) / (gap2 * (1.0 - q)),
        feasible=True,
    )


def hybrid_filter_settings(q: float, r_v: float, r_h: float) -> FilterSettings:
    """Filter ratios for the bunching + bulk-splitter cloner at asymmetry q.

    sigma_eta = (R_H / R_V) / (4 (1 - q))
    sigma_nu  = (R_V (1 - R_H)) / (R_H (1 - R_V)) * (1 - q) / q
    """
    _check_q(q, open_interval=True)
    _check_reflectance("R_V", r_v)
    _check_reflectance("R_H", r_h)
    if r_v in (0.0, 1.0) or r_h in (0.0, 1.0):
        raise ValueError("hybrid splitter reflectances must lie strictly in (0, 1)")
    return FilterSettings(
        q=q,
        sigma_eta=(r_h / r_v) / (4.0 * (1.0 - q)),
        sigma_nu=(r_v * (1.0 - r_h)) / (r_h * (1.0 - r_v)) * (1.0 - q) / q,
        feasible=True,
    )


def _attenuations(settings: FilterSettings, eta_abs: float, nu_abs: float) -> tuple[float, float]:
    """Intensity transmittances (eta_V^2, nu_V^2) of the tuned filters."""
    eta_v2 = eta_abs**2 * min(settings.sigma_eta, 1.0)
    nu_v2 = nu_abs**2 * min(settings.sigma_nu, 1.0)
    return eta_v2, nu_v2


def sbs_success(
    q: float,
    r_v: float,
    r_h: float,
    eta_abs: float = 1.0,
    nu_abs: float = 1.0,
) -> float:
    """Success probability eta_V^2 nu_V^2 (r_V^2 - t_V^2)^2 of the tuned cloner.

    `eta_abs` / `nu_abs` are the favored-polarization amplitude
    transmittances of the two filters (1 for lossless ideal filters).
    """
    settings = sbs_filter_settings(q, r_v, r_h)
    eta_v2, nu_v2 = _attenuations(settings, eta_abs, nu_abs)
    return eta_v2 * nu_v2 * _direct_pass(r_v) ** 2


def hybrid_success(
    q: float,
    r_fc: float,
    r_v: float,
    r_h: float,
    eta_abs: float = 1.0,
    nu_abs: float = 1.0,
) -> float:
    """Success probability (2 r t eta_V^2 t_V r_V nu_V)^2 of the hybrid cloner."""
    _check_reflectance("R_fc", r_fc)
    settings = hybrid_filter_settings(q, r_v, r_h)
    eta_v2, nu_v2 = _attenuations(settings, eta_abs, nu_abs)
    return 4.0 * r_fc * (1.0 - r_fc) * eta_v2**2 * (1.0 - r_v) * r_v * nu_v2


def feasible_q_range(
    setup: str,
    r_v: float,
    r_h: float,
    max_attenuation: float,
) -> tuple[float, float] | None:
    """Asymmetry interval reachable with filters limited to a minimum ratio.

    `max_attenuation` is the smallest realizable intensity ratio between
    the attenuated and the favored polarization (deeper attenuation is
    stronger filtering).  Returns (q_lo, q_hi) clipped to [0, 1], or None
    when no q is reachable.
    """
    if not 0.0 < max_attenuation <= 1.0:
        raise ValueError(
            f"max_attenuation must lie in (0, 1], got {max_attenuation}"
        )
    m = max_attenuation
    if setup == "sbs":
        gap2 = _direct_pass(r_v) ** 2
        a = r_v * r_h / gap2  # sigma_eta = a / q
        b = (1.0 - r_v) * (1.0 - r_h) / gap2  # sigma_nu = b / (1 - q)
        eta_lo, eta_hi = a * m, a / m
        nu_lo, nu_hi = 1.0 - b / m, 1.0 - b * m
    elif setup == "hybrid":
        c = (r_h / r_v) / 4.0  # sigma_eta = c / (1 - q)
        d = (r_v * (1.0 - r_h)) / (r_h * (1.0 - r_v))  # sigma_nu = d (1-q)/q
        eta_lo, eta_hi = 1.0 - c / m, 1.0 - c * m
        # m <= d (1-q)/q <= 1/m  <=>  1/(1 + 1/(m d)) <= ... <= wide side
        nu_lo, nu_hi = 1.0 / (1.0 + 1.0 / (m * d)), 1.0 / (1.0 + m / d)
    else:
        raise ValueError(f"setup must be 'sbs' or 'hybrid', got {setup!r}")
    lo = max(eta_lo, nu_lo, 0.0)
    hi = min(eta_hi, nu_hi, 1.0)
    if lo >= hi:
        return None
    return lo, hi
