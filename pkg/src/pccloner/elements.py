"""Linear optical elements: splitters, filters, wave plates, glass plates.

Every element carries a (possibly sub-unitary) scattering matrix on an
ordered subset of modes; losses are modeled by singular values below one
(the lost population is simply discarded from the two-photon sector).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import brentq

from .state import Mode, ModeSet, POL_H, POL_V, TwoPhotonState, apply_scattering

UNITARITY_TOL = 1e-10


class InfeasibleFilterError(ValueError):
    """Requested attenuation ratio is outside what the plate can reach."""

    def __init__(self, target: float, achievable_min: float):
        self.target = target
        self.achievable_min = achievable_min
        super().__init__(
            f"attenuation ratio {target:.6g} unreachable; tilting the plate "
            f"only reaches down to {achievable_min:.6g}"
        )


@dataclass(frozen=True)
class OpticalElement:
    """Scattering matrix acting on an ordered subset of modes."""

    modes: tuple[Mode, ...]
    matrix: np.ndarray
    unitary: bool

    @classmethod
    def create(cls, modes: Sequence[Mode], matrix: np.ndarray) -> "OpticalElement":
        modes = tuple(modes)
        matrix = np.asarray(matrix, dtype=complex)
        n = len(modes)
        if matrix.shape != (n, n):
            raise ValueError(f"matrix must be {n}x{n}, got {matrix.shape}")
        if len(set(modes)) != n:
            raise ValueError("duplicate modes in element")
        smax = float(np.linalg.svd(matrix, compute_uv=False).max()) if n else 0.0
        if smax > 1.0 + UNITARITY_TOL:
            raise ValueError(f"element would amplify: largest singular value {smax}")
        gram_defect = float(
            np.abs(matrix.conj().T @ matrix - np.eye(n)).max()
        )
        return cls(modes, matrix, gram_defect < UNITARITY_TOL)

    def embed(self, mode_set: ModeSet) -> np.ndarray:
        """Full scattering matrix on `mode_set` (identity elsewhere)."""
        full = np.eye(mode_set.n_modes, dtype=complex)
        try:
            idx = [mode_set.mode_index[m] for m in self.modes]
        except KeyError as exc:
            raise ValueError(f"element mode {exc.args[0]} not in mode set") from exc
        full[np.ix_(idx, idx)] = self.matrix
        return full


def apply_element(state: TwoPhotonState, element: OpticalElement) -> TwoPhotonState:
    """Push a two-photon state through one optical element."""
    return apply_scattering(state, element.embed(state.mode_set))


def apply_all(state: TwoPhotonState, elements: Sequence[OpticalElement]) -> TwoPhotonState:
    for element in elements:
        state = apply_element(state, element)
    return state


def compose(first: OpticalElement, second: OpticalElement) -> OpticalElement:
    """Single element equivalent to `first` followed by `second`."""
    modes = tuple(dict.fromkeys(first.modes + second.modes))
    probe = ModeSet(modes)
    order = tuple(sorted(modes))
    combined = second.embed(probe) @ first.embed(probe)
    return OpticalElement.create(order, combined)


def _per_pol_blocks(
    arms: Sequence[str],
    bins: Sequence[int],
    block_of: dict[str, np.ndarray],
) -> OpticalElement:
    """Element acting with one 2x2 block per (polarization, bin) pair."""
    if len(arms) != 2:
        raise ValueError("splitter needs exactly two arms")
    modes: list[Mode] = []
    blocks: list[np.ndarray] = []
    for pol in (POL_H, POL_V):
        for tbin in bins:
            modes.extend([Mode(arms[0], pol, tbin), Mode(arms[1], pol, tbin)])
            blocks.append(block_of[pol])
    n = len(modes)
    matrix = np.zeros((n, n), dtype=complex)
    for k, block in enumerate(blocks):
        matrix[2 * k : 2 * k + 2, 2 * k : 2 * k + 2] = block
    return OpticalElement.create(modes, matrix)


def _splitter_block(reflectance: float) -> np.ndarray:
    if not 0.0 <= reflectance <= 1.0:
        raise ValueError(f"reflectance must lie in [0, 1], got {reflectance}")
    t = math.sqrt(1.0 - reflectance)
    r = math.sqrt(reflectance)
    return np.array([[t, r], [r, -t]])


def pol_beam_splitter(
    r_v: float,
    r_h: float,
    arms: Sequence[str] = ("1", "2"),
    bins: Sequence[int] = (0,),
) -> OpticalElement:
    """Two-arm splitter with separate intensity reflectances per polarization.

    Per polarization p the block is [[t_p, r_p], [r_p, -t_p]] with
    t_p = sqrt(1 - R_p), r_p = sqrt(R_p): transmission keeps the arm,
    reflection swaps it.
    """
    return _per_pol_blocks(
        arms, bins, {POL_H: _splitter_block(r_h), POL_V: _splitter_block(r_v)}
    )


def beam_splitter(
    reflectance: float,
    arms: Sequence[str] = ("1", "2"),
    bins: Sequence[int] = (0,),
) -> OpticalElement:
    """Polarization-independent splitter (e.g. a fiber coupler)."""
    return pol_beam_splitter(reflectance, reflectance, arms, bins)


def pol_filter(
    t_h: float,
    t_v: float,
    arm: str,
    bins: Sequence[int] = (0,),
) -> OpticalElement:
    """Diagonal polarization-dependent amplitude attenuator on one arm."""
    for t in (t_h, t_v):
        if not 0.0 <= t <= 1.0:
            raise ValueError(f"amplitude transmittance must lie in [0, 1], got {t}")
    modes = [Mode(arm, pol, b) for pol in (POL_H, POL_V) for b in bins]
    diag = [t_h] * len(bins) + [t_v] * len(bins)
    return OpticalElement.create(modes, np.diag(diag).astype(complex))


def phase_shifter(delta: float, arm: str, bins: Sequence[int] = (0,)) -> OpticalElement:
    """Differential phase diag(e^(iδ), 1) on the (H, V) pair of one arm."""
    modes = [Mode(arm, pol, b) for pol in (POL_H, POL_V) for b in bins]
    diag = [np.exp(1j * delta)] * len(bins) + [1.0] * len(bins)
    return OpticalElement.create(modes, np.diag(diag))


def _rotated_retarder(retardance: float, angle: float) -> np.ndarray:
    """Jones matrix of a retarder, fast axis at `angle` from vertical.

    Determinant-normalized: diag(e^(-iΓ/2), e^(+iΓ/2)) in the fast/slow
    frame, expressed in the (H, V) mode basis.
    """
    fast = np.array([math.sin(angle), math.cos(angle)])
    slow = np.array([math.cos(angle), -math.sin(angle)])
    return np.exp(-0.5j * retardance) * np.outer(fast, fast) + np.exp(
        0.5j * retardance
    ) * np.outer(slow, slow)


def wave_plate(
    kind: str,
    angle: float,
    arm: str,
    bins: Sequence[int] = (0,),
) -> OpticalElement:
    """Half- or quarter-wave plate on one arm, axis angle from vertical."""
    retardance = {"half": math.pi, "quarter": math.pi / 2.0}.get(kind)
    if retardance is None:
        raise ValueError(f"kind must be 'half' or 'quarter', got {kind!r}")
    jones = _rotated_retarder(retardance, angle)
    modes = [Mode(arm, pol, b) for pol in (POL_H, POL_V) for b in bins]
    n = len(bins)
    matrix = np.zeros((2 * n, 2 * n), dtype=complex)
    for k in range(n):
        matrix[np.ix_([k, n + k], [k, n + k])] = jones
    return OpticalElement.create(modes, matrix)


@dataclass(frozen=True)
class FresnelPlate:
    """Tilted glass-plate filter: parallel plates crossed at near-Brewster.

    Attenuation comes from Fresnel reflection losses; each plate is
    traversed through `passes_per_plate` air-glass interfaces.
    """

    refractive_index: float = 1.5
    plates_per_filter: int = 2
    passes_per_plate: int = 2

    def __post_init__(self) -> None:
        if self.refractive_index <= 1.0:
            raise ValueError("refractive index must exceed 1")
        if self.plates_per_filter < 1 or self.passes_per_plate < 1:
            raise ValueError("plate and pass counts must be positive")

    @property
    def n_interfaces(self) -> int:
        return self.plates_per_filter * self.passes_per_plate

    def interface_transmittances(self, tilt: float) -> tuple[float, float]:
        """(T_TE, T_TM) intensity transmittances of a single interface."""
        if not 0.0 <= tilt < math.pi / 2.0:
            raise ValueError(f"tilt must lie in [0, pi/2), got {tilt}")
        n = self.refractive_index
        cos_i = math.cos(tilt)
        cos_t = math.sqrt(1.0 - (math.sin(tilt) / n) ** 2)
        r_te = (cos_i - n * cos_t) / (cos_i + n * cos_t)
        r_tm = (n * cos_i - cos_t) / (n * cos_i + cos_t)
        return 1.0 - r_te**2, 1.0 - r_tm**2

    def transmittances(self, tilt: float) -> tuple[float, float]:
        """(T_TE, T_TM) intensity transmittances of the whole filter."""
        t_te, t_tm = self.interface_transmittances(tilt)
        return t_te**self.n_interfaces, t_tm**self.n_interfaces

    def ratio(self, tilt: float) -> float:
        """T_TE / T_TM of the whole filter (1 at normal incidence)."""
        t_te, t_tm = self.transmittances(tilt)
        return t_te / t_tm

    def ratio_floor(self) -> float:
        """Infimum of the reachable T_TE/T_TM as tilt approaches grazing."""
        return self.refractive_index ** (-2 * self.n_interfaces)


def fresnel_plate(plate: FresnelPlate, tilt: float) -> tuple[float, float]:
    """(T_TE, T_TM) intensity transmittances of a tilted plate filter."""
    return plate.transmittances(tilt)


def tilt_for_ratio(target: float, plate: FresnelPlate | None = None) -> float:
    """Tilt angle at which the filter reaches T_TE/T_TM = target.

    T_TE/T_TM falls monotonically from 1 (normal incidence) towards
    n^(-2 * interfaces) at grazing, so a bracketed root always exists for
    feasible targets.
    """
    if plate is None:
        plate = FresnelPlate()
    if not 0.0 < target <= 1.0:
        raise ValueError(f"target ratio must lie in (0, 1], got {target}")
    if target == 1.0:
        return 0.0
    hi = math.pi / 2.0 - 1e-9
    floor = plate.ratio(hi)
    if target <= floor:
        raise InfeasibleFilterError(target, floor)
    return float(brentq(lambda t: plate.ratio(t) - target, 0.0, hi, xtol=1e-12))


def filter_amplitudes(
    sigma: float,
    favored_abs: float = 1.0,
) -> tuple[float, float]:
    """Amplitude pair (t_H, t_V) realizing (t_V/t_H)^2 = sigma.

    The favored (less attenuated) polarization gets amplitude
    `favored_abs`; the other side is scaled down by sqrt of the ratio.
    """
    if sigma <= 0.0:
        raise ValueError(f"intensity ratio must be positive, got {sigma}")
    if not 0.0 < favored_abs <= 1.0:
        raise ValueError(f"favored amplitude must lie in (0, 1], got {favored_abs}")
    if sigma <= 1.0:
        return favored_abs, favored_abs * math.sqrt(sigma)
    return favored_abs / math.sqrt(sigma), favored_abs


def filter_from_ratio(
    sigma: float,
    arm: str,
    bins: Sequence[int] = (0,),
    favored_abs: float = 1.0,
    plate: FresnelPlate | None = None,
) -> OpticalElement:
    """Polarization filter realizing intensity ratio (t_V/t_H)^2 = sigma.

    With `plate` given, absolute transmittances come from the Fresnel
    model at the tilt that realizes the ratio (`favored_abs` is ignored);
    otherwise the favored polarization is transmitted with `favored_abs`.
    """
    if sigma <= 0.0:
        raise ValueError(f"intensity ratio must be positive, got {sigma}")
    if plate is not None:
        tilt = tilt_for_ratio(min(sigma, 1.0 / sigma), plate)
        t_att, t_fav = plate.transmittances(tilt)
        if sigma <= 1.0:
            t_h, t_v = t_fav, t_att
        else:
            t_h, t_v = t_att, t_fav
        return pol_filter(math.sqrt(t_h), math.sqrt(t_v), arm, bins)
    t_h, t_v = filter_amplitudes(sigma, favored_abs)
    return pol_filter(t_h, t_v, arm, bins)
