"""Two-photon polarization states over a small set of optical modes.

A mode is one (arm, polarization, time-bin) triple.  States live in the
fixed two-photon sector, spanned by occupation vectors that sum to two,
and evolve by substituting creation operators through the scattering
matrix of each optical element.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

POL_H = "H"
POL_V = "V"
POLS = (POL_H, POL_V)

ZERO_NORM_TOL = 1e-10


class DegenerateOutcomeError(ArithmeticError):
    """Raised when a postselection or normalization hits zero probability."""


class Mode(NamedTuple):
    """One optical mode: spatial arm, polarization, temporal bin."""

    arm: str
    pol: str
    tbin: int = 0


class PolarizationQubit:
    """Bloch-sphere polarization state cos(θ/2)|V⟩ + e^(iφ) sin(θ/2)|H⟩."""

    __slots__ = ("theta", "phi")

    def __init__(self, theta: float, phi: float = 0.0):
        if not 0.0 <= theta <= math.pi:
            raise ValueError(f"theta must lie in [0, pi], got {theta}")
        self.theta = float(theta)
        self.phi = float(phi) % (2.0 * math.pi)

    @classmethod
    def vertical(cls) -> "PolarizationQubit":
        return cls(0.0)

    @classmethod
    def horizontal(cls) -> "PolarizationQubit":
        return cls(math.pi)

    @classmethod
    def equatorial(cls, phi: float) -> "PolarizationQubit":
        """State on the Bloch equator, (|V⟩ + e^(iφ)|H⟩)/√2."""
        return cls(math.pi / 2.0, phi)

    def amplitudes(self) -> dict[str, complex]:
        """Polarization amplitudes keyed by 'H'/'V'."""
        return {
            POL_V: complex(math.cos(self.theta / 2.0)),
            POL_H: np.exp(1j * self.phi) * math.sin(self.theta / 2.0),
        }

    def orthogonal(self) -> "PolarizationQubit":
        """The antipodal (orthogonal) polarization state."""
        return PolarizationQubit(math.pi - self.theta, self.phi + math.pi)

    def with_phi(self, phi: float) -> "PolarizationQubit":
        return PolarizationQubit(self.theta, phi)

    def __repr__(self) -> str:
        return f"PolarizationQubit(theta={self.theta:.6g}, phi={self.phi:.6g})"


class ModeSet:
    """Ordered mode list plus the induced two-photon occupation basis.

    Modes are ordered by (arm, pol, tbin); the two-photon basis is ordered
    lexicographically over occupation vectors, which coincides with
    enumerating mode pairs (i, j), i <= j, in lexicographic order.
    """

    def __init__(self, modes: Iterable[Mode]):
        ordered = tuple(sorted(modes))
        if len(set(ordered)) != len(ordered):
            raise ValueError("duplicate modes")
        self.modes = ordered
        self.mode_index = {m: k for k, m in enumerate(ordered)}
        m = len(ordered)
        self.pairs = tuple((i, j) for i in range(m) for j in range(i, m))
        self.pair_index = {p: k for k, p in enumerate(self.pairs)}
        self.dim = len(self.pairs)

    @classmethod
    def for_arms(cls, arms: Sequence[str], bins: Sequence[int] = (0,)) -> "ModeSet":
        return cls(Mode(a, p, b) for a in arms for p in POLS for b in bins)

    @property
    def n_modes(self) -> int:
        return len(self.modes)

    @property
    def arms(self) -> tuple[str, ...]:
        return tuple(dict.fromkeys(m.arm for m in self.modes))

    @property
    def bins(self) -> tuple[int, ...]:
        return tuple(sorted({m.tbin for m in self.modes}))

    def basis_index(self, occupation: Sequence[int]) -> int:
        """Index of a two-photon occupation vector in the basis."""
        occ = tuple(occupation)
        if len(occ) != self.n_modes or sum(occ) != 2 or min(occ) < 0:
            raise ValueError(f"not a two-photon occupation vector: {occ}")
        filled = [i for i, n in enumerate(occ) for _ in range(n)]
        return self.pair_index[(filled[0], filled[1])]

    def occupation_of(self, index: int) -> np.ndarray:
        """Occupation vector of the basis state at `index`."""
        i, j = self.pairs[index]
        occ = np.zeros(self.n_modes, dtype=int)
        occ[i] += 1
        occ[j] += 1
        return occ


@dataclass
class TwoPhotonState:
    """Amplitudes over the two-photon occupation basis of a ModeSet."""

    mode_set: ModeSet
    amps: np.ndarray

    def __post_init__(self) -> None:
        self.amps = np.asarray(self.amps, dtype=complex)
        if self.amps.shape != (self.mode_set.dim,):
            raise ValueError(
                f"amplitude vector must have length {self.mode_set.dim}, "
                f"got shape {self.amps.shape}"
            )

    def copy(self) -> "TwoPhotonState":
        return TwoPhotonState(self.mode_set, self.amps.copy())


def single_photon_vector(
    mode_set: ModeSet,
    arm: str,
    qubit: PolarizationQubit,
    bin_amps: dict[int, complex] | None = None,
) -> np.ndarray:
    """Single-photon amplitude vector for a polarization qubit in one arm.

    `bin_amps` distributes the photon over temporal bins (default: all
    amplitude in bin 0).
    """
    if bin_amps is None:
        bin_amps = {0: 1.0}
    pol_amps = qubit.amplitudes()
    vec = np.zeros(mode_set.n_modes, dtype=complex)
    for (pol, pa) in pol_amps.items():
        for tbin, ba in bin_amps.items():
            mode = Mode(arm, pol, tbin)
            if mode not in mode_set.mode_index:
                raise ValueError(f"mode {mode} not in mode set")
            vec[mode_set.mode_index[mode]] = pa * ba
    return vec


def pair_state(mode_set: ModeSet, u: np.ndarray, v: np.ndarray) -> TwoPhotonState:
    """State a†_u a†_v |0⟩ for single-photon amplitude vectors u and v.

    Unit norm is guaranteed only when u and v occupy disjoint mode sets;
    overlapping photons pick up bosonic enhancement factors.
    """
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    amps = np.zeros(mode_set.dim, dtype=complex)
    for k, (i, j) in enumerate(mode_set.pairs):
        if i == j:
            amps[k] = math.sqrt(2.0) * u[i] * v[i]
        else:
            amps[k] = u[i] * v[j] + u[j] * v[i]
    return TwoPhotonState(mode_set, amps)


def product_state(
    mode_set: ModeSet,
    signal: PolarizationQubit,
    signal_arm: str,
    ancilla: PolarizationQubit,
    ancilla_arm: str,
    ancilla_bin_amps: dict[int, complex] | None = None,
) -> TwoPhotonState:
    """Two-photon input state with one photon per (distinct) arm."""
    if signal_arm == ancilla_arm:
        raise ValueError("signal and ancilla must enter distinct arms")
    u = single_photon_vector(mode_set, signal_arm, signal)
    v = single_photon_vector(mode_set, ancilla_arm, ancilla, ancilla_bin_amps)
    return pair_state(mode_set, u, v)


def two_photon_matrix(mode_set: ModeSet, scattering: np.ndarray) -> np.ndarray:
    """Two-photon transfer matrix induced by a one-photon scattering matrix.

    Entry (out=(i,j), in=(k,l)) is per(S[{i,j},{k,l}]) / sqrt(μ_in μ_out)
    with μ the product of occupation factorials; this is the bosonic
    permanent rule restricted to the two-photon sector.
    """
    s = np.asarray(scattering, dtype=complex)
    m = mode_set.n_modes
    if s.shape != (m, m):
        raise ValueError(f"scattering matrix must be {m}x{m}, got {s.shape}")
    pairs = np.array(mode_set.pairs)
    i, j = pairs[:, 0], pairs[:, 1]
    # normalization 1/sqrt(2) per doubly occupied occupation vector
    w = np.where(i == j, 1.0 / math.sqrt(2.0), 1.0)
    k, l = i, j
    transfer = (
        s[np.ix_(i, k)] * s[np.ix_(j, l)] + s[np.ix_(i, l)] * s[np.ix_(j, k)]
    )
    return transfer * w[:, None] * w[None, :]


def apply_scattering(state: TwoPhotonState, scattering: np.ndarray) -> TwoPhotonState:
    """Push a state through a full one-photon scattering matrix."""
    transfer = two_photon_matrix(state.mode_set, scattering)
    return TwoPhotonState(state.mode_set, transfer @ state.amps)


def inner_product(a: TwoPhotonState, b: TwoPhotonState) -> complex:
    if a.mode_set is not b.mode_set and a.mode_set.modes != b.mode_set.modes:
        raise ValueError("states live on different mode sets")
    return complex(np.vdot(a.amps, b.amps))


def norm(state: TwoPhotonState) -> float:
    return float(np.linalg.norm(state.amps))


def normalize(state: TwoPhotonState) -> tuple[TwoPhotonState, float]:
    """Unit-normalized copy plus the original norm.

    Raises DegenerateOutcomeError when the state has (numerically) zero
    norm, e.g. after an impossible postselection.
    """
    n = norm(state)
    if n < ZERO_NORM_TOL:
        raise DegenerateOutcomeError(f"state norm {n:.3e} is numerically zero")
    return TwoPhotonState(state.mode_set, state.amps / n), n
