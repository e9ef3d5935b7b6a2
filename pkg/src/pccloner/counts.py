"""Poisson count statistics for simulated coincidence measurements."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cloner import CloningOutcome


@dataclass(frozen=True)
class CountRecord:
    """Sampled analyzer counts of one measurement run."""

    c_pp: int
    c_pm: int
    c_mp: int
    c_mm: int

    @property
    def total(self) -> int:
        return self.c_pp + self.c_pm + self.c_mp + self.c_mm

    @property
    def f1(self) -> float:
        return (self.c_pp + self.c_pm) / self.total if self.total else math.nan

    @property
    def f2(self) -> float:
        return (self.c_pp + self.c_mp) / self.total if self.total else math.nan


@dataclass(frozen=True)
class CountSummary:
    """Per-run count records plus fidelity statistics across runs."""

    records: tuple[CountRecord, ...]
    f1_mean: float
    f1_std: float
    f2_mean: float
    f2_std: float


def sample_counts(
    outcome: CloningOutcome,
    pair_rate: float,
    duration: float,
    repetitions: int = 10,
    seed: int = 0,
) -> CountSummary:
    """Sample detector counts for repeated fixed-duration measurements.

    Each analyzer channel x fires N_x ~ Poisson(pair_rate * duration * C_x)
    independently per repetition, with C_x the per-pair coincidence
    probabilities of `outcome`.  Runs with zero total counts contribute
    NaN fidelities and are excluded from the statistics.
    """
    if pair_rate <= 0.0:
        raise ValueError(f"pair rate must be positive, got {pair_rate}")
    if duration <= 0.0:
        raise ValueError(f"duration must be positive, got {duration}")
    if repetitions < 1:
        raise ValueError(f"repetitions must be positive, got {repetitions}")
    rng = np.random.default_rng(seed)
    expected = pair_rate * duration * np.array(
        [outcome.c_pp, outcome.c_pm, outcome.c_mp, outcome.c_mm]
    )
    records = tuple(
        CountRecord(*(int(n) for n in rng.poisson(expected)))
        for _ in range(repetitions)
    )
    f1s = np.array([r.f1 for r in records])
    f2s = np.array([r.f2 for r in records])
    f1s = f1s[~np.isnan(f1s)]
    f2s = f2s[~np.isnan(f2s)]

    def _stats(values: np.ndarray) -> tuple[float, float]:
        if values.size == 0:
            return math.nan, math.nan
        std = float(values.std(ddof=1)) if values.size > 1 else 0.0
        return float(values.mean()), std

    f1_mean, f1_std = _stats(f1s)
    f2_mean, f2_std = _stats(f2s)
    return CountSummary(records, f1_mean, f1_std, f2_mean, f2_std)
