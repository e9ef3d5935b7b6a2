"""Request and response models shared by the HTTP service and the CLI."""

from __future__ import annotations

import math
from typing import Literal

import numpy as np
from pydantic import BaseModel, Field, model_validator

from ..elements import FresnelPlate
from ..theory import HYBRID_REFERENCE, SBS_REFERENCE

Setup = Literal["sbs", "hybrid"]
Mode = Literal["ideal", "realistic"]


class GridSpec(BaseModel):
    """Inclusive linear grid start:stop:num."""

    start: float
    stop: float
    num: int = Field(ge=1)

    def values(self) -> list[float]:
        return [float(v) for v in np.linspace(self.start, self.stop, self.num)]

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"grid must look like start:stop:num, got {text!r}")
        return cls(start=float(parts[0]), stop=float(parts[1]), num=int(parts[2]))


class PlateSpec(BaseModel):
    """Tilted glass-plate filter geometry for REALISTIC mode."""

    refractive_index: float = Field(default=1.5, gt=1.0)
    plates_per_filter: int = Field(default=2, ge=1)
    passes_per_plate: int = Field(default=2, ge=1)

    def to_plate(self) -> FresnelPlate:
        return FresnelPlate(
            refractive_index=self.refractive_index,
            plates_per_filter=self.plates_per_filter,
            passes_per_plate=self.passes_per_plate,
        )


def _check_open_unit(name: str, values: list[float]) -> None:
    for v in values:
        if not 0.0 < v < 1.0:
            raise ValueError(f"{name} values must lie strictly in (0, 1), got {v}")


class FrontierRequest(BaseModel):
    """Fidelity trade-off tables for both cloner families."""

    grid: GridSpec = GridSpec(start=0.0, stop=1.0, num=101)


class FiltersRequest(BaseModel):
    """Filter ratios and plate tilt angles over an asymmetry grid."""

    setup: Setup = "sbs"
    r_v: float | None = None
    r_h: float | None = None
    q: float | None = None
    q_grid: GridSpec | None = None
    plate: PlateSpec = PlateSpec()

    @model_validator(mode="after")
    def _fill(self) -> "FiltersRequest":
        ref = SBS_REFERENCE if self.setup == "sbs" else HYBRID_REFERENCE
        if self.r_v is None:
            self.r_v = ref[0]
        if self.r_h is None:
            self.r_h = ref[1]
        _check_open_unit("q", self.q_values())
        return self

    def q_values(self) -> list[float]:
        if self.q is not None:
            return [self.q]
        grid = self.q_grid or GridSpec(start=0.1, stop=0.9, num=17)
        return grid.values()


class CloneRequest(BaseModel):
    """Full cloner runs: equator scans over an asymmetry grid."""

    setup: Setup = "sbs"
    mode: Mode = "ideal"
    q: float | None = None
    q_grid: GridSpec | None = None
    r_v: float | None = None
    r_h: float | None = None
    r_fc: float = 0.5
    residual_phase: float = 0.0
    overlap: float = Field(default=1.0, ge=0.0, le=1.0)
    ancilla_theta: float = 0.0
    ancilla_phi: float = 0.0
    plate: PlateSpec = PlateSpec()

    @model_validator(mode="after")
    def _fill(self) -> "CloneRequest":
        ref = SBS_REFERENCE if self.setup == "sbs" else HYBRID_REFERENCE
        if self.r_v is None:
            self.r_v = ref[0]
        if self.r_h is None:
            self.r_h = ref[1]
        _check_open_unit("q", self.q_values())
        return self

    def q_values(self) -> list[float]:
        if self.q is not None:
            return [self.q]
        if self.q_grid is not None:
            return self.q_grid.values()
        return [0.5]


class PsuccRequest(BaseModel):
    """Success probability over an asymmetry grid."""

    setup: Setup = "sbs"
    mode: Mode = "ideal"
    r_v: float | None = None
    r_h: float | None = None
    r_fc: float = 0.5
    q_grid: GridSpec = GridSpec(start=0.1, stop=0.9, num=17)
    plate: PlateSpec = PlateSpec()

    @model_validator(mode="after")
    def _fill(self) -> "PsuccRequest":
        ref = SBS_REFERENCE if self.setup == "sbs" else HYBRID_REFERENCE
        if self.r_v is None:
            self.r_v = ref[0]
        if self.r_h is None:
            self.r_h = ref[1]
        _check_open_unit("q", self.q_grid.values())
        return self


class SampleCountsRequest(BaseModel):
    """Poisson-sampled analyzer counts for repeated measurements."""

    setup: Setup = "sbs"
    mode: Mode = "ideal"
    q: float = 0.5
    phi: float = 0.0
    r_v: float | None = None
    r_h: float | None = None
    r_fc: float = 0.5
    overlap: float = Field(default=1.0, ge=0.0, le=1.0)
    residual_phase: float = 0.0
    ancilla_theta: float = 0.0
    ancilla_phi: float = 0.0
    pair_rate: float = Field(default=1000.0, gt=0.0)
    duration: float = Field(gt=0.0)
    repetitions: int = Field(default=10, ge=1)
    seed: int = Field(default=0, ge=0)
    plate: PlateSpec = PlateSpec()

    @model_validator(mode="after")
    def _fill(self) -> "SampleCountsRequest":
        ref = SBS_REFERENCE if self.setup == "sbs" else HYBRID_REFERENCE
        if self.r_v is None:
            self.r_v = ref[0]
        if self.r_h is None:
            self.r_h = ref[1]
        _check_open_unit("q", [self.q])
        return self


class HomRequest(BaseModel):
    """Two-photon coincidence dip versus temporal overlap."""

    reflectance: float = Field(default=0.5, ge=0.0, le=1.0)
    s_grid: GridSpec = GridSpec(start=0.0, stop=1.0, num=11)

    @model_validator(mode="after")
    def _check(self) -> "HomRequest":
        for s in self.s_grid.values():
            if not 0.0 <= s <= 1.0:
                raise ValueError(f"overlap values must lie in [0, 1], got {s}")
        return self


class TableResponse(BaseModel):
    """Echo of the validated request plus one flat record per row."""

    spec: dict
    rows: list[dict]


def significant(value: float | None, digits: int = 12) -> float | None:
    """Round to a fixed number of significant digits (None passes through)."""
    if value is None:
        return None
    if math.isnan(value):
        return None
    return float(f"{value:.{digits}g}")
