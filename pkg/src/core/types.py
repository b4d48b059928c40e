"""
Shared type definitions for boosted-entanglement.

This module contains the types shared by the physics modules and the CLI:
- PairKind, VelocityParity: labels of the two-electron spin/velocity basis
- AngleUnit, OutputFormat, SweepMode, Command: CLI enumerations
- GridAxis, SweepGrid: parameter sweep description
- RunConfig: validated configuration of one CLI invocation
"""

import itertools
import math
from enum import Enum
from pathlib import Path
from typing import Iterator

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class PairKind(str, Enum):
    """Two-spin basis states built on the tilde basis."""
    S = "S"
    T0 = "T0"
    T_PLUS = "T+"
    T_MINUS = "T-"

    @property
    def label(self) -> str:
        """Column-safe name (T+ -> Tplus)."""
        return self.value.replace("+", "plus").replace("-", "minus")


class VelocityParity(str, Enum):
    """Exchange symmetry of the (|v+,v-> +/- |v-,v+>)/sqrt(2) velocity part."""
    SYM = "sym"
    ANTI = "anti"


class AngleUnit(str, Enum):
    RAD = "rad"
    DEG = "deg"


class OutputFormat(str, Enum):
    TEXT = "text"
    JSON = "json"
    CSV = "csv"


class SweepMode(str, Enum):
    SINGLE = "single"
    COOPER = "cooper"


class Command(str, Enum):
    WIGNER = "wigner"
    SINGLE = "single"
    ENTROPY_CURVE = "entropy-curve"
    COOPER = "cooper"
    SWEEP = "sweep"
    VERIFY = "verify"


# Order in which grid axes are nested; the last one varies fastest.
SWEEP_PARAMETERS = ("v1", "v2", "theta", "phi", "eta")
ANGLE_PARAMETERS = ("theta", "phi", "eta")
MAX_GRID_SIZE = 10_000_000


class GridAxis(BaseModel):
    """Evenly spaced values start..stop (inclusive) in `steps` points."""
    model_config = ConfigDict(frozen=True)

    start: float
    stop: float
    steps: int = Field(ge=1)

    @model_validator(mode="after")
    def _ordered(self) -> "GridAxis":
        if self.start > self.stop:
            raise ValueError(f"start {self.start} is above stop {self.stop}")
        return self

    def values(self) -> list[float]:
        if self.steps == 1:
            return [self.start]
        return [float(x) for x in np.linspace(self.start, self.stop, self.steps)]


class SweepGrid(BaseModel):
    """
    Per-parameter axes for any subset of {v1, v2, theta, phi, eta}.

    Angles are already in radians. Parameters without an axis are held at the
    scalar value from RunConfig.
    """
    model_config = ConfigDict(frozen=True)

    axes: dict[str, GridAxis] = Field(default_factory=dict)

    @field_validator("axes")
    @classmethod
    def _known_parameters(cls, value: dict[str, GridAxis]) -> dict[str, GridAxis]:
        unknown = sorted(set(value) - set(SWEEP_PARAMETERS))
        if unknown:
            raise ValueError(f"unknown sweep parameter(s): {', '.join(unknown)}")
        return value

    @property
    def size(self) -> int:
        return math.prod(axis.steps for axis in self.axes.values())

    def points(self, fixed: dict[str, float]) -> Iterator[dict[str, float]]:
        """Grid points in lexicographic order of SWEEP_PARAMETERS."""
        columns = [
            self.axes[name].values() if name in self.axes else [fixed[name]]
            for name in SWEEP_PARAMETERS
        ]
        for combo in itertools.product(*columns):
            yield dict(zip(SWEEP_PARAMETERS, combo))


class RunConfig(BaseModel):
    """
    Configuration for one CLI run.

    Angles are stored in radians whatever unit they were entered in.

    Attributes:
        command: subcommand being run
        v1, v2: boost speeds as fractions of c
        theta, phi, eta: boost opening angle, spin inclination and azimuth
        units: unit used for bare numbers on the command line
        kind: pair state for the cooper command
        mode: evaluation mode for the sweep command
        samples, seed: random sampling for verify
        steps: number of rows of the entropy curve
        workers: process count for sweeps and verification
        output: destination file (stdout when omitted)
        format: report format
        perturbation: amplitude offset injected into closed forms (verify self-test)
    """
    command: Command
    v1: float = Field(default=0.5, ge=0.0, lt=1.0)
    v2: float = Field(default=0.5, ge=0.0, lt=1.0)
    theta: float = Field(default=math.pi / 2)
    phi: float = Field(default=math.pi / 2)
    eta: float = Field(default=0.0)
    units: AngleUnit = AngleUnit.RAD
    kind: PairKind = PairKind.S
    mode: SweepMode = SweepMode.SINGLE
    samples: int = Field(default=1000, ge=1)
    seed: int = 20240917
    steps: int = Field(default=181, ge=2)
    workers: int = Field(default=1, ge=1)
    output: Path | None = None
    format: OutputFormat = OutputFormat.TEXT
    perturbation: float = Field(default=0.0, ge=0.0)

    @field_validator("theta", "phi", "eta")
    @classmethod
    def _finite_angle(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("angle must be finite")
        return value
