"""
Report schemas.

Pydantic models for every structured result:
- ComparisonReport, ExponentFit, GammaExponentReport: oracle diagnostics
- SuiteResult, VerifyReport: the verification run
- WignerReport, SingleReport, CooperReport: single-shot CLI reports
"""

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.schemas.base import BaseReport, ComplexPair, GeometryView, SpinView


# =============================================================================
# Oracle diagnostics
# =============================================================================

class ComparisonReport(BaseModel):
    """
    Outcome of a phase-aligned state comparison.

    `passed` serializes as "pass".
    """
    model_config = ConfigDict(populate_by_name=True, frozen=True)

    max_abs_deviation: float = Field(ge=0.0)
    aligned_phase: ComplexPair
    passed: bool = Field(alias="pass")
    tolerance: float

    @model_validator(mode="after")
    def _consistent(self) -> "ComparisonReport":
        if self.passed != (self.max_abs_deviation <= self.tolerance):
            raise ValueError("pass must equal max_abs_deviation <= tolerance")
        return self


class ExponentFit(BaseModel):
    """Least-squares line log(y) = slope * log(x) + intercept."""
    model_config = ConfigDict(frozen=True)

    slope: float
    intercept: float
    r_squared: float = Field(ge=0.0, le=1.0)
    samples: int = Field(ge=8)


class GammaExponentReport(BaseModel):
    """Power of sin(theta) in Gamma: measured from boosted singlets vs the printed form."""
    model_config = ConfigDict(frozen=True)

    measured: ExponentFit
    printed: ExponentFit
    discrepancy: bool = Field(description="measured and printed slopes differ by more than 0.5")
    note: str


class SuiteResult(BaseModel):
    """One verification suite."""
    model_config = ConfigDict(frozen=True)

    name: str
    max_deviation: float
    tolerance: float
    passed: bool
    detail: str = ""


class VerifyReport(BaseReport):
    """Full verification run; `passed` is true iff every suite passed."""
    seed: int
    samples: int
    perturbation: float = 0.0
    passed: bool
    suites: list[SuiteResult]
    gamma_exponent: GammaExponentReport
    printed_tminus_limit_deviation: float = Field(
        description="deviation of the printed T- limit (+1/2 sin t sin 2phi |T0>) from the boosted pair"
    )


# =============================================================================
# Single-shot reports
# =============================================================================

class WignerReport(BaseReport):
    geometry: GeometryView
    gamma1: float
    gamma2: float
    d_factor: float | None = Field(default=None, description="None when a speed is zero")
    omega_plus: float
    omega_minus: float
    omega_sum: float
    v_plus: tuple[float, float, float]
    v_minus: tuple[float, float, float]


class SingleReport(BaseReport):
    geometry: GeometryView
    spin: SpinView
    amps: list[ComplexPair]
    reduced_density: list[list[ComplexPair]]
    entropy_bits: float
    entropy_limit_bits: float = Field(description="v1, v2 -> c value at the same phi")


class CooperReport(BaseReport):
    geometry: GeometryView
    spin: SpinView
    kind: str
    weights: dict[str, float] = Field(description="|c|^2 per (velocity parity, spin state) cell")
    singlet_weight: float
    triplet_weight: float
    gamma: float | None = Field(description="tan^2(w+ + w-); None when infinite")
    gamma_infinite: bool
    gamma_printed: float = Field(description="same expression with sin(theta) instead of sin^2(theta)")
    comparison: ComparisonReport
