"""
Relativistic boost geometry.

This module provides:
- Speed, BoostGeometry, WignerPair, Velocity3: validated kinematic inputs/outputs
- gamma, d_factor: Lorentz factors and the D factor of the Wigner angle
- wigner_angle, wigner_pair: rotation angles of the +v1 and -v1 velocity branches
- compose_velocities: relativistic velocity composition (reporting v+ / v-)

Speeds are dimensionless fractions of c throughout. The frame follows the
usual boost scheme: v1 along +y, v2 in the x-y plane at angle theta from v1,
so the Wigner rotation axis v2_hat x v1_hat is +z for the +v1 branch.
"""

import logging
import math

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from src.core.exceptions import (
    DegenerateGeometryError,
    DomainError,
    SingularKinematicsError,
)


logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
BELOW_ONE = math.nextafter(1.0, 0.0)


def normalize_polar(angle: float) -> float:
    """Fold an angle into [0, pi] (angle and -angle describe the same opening)."""
    if not math.isfinite(angle):
        raise ValueError(f"angle must be finite, got {angle}")
    folded = angle % TWO_PI
    if folded > math.pi:
        folded = TWO_PI - folded
    return folded


class Speed(BaseModel):
    """A speed as a fraction of c, 0 <= beta < 1."""
    model_config = ConfigDict(frozen=True)

    beta: float = Field(ge=0.0, lt=1.0, description="speed in units of c")


class BoostGeometry(BaseModel):
    """
    Complete kinematic input: two boost speeds and the angle between them.

    Attributes:
        v1: speed of the particle's velocity eigenstates (+v1 / -v1)
        v2: speed of the observer's boost
        theta: angle between v1 and v2 in radians, folded into [0, pi]
    """
    model_config = ConfigDict(frozen=True)

    v1: Speed
    v2: Speed
    theta: float

    @field_validator("v1", "v2", mode="before")
    @classmethod
    def _wrap_speed(cls, value):
        if isinstance(value, (int, float)):
            return Speed(beta=value)
        return value

    @field_validator("theta")
    @classmethod
    def _fold_theta(cls, value: float) -> float:
        return normalize_polar(value)

    @classmethod
    def of(cls, beta1: float, beta2: float, theta: float) -> "BoostGeometry":
        return cls(v1=Speed(beta=beta1), v2=Speed(beta=beta2), theta=theta)

    @property
    def is_collinear(self) -> bool:
        return self.theta == 0.0 or self.theta == math.pi

    @property
    def is_trivial(self) -> bool:
        """True when no Wigner rotation occurs."""
        return self.v1.beta == 0.0 or self.v2.beta == 0.0 or self.is_collinear


class WignerPair(BaseModel):
    """Wigner angles acquired by the +v1 (omega_plus) and -v1 (omega_minus) branches."""
    model_config = ConfigDict(frozen=True)

    omega_plus: float = Field(ge=0.0, le=math.pi / 2)
    omega_minus: float = Field(ge=0.0, le=math.pi / 2)

    @property
    def omega_sum(self) -> float:
        return self.omega_plus + self.omega_minus


def _norm(values) -> float:
    return math.sqrt(sum(float(c) * float(c) for c in values))


class Velocity3(BaseModel):
    """A 3-velocity in units of c with magnitude < 1."""
    model_config = ConfigDict(frozen=True)

    components: tuple[float, float, float]

    @field_validator("components")
    @classmethod
    def _subluminal(cls, value: tuple[float, float, float]) -> tuple[float, float, float]:
        magnitude = _norm(value)
        if not magnitude < 1.0:
            raise ValueError(f"|v| = {magnitude!r} must be below 1")
        return value

    @property
    def magnitude(self) -> float:
        return _norm(self.components)

    def as_array(self) -> np.ndarray:
        return np.array(self.components, dtype=float)

    def reversed(self) -> "Velocity3":
        return Velocity3(components=tuple(-c for c in self.components))


def gamma(v: Speed | float) -> float:
    """
    Lorentz factor (1 - beta^2)^(-1/2).

    Raises:
        DomainError: if beta is outside [0, 1)
    """
    beta = v.beta if isinstance(v, Speed) else float(v)
    if not 0.0 <= beta < 1.0:
        raise DomainError(f"speed must satisfy 0 <= beta < 1, got {beta}")
    # (1-b)(1+b) keeps precision for beta close to 1
    return 1.0 / math.sqrt((1.0 - beta) * (1.0 + beta))


def d_factor(g1: float, g2: float) -> float:
    """
    D = sqrt(((g1+1)/(g1-1)) * ((g2+1)/(g2-1))).

    Raises:
        SingularKinematicsError: if either gamma is <= 1 (zero speed must be
            handled by the caller, the rotation vanishes there)
    """
    if g1 <= 1.0 or g2 <= 1.0:
        raise SingularKinematicsError(f"D factor diverges for gamma <= 1 (got {g1}, {g2})")
    return math.sqrt(((g1 + 1.0) / (g1 - 1.0)) * ((g2 + 1.0) / (g2 - 1.0)))


def d_factor_from_speeds(beta1: float, beta2: float) -> float:
    """
    D evaluated from the speeds directly.

    (g+1)/(g-1) = (1 + 1/g)^2 / beta^2, which avoids the g - 1 cancellation
    at small speeds.
    """
    if beta1 <= 0.0 or beta2 <= 0.0:
        raise SingularKinematicsError(f"D factor diverges at zero speed (got {beta1}, {beta2})")
    r1 = 1.0 / gamma(beta1)
    r2 = 1.0 / gamma(beta2)
    return ((1.0 + r1) / beta1) * ((1.0 + r2) / beta2)


def wigner_angle(beta1: float, beta2: float, theta: float) -> float:
    """
    Wigner angle for boosts beta1, beta2 separated by theta: tan w = sin t / (cos t + D).

    Returns 0 when either speed is 0 or the boosts are collinear.
    """
    if beta1 == 0.0 or beta2 == 0.0 or theta == 0.0 or theta == math.pi:
        return 0.0
    d = d_factor_from_speeds(beta1, beta2)
    return math.atan2(math.sin(theta), math.cos(theta) + d)


def wigner_pair(g: BoostGeometry) -> WignerPair:
    """
    Wigner angles of both velocity branches.

    The -v1 branch subtends the supplementary angle pi - theta with v2, so
    omega_minus is wigner_angle evaluated there: tan w- = sin t / (-cos t + D).
    """
    if g.is_trivial:
        logger.debug("trivial boost geometry %s, no Wigner rotation", g)
        return WignerPair(omega_plus=0.0, omega_minus=0.0)
    b1, b2 = g.v1.beta, g.v2.beta
    return WignerPair(
        omega_plus=wigner_angle(b1, b2, g.theta),
        omega_minus=wigner_angle(b1, b2, math.pi - g.theta),
    )


def tan_omega_sum(g: BoostGeometry) -> float:
    """tan(w+ + w-) = sqrt((g1^2-1)(g2^2-1)) sin(theta) / (g1 + g2)."""
    if g.is_trivial:
        return 0.0
    g1, g2 = gamma(g.v1), gamma(g.v2)
    # g^2 - 1 = (beta g)^2
    return (g.v1.beta * g1) * (g.v2.beta * g2) * math.sin(g.theta) / (g1 + g2)


def _limit_angle(theta: float) -> float:
    return math.atan2(math.sin(theta), math.cos(theta) + 1.0)


def omega_sum_limit(theta: float) -> float:
    """
    w+ + w- as both speeds approach c (D -> 1): theta/2 + (pi/2 - theta/2) = pi/2.

    Raises:
        DegenerateGeometryError: for collinear boosts (theta in {0, pi})
    """
    if not 0.0 < theta < math.pi:
        raise DegenerateGeometryError(f"theta must lie in (0, pi), got {theta}")
    return _limit_angle(theta) + _limit_angle(math.pi - theta)


def compose_velocities(u: Velocity3, v: Velocity3) -> Velocity3:
    """
    Velocity of a particle moving with `u` as seen after a boost `v`.

    Composed through proper velocities p = gamma u:
    p_w = p_perp + gamma_v (p_par + gamma_u v), w = p_w / sqrt(1 + |p_w|^2).
    The result always has |w| < 1; a magnitude that rounds up to 1 is
    clamped to the largest double below 1.
    """
    ua = u.as_array()
    va = v.as_array()
    v2 = float(va @ va)
    if v2 == 0.0:
        return u
    gamma_u = gamma(min(u.magnitude, BELOW_ONE))
    gamma_v = gamma(min(math.sqrt(v2), BELOW_ONE))
    p = gamma_u * ua
    p_par = (float(p @ va) / v2) * va
    p_w = (p - p_par) + gamma_v * (p_par + gamma_u * va)
    w = p_w / math.sqrt(1.0 + float(p_w @ p_w))
    while not _norm(w) < 1.0:
        w = w * (BELOW_ONE / _norm(w))
    return Velocity3(components=tuple(float(c) for c in w))


def boost_vectors(g: BoostGeometry) -> tuple[Velocity3, Velocity3]:
    """v1 along +y and v2 in the x-y plane at angle theta from v1."""
    v1 = Velocity3(components=(0.0, g.v1.beta, 0.0))
    v2 = Velocity3(
        components=(g.v2.beta * math.sin(g.theta), g.v2.beta * math.cos(g.theta), 0.0)
    )
    return v1, v2


def rotation_axis(v2: Velocity3, v1: Velocity3) -> np.ndarray | None:
    """Unit Wigner rotation axis v2_hat x v1_hat, or None for collinear/zero boosts."""
    a, b = v2.as_array(), v1.as_array()
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        return None
    n = np.cross(a / na, b / nb)
    length = np.linalg.norm(n)
    if length < 1e-15:
        return None
    return n / length


def branch_velocities(g: BoostGeometry) -> tuple[Velocity3, Velocity3]:
    """(v+, v-): the images of +v1 and -v1 under the boost v2."""
    v1, v2 = boost_vectors(g)
    return compose_velocities(v1, v2), compose_velocities(v1.reversed(), v2)


# Numerical stand-in for "both speeds -> c"; keeps Speed strictly below 1.
ULTRARELATIVISTIC_BETA = 1.0 - 1e-8


def ultrarelativistic_geometry(theta: float, beta: float = ULTRARELATIVISTIC_BETA) -> BoostGeometry:
    """Equal-speed geometry close to the v1, v2 -> c limit."""
    return BoostGeometry.of(beta, beta, theta)
