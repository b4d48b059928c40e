"""
Single spin-1/2 particle under two non-collinear boosts.

The particle starts in (|v1> + |-v1>)|up~>/sqrt(2): a superposition of two
velocity eigenstates with its spin along a tilted axis (inclination phi,
azimuth eta). The second boost rotates the spin of each velocity branch by
its own Wigner angle, which entangles velocity and spin.

Amplitude ordering of a SingleState: (v+ up~, v+ down~, v- up~, v- down~).
"""

import math

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.core.kinematics import (
    BoostGeometry,
    boost_vectors,
    rotation_axis,
    wigner_pair,
)
from src.core.qmath import (
    IDENTITY_2,
    NORM_TOL,
    DensityMatrix,
    StateVector,
    partial_trace,
    su2_rotation,
    tensor_product,
    von_neumann_entropy,
    xlog2x,
)


TWO_PI = 2.0 * math.pi
LN2 = math.log(2.0)


class SpinOrientation(BaseModel):
    """
    Direction of the tilted spin axis.

    Attributes:
        phi: inclination from the z axis, folded into [0, pi]
        eta: azimuth, folded into [0, 2 pi)

    An inclination outside [0, pi] is reflected together with a half turn of
    the azimuth, which leaves the physical axis unchanged.
    """
    model_config = ConfigDict(frozen=True)

    phi: float = Field(ge=0.0, le=math.pi)
    eta: float = Field(default=0.0, ge=0.0, lt=TWO_PI)

    @model_validator(mode="before")
    @classmethod
    def _fold_angles(cls, data):
        if not isinstance(data, dict) or "phi" not in data:
            return data
        phi = float(data["phi"])
        eta = float(data.get("eta", 0.0))
        if not (math.isfinite(phi) and math.isfinite(eta)):
            raise ValueError("spin angles must be finite")
        phi %= TWO_PI
        if phi > math.pi:
            phi = TWO_PI - phi
            eta += math.pi
        eta %= TWO_PI
        if eta >= TWO_PI:
            eta = 0.0
        return {**data, "phi": phi, "eta": eta}


class SingleState(StateVector):
    """Boosted single-particle state on {v+, v-} (x) {up~, down~}."""

    geometry: BoostGeometry
    spin: SpinOrientation

    @model_validator(mode="after")
    def _check_shape(self) -> "SingleState":
        if self.dim != 4:
            raise ValueError(f"a single-particle state has 4 amplitudes, got {self.dim}")
        if not self.is_normalized(NORM_TOL):
            raise ValueError(f"state is not normalized (|psi| = {self.norm!r})")
        return self


def tilde_basis(s: SpinOrientation) -> tuple[StateVector, StateVector]:
    """
    Spin up/down along the tilted axis, written in the z basis.

    |up~>   = cos(phi/2)|up> + i e^{-i eta} sin(phi/2)|down>
    |down~> = -sin(phi/2)|up> + i e^{-i eta} cos(phi/2)|down>
    """
    c = math.cos(s.phi / 2.0)
    sn = math.sin(s.phi / 2.0)
    phase = 1j * complex(math.cos(s.eta), -math.sin(s.eta))
    up = StateVector(amps=[c, phase * sn])
    down = StateVector(amps=[-sn, phase * c])
    return up, down


def tilde_frame(s: SpinOrientation) -> np.ndarray:
    """Unitary whose columns are |up~>, |down~>: z-coordinates = frame @ tilde-coordinates."""
    up, down = tilde_basis(s)
    return np.column_stack([up.amps, down.amps])


def spin_axis(s: SpinOrientation) -> np.ndarray:
    """Bloch direction of |up~>."""
    return np.array([
        math.sin(s.phi) * math.sin(s.eta),
        math.sin(s.phi) * math.cos(s.eta),
        math.cos(s.phi),
    ])


def boost_single(g: BoostGeometry, s: SpinOrientation) -> SingleState:
    """
    Closed-form boosted state.

    Each branch amplitude is the matrix element of the Wigner rotation in the
    tilde basis: the +v1 branch rotates by w+ about +z, the -v1 branch by w-
    about -z, and sigma_z reads cos(phi) sigma_z~ - sin(phi) sigma_x~ there.
    """
    w = wigner_pair(g)
    cos_phi, sin_phi = math.cos(s.phi), math.sin(s.phi)
    wp, wm = w.omega_plus, w.omega_minus
    amps = np.array([
        complex(math.cos(wp), -math.sin(wp) * cos_phi),
        1j * math.sin(wp) * sin_phi,
        complex(math.cos(wm), math.sin(wm) * cos_phi),
        -1j * math.sin(wm) * sin_phi,
    ]) / math.sqrt(2.0)
    return SingleState(amps=amps, geometry=g, spin=s)


def branch_unitary(omega: float, axis: np.ndarray | None) -> np.ndarray:
    """SU(2) rotation of one velocity branch; identity when there is no rotation axis."""
    if axis is None or omega == 0.0:
        return IDENTITY_2
    return su2_rotation(omega, axis).entries


def boost_single_oracle(g: BoostGeometry, s: SpinOrientation) -> SingleState:
    """
    First-principles boosted state.

    Builds the initial ket in the z basis, applies the SU(2) Wigner rotation of
    each branch about v2_hat x (+/-v1_hat), and re-expresses the spin in the
    tilde basis. Agrees with boost_single to roundoff.
    """
    up, _ = tilde_basis(s)
    branches = StateVector(amps=[1.0 / math.sqrt(2.0), 1.0 / math.sqrt(2.0)])
    initial = tensor_product(branches, up)

    w = wigner_pair(g)
    v1, v2 = boost_vectors(g)
    u_plus = branch_unitary(w.omega_plus, rotation_axis(v2, v1))
    u_minus = branch_unitary(w.omega_minus, rotation_axis(v2, v1.reversed()))
    boost = np.kron(np.diag([1.0, 0.0]), u_plus) + np.kron(np.diag([0.0, 1.0]), u_minus)
    boosted_z = boost @ initial.amps

    to_tilde = np.kron(np.eye(2), tilde_frame(s).conj().T)
    return SingleState(amps=to_tilde @ boosted_z, geometry=g, spin=s)


def reduced_velocity_density(st: SingleState) -> DensityMatrix:
    """Velocity density matrix: the spin factor traced out."""
    return partial_trace(st.density(), (2, 2), keep="A")


def entanglement_entropy(st: SingleState) -> float:
    """Velocity-spin entanglement entropy in bits."""
    return von_neumann_entropy(reduced_velocity_density(st))


def entropy_limit_formula(phi: float) -> float:
    """
    Entanglement entropy for v1, v2 -> c:

    S = 1 - (1+cos phi)/2 log2(1+cos phi) - (1-cos phi)/2 log2(1-cos phi)

    The two terms cancel to O(cos^2 phi) near phi = pi/2, so S(pi/2) is
    exactly 1 and S(0) = S(pi) exactly 0.
    """
    c = math.cos(phi)
    return max(0.0, 1.0 - 0.5 * (_one_plus_xlog2(c) + _one_plus_xlog2(-c)))


def _one_plus_xlog2(c: float) -> float:
    """(1+c) log2(1+c) through log1p."""
    if c <= -1.0:
        return 0.0
    return (1.0 + c) * math.log1p(c) / LN2


def entropy_closed_form(omega_sum: float, phi: float) -> float:
    """
    Finite-speed entropy from the reduced-density eigenvalues
    1/2 +- 1/2 sqrt(1 - sin^2(phi) sin^2(w+ + w-)).
    """
    radius = math.sqrt(max(0.0, 1.0 - (math.sin(phi) * math.sin(omega_sum)) ** 2))
    p_hi = 0.5 * (1.0 + radius)
    p_lo = 0.5 * (1.0 - radius)
    return max(0.0, -(xlog2x(p_hi) + xlog2x(p_lo)))
