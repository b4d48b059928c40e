"""
Cooper pairs under relativistic boosts.

A pair is two electrons with opposite velocity eigenstates (+v1 / -v1) and a
two-spin state from {S, T0, T+, T-} built on the tilde basis. The singlet
goes with the velocity-symmetric combination and each triplet with the
velocity-antisymmetric one, so every pair is antisymmetric under exchange.

This module provides:
- pair_basis / pair_spin_coordinates: the singlet/triplet frame
- initial_pair, boost_pair: state construction and the first-principles boost
- singlet_closed_form, triplet_closed_form: closed-form boosted pairs
- ultrarelativistic_limit: the v1, v2 -> c forms
- decompose: projection onto {sym, anti} x {S, T0, T+, T-}
- gamma_big, singlet_weight: the singlet/triplet mixing parameter

Amplitude ordering of a PairState: (velA, velB, spinA, spinB), row-major,
velocity index 0 = v+ (image of +v1), spin index 0 = up~. Spin amplitudes
are tilde-basis coordinates relative to the state's SpinOrientation.
"""

import logging
import math

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from src.core.exceptions import DegenerateGeometryError, DomainError
from src.core.kinematics import (
    BoostGeometry,
    boost_vectors,
    rotation_axis,
    tan_omega_sum,
    gamma,
    wigner_pair,
)
from src.core.qmath import NORM_TOL, StateVector, normalize, tensor_product
from src.core.types import PairKind, VelocityParity
from src.modules.single_particle import SpinOrientation, branch_unitary, tilde_basis, tilde_frame


logger = logging.getLogger(__name__)

SQRT1_2 = 1.0 / math.sqrt(2.0)

KIND_ORDER = (PairKind.S, PairKind.T0, PairKind.T_PLUS, PairKind.T_MINUS)
PARITY_ORDER = (VelocityParity.SYM, VelocityParity.ANTI)

_SPIN_COORDS = {
    PairKind.S: np.array([0, 1, -1, 0], dtype=np.complex128) * SQRT1_2,
    PairKind.T0: np.array([0, 1, 1, 0], dtype=np.complex128) * SQRT1_2,
    PairKind.T_PLUS: np.array([1, 0, 0, 1], dtype=np.complex128) * SQRT1_2,
    PairKind.T_MINUS: np.array([1, 0, 0, -1], dtype=np.complex128) * SQRT1_2,
}
_VELOCITY_COORDS = {
    VelocityParity.SYM: np.array([0, 1, 1, 0], dtype=np.complex128) * SQRT1_2,
    VelocityParity.ANTI: np.array([0, 1, -1, 0], dtype=np.complex128) * SQRT1_2,
}


def pair_spin_coordinates(kind: PairKind) -> np.ndarray:
    """S / T0 / T+ / T- in the (up~, down~) (x) (up~, down~) product basis."""
    return _SPIN_COORDS[PairKind(kind)].copy()


def velocity_coordinates(parity: VelocityParity) -> np.ndarray:
    """(|v+,v-> +/- |v-,v+>)/sqrt(2) in the (velA, velB) product basis."""
    return _VELOCITY_COORDS[VelocityParity(parity)].copy()


def parity_of(kind: PairKind) -> VelocityParity:
    """Velocity part that keeps a pair with this spin state antisymmetric."""
    return VelocityParity.SYM if PairKind(kind) is PairKind.S else VelocityParity.ANTI


class PairSpinBasis(BaseModel):
    """
    Singlet and triplets for a given spin orientation, expanded in the z basis.

    Attributes:
        spin: orientation of the tilde axis
        singlet, t_zero, t_plus, t_minus: 4-component z-basis two-spin vectors
    """
    model_config = ConfigDict(frozen=True)

    spin: SpinOrientation
    singlet: StateVector
    t_zero: StateVector
    t_plus: StateVector
    t_minus: StateVector

    def vector(self, kind: PairKind) -> StateVector:
        return {
            PairKind.S: self.singlet,
            PairKind.T0: self.t_zero,
            PairKind.T_PLUS: self.t_plus,
            PairKind.T_MINUS: self.t_minus,
        }[PairKind(kind)]

    def gram(self) -> np.ndarray:
        vectors = np.array([self.vector(k).amps for k in KIND_ORDER])
        return vectors.conj() @ vectors.T


def pair_basis(s: SpinOrientation) -> PairSpinBasis:
    """
    S = (ud - du)/sqrt2, T0 = (ud + du)/sqrt2, T+- = (uu +- dd)/sqrt2
    with u = |up~>, d = |down~>.
    """
    up, down = tilde_basis(s)
    uu = tensor_product(up, up).amps
    ud = tensor_product(up, down).amps
    du = tensor_product(down, up).amps
    dd = tensor_product(down, down).amps
    return PairSpinBasis(
        spin=s,
        singlet=StateVector(amps=(ud - du) * SQRT1_2),
        t_zero=StateVector(amps=(ud + du) * SQRT1_2),
        t_plus=StateVector(amps=(uu + dd) * SQRT1_2),
        t_minus=StateVector(amps=(uu - dd) * SQRT1_2),
    )


class PairState(StateVector):
    """
    Two-electron state on ({v+, v-} (x) {up~, down~})^(x)2.

    `geometry` is the boost that produced the state (None for an unboosted
    pair or a limit form).
    """

    spin: SpinOrientation
    geometry: BoostGeometry | None = None

    @model_validator(mode="after")
    def _check_shape(self) -> "PairState":
        if self.dim != 16:
            raise ValueError(f"a pair state has 16 amplitudes, got {self.dim}")
        if not self.is_normalized(NORM_TOL):
            raise ValueError(f"state is not normalized (|psi| = {self.norm!r})")
        return self

    def tensor(self) -> np.ndarray:
        """Amplitudes as a (velA, velB, spinA, spinB) array."""
        return self.amps.reshape(2, 2, 2, 2)


def _pair_amps(terms: list[tuple[VelocityParity, PairKind, complex]]) -> np.ndarray:
    amps = np.zeros(16, dtype=np.complex128)
    for parity, kind, coefficient in terms:
        amps += coefficient * np.kron(_VELOCITY_COORDS[parity], _SPIN_COORDS[kind])
    return amps


def initial_pair(kind: PairKind, s: SpinOrientation) -> PairState:
    """Unboosted pair: the singlet with sym velocity, a triplet with anti velocity."""
    kind = PairKind(kind)
    return PairState(amps=_pair_amps([(parity_of(kind), kind, 1.0)]), spin=s)


def exchange_defect(st: PairState) -> float:
    """max |psi + P psi| where P swaps both particle labels; 0 for fermion pairs."""
    t = st.tensor()
    return float(np.max(np.abs(t + t.transpose(1, 0, 3, 2))))


def boost_pair(g: BoostGeometry, st: PairState) -> PairState:
    """
    Boost a pair from first principles.

    Each electron's spin is rotated by the Wigner rotation of its own velocity
    branch: w+ about v2_hat x v1_hat (= +z) for +v1, w- about
    v2_hat x (-v1_hat) (= -z) for -v1. The rotation happens in the z basis;
    the result is re-expressed in the state's tilde basis. A trivial geometry
    returns the input amplitudes unchanged.
    """
    if g.is_trivial:
        return PairState(amps=st.amps, spin=st.spin, geometry=g)
    w = wigner_pair(g)
    v1, v2 = boost_vectors(g)
    branch_unitaries = np.array([
        branch_unitary(w.omega_plus, rotation_axis(v2, v1)),
        branch_unitary(w.omega_minus, rotation_axis(v2, v1.reversed())),
    ])
    frame = tilde_frame(st.spin)

    z_amps = np.einsum("ai,bj,xyij->xyab", frame, frame, st.tensor())
    rotated = np.einsum("xai,ybj,xyij->xyab", branch_unitaries, branch_unitaries, z_amps)
    tilde = np.einsum("ai,bj,xyab->xyij", frame.conj(), frame.conj(), rotated)
    return PairState(amps=tilde.reshape(16), spin=st.spin, geometry=g)


class GammaValue(BaseModel):
    """
    Mixing parameter Gamma = tan^2(w+ + w-).

    Attributes:
        value: Gamma, +inf when w+ + w- = pi/2
        is_infinite: explicit flag for the infinite sentinel
        printed_value: the same expression with sin(theta) instead of sin^2(theta)
    """
    model_config = ConfigDict(frozen=True)

    value: float
    is_infinite: bool = False
    printed_value: float


def gamma_big(g: BoostGeometry) -> GammaValue:
    """Gamma = (g1^2 - 1)(g2^2 - 1) sin^2(theta) / (g1 + g2)^2, plus the sin(theta) variant."""
    tan_sum = tan_omega_sum(g)
    value = tan_sum * tan_sum
    if g.is_trivial:
        printed = 0.0
    else:
        g1, g2 = gamma(g.v1), gamma(g.v2)
        printed = (g1 * g1 - 1.0) * (g2 * g2 - 1.0) * math.sin(g.theta) / (g1 + g2) ** 2
    if math.isinf(value):
        logger.info("Gamma diverges for %s; returning the infinite sentinel", g)
        return GammaValue(value=math.inf, is_infinite=True, printed_value=printed)
    return GammaValue(value=value, printed_value=printed)


def singlet_weight(g: BoostGeometry) -> float:
    """Weight cos^2(w+ + w-) = 1/(1 + Gamma) left on the singlet after boosting."""
    gv = gamma_big(g)
    if gv.is_infinite:
        return 0.0
    return 1.0 / (1.0 + gv.value)


def singlet_closed_form(g: BoostGeometry, s: SpinOrientation) -> PairState:
    """
    Boosted singlet:

    (1/sqrt(1+Gamma)) [ sym|S> - i sqrt(Gamma) anti (sin phi |T-> + cos phi |T0>) ]
    """
    gv = gamma_big(g)
    if gv.is_infinite:
        return ultrarelativistic_limit(PairKind.S, g.theta, s)
    cos_phi, sin_phi = math.cos(s.phi), math.sin(s.phi)
    mixing = -1j * math.sqrt(gv.value)
    amps = _pair_amps([
        (VelocityParity.SYM, PairKind.S, 1.0),
        (VelocityParity.ANTI, PairKind.T_MINUS, mixing * sin_phi),
        (VelocityParity.ANTI, PairKind.T0, mixing * cos_phi),
    ]) / math.sqrt(1.0 + gv.value)
    return PairState(amps=normalize(amps), spin=s, geometry=g)


def triplet_closed_form(kind: PairKind, g: BoostGeometry, s: SpinOrientation) -> PairState:
    """
    Boosted triplet pair.

    T+ stays a triplet; T- and T0 leak into the singlet through the
    velocity-symmetric part with amplitude -i sin(w+ + w-) (sin phi or cos phi).

    Raises:
        DomainError: for kind S (see singlet_closed_form)
    """
    kind = PairKind(kind)
    w = wigner_pair(g)
    wp, wm = w.omega_plus, w.omega_minus
    cos_phi, sin_phi = math.cos(s.phi), math.sin(s.phi)
    cos_2phi = math.cos(2.0 * s.phi)
    sin_diff, cos_diff = math.sin(wp - wm), math.cos(wp - wm)
    sin_sum = math.sin(wp + wm)
    cc = math.cos(wp) * math.cos(wm)
    ss = math.sin(wp) * math.sin(wm)
    anti, sym = VelocityParity.ANTI, VelocityParity.SYM

    if kind is PairKind.T_PLUS:
        terms = [
            (anti, PairKind.T_PLUS, cos_diff),
            (anti, PairKind.T0, 1j * sin_diff * sin_phi),
            (anti, PairKind.T_MINUS, -1j * sin_diff * cos_phi),
        ]
    elif kind is PairKind.T_MINUS:
        terms = [
            (anti, PairKind.T_MINUS, cc + ss * cos_2phi),
            (anti, PairKind.T_PLUS, -1j * sin_diff * cos_phi),
            (anti, PairKind.T0, -2.0 * ss * sin_phi * cos_phi),
            (sym, PairKind.S, -1j * sin_sum * sin_phi),
        ]
    elif kind is PairKind.T0:
        terms = [
            (anti, PairKind.T0, cc - ss * cos_2phi),
            (anti, PairKind.T_PLUS, 1j * sin_diff * sin_phi),
            (anti, PairKind.T_MINUS, -2.0 * ss * sin_phi * cos_phi),
            (sym, PairKind.S, -1j * sin_sum * cos_phi),
        ]
    else:
        raise DomainError("triplet_closed_form needs a triplet kind; use singlet_closed_form for S")
    return PairState(amps=normalize(_pair_amps(terms)), spin=s, geometry=g)


def closed_form(kind: PairKind, g: BoostGeometry, s: SpinOrientation) -> PairState:
    """Dispatch to the singlet or triplet closed form."""
    kind = PairKind(kind)
    if kind is PairKind.S:
        return singlet_closed_form(g, s)
    return triplet_closed_form(kind, g, s)


def ultrarelativistic_limit(
    kind: PairKind,
    theta: float,
    s: SpinOrientation,
    as_printed: bool = False,
) -> PairState:
    """
    Boosted pair for v1, v2 -> c (global phases dropped).

    S  -> anti (sin phi |T-> + cos phi |T0>)
    T+ -> anti (sin t |T+> + i cos t cos phi |T-> - i cos t sin phi |T0>)
    T- -> anti (sin t cos^2 phi |T-> + i cos t cos phi |T+> - 1/2 sin t sin 2phi |T0>)
          - i sin phi sym |S>
    T0 -> anti (sin t sin^2 phi |T0> - i cos t sin phi |T+> - 1/2 sin t sin 2phi |T->)
          - i cos phi sym |S>

    The T- line follows the sign of the finite-speed T- transform; pass
    as_printed=True for the +1/2 sin t sin 2phi |T0> variant.

    Raises:
        DegenerateGeometryError: for collinear boosts (theta in {0, pi})
    """
    if not 0.0 < theta < math.pi:
        raise DegenerateGeometryError(f"limit needs theta in (0, pi), got {theta}")
    kind = PairKind(kind)
    cos_phi, sin_phi = math.cos(s.phi), math.sin(s.phi)
    sin_2phi = math.sin(2.0 * s.phi)
    sin_t, cos_t = math.sin(theta), math.cos(theta)
    anti, sym = VelocityParity.ANTI, VelocityParity.SYM

    if kind is PairKind.S:
        terms = [
            (anti, PairKind.T_MINUS, sin_phi),
            (anti, PairKind.T0, cos_phi),
        ]
    elif kind is PairKind.T_PLUS:
        terms = [
            (anti, PairKind.T_PLUS, sin_t),
            (anti, PairKind.T_MINUS, 1j * cos_t * cos_phi),
            (anti, PairKind.T0, -1j * cos_t * sin_phi),
        ]
    elif kind is PairKind.T_MINUS:
        t0_sign = 1.0 if as_printed else -1.0
        terms = [
            (anti, PairKind.T_MINUS, sin_t * cos_phi ** 2),
            (anti, PairKind.T_PLUS, 1j * cos_t * cos_phi),
            (anti, PairKind.T0, t0_sign * 0.5 * sin_t * sin_2phi),
            (sym, PairKind.S, -1j * sin_phi),
        ]
    else:
        terms = [
            (anti, PairKind.T0, sin_t * sin_phi ** 2),
            (anti, PairKind.T_PLUS, -1j * cos_t * sin_phi),
            (anti, PairKind.T_MINUS, -0.5 * sin_t * sin_2phi),
            (sym, PairKind.S, -1j * cos_phi),
        ]
    return PairState(amps=normalize(_pair_amps(terms)), spin=s)


class PairDecomposition(BaseModel):
    """
    Coefficients of a pair state on {sym, anti} x {S, T0, T+, T-}.

    `coefficients[p, k]` follows PARITY_ORDER x KIND_ORDER.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    spin: SpinOrientation
    coefficients: np.ndarray

    @field_validator("coefficients", mode="before")
    @classmethod
    def _coerce(cls, value) -> np.ndarray:
        arr = np.array(value, dtype=np.complex128)
        if arr.shape != (2, 4):
            raise ValueError(f"expected 2x4 coefficients, got {arr.shape}")
        total = float(np.sum(np.abs(arr) ** 2))
        if abs(total - 1.0) > NORM_TOL:
            raise ValueError(f"coefficient weights sum to {total!r}, expected 1")
        arr.flags.writeable = False
        return arr

    def coefficient(self, parity: VelocityParity, kind: PairKind) -> complex:
        return complex(
            self.coefficients[PARITY_ORDER.index(VelocityParity(parity)), KIND_ORDER.index(PairKind(kind))]
        )

    def cell(self, parity: VelocityParity, kind: PairKind) -> complex:
        """Alias of coefficient, addressed as a (parity, spin state) cell."""
        return self.coefficient(parity, kind)

    def weight(self, parity: VelocityParity, kind: PairKind) -> float:
        return abs(self.coefficient(parity, kind)) ** 2

    def weights(self) -> dict[str, float]:
        """|c|^2 per cell keyed '<parity>_<kind label>', e.g. 'sym_S', 'anti_Tminus'."""
        return {
            f"{parity.value}_{kind.label}": self.weight(parity, kind)
            for parity in PARITY_ORDER
            for kind in KIND_ORDER
        }

    def spin_weight(self, kind: PairKind) -> float:
        """Total weight of one spin state over both velocity parities."""
        return sum(self.weight(parity, kind) for parity in PARITY_ORDER)

    def reconstruct(self) -> np.ndarray:
        """16 amplitudes in the tilde coordinates of `spin`."""
        return _pair_amps([
            (parity, kind, self.coefficient(parity, kind))
            for parity in PARITY_ORDER
            for kind in KIND_ORDER
        ])


def decompose(st: PairState, s: SpinOrientation) -> PairDecomposition:
    """Project a pair state onto {sym, anti} x pair_basis(s)."""
    frame = tilde_frame(st.spin)
    z_amps = np.einsum("ai,bj,xyij->xyab", frame, frame, st.tensor()).reshape(16)
    basis = pair_basis(s)
    coefficients = np.array([
        [np.vdot(np.kron(_VELOCITY_COORDS[parity], basis.vector(kind).amps), z_amps) for kind in KIND_ORDER]
        for parity in PARITY_ORDER
    ])
    return PairDecomposition(spin=s, coefficients=coefficients)
