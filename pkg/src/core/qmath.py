"""
Small exact-size complex linear algebra.

This module provides the math core used by every physics module:
- StateVector / DensityMatrix / Unitary2: immutable, validated containers
- su2_rotation: the spin-1/2 rotation U = cos(w) I - i sin(w) n.sigma
- tensor_product, partial_trace: bipartite plumbing
- hermitian_eigenvalues, von_neumann_entropy: entanglement measures in bits

Amplitudes are numpy complex128 arrays that are made read-only on
construction, so a value can be shared between threads and processes freely.
"""

import math
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from src.core.exceptions import DomainError, InvalidDensityError


NORM_TOL = 1e-12
HERMITIAN_TOL = 1e-12
EIG_TOL = 1e-9
AXIS_TOL = 1e-9

IDENTITY_2 = np.eye(2, dtype=np.complex128)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)


def _frozen_array(value, ndim: int) -> np.ndarray:
    """Copy `value` into a read-only complex128 array of the given rank."""
    arr = np.array(value, dtype=np.complex128)
    if arr.ndim != ndim:
        raise ValueError(f"expected a rank-{ndim} array, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError("empty array")
    if not np.all(np.isfinite(arr)):
        raise ValueError("array contains NaN or Inf")
    arr.flags.writeable = False
    return arr


class StateVector(BaseModel):
    """
    A ket in a finite Hilbert space.

    Basis ordering is fixed by whoever builds the vector; composite spaces are
    row-major (the first factor's index varies slowest).

    Attributes:
        amps: complex amplitudes, read-only
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    amps: np.ndarray

    @field_validator("amps", mode="before")
    @classmethod
    def _coerce_amps(cls, value) -> np.ndarray:
        return _frozen_array(value, 1)

    @property
    def dim(self) -> int:
        return int(self.amps.shape[0])

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return abs(self.norm ** 2 - 1.0) <= tol

    def inner(self, other: "StateVector") -> complex:
        """<self|other>."""
        if other.dim != self.dim:
            raise DomainError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return complex(np.vdot(self.amps, other.amps))

    def density(self) -> "DensityMatrix":
        """The projector |psi><psi| of a normalized ket."""
        return DensityMatrix(entries=np.outer(self.amps, self.amps.conj()))


def normalize(amps) -> np.ndarray:
    """Scale `amps` to unit norm; the zero vector is returned unchanged."""
    arr = np.asarray(amps, dtype=np.complex128)
    n = np.linalg.norm(arr)
    if n == 0.0:
        return arr
    return arr / n


class DensityMatrix(BaseModel):
    """
    A density operator.

    Hermiticity and unit trace are enforced on construction (1e-12).
    Positivity is checked where it matters, in von_neumann_entropy, so that
    slightly negative roundoff eigenvalues do not make construction fail.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    entries: np.ndarray

    @field_validator("entries", mode="before")
    @classmethod
    def _coerce_entries(cls, value) -> np.ndarray:
        arr = _frozen_array(value, 2)
        if arr.shape[0] != arr.shape[1]:
            raise InvalidDensityError(f"density matrix must be square, got {arr.shape}")
        defect = float(np.max(np.abs(arr - arr.conj().T)))
        if defect > HERMITIAN_TOL:
            raise InvalidDensityError(f"not Hermitian (defect {defect:.3e})")
        trace = complex(np.trace(arr))
        if abs(trace - 1.0) > HERMITIAN_TOL:
            raise InvalidDensityError(f"trace is {trace}, expected 1")
        return arr

    @property
    def dim(self) -> int:
        return int(self.entries.shape[0])

    def eigenvalues(self) -> np.ndarray:
        return hermitian_eigenvalues(self.entries)


class Unitary2(BaseModel):
    """A 2x2 unitary acting on a spin-1/2 z-basis spinor."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    entries: np.ndarray

    @field_validator("entries", mode="before")
    @classmethod
    def _coerce_entries(cls, value) -> np.ndarray:
        arr = _frozen_array(value, 2)
        if arr.shape != (2, 2):
            raise ValueError(f"expected a 2x2 matrix, got {arr.shape}")
        defect = float(np.max(np.abs(arr @ arr.conj().T - IDENTITY_2)))
        if defect > HERMITIAN_TOL:
            raise ValueError(f"matrix is not unitary (defect {defect:.3e})")
        return arr

    def apply(self, spinor: StateVector) -> StateVector:
        if spinor.dim != 2:
            raise DomainError(f"Unitary2 acts on 2-spinors, got dim {spinor.dim}")
        return StateVector(amps=self.entries @ spinor.amps)


def su2_rotation(omega: float, axis) -> Unitary2:
    """
    Spin-1/2 rotation by `omega` about the unit vector `axis`.

    Returns cos(omega) I - i sin(omega) (nx sx + ny sy + nz sz). For axis z
    this is diag(exp(-i omega), exp(+i omega)).

    Raises:
        DomainError: if |axis| differs from 1 by more than 1e-9
    """
    n = np.asarray(axis, dtype=float)
    if n.shape != (3,):
        raise DomainError(f"rotation axis must be a 3-vector, got shape {n.shape}")
    norm = float(np.linalg.norm(n))
    if abs(norm - 1.0) > AXIS_TOL:
        raise DomainError(f"rotation axis must be a unit vector, |axis| = {norm:.12g}")
    generator = n[0] * PAULI_X + n[1] * PAULI_Y + n[2] * PAULI_Z
    return Unitary2(entries=math.cos(omega) * IDENTITY_2 - 1j * math.sin(omega) * generator)


def tensor_product(a: StateVector, b: StateVector) -> StateVector:
    """Kronecker product a (x) b; a's index varies slowest."""
    return StateVector(amps=np.kron(a.amps, b.amps))


def partial_trace(
    rho: DensityMatrix,
    dims: tuple[int, int],
    keep: Literal["A", "B"],
) -> DensityMatrix:
    """
    Reduce a bipartite density matrix on A (x) B to one factor.

    Args:
        rho: density matrix of dimension dA*dB
        dims: (dA, dB)
        keep: "A" traces out B, "B" traces out A

    Raises:
        DomainError: if dA*dB does not match rho's dimension or keep is unknown
    """
    d_a, d_b = dims
    if d_a < 1 or d_b < 1 or d_a * d_b != rho.dim:
        raise DomainError(f"dims {dims} do not factor a {rho.dim}-dimensional matrix")
    blocks = rho.entries.reshape(d_a, d_b, d_a, d_b)
    if keep == "A":
        reduced = np.einsum("ijkj->ik", blocks)
    elif keep == "B":
        reduced = np.einsum("ijil->jl", blocks)
    else:
        raise DomainError(f"keep must be 'A' or 'B', got {keep!r}")
    return DensityMatrix(entries=reduced)


def hermitian_eigenvalues(matrix: np.ndarray) -> np.ndarray:
    """
    Ascending real eigenvalues of a Hermitian matrix.

    2x2 uses the closed form; larger sizes go through LAPACK (eigvalsh).
    """
    m = np.asarray(matrix, dtype=np.complex128)
    if m.shape == (2, 2):
        a = m[0, 0].real
        d = m[1, 1].real
        half_trace = 0.5 * (a + d)
        radius = math.hypot(0.5 * (a - d), abs(m[0, 1]))
        return np.array([half_trace - radius, half_trace + radius])
    return np.linalg.eigvalsh(m)


def xlog2x(x: float) -> float:
    """x * log2(x) with the convention 0 * log2(0) = 0."""
    if x <= 0.0:
        return 0.0
    return x * math.log2(x)


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """
    S(rho) = -sum_i l_i log2 l_i, in bits.

    Eigenvalues in [-1e-9, 0) are roundoff and clamped to zero.

    Raises:
        InvalidDensityError: if an eigenvalue is below -1e-9
    """
    eigenvalues = rho.eigenvalues()
    lowest = float(eigenvalues.min())
    if lowest < -EIG_TOL:
        raise InvalidDensityError(f"negative eigenvalue {lowest:.3e}")
    entropy = -sum(xlog2x(float(lam)) for lam in np.clip(eigenvalues, 0.0, None))
    return min(max(0.0, entropy), math.log2(rho.dim))
