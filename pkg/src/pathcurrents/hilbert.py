"""Fixed-dimension linear algebra on the two-qubit product space.

States are complex numpy vectors of length 4 and operators are 4x4 complex
arrays, both expressed in the basis order ``|0,0>, |0,1>, |1,0>, |1,1>``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DIM = 4
BASIS_LABELS = ("0,0", "0,1", "1,0", "1,1")

# invariant checks; closed-form comparisons in tests use 1e-12
TOL = 1e-10


class DimensionError(ValueError):
    pass


class InvalidDensityError(ValueError):
    pass


class NonUnitaryError(ValueError):
    pass


def as_state(amplitudes) -> np.ndarray:
    """Return a read-only complex vector after checking shape and finiteness."""
    vec = np.array(amplitudes, dtype=complex)
    if vec.shape != (DIM,):
        raise DimensionError(f"expected a state of dimension {DIM}, got shape {vec.shape}")
    if not np.all(np.isfinite(vec)):
        raise ValueError("state amplitudes must be finite")
    vec.setflags(write=False)
    return vec


def as_operator(matrix) -> np.ndarray:
    mat = np.array(matrix, dtype=complex)
    if mat.shape != (DIM, DIM):
        raise DimensionError(f"expected a {DIM}x{DIM} operator, got shape {mat.shape}")
    if not np.all(np.isfinite(mat)):
        raise ValueError("operator entries must be finite")
    mat.setflags(write=False)
    return mat


def normalized(amplitudes) -> np.ndarray:
    vec = np.array(amplitudes, dtype=complex)
    norm = np.linalg.norm(vec)
    if not np.isfinite(norm) or norm <= TOL:
        raise ValueError("cannot normalize a zero or non-finite vector")
    return as_state(vec / norm)


def basis_state(label: str) -> np.ndarray:
    vec = np.zeros(DIM, dtype=complex)
    vec[BASIS_LABELS.index(label)] = 1.0
    return as_state(vec)


def inner_product(u, v) -> complex:
    """<u|v>, conjugate-linear in the first argument."""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    if u.shape != (DIM,) or v.shape != (DIM,):
        raise DimensionError(f"inner product needs two {DIM}-vectors, got {u.shape} and {v.shape}")
    return complex(np.vdot(u, v))


def projector(s) -> np.ndarray:
    s = as_state(s)
    return np.outer(s, s.conj())


def pure_density(s) -> np.ndarray:
    s = normalized(s)
    return as_operator(np.outer(s, s.conj()))


@dataclass(frozen=True)
class DensityReport:
    hermiticity_residual: float
    trace_residual: float
    min_eigenvalue: float

    @property
    def hermitian(self) -> bool:
        return self.hermiticity_residual <= TOL

    @property
    def unit_trace(self) -> bool:
        return self.trace_residual <= TOL

    @property
    def positive(self) -> bool:
        return self.min_eigenvalue >= -TOL

    @property
    def valid(self) -> bool:
        return self.hermitian and self.unit_trace and self.positive

    def problems(self) -> list[str]:
        out = []
        if not self.hermitian:
            out.append(f"not Hermitian (residual {self.hermiticity_residual:.3e})")
        if not self.unit_trace:
            out.append(f"trace differs from 1 by {self.trace_residual:.3e}")
        if not self.positive:
            out.append(f"negative eigenvalue {self.min_eigenvalue:.3e}")
        return out


def validate_density(rho) -> DensityReport:
    """Diagnose a candidate density operator without raising.

    The minimum eigenvalue is taken from the Hermitian part, so a
    non-Hermitian input still gets a meaningful positivity figure.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (DIM, DIM):
        raise DimensionError(f"expected a {DIM}x{DIM} matrix, got shape {rho.shape}")
    herm = float(np.max(np.abs(rho - rho.conj().T)))
    trace = float(abs(np.trace(rho) - 1.0))
    min_eig = float(np.linalg.eigvalsh((rho + rho.conj().T) / 2)[0])
    return DensityReport(herm, trace, min_eig)


def check_density(rho) -> np.ndarray:
    rho = as_operator(rho)
    report = validate_density(rho)
    if not report.valid:
        raise InvalidDensityError("invalid density operator: " + "; ".join(report.problems()))
    return rho


def born_probability(rho, s) -> float:
    """Tr[rho |s><s|], clamped to [0, 1]."""
    rho = check_density(rho)
    s = as_state(s)
    if abs(np.vdot(s, s).real - 1.0) > TOL:
        raise ValueError("projected state must be normalized")
    p = float(np.real(np.vdot(s, rho @ s)))
    return min(max(p, 0.0), 1.0)


def unitarity_residual(u) -> float:
    u = np.asarray(u, dtype=complex)
    n = u.shape[0]
    return float(np.max(np.abs(u.conj().T @ u - np.eye(n))))


def apply_unitary(u, x) -> np.ndarray:
    """Apply U to a state vector (U|x>) or a density operator (U rho U^dagger)."""
    u = as_operator(u)
    if unitarity_residual(u) > TOL:
        raise NonUnitaryError(f"operator is not unitary (residual {unitarity_residual(u):.3e})")
    x = np.asarray(x, dtype=complex)
    if x.ndim == 1:
        return as_state(u @ as_state(x))
    return as_operator(u @ as_operator(x) @ u.conj().T)


def same_up_to_phase(u, v, tol: float = TOL) -> bool:
    """True when normalized ``u`` and ``v`` describe the same ray."""
    norms_ok = abs(np.linalg.norm(u) - 1.0) <= tol and abs(np.linalg.norm(v) - 1.0) <= tol
    return norms_ok and abs(abs(inner_product(u, v)) - 1.0) <= tol
