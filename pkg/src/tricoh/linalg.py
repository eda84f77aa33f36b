"""Dense complex-matrix algebra for multi-qubit states.

Basis convention used throughout the package: the leftmost tensor factor is
the most significant bit, so the computational-basis index of an n-qubit
string is ``i = sum_k q_k 2^(n-1-k)`` (e.g. |110> of three qubits is index 6).
Qubit positions are zero-based and count from that leftmost factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_FLOOR = -1e-9
NORM_TOL = 1e-10
MAX_TENSOR_DIM = 1024


def as_complex_matrix(entries) -> np.ndarray:
    """Coerce to a 2-D complex128 array, requiring finite entries."""
    m = np.asarray(entries, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError(f"expected a matrix, got array of ndim {m.ndim}")
    if not np.isfinite(m).all():
        raise ValueError("matrix entries must be finite")
    return m


def num_qubits(dim: int) -> int:
    """log2(dim) for power-of-two dim; raises otherwise."""
    n = int(dim).bit_length() - 1
    if dim <= 0 or (1 << n) != dim:
        raise ValueError(f"dimension {dim} is not a power of two")
    return n


def check_qubit(position: int, dim: int) -> int:
    """Validate a zero-based qubit position against a Hilbert-space dim."""
    n = num_qubits(dim)
    if not 0 <= position < n:
        raise ValueError(f"qubit position {position} out of range for {n} qubits")
    return position


@dataclass(frozen=True)
class Violation:
    """One failed density-matrix invariant and by how much it failed."""

    invariant: str  # 'shape' | 'dimension' | 'hermiticity' | 'trace' | 'positivity'
    magnitude: float

    def __str__(self) -> str:
        return f"{self.invariant} violated by {self.magnitude:.3e}"


@dataclass(frozen=True)
class ViolationReport:
    """Validation outcome listing every violated invariant."""

    violations: tuple[Violation, ...]

    def __str__(self) -> str:
        return "; ".join(str(v) for v in self.violations)


def density_violations(
    m: np.ndarray,
    herm_tol: float = HERMITICITY_TOL,
    trace_tol: float = TRACE_TOL,
    psd_floor: float = PSD_FLOOR,
) -> list[Violation]:
    """Check the density-matrix invariants, returning all violations found."""
    out: list[Violation] = []
    if m.shape[0] != m.shape[1]:
        return [Violation("shape", float(abs(m.shape[0] - m.shape[1])))]
    d = m.shape[0]
    if d <= 0 or (1 << (d.bit_length() - 1)) != d:
        out.append(Violation("dimension", float(d)))
    herm = float(np.abs(m - m.conj().T).max())
    if herm > herm_tol:
        out.append(Violation("hermiticity", herm))
    tr = float(abs(np.trace(m) - 1.0))
    if tr > trace_tol:
        out.append(Violation("trace", tr))
    lam_min = float(np.linalg.eigvalsh((m + m.conj().T) / 2.0).min())
    if lam_min < psd_floor:
        out.append(Violation("positivity", lam_min))
    return out


class DensityMatrix:
    """A certified density matrix: Hermitian, unit trace, positive semidefinite.

    Immutable after construction; the wrapped array is marked read-only.
    """

    __slots__ = ("matrix",)

    def __init__(
        self,
        entries,
        herm_tol: float = HERMITICITY_TOL,
        trace_tol: float = TRACE_TOL,
        psd_floor: float = PSD_FLOOR,
    ):
        m = as_complex_matrix(entries)
        bad = density_violations(m, herm_tol, trace_tol, psd_floor)
        if bad:
            raise ValueError("not a density matrix: " + "; ".join(map(str, bad)))
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    def __setattr__(self, name, value):
        raise AttributeError("DensityMatrix is immutable")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_qubits(self) -> int:
        return num_qubits(self.dim)

    def purity(self) -> float:
        return float(np.trace(self.matrix @ self.matrix).real)

    def __repr__(self) -> str:
        return f"DensityMatrix(dim={self.dim})"


class PureState:
    """A normalized state vector on n qubits."""

    __slots__ = ("amplitudes",)

    def __init__(self, amplitudes, norm_tol: float = NORM_TOL):
        a = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
        if not np.isfinite(a).all():
            raise ValueError("amplitudes must be finite")
        num_qubits(a.size)
        dev = abs(float(np.vdot(a, a).real) - 1.0)
        if dev > norm_tol:
            raise ValueError(f"state not normalized: |<psi|psi> - 1| = {dev:.3e}")
        a = a.copy()
        a.flags.writeable = False
        object.__setattr__(self, "amplitudes", a)

    def __setattr__(self, name, value):
        raise AttributeError("PureState is immutable")

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def density(self) -> DensityMatrix:
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()))


MatrixLike = Union[np.ndarray, DensityMatrix]


def _matrix_of(rho: MatrixLike) -> np.ndarray:
    return rho.matrix if isinstance(rho, DensityMatrix) else as_complex_matrix(rho)


def tensor_product(a, b, max_dim: int = MAX_TENSOR_DIM) -> np.ndarray:
    """Kronecker product with the leftmost operand as most significant factor.

    Entry ((i1*rows_b + i2), (j1*cols_b + j2)) = a[i1, j1] * b[i2, j2].
    """
    am, bm = _matrix_of(a), _matrix_of(b)
    if am.shape[0] * bm.shape[0] > max_dim or am.shape[1] * bm.shape[1] > max_dim:
        raise ValueError(
            f"tensor product dimension {am.shape[0] * bm.shape[0]} exceeds maximum {max_dim}"
        )
    return np.kron(am, bm)


def partial_trace(rho: MatrixLike, drop: Iterable[int]) -> DensityMatrix:
    """Trace out the qubits in `drop`; kept qubits retain their relative order.

    `drop` must be a proper subset of the qubit positions.
    """
    m = _matrix_of(rho)
    n = num_qubits(m.shape[0])
    dropped = sorted(set(drop))
    for q in dropped:
        check_qubit(q, m.shape[0])
    if len(dropped) == n:
        raise ValueError("cannot trace out every qubit")
    keep = [q for q in range(n) if q not in dropped]
    t = m.reshape((2,) * (2 * n))
    row_labels = list(range(n))
    col_labels = [q if q in dropped else n + q for q in range(n)]
    out_labels = keep + [n + q for q in keep]
    reduced = np.einsum(t, row_labels + col_labels, out_labels)
    d = 1 << len(keep)
    return DensityMatrix(reduced.reshape(d, d))


def validate_density(
    entries,
    tol: float = HERMITICITY_TOL,
    psd_floor: float = PSD_FLOOR,
) -> DensityMatrix | ViolationReport:
    """Certify a square matrix as a DensityMatrix or report what failed.

    Violations are data, not faults: a failing matrix yields a report, never
    an exception. `tol` bounds both the hermiticity and trace deviations.
    """
    m = as_complex_matrix(entries)
    bad = density_violations(m, herm_tol=tol, trace_tol=tol, psd_floor=psd_floor)
    if bad:
        return ViolationReport(tuple(bad))
    return DensityMatrix(m, herm_tol=tol, trace_tol=tol, psd_floor=psd_floor)


def basis_ket(index: int, dim: int) -> np.ndarray:
    """Computational-basis column vector |index> of the given dimension."""
    v = np.zeros(dim, dtype=np.complex128)
    v[index] = 1.0
    return v


def identity(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=np.complex128)
