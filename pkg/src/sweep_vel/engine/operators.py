"""
Script:         operators.py
Author:         SweepVel Team

Description:
    Dense symmetric positive-semidefinite operators standing for A0 and A1: application, spectral norm,
    coercivity modulus, kernel basis and orthogonal projection onto the kernel.

    The eigendecomposition is a cyclic Jacobi rotation sweep (deterministic, symmetric input only). The raw
    decomposition is computed once per operator and cached; kernel snapping is applied per requested tolerance.
"""

import math
import threading
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence, Union

# Third-party
import numpy as np

# SweepVel imports
from sweep_vel import (CoreLogger, InvariantViolation, SpectrumNoConverge)

SWEEP_VEL_MODULE_NAME: str = "Operators"
SWEEP_VEL_MODULE_DESCRIPTION: str = "Symmetric PSD operator algebra"

# Relative cutoff below which eigenvalues are treated as zero
DEFAULT_KERNEL_TOL: float = 1e-10
# Symmetry and positive semidefiniteness acceptance
SYMMETRY_TOL: float = 1e-12
PSD_TOL: float = 1e-10
# Jacobi sweep budget and convergence threshold relative to the Frobenius norm
JACOBI_MAX_SWEEPS: int = 100
JACOBI_OFF_TOL: float = 1e-14

ArrayLike = Union[np.ndarray, Sequence[float], Sequence[Sequence[float]]]


def jacobi_eigh(matrix: np.ndarray, max_sweeps: int = JACOBI_MAX_SWEEPS,
                off_tol: float = JACOBI_OFF_TOL) -> tuple[np.ndarray, np.ndarray, int]:
    """
    Cyclic Jacobi eigendecomposition of a symmetric matrix.
    Args:
        matrix: Symmetric square matrix.
        max_sweeps: Maximum number of full (p, q) sweeps.
        off_tol: Stop when the off-diagonal Frobenius norm is at most off_tol times the Frobenius norm.
    Returns:
        (eigenvalues ascending, eigenvectors as columns, sweeps used).
    Raises:
        SpectrumNoConverge: When the sweep cap is exceeded.
    """
    a = np.array(matrix, dtype=float, copy=True)
    n = a.shape[0]
    v = np.eye(n)
    fro = float(np.linalg.norm(a))

    def _off_norm() -> float:
        return math.sqrt(max(0.0, float(np.sum(a * a) - np.sum(np.diag(a) ** 2))))

    sweeps = 0
    off = _off_norm() if n > 1 else 0.0
    while off > off_tol * fro:
        if sweeps >= max_sweeps:
            raise SpectrumNoConverge(sweeps=sweeps, off_norm=off)
        sweeps += 1

        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue

                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = (1.0 if tau >= 0.0 else -1.0) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c

                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q

                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0

                vec_p, vec_q = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vec_p - s * vec_q
                v[:, q] = s * vec_p + c * vec_q

        previous_off, off = off, _off_norm()
        if off >= previous_off:
            break  # Rounding floor reached

    eigenvalues = np.diag(a).copy()
    order = np.argsort(eigenvalues, kind="stable")
    return eigenvalues[order], v[:, order], sweeps


@dataclass(frozen=True, eq=False)
class OperatorSpectrum:
    """
    Full eigendecomposition of a symmetric PSD operator with kernel snapping applied.
    Eigenvectors are the columns of 'eigenvectors'; 'kernel_basis' holds one orthonormal kernel vector per row.
    """
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    operator_norm: float
    coercivity_modulus: float
    kernel_basis: np.ndarray
    tol: float

    @property
    def dim(self) -> int:
        return int(self.eigenvalues.shape[0])

    @property
    def kernel_dim(self) -> int:
        return int(self.kernel_basis.shape[0])

    def kernel_project(self, x: ArrayLike) -> np.ndarray:
        """ Orthogonal projection onto ker A: sum of <x, b_i> b_i over the kernel basis. """
        x = np.asarray(x, dtype=float)
        if self.kernel_dim == 0:
            return np.zeros_like(x)
        return self.kernel_basis.T @ (self.kernel_basis @ x)


@dataclass(frozen=True, eq=False)
class SymmetricOperator:
    """
    Dense symmetric positive-semidefinite matrix. Immutable after construction: the entries array is
    copied and made read-only, and the PSD check runs eagerly.
    """
    entries: np.ndarray
    kernel_tol: float = DEFAULT_KERNEL_TOL
    _raw: Any = field(init=False, repr=False, compare=False, default=None)
    _spectra: dict = field(init=False, repr=False, compare=False, default_factory=dict)
    _lock: Any = field(init=False, repr=False, compare=False, default_factory=threading.Lock)

    def __post_init__(self):
        a = np.array(self.entries, dtype=float, copy=True)
        if a.ndim == 0:
            a = a.reshape(1, 1)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
            raise InvariantViolation("shape", f"operator must be a non-empty square matrix, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise InvariantViolation("finiteness", "operator entries must be finite")

        violation = np.abs(a - a.T) > SYMMETRY_TOL * (1.0 + np.abs(a))
        if np.any(violation):
            i, j = (int(k) for k in np.argwhere(violation)[0])
            raise InvariantViolation("symmetry", f"entries[{i}][{j}]={a[i, j]!r} differs from "
                                                 f"entries[{j}][{i}]={a[j, i]!r}")

        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

        eigenvalues, _, _ = self._decompose()
        norm = max(0.0, float(eigenvalues[-1]), float(-eigenvalues[0]))
        if eigenvalues[0] < -PSD_TOL * norm:
            raise InvariantViolation("positive semidefiniteness",
                                     f"smallest eigenvalue {eigenvalues[0]:.6g} is below "
                                     f"-{PSD_TOL:g} * operator norm ({norm:.6g})")

    def _decompose(self) -> tuple[np.ndarray, np.ndarray, int]:
        with self._lock:
            if self._raw is None:
                raw = jacobi_eigh(self.entries)
                object.__setattr__(self, "_raw", raw)
                CoreLogger.get_module_logger(SWEEP_VEL_MODULE_NAME).debug(
                    f"Jacobi decomposition of a {self.dim}x{self.dim} operator in {raw[2]} sweep(s)")
            return self._raw

    @classmethod
    def identity(cls, dim: int, scale: float = 1.0) -> "SymmetricOperator":
        return cls(scale * np.eye(dim))

    @classmethod
    def zeros(cls, dim: int) -> "SymmetricOperator":
        return cls(np.zeros((dim, dim)))

    @classmethod
    def diagonal(cls, values: ArrayLike) -> "SymmetricOperator":
        return cls(np.diag(np.asarray(values, dtype=float)))

    @property
    def dim(self) -> int:
        return int(self.entries.shape[0])

    def apply(self, x: ArrayLike) -> np.ndarray:
        """
        Exact matrix-vector product.
        Raises:
            ValueError: On dimension mismatch.
        """
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise ValueError(f"dimension mismatch: operator is {self.dim}x{self.dim}, vector has shape {x.shape}")
        return self.entries @ x

    def quadratic(self, x: ArrayLike) -> float:
        """ <Ax, x> """
        x = np.asarray(x, dtype=float)
        return float(self.apply(x) @ x)

    def spectrum(self, tol: Optional[float] = None) -> OperatorSpectrum:
        """
        Eigendecomposition with eigenvalues at or below tol * operator_norm snapped to zero; the matching
        eigenvectors form the kernel basis.
        Raises:
            SpectrumNoConverge: Jacobi sweep cap exceeded.
        """
        tol = self.kernel_tol if tol is None else float(tol)
        cached = self._spectra.get(tol)
        if cached is not None:
            return cached

        eigenvalues, eigenvectors, _ = self._decompose()
        operator_norm = max(0.0, float(eigenvalues[-1]))
        snapped = eigenvalues.copy()
        in_kernel = snapped <= tol * operator_norm
        snapped[in_kernel] = 0.0

        kernel_basis = eigenvectors[:, in_kernel].T.copy()
        coercivity = 0.0 if np.any(in_kernel) else max(0.0, float(snapped[0]))

        for array in (snapped, eigenvectors, kernel_basis):
            array.setflags(write=False)

        result = OperatorSpectrum(eigenvalues=snapped, eigenvectors=eigenvectors, operator_norm=operator_norm,
                                  coercivity_modulus=coercivity, kernel_basis=kernel_basis, tol=tol)
        self._spectra[tol] = result
        return result

    @property
    def norm(self) -> float:
        """ Spectral norm ||A||. """
        return self.spectrum().operator_norm

    @property
    def coercivity(self) -> float:
        """ Modulus of coercivity: the smallest eigenvalue, zero when the kernel is nontrivial. """
        return self.spectrum().coercivity_modulus

    @property
    def is_zero(self) -> bool:
        return not np.any(self.entries)

    def kernel_project(self, x: ArrayLike, tol: Optional[float] = None) -> np.ndarray:
        return self.spectrum(tol).kernel_project(x)

    def in_kernel(self, x: ArrayLike, tol: float = DEFAULT_KERNEL_TOL) -> bool:
        """ True when ||A x|| <= tol. """
        return float(np.linalg.norm(self.apply(x))) <= tol

    def plus(self, other: "SymmetricOperator", scale: float = 1.0) -> "SymmetricOperator":
        """ self + scale * other, e.g. the composite step operator A1 + h A0. """
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return SymmetricOperator(self.entries + scale * other.entries, kernel_tol=self.kernel_tol)

    def to_list(self) -> list[list[float]]:
        """ Row-major nested lists for spec files. """
        return self.entries.tolist()


def apply(operator: SymmetricOperator, x: ArrayLike) -> np.ndarray:
    return operator.apply(x)


def spectrum(operator: SymmetricOperator, tol: float = DEFAULT_KERNEL_TOL) -> OperatorSpectrum:
    return operator.spectrum(tol)


def kernel_project(operator_spectrum: OperatorSpectrum, x: ArrayLike) -> np.ndarray:
    return operator_spectrum.kernel_project(x)
