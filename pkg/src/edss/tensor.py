"""Dense complex linear algebra for multi-qudit density operators.

Everything here works on plain ``numpy`` arrays of ``complex`` dtype in
row-major order. Registers are described by a tuple of subsystem
dimensions; the full matrix side is always the product of those
dimensions.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Iterable

import numpy as np

# Validity checks (hermiticity, unit trace, positivity) tolerate eigensolver
# noise; algebraic identities are held to a tighter bound. All matrices here
# are small (side <= ~512) with entries of magnitude <= 1.
VALIDITY_ATOL = 1e-9
ALGEBRA_ATOL = 1e-12


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product of two matrices."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def kron_all(*mats: np.ndarray) -> np.ndarray:
    """Kronecker product of any number of matrices, left to right."""
    out = np.array([[1.0 + 0.0j]])
    for m in mats:
        out = np.kron(out, np.asarray(m, dtype=complex))
    return out


def dagger(m: np.ndarray) -> np.ndarray:
    return np.asarray(m).conj().T


def is_hermitian(m: np.ndarray, atol: float = VALIDITY_ATOL) -> bool:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    return float(np.max(np.abs(m - m.conj().T))) <= atol


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """State of a multi-qudit register: square matrix plus subsystem dims.

    Construction checks shape consistency and hermiticity/trace at the
    validity tolerance. Positivity is an O(n^3) eigenvalue check, so it runs
    only through :meth:`validate`.
    """

    matrix: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self) -> None:
        mat = np.ascontiguousarray(np.asarray(self.matrix, dtype=complex))
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 2 for d in dims):
            raise ValueError(f"subsystem dimensions must all be >= 2, got {dims}")
        side = prod(dims)
        if mat.shape != (side, side):
            raise ValueError(
                f"matrix shape {mat.shape} does not match dims {dims} (side {side})"
            )
        if not is_hermitian(mat):
            raise ValueError("density operator must be Hermitian within tolerance")
        tr = complex(np.trace(mat))
        if abs(tr - 1.0) > VALIDITY_ATOL:
            raise ValueError(f"density operator must have unit trace, got {tr}")
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "dims", dims)

    @property
    def dim(self) -> int:
        """Side of the full matrix."""
        return self.matrix.shape[0]

    @property
    def subsystem_count(self) -> int:
        return len(self.dims)

    def validate(self, atol: float = VALIDITY_ATOL) -> "DensityOperator":
        """Full validity check including positivity; returns self."""
        min_eig = float(np.min(np.linalg.eigvalsh(self.matrix)))
        if min_eig < -atol:
            raise ValueError(f"density operator has negative eigenvalue {min_eig}")
        return self


@dataclass(frozen=True)
class Bipartition:
    """Ordered split of subsystem indices into a transposed side and the rest."""

    side_a: frozenset[int]
    side_b: frozenset[int]

    @classmethod
    def split(cls, side_a: Iterable[int], n_subsystems: int) -> "Bipartition":
        """Bipartition with ``side_a`` against all remaining indices."""
        a = frozenset(int(i) for i in side_a)
        full = frozenset(range(n_subsystems))
        if not a or not a <= full or a == full:
            raise ValueError(
                f"side_a {sorted(a)} must be a nonempty proper subset of 0..{n_subsystems - 1}"
            )
        return cls(a, full - a)

    def check(self, n_subsystems: int) -> None:
        full = frozenset(range(n_subsystems))
        if self.side_a & self.side_b:
            raise ValueError("bipartition sides must be disjoint")
        if (self.side_a | self.side_b) != full or not self.side_a or not self.side_b:
            raise ValueError(
                f"bipartition {sorted(self.side_a)}|{sorted(self.side_b)} does not "
                f"cover subsystems 0..{n_subsystems - 1}"
            )


def partial_trace(rho: DensityOperator, keep: Iterable[int]) -> DensityOperator:
    """Reduced operator over ``keep``, in the original subsystem order."""
    keep_sorted = sorted(set(int(k) for k in keep))
    n = len(rho.dims)
    if not keep_sorted:
        raise ValueError("keep must be nonempty")
    if keep_sorted[0] < 0 or keep_sorted[-1] >= n:
        raise ValueError(f"subsystem index out of range for {n} subsystems")
    drop = [i for i in range(n) if i not in keep_sorted]
    tensor = rho.matrix.reshape(*rho.dims, *rho.dims)
    dims_left = list(rho.dims)
    for idx in sorted(drop, reverse=True):
        tensor = np.trace(tensor, axis1=idx, axis2=idx + len(dims_left))
        dims_left.pop(idx)
    side = prod(dims_left)
    return DensityOperator(tensor.reshape(side, side), tuple(dims_left))


def partial_transpose(rho: DensityOperator, part: Bipartition) -> np.ndarray:
    """Matrix with the indices of ``part.side_a`` transposed."""
    n = len(rho.dims)
    part.check(n)
    tensor = rho.matrix.reshape(*rho.dims, *rho.dims)
    axes = list(range(2 * n))
    for i in part.side_a:
        axes[i], axes[n + i] = axes[n + i], axes[i]
    return np.ascontiguousarray(tensor.transpose(axes).reshape(rho.matrix.shape))


def hermitian_eigenvalues(h: np.ndarray, atol: float = VALIDITY_ATOL) -> np.ndarray:
    """All real eigenvalues of a Hermitian matrix, ascending.

    Backed by LAPACK (Householder reduction plus QL/QR), which is accurate to
    machine precision for the well-conditioned matrices used here.
    """
    h = np.asarray(h, dtype=complex)
    if not is_hermitian(h, atol):
        raise ValueError("input is not Hermitian within tolerance")
    return np.linalg.eigvalsh(h)


def trace_norm(h: np.ndarray) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    return float(np.sum(np.abs(hermitian_eigenvalues(h))))
