"""Entanglement quantifiers: negativity, concurrence, ensemble averages."""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Iterable

import numpy as np

from .channels import SIGMA_Y
from .states import MeasurementBranch
from .tensor import Bipartition, DensityOperator, hermitian_eigenvalues, partial_transpose

# Eigenvalues in (-NEGATIVE_EIG_ATOL, 0) are treated as solver noise.
NEGATIVE_EIG_ATOL = 1e-10


@dataclass(frozen=True)
class NegativityResult:
    """Negativity of a bipartition, with the quantities behind it.

    ``value`` is (trace_norm - 1) / (min_dim - 1) where min_dim is the
    smaller full Hilbert-space dimension of the two sides, so maximally
    entangled states of any dimension score 1.
    """

    value: float
    trace_norm: float
    min_dim: int
    negative_eigenvalues: tuple[float, ...]


def negativity(rho: DensityOperator, part: Bipartition) -> NegativityResult:
    """Negativity of ``rho`` across ``part`` (transpose applied to side_a)."""
    pt = partial_transpose(rho, part)
    eigs = hermitian_eigenvalues(pt)
    tn = float(np.sum(np.abs(eigs)))
    dim_a = prod(rho.dims[i] for i in part.side_a)
    dim_b = prod(rho.dims[i] for i in part.side_b)
    min_dim = min(dim_a, dim_b)
    negatives = tuple(float(e) for e in eigs if e < -NEGATIVE_EIG_ATOL)
    value = max(0.0, (tn - 1.0) / (min_dim - 1))
    return NegativityResult(value, tn, min_dim, negatives)


def concurrence(rho: DensityOperator) -> float:
    """Two-qubit concurrence max(0, l1 - l2 - l3 - l4).

    The l_i are the decreasing square roots of the eigenvalues of
    rho (sy x sy) rho* (sy x sy), with conjugation in the computational
    basis.
    """
    if rho.dims != (2, 2):
        raise ValueError(f"concurrence is defined for two qubits, got dims {rho.dims}")
    yy = np.kron(SIGMA_Y, SIGMA_Y)
    rho_tilde = yy @ rho.matrix.conj() @ yy
    roots = np.real(np.linalg.eigvals(rho.matrix @ rho_tilde))
    # Zero roots come back from the solver as ~1e-16 values whose square
    # roots would pollute the differences below; genuine roots sit far above.
    roots[roots < 1e-13] = 0.0
    lams = np.sort(np.sqrt(roots))[::-1]
    return float(max(0.0, lams[0] - lams[1] - lams[2] - lams[3]))


def average_negativity(branches: Iterable[MeasurementBranch], part: Bipartition) -> float:
    """Probability-weighted negativity over measurement branches.

    Null branches (zero probability) contribute nothing.
    """
    total = 0.0
    for branch in branches:
        if branch.post_state is None or branch.probability <= 0.0:
            continue
        total += branch.probability * negativity(branch.post_state, part).value
    return total
