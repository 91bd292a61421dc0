"""Initial states, reference entangled states, and circuit elements.

The protocol start states are built literally from their phase-state
mixtures. Their correctness is pinned down in the test suite by comparing
the post-CNOT forms against independently constructed projector sums.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

import numpy as np

from .tensor import DensityOperator, kron_all, partial_trace

# Branch probabilities below this are reported as exactly zero with a null
# post state, keeping branch indexing stable across noise values.
ZERO_PROBABILITY_ATOL = 1e-12


@dataclass(frozen=True, eq=False)
class PureState:
    """Unit-norm state vector over a multi-qudit register."""

    amplitudes: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self) -> None:
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        dims = tuple(int(d) for d in self.dims)
        if amps.shape[0] != prod(dims):
            raise ValueError(f"amplitude count {amps.shape[0]} does not match dims {dims}")
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"state vector must have unit norm, got {norm}")
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "dims", dims)

    def density(self) -> DensityOperator:
        return DensityOperator(np.outer(self.amplitudes, self.amplitudes.conj()), self.dims)


@dataclass(frozen=True, eq=False)
class MeasurementBranch:
    """One outcome of a computational-basis measurement.

    ``post_state`` lives on the remaining subsystems; it is ``None`` for
    zero-probability branches.
    """

    outcome: int | tuple[int, ...]
    probability: float
    post_state: DensityOperator | None


def basis_ket(d: int, i: int) -> np.ndarray:
    v = np.zeros(d, dtype=complex)
    v[i] = 1.0
    return v


def _equator_qubit(phase: complex) -> np.ndarray:
    """(|0> + phase |1>) / sqrt(2) for a unit-modulus phase."""
    return np.array([1.0, phase], dtype=complex) / np.sqrt(2.0)


def _flat_index(dims: tuple[int, ...], digits: tuple[int, ...]) -> int:
    idx = 0
    for d, x in zip(dims, digits):
        idx = idx * d + x
    return idx


def ghz_state(n: int, d: int) -> PureState:
    """n-party, d-level GHZ state (1/sqrt(d)) sum_i |i>^(x n)."""
    if n < 2 or d < 2:
        raise ValueError("GHZ states need n >= 2 parties of dimension >= 2")
    dims = (d,) * n
    amps = np.zeros(d**n, dtype=complex)
    for i in range(d):
        amps[_flat_index(dims, (i,) * n)] = 1.0
    return PureState(amps / np.sqrt(d), dims)


def bell_chi0(d: int) -> PureState:
    """Two-qudit maximally entangled state (1/sqrt(d)) sum_j |jj>."""
    return ghz_state(2, d)


def psi_plus() -> PureState:
    """(|00> + |11>) / sqrt(2)."""
    return ghz_state(2, 2)


def edss_initial_two_qubit() -> DensityOperator:
    """Separable three-qubit start state for two-qubit distribution.

    An even mixture of four equator-phase product pairs |psi_k, psi_-k>
    tagged by |0> on the exchange qubit, plus the two correlated basis
    states tagged by |1>, all at weight 1/6.
    """
    dims = (2, 2, 2)
    mat = np.zeros((8, 8), dtype=complex)
    e0 = basis_ket(2, 0)
    for k in range(4):
        phase = np.exp(1j * k * np.pi / 2.0)
        vec = kron_all(
            _equator_qubit(phase).reshape(2, 1),
            _equator_qubit(np.conj(phase)).reshape(2, 1),
            e0.reshape(2, 1),
        ).reshape(-1)
        mat += np.outer(vec, vec.conj()) / 6.0
    for i in range(2):
        idx = _flat_index(dims, (i, i, 1))
        mat[idx, idx] += 1.0 / 6.0
    return DensityOperator(mat, dims).validate()


def ghz_initial_state() -> DensityOperator:
    """Separable five-qubit start state (a, b, c, d1, d2) for GHZ distribution.

    Mixes seven three-qubit phase products |phi_1(k), phi_2(k), phi_3(k)>
    with phi_n(k) = (|0> + exp(2^n pi i k / 7) |1>)/sqrt(2), tagged by |00>
    on the ancilla pair, with basis terms |mmm> tagged by the remaining
    ancilla basis states.
    """
    dims = (2, 2, 2, 2, 2)
    mat = np.zeros((32, 32), dtype=complex)
    anc00 = basis_ket(4, 0)
    for k in range(7):
        parts = [
            _equator_qubit(np.exp(1j * np.pi * (2**n) * k / 7.0)).reshape(2, 1)
            for n in (1, 2, 3)
        ]
        vec = kron_all(parts[0], parts[1], parts[2], anc00.reshape(4, 1)).reshape(-1)
        mat += (4.0 / 49.0) * np.outer(vec, vec.conj())
    for m in range(2):
        for j in range(2):
            for l in range(2):
                if (j, l) == (0, 0):
                    continue
                idx = _flat_index(dims, (m, m, m, j, l))
                mat[idx, idx] += 1.0 / 14.0
    return DensityOperator(mat, dims).validate()


def qudit_initial_state(d: int) -> DensityOperator:
    """Separable three-qudit start state for d-level pair distribution.

    Built from phase states |phi(+-k)> = (1/sqrt(d)) sum_j w^(+-s_j k) |j>
    with w = exp(2 pi i / D), D = 2^d - 1 and s_j = 2^j - 1, mixed over all
    k and tagged by |0> on the exchange qudit, plus the diagonal correlated
    terms |j, j, l-j> for j != l.
    """
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    dims = (d, d, d)
    side = d**3
    big_d = 2**d - 1
    s = [2**j - 1 for j in range(d)]
    w = np.exp(2j * np.pi / big_d)
    mat = np.zeros((side, side), dtype=complex)
    e0 = basis_ket(d, 0)
    weight = d / (big_d * (2 * d - 1))
    for k in range(big_d):
        phi_p = np.array([w ** (s[j] * k) for j in range(d)], dtype=complex) / np.sqrt(d)
        phi_m = np.array([w ** (-s[j] * k) for j in range(d)], dtype=complex) / np.sqrt(d)
        vec = kron_all(
            phi_p.reshape(d, 1), phi_m.reshape(d, 1), e0.reshape(d, 1)
        ).reshape(-1)
        mat += weight * np.outer(vec, vec.conj())
    for j in range(d):
        for l in range(d):
            if j == l:
                continue
            idx = _flat_index(dims, (j, j, (l - j) % d))
            mat[idx, idx] += 1.0 / (d * (2 * d - 1))
    return DensityOperator(mat, dims).validate()


def _cnot_permutation(
    dims: tuple[int, ...], control: int, target: int, inverse: bool
) -> np.ndarray:
    n = len(dims)
    total = prod(dims)
    strides = np.ones(n, dtype=np.int64)
    for i in range(n - 2, -1, -1):
        strides[i] = strides[i + 1] * dims[i + 1]
    full = np.arange(total, dtype=np.int64)
    d = dims[control]
    c = (full // strides[control]) % d
    t = (full // strides[target]) % d
    t_new = (t - c) % d if inverse else (t + c) % d
    return full + (t_new - t) * strides[target]


def cnot(
    rho: DensityOperator, control: int, target: int, inverse: bool = False
) -> DensityOperator:
    """Conjugate by the generalized CNOT |i, j> -> |i, j+i mod d|.

    ``inverse=True`` subtracts the control digit instead.
    """
    n = len(rho.dims)
    if not (0 <= control < n and 0 <= target < n) or control == target:
        raise ValueError(f"invalid control/target pair ({control}, {target})")
    if rho.dims[control] != rho.dims[target]:
        raise ValueError(
            f"control and target dimensions differ: "
            f"{rho.dims[control]} vs {rho.dims[target]}"
        )
    perm = _cnot_permutation(rho.dims, control, target, inverse)
    pinv = np.argsort(perm)
    return DensityOperator(rho.matrix[np.ix_(pinv, pinv)], rho.dims)


def measure_computational(rho: DensityOperator, target: int) -> list[MeasurementBranch]:
    """Measure one subsystem in the computational basis and discard it.

    Returns one branch per outcome with its probability and the normalized
    post state on the remaining subsystems. Zero-probability outcomes keep
    their slot with probability 0 and a null post state.
    """
    n = len(rho.dims)
    if not 0 <= target < n:
        raise ValueError(f"target {target} out of range for {n} subsystems")
    if n == 1:
        raise ValueError("measuring the only subsystem leaves an empty register")
    d = rho.dims[target]
    left = prod(rho.dims[:target])
    right = prod(rho.dims[target + 1 :])
    rest_dims = rho.dims[:target] + rho.dims[target + 1 :]
    r6 = rho.matrix.reshape(left, d, right, left, d, right)
    branches: list[MeasurementBranch] = []
    for m in range(d):
        block = r6[:, m, :, :, m, :].reshape(left * right, left * right)
        p = float(np.real(np.trace(block)))
        if p < ZERO_PROBABILITY_ATOL:
            branches.append(MeasurementBranch(m, 0.0, None))
        else:
            branches.append(
                MeasurementBranch(m, p, DensityOperator(block / p, rest_dims))
            )
    return branches


def bob_deterministic_kraus() -> tuple[np.ndarray, ...]:
    """Kraus set of the local two-qubit map used in the deterministic variant."""
    p0 = np.outer(basis_ket(2, 0), basis_ket(2, 0).conj())
    a1 = np.kron(np.eye(2, dtype=complex), p0)
    e01 = basis_ket(4, 1)
    e11 = basis_ket(4, 3)
    a2 = np.outer(e01, e01.conj())
    a3 = np.outer(e01, e11.conj())
    return (a1, a2, a3)


def bob_deterministic_map(rho: DensityOperator) -> DensityOperator:
    """Deterministic finish: local channel on (b, c), then trace out c."""
    if rho.dims != (2, 2, 2):
        raise ValueError(f"expected a three-qubit register, got dims {rho.dims}")
    out = np.zeros_like(rho.matrix)
    for a in bob_deterministic_kraus():
        lifted = np.kron(np.eye(2, dtype=complex), a)
        out += lifted @ rho.matrix @ lifted.conj().T
    return partial_trace(DensityOperator(out, (2, 2, 2)), keep={0, 1})
