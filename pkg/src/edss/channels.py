"""Quantum channels: canonical affine qubit maps, depolarizing, amplitude damping.

Each channel exposes its action on single-qudit operators through
``apply_matrix`` and a transfer tensor ``T[i, j, k, l]`` holding the matrix
element ``E(|k><l|)[i, j]``. The transfer tensor drives embedding into a
larger register, the Choi matrix, and the CPT checks, so no Kraus
decomposition is ever required for maps defined by their action alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Mapping, Union

import numpy as np

from .tensor import VALIDITY_ATOL, DensityOperator

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)


@dataclass(frozen=True, eq=False)
class CanonicalChannel:
    """Qubit channel acting on the Bloch vector as r -> (l1 rx, l2 ry, l3 rz + t3).

    Equivalently: identity maps to I + t3*sz, and each Pauli sx, sy, sz is
    scaled by its lambda. Only the z shift is allowed; the x and y shifts are
    fixed to zero by construction.
    """

    lambda1: float
    lambda2: float
    lambda3: float
    t3: float = 0.0
    kind: str = "canonical"
    noise_param: float | None = None

    @property
    def dim(self) -> int:
        return 2

    def apply_matrix(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=complex)
        if x.shape != (2, 2):
            raise ValueError("canonical channels act on 2x2 operators")
        x0 = 0.5 * np.trace(x)
        bloch = [0.5 * np.trace(s @ x) for s in PAULIS]
        out = x0 * (I2 + self.t3 * SIGMA_Z)
        out = out + self.lambda1 * bloch[0] * SIGMA_X
        out = out + self.lambda2 * bloch[1] * SIGMA_Y
        out = out + self.lambda3 * bloch[2] * SIGMA_Z
        return out

    def transfer_tensor(self) -> np.ndarray:
        return _transfer_from_action(self, 2)


@dataclass(frozen=True, eq=False)
class KrausChannel:
    """Channel given by an explicit operator-sum representation."""

    kraus_ops: tuple[np.ndarray, ...]
    kind: str = "kraus"
    noise_param: float | None = None

    def __post_init__(self) -> None:
        ops = tuple(np.asarray(a, dtype=complex) for a in self.kraus_ops)
        if not ops:
            raise ValueError("at least one Kraus operator is required")
        d = ops[0].shape[0]
        for a in ops:
            if a.shape != (d, d):
                raise ValueError("all Kraus operators must be square with equal shape")
        object.__setattr__(self, "kraus_ops", ops)

    @property
    def dim(self) -> int:
        return self.kraus_ops[0].shape[0]

    def apply_matrix(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=complex)
        return sum(a @ x @ a.conj().T for a in self.kraus_ops)

    def transfer_tensor(self) -> np.ndarray:
        ops = np.stack(self.kraus_ops)
        return np.einsum("mik,mjl->ijkl", ops, ops.conj())

    def completeness_defect(self) -> float:
        """Max-entry deviation of sum(A^dag A) from the identity."""
        d = self.dim
        acc = sum(a.conj().T @ a for a in self.kraus_ops)
        return float(np.max(np.abs(acc - np.eye(d))))


@dataclass(frozen=True, eq=False)
class DepolarizingChannel:
    """Qudit map X -> (1-p) X + (p/d) tr(X) I, applied directly by its action."""

    d: int
    p: float
    kind: str = "depolarizing"

    @property
    def dim(self) -> int:
        return self.d

    @property
    def noise_param(self) -> float:
        return self.p

    def apply_matrix(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=complex)
        return (1.0 - self.p) * x + (self.p / self.d) * np.trace(x) * np.eye(self.d)

    def transfer_tensor(self) -> np.ndarray:
        d, p = self.d, self.p
        eye = np.eye(d)
        t4 = (1.0 - p) * np.einsum("ik,jl->ijkl", eye, eye).astype(complex)
        t4 += (p / d) * np.einsum("kl,ij->ijkl", eye, eye)
        return t4


QuditChannel = Union[CanonicalChannel, KrausChannel, DepolarizingChannel]


def canonical_channel(
    lambda1: float, lambda2: float, lambda3: float, t3: float = 0.0
) -> CanonicalChannel:
    """Canonical affine qubit channel. Parameters are not CP-validated here;
    use :func:`is_cpt` to check and note that protocol drivers refuse
    non-CPT channels."""
    return CanonicalChannel(float(lambda1), float(lambda2), float(lambda3), float(t3))


def depolarizing(d: int, p: float) -> QuditChannel:
    """Depolarizing channel in dimension ``d`` with error probability ``p``."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"depolarizing probability must be in [0, 1], got {p}")
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    if d == 2:
        return CanonicalChannel(
            1.0 - p, 1.0 - p, 1.0 - p, 0.0, kind="depolarizing", noise_param=float(p)
        )
    return DepolarizingChannel(int(d), float(p))


def amplitude_damping(d: int, gamma: float) -> KrausChannel:
    """Amplitude damping channel in dimension ``d`` with decay rate ``gamma``.

    Kraus set: a no-decay operator |0><0| + sqrt(1-gamma) sum_i |i><i|, plus
    one decay operator sqrt(gamma) |0><m| per excited level m.
    """
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"damping rate must be in [0, 1], got {gamma}")
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    e0 = np.zeros((d, d), dtype=complex)
    e0[0, 0] = 1.0
    for i in range(1, d):
        e0[i, i] = np.sqrt(1.0 - gamma)
    ops = [e0]
    for m in range(1, d):
        em = np.zeros((d, d), dtype=complex)
        em[0, m] = np.sqrt(gamma)
        ops.append(em)
    return KrausChannel(tuple(ops), kind="amplitude_damping", noise_param=float(gamma))


def identity_channel(d: int = 2) -> QuditChannel:
    if d == 2:
        return CanonicalChannel(1.0, 1.0, 1.0, 0.0, kind="identity")
    return DepolarizingChannel(d, 0.0, kind="identity")


def _transfer_from_action(ch, d: int) -> np.ndarray:
    t4 = np.empty((d, d, d, d), dtype=complex)
    basis = np.zeros((d, d), dtype=complex)
    for k in range(d):
        for l in range(d):
            basis[k, l] = 1.0
            t4[:, :, k, l] = ch.apply_matrix(basis)
            basis[k, l] = 0.0
    return t4


def apply_to_subsystem(
    ch: QuditChannel, rho: DensityOperator, target: int
) -> DensityOperator:
    """Apply ``ch`` to one subsystem of ``rho``, identity on the others."""
    n = len(rho.dims)
    if not 0 <= target < n:
        raise ValueError(f"target {target} out of range for {n} subsystems")
    d = rho.dims[target]
    if ch.dim != d:
        raise ValueError(f"channel dimension {ch.dim} != subsystem dimension {d}")
    left = prod(rho.dims[:target])
    right = prod(rho.dims[target + 1 :])
    t4 = ch.transfer_tensor()
    r6 = rho.matrix.reshape(left, d, right, left, d, right)
    out = np.einsum("ijkl,akbcle->aibcje", t4, r6)
    return DensityOperator(out.reshape(rho.matrix.shape), rho.dims)


def choi_matrix(ch: QuditChannel) -> np.ndarray:
    """Block matrix sum_{kl} |k><l| (x) E(|k><l|); PSD iff the map is CP."""
    d = ch.dim
    t4 = ch.transfer_tensor()
    return np.ascontiguousarray(t4.transpose(2, 0, 3, 1).reshape(d * d, d * d))


@dataclass(frozen=True)
class CptReport:
    """Result of the complete-positivity and trace-preservation check."""

    is_cpt: bool
    min_choi_eigenvalue: float
    trace_preservation_error: float
    choi_hermiticity_error: float

    def __bool__(self) -> bool:
        return self.is_cpt


def is_cpt(ch: QuditChannel, tol: float = VALIDITY_ATOL) -> CptReport:
    """Check complete positivity (Choi PSD) and trace preservation.

    The trace defect is reported as the max-entry deviation of the Choi
    matrix traced over its output factor from the identity, which for Kraus
    channels coincides with the usual completeness defect.
    """
    d = ch.dim
    t4 = ch.transfer_tensor()
    choi = t4.transpose(2, 0, 3, 1).reshape(d * d, d * d)
    herm_err = float(np.max(np.abs(choi - choi.conj().T)))
    tp_err = float(np.max(np.abs(np.einsum("aakl->kl", t4) - np.eye(d))))
    if herm_err > tol:
        return CptReport(False, float("nan"), tp_err, herm_err)
    min_eig = float(np.min(np.linalg.eigvalsh(0.5 * (choi + choi.conj().T))))
    ok = min_eig >= -tol and tp_err <= tol
    return CptReport(ok, min_eig, tp_err, herm_err)


def is_extreme_point(ch: CanonicalChannel, tol: float = VALIDITY_ATOL) -> bool:
    """Whether a canonical channel sits on an extreme point of the CPT set.

    The condition is equality, for both signs, of (l1 +- l2)^2 and
    (1 +- l3)^2 - t3^2.
    """
    if not isinstance(ch, CanonicalChannel):
        raise TypeError("extreme-point test applies to canonical channels")
    l1, l2, l3, t3 = ch.lambda1, ch.lambda2, ch.lambda3, ch.t3
    plus = (l1 + l2) ** 2 - ((1 + l3) ** 2 - t3**2)
    minus = (l1 - l2) ** 2 - ((1 - l3) ** 2 - t3**2)
    return abs(plus) <= tol and abs(minus) <= tol


def unital_cp_condition(l1: float, l2: float, l3: float, tol: float = 0.0) -> bool:
    """Closed-form CP test for unital canonical channels: |l1 +- l2| <= |1 +- l3|."""
    return (
        abs(l1 + l2) <= abs(1 + l3) + tol and abs(l1 - l2) <= abs(1 - l3) + tol
    )


def bloch_affine(ch: QuditChannel) -> tuple[np.ndarray, np.ndarray]:
    """Affine Bloch representation (matrix, shift) of a qubit channel."""
    if ch.dim != 2:
        raise ValueError("Bloch representation applies to qubit channels")
    lam = np.empty((3, 3))
    t = np.empty(3)
    for j, sj in enumerate(PAULIS):
        t[j] = float(np.real(0.5 * np.trace(sj @ ch.apply_matrix(I2))))
        for k, sk in enumerate(PAULIS):
            lam[j, k] = float(np.real(0.5 * np.trace(sj @ ch.apply_matrix(sk))))
    return lam, t


def has_canonical_form(ch: QuditChannel, atol: float = 1e-12) -> bool:
    """True when the qubit channel is diagonal in the Bloch picture with at
    most a z shift, the assumption behind the protocol identity chains."""
    lam, t = bloch_affine(ch)
    off = lam - np.diag(np.diag(lam))
    return float(np.max(np.abs(off))) <= atol and abs(t[0]) <= atol and abs(t[1]) <= atol


def channel_from_config(config: Mapping[str, object]) -> QuditChannel:
    """Build a channel from a flat mapping.

    Recognized keys: ``kind`` (depolarizing | amplitude_damping | canonical),
    ``d``, ``p``, ``gamma``, ``lambda1``, ``lambda2``, ``lambda3``, ``t3``.
    """
    kind = str(config.get("kind", "")).strip()
    d = int(config.get("d", 2))
    if kind == "depolarizing":
        if "p" not in config:
            raise ValueError("depolarizing channel requires key 'p'")
        return depolarizing(d, float(config["p"]))
    if kind == "amplitude_damping":
        if "gamma" not in config:
            raise ValueError("amplitude_damping channel requires key 'gamma'")
        return amplitude_damping(d, float(config["gamma"]))
    if kind == "canonical":
        if d != 2:
            raise ValueError("canonical channels are qubit (d=2) channels")
        try:
            l1 = float(config["lambda1"])
            l2 = float(config["lambda2"])
            l3 = float(config["lambda3"])
        except KeyError as exc:
            raise ValueError(f"canonical channel requires key {exc}") from exc
        t3 = float(config.get("t3", 0.0))
        return canonical_channel(l1, l2, l3, t3)
    raise ValueError(f"unknown channel kind {kind!r}")
