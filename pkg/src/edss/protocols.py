"""End-to-end distribution protocol drivers with full per-step traces.

Three variants are covered:

* ``two_qubit``: one exchange qubit c mediates entanglement between a and b;
  finished either by measuring c (probabilistic) or by a local channel on
  (b, c) plus discarding c (deterministic).
* ``ghz``: two exchange qubits d1, d2 mediate a three-party GHZ state
  between a, b, c (probabilistic only).
* ``qudit``: the d-level generalization of the two-qubit variant, finished
  with an inverse CNOT on (b, c) before measuring c.

Every intermediate state is materialized as a dense matrix so the traces
can be checked elementwise against analytic block forms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .channels import QuditChannel, apply_to_subsystem, has_canonical_form, is_cpt
from .measures import average_negativity, concurrence, negativity
from .reference import FORMULAS, Formula, closed_form  # noqa: F401  (re-exported)
from .states import (
    MeasurementBranch,
    bob_deterministic_map,
    cnot,
    edss_initial_two_qubit,
    ghz_initial_state,
    measure_computational,
    qudit_initial_state,
)
from .tensor import Bipartition, DensityOperator, partial_trace

CHAIN_ATOL = 1e-9
SEPARABILITY_ATOL = 1e-9

TWO_QUBIT_LABELS = ("a", "b", "c")
GHZ_LABELS = ("a", "b", "c", "d1", "d2")


def partition_name(labels: Sequence[str], side_a: Sequence[int]) -> str:
    side = set(side_a)
    a = "".join(labels[i] for i in sorted(side))
    b = "".join(labels[i] for i in range(len(labels)) if i not in side)
    return f"{a}|{b}"


@dataclass
class DeterministicOutcome:
    """Output of the deterministic finish: final pair plus its entanglement."""

    state: DensityOperator
    negativity: float
    concurrence: float


@dataclass
class ProtocolTrace:
    """Everything a protocol run produced.

    ``partition_negativities`` is keyed ``"<partition>@<step>"``; branch
    averages live in ``averages`` keyed by the post-measurement partition.
    ``identity_chains`` names groups of those keys whose values coincide for
    admissible channels (``"avg:<partition>"`` refers into ``averages``).
    """

    protocol: str
    mode: str
    noise: dict[str, object]
    subsystems: tuple[str, ...]
    steps: list[tuple[str, DensityOperator]]
    branches: list[MeasurementBranch] = field(default_factory=list)
    branch_negativities: list[dict[str, float]] = field(default_factory=list)
    partition_negativities: dict[str, float] = field(default_factory=dict)
    averages: dict[str, float] = field(default_factory=dict)
    average_negativity: float | None = None
    success_probability: float | None = None
    deterministic_output: DeterministicOutcome | None = None
    identity_chains: dict[str, tuple[str, ...]] = field(default_factory=dict)
    exchange_keys: tuple[str, ...] = ()
    warnings: list[str] = field(default_factory=list)

    def value_of(self, key: str) -> float:
        if key.startswith("avg:"):
            return self.averages[key[4:]]
        return self.partition_negativities[key]

    def step_state(self, label: str) -> DensityOperator:
        for name, state in self.steps:
            if name == label:
                return state
        raise KeyError(f"no step labeled {label!r}")


def _noise_summary(*channels: QuditChannel) -> dict[str, object]:
    if len(channels) == 1:
        ch = channels[0]
        return {"kind": ch.kind, "dim": ch.dim, "noise_param": ch.noise_param}
    return {
        f"channel_{i + 1}": {"kind": ch.kind, "dim": ch.dim, "noise_param": ch.noise_param}
        for i, ch in enumerate(channels)
    }


def _require_cpt(ch: QuditChannel, role: str) -> None:
    report = is_cpt(ch)
    if not report:
        raise ValueError(
            f"{role} is not a CPT map (min Choi eigenvalue "
            f"{report.min_choi_eigenvalue:.3e}, trace defect "
            f"{report.trace_preservation_error:.3e})"
        )


def two_qubit_states(ch: QuditChannel) -> list[tuple[str, DensityOperator]]:
    """State sequence of the two-qubit protocol under channel ``ch`` on c."""
    rho0 = edss_initial_two_qubit()
    rho1 = cnot(rho0, control=0, target=2)
    rho1_noisy = apply_to_subsystem(ch, rho1, target=2)
    rho2_noisy = cnot(rho1_noisy, control=1, target=2)
    return [
        ("initial", rho0),
        ("alice_cnot", rho1),
        ("channel", rho1_noisy),
        ("bob_cnot", rho2_noisy),
    ]


def ghz_states(ch1: QuditChannel, ch2: QuditChannel) -> list[tuple[str, DensityOperator]]:
    """State sequence of the GHZ protocol; ``ch1`` acts on d1, ``ch2`` on d2."""
    sigma0 = ghz_initial_state()
    sigma1 = cnot(cnot(sigma0, control=0, target=3), control=0, target=4)
    noisy = apply_to_subsystem(ch2, apply_to_subsystem(ch1, sigma1, target=3), target=4)
    final = cnot(cnot(noisy, control=1, target=3), control=2, target=4)
    return [
        ("initial", sigma0),
        ("alice_cnots", sigma1),
        ("channels", noisy),
        ("bob_charlie_cnots", final),
    ]


def qudit_states(d: int, ch: QuditChannel) -> list[tuple[str, DensityOperator]]:
    """State sequence of the d-level protocol under channel ``ch`` on c."""
    omega0 = qudit_initial_state(d)
    omega1 = cnot(omega0, control=0, target=2)
    omega1_noisy = apply_to_subsystem(ch, omega1, target=2)
    omega2_noisy = cnot(omega1_noisy, control=1, target=2, inverse=True)
    return [
        ("initial", omega0),
        ("alice_cnot", omega1),
        ("channel", omega1_noisy),
        ("bob_inverse_cnot", omega2_noisy),
    ]


def _record_partition(
    trace: ProtocolTrace, state: DensityOperator, side_a: Sequence[int], step: str
) -> float:
    part = Bipartition.split(side_a, len(state.dims))
    key = f"{partition_name(trace.subsystems, side_a)}@{step}"
    value = negativity(state, part).value
    trace.partition_negativities[key] = value
    return value


def run_two_qubit(ch: QuditChannel, mode: str = "probabilistic") -> ProtocolTrace:
    """Run the two-qubit protocol under ``ch``.

    ``mode`` is ``"probabilistic"`` (measure c, keep all branches) or
    ``"deterministic"`` (local channel on b, c and trace c out). Non-CPT
    channels are refused.
    """
    if mode not in ("probabilistic", "deterministic"):
        raise ValueError(f"unknown mode {mode!r}")
    if ch.dim != 2:
        raise ValueError("the two-qubit protocol needs a qubit channel")
    _require_cpt(ch, "communication channel")

    trace = ProtocolTrace(
        protocol="two_qubit",
        mode=mode,
        noise=_noise_summary(ch),
        subsystems=TWO_QUBIT_LABELS,
        steps=two_qubit_states(ch),
    )
    states = dict(trace.steps)
    for step in ("initial", "alice_cnot", "channel", "bob_cnot"):
        _record_partition(trace, states[step], (2,), step)
    _record_partition(trace, states["channel"], (0,), "channel")
    _record_partition(trace, states["bob_cnot"], (0,), "bob_cnot")
    _record_partition(trace, states["bob_cnot"], (1,), "bob_cnot")
    trace.exchange_keys = tuple(
        f"c|ab@{step}" for step in ("initial", "alice_cnot", "channel", "bob_cnot")
    )

    if not has_canonical_form(ch, atol=1e-10):
        trace.warnings.append(
            "channel is not Bloch-diagonal with z shift only; identity chains "
            "are not guaranteed"
        )

    pair = Bipartition.split({0}, 2)
    if mode == "probabilistic":
        trace.branches = measure_computational(states["bob_cnot"], target=2)
        for branch in trace.branches:
            if branch.post_state is None:
                trace.branch_negativities.append({})
            else:
                value = negativity(branch.post_state, pair).value
                trace.branch_negativities.append({"a|b": value})
        trace.averages["a|b"] = average_negativity(trace.branches, pair)
        trace.average_negativity = trace.averages["a|b"]
        trace.success_probability = trace.branches[0].probability
        if trace.branch_negativities[0]:
            trace.partition_negativities["a|b@success"] = trace.branch_negativities[0]["a|b"]
        trace.identity_chains = {
            "distribution": (
                "avg:a|b",
                "a|bc@channel",
                "a|bc@bob_cnot",
                "b|ac@bob_cnot",
            )
        }
    else:
        final = bob_deterministic_map(states["bob_cnot"])
        trace.deterministic_output = DeterministicOutcome(
            state=final,
            negativity=negativity(final, pair).value,
            concurrence=concurrence(final),
        )
        trace.identity_chains = {
            "distribution": ("a|bc@channel", "a|bc@bob_cnot", "b|ac@bob_cnot")
        }
    return trace


def _ghz_branches(final: DensityOperator) -> list[MeasurementBranch]:
    """Measure d1 then d2, composing outcomes into (l, l') branches."""
    branches: list[MeasurementBranch] = []
    for first in measure_computational(final, target=3):
        if first.post_state is None:
            branches.extend(
                MeasurementBranch((first.outcome, second), 0.0, None) for second in range(2)
            )
            continue
        for second in measure_computational(first.post_state, target=3):
            prob = first.probability * second.probability
            post = second.post_state if prob > 0.0 else None
            branches.append(
                MeasurementBranch((first.outcome, second.outcome), prob, post)
            )
    return branches


def run_ghz(ch1: QuditChannel, ch2: QuditChannel | None = None) -> ProtocolTrace:
    """Run the GHZ protocol with channels on the two exchange qubits.

    With one argument the same channel acts on both. Distinct channels are
    allowed but flagged, since the cross-partition symmetry argument assumes
    identical independent noise.
    """
    if ch2 is None:
        ch2 = ch1
    for role, ch in (("channel on d1", ch1), ("channel on d2", ch2)):
        if ch.dim != 2:
            raise ValueError(f"{role} must be a qubit channel")
        _require_cpt(ch, role)

    trace = ProtocolTrace(
        protocol="ghz",
        mode="probabilistic",
        noise=_noise_summary(ch1, ch2),
        subsystems=GHZ_LABELS,
        steps=ghz_states(ch1, ch2),
    )
    states = dict(trace.steps)
    step_names = ("initial", "alice_cnots", "channels", "bob_charlie_cnots")
    for step in step_names:
        _record_partition(trace, states[step], (3, 4), step)
    for step in ("channels", "bob_charlie_cnots"):
        for side in ((0,), (1,), (2,)):
            _record_partition(trace, states[step], side, step)
    trace.exchange_keys = tuple(f"d1d2|abc@{step}" for step in step_names)

    identical = bool(
        np.allclose(ch1.transfer_tensor(), ch2.transfer_tensor(), atol=1e-12, rtol=0.0)
    )
    for role, ch in (("d1", ch1), ("d2", ch2)):
        if not has_canonical_form(ch, atol=1e-10):
            trace.warnings.append(
                f"channel on {role} is not Bloch-diagonal with z shift only; "
                "identity chains are not guaranteed"
            )
    if not identical:
        trace.warnings.append(
            "channels on d1 and d2 differ; the b/c symmetry relation is not guaranteed"
        )

    trace.branches = _ghz_branches(states["bob_charlie_cnots"])
    three = {
        "a|bc": Bipartition.split({0}, 3),
        "b|ac": Bipartition.split({1}, 3),
        "c|ab": Bipartition.split({2}, 3),
    }
    for branch in trace.branches:
        if branch.post_state is None:
            trace.branch_negativities.append({})
            continue
        trace.branch_negativities.append(
            {name: negativity(branch.post_state, part).value for name, part in three.items()}
        )
    for name, part in three.items():
        trace.averages[name] = average_negativity(trace.branches, part)
    trace.average_negativity = trace.averages["a|bc"]
    trace.success_probability = trace.branches[0].probability

    success = trace.branches[0].post_state
    if success is not None:
        for name, value in trace.branch_negativities[0].items():
            trace.partition_negativities[f"{name}@success"] = value
        pair_part = Bipartition.split({0}, 2)
        for pair_name, keep in (("ab", (0, 1)), ("bc", (1, 2)), ("ac", (0, 2))):
            reduced = partial_trace(success, keep=keep)
            trace.partition_negativities[f"{pair_name}_pair@success"] = negativity(
                reduced, pair_part
            ).value

    trace.identity_chains = {
        "a_side": (
            "avg:a|bc",
            "a|bcd1d2@bob_charlie_cnots",
            "a|bcd1d2@channels",
        ),
        "b_side": ("avg:b|ac", "b|acd1d2@bob_charlie_cnots"),
        "c_side": ("avg:c|ab", "c|abd1d2@bob_charlie_cnots"),
    }
    if identical:
        trace.identity_chains["bc_symmetry"] = (
            "b|acd1d2@bob_charlie_cnots",
            "c|abd1d2@bob_charlie_cnots",
        )
    return trace


def run_qudit(d: int, ch: QuditChannel, max_dim: int = 6) -> ProtocolTrace:
    """Run the d-level pair distribution protocol under ``ch`` on c.

    ``d`` is capped at ``max_dim`` (default 6) to bound the d^3-sided
    matrices. For d > 2 only depolarizing and amplitude damping channels
    are supported.
    """
    if d < 2 or d > max_dim:
        raise ValueError(f"dimension {d} outside the allowed range [2, {max_dim}]")
    if ch.dim != d:
        raise ValueError(f"channel dimension {ch.dim} does not match d={d}")
    if d > 2 and ch.kind not in ("depolarizing", "amplitude_damping", "identity"):
        raise ValueError(
            f"unsupported channel kind {ch.kind!r} for d={d}; "
            "use depolarizing or amplitude_damping"
        )
    _require_cpt(ch, "communication channel")

    trace = ProtocolTrace(
        protocol="qudit",
        mode="probabilistic",
        noise={**_noise_summary(ch), "d": d},
        subsystems=TWO_QUBIT_LABELS,
        steps=qudit_states(d, ch),
    )
    states = dict(trace.steps)
    step_names = ("initial", "alice_cnot", "channel", "bob_inverse_cnot")
    for step in step_names:
        _record_partition(trace, states[step], (2,), step)
    _record_partition(trace, states["channel"], (0,), "channel")
    _record_partition(trace, states["channel"], (1,), "channel")
    _record_partition(trace, states["bob_inverse_cnot"], (0,), "bob_inverse_cnot")
    _record_partition(trace, states["bob_inverse_cnot"], (1,), "bob_inverse_cnot")
    trace.exchange_keys = tuple(f"c|ab@{step}" for step in step_names)

    pair = Bipartition.split({0}, 2)
    trace.branches = measure_computational(states["bob_inverse_cnot"], target=2)
    for branch in trace.branches:
        if branch.post_state is None:
            trace.branch_negativities.append({})
        else:
            trace.branch_negativities.append(
                {"a|b": negativity(branch.post_state, pair).value}
            )
    trace.averages["a|b"] = average_negativity(trace.branches, pair)
    trace.average_negativity = trace.averages["a|b"]
    trace.success_probability = trace.branches[0].probability
    if trace.branch_negativities[0]:
        trace.partition_negativities["a|b@success"] = trace.branch_negativities[0]["a|b"]

    trace.identity_chains = {
        "distribution": (
            "avg:a|b",
            "a|bc@channel",
            "a|bc@bob_inverse_cnot",
            "b|ac@bob_inverse_cnot",
        )
    }
    return trace


@dataclass
class ChainReport:
    """Spread of the identity-chain members of a trace."""

    max_deviation: float
    per_chain: dict[str, float]
    values: dict[str, dict[str, float]]
    passed: bool
    warnings: tuple[str, ...]


def verify_identity_chain(trace: ProtocolTrace, atol: float = CHAIN_ATOL) -> ChainReport:
    """Check that each identity chain of the trace collapses to one value."""
    per_chain: dict[str, float] = {}
    values: dict[str, dict[str, float]] = {}
    for chain_name, keys in trace.identity_chains.items():
        members = {key: trace.value_of(key) for key in keys}
        values[chain_name] = members
        spread = max(members.values()) - min(members.values()) if members else 0.0
        per_chain[chain_name] = spread
    max_dev = max(per_chain.values(), default=0.0)
    return ChainReport(
        max_deviation=max_dev,
        per_chain=per_chain,
        values=values,
        passed=max_dev <= atol,
        warnings=tuple(trace.warnings),
    )


@dataclass
class SeparabilityReport:
    """Exchange-vs-rest negativities at every protocol step."""

    max_negativity: float
    entries: dict[str, float]
    passed: bool


def separability_audit(
    trace: ProtocolTrace, atol: float = SEPARABILITY_ATOL
) -> SeparabilityReport:
    """Check the exchange subsystem stays PPT with the rest at every step."""
    entries = {key: trace.partition_negativities[key] for key in trace.exchange_keys}
    worst = max(entries.values(), default=0.0)
    return SeparabilityReport(max_negativity=worst, entries=entries, passed=worst <= atol)


def critical_noise(
    fn: Callable[[float], float],
    lo: float = 0.0,
    hi: float = 1.0,
    zero_atol: float = 1e-12,
    tol: float = 1e-12,
) -> float:
    """Boundary above which a nonincreasing nonnegative curve is (numerically) zero.

    Returns ``hi`` when the curve is still positive at ``hi`` and ``lo``
    when it already vanishes there.
    """
    if fn(hi) > zero_atol:
        return hi
    if fn(lo) <= zero_atol:
        return lo
    low, high = lo, hi
    while high - low > tol:
        mid = 0.5 * (low + high)
        if fn(mid) > zero_atol:
            low = mid
        else:
            high = mid
    return 0.5 * (low + high)
