"""Closed-form reference curves for every protocol and noise family.

Each formula is the analytic value of a quantity the simulator also
produces numerically, so these serve as independent cross-checks.
Piecewise formulas return 0 in their zero region.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable


@dataclass(frozen=True)
class Formula:
    formula_id: str
    params: tuple[str, ...]
    description: str
    fn: Callable[..., float]


def _check_unit(name: str, value: float) -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {value}")
    return value


def _check_dim(d: int) -> int:
    d = int(d)
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    return d


def _tq_depol_success_prob(p: float) -> float:
    return (2.0 + p) / 6.0


def _tq_depol_success_neg(p: float) -> float:
    return (2.0 - 3.0 * p) / (2.0 + p) if p <= 2.0 / 3.0 else 0.0


def _tq_depol_average(p: float) -> float:
    return (2.0 - 3.0 * p) / 6.0 if p <= 2.0 / 3.0 else 0.0


TWO_QUBIT_DEPOL_DET_CRITICAL = (3.0 - math.sqrt(5.0)) / 2.0


def _tq_depol_deterministic(p: float) -> float:
    if p >= TWO_QUBIT_DEPOL_DET_CRITICAL:
        return 0.0
    return (math.sqrt(17.0 * p * p - 40.0 * p + 32.0) - p - 4.0) / 12.0


def _tq_ad_success_prob(g: float) -> float:
    return (2.0 + g) / 6.0


def _tq_ad_success_neg(g: float) -> float:
    return (2.0 - 2.0 * g) / (2.0 + g)


def _tq_ad_average(g: float) -> float:
    return (1.0 - g) / 3.0


def _tq_ad_deterministic(g: float) -> float:
    return (math.sqrt(8.0 + g * g) - 2.0 - g) / 6.0


def _ghz_depol_success_prob(p: float) -> float:
    return (4.0 + 4.0 * p - p * p) / 28.0


GHZ_DEPOL_B_CRITICAL = (math.sqrt(5.0) - 1.0) / math.sqrt(5.0)


def _ghz_depol_neg_a_bc(p: float) -> float:
    if p > 2.0 / 3.0:
        return 0.0
    return (4.0 - 8.0 * p + 3.0 * p * p) / (4.0 + 4.0 * p - p * p)


def _ghz_depol_neg_b_ac(p: float) -> float:
    if p > GHZ_DEPOL_B_CRITICAL:
        return 0.0
    return (4.0 - 10.0 * p + 5.0 * p * p) / (4.0 + 4.0 * p - p * p)


def _ghz_depol_avg_a_bc(p: float) -> float:
    return (4.0 - 8.0 * p + 3.0 * p * p) / 28.0 if p <= 2.0 / 3.0 else 0.0


def _ghz_depol_avg_b_ac(p: float) -> float:
    if p > GHZ_DEPOL_B_CRITICAL:
        return 0.0
    return (4.0 - 10.0 * p + 5.0 * p * p) / 28.0


def _ghz_ad_success_prob(g: float) -> float:
    return (2.0 + 2.0 * g + g * g) / 14.0


def _ghz_ad_neg_a_bc(g: float) -> float:
    return (math.sqrt(g**4 + 4.0 * (1.0 - g) ** 2) - g * g) / (g * g + 2.0 * g + 2.0)


def _ghz_ad_neg_b_ac(g: float) -> float:
    return (1.0 - g) * (math.sqrt(g * g + 4.0) - g) / (g * g + 2.0 * g + 2.0)


def _ghz_ad_avg_a_bc(g: float) -> float:
    return (math.sqrt(g**4 + 4.0 * (1.0 - g) ** 2) - g * g) / 14.0


def _ghz_ad_avg_b_ac(g: float) -> float:
    return (1.0 - g) * (math.sqrt(g * g + 4.0) - g) / 14.0


def _qudit_depol_success_prob(d: int, p: float) -> float:
    return (d + p * (d - 1.0)) / (d * (2.0 * d - 1.0))


def _qudit_depol_critical(d: int) -> float:
    return d / (d + 1.0)


def _qudit_depol_success_neg(d: int, p: float) -> float:
    if p > d / (d + 1.0):
        return 0.0
    return (d - (d + 1.0) * p) / (d + (d - 1.0) * p)


def _qudit_depol_average(d: int, p: float) -> float:
    if p > d / (d + 1.0):
        return 0.0
    return (d - (d + 1.0) * p) / (d * (2.0 * d - 1.0))


def _qudit_ad_success_prob(d: int, g: float) -> float:
    return (d + (d - 1.0) * g) / (d * (2.0 * d - 1.0))


def _qudit_ad_success_neg(d: int, g: float) -> float:
    return d * (1.0 - g) / (d + (d - 1.0) * g)


def _qudit_ad_average(d: int, g: float) -> float:
    return (1.0 - g) / (2.0 * d - 1.0)


def _registry() -> dict[str, Formula]:
    entries = [
        Formula(
            "two_qubit_depolarizing_success_probability",
            ("p",),
            "probability of the entangling measurement outcome",
            _tq_depol_success_prob,
        ),
        Formula(
            "two_qubit_depolarizing_success_negativity",
            ("p",),
            "negativity of the post-measurement pair on success",
            _tq_depol_success_neg,
        ),
        Formula(
            "two_qubit_depolarizing_average_negativity",
            ("p",),
            "branch-averaged negativity distributed between a and b",
            _tq_depol_average,
        ),
        Formula(
            "two_qubit_depolarizing_deterministic_negativity",
            ("p",),
            "negativity of the deterministic-variant output pair",
            _tq_depol_deterministic,
        ),
        Formula(
            "two_qubit_amplitude_damping_success_probability",
            ("gamma",),
            "probability of the entangling measurement outcome",
            _tq_ad_success_prob,
        ),
        Formula(
            "two_qubit_amplitude_damping_success_negativity",
            ("gamma",),
            "negativity of the post-measurement pair on success",
            _tq_ad_success_neg,
        ),
        Formula(
            "two_qubit_amplitude_damping_average_negativity",
            ("gamma",),
            "branch-averaged negativity distributed between a and b",
            _tq_ad_average,
        ),
        Formula(
            "two_qubit_amplitude_damping_deterministic_negativity",
            ("gamma",),
            "negativity of the deterministic-variant output pair",
            _tq_ad_deterministic,
        ),
        Formula(
            "ghz_depolarizing_success_probability",
            ("p",),
            "probability of the (0, 0) ancilla outcome",
            _ghz_depol_success_prob,
        ),
        Formula(
            "ghz_depolarizing_negativity_a_bc",
            ("p",),
            "a|bc negativity of the success branch",
            _ghz_depol_neg_a_bc,
        ),
        Formula(
            "ghz_depolarizing_negativity_b_ac",
            ("p",),
            "b|ac (= c|ab) negativity of the success branch",
            _ghz_depol_neg_b_ac,
        ),
        Formula(
            "ghz_depolarizing_average_a_bc",
            ("p",),
            "branch-averaged a|bc negativity",
            _ghz_depol_avg_a_bc,
        ),
        Formula(
            "ghz_depolarizing_average_b_ac",
            ("p",),
            "branch-averaged b|ac (= c|ab) negativity",
            _ghz_depol_avg_b_ac,
        ),
        Formula(
            "ghz_amplitude_damping_success_probability",
            ("gamma",),
            "probability of the (0, 0) ancilla outcome",
            _ghz_ad_success_prob,
        ),
        Formula(
            "ghz_amplitude_damping_negativity_a_bc",
            ("gamma",),
            "a|bc negativity of the success branch",
            _ghz_ad_neg_a_bc,
        ),
        Formula(
            "ghz_amplitude_damping_negativity_b_ac",
            ("gamma",),
            "b|ac (= c|ab) negativity of the success branch",
            _ghz_ad_neg_b_ac,
        ),
        Formula(
            "ghz_amplitude_damping_average_a_bc",
            ("gamma",),
            "branch-averaged a|bc negativity",
            _ghz_ad_avg_a_bc,
        ),
        Formula(
            "ghz_amplitude_damping_average_b_ac",
            ("gamma",),
            "branch-averaged b|ac (= c|ab) negativity",
            _ghz_ad_avg_b_ac,
        ),
        Formula(
            "qudit_depolarizing_success_probability",
            ("d", "p"),
            "probability of the entangling measurement outcome",
            _qudit_depol_success_prob,
        ),
        Formula(
            "qudit_depolarizing_success_negativity",
            ("d", "p"),
            "negativity of the post-measurement qudit pair on success",
            _qudit_depol_success_neg,
        ),
        Formula(
            "qudit_depolarizing_average_negativity",
            ("d", "p"),
            "branch-averaged negativity distributed between a and b",
            _qudit_depol_average,
        ),
        Formula(
            "qudit_depolarizing_critical_noise",
            ("d",),
            "noise level beyond which the average negativity vanishes",
            _qudit_depol_critical,
        ),
        Formula(
            "qudit_amplitude_damping_success_probability",
            ("d", "gamma"),
            "probability of the entangling measurement outcome",
            _qudit_ad_success_prob,
        ),
        Formula(
            "qudit_amplitude_damping_success_negativity",
            ("d", "gamma"),
            "negativity of the post-measurement qudit pair on success",
            _qudit_ad_success_neg,
        ),
        Formula(
            "qudit_amplitude_damping_average_negativity",
            ("d", "gamma"),
            "branch-averaged negativity distributed between a and b",
            _qudit_ad_average,
        ),
    ]
    return {f.formula_id: f for f in entries}


FORMULAS: dict[str, Formula] = _registry()


def closed_form(formula_id: str, **params: float) -> float:
    """Evaluate a registered closed-form curve at the given parameters."""
    try:
        formula = FORMULAS[formula_id]
    except KeyError:
        raise ValueError(f"unknown formula id {formula_id!r}") from None
    missing = [name for name in formula.params if name not in params]
    if missing:
        raise ValueError(f"{formula_id} requires parameters {missing}")
    extra = [name for name in params if name not in formula.params]
    if extra:
        raise ValueError(f"{formula_id} does not take parameters {extra}")
    args = []
    for name in formula.params:
        if name == "d":
            args.append(_check_dim(params[name]))
        else:
            args.append(_check_unit(name, params[name]))
    return float(formula.fn(*args))
