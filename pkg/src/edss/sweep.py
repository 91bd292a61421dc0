"""Parameter sweeps: grids of protocol runs emitted as CSV and SVG curves.

The CSV schema is fixed per (protocol, mode, channel kind): first column is
the swept parameter, the rest are simulated quantities, derived quantities,
and closed-form reference values where a formula exists. Floats are
formatted with 12 significant digits, so identical specs give byte-identical
files.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .channels import amplitude_damping, canonical_channel, depolarizing, is_cpt
from .protocols import (
    ProtocolTrace,
    critical_noise,
    run_ghz,
    run_qudit,
    run_two_qubit,
    separability_audit,
    verify_identity_chain,
)
from .reference import closed_form
from .checks import qudit_average_only
from .svgchart import render_line_chart

PROTOCOLS = ("two_qubit", "ghz", "qudit")
MODES = ("probabilistic", "deterministic")
CHANNEL_KINDS = ("depolarizing", "amplitude_damping", "canonical")
CHECK_NAMES = ("identity", "separability", "closed_form")
CANONICAL_PARAM_NAMES = ("lambda1", "lambda2", "lambda3", "t3")

CHECK_ATOL = 1e-9


class SweepError(ValueError):
    """Invalid sweep specification or non-CPT grid point."""


@dataclass
class SweepSpec:
    """A parameter grid over one protocol plus output and check options."""

    protocol: str
    channel: str
    param: str
    csv_path: Path | str
    mode: str = "probabilistic"
    d: int = 2
    start: float = 0.0
    stop: float = 1.0
    points: int = 21
    svg_path: Path | str | None = None
    checks: frozenset[str] = frozenset()
    channel_args: dict[str, float] = field(default_factory=dict)
    max_dim: int = 6

    def validate(self) -> "SweepSpec":
        if self.protocol not in PROTOCOLS:
            raise SweepError(f"unknown protocol {self.protocol!r}")
        if self.mode not in MODES:
            raise SweepError(f"unknown mode {self.mode!r}")
        if self.mode == "deterministic" and self.protocol != "two_qubit":
            raise SweepError("deterministic mode exists only for the two_qubit protocol")
        if self.channel not in CHANNEL_KINDS:
            raise SweepError(f"unknown channel kind {self.channel!r}")
        if self.protocol == "qudit":
            if not 2 <= self.d <= self.max_dim:
                raise SweepError(
                    f"d={self.d} outside the allowed range [2, {self.max_dim}]"
                )
            if self.channel == "canonical" and self.d != 2:
                raise SweepError("canonical channels are qubit channels; d must be 2")
        elif self.d != 2:
            raise SweepError(f"protocol {self.protocol} works with qubits; drop d={self.d}")
        expected_param = {
            "depolarizing": ("p",),
            "amplitude_damping": ("gamma",),
            "canonical": CANONICAL_PARAM_NAMES,
        }[self.channel]
        if self.param not in expected_param:
            raise SweepError(
                f"param {self.param!r} does not fit channel {self.channel!r}; "
                f"expected one of {expected_param}"
            )
        unknown_args = set(self.channel_args) - set(CANONICAL_PARAM_NAMES)
        if unknown_args:
            raise SweepError(f"unknown channel arguments {sorted(unknown_args)}")
        if not 0.0 <= self.start <= self.stop <= 1.0:
            raise SweepError(
                f"need 0 <= start <= stop <= 1, got [{self.start}, {self.stop}]"
            )
        if self.points < 2:
            raise SweepError(f"points must be >= 2, got {self.points}")
        bad_checks = set(self.checks) - set(CHECK_NAMES)
        if bad_checks:
            raise SweepError(f"unknown checks {sorted(bad_checks)}")
        if "closed_form" in self.checks and self.channel == "canonical":
            raise SweepError(
                "closed_form check needs a depolarizing or amplitude_damping sweep"
            )
        if not self.csv_path:
            raise SweepError("csv output path is required")
        return self

    def grid(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.points)

    def channel_at(self, x: float):
        d = self.d if self.protocol == "qudit" else 2
        if self.channel == "depolarizing":
            return depolarizing(d, x)
        if self.channel == "amplitude_damping":
            return amplitude_damping(d, x)
        args = {"lambda1": 1.0, "lambda2": 1.0, "lambda3": 1.0, "t3": 0.0}
        args.update(self.channel_args)
        args[self.param] = x
        return canonical_channel(**args)


@dataclass
class SweepResult:
    spec: SweepSpec
    columns: list[str]
    rows: list[dict[str, float]]
    check_failures: list[str]
    csv_path: Path
    svg_path: Path | None

    @property
    def checks_passed(self) -> bool:
        return not self.check_failures


def format_float(x: float) -> str:
    """12 significant digits via %g; negative zero collapses to 0."""
    if x == 0.0:
        return "0"
    return f"{float(x):.12g}"


def _ref_columns(spec: SweepSpec) -> dict[str, str]:
    """Map CSV reference columns to formula ids for this sweep."""
    if spec.channel == "canonical":
        return {}
    kind = spec.channel
    if spec.protocol == "two_qubit":
        if spec.mode == "deterministic":
            return {
                "ref_deterministic_negativity": f"two_qubit_{kind}_deterministic_negativity"
            }
        return {
            "ref_success_probability": f"two_qubit_{kind}_success_probability",
            "ref_success_negativity": f"two_qubit_{kind}_success_negativity",
            "ref_average_negativity": f"two_qubit_{kind}_average_negativity",
        }
    if spec.protocol == "ghz":
        return {
            "ref_success_probability": f"ghz_{kind}_success_probability",
            "ref_negativity_a_bc": f"ghz_{kind}_negativity_a_bc",
            "ref_negativity_b_ac": f"ghz_{kind}_negativity_b_ac",
            "ref_average_a_bc": f"ghz_{kind}_average_a_bc",
            "ref_average_b_ac": f"ghz_{kind}_average_b_ac",
        }
    refs = {
        "ref_success_probability": f"qudit_{kind}_success_probability",
        "ref_success_negativity": f"qudit_{kind}_success_negativity",
        "ref_average_negativity": f"qudit_{kind}_average_negativity",
    }
    if kind == "depolarizing":
        refs["ref_critical_noise"] = "qudit_depolarizing_critical_noise"
    return refs


def sweep_columns(spec: SweepSpec) -> list[str]:
    """Fixed column order for this (protocol, mode, channel) combination."""
    if spec.protocol == "two_qubit":
        if spec.mode == "deterministic":
            cols = [
                spec.param,
                "deterministic_negativity",
                "deterministic_concurrence",
                "negativity_a_bc_channel",
                "negativity_a_bc_final",
                "negativity_b_ac_final",
                "exchange_negativity_max",
                "chain_max_deviation",
            ]
        else:
            cols = [
                spec.param,
                "success_probability",
                "success_negativity",
                "average_negativity",
                "negativity_a_bc_channel",
                "negativity_a_bc_final",
                "negativity_b_ac_final",
                "exchange_negativity_max",
                "chain_max_deviation",
            ]
    elif spec.protocol == "ghz":
        cols = [
            spec.param,
            "success_probability",
            "negativity_a_bc",
            "negativity_b_ac",
            "negativity_c_ab",
            "pairwise_ab",
            "pairwise_bc",
            "pairwise_ac",
            "average_a_bc",
            "average_b_ac",
            "average_c_ab",
            "negativity_a_bcd1d2_channel",
            "negativity_a_bcd1d2_final",
            "negativity_b_acd1d2_final",
            "negativity_c_abd1d2_final",
            "exchange_negativity_max",
            "chain_max_deviation",
        ]
    else:
        cols = [
            spec.param,
            "success_probability",
            "success_negativity",
            "average_negativity",
            "negativity_a_bc_channel",
            "negativity_a_bc_final",
            "negativity_b_ac_final",
            "exchange_negativity_max",
            "chain_max_deviation",
        ]
        if spec.channel == "depolarizing":
            cols.append("critical_noise")
    cols.extend(_ref_columns(spec))
    return cols


def _two_qubit_row(spec: SweepSpec, x: float) -> dict[str, float]:
    trace = run_two_qubit(spec.channel_at(x), mode=spec.mode)
    parts = trace.partition_negativities
    row = {
        spec.param: x,
        "negativity_a_bc_channel": parts["a|bc@channel"],
        "negativity_a_bc_final": parts["a|bc@bob_cnot"],
        "negativity_b_ac_final": parts["b|ac@bob_cnot"],
        "exchange_negativity_max": separability_audit(trace).max_negativity,
        "chain_max_deviation": verify_identity_chain(trace).max_deviation,
    }
    if spec.mode == "deterministic":
        out = trace.deterministic_output
        row["deterministic_negativity"] = out.negativity
        row["deterministic_concurrence"] = out.concurrence
    else:
        row["success_probability"] = trace.success_probability
        row["success_negativity"] = parts.get("a|b@success", 0.0)
        row["average_negativity"] = trace.average_negativity
    return row


def _ghz_row(spec: SweepSpec, x: float) -> dict[str, float]:
    trace = run_ghz(spec.channel_at(x))
    parts = trace.partition_negativities
    return {
        spec.param: x,
        "success_probability": trace.success_probability,
        "negativity_a_bc": parts.get("a|bc@success", 0.0),
        "negativity_b_ac": parts.get("b|ac@success", 0.0),
        "negativity_c_ab": parts.get("c|ab@success", 0.0),
        "pairwise_ab": parts.get("ab_pair@success", 0.0),
        "pairwise_bc": parts.get("bc_pair@success", 0.0),
        "pairwise_ac": parts.get("ac_pair@success", 0.0),
        "average_a_bc": trace.averages["a|bc"],
        "average_b_ac": trace.averages["b|ac"],
        "average_c_ab": trace.averages["c|ab"],
        "negativity_a_bcd1d2_channel": parts["a|bcd1d2@channels"],
        "negativity_a_bcd1d2_final": parts["a|bcd1d2@bob_charlie_cnots"],
        "negativity_b_acd1d2_final": parts["b|acd1d2@bob_charlie_cnots"],
        "negativity_c_abd1d2_final": parts["c|abd1d2@bob_charlie_cnots"],
        "exchange_negativity_max": separability_audit(trace).max_negativity,
        "chain_max_deviation": verify_identity_chain(trace).max_deviation,
    }


def _qudit_row(spec: SweepSpec, x: float, crit: float | None) -> dict[str, float]:
    trace = run_qudit(spec.d, spec.channel_at(x), max_dim=spec.max_dim)
    parts = trace.partition_negativities
    row = {
        spec.param: x,
        "success_probability": trace.success_probability,
        "success_negativity": parts.get("a|b@success", 0.0),
        "average_negativity": trace.average_negativity,
        "negativity_a_bc_channel": parts["a|bc@channel"],
        "negativity_a_bc_final": parts["a|bc@bob_inverse_cnot"],
        "negativity_b_ac_final": parts["b|ac@bob_inverse_cnot"],
        "exchange_negativity_max": separability_audit(trace).max_negativity,
        "chain_max_deviation": verify_identity_chain(trace).max_deviation,
    }
    if crit is not None:
        row["critical_noise"] = crit
    return row


def _apply_refs(spec: SweepSpec, row: dict[str, float]) -> None:
    refs = _ref_columns(spec)
    for column, fid in refs.items():
        params: dict[str, float] = {}
        if fid.startswith("qudit_"):
            params["d"] = spec.d
        if "critical" not in fid:
            params[spec.param] = row[spec.param]
        row[column] = closed_form(fid, **params)


def _row_checks(spec: SweepSpec, row: dict[str, float]) -> list[str]:
    failures = []
    x = row[spec.param]
    if "identity" in spec.checks and row["chain_max_deviation"] > CHECK_ATOL:
        failures.append(
            f"{spec.param}={format_float(x)}: identity chain deviation "
            f"{row['chain_max_deviation']:.3e}"
        )
    if "separability" in spec.checks and row["exchange_negativity_max"] > CHECK_ATOL:
        failures.append(
            f"{spec.param}={format_float(x)}: exchange negativity "
            f"{row['exchange_negativity_max']:.3e}"
        )
    if "closed_form" in spec.checks:
        for column in _ref_columns(spec):
            sim_column = column[len("ref_") :]
            if sim_column not in row:
                continue
            dev = abs(row[sim_column] - row[column])
            if dev > CHECK_ATOL:
                failures.append(
                    f"{spec.param}={format_float(x)}: {sim_column} deviates from "
                    f"closed form by {dev:.3e}"
                )
    return failures


def run_sweep(spec: SweepSpec) -> SweepResult:
    """Evaluate the grid, write CSV (and SVG if requested), run row checks."""
    spec = replace(spec, checks=frozenset(spec.checks)).validate()
    grid = spec.grid()
    for x in grid:
        if not is_cpt(spec.channel_at(float(x))):
            raise SweepError(
                f"channel is not CPT at grid point {spec.param}={format_float(float(x))}"
            )

    crit = None
    if spec.protocol == "qudit" and spec.channel == "depolarizing":
        crit = critical_noise(lambda x: qudit_average_only(spec.d, "depolarizing", x))

    rows: list[dict[str, float]] = []
    for x in grid:
        x = float(x)
        if spec.protocol == "two_qubit":
            row = _two_qubit_row(spec, x)
        elif spec.protocol == "ghz":
            row = _ghz_row(spec, x)
        else:
            row = _qudit_row(spec, x, crit)
        _apply_refs(spec, row)
        rows.append(row)

    columns = sweep_columns(spec)
    check_failures: list[str] = []
    for row in rows:
        check_failures.extend(_row_checks(spec, row))

    csv_path = Path(spec.csv_path)
    with open(csv_path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_float(row[c]) for c in columns])

    svg_path = None
    if spec.svg_path is not None:
        svg_path = Path(spec.svg_path)
        xs = [float(format_float(row[spec.param])) for row in rows]
        series = [
            (c, [float(format_float(row[c])) for row in rows])
            for c in columns
            if c != spec.param
        ]
        title = f"{spec.protocol} / {spec.channel} ({spec.mode})"
        svg_path.write_text(
            render_line_chart(xs, series, title, x_label=spec.param), encoding="utf-8"
        )
    return SweepResult(spec, columns, rows, check_failures, csv_path, svg_path)
