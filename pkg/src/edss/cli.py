"""Command-line front end: ``edss sweep``, ``edss check``, ``edss describe``.

Exit codes: 0 success, 1 check failure, 2 invalid input, 3 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .checks import run_checks
from .sweep import SweepError, SweepSpec, run_sweep

CONFIG_KEYS = {
    "protocol",
    "mode",
    "channel",
    "d",
    "param",
    "from",
    "to",
    "points",
    "csv",
    "svg",
    "check",
    "lambda1",
    "lambda2",
    "lambda3",
    "t3",
    "max_dim",
}

MODE_ALIASES = {
    "prob": "probabilistic",
    "probabilistic": "probabilistic",
    "det": "deterministic",
    "deterministic": "deterministic",
}

DESCRIPTIONS = {
    "two_qubit": """\
two_qubit: distribute a two-qubit entangled pair between distant nodes a and b
using an exchange qubit c that stays separable from them throughout.

  I    initial           separable three-qubit state of (a, b, c) prepared at node a
  II   alice_cnot        CNOT, control a, target c
  III  channel           c travels to node b through the noisy channel
  IV   bob_cnot          CNOT, control b, target c
  V    finish            probabilistic: measure c in the computational basis
                         (2 outcomes; outcome 0 carries the entangled pair)
                         deterministic: apply the local (b, c) channel, trace out c

partitions reported: c|ab at every step; a|bc after III and IV; b|ac after IV;
a|b on the success branch.
identity chain: avg a|b = a|bc@channel = a|bc@bob_cnot = b|ac@bob_cnot
closed forms: two_qubit_depolarizing_*, two_qubit_amplitude_damping_*
""",
    "ghz": """\
ghz: distribute a three-qubit GHZ state between nodes a, b, c using two
exchange qubits d1, d2 that stay separable from the targets throughout.

  I    initial           separable five-qubit state of (a, b, c, d1, d2)
  II   alice_cnots       CNOTs, control a, targets d1 and d2
  III  channels          d1 goes to node b, d2 to node c, each through its channel
  IV   bob_charlie_cnots CNOTs, controls b and c, targets d1 and d2
  V    finish            measure d1 and d2; 4 outcomes (l, l') with (0, 0) the
                         success branch carrying the three-party state

partitions reported: d1d2|abc at every step; a|bcd1d2, b|acd1d2, c|abd1d2 after
III and IV; a|bc, b|ac, c|ab and the qubit pairs on the success branch.
identity chains: avg a|bc = a|bcd1d2@final = a|bcd1d2@channels;
avg b|ac = b|acd1d2@final; avg c|ab = c|abd1d2@final
closed forms: ghz_depolarizing_*, ghz_amplitude_damping_*
""",
    "qudit": """\
qudit: distribute a d-level entangled pair between nodes a and b using an
exchange qudit c that stays separable from them throughout.

  I    initial           separable three-qudit state of (a, b, c)
  II   alice_cnot        generalized CNOT, control a, target c (addition mod d)
  III  channel           c travels to node b through the noisy channel
  IV   bob_inverse_cnot  inverse generalized CNOT, control b, target c
  V    finish            measure c in the computational basis; d outcomes with
                         outcome 0 the success branch

partitions reported: c|ab at every step; a|bc and b|ac after III and IV; a|b on
the success branch.
identity chain: avg a|b = a|bc@channel = a|bc@bob_inverse_cnot = b|ac@bob_inverse_cnot
closed forms: qudit_depolarizing_*, qudit_amplitude_damping_*
""",
}


def load_config(path: str | Path) -> dict[str, str]:
    """Parse a flat key-value config file: ``key = value`` lines, # comments."""
    values: dict[str, str] = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise SweepError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in CONFIG_KEYS:
            raise SweepError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = value
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="edss",
        description="Simulate entanglement distribution by separable states "
        "over noisy channels.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="run a protocol over a noise-parameter grid")
    sweep.add_argument("--config", help="flat key-value config file; flags override it")
    sweep.add_argument("--protocol", choices=("two_qubit", "ghz", "qudit"))
    sweep.add_argument("--mode", choices=tuple(MODE_ALIASES))
    sweep.add_argument(
        "--channel", choices=("depolarizing", "amplitude_damping", "canonical")
    )
    sweep.add_argument("--d", type=int, help="qudit dimension (qudit protocol only)")
    sweep.add_argument(
        "--param",
        choices=("p", "gamma", "lambda1", "lambda2", "lambda3", "t3"),
        help="swept channel parameter",
    )
    sweep.add_argument("--from", dest="start", type=float, help="grid start")
    sweep.add_argument("--to", dest="stop", type=float, help="grid stop")
    sweep.add_argument("--points", type=int, help="number of grid points (>= 2)")
    sweep.add_argument("--csv", help="output CSV path")
    sweep.add_argument("--svg", help="optional output SVG chart path")
    sweep.add_argument(
        "--check",
        help="comma-separated subset of identity,separability,closed_form",
    )
    for name in ("lambda1", "lambda2", "lambda3", "t3"):
        sweep.add_argument(f"--{name}", type=float, help="fixed canonical parameter")
    sweep.add_argument("--max-dim", dest="max_dim", type=int, help="qudit dimension cap")

    check = sub.add_parser("check", help="run verification suites")
    check.add_argument(
        "suite", choices=("all", "identity", "separability", "closed_form")
    )

    describe = sub.add_parser("describe", help="print a protocol summary")
    describe.add_argument("protocol")
    return parser


def _merged_sweep_spec(args: argparse.Namespace) -> SweepSpec:
    merged: dict[str, str | float | int | None] = {}
    if args.config:
        merged.update(load_config(args.config))
    overrides = {
        "protocol": args.protocol,
        "mode": args.mode,
        "channel": args.channel,
        "d": args.d,
        "param": args.param,
        "from": args.start,
        "to": args.stop,
        "points": args.points,
        "csv": args.csv,
        "svg": args.svg,
        "check": args.check,
        "lambda1": args.lambda1,
        "lambda2": args.lambda2,
        "lambda3": args.lambda3,
        "t3": args.t3,
        "max_dim": args.max_dim,
    }
    merged.update({k: v for k, v in overrides.items() if v is not None})

    missing = [key for key in ("protocol", "channel", "param", "csv") if key not in merged]
    if missing:
        raise SweepError(f"missing required options: {', '.join(missing)}")

    mode = MODE_ALIASES.get(str(merged.get("mode", "probabilistic")))
    if mode is None:
        raise SweepError(f"unknown mode {merged['mode']!r}")

    channel_args = {
        name: float(merged[name]) for name in ("lambda1", "lambda2", "lambda3", "t3")
        if name in merged
    }
    checks: frozenset[str] = frozenset()
    if merged.get("check"):
        checks = frozenset(
            token.strip() for token in str(merged["check"]).split(",") if token.strip()
        )

    try:
        return SweepSpec(
            protocol=str(merged["protocol"]),
            mode=mode,
            channel=str(merged["channel"]),
            d=int(merged.get("d", 2)),
            param=str(merged["param"]),
            start=float(merged.get("from", 0.0)),
            stop=float(merged.get("to", 1.0)),
            points=int(merged.get("points", 21)),
            csv_path=str(merged["csv"]),
            svg_path=str(merged["svg"]) if merged.get("svg") else None,
            checks=checks,
            channel_args=channel_args,
            max_dim=int(merged.get("max_dim", 6)),
        )
    except (TypeError, ValueError) as exc:
        raise SweepError(str(exc)) from exc


def _run_sweep_command(args: argparse.Namespace) -> int:
    spec = _merged_sweep_spec(args)
    result = run_sweep(spec)
    print(f"wrote {result.csv_path} ({len(result.rows)} rows)")
    if result.svg_path is not None:
        print(f"wrote {result.svg_path}")
    for failure in result.check_failures:
        print(f"check failure: {failure}", file=sys.stderr)
    if spec.checks:
        status = "PASS" if result.checks_passed else "FAIL"
        print(f"checks ({','.join(sorted(spec.checks))}): {status}")
    return 0 if result.checks_passed else 1


def _run_check_command(args: argparse.Namespace) -> int:
    results = run_checks(args.suite)
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        print(
            f"{res.name} max_deviation={res.max_deviation:.3e} "
            f"threshold={res.threshold:.0e} {status}"
        )
    failed = sum(1 for res in results if not res.passed)
    print(f"overall: {'PASS' if failed == 0 else 'FAIL'} "
          f"({len(results) - failed}/{len(results)} checks passed)")
    return 0 if failed == 0 else 1


def _run_describe_command(args: argparse.Namespace) -> int:
    text = DESCRIPTIONS.get(args.protocol)
    if text is None:
        print(
            f"unknown protocol {args.protocol!r}; choose from "
            f"{', '.join(DESCRIPTIONS)}",
            file=sys.stderr,
        )
        return 2
    print(text, end="")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on bad usage, which matches the CLI contract
        return int(exc.code or 0)
    try:
        if args.command == "sweep":
            return _run_sweep_command(args)
        if args.command == "check":
            return _run_check_command(args)
        return _run_describe_command(args)
    except SweepError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
