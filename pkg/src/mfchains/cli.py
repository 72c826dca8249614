"""Command-line interface: ``mfchains <subcommand> ...``.

Exit codes: 0 success, 1 domain or usage error, 2 verification failure.
Errors go to standard error as ``mfchains: error[<CODE>]: <message>``.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from typing import Sequence, TextIO

from ._jsonio import dumps17
from .actions import ActionSpec, parse_action
from .coefficients import CoeffTable, ResourceLimitError, genbin_table
from .markov import (
    Direction,
    Generator,
    TruncationError,
    exact_row,
    generator,
    transition_prob,
    transition_prob_t,
)
from .oracles.identities import SUITES, check_identity
from .partitions import format_rational
from .simulate import (
    Trajectory,
    empirical_marginal,
    read_jsonl,
    sample_paths,
    tv_distance,
    write_jsonl,
)

__all__ = ["main", "run", "render_diagram", "parse_state"]


class CliError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError("E_USAGE", message)


def parse_state(text: str, action: ActionSpec) -> tuple:
    """Comma list ("2,1"); the empty string is the zero state."""
    text = text.strip()
    if not text:
        return action.zero()
    try:
        values = [int(v) for v in text.split(",")]
    except ValueError:
        raise CliError("E_STATE", f"cannot parse state {text!r}") from None
    if action.kind == "Torus" and len(values) < action.n:
        values += [0] * (action.n - len(values))
    return action.normalize(values)


def _state_str(state: tuple) -> str:
    return ",".join(map(str, state))


def _open_out(path: str | None) -> TextIO:
    return open(path, "w", encoding="utf-8") if path else sys.stdout


def _emit(text: str, path: str | None) -> None:
    fh = _open_out(path)
    try:
        fh.write(text)
        if not text.endswith("\n"):
            fh.write("\n")
    finally:
        if fh is not sys.stdout:
            fh.close()


# -- subcommands ----------------------------------------------------------------


def _cmd_coeffs(args) -> int:
    if args.input:
        with open(args.input, encoding="utf-8") as fh:
            table = CoeffTable.from_json(fh.read())
    else:
        _require(args, "action", "max_weight")
        table = genbin_table(parse_action(args.action), args.max_weight, args.cap_states)
    if args.format == "json":
        _emit(table.to_json(), args.output)
    elif args.format == "csv":
        _emit(table.to_csv(), args.output)
    else:
        lines = [f"[{_state_str(l) or '0'}; {_state_str(m) or '0'}] = {format_rational(v)}"
                 for (l, m), v in table.entries.items()]
        _emit("\n".join(lines), args.output)
    return 0


def _cmd_rates(args) -> int:
    if args.input:
        with open(args.input, encoding="utf-8") as fh:
            gen = Generator.from_json(fh.read())
    else:
        _require(args, "action", "direction", "max_weight")
        gen = generator(parse_action(args.action), args.direction, args.max_weight, args.cap_states)
    if args.format == "json":
        _emit(gen.to_json(), args.output)
    elif args.format == "csv":
        _emit(gen.to_csv(), args.output)
    else:
        lines = []
        for i, s in enumerate(gen.states):
            flag = "  (truncated)" if s in gen.boundary else ""
            moves = ", ".join(
                f"-> {_state_str(gen.states[j]) or '0'}: {format_rational(v)}"
                for j, v in sorted(gen.rows[i].items())
            )
            lines.append(f"{_state_str(s) or '0'}: diag {format_rational(gen.diagonal[i])}; {moves}{flag}")
        _emit("\n".join(lines), args.output)
    return 0


def _cmd_semigroup(args) -> int:
    action = parse_action(args.action)
    direction = Direction.parse(args.direction)
    alpha = parse_state(args.source, action)
    if (args.x is None) == (args.t is None):
        raise CliError("E_USAGE", "give exactly one of --x (exact) or --t (numeric)")
    if args.x is not None:
        x = Fraction(args.x)
        if not 0 < x <= 1:
            raise CliError("E_DOMAIN", f"--x must lie in (0, 1], got {args.x}")
    else:
        if not math.isfinite(args.t) or args.t < 0:
            raise CliError("E_DOMAIN", f"--t must be finite and non-negative, got {args.t}")

    def value(beta):
        if args.x is not None:
            return format_rational(transition_prob(action, direction, alpha, beta, x))
        return transition_prob_t(action, direction, alpha, beta, args.t)

    if args.target is not None:
        beta = parse_state(args.target, action)
        out = {"from": list(alpha), "to": list(beta), "value": value(beta)}
        _emit(dumps17(out) if args.format == "json" else str(out["value"]), args.output)
        return 0
    wa = sum(alpha)
    top = args.max_weight if args.max_weight is not None else (wa + 30 if direction is Direction.BIRTH else wa)
    grades = range(wa, top + 1) if direction is Direction.BIRTH else range(0, wa + 1)
    row = {}
    for w in grades:
        for beta in action.states(w):
            v = value(beta)
            if (v != "0/1") and v != 0.0:
                row[_state_str(beta)] = v
    if args.format == "json":
        _emit(dumps17({"from": list(alpha), "direction": direction.value, "row": row}), args.output)
    else:
        _emit("\n".join(f"{k or '0'}\t{v if isinstance(v, str) else format(v, '.17g')}" for k, v in row.items()), args.output)
    return 0


def _cmd_simulate(args) -> int:
    action = parse_action(args.action)
    direction = Direction.parse(args.direction)
    start = parse_state(args.start, action)
    if not math.isfinite(args.t_max) or args.t_max <= 0:
        raise CliError("E_DOMAIN", f"--t-max must be finite and positive, got {args.t_max}")
    paths = sample_paths(action, direction, start, args.t_max, args.seed, args.paths, args.threads)
    if args.output != "-":
        fh = _open_out(args.output)
        try:
            write_jsonl(paths, fh)
        finally:
            if fh is not sys.stdout:
                fh.close()
    t = args.t if args.t is not None else args.t_max
    if args.report_tv or args.summary:
        marginal = empirical_marginal(paths, t)
        summary = {"t": float(t), "marginal": {_state_str(s): f for s, f in marginal.items()}}
        if args.report_tv:
            top = max((sum(s) for s in marginal), default=0)
            if direction is Direction.BIRTH:
                top = max(top, sum(start)) + args.tv_margin
            exact = exact_row(action, direction, start, t, top)
            summary["tv_vs_exact"] = tv_distance(marginal, exact)
        text = dumps17(summary)
        if args.summary:
            _emit(text, args.summary)
        else:
            sys.stderr.write(text + "\n")
    return 0


def _cmd_verify(args) -> int:
    report = check_identity(args.suite, parse_action(args.action), args.max_weight)
    text = report.to_json() if args.format == "json" else report.to_text()
    _emit(text, args.output)
    return 0 if report.passed else 2


def _frame(state: tuple, glyph: str = "#") -> list[str]:
    return [glyph * v for v in state] if state else []


def render_diagram(trajectory: Trajectory, glyph: str = "#") -> list[str]:
    """ASCII Young-diagram frames, one per state visited, separated by a header line."""
    frames = []
    history = [(0.0, trajectory.start)] + list(trajectory.events)
    for t, state in history:
        header = f"t={t:.17g} state=({_state_str(state)})"
        body = _frame(state, glyph) or ["(empty)"]
        frames.append("\n".join([header] + body))
    return frames


def _cmd_diagram(args) -> int:
    with open(args.input, encoding="utf-8") as fh:
        trajectories = read_jsonl(fh)
    if not trajectories:
        raise CliError("E_DOMAIN", f"no trajectories in {args.input}")
    chosen = [tr for tr in trajectories if args.path is None or tr.path == args.path]
    if not chosen:
        raise CliError("E_DOMAIN", f"path {args.path} not found in {args.input}")
    blocks = []
    for tr in chosen:
        blocks.append(f"# path {tr.path} (seed {tr.seed}), horizon {tr.horizon:.17g}")
        blocks.extend(render_diagram(tr, args.glyph))
    _emit("\n\n".join(blocks), args.output)
    return 0


def _require(args, *names) -> None:
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        flags = ", ".join("--" + n.replace("_", "-") for n in missing)
        raise CliError("E_USAGE", f"missing required option(s): {flags}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--threads", type=int, default=1, help="worker threads (simulate)")
    common.add_argument("--cap-states", type=int, default=None,
                        help="state-count cap (default: $MFCHAINS_CAP_STATES or 200000)")
    common.add_argument("--output", "-o", default=None, help="output path (default: stdout)")

    parser = _Parser(prog="mfchains", description="Birth and death chains of multiplicity-free actions.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("coeffs", parents=[common], help="generalized binomial coefficient table")
    p.add_argument("--action")
    p.add_argument("--max-weight", type=int)
    p.add_argument("--format", choices=["json", "csv", "text"], default="json")
    p.add_argument("--input", help="re-read a table written by `coeffs --format json`")
    p.set_defaults(func=_cmd_coeffs)

    p = sub.add_parser("rates", parents=[common], help="export the rate generator")
    p.add_argument("--action")
    p.add_argument("--direction", choices=["birth", "death"])
    p.add_argument("--max-weight", type=int)
    p.add_argument("--format", choices=["json", "csv", "text"], default="json")
    p.add_argument("--input", help="re-read a generator written by `rates --format json`")
    p.set_defaults(func=_cmd_rates)

    p = sub.add_parser("semigroup", parents=[common], help="transition probabilities")
    p.add_argument("--action", required=True)
    p.add_argument("--direction", choices=["birth", "death"], required=True)
    p.add_argument("--from", dest="source", required=True, help='start state, e.g. "2,1"')
    p.add_argument("--to", dest="target", default=None, help="single target (default: full row)")
    p.add_argument("--x", default=None, help='exact mode: x = exp(-t) as "p/q"')
    p.add_argument("--t", type=float, default=None, help="numeric mode: time t >= 0")
    p.add_argument("--max-weight", type=int, default=None, help="truncation for birth rows")
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.set_defaults(func=_cmd_semigroup)

    p = sub.add_parser("simulate", parents=[common], help="sample trajectories (JSON lines)")
    p.add_argument("--action", required=True)
    p.add_argument("--direction", choices=["birth", "death"], required=True)
    p.add_argument("--start", default="")
    p.add_argument("--t-max", type=float, required=True)
    p.add_argument("--paths", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--t", type=float, default=None, help="time of the summary marginal (default t-max)")
    p.add_argument("--report-tv", action="store_true", help="compare the marginal with the exact row")
    p.add_argument("--tv-margin", type=int, default=40, help="extra grades of the exact birth row")
    p.add_argument("--summary", default=None, help="summary path (default: stderr)")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("verify", parents=[common], help="run identity suites")
    p.add_argument("--suite", required=True, choices=sorted(SUITES) + ["all"])
    p.add_argument("--action", required=True)
    p.add_argument("--max-weight", type=int, required=True)
    p.add_argument("--format", choices=["json", "text"], default="text")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("diagram", parents=[common], help="ASCII Young-diagram frames of a trajectory file")
    p.add_argument("--input", required=True)
    p.add_argument("--path", type=int, default=None, help="only this path index")
    p.add_argument("--glyph", default="#")
    p.set_defaults(func=_cmd_diagram)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if not getattr(args, "command", None):
            raise CliError("E_USAGE", "a subcommand is required")
        if args.threads < 1:
            raise CliError("E_USAGE", "--threads must be at least 1")
        return args.func(args)
    except CliError as exc:
        code, msg = exc.code, str(exc)
    except ResourceLimitError as exc:
        code, msg = "E_CAP", str(exc)
    except TruncationError as exc:
        code, msg = "E_TRUNCATION", str(exc)
    except (ValueError, KeyError, ZeroDivisionError, json.JSONDecodeError) as exc:
        code, msg = "E_DOMAIN", str(exc).strip("'\"")
    except OSError as exc:
        code, msg = "E_IO", str(exc)
    sys.stderr.write(f"mfchains: error[{code}]: {msg}\n")
    return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
