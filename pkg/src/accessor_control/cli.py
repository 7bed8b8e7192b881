"""Command-line entry point.

Exit codes: 0 controllable (certified, or conditions pass with
``--conditions-only``), 1 input error, 2 sufficient conditions fail,
3 conditions pass but the closure stops short of su(n).
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import sys
from pathlib import Path

from .config import CONFIG_SCHEMA, DEMOS, RunConfig, demo_document, load_document, parse_document
from .controllability import Verdict, decide_controllability
from .errors import AccessorControlError, SpecValidationError
from .report import FORMATS, emit_report

log = logging.getLogger("accessor_control")

EXIT_OK, EXIT_INPUT, EXIT_CONDITIONS, EXIT_INCOMPLETE = 0, 1, 2, 3
_EXIT = {
    Verdict.CONTROLLABLE_CERTIFIED: EXIT_OK,
    Verdict.CONDITIONS_PASS: EXIT_OK,
    Verdict.CONDITIONS_FAIL: EXIT_CONDITIONS,
    Verdict.CLOSURE_INCOMPLETE: EXIT_INCOMPLETE,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _add_run_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, help="override interaction.random.seed")
    p.add_argument("--tol", type=float, help="closure independence tolerance")
    p.add_argument("--no-early-stop", action="store_true", help="exhaust the pair queue even at su(n)")
    p.add_argument("--conditions-only", action="store_true", help="skip the Lie closure")
    p.add_argument("--workers", type=int, help="threads for commutator batches")
    p.add_argument("--format", choices=FORMATS, help="report format (default: config or human)")
    p.add_argument("--out", help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="accessor-control", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    check = sub.add_parser("check", help="decide controllability for a config document")
    check.add_argument("--config", required=True, help="path to a JSON config")
    _add_run_flags(check)

    demo = sub.add_parser("demo", help="run a built-in example")
    demo.add_argument("name", help=f"one of: {', '.join(DEMOS)}")
    _add_run_flags(demo)

    sub.add_parser("schema", help="print the config JSON schema")
    return parser


def _apply_flags(cfg: RunConfig, args) -> RunConfig:
    cl = cfg.closure
    changes = {}
    if args.tol is not None:
        changes["independence_tol"] = args.tol
    if args.no_early_stop:
        changes["early_stop"] = False
    if args.workers is not None:
        changes["workers"] = args.workers
    try:
        cl = dataclasses.replace(cl, **changes)
    except ValueError as exc:
        raise SpecValidationError(str(exc), "--tol" if "tol" in str(exc) else "--workers") from None
    return dataclasses.replace(
        cfg,
        closure=cl,
        output_format=args.format or cfg.output_format,
        output_path=args.out or cfg.output_path,
    )


def run(doc: dict, args) -> int:
    cfg = _apply_flags(parse_document(doc, seed=args.seed), args)
    if args.seed is not None and cfg.seed is None:
        log.warning("--seed ignored: interaction uses explicit entries")
    report = decide_controllability(cfg.system, cfg.accessor, cfg.coupling, cfg.closure,
                                    conditions_only=args.conditions_only)
    text = emit_report(report, cfg.output_format)
    if cfg.output_path:
        Path(cfg.output_path).write_text(text)
    else:
        sys.stdout.write(text)
    return _EXIT[report.verdict]


def run_check(config_path: str, args) -> int:
    return run(load_document(config_path), args)


def run_demo(name: str, args) -> int:
    return run(demo_document(name), args)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.command == "schema":
        sys.stdout.write(json.dumps(CONFIG_SCHEMA, indent=2) + "\n")
        return EXIT_OK
    try:
        if args.command == "check":
            return run_check(args.config, args)
        return run_demo(args.name, args)
    except AccessorControlError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
