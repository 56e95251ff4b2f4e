"""Command-line entry point: ``ranslice <command> ...``.

Exit status is 0 on success, 1 when ``validate`` finds violations or a
solver refuses an instance, and 2 on usage, input or format errors.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import serialize
from .fixtures import FIXTURES
from .flat import flatten
from .generator import GeneratorConfig, InfeasibleConfig, Regime, generate, preset
from .group_heuristics import run_gba, run_gcba
from .harness import SweepSpec, emit_report, run_sweep
from .heuristics import run_cba, run_rba
from .model import validate_instance, validate_plan
from .oracle import BudgetExceeded, OracleBudget, run_exact

log = logging.getLogger("ranslice")

TOKENS = ("rba", "cba", "gcba", "gba", "exact")


class CliError(Exception):
    def __init__(self, message: str, code: int = 2):
        super().__init__(message)
        self.code = code


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _read_instance(path: str):
    try:
        inst = serialize.loads_instance(Path(path).read_text())
    except OSError as exc:
        raise CliError(f"cannot read instance {path}: {exc.strerror}") from exc
    report = validate_instance(inst.substrate, inst.slices)
    if not report.ok:
        raise CliError(f"invalid instance {path}:\n{report}")
    return inst


def _solve(inst, alg: str, most_negative: bool = False):
    flat = flatten(inst)
    if alg == "exact":
        try:
            state, optimal, _ = run_exact(flat, OracleBudget())
        except BudgetExceeded as exc:
            raise CliError(f"exact: {exc}", code=1) from exc
        if not optimal:
            log.warning("exact: expansion budget hit; plan may not be optimal")
        return state
    if alg in ("gcba", "gba"):
        return (run_gcba if alg == "gcba" else run_gba)(flat, most_negative=most_negative)
    return (run_rba if alg == "rba" else run_cba)(flat)


def cmd_generate(args) -> int:
    if args.config:
        cfg = GeneratorConfig.from_dict(json.loads(Path(args.config).read_text()))
    else:
        cfg = preset(Regime(args.regime))
    changes = {"seed": args.seed}
    if args.k is not None:
        changes["substrate_degree"] = args.k
    if args.k_prime is not None:
        changes["vnf_degree"] = args.k_prime
    inst = generate(cfg.replace(**changes))
    _write(args.output, serialize.dumps_instance(inst))
    return 0


def cmd_fixture(args) -> int:
    _write(args.output, serialize.dumps_instance(FIXTURES[args.name]()))
    return 0


def cmd_solve(args) -> int:
    inst = _read_instance(args.input)
    state = _solve(inst, args.alg, args.most_negative)
    _write(args.output, serialize.dumps_plan(state.plan()))
    if args.output not in (None, "-"):
        print(f"{args.alg}: embedded {state.embedded} of {inst.slices.n_vnfs} VNFs")
    return 0


def cmd_validate(args) -> int:
    inst = _read_instance(args.input)
    try:
        plan = serialize.loads_plan(Path(args.plan).read_text())
    except OSError as exc:
        raise CliError(f"cannot read plan {args.plan}: {exc.strerror}") from exc
    report = validate_plan(inst.substrate, inst.slices, plan)
    if report.ok:
        print(f"ok: {len(plan)} VNFs embedded")
        return 0
    print(report, file=sys.stderr)
    return 1


def cmd_sweep(args) -> int:
    try:
        doc = json.loads(Path(args.spec).read_text())
    except OSError as exc:
        raise CliError(f"cannot read sweep spec {args.spec}: {exc.strerror}") from exc
    if args.seed is not None:
        doc.setdefault("base", {})["seed"] = args.seed
    spec = SweepSpec.from_dict(doc)
    fmt = args.format or ("json" if str(args.output).endswith(".json") else "csv")
    result = run_sweep(spec, jobs=args.jobs)
    _write(args.output, emit_report(result, fmt))
    return 0


def cmd_compare(args) -> int:
    inst = _read_instance(args.input)
    parts = []
    for alg in TOKENS:
        try:
            parts.append(f"{alg}={_solve(inst, alg).embedded}")
        except CliError:
            parts.append(f"{alg}=n/a")
    print(" ".join(parts))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ranslice", description="RAN slice VNF embedding toolkit")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="draw a random instance")
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--regime", choices=[r.value for r in Regime if r is not Regime.CUSTOM],
                   default="normal")
    g.add_argument("--k", type=int, help="substrate degree (regular topology)")
    g.add_argument("--k-prime", type=int, help="VNF degree within each slice")
    g.add_argument("--config", help="JSON generator config; overrides --regime")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_generate)

    f = sub.add_parser("fixture", help="write a built-in example instance")
    f.add_argument("name", choices=sorted(FIXTURES))
    f.add_argument("-o", "--output")
    f.set_defaults(func=cmd_fixture)

    s = sub.add_parser("solve", help="embed an instance with one algorithm")
    s.add_argument("--alg", choices=TOKENS, required=True)
    s.add_argument("-i", "--input", required=True)
    s.add_argument("-o", "--output")
    s.add_argument("--most-negative", action="store_true",
                   help="gcba/gba: on all-negative differences pick the most negative")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("validate", help="check a plan against an instance")
    v.add_argument("-i", "--input", required=True)
    v.add_argument("-p", "--plan", required=True)
    v.set_defaults(func=cmd_validate)

    w = sub.add_parser("sweep", help="run a parameter sweep and write a report")
    w.add_argument("--spec", required=True)
    w.add_argument("-o", "--output", required=True)
    w.add_argument("--seed", type=int, help="override the base seed")
    w.add_argument("--jobs", type=int, help="worker processes (default $RANSLICE_JOBS or 1)")
    w.add_argument("--format", choices=("csv", "json"))
    w.set_defaults(func=cmd_sweep)

    c = sub.add_parser("compare", help="embedded counts of every algorithm side by side")
    c.add_argument("-i", "--input", required=True)
    c.set_defaults(func=cmd_compare)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (serialize.FormatError, InfeasibleConfig, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
