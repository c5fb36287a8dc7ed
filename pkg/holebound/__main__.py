"""Command-line entry point for holebound.

Usage:
    python -m holebound chi graph.col
    python -m holebound decompose graph.g6 --ell 5 --kappa 2 --tau 3
    python -m holebound engine --name type2 graph.g6 cable.json --param tau=1 --output out.json
    python -m holebound sweep --config sweep.toml
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from typing import Optional

from holebound.config import LimitsConfig, load_config, resolve_limits
from holebound.handlers.bound import handle_bound
from holebound.handlers.engine import ENGINES, handle_engine
from holebound.handlers.generate import handle_generate
from holebound.handlers.solve import (
    handle_chi,
    handle_chordal,
    handle_decompose,
    handle_find_hole,
    handle_longest_hole,
    handle_omega,
)
from holebound.handlers.sweep import handle_replay, handle_sweep
from holebound.handlers.validation import ExitCode, UsageError, parse_params, run_guarded
from holebound.handlers.verify import handle_verify
from holebound.solvers import SolverLimits
from holebound.structures import STRUCTURE_KINDS

logger = logging.getLogger(__name__)


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--node-budget", type=int, default=None, help="search-node budget per solver call")
    common.add_argument("--time-budget", type=float, default=None, help="seconds per solver call")
    common.add_argument("--config", default=None, help="TOML/JSON config whose [limits] apply")
    common.add_argument("--output", default=None, help="also write the JSON result to this path or s3:// URI")
    common.add_argument(
        "--log-level",
        default=os.environ.get("HOLEBOUND_LOG_LEVEL", "WARNING"),
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
    )
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="holebound",
        description="holebound - exact chi/omega/hole solvers, structure verifiers and proof engines",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("omega", "chi", "longest-hole", "chordal"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("graph", help="graph file (.col/.dimacs or .g6/.graph6)")

    p = sub.add_parser("find-hole", parents=[common])
    p.add_argument("graph")
    p.add_argument("--min-len", type=int, required=True)

    p = sub.add_parser("decompose", parents=[common])
    p.add_argument("graph")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--kappa", type=int, required=True)
    p.add_argument("--tau", type=int, required=True)
    p.add_argument("--assume-bounds", action="store_true", help="skip the per-vertex kappa/tau check")

    p = sub.add_parser("verify", parents=[common])
    p.add_argument("graph")
    p.add_argument("structure", help="structure JSON file")
    p.add_argument("--kind", required=True, choices=sorted(STRUCTURE_KINDS))
    p.add_argument("--stable", action="store_true", help="multicover: also require every N_x stable")

    p = sub.add_parser("engine", parents=[common])
    p.add_argument("--name", required=True, choices=sorted(ENGINES))
    p.add_argument("graph")
    p.add_argument("structure", nargs="?", default=None)
    p.add_argument("--param", action="append", default=[], metavar="KEY=VALUE")

    p = sub.add_parser("bound", parents=[common])
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--digits", type=int, default=10**6)
    p.add_argument("--tree", default=None, help="write the expression tree JSON here")

    p = sub.add_parser("generate", parents=[common])
    p.add_argument("model", choices=["gnp", "chordal", "planted-cable", "planted-ticks"])
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--p", type=float, default=None)
    p.add_argument("--width", type=int, default=None)
    p.add_argument("--h", type=int, default=1)
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--types", default="type2", help="type1, type2, or a comma list per pair")
    p.add_argument("--base-chi", type=int, default=1)
    p.add_argument("--structure-output", default=None)

    sub.add_parser("sweep", parents=[common])

    p = sub.add_parser("replay", parents=[common])
    p.add_argument("records", help="records.jsonl from a sweep")
    return parser


def _limits(args: argparse.Namespace) -> SolverLimits:
    base = load_config(args.config).limits if args.config else LimitsConfig()
    return resolve_limits(base, node_budget=args.node_budget, time_budget=args.time_budget).solver_limits()


def dispatch(args: argparse.Namespace, output: Optional[str] = None) -> ExitCode:
    command = args.command
    if command == "sweep":
        if not args.config:
            raise UsageError("sweep needs --config")
        return handle_sweep(args.config, args.node_budget, args.time_budget, output)
    if command == "replay":
        return handle_replay(args.records, output)
    if command == "bound":
        return handle_bound(args.k, args.ell, args.digits, args.tree, output)
    if command == "generate":
        if not output:
            raise UsageError("generate needs --output")
        return handle_generate(
            args.model, output, args.seed, n=args.n, p=args.p, width=args.width, h=args.h, t=args.t,
            types=args.types, base_chi=args.base_chi, structure_output=args.structure_output,
        )
    if command == "chordal":
        return handle_chordal(args.graph, output)

    limits = _limits(args)
    if command == "omega":
        return handle_omega(args.graph, limits, output)
    if command == "chi":
        return handle_chi(args.graph, limits, output)
    if command == "longest-hole":
        return handle_longest_hole(args.graph, limits, output)
    if command == "find-hole":
        return handle_find_hole(args.graph, args.min_len, limits, output)
    if command == "decompose":
        return handle_decompose(args.graph, args.ell, args.kappa, args.tau, limits, output, not args.assume_bounds)
    if command == "verify":
        return handle_verify(args.graph, args.structure, args.kind, args.stable, output)
    return handle_engine(args.name, args.graph, args.structure, parse_params(args.param), limits, output)


def main(argv: Optional[list[str]] = None) -> None:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=args.log_level, format="%(levelname)s %(name)s: %(message)s")
    sys.exit(run_guarded(dispatch, args, output=args.output))


if __name__ == "__main__":
    main()
