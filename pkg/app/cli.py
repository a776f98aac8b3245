"""Command-line surface: python -m app {mutate,explore,ccmap,verify}"""
import argparse
import json
import logging
import sys
from typing import Callable, Dict, List, Optional, Tuple

from pydantic import ValidationError

from app import __version__
from app.ccmap import cc_of_object
from app.config import Settings, configure_logging, get_settings
from app.errors import ClusterForgeError, InvalidInput
from app.laurent import LaurentPoly
from app.models import SUITES, CCResultModel, GraphSummary, RunConfig, SeedModel, SuiteReport
from app.mutation import (
    DEFAULT_MAX_SEEDS,
    ExchangeGraph,
    Seed,
    cluster_variables,
    explore,
    labeled_seed_count,
    matrix_from_quiver,
    mutate_sequence,
)
from app.repcore import context
from app.suites import SuiteRunner
from app.utils import ObjectSpecParser, object_from_root, one_based, parse_vector, resolve_quiver

logger = logging.getLogger(__name__)

# (exit code, JSON payload, text rendering)
Outcome = Tuple[int, dict, str]


def seed_model(seed: Seed) -> SeedModel:
    data = seed.serialize()
    return SeedModel(cluster=[str(u) for u in seed.cluster], terms=data["cluster"], matrix=data["matrix"])


def graph_summary(graph: ExchangeGraph, max_seeds: int = DEFAULT_MAX_SEEDS) -> GraphSummary:
    labeled = labeled_seed_count(graph.nodes[0], max_seeds) if graph.complete else None
    return GraphSummary(nodes=len(graph.nodes), edges=len(graph.undirected_edges()),
                        variables=len(cluster_variables(graph)), labeled_seeds=labeled,
                        complete=graph.complete, depth=max(graph.depths, default=0))


def _initial_seed(config: RunConfig) -> Seed:
    return Seed.initial(matrix_from_quiver(resolve_quiver(config.quiver, config.file)))


def mutated_seed(config: RunConfig, directions: List[int]) -> Seed:
    """Apply 1-based mutation directions to the initial seed of the quiver"""
    initial = _initial_seed(config)
    return mutate_sequence(initial, one_based(directions, initial.n, "mutation direction"))


def cmd_mutate(config: RunConfig, directions: List[int]) -> SeedModel:
    return seed_model(mutated_seed(config, directions))


def cmd_explore(config: RunConfig) -> Tuple[GraphSummary, dict]:
    graph = explore(_initial_seed(config), config.max_seeds, config.max_depth, config.parallel)
    return graph_summary(graph, config.max_seeds), graph.serialize()


def cmd_ccmap(config: RunConfig, spec: Optional[str] = None, root: Optional[List[int]] = None) -> CCResultModel:
    """X of an object spec such as 'SP:1' or 'kronecker:W:1', or of the generic module of a root"""
    if (spec is None) == (root is None):
        raise InvalidInput("give exactly one of --object or --root")
    ctx = context(resolve_quiver(config.quiver, config.file))
    if spec is not None:
        x = ObjectSpecParser(ctx, config.seed, config.attempts).parse(spec)
    else:
        x = object_from_root(ctx, root, config.seed, config.attempts)
    result = cc_of_object(x, budget=config.budget, primes=config.primes, parallel=config.parallel)
    return CCResultModel(**result.serialize())


def cmd_verify(config: RunConfig, suite: str) -> SuiteReport:
    return SuiteRunner(config).run(suite)


def _render_seed(seed: Seed) -> str:
    lines = [f"u_{{{k + 1}}} = {u.latex()}" for k, u in enumerate(seed.cluster)]
    lines.append(f"B = {seed.matrix.to_list()}")
    return "\n".join(lines)


def _run_mutate(config: RunConfig, args) -> Outcome:
    seed = mutated_seed(config, args.directions)
    return 0, seed_model(seed).model_dump(), _render_seed(seed)


def _run_explore(config: RunConfig, args) -> Outcome:
    summary, graph = cmd_explore(config)
    text = (f"{summary.nodes} seeds, {summary.edges} edges, {summary.variables} cluster variables"
            f"{'' if summary.complete else ' (truncated)'}")
    return 0, {"summary": summary.model_dump(), "graph": graph}, text


def _run_ccmap(config: RunConfig, args) -> Outcome:
    root = parse_vector(args.root) if args.root else None
    model = cmd_ccmap(config, args.object, root)
    polynomial = LaurentPoly.parse(model.terms, len(model.denominator))
    text = f"X_{{{model.object['label']}}} = {polynomial.latex()}\ndenominator = {tuple(model.denominator)}"
    return 0, model.model_dump(), text


def _run_verify(config: RunConfig, args) -> Outcome:
    report = cmd_verify(config, args.suite)
    lines = [f"{c.status.upper():4}  {c.check}" for c in report.checks]
    lines += [f"note: {n}" for n in report.notes]
    lines.append(f"{args.suite}: {report.status}")
    return (0 if report.status == "pass" else 1), report.deterministic(), "\n".join(lines)


COMMANDS: Dict[str, Callable[[RunConfig, argparse.Namespace], Outcome]] = {
    "mutate": _run_mutate,
    "explore": _run_explore,
    "ccmap": _run_ccmap,
    "verify": _run_verify,
}


def build_parser(settings: Settings) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiver", help="preset name: a1..a6, d4, kronecker")
    common.add_argument("--file", help="quiver JSON file {n, matrix | arrows}")
    common.add_argument("--max-seeds", type=int, default=settings.max_seeds)
    common.add_argument("--max-depth", type=int, default=settings.max_depth)
    common.add_argument("--budget", type=int, default=settings.budget, help="Grassmannian enumeration budget")
    common.add_argument("--primes", help="comma-separated interpolation primes")
    common.add_argument("--prime", type=int, default=settings.prime, help="prime for structural linear algebra")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--parallel", action="store_true")
    common.add_argument("--n-max", type=int, default=10, help="Kronecker sequence length")
    common.add_argument("--n-max-cc", type=int, default=3, help="largest n for CC-map checks of U^n")
    common.add_argument("--log-level", default=None)

    parser = argparse.ArgumentParser(prog="cluster-forge", description="Cluster algebras and the Caldero-Chapoton map")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    mutate = commands.add_parser("mutate", parents=[common], help="mutate the initial seed")
    mutate.add_argument("directions", nargs="*", type=int, help="1-based mutation directions")

    commands.add_parser("explore", parents=[common], help="explore the exchange graph")

    ccmap = commands.add_parser("ccmap", parents=[common], help="Caldero-Chapoton map of an object")
    target = ccmap.add_mutually_exclusive_group(required=True)
    target.add_argument("--object", help="object spec, e.g. SP:1, P:2, root:1,1, kronecker:W:1, SP:1+S:2")
    target.add_argument("--root", help="dimension vector of a real root, e.g. 1,1")

    verify = commands.add_parser("verify", parents=[common], help="run a verification suite")
    verify.add_argument("suite", choices=SUITES)
    return parser


def build_config(args: argparse.Namespace, settings: Settings) -> RunConfig:
    try:
        return RunConfig(
            command=args.command,
            quiver=args.quiver,
            file=args.file,
            max_seeds=args.max_seeds,
            max_depth=args.max_depth,
            budget=args.budget,
            primes=parse_vector(args.primes) if args.primes else None,
            prime=args.prime,
            seed=settings.seed,
            attempts=settings.attempts,
            format=args.format,
            parallel=args.parallel,
            n_max=args.n_max,
            n_max_cc=args.n_max_cc,
        )
    except ValidationError as exc:
        raise InvalidInput(f"invalid options: {exc.errors()[0]['msg']}") from exc


def main(argv: Optional[List[str]] = None) -> int:
    settings = get_settings()
    args = build_parser(settings).parse_args(argv)
    configure_logging(args.log_level)
    try:
        config = build_config(args, settings)
        code, payload, text = COMMANDS[args.command](config, args)
    except ClusterForgeError as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        print(json.dumps({"error": type(exc).__name__, "detail": str(exc)}), file=sys.stderr)
        return exc.exit_code
    if config.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)
    return code
