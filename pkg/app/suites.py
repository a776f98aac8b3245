"""Verification suites run by the verify command"""
import logging
import random
import time
from itertools import combinations
from typing import Dict, List, Tuple

from app.ccmap import (
    GENERATING_SERIES_NOTE,
    cc_by_definition,
    cc_from_table,
    cc_of_module,
    chi_stability,
    exchange_partners,
    kronecker_generating_series,
    rigid_indecomposables,
    tilting_bijection_check,
    variable_bijection_check,
    verify_denominator,
    verify_exchange,
    verify_object_denominator,
)
from app.errors import InvalidInput, NotDivisible
from app.laurent import LaurentPoly, denominator_vector, is_weakly_positive_sufficient
from app.models import CheckReport, RunConfig, SuiteReport
from app.mutation import (
    PRESETS,
    ExchangeGraph,
    QuiverSpec,
    Seed,
    acyclic_seed_subgraph,
    cluster_variables,
    exchange_graph_is_regular,
    explore,
    kronecker_sequence,
    labeled_seed_count,
    matrix_from_quiver,
    seed_determined_by_cluster,
    seed_mutate,
    variable_support_subgraph,
)
from app.repcore import (
    ClusterObject,
    GenericFamily,
    QuiverAlgebraContext,
    QuiverRep,
    context,
    ext_dim,
    ext_dim_cluster,
    ext_dim_cokernel,
    hom_dim,
    is_exceptional,
    kronecker_family,
    positive_roots,
)
from app.utils import ObjectSpecParser, resolve_quiver

logger = logging.getLogger(__name__)

EXPECTED_COUNTS = {"a1": (2, 2), "a2": (5, 5), "a3": (14, 9), "a4": (42, 14)}
ROOT_BOUND = 2
INVOLUTION_TRIALS = 1000
HOM_EXT_TRIALS = 200
KRONECKER_DENOMINATOR_RANGE = 5

# (quiver, M, N, B, B'); None is the zero object
EXCHANGE_FIXTURES = [
    ("a2", "S:1", "S:2", "P:1", None),
    ("a2", "SP:1", "S:1", None, "SP:2"),
    ("a2", "SP:2", "S:2", "SP:1", None),
    ("a2", "SP:2", "P:1", None, "S:1"),
    ("a3", "S:3", "I:2", "P:1", "S:1"),
    ("a3", "P:2", "S:1", "P:1", "S:3"),
    ("kronecker", "SP:1", "kronecker:U:1", "kronecker:U:0 + kronecker:U:0", None),
]

Outcome = Tuple[List[CheckReport], List[str]]


def _check(check: str, passed: bool, started: float, **witnesses) -> CheckReport:
    report = CheckReport.from_outcome(check, passed, started, **witnesses)
    logger.info("%s: %s", check, report.status)
    return report


class SuiteRunner:
    """Dispatches suite names to their handlers"""

    def __init__(self, config: RunConfig):
        self.config = config
        self._graphs: Dict[str, ExchangeGraph] = {}
        self.suites = {
            "laurent": self._laurent,
            "connectivity": self._connectivity,
            "bijection": self._bijection,
            "denominator": self._denominator,
            "exchange": self._exchange,
            "kronecker": self._kronecker,
        }

    def run(self, name: str) -> SuiteReport:
        try:
            handler = self.suites[name]
        except KeyError:
            raise InvalidInput(f"unknown suite '{name}' (known: {', '.join(self.suites)})") from None
        checks, notes = handler()
        return SuiteReport.collect(name, checks, notes)

    # helpers

    @property
    def cc_options(self) -> dict:
        return {"budget": self.config.budget, "primes": self.config.primes, "parallel": self.config.parallel}

    def _quivers(self, defaults: List[str]) -> List[Tuple[str, QuiverSpec]]:
        if self.config.quiver is None and self.config.file is None:
            return [(name, PRESETS[name]) for name in defaults]
        name = self.config.quiver.lower() if self.config.quiver else "file"
        return [(name, resolve_quiver(self.config.quiver, self.config.file))]

    def _graph(self, name: str, quiver: QuiverSpec) -> ExchangeGraph:
        if name not in self._graphs:
            initial = Seed.initial(matrix_from_quiver(quiver))
            self._graphs[name] = explore(initial, self.config.max_seeds, self.config.max_depth, self.config.parallel)
        return self._graphs[name]

    def _parser(self, ctx: QuiverAlgebraContext) -> ObjectSpecParser:
        return ObjectSpecParser(ctx, self.config.seed, self.config.attempts)

    # suites

    def _laurent(self) -> Outcome:
        checks = []
        quivers = self._quivers(["a1", "a2", "a3", "a4"])
        for name, quiver in quivers:
            started = time.perf_counter()
            try:
                graph = self._graph(name, quiver)
            except NotDivisible as exc:
                checks.append(_check(f"laurent-phenomenon[{name}]", False, started, error=str(exc)))
                continue
            variables = cluster_variables(graph)
            counts = (len(graph.nodes), len(variables))
            expected = EXPECTED_COUNTS.get(name)
            labeled = labeled_seed_count(graph.nodes[0], self.config.max_seeds) if graph.complete else None
            checks.append(_check(f"exploration[{name}]", expected is None or (graph.complete and counts == expected),
                                 started, clusters=counts[0], variables=counts[1], labeled_seeds=labeled,
                                 complete=graph.complete, expected=list(expected) if expected else None))
            if graph.complete:
                started = time.perf_counter()
                checks.append(_check(f"regular[{name}]", exchange_graph_is_regular(graph), started))
            started = time.perf_counter()
            negative = [str(v) for v in variables if not is_weakly_positive_sufficient(v)]
            checks.append(_check(f"weak-positivity[{name}]", not negative, started,
                                 variables=len(variables), failing=negative))
        if self.config.quiver is None and self.config.file is None:
            started = time.perf_counter()
            ys = kronecker_sequence(self.config.n_max)
            negative = [n for n, y in enumerate(ys) if not is_weakly_positive_sufficient(y)]
            checks.append(_check("weak-positivity[kronecker]", not negative, started,
                                 n_max=self.config.n_max, failing=negative))
            quivers = quivers + [("kronecker", PRESETS["kronecker"])]
        checks.append(self._involution(quivers))
        return checks, []

    def _involution(self, quivers: List[Tuple[str, QuiverSpec]]) -> CheckReport:
        started = time.perf_counter()
        rng = random.Random(self.config.seed)
        pool = [Seed.initial(matrix_from_quiver(q)) for _, q in quivers]
        failures = []
        for trial in range(INVOLUTION_TRIALS):
            seed = rng.choice(pool)
            for _ in range(rng.randrange(5)):
                seed = seed_mutate(seed, rng.randrange(seed.n))
            j = rng.randrange(seed.n)
            if seed_mutate(seed_mutate(seed, j), j) != seed:
                failures.append({"trial": trial, "direction": j + 1, "seed": seed.serialize()})
        return _check("mutation-involution", not failures, started, trials=INVOLUTION_TRIALS, failures=failures[:5])

    def _connectivity(self) -> Outcome:
        checks = []
        for name, quiver in self._quivers(["a3", "a4"]):
            graph = self._graph(name, quiver)
            started = time.perf_counter()
            disconnected = [str(v) for v in cluster_variables(graph) if not variable_support_subgraph(graph, v).is_connected]
            checks.append(_check(f"variable-support[{name}]", not disconnected, started,
                                 variables=len(cluster_variables(graph)), disconnected=disconnected))
            started = time.perf_counter()
            acyclic = acyclic_seed_subgraph(graph)
            checks.append(_check(f"acyclic-seeds[{name}]", bool(acyclic.nodes) and acyclic.is_connected, started,
                                 seeds=len(acyclic.nodes), edges=len(acyclic.edges)))
            started = time.perf_counter()
            checks.append(_check(f"cluster-determines-seed[{name}]", seed_determined_by_cluster(graph), started))
        return checks, []

    def _bijection(self) -> Outcome:
        checks = []
        for name, quiver in self._quivers(["a1", "a2", "a3"]):
            ctx = context(quiver)
            graph = self._graph(name, quiver)
            started = time.perf_counter()
            roots = positive_roots(ctx, ROOT_BOUND)
            variables = len(cluster_variables(graph))
            checks.append(_check(f"variable-count[{name}]", graph.complete and variables == len(roots) + ctx.n, started,
                                 variables=variables, roots=len(roots), n=ctx.n))
            options = dict(self.cc_options, seed=self.config.seed)
            checks.append(variable_bijection_check(ctx, graph, ROOT_BOUND, **options))
            checks.append(tilting_bijection_check(ctx, graph, ROOT_BOUND, p=self.config.prime, **options))
        return checks, []

    def _denominator(self) -> Outcome:
        checks = []
        for name, quiver in self._quivers(["a2", "a3", "a4", "kronecker"]):
            if name == "kronecker":
                checks.extend(self._kronecker_denominators())
                continue
            ctx = context(quiver)
            for d in positive_roots(ctx, ROOT_BOUND):
                family = GenericFamily(ctx, d, seed=self.config.seed, attempts=self.config.attempts,
                                       label=f"{name}:M{d}")
                checks.append(verify_denominator(family, self.config.prime, **self.cc_options))
                checks.append(self._formula_equivalence(family))
            for i in range(ctx.n):
                checks.append(verify_object_denominator(ClusterObject.shifted_projective(ctx, i), **self.cc_options))
        return checks, []

    def _formula_equivalence(self, family) -> CheckReport:
        started = time.perf_counter()
        result = cc_of_module(family, **self.cc_options)
        by_definition = cc_by_definition(family.ctx, family.dims, result.chi_table)
        by_formula = cc_from_table(family.ctx, family.dims, result.chi_table)
        return _check(f"formula-equivalence[{family.label}]", by_definition == by_formula, started)

    def _kronecker_denominators(self) -> List[CheckReport]:
        checks = []
        last = KRONECKER_DENOMINATOR_RANGE
        ys = kronecker_sequence(last + 2)
        for n in range(last + 1):
            if n <= self.config.n_max_cc:
                for kind in ("U", "V"):
                    checks.append(verify_denominator(kronecker_family(kind, n), self.config.prime, **self.cc_options))
                continue
            # beyond the enumeration range X_{U^n} is taken to be y_{n+2}
            started = time.perf_counter()
            y = ys[n + 2]
            u, v = denominator_vector(y), denominator_vector(y.swap_variables([1, 0]))
            checks.append(_check(f"denominator-by-mutation[U{n},V{n}]", u == (n, n + 1) and v == (n + 1, n), started,
                                 u=list(u), v=list(v)))
        return checks

    def _exchange(self) -> Outcome:
        checks = []
        selected = {name for name, _ in self._quivers(["a2", "a3", "kronecker"])}
        instances = []
        for name, m, n, b, b_prime in EXCHANGE_FIXTURES:
            if name not in selected:
                continue
            parser = self._parser(context(PRESETS[name]))
            objects = [parser.parse(s) if s is not None else ClusterObject(parser.ctx) for s in (m, n, b, b_prime)]
            instances.append(objects)
        if "kronecker" in selected:
            instances.extend(self._kronecker_exchanges())
        for name in ("a2", "a3"):
            if name in selected:
                instances.extend(self._derived_exchanges(context(PRESETS[name])))
        sup_failures = []
        for m, n, b, b_prime in instances:
            report = verify_exchange(m, n, b, b_prime, self.config.prime, **self.cc_options)
            checks.append(report)
            if not report.witnesses["sup_rule"] and all(is_exceptional_object(x, self.config.prime) for x in (m, n)):
                sup_failures.append(report.check)
        started = time.perf_counter()
        checks.append(_check("denominator-sup-rule", not sup_failures, started, instances=len(instances),
                             failing=sup_failures))
        for name in ("a3", "kronecker"):
            if name in selected:
                checks.append(self._hom_ext_consistency(name, context(PRESETS[name])))
        return checks, []

    def _kronecker_exchanges(self) -> List[List[ClusterObject]]:
        ctx = context(PRESETS["kronecker"])
        w1 = ClusterObject.of_module(kronecker_family("W", 1))
        instances = []
        for n in range(self.config.n_max_cc):
            below = ClusterObject.of_module(kronecker_family("U", n - 1)) if n else ClusterObject.shifted_projective(ctx, 0)
            above = ClusterObject.of_module(kronecker_family("U", n + 1))
            instances.append([w1, ClusterObject.of_module(kronecker_family("U", n)), above, below])
        return instances

    def _derived_exchanges(self, ctx: QuiverAlgebraContext) -> List[List[ClusterObject]]:
        objects = rigid_indecomposables(ctx, ROOT_BOUND, self.config.seed)
        instances = []
        for m, n in combinations(objects, 2):
            if ext_dim_cluster(m, n, self.config.prime) == 1:
                b, b_prime = exchange_partners(m, n, self.config.prime, self.config.seed)
                instances.append([m, n, b, b_prime])
        return instances

    def _hom_ext_consistency(self, name: str, ctx: QuiverAlgebraContext) -> CheckReport:
        started = time.perf_counter()
        rng = random.Random(f"{self.config.seed}:{name}")
        p = self.config.prime
        failures = []
        for _ in range(HOM_EXT_TRIALS):
            m, n = (random_rep(ctx, p, rng) for _ in range(2))
            hom, ext = hom_dim(m, n), ext_dim(m, n)
            if hom - ext != ctx.euler_form(m.dims, n.dims) or ext != ext_dim_cokernel(m, n):
                failures.append({"dims": [list(m.dims), list(n.dims)], "hom": hom, "ext": ext})
        return _check(f"hom-ext-consistency[{name}]", not failures, started, trials=HOM_EXT_TRIALS,
                      failures=failures[:5])

    def _kronecker(self) -> Outcome:
        checks = []
        n_max, n_cc = self.config.n_max, self.config.n_max_cc
        ys = kronecker_sequence(max(n_max, n_cc + 2) + 1)

        started = time.perf_counter()
        recurrence = [ys[0], ys[1]]
        for n in range(1, len(ys) - 1):
            recurrence.append((recurrence[n] * recurrence[n] + 1).exact_div(recurrence[n - 1]))
        mismatched = [n for n in range(n_max + 1) if ys[n] != recurrence[n]]
        checks.append(_check("mutation-vs-recurrence", not mismatched, started, n_max=n_max, mismatched=mismatched))

        for n in range(n_cc + 1):
            started = time.perf_counter()
            x_u = cc_of_module(kronecker_family("U", n), **self.cc_options).polynomial
            checks.append(_check(f"cc-vs-mutation[U{n}]", x_u == ys[n + 2], started, polynomial=str(x_u)))
            started = time.perf_counter()
            x_v = cc_of_module(kronecker_family("V", n), **self.cc_options).polynomial
            checks.append(_check(f"duality[V{n}]", x_v == x_u.swap_variables([1, 0]), started))

        started = time.perf_counter()
        w1_family = kronecker_family("W", 1)
        w1 = cc_of_module(w1_family, **self.cc_options).polynomial
        expected = LaurentPoly(2, {(-1, -1): 1, (1, -1): 1, (-1, 1): 1})
        checks.append(_check("cc[W1]", w1 == expected, started, polynomial=str(w1)))

        started = time.perf_counter()
        broken = [n for n in range(1, n_max) if w1 * ys[n] != ys[n + 1] + ys[n - 1]]
        checks.append(_check("w1-linearization", not broken, started, n_range=[1, n_max - 1], failing=broken))

        checks.append(self._generating_series(ys[: n_max + 1], w1))

        for family in (kronecker_family("U", 1), w1_family):
            checks.append(self._formula_equivalence(family))
            started = time.perf_counter()
            stability = chi_stability(family, self.config.budget)
            checks.append(_check(f"interpolation-stability[{family.label}]", stability["agree"], started, **stability))
        return checks, [GENERATING_SERIES_NOTE]

    def _generating_series(self, ys: List[LaurentPoly], w1: LaurentPoly) -> CheckReport:
        started = time.perf_counter()
        coefficients = kronecker_generating_series(ys, w1)
        y_minus_one = LaurentPoly(2, {(-1, 0): 1, (-1, 2): 1})
        nonzero = [k for k in range(2, len(coefficients)) if not coefficients[k].is_zero]
        passed = (not nonzero and coefficients[0] == ys[0]
                  and (len(coefficients) < 2 or coefficients[1] == -y_minus_one))
        return _check("generating-series", passed, started, degree=len(coefficients) - 1, nonzero_degrees=nonzero,
                      constant=str(coefficients[0]), linear=str(coefficients[1]) if len(coefficients) > 1 else None)


def is_exceptional_object(x: ClusterObject, p: int) -> bool:
    return not x.is_zero and is_exceptional(x, p)


def random_rep(ctx: QuiverAlgebraContext, p: int, rng: random.Random, max_dim: int = 2) -> QuiverRep:
    dims = [rng.randint(0, max_dim) for _ in range(ctx.n)]
    maps = [[[rng.randrange(p) for _ in range(dims[s])] for _ in range(dims[t])] for s, t in ctx.arrows]
    return QuiverRep.build(ctx, p, dims, maps)


def run_suite(config: RunConfig, name: str) -> SuiteReport:
    return SuiteRunner(config).run(name)

