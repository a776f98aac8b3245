"""The Caldero-Chapoton map and the verifiers built on it"""
import logging
import time
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from app.errors import InvalidInput, PreconditionError
from app.grassmannian import DEFAULT_BUDGET, all_subdims, degree_bound, euler_chars, prime_sequence
from app.laurent import FractionForm, LaurentPoly, sup_vector, to_fraction
from app.models import CheckReport
from app.mutation import ExchangeGraph, cluster_variables
from app.repcore import (
    DEFAULT_PRIME,
    ClusterObject,
    DerivedFamily,
    DimVector,
    GenericFamily,
    QuiverAlgebraContext,
    RepFamily,
    build_extension,
    cokernel,
    ext_cocycle_basis,
    ext_dim,
    ext_dim_cluster,
    hom_basis,
    injective_rep,
    is_exceptional,
    kernel,
    positive_roots,
    projective_rep,
)

logger = logging.getLogger(__name__)

GENERATING_SERIES_NOTE = (
    "Expanding from y_0 = x_2 gives (1 - w_1 t + t^2) * sum y_n t^n = x_2 - y_{-1} t, "
    "so the numerator of the generating series is x_2 - y_{-1} t, not 1 - y_{-1} t."
)


@dataclass(frozen=True)
class CCResult:
    object: dict
    polynomial: LaurentPoly
    denominator: FractionForm
    chi_table: Tuple[Tuple[DimVector, int], ...]

    def serialize(self) -> dict:
        return {
            "object": self.object,
            "polynomial": str(self.polynomial),
            "terms": self.polynomial.serialize(),
            "denominator": list(self.denominator.denominator),
            "chi_table": [[list(e), chi] for e, chi in self.chi_table],
        }


def x_power(ctx: QuiverAlgebraContext, v: Sequence[int]) -> LaurentPoly:
    """x^v with exponent_i = <alpha_i, v>"""
    return LaurentPoly.monomial(ctx.n, ctx.x_exponent(v))


def cc_from_table(ctx: QuiverAlgebraContext, m: Sequence[int], chi_table) -> LaurentPoly:
    """sum_e chi_e x^(tau(e) - m + e)"""
    total = LaurentPoly.zero(ctx.n)
    for e, chi in chi_table:
        if chi:
            v = tuple(t - mi + ei for t, mi, ei in zip(ctx.tau(e), m, e))
            total = total + x_power(ctx, v) * chi
    return total


def cc_by_definition(ctx: QuiverAlgebraContext, m: Sequence[int], chi_table) -> LaurentPoly:
    """sum_e chi_e prod_i x_i^(-<e, alpha_i> - <alpha_i, m - e>)"""
    total = LaurentPoly.zero(ctx.n)
    for e, chi in chi_table:
        if not chi:
            continue
        rest = tuple(mi - ei for mi, ei in zip(m, e))
        exponent = tuple(-ctx.euler_form(e, ctx.unit(i)) - ctx.euler_form(ctx.unit(i), rest) for i in range(ctx.n))
        total = total + LaurentPoly.monomial(ctx.n, exponent, chi)
    return total


@lru_cache(maxsize=1024)
def _chi_table(family: RepFamily, budget: Optional[int], primes: Optional[Tuple[int, ...]],
               parallel: bool) -> Tuple[Tuple[DimVector, int], ...]:
    chis = euler_chars(family, primes=primes, budget=budget, parallel=parallel)
    return tuple(sorted(chis.items()))


def cc_of_module(family: RepFamily, budget: Optional[int] = DEFAULT_BUDGET,
                 primes: Optional[Sequence[int]] = None, parallel: bool = False) -> CCResult:
    ctx = family.ctx
    table = _chi_table(family, budget, tuple(primes) if primes else None, parallel)
    poly = cc_from_table(ctx, family.dims, table)
    return CCResult(ClusterObject.of_module(family).describe(), poly, to_fraction(poly), table)


def cc_of_object(x: ClusterObject, budget: Optional[int] = DEFAULT_BUDGET,
                 primes: Optional[Sequence[int]] = None, parallel: bool = False) -> CCResult:
    """X_{M_0} times x_i for every shifted projective SP_i"""
    ctx = x.ctx
    poly = LaurentPoly.one(ctx.n)
    table: Tuple = ()
    if x.module is not None:
        module = cc_of_module(x.module, budget, primes, parallel)
        poly, table = module.polynomial, module.chi_table
    poly = poly * LaurentPoly.monomial(ctx.n, x.shift_multiplicities)
    return CCResult(x.describe(), poly, to_fraction(poly), table)


def _report(check: str, passed: bool, started: float, **witnesses) -> CheckReport:
    if not passed:
        logger.warning("check %s failed: %s", check, witnesses)
    return CheckReport.from_outcome(check, passed, started, **witnesses)


def verify_denominator(family: RepFamily, p: int = DEFAULT_PRIME, **cc_options) -> CheckReport:
    """The denominator vector of X_M is dim M for an exceptional module M"""
    started = time.perf_counter()
    if not is_exceptional(family.at(p)):
        raise PreconditionError(f"{family.label} is not exceptional")
    result = cc_of_module(family, **cc_options)
    denominator = result.denominator.denominator
    return _report(f"denominator[{family.label}]", denominator == family.dims, started,
                   dims=list(family.dims), denominator=list(denominator),
                   polynomial=str(result.polynomial))


def verify_object_denominator(x: ClusterObject, **cc_options) -> CheckReport:
    """delta(X) = dim H^0(X) - sum m_i alpha_i agrees with the computed denominator"""
    started = time.perf_counter()
    delta = tuple(d - s for d, s in zip(x.module_dims, x.shift_multiplicities))
    denominator = cc_of_object(x, **cc_options).denominator.denominator
    return _report(f"object-denominator[{x.label}]", delta == denominator, started,
                   delta=list(delta), denominator=list(denominator))


def verify_exchange(m: ClusterObject, n: ClusterObject, b: ClusterObject, b_prime: ClusterObject,
                    p: int = DEFAULT_PRIME, **cc_options) -> CheckReport:
    """X_M X_N == X_B + X_B' for a pair with one-dimensional Ext^1 in the cluster category"""
    started = time.perf_counter()
    ext = ext_dim_cluster(m, n, p)
    if ext != 1:
        raise PreconditionError(f"Ext^1({m.label}, {n.label}) has dimension {ext}, expected 1")
    xm, xn, xb, xb_prime = (cc_of_object(x, **cc_options) for x in (m, n, b, b_prime))
    left = xm.polynomial * xn.polynomial
    right = xb.polynomial + xb_prime.polynomial
    dens = [x.denominator.denominator for x in (xm, xn, xb, xb_prime)]
    sup_rule = tuple(a + c for a, c in zip(dens[0], dens[1])) == sup_vector(dens[2], dens[3])
    witnesses = {"B": b.label, "B'": b_prime.label, "sup_rule": sup_rule}
    if left != right:
        witnesses.update(left=left.serialize(), right=right.serialize())
    return _report(f"exchange[{m.label} * {n.label}]", left == right, started, **witnesses)


def _unique_map(source, target, what: str):
    basis = hom_basis(source, target)
    if len(basis) != 1:
        raise PreconditionError(f"expected a unique map {what}, Hom has dimension {len(basis)}")
    return basis[0]


def _shifts_from(multiplicities: Sequence[int], kind: str) -> Tuple[int, ...]:
    if any(x < 0 for x in multiplicities):
        raise PreconditionError(f"{kind} is not a sum of indecomposable {kind}s: {tuple(multiplicities)}")
    return tuple(i for i, mult in enumerate(multiplicities) for _ in range(mult))


def _derived(ctx: QuiverAlgebraContext, p: int, build, label: str) -> Optional[RepFamily]:
    dims = build(p).dims
    if not any(dims):
        return None
    return DerivedFamily(ctx, dims, build, label)


def _partners_with_shift(i: int, module: RepFamily, p: int) -> Tuple[ClusterObject, ClusterObject]:
    """SP_i against M with (dim M)_i = 1: B from zeta: M -> I_i, B' from zeta': P_i -> M"""
    ctx = module.ctx

    def zeta(q: int):
        return _unique_map(module.at(q), injective_rep(ctx, i, q), f"M -> I_{i + 1}")

    def zeta_prime(q: int):
        return _unique_map(projective_rep(ctx, i, q), module.at(q), f"P_{i + 1} -> M")

    ker = _derived(ctx, p, lambda q: kernel(module.at(q), zeta(q)), f"ker({module.label}->I{i + 1})")
    coker = cokernel(injective_rep(ctx, i, p), zeta(p), module.dims)
    b = ClusterObject(ctx, ker, _shifts_from(ctx.x_exponent(coker.dims), "injective"))

    coker_prime = _derived(ctx, p, lambda q: cokernel(module.at(q), zeta_prime(q), ctx.projective_dims[i]),
                           f"coker(P{i + 1}->{module.label})")
    ker_prime = kernel(projective_rep(ctx, i, p), zeta_prime(p))
    # ker zeta' is projective: dim = sum mu_k dim P_k, so mu_k = <dim, alpha_k>
    mu = tuple(ctx.euler_form(ker_prime.dims, ctx.unit(k)) for k in range(ctx.n))
    b_prime = ClusterObject(ctx, coker_prime, _shifts_from(mu, "projective"))
    return b, b_prime


def _tau_inverse_object(ctx: QuiverAlgebraContext, family: Optional[RepFamily], p: int,
                        seed: int) -> ClusterObject:
    """tau^-1 of an exceptional module in the cluster category; injectives go to shifted projectives"""
    if family is None:
        return ClusterObject(ctx)
    if not is_exceptional(family.at(p)):
        raise PreconditionError(f"{family.label} is neither zero nor exceptional")
    for j in range(ctx.n):
        if family.dims == ctx.injective_dims[j]:
            return ClusterObject.shifted_projective(ctx, j)
    return ClusterObject.of_module(GenericFamily(ctx, ctx.tau_inverse(family.dims), seed=seed))


def _partners_of_modules(m: RepFamily, n: RepFamily, p: int, seed: int) -> Tuple[ClusterObject, ClusterObject]:
    """Modules with Ext^1(N, M) = 1: B_+ from 0 -> M -> B_+ -> N -> 0, B_- = ker h + tau^-1 coker h for h: M -> tau N"""
    ctx = m.ctx
    if not is_exceptional(n.at(p)):
        raise PreconditionError(f"{n.label} is not exceptional")

    def middle(q: int):
        cocycles = ext_cocycle_basis(n.at(q), m.at(q))
        return build_extension(n.at(q), m.at(q), cocycles[0])

    b_plus = ClusterObject(ctx, DerivedFamily(ctx, tuple(a + b for a, b in zip(m.dims, n.dims)), middle,
                                              f"E({n.label},{m.label})"))
    tau_n = GenericFamily(ctx, ctx.tau(n.dims), seed=seed, label=f"tau({n.label})")

    def h(q: int):
        return _unique_map(m.at(q), tau_n.at(q), f"{m.label} -> tau {n.label}")

    ker = _derived(ctx, p, lambda q: kernel(m.at(q), h(q)), f"ker({m.label}->tau{n.label})")
    coker = _derived(ctx, p, lambda q: cokernel(tau_n.at(q), h(q), m.dims), f"coker({m.label}->tau{n.label})")
    b_minus = ClusterObject(ctx, ker).plus(_tau_inverse_object(ctx, coker, p, seed))
    return b_plus, b_minus


def exchange_partners(m: ClusterObject, n: ClusterObject, p: int = DEFAULT_PRIME,
                      seed: int = 0) -> Tuple[ClusterObject, ClusterObject]:
    """Middle terms (B, B') of the two non-split triangles between M and N"""
    if ext_dim_cluster(m, n, p) != 1:
        raise PreconditionError(f"Ext^1({m.label}, {n.label}) is not one-dimensional")
    for shift, other in ((m, n), (n, m)):
        if shift.module is None and len(shift.shifted) == 1 and other.module is not None and not other.shifted:
            return _partners_with_shift(shift.shifted[0], other.module, p)
    if m.shifted or n.shifted or m.module is None or n.module is None:
        raise PreconditionError("exchange partners need SP_i against a module, or two modules")
    sub, top = m.module, n.module
    if ext_dim(top.at(p), sub.at(p)) != 1:
        sub, top = top, sub
    return _partners_of_modules(sub, top, p, seed)


def rigid_indecomposables(ctx: QuiverAlgebraContext, bound: int, seed: int = 0) -> List[ClusterObject]:
    """Generic modules of the positive roots, then SP_1..SP_n"""
    modules = [ClusterObject.of_module(GenericFamily(ctx, d, seed=seed)) for d in positive_roots(ctx, bound)]
    return modules + [ClusterObject.shifted_projective(ctx, i) for i in range(ctx.n)]


def _require_complete(graph: ExchangeGraph):
    if not graph.complete:
        raise PreconditionError("the exchange graph is truncated; finite type could not be confirmed")


def variable_bijection_check(ctx: QuiverAlgebraContext, graph: ExchangeGraph, bound: int, seed: int = 0,
                             **cc_options) -> CheckReport:
    """X maps rigid indecomposables of the cluster category one-to-one onto the cluster variables"""
    started = time.perf_counter()
    _require_complete(graph)
    objects = rigid_indecomposables(ctx, bound, seed)
    images = [cc_of_object(x, **cc_options).polynomial for x in objects]
    variables = set(cluster_variables(graph))
    produced = set(images)
    injective = len(produced) == len(images)
    missing = sorted(variables - produced)
    extra = sorted(produced - variables)
    return _report("variable-bijection", injective and not missing and not extra, started,
                   roots=len(objects) - ctx.n, variables=len(variables), injective=injective,
                   missing=[str(v) for v in missing], unexpected=[str(v) for v in extra])


def compatibility_graph(objects: Sequence[ClusterObject], p: int = DEFAULT_PRIME) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(range(len(objects)))
    for a, b in combinations(range(len(objects)), 2):
        if ext_dim_cluster(objects[a], objects[b], p) == 0:
            graph.add_edge(a, b)
    return graph


def tilting_bijection_check(ctx: QuiverAlgebraContext, graph: ExchangeGraph, bound: int, seed: int = 0,
                            p: int = DEFAULT_PRIME, **cc_options) -> CheckReport:
    """Maximal rigid objects have n summands and map onto the clusters; almost tilting objects complete twice"""
    started = time.perf_counter()
    _require_complete(graph)
    objects = rigid_indecomposables(ctx, bound, seed)
    images = [cc_of_object(x, **cc_options).polynomial for x in objects]
    compat = compatibility_graph(objects, p)
    cliques = sorted(tuple(sorted(c)) for c in nx.find_cliques(compat))
    wrong_size = [c for c in cliques if len(c) != ctx.n]
    tilting = {frozenset(images[k] for k in c) for c in cliques if len(c) == ctx.n}
    clusters = {s.cluster_set() for s in graph.nodes}
    completions = {}
    for clique in cliques:
        for almost in combinations(clique, ctx.n - 1):
            count = sum(1 for k in compat.nodes if k not in almost and all(compat.has_edge(k, a) for a in almost))
            completions[almost] = count
    bad_completions = [[objects[k].label for k in almost] for almost, c in sorted(completions.items()) if c != 2]
    passed = not wrong_size and tilting == clusters and not bad_completions
    return _report("tilting-bijection", passed, started,
                   tilting_objects=len(tilting), clusters=len(clusters), non_maximal=len(wrong_size),
                   almost_tilting=len(completions), bad_completions=bad_completions)


def kronecker_generating_series(ys: Sequence[LaurentPoly], w1: LaurentPoly) -> List[LaurentPoly]:
    """Coefficients of t^0..t^N in (1 - w_1 t + t^2) sum_{n <= N} y_n t^n"""
    if not ys:
        raise InvalidInput("need at least y_0")
    coefficients = []
    for k in range(len(ys)):
        c = ys[k]
        if k >= 1:
            c = c - w1 * ys[k - 1]
        if k >= 2:
            c = c + ys[k - 2]
        coefficients.append(c)
    return coefficients


def chi_stability(family: RepFamily, budget: Optional[int] = DEFAULT_BUDGET) -> Dict:
    """chi values from the first primes against those from the next disjoint block of primes"""
    depth = max(degree_bound(family.dims, e) + 1 for e in all_subdims(family.dims))
    first = euler_chars(family, budget=budget)
    second = euler_chars(family, primes=prime_sequence(depth, skip=depth), budget=budget)
    return {"agree": first == second,
            "chi": {",".join(map(str, e)): c for e, c in sorted(first.items())},
            "primes": prime_sequence(depth, skip=depth)}
