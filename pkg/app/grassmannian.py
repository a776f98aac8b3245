"""Subrepresentation counts over prime fields and Euler characteristics of quiver Grassmannians.

Counting walks the quiver in topological order. In forward mode the subspace
at each vertex with outgoing arrows is enumerated, starting from the span of
the images already forced into it; sinks are then counted in closed form.
Reverse mode does the same from the sinks up, bounding each choice by the
preimages of the later choices, and closes the sources. Either way every
subrepresentation is counted exactly once.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import sympy as sp

from app import linalg
from app.errors import BudgetExceeded, InvalidInput, NonIntegralInterpolation
from app.linalg import enumerate_subspaces
from app.repcore import DimVector, QuiverRep, RepFamily

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 10_000_000

q = sp.Symbol("q")


def gaussian_binomial(m: int, e: int, base: int) -> int:
    """Number of e-dimensional subspaces of F_base^m"""
    if e < 0 or e > m:
        return 0
    num, den = 1, 1
    for i in range(e):
        num *= base ** (m - i) - 1
        den *= base ** (i + 1) - 1
    return num // den


def degree_bound(m: Sequence[int], e: Sequence[int]) -> int:
    """Dimension of the product of ordinary Grassmannians containing Gr_e"""
    return sum(ei * (mi - ei) for mi, ei in zip(m, e))


def all_subdims(m: Sequence[int]) -> List[DimVector]:
    return [tuple(e) for e in product(*(range(mi + 1) for mi in m))]


@dataclass(frozen=True)
class _Plan:
    forward: bool
    enumerated: Tuple[int, ...]
    closed: Tuple[int, ...]


def _plans(rep: QuiverRep) -> Tuple[_Plan, _Plan]:
    arrows = rep.ctx.arrows
    order = rep.ctx.quiver.topological_order()
    has_out = {s for s, _ in arrows}
    has_in = {t for _, t in arrows}
    forward = _Plan(True, tuple(v for v in order if v in has_out), tuple(v for v in order if v not in has_out))
    reverse = _Plan(False, tuple(v for v in reversed(order) if v in has_in),
                    tuple(v for v in order if v not in has_in))
    return forward, reverse


def _cost(plan: _Plan, dims: Sequence[int], wanted: Iterable[DimVector], p: int) -> int:
    choices = {tuple(e[v] for v in plan.enumerated) for e in wanted}
    total = 0
    for choice in choices:
        term = 1
        for v, ev in zip(plan.enumerated, choice):
            term *= gaussian_binomial(dims[v], ev, p)
        total += term
    return total


def choose_plan(rep: QuiverRep, wanted: Sequence[DimVector]) -> Tuple[_Plan, int]:
    """Cheaper of the two directions, with its estimated number of enumerated tuples"""
    costed = [(_cost(plan, rep.dims, wanted, rep.p), plan) for plan in _plans(rep)]
    cost, plan = min(costed, key=lambda pair: pair[0])
    return plan, cost


class _Counter:
    def __init__(self, rep: QuiverRep, plan: _Plan, wanted: Sequence[DimVector]):
        self.rep = rep
        self.p = rep.p
        self.plan = plan
        self.wanted = list(wanted)
        self.incoming = {v: [(a, s) for a, (s, t) in enumerate(rep.ctx.arrows) if t == v] for v in range(rep.ctx.n)}
        self.outgoing = {v: [(a, t) for a, (s, t) in enumerate(rep.ctx.arrows) if s == v] for v in range(rep.ctx.n)}
        self.table: Dict[DimVector, int] = {e: 0 for e in self.wanted}

    def run(self) -> Dict[DimVector, int]:
        self._descend(0, {}, self.wanted)
        return self.table

    def _forced(self, v: int, bases: Dict[int, linalg.Matrix]) -> linalg.Matrix:
        vectors = []
        for a, s in self.incoming[v]:
            vectors.extend(linalg.images(self.rep.maps[a], bases[s], self.rep.dims[s], self.p))
        return vectors

    def _allowed(self, v: int, bases: Dict[int, linalg.Matrix]) -> linalg.Matrix:
        constraints = [(self.rep.maps[a], bases[t], self.rep.dims[t]) for a, t in self.outgoing[v]]
        return linalg.preimage(constraints, self.rep.dims[v], self.p)

    def _bounds(self, v: int, bases: Dict[int, linalg.Matrix]) -> Tuple[linalg.Matrix, linalg.Matrix]:
        """(basis of the forced part, vectors spanning a free complement to choose from)"""
        if self.plan.forward:
            lower, pivots = linalg.rref(self._forced(v, bases), self.rep.dims[v], self.p)
            return lower, linalg.complement(pivots, self.rep.dims[v])
        return [], self._allowed(v, bases)

    def _descend(self, k: int, bases: Dict[int, linalg.Matrix], candidates: List[DimVector]):
        if not candidates:
            return
        if k == len(self.plan.enumerated):
            self._close(bases, candidates)
            return
        v = self.plan.enumerated[k]
        dim_v = self.rep.dims[v]
        lower, free = self._bounds(v, bases)
        for ev in sorted({e[v] for e in candidates}):
            extra = ev - len(lower)
            if extra < 0 or extra > len(free):
                continue
            narrowed = [e for e in candidates if e[v] == ev]
            for sub in enumerate_subspaces(self.p, len(free), extra):
                bases[v] = lower + linalg.matmul(sub, free, len(free), dim_v, self.p)
                self._descend(k + 1, bases, narrowed)
        bases.pop(v, None)

    def _close(self, bases: Dict[int, linalg.Matrix], candidates: List[DimVector]):
        ranges = {}
        for v in self.plan.closed:
            if self.plan.forward:
                ranges[v] = (linalg.rank(self._forced(v, bases), self.rep.dims[v], self.p), self.rep.dims[v])
            else:
                ranges[v] = (0, len(self._allowed(v, bases)))
        for e in candidates:
            count = 1
            for v, (low, high) in ranges.items():
                count *= gaussian_binomial(high - low, e[v] - low, self.p)
                if not count:
                    break
            self.table[e] += count


def _check_subdims(rep: QuiverRep, e: Sequence[int]):
    if len(e) != len(rep.dims) or any(x < 0 or x > m for x, m in zip(e, rep.dims)):
        raise InvalidInput(f"dimension vector {tuple(e)} does not fit inside {rep.dims}")


def subrep_count_table(rep: QuiverRep, wanted: Optional[Iterable[Sequence[int]]] = None,
                       budget: Optional[int] = DEFAULT_BUDGET) -> Dict[DimVector, int]:
    """|Gr_e(M)(F_p)| for every e in wanted (default: all e <= dim M) in one pass"""
    wanted = all_subdims(rep.dims) if wanted is None else sorted({tuple(e) for e in wanted})
    for e in wanted:
        _check_subdims(rep, e)
    plan, cost = choose_plan(rep, wanted)
    if budget is not None and cost > budget:
        raise BudgetExceeded(f"counting subrepresentations of {rep.dims} over F_{rep.p} "
                             f"needs about {cost} enumerated tuples, budget is {budget}")
    logger.debug("counting subrepresentations of %s over F_%d (%s, ~%d tuples)",
                 rep.dims, rep.p, "forward" if plan.forward else "reverse", cost)
    return _Counter(rep, plan, wanted).run()


def count_subreps(rep: QuiverRep, e: Sequence[int], budget: Optional[int] = DEFAULT_BUDGET) -> int:
    e = tuple(e)
    return subrep_count_table(rep, [e], budget)[e]


@dataclass(frozen=True)
class CountingPolynomial:
    """Integer polynomial in q, coefficients from degree 0 up"""
    coefficients: Tuple[int, ...]

    @classmethod
    def interpolate(cls, points: Sequence[Tuple[int, int]]) -> "CountingPolynomial":
        expr = sp.interpolate([(sp.Integer(x), sp.Integer(y)) for x, y in points], q)
        coeffs = sp.Poly(expr, q).all_coeffs()[::-1]
        if any(not c.is_integer for c in coeffs):
            raise NonIntegralInterpolation(f"counts {list(points)} interpolate to {sp.expand(expr)}")
        poly = cls(tuple(int(c) for c in coeffs))
        for x, y in points:
            if poly(x) != y:
                raise NonIntegralInterpolation(f"interpolation misses the point ({x}, {y})")
        return poly

    def __call__(self, value: int) -> int:
        return sum(c * value ** k for k, c in enumerate(self.coefficients))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def value_at_one(self) -> int:
        return sum(self.coefficients)

    def to_sympy(self) -> sp.Expr:
        return sum((c * q ** k for k, c in enumerate(self.coefficients)), sp.Integer(0))


def prime_sequence(count: int, skip: int = 0) -> List[int]:
    """count consecutive primes, starting after the first skip primes"""
    return [int(sp.prime(k)) for k in range(skip + 1, skip + count + 1)]


def counting_polynomials(family: RepFamily, wanted: Optional[Iterable[Sequence[int]]] = None,
                         primes: Optional[Sequence[int]] = None, budget: Optional[int] = DEFAULT_BUDGET,
                         parallel: bool = False) -> Dict[DimVector, CountingPolynomial]:
    """Counting polynomial of Gr_e for each wanted e, each from its own degree bound + 1 primes"""
    dims = family.dims
    wanted = all_subdims(dims) if wanted is None else sorted({tuple(e) for e in wanted})
    needed = {e: degree_bound(dims, e) + 1 for e in wanted}
    depth = max(needed.values(), default=0)
    if primes is None:
        primes = prime_sequence(depth)
    elif len(primes) < depth or len(set(primes)) != len(primes):
        raise InvalidInput(f"need {depth} distinct primes, got {list(primes)}")
    jobs = [(p, [e for e in wanted if needed[e] > k]) for k, p in enumerate(primes[:depth])]

    if budget is not None:
        total = sum(choose_plan(family.at(p), es)[1] for p, es in jobs)
        if total > budget:
            raise BudgetExceeded(f"Grassmannians of {family.label} need about {total} enumerated tuples "
                                 f"over primes {list(primes[:depth])}, budget is {budget}")

    def run(job):
        p, es = job
        return subrep_count_table(family.at(p), es, budget=None)

    if parallel:
        with ThreadPoolExecutor() as pool:
            tables = list(pool.map(run, jobs))
    else:
        tables = [run(job) for job in jobs]

    result = {}
    for e in wanted:
        points = [(p, table[e]) for (p, _), table in zip(jobs, tables) if e in table]
        result[e] = CountingPolynomial.interpolate(points)
    return result


def euler_chars(family: RepFamily, wanted: Optional[Iterable[Sequence[int]]] = None,
                primes: Optional[Sequence[int]] = None, budget: Optional[int] = DEFAULT_BUDGET,
                parallel: bool = False) -> Dict[DimVector, int]:
    polys = counting_polynomials(family, wanted, primes, budget, parallel)
    return {e: poly.value_at_one() for e, poly in polys.items()}


def euler_char(family: RepFamily, e: Sequence[int], degree: Optional[int] = None,
               primes: Optional[Sequence[int]] = None, budget: Optional[int] = DEFAULT_BUDGET) -> int:
    """chi(Gr_e(M)) as the counting polynomial evaluated at q = 1"""
    e = tuple(e)
    minimum = degree_bound(family.dims, e)
    if degree is None:
        degree = minimum
    elif degree < minimum:
        raise InvalidInput(f"degree bound {degree} is below {minimum} for e = {e}")
    primes = prime_sequence(degree + 1) if primes is None else list(primes)
    if len(set(primes)) < degree + 1:
        raise InvalidInput(f"need {degree + 1} distinct primes, got {primes}")
    points = [(p, count_subreps(family.at(p), e, budget)) for p in primes[: degree + 1]]
    return CountingPolynomial.interpolate(points).value_at_one()
