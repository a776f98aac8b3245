"""Quiver representations over prime fields.

Euler form and Coxeter map on dimension vectors, Hom/Ext linear algebra,
extensions from cocycles, cluster-category objects and the Kronecker
module families.
"""
import json
import logging
import random
from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from pathlib import Path
from threading import Lock
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import sympy as sp

from app import linalg
from app.errors import (
    InternalInconsistency,
    InvalidInput,
    InvalidQuiver,
    PreconditionError,
    SamplingExhausted,
)
from app.linalg import Matrix
from app.mutation import QuiverSpec, preset

logger = logging.getLogger(__name__)

DEFAULT_PRIME = 101
DEFAULT_ATTEMPTS = 200

DimVector = Tuple[int, ...]
Morphism = Tuple[Matrix, ...]


def _vec(m: sp.Matrix) -> Tuple[int, ...]:
    return tuple(int(x) for x in m)


class QuiverAlgebraContext:
    """Integer invariants of the path algebra of an acyclic quiver"""

    def __init__(self, quiver: QuiverSpec):
        if not quiver.is_acyclic():
            raise InvalidQuiver("representation theory needs an acyclic quiver")
        self.quiver = quiver
        self.n = quiver.n
        self.arrows = quiver.expanded_arrows()
        adjacency = sp.zeros(self.n, self.n)
        for source, target, mult in quiver.arrows:
            adjacency[source, target] += mult
        self.euler_matrix = sp.eye(self.n) - adjacency
        self._euler = [[int(x) for x in self.euler_matrix.row(i)] for i in range(self.n)]
        # C[i, j] = number of paths i -> j
        self.path_counts = self.euler_matrix.inv()
        if any(not x.is_integer for x in self.path_counts):
            raise InternalInconsistency("inverse Euler matrix is not integral")
        self.coxeter = -self.path_counts * self.euler_matrix.T
        self.coxeter_inverse = -self.path_counts.T * self.euler_matrix
        self.projective_dims = [_vec(self.path_counts.row(j)) for j in range(self.n)]
        self.injective_dims = [_vec(self.path_counts.col(j)) for j in range(self.n)]
        self._check_invariants()

    @classmethod
    def from_preset(cls, name: str) -> "QuiverAlgebraContext":
        return context(preset(name))

    def _check_invariants(self):
        if self.coxeter * self.coxeter_inverse != sp.eye(self.n):
            raise InternalInconsistency("Coxeter map and its inverse disagree")
        for j in range(self.n):
            if self.tau(self.projective_dims[j]) != tuple(-x for x in self.injective_dims[j]):
                raise InternalInconsistency(f"tau(dim P_{j + 1}) != -dim I_{j + 1}")

    def _check_length(self, *vectors: Sequence[int]):
        for v in vectors:
            if len(v) != self.n:
                raise InvalidInput(f"vector {tuple(v)} does not have {self.n} entries")

    def euler_form(self, d: Sequence[int], e: Sequence[int]) -> int:
        self._check_length(d, e)
        return sum(d[i] * self._euler[i][j] * e[j] for i in range(self.n) for j in range(self.n))

    def x_exponent(self, v: Sequence[int]) -> DimVector:
        """(<alpha_i, v>)_i = E v"""
        self._check_length(v)
        return tuple(sum(self._euler[i][j] * v[j] for j in range(self.n)) for i in range(self.n))

    def tau(self, e: Sequence[int]) -> DimVector:
        self._check_length(e)
        return _vec(self.coxeter * sp.Matrix(list(e)))

    def tau_inverse(self, e: Sequence[int]) -> DimVector:
        self._check_length(e)
        return _vec(self.coxeter_inverse * sp.Matrix(list(e)))

    def unit(self, i: int) -> DimVector:
        return tuple(1 if k == i else 0 for k in range(self.n))

    def __eq__(self, other) -> bool:
        return isinstance(other, QuiverAlgebraContext) and self.quiver == other.quiver

    def __hash__(self) -> int:
        return hash(self.quiver)

    def __repr__(self) -> str:
        return f"QuiverAlgebraContext(n={self.n}, arrows={self.quiver.arrows})"


@lru_cache(maxsize=None)
def context(quiver: QuiverSpec) -> QuiverAlgebraContext:
    return QuiverAlgebraContext(quiver)


def euler_form(ctx: QuiverAlgebraContext, d: Sequence[int], e: Sequence[int]) -> int:
    return ctx.euler_form(d, e)


def coxeter_tau(ctx: QuiverAlgebraContext, e: Sequence[int]) -> DimVector:
    return ctx.tau(e)


def coxeter_tau_inverse(ctx: QuiverAlgebraContext, e: Sequence[int]) -> DimVector:
    return ctx.tau_inverse(e)


@dataclass(frozen=True)
class QuiverRep:
    """Vector space F_p^dims[i] per vertex, one matrix per (expanded) arrow"""
    ctx: QuiverAlgebraContext
    p: int
    dims: DimVector
    maps: Tuple[Tuple[Tuple[int, ...], ...], ...]

    def __post_init__(self):
        if not sp.isprime(self.p):
            raise InvalidInput(f"{self.p} is not a prime")
        dims = tuple(int(d) for d in self.dims)
        if len(dims) != self.ctx.n or any(d < 0 for d in dims):
            raise InvalidInput(f"bad dimension vector {dims}")
        if len(self.maps) != len(self.ctx.arrows):
            raise InvalidInput(f"expected {len(self.ctx.arrows)} arrow matrices, got {len(self.maps)}")
        maps = []
        for (source, target), m in zip(self.ctx.arrows, self.maps):
            m = tuple(tuple(int(x) % self.p for x in row) for row in m)
            if len(m) != dims[target] or any(len(row) != dims[source] for row in m):
                raise InvalidInput(
                    f"arrow {source + 1}->{target + 1} needs a {dims[target]}x{dims[source]} matrix")
            maps.append(m)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "maps", tuple(maps))

    @classmethod
    def build(cls, ctx: QuiverAlgebraContext, p: int, dims: Sequence[int], maps: Sequence[Sequence[Sequence[int]]]):
        return cls(ctx, p, tuple(dims), tuple(tuple(tuple(r) for r in m) for m in maps))

    @classmethod
    def zero(cls, ctx: QuiverAlgebraContext, p: int) -> "QuiverRep":
        return cls.build(ctx, p, (0,) * ctx.n, [[] for _ in ctx.arrows])

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    @property
    def is_zero(self) -> bool:
        return not self.total_dim

    def matrix(self, a: int) -> Matrix:
        return [list(row) for row in self.maps[a]]

    def serialize(self) -> dict:
        return {
            "p": self.p,
            "dims": list(self.dims),
            "arrows": [
                {"source": s + 1, "target": t + 1, "matrix": self.matrix(a)}
                for a, (s, t) in enumerate(self.ctx.arrows)
            ],
        }


def representation_from_json(ctx: QuiverAlgebraContext, data: dict) -> QuiverRep:
    """Arrows are matched to the quiver's arrows in order of appearance per (source, target)"""
    try:
        p = int(data["p"])
        dims = [int(d) for d in data["dims"]]
        pending: Dict[Tuple[int, int], List] = {}
        for arrow in data["arrows"]:
            key = (int(arrow["source"]) - 1, int(arrow["target"]) - 1)
            pending.setdefault(key, []).append(arrow["matrix"])
        maps = []
        for key in ctx.arrows:
            if not pending.get(key):
                raise InvalidInput(f"missing matrix for arrow {key[0] + 1}->{key[1] + 1}")
            maps.append(pending[key].pop(0))
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"malformed representation: {exc}") from exc
    if any(pending.values()):
        raise InvalidInput("representation has arrows the quiver does not have")
    return QuiverRep.build(ctx, p, dims, maps)


def load_representation(ctx: QuiverAlgebraContext, path: str) -> QuiverRep:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInput(f"cannot read representation file {path}: {exc}") from exc
    return representation_from_json(ctx, data)


def _same_context(m: QuiverRep, n: QuiverRep):
    if m.ctx != n.ctx or m.p != n.p:
        raise InvalidInput("representations over different quivers or primes")


class _HomSystem:
    """The map delta: (f_i) -> (N_a f_s - f_t M_a)_a whose kernel is Hom(M, N) and cokernel Ext^1(M, N)"""

    def __init__(self, m: QuiverRep, n: QuiverRep):
        _same_context(m, n)
        self.m, self.n, self.p = m, n, m.p
        self.var_offsets = []
        offset = 0
        for i in range(m.ctx.n):
            self.var_offsets.append(offset)
            offset += n.dims[i] * m.dims[i]
        self.num_vars = offset
        self.row_offsets = []
        offset = 0
        for source, target in m.ctx.arrows:
            self.row_offsets.append(offset)
            offset += n.dims[target] * m.dims[source]
        self.num_rows = offset

    def var(self, i: int, r: int, c: int) -> int:
        return self.var_offsets[i] + r * self.m.dims[i] + c

    def matrix(self) -> Matrix:
        m, n, p = self.m, self.n, self.p
        rows = linalg.zeros(self.num_rows, self.num_vars)
        for a, (s, t) in enumerate(m.ctx.arrows):
            ma, na = m.maps[a], n.maps[a]
            for r in range(n.dims[t]):
                for c in range(m.dims[s]):
                    row = rows[self.row_offsets[a] + r * m.dims[s] + c]
                    for k in range(n.dims[s]):
                        row[self.var(s, k, c)] += na[r][k]
                    for k in range(m.dims[t]):
                        row[self.var(t, r, k)] -= ma[k][c]
        return linalg.reduce(rows, p)

    def morphism(self, vector: Sequence[int]) -> Morphism:
        return tuple(
            [[vector[self.var(i, r, c)] for c in range(self.m.dims[i])] for r in range(self.n.dims[i])]
            for i in range(self.m.ctx.n)
        )

    def cocycle(self, vector: Sequence[int]) -> Morphism:
        out = []
        for a, (s, t) in enumerate(self.m.ctx.arrows):
            base = self.row_offsets[a]
            out.append([[vector[base + r * self.m.dims[s] + c] for c in range(self.m.dims[s])]
                        for r in range(self.n.dims[t])])
        return tuple(out)

    def flatten_cocycle(self, cocycle: Sequence[Matrix]) -> List[int]:
        flat = [0] * self.num_rows
        for a, (s, t) in enumerate(self.m.ctx.arrows):
            for r in range(self.n.dims[t]):
                for c in range(self.m.dims[s]):
                    flat[self.row_offsets[a] + r * self.m.dims[s] + c] = int(cocycle[a][r][c]) % self.p
        return flat

    def image_basis(self) -> Tuple[Matrix, Tuple[int, ...]]:
        columns = linalg.transpose(self.matrix(), self.num_vars) if self.num_rows else [[] for _ in range(self.num_vars)]
        return linalg.rref(columns, self.num_rows, self.p)


def hom_dim(m: QuiverRep, n: QuiverRep) -> int:
    system = _HomSystem(m, n)
    return system.num_vars - linalg.rank(system.matrix(), system.num_vars, system.p)


def hom_basis(m: QuiverRep, n: QuiverRep) -> List[Morphism]:
    system = _HomSystem(m, n)
    return [system.morphism(v) for v in linalg.nullspace(system.matrix(), system.num_vars, system.p)]


def ext_dim(m: QuiverRep, n: QuiverRep, cross_check: bool = False) -> int:
    """dim Ext^1(M, N) = dim Hom(M, N) - <dim M, dim N>"""
    value = hom_dim(m, n) - m.ctx.euler_form(m.dims, n.dims)
    if value < 0:
        raise InternalInconsistency(f"negative Ext dimension {value} for dims {m.dims}, {n.dims}")
    if cross_check and value != ext_dim_cokernel(m, n):
        raise InternalInconsistency("Ext dimension from the Euler form and from cocycles disagree")
    return value


def ext_dim_cokernel(m: QuiverRep, n: QuiverRep) -> int:
    system = _HomSystem(m, n)
    return system.num_rows - linalg.rank(system.matrix(), system.num_vars, system.p)


def ext_cocycle_basis(n: QuiverRep, m: QuiverRep) -> List[Morphism]:
    """Cocycles (c_a: N_s -> M_t) whose classes form a basis of Ext^1(N, M)"""
    system = _HomSystem(n, m)
    _, pivots = system.image_basis()
    return [system.cocycle(v) for v in linalg.complement(pivots, system.num_rows)]


def is_coboundary(n: QuiverRep, m: QuiverRep, cocycle: Sequence[Matrix]) -> bool:
    system = _HomSystem(n, m)
    basis, pivots = system.image_basis()
    extended = basis + [system.flatten_cocycle(cocycle)]
    return linalg.rank(extended, system.num_rows, system.p) == len(pivots)


def build_extension(n: QuiverRep, m: QuiverRep, cocycle: Sequence[Matrix]) -> QuiverRep:
    """Middle term of 0 -> M -> B -> N -> 0 for the class of the cocycle; B_a = [[M_a, c_a], [0, N_a]]"""
    _same_context(m, n)
    ctx = m.ctx
    if len(cocycle) != len(ctx.arrows):
        raise InvalidInput(f"cocycle needs {len(ctx.arrows)} matrices")
    maps = []
    for a, (s, t) in enumerate(ctx.arrows):
        c = cocycle[a]
        if len(c) != m.dims[t] or any(len(row) != n.dims[s] for row in c):
            raise InvalidInput(f"cocycle on arrow {s + 1}->{t + 1} must be {m.dims[t]}x{n.dims[s]}")
        top = [list(m.maps[a][r]) + list(c[r]) for r in range(m.dims[t])]
        bottom = [[0] * m.dims[s] + list(n.maps[a][r]) for r in range(n.dims[t])]
        maps.append(top + bottom)
    dims = tuple(x + y for x, y in zip(m.dims, n.dims))
    return QuiverRep.build(ctx, m.p, dims, maps)


def direct_sum(m: QuiverRep, n: QuiverRep) -> QuiverRep:
    zero = [linalg.zeros(m.dims[t], n.dims[s]) for s, t in m.ctx.arrows]
    return build_extension(n, m, zero)


def subrepresentation(m: QuiverRep, bases: Sequence[Matrix]) -> QuiverRep:
    """Restriction of M to subspaces (independent row bases) that the arrows preserve"""
    maps = []
    for a, (s, t) in enumerate(m.ctx.arrows):
        moved = linalg.images(m.maps[a], bases[s], m.dims[s], m.p)
        try:
            coords = linalg.coordinates(bases[t], moved, m.dims[t], m.p)
        except InvalidInput:
            raise InvalidInput(f"subspaces are not preserved by arrow {s + 1}->{t + 1}") from None
        maps.append(linalg.transpose(coords, len(bases[t])) if coords else linalg.zeros(len(bases[t]), 0))
    return QuiverRep.build(m.ctx, m.p, [len(b) for b in bases], maps)


def quotient_representation(m: QuiverRep, bases: Sequence[Matrix]) -> QuiverRep:
    """M modulo a subrepresentation given by row bases"""
    reduced = [linalg.rref(b, m.dims[i], m.p) for i, b in enumerate(bases)]
    quotients = [linalg.complement(pivots, m.dims[i]) for i, (_, pivots) in enumerate(reduced)]
    maps = []
    for a, (s, t) in enumerate(m.ctx.arrows):
        moved = linalg.images(m.maps[a], quotients[s], m.dims[s], m.p)
        full = reduced[t][0] + quotients[t]
        coords = linalg.coordinates(full, moved, m.dims[t], m.p)
        keep = len(reduced[t][0])
        block = [row[keep:] for row in coords]
        maps.append(linalg.transpose(block, len(quotients[t])) if block else linalg.zeros(len(quotients[t]), 0))
    return QuiverRep.build(m.ctx, m.p, [len(q) for q in quotients], maps)


def kernel(m: QuiverRep, f: Morphism) -> QuiverRep:
    """Kernel of f: M -> N"""
    return subrepresentation(m, [linalg.nullspace(f[i], m.dims[i], m.p) for i in range(m.ctx.n)])


def cokernel(n: QuiverRep, f: Morphism, source_dims: Sequence[int]) -> QuiverRep:
    """Cokernel of f: M -> N, where source_dims = dim M"""
    images = [linalg.span_basis(linalg.transpose(f[i], source_dims[i]), n.dims[i], n.p) for i in range(n.ctx.n)]
    return quotient_representation(n, images)


def _paths_from(ctx: QuiverAlgebraContext, start: int) -> Dict[int, List[Tuple[int, ...]]]:
    """Paths (as arrow index tuples) starting at a vertex, grouped by end vertex"""
    found: Dict[int, List[Tuple[int, ...]]] = {i: [] for i in range(ctx.n)}
    stack = [(start, ())]
    while stack:
        vertex, path = stack.pop()
        found[vertex].append(path)
        for a, (s, t) in enumerate(ctx.arrows):
            if s == vertex:
                stack.append((t, path + (a,)))
    return {v: sorted(ps) for v, ps in found.items()}


def _paths_to(ctx: QuiverAlgebraContext, end: int) -> Dict[int, List[Tuple[int, ...]]]:
    found: Dict[int, List[Tuple[int, ...]]] = {i: [] for i in range(ctx.n)}
    stack = [(end, ())]
    while stack:
        vertex, path = stack.pop()
        found[vertex].append(path)
        for a, (s, t) in enumerate(ctx.arrows):
            if t == vertex:
                stack.append((s, (a,) + path))
    return {v: sorted(ps) for v, ps in found.items()}


def projective_maps(ctx: QuiverAlgebraContext, j: int) -> Tuple[DimVector, List[Matrix]]:
    paths = _paths_from(ctx, j)
    index = {v: {path: k for k, path in enumerate(ps)} for v, ps in paths.items()}
    maps = []
    for a, (s, t) in enumerate(ctx.arrows):
        mat = linalg.zeros(len(paths[t]), len(paths[s]))
        for k, path in enumerate(paths[s]):
            mat[index[t][path + (a,)]][k] = 1
        maps.append(mat)
    return tuple(len(paths[v]) for v in range(ctx.n)), maps


def injective_maps(ctx: QuiverAlgebraContext, j: int) -> Tuple[DimVector, List[Matrix]]:
    paths = _paths_to(ctx, j)
    index = {v: {path: k for k, path in enumerate(ps)} for v, ps in paths.items()}
    maps = []
    for a, (s, t) in enumerate(ctx.arrows):
        mat = linalg.zeros(len(paths[t]), len(paths[s]))
        for k, path in enumerate(paths[s]):
            if path and path[0] == a:
                mat[index[t][path[1:]]][k] = 1
        maps.append(mat)
    return tuple(len(paths[v]) for v in range(ctx.n)), maps


def projective_rep(ctx: QuiverAlgebraContext, j: int, p: int = DEFAULT_PRIME) -> QuiverRep:
    dims, maps = projective_maps(ctx, j)
    return QuiverRep.build(ctx, p, dims, maps)


def injective_rep(ctx: QuiverAlgebraContext, j: int, p: int = DEFAULT_PRIME) -> QuiverRep:
    dims, maps = injective_maps(ctx, j)
    return QuiverRep.build(ctx, p, dims, maps)


def simple_rep(ctx: QuiverAlgebraContext, i: int, p: int = DEFAULT_PRIME) -> QuiverRep:
    dims = ctx.unit(i)
    return QuiverRep.build(ctx, p, dims, [linalg.zeros(dims[t], dims[s]) for s, t in ctx.arrows])


def is_rigid(x: Union[QuiverRep, "ClusterObject"], p: int = DEFAULT_PRIME) -> bool:
    if isinstance(x, QuiverRep):
        return ext_dim(x, x) == 0
    return ext_dim_cluster(x, x, p) == 0


def is_exceptional(x: Union[QuiverRep, "ClusterObject"], p: int = DEFAULT_PRIME) -> bool:
    """Rigid with a one-dimensional endomorphism space"""
    if isinstance(x, QuiverRep):
        return not x.is_zero and hom_dim(x, x) == 1 and ext_dim(x, x) == 0
    if x.module is None:
        return len(x.shifted) == 1
    if x.shifted:
        return False
    return is_exceptional(x.module.at(p))


def positive_roots(ctx: QuiverAlgebraContext, bound: int) -> List[DimVector]:
    """Nonzero d with entries at most bound and <d, d> = 1, sorted"""
    roots = []
    for d in product(range(bound + 1), repeat=ctx.n):
        if any(d) and ctx.euler_form(d, d) == 1:
            roots.append(tuple(d))
    return sorted(roots, key=lambda d: (sum(d), d))


def _random_maps(ctx: QuiverAlgebraContext, dims: Sequence[int], p: int, rng: random.Random) -> List[Matrix]:
    return [[[rng.randrange(p) for _ in range(dims[s])] for _ in range(dims[t])] for s, t in ctx.arrows]


def generic_rep(ctx: QuiverAlgebraContext, d: Sequence[int], p: int = DEFAULT_PRIME,
                attempts: int = DEFAULT_ATTEMPTS, seed: int = 0) -> QuiverRep:
    """Random representation of dimension d with End = F_p, hence exceptional"""
    d = tuple(int(x) for x in d)
    if ctx.euler_form(d, d) != 1:
        raise PreconditionError(f"{d} is not a real root: <d, d> = {ctx.euler_form(d, d)}")
    if any(x < 0 for x in d):
        raise InvalidInput(f"dimension vector {d} has negative entries")
    rng = random.Random(f"{seed}:{p}:{d}")
    for attempt in range(attempts):
        rep = QuiverRep.build(ctx, p, d, _random_maps(ctx, d, p, rng))
        if hom_dim(rep, rep) == 1:
            logger.debug("generic representation of %s over F_%d after %d attempts", d, p, attempt + 1)
            return rep
    raise SamplingExhausted(f"no exceptional representation of dimension {d} over F_{p} "
                            f"in {attempts} attempts; retry with a larger prime or another seed")


class RepFamily(ABC):
    """A module given over every prime field, p -> QuiverRep, of a fixed isomorphism type"""

    def __init__(self, ctx: QuiverAlgebraContext, dims: Sequence[int], label: str):
        self.ctx = ctx
        self.dims = tuple(int(x) for x in dims)
        self.label = label
        self._cache: Dict[int, QuiverRep] = {}
        self._lock = Lock()

    def at(self, p: int) -> QuiverRep:
        with self._lock:
            if p not in self._cache:
                rep = self._build(p)
                if rep.dims != self.dims:
                    raise InternalInconsistency(f"{self.label} has dims {rep.dims} over F_{p}, expected {self.dims}")
                self._cache[p] = rep
            return self._cache[p]

    @abstractmethod
    def _build(self, p: int) -> QuiverRep:
        ...

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.label})"


class FixedFamily(RepFamily):
    """Integral matrices reduced modulo each prime"""

    def __init__(self, ctx: QuiverAlgebraContext, dims: Sequence[int], maps: Sequence[Matrix], label: str):
        super().__init__(ctx, dims, label)
        self.maps = [[list(row) for row in m] for m in maps]

    def _build(self, p: int) -> QuiverRep:
        return QuiverRep.build(self.ctx, p, self.dims, self.maps)


class GenericFamily(RepFamily):
    """Exceptional module of a real root, sampled afresh over each prime"""

    def __init__(self, ctx: QuiverAlgebraContext, dims: Sequence[int], seed: int = 0,
                 attempts: int = DEFAULT_ATTEMPTS, label: Optional[str] = None):
        super().__init__(ctx, dims, label or "M" + str(tuple(dims)))
        self.seed = seed
        self.attempts = attempts

    def _build(self, p: int) -> QuiverRep:
        return generic_rep(self.ctx, self.dims, p, self.attempts, self.seed)


class DerivedFamily(RepFamily):
    """A construction re-run over each prime"""

    def __init__(self, ctx: QuiverAlgebraContext, dims: Sequence[int], builder: Callable[[int], QuiverRep], label: str):
        super().__init__(ctx, dims, label)
        self.builder = builder

    def _build(self, p: int) -> QuiverRep:
        return self.builder(p)


def fixed_family(rep: QuiverRep, label: str) -> FixedFamily:
    return FixedFamily(rep.ctx, rep.dims, [rep.matrix(a) for a in range(len(rep.ctx.arrows))], label)


def projective_family(ctx: QuiverAlgebraContext, j: int) -> FixedFamily:
    dims, maps = projective_maps(ctx, j)
    return FixedFamily(ctx, dims, maps, f"P{j + 1}")


def injective_family(ctx: QuiverAlgebraContext, j: int) -> FixedFamily:
    dims, maps = injective_maps(ctx, j)
    return FixedFamily(ctx, dims, maps, f"I{j + 1}")


def sum_family(m: RepFamily, n: RepFamily) -> RepFamily:
    dims = tuple(a + b for a, b in zip(m.dims, n.dims))
    return DerivedFamily(m.ctx, dims, lambda p: direct_sum(m.at(p), n.at(p)), f"{m.label}+{n.label}")


@dataclass(frozen=True)
class ClusterObject:
    """M = M_0 + SP_M: a module part (or None) and shifted projectives SP_i, i in shifted"""
    ctx: QuiverAlgebraContext
    module: Optional[RepFamily] = None
    shifted: Tuple[int, ...] = ()

    def __post_init__(self):
        if any(not 0 <= i < self.ctx.n for i in self.shifted):
            raise InvalidInput(f"shifted projective index out of range in {self.shifted}")
        object.__setattr__(self, "shifted", tuple(sorted(self.shifted)))
        if self.module is not None and not any(self.module.dims):
            object.__setattr__(self, "module", None)

    @classmethod
    def shifted_projective(cls, ctx: QuiverAlgebraContext, i: int) -> "ClusterObject":
        return cls(ctx, None, (i,))

    @classmethod
    def of_module(cls, family: RepFamily) -> "ClusterObject":
        return cls(family.ctx, family)

    @property
    def module_dims(self) -> DimVector:
        return self.module.dims if self.module is not None else (0,) * self.ctx.n

    @property
    def shift_multiplicities(self) -> DimVector:
        return tuple(self.shifted.count(i) for i in range(self.ctx.n))

    @property
    def is_zero(self) -> bool:
        return self.module is None and not self.shifted

    @property
    def label(self) -> str:
        parts = [self.module.label] if self.module is not None else []
        parts += [f"SP{i + 1}" for i in self.shifted]
        return " + ".join(parts) or "0"

    def plus(self, other: "ClusterObject") -> "ClusterObject":
        if other.ctx != self.ctx:
            raise InvalidInput("cluster objects over different quivers")
        if self.module is None or other.module is None:
            module = self.module or other.module
        else:
            module = sum_family(self.module, other.module)
        return ClusterObject(self.ctx, module, self.shifted + other.shifted)

    def describe(self) -> dict:
        return {"label": self.label, "module_dims": list(self.module_dims),
                "shifted_projectives": [i + 1 for i in self.shifted]}


def _as_object(x: Union[QuiverRep, ClusterObject]) -> Tuple[ClusterObject, Optional[int]]:
    if isinstance(x, ClusterObject):
        return x, None
    return ClusterObject.of_module(fixed_family(x, "M")), x.p


def ext_dim_cluster(x: Union[QuiverRep, ClusterObject], y: Union[QuiverRep, ClusterObject],
                    p: int = DEFAULT_PRIME) -> int:
    """dim Ext^1 in the cluster category: Ext(M, N) + Ext(N, M) on modules, (dim M)_i against SP_i"""
    x, px = _as_object(x)
    y, py = _as_object(y)
    if x.ctx != y.ctx:
        raise InvalidInput("cluster objects over different quivers")
    p = px or py or p
    total = 0
    if x.module is not None and y.module is not None:
        m, n = x.module.at(p), y.module.at(p)
        total += ext_dim(m, n) + ext_dim(n, m)
    total += sum(y.module_dims[i] for i in x.shifted)
    total += sum(x.module_dims[i] for i in y.shifted)
    return total


def kronecker_context() -> QuiverAlgebraContext:
    return QuiverAlgebraContext.from_preset("kronecker")


def kronecker_maps(kind: str, n: int, point: Tuple[int, int] = (1, 0)) -> Tuple[DimVector, List[Matrix]]:
    """Dimension vector and (alpha, beta) of U^n, V^n or W^n(point) as integral matrices.

    U^n: k^n -> k^(n+1) by [I; 0] and [0; I]. V^n: k^(n+1) -> k^n by [I | 0] and [0 | I].
    W^n at (1:l): alpha = I, beta = J_n(l); at (0:1): alpha = J_n(0), beta = I.
    """
    kind = kind.upper()
    if kind == "U":
        if n < 0:
            raise InvalidInput("U^n needs n >= 0")
        alpha = [[int(r == c) for c in range(n)] for r in range(n + 1)]
        beta = [[int(r == c + 1) for c in range(n)] for r in range(n + 1)]
        return (n, n + 1), [alpha, beta]
    if kind == "V":
        if n < 0:
            raise InvalidInput("V^n needs n >= 0")
        alpha = [[int(r == c) for c in range(n + 1)] for r in range(n)]
        beta = [[int(c == r + 1) for c in range(n + 1)] for r in range(n)]
        return (n + 1, n), [alpha, beta]
    if kind == "W":
        if n < 1:
            raise InvalidInput("W^n needs n >= 1")
        identity = linalg.identity(n)
        if tuple(point) == (0, 1):
            return (n, n), [_jordan(n, 0), identity]
        if point[0] != 1:
            raise InvalidInput(f"point {tuple(point)} must be (1:l) or (0:1)")
        return (n, n), [identity, _jordan(n, point[1])]
    raise InvalidInput(f"unknown Kronecker module kind '{kind}' (expected U, V or W)")


def _jordan(n: int, eigenvalue: int) -> Matrix:
    return [[eigenvalue if r == c else int(c == r + 1) for c in range(n)] for r in range(n)]


def kronecker_module(kind: str, n: int, point: Tuple[int, int] = (1, 0), p: int = DEFAULT_PRIME) -> QuiverRep:
    dims, maps = kronecker_maps(kind, n, point)
    return QuiverRep.build(kronecker_context(), p, dims, maps)


def kronecker_family(kind: str, n: int, point: Tuple[int, int] = (1, 0)) -> FixedFamily:
    dims, maps = kronecker_maps(kind, n, point)
    return FixedFamily(kronecker_context(), dims, maps, f"{kind.upper()}{n}")
