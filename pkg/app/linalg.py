"""Linear algebra over prime fields.

Matrices and vectors are plain lists of ints in 0..p-1. The heavy lifting
(row reduction, products) goes through sympy's DomainMatrix over GF(p);
empty shapes are handled here because DomainMatrix does not like them.
"""
from functools import lru_cache
from itertools import combinations, product
from typing import Iterator, List, Sequence, Tuple

from sympy import GF
from sympy.polys.matrices import DomainMatrix

from app.errors import InvalidInput

Matrix = List[List[int]]
Vector = List[int]


@lru_cache(maxsize=None)
def field(p: int):
    return GF(p)


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def reduce(rows: Sequence[Sequence[int]], p: int) -> Matrix:
    return [[int(x) % p for x in row] for row in rows]


def transpose(rows: Sequence[Sequence[int]], ncols: int) -> Matrix:
    return [[row[j] for row in rows] for j in range(ncols)]


def _domain(rows: Sequence[Sequence[int]], ncols: int, p: int) -> DomainMatrix:
    K = field(p)
    if not rows or not ncols:
        return DomainMatrix.zeros((len(rows), ncols), K)
    return DomainMatrix.from_list([[K(int(x)) for x in row] for row in rows], K)


def _rows(dm: DomainMatrix, p: int) -> Matrix:
    K = dm.domain
    return [[int(K.to_int(x)) % p for x in row] for row in dm.to_list()]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], inner: int, ncols: int, p: int) -> Matrix:
    """(len(a) x inner) times (inner x ncols)"""
    if not a or not ncols or not inner:
        return zeros(len(a), ncols)
    return _rows(_domain(a, inner, p).matmul(_domain(b, ncols, p)), p)


def rref(rows: Sequence[Sequence[int]], ncols: int, p: int) -> Tuple[Matrix, Tuple[int, ...]]:
    """Nonzero rows of the reduced echelon form, and the pivot columns"""
    if not rows or not ncols:
        return [], ()
    reduced, pivots = _domain(rows, ncols, p).rref()
    return _rows(reduced, p)[: len(pivots)], tuple(pivots)


def rank(rows: Sequence[Sequence[int]], ncols: int, p: int) -> int:
    return len(rref(rows, ncols, p)[1])


def span_basis(vectors: Sequence[Sequence[int]], dim: int, p: int) -> Matrix:
    return rref(vectors, dim, p)[0]


def nullspace(rows: Sequence[Sequence[int]], ncols: int, p: int) -> Matrix:
    """Basis of {x : A x = 0}, one vector per free column"""
    reduced, pivots = rref(rows, ncols, p)
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [0] * ncols
        v[free] = 1
        for r, c in enumerate(pivots):
            v[c] = (-reduced[r][free]) % p
        basis.append(v)
    return basis


def images(m: Sequence[Sequence[int]], vectors: Sequence[Sequence[int]], source_dim: int, p: int) -> Matrix:
    """M v for each v, with M of shape (target x source)"""
    return matmul(vectors, transpose(m, source_dim), source_dim, len(m), p)


def complement(pivots: Sequence[int], dim: int) -> Matrix:
    """Unit vectors spanning a complement of a subspace with the given pivot columns"""
    return [[1 if k == c else 0 for k in range(dim)] for c in range(dim) if c not in pivots]


def coordinates(basis: Sequence[Sequence[int]], vectors: Sequence[Sequence[int]], dim: int, p: int) -> Matrix:
    """Coefficients c with c . basis == v for each v; basis rows must be independent"""
    k = len(basis)
    if not vectors:
        return []
    if not k:
        if any(any(x % p for x in v) for v in vectors):
            raise InvalidInput("vector outside the span of an empty basis")
        return [[] for _ in vectors]
    augmented = [list(basis_col) + list(v_col) for basis_col, v_col in
                 zip(transpose(basis, dim), transpose(vectors, dim))]
    reduced, pivots = rref(augmented, k + len(vectors), p)
    if len(pivots) != k or any(c >= k for c in pivots):
        raise InvalidInput("vector outside the span of the basis")
    coords = zeros(len(vectors), k)
    for r, c in enumerate(pivots):
        for j in range(len(vectors)):
            coords[j][c] = reduced[r][k + j]
    return coords


def annihilator(basis: Sequence[Sequence[int]], dim: int, p: int) -> Matrix:
    """Linear forms vanishing on the span of basis"""
    if not basis:
        return identity(dim)
    return nullspace(basis, dim, p)


def preimage(constraints: Sequence[Tuple[Sequence[Sequence[int]], Sequence[Sequence[int]], int]],
             source_dim: int, p: int) -> Matrix:
    """Basis of the v with M v in W for every (M, W basis, target dim) constraint"""
    rows: Matrix = []
    for m, w, target_dim in constraints:
        rows.extend(matmul(annihilator(w, target_dim, p), m, target_dim, source_dim, p))
    if not rows:
        return identity(source_dim)
    return span_basis(nullspace(rows, source_dim, p), source_dim, p)


def enumerate_subspaces(p: int, m: int, e: int) -> Iterator[Matrix]:
    """Every e-dimensional subspace of F_p^m once, as its reduced echelon basis.

    Pivot columns run over all e-subsets; each entry right of a row's pivot
    that is not itself a pivot column is free.
    """
    if not 0 <= e <= m:
        raise InvalidInput(f"no {e}-dimensional subspaces of a {m}-dimensional space")
    for pivots in combinations(range(m), e):
        free = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, m) if c not in pivots]
        for values in product(range(p), repeat=len(free)):
            basis = zeros(e, m)
            for r, pc in enumerate(pivots):
                basis[r][pc] = 1
            for (r, c), x in zip(free, values):
                basis[r][c] = x
            yield basis
