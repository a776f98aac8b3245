"""Seeds, matrix and quiver mutation, and exchange graph exploration"""
import json
import logging
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from app.errors import InvalidInput, InvalidQuiver, PreconditionError
from app.laurent import LaurentPoly

logger = logging.getLogger(__name__)

DEFAULT_MAX_SEEDS = 100_000
DEFAULT_MAX_DEPTH = 64


@dataclass(frozen=True)
class ExchangeMatrix:
    """Antisymmetric integer matrix B"""
    entries: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        n = len(rows)
        for i, row in enumerate(rows):
            if len(row) != n:
                raise InvalidQuiver(f"row {i + 1} has {len(row)} entries, expected {n}")
            for j in range(n):
                if row[j] != -rows[j][i]:
                    raise InvalidQuiver(f"matrix is not antisymmetric at ({i + 1}, {j + 1})")

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, index: Tuple[int, int]) -> int:
        i, j = index
        return self.entries[i][j]

    def mutate(self, j: int) -> "ExchangeMatrix":
        return matrix_mutate(self, j)

    def permuted(self, order: Sequence[int]) -> "ExchangeMatrix":
        """Conjugate by the relabeling new index a -> old index order[a]"""
        return ExchangeMatrix(tuple(tuple(self.entries[i][k] for k in order) for i in order))

    def to_list(self) -> List[List[int]]:
        return [list(row) for row in self.entries]


@dataclass(frozen=True)
class QuiverSpec:
    """Vertices 0..n-1 with arrows (source, target, multiplicity)"""
    n: int
    arrows: Tuple[Tuple[int, int, int], ...]

    def __post_init__(self):
        merged: Dict[Tuple[int, int], int] = {}
        for source, target, mult in self.arrows:
            source, target, mult = int(source), int(target), int(mult)
            if not (0 <= source < self.n and 0 <= target < self.n):
                raise InvalidQuiver(f"arrow {source + 1}->{target + 1} leaves the vertex range")
            if source == target:
                raise InvalidQuiver(f"loop at vertex {source + 1}")
            if mult < 0:
                raise InvalidQuiver("arrow multiplicities must be non-negative")
            if mult:
                merged[(source, target)] = merged.get((source, target), 0) + mult
        for (source, target) in merged:
            if (target, source) in merged:
                raise InvalidQuiver(f"2-cycle between vertices {source + 1} and {target + 1}")
        object.__setattr__(self, "arrows", tuple((s, t, m) for (s, t), m in sorted(merged.items())))

    def digraph(self) -> nx.MultiDiGraph:
        graph = nx.MultiDiGraph()
        graph.add_nodes_from(range(self.n))
        for source, target, mult in self.arrows:
            for _ in range(mult):
                graph.add_edge(source, target)
        return graph

    def is_acyclic(self) -> bool:
        return nx.is_directed_acyclic_graph(self.digraph())

    def topological_order(self) -> List[int]:
        if not self.is_acyclic():
            raise InvalidQuiver("quiver has an oriented cycle")
        return list(nx.lexicographical_topological_sort(self.digraph()))

    def expanded_arrows(self) -> Tuple[Tuple[int, int], ...]:
        """One (source, target) pair per arrow, parallel arrows repeated"""
        return tuple((s, t) for s, t, m in self.arrows for _ in range(m))


def matrix_mutate(b: ExchangeMatrix, j: int) -> ExchangeMatrix:
    n = b.n
    if not 0 <= j < n:
        raise InvalidInput(f"mutation direction {j + 1} out of range 1..{n}")
    rows = []
    for i in range(n):
        row = []
        for k in range(n):
            if i == j or k == j:
                row.append(-b[i, k])
            else:
                bij, bjk = b[i, j], b[j, k]
                row.append(b[i, k] + (abs(bij) * bjk + bij * abs(bjk)) // 2)
        rows.append(tuple(row))
    return ExchangeMatrix(tuple(rows))


def quiver_from_matrix(b: ExchangeMatrix) -> QuiverSpec:
    arrows = [(i, k, b[i, k]) for i in range(b.n) for k in range(b.n) if b[i, k] > 0]
    return QuiverSpec(b.n, tuple(arrows))


def matrix_from_quiver(q: QuiverSpec) -> ExchangeMatrix:
    rows = [[0] * q.n for _ in range(q.n)]
    for source, target, mult in q.arrows:
        rows[source][target] += mult
        rows[target][source] -= mult
    return ExchangeMatrix(tuple(tuple(r) for r in rows))


@dataclass(frozen=True)
class Seed:
    """Cluster (u_1..u_n) together with its exchange matrix"""
    cluster: Tuple[LaurentPoly, ...]
    matrix: ExchangeMatrix

    def __post_init__(self):
        object.__setattr__(self, "cluster", tuple(self.cluster))
        if len(self.cluster) != self.matrix.n:
            raise InvalidInput(f"cluster of size {len(self.cluster)} with a {self.matrix.n}x{self.matrix.n} matrix")
        if len(set(self.cluster)) != len(self.cluster):
            raise InvalidInput("cluster entries must be pairwise distinct")

    @classmethod
    def initial(cls, matrix: ExchangeMatrix) -> "Seed":
        n = matrix.n
        return cls(tuple(LaurentPoly.variable(n, i) for i in range(n)), matrix)

    @property
    def n(self) -> int:
        return self.matrix.n

    def mutate(self, j: int) -> "Seed":
        return seed_mutate(self, j)

    def key(self) -> Tuple:
        return (tuple(u.key() for u in self.cluster), self.matrix.entries)

    def cluster_set(self) -> frozenset:
        return frozenset(self.cluster)

    def serialize(self) -> dict:
        return {
            "cluster": [u.serialize() for u in self.cluster],
            "matrix": self.matrix.to_list(),
        }


def seed_mutate(s: Seed, j: int) -> Seed:
    """Exchange relation u_j u_j' = prod_{b_ij>0} u_i^b_ij + prod_{b_ij<0} u_i^-b_ij"""
    n = s.n
    if not 0 <= j < n:
        raise InvalidInput(f"mutation direction {j + 1} out of range 1..{n}")
    positive = LaurentPoly.one(n)
    negative = LaurentPoly.one(n)
    for i in range(n):
        b = s.matrix[i, j]
        if b > 0:
            positive = positive * s.cluster[i] ** b
        elif b < 0:
            negative = negative * s.cluster[i] ** (-b)
    exchanged = (positive + negative).exact_div(s.cluster[j])
    cluster = s.cluster[:j] + (exchanged,) + s.cluster[j + 1:]
    return Seed(cluster, matrix_mutate(s.matrix, j))


def mutate_sequence(s: Seed, directions: Sequence[int]) -> Seed:
    for j in directions:
        s = seed_mutate(s, j)
    return s


def canonical_seed(s: Seed) -> Seed:
    """Representative of s up to simultaneous relabeling.

    Cluster entries are distinct, so sorting them by their canonical key picks
    the unique relabeling whose serialized cluster is smallest.
    """
    order = sorted(range(s.n), key=lambda i: s.cluster[i].key())
    return Seed(tuple(s.cluster[i] for i in order), s.matrix.permuted(order))


@dataclass
class ExchangeGraph:
    nodes: List[Seed]
    edges: List[Tuple[int, int, int]]
    complete: bool
    depths: List[int] = field(default_factory=list)

    @property
    def n(self) -> int:
        return self.nodes[0].n

    def undirected_edges(self) -> List[Tuple[int, int]]:
        return sorted({(min(i, j), max(i, j)) for i, j, _ in self.edges})

    def to_networkx(self, nodes: Optional[Sequence[int]] = None) -> nx.Graph:
        graph = nx.Graph()
        keep = set(range(len(self.nodes))) if nodes is None else set(nodes)
        graph.add_nodes_from(sorted(keep))
        graph.add_edges_from((i, j) for i, j in self.undirected_edges() if i in keep and j in keep)
        return graph

    def serialize(self) -> dict:
        return {
            "complete": self.complete,
            "nodes": [s.serialize() for s in self.nodes],
            "edges": [list(e) for e in self.edges],
        }


def _expand(seed: Seed) -> List[Seed]:
    return [canonical_seed(seed_mutate(seed, k)) for k in range(seed.n)]


def explore(initial: Seed, max_seeds: int = DEFAULT_MAX_SEEDS, max_depth: int = DEFAULT_MAX_DEPTH,
            parallel: bool = False) -> ExchangeGraph:
    """Breadth-first closure of the initial seed under mutation.

    Nodes are canonical seeds. Hitting a cap marks the graph truncated; it never raises.
    Nodes at max_depth are still mutated once so that edges back into the graph
    are recorded; only an unseen neighbour there marks the graph truncated.
    """
    if max_seeds < 1:
        raise InvalidInput("max_seeds must be at least 1")
    start = canonical_seed(initial)
    index = {start.key(): 0}
    nodes, depths, edges = [start], [0], []
    truncated = False
    frontier = [0]
    executor = ThreadPoolExecutor() if parallel else None
    try:
        while frontier:
            mapper = executor.map if executor else map
            children = list(mapper(_expand, [nodes[i] for i in frontier]))
            next_frontier = []
            for i, kids in zip(frontier, children):
                capped = depths[i] >= max_depth
                for k, child in enumerate(kids):
                    key = child.key()
                    if key not in index:
                        if capped or len(nodes) >= max_seeds:
                            truncated = True
                            continue
                        index[key] = len(nodes)
                        nodes.append(child)
                        depths.append(depths[i] + 1)
                        next_frontier.append(index[key])
                    edges.append((i, index[key], k))
            logger.debug("explored depth %d: %d nodes", depths[frontier[0]] + 1, len(nodes))
            frontier = next_frontier
    finally:
        if executor:
            executor.shutdown()
    if truncated:
        logger.warning("exploration truncated at %d seeds", len(nodes))
    return ExchangeGraph(nodes=nodes, edges=edges, complete=not truncated, depths=depths)


def labeled_seed_count(initial: Seed, max_seeds: int = DEFAULT_MAX_SEEDS) -> Optional[int]:
    """Number of labeled seeds reachable by mutation, or None when the cap is hit"""
    seen = {initial.key()}
    queue = deque([initial])
    while queue:
        seed = queue.popleft()
        for k in range(seed.n):
            child = seed_mutate(seed, k)
            key = child.key()
            if key in seen:
                continue
            if len(seen) >= max_seeds:
                return None
            seen.add(key)
            queue.append(child)
    return len(seen)


def cluster_variables(g: ExchangeGraph) -> List[LaurentPoly]:
    return sorted({u for s in g.nodes for u in s.cluster}, key=LaurentPoly.key)


def _require_complete(g: ExchangeGraph):
    if not g.complete:
        raise PreconditionError("the exchange graph is truncated")


@dataclass
class Subgraph:
    nodes: List[int]
    edges: List[Tuple[int, int]]
    is_connected: bool


def _induced(g: ExchangeGraph, keep: List[int]) -> Subgraph:
    graph = g.to_networkx(keep)
    connected = bool(keep) and nx.is_connected(graph)
    return Subgraph(nodes=keep, edges=sorted(graph.edges()), is_connected=connected)


def variable_support_subgraph(g: ExchangeGraph, v: LaurentPoly) -> Subgraph:
    _require_complete(g)
    keep = [i for i, s in enumerate(g.nodes) if v in s.cluster]
    if not keep:
        raise PreconditionError(f"{v} is not a cluster variable of this graph")
    return _induced(g, keep)


def acyclic_seed_subgraph(g: ExchangeGraph) -> Subgraph:
    _require_complete(g)
    keep = [i for i, s in enumerate(g.nodes) if quiver_from_matrix(s.matrix).is_acyclic()]
    return _induced(g, keep)


def seed_determined_by_cluster(g: ExchangeGraph) -> bool:
    _require_complete(g)
    return len({s.cluster_set() for s in g.nodes}) == len(g.nodes)


def exchange_graph_is_regular(g: ExchangeGraph) -> bool:
    """Every seed has exactly n distinct neighbours and the graph is connected"""
    _require_complete(g)
    graph = g.to_networkx()
    graph.remove_edges_from(list(nx.selfloop_edges(graph)))
    return all(d == g.n for _, d in graph.degree()) and nx.is_connected(graph)


def _linear(n: int) -> QuiverSpec:
    return QuiverSpec(n, tuple((i, i + 1, 1) for i in range(n - 1)))


PRESETS: Dict[str, QuiverSpec] = {
    **{f"a{n}": _linear(n) for n in range(1, 7)},
    "d4": QuiverSpec(4, ((0, 1, 1), (1, 2, 1), (1, 3, 1))),
    "kronecker": QuiverSpec(2, ((0, 1, 2),)),
}


def preset(name: str) -> QuiverSpec:
    try:
        return PRESETS[name.lower()]
    except KeyError:
        raise InvalidInput(f"unknown quiver preset '{name}' (known: {', '.join(PRESETS)})") from None


def quiver_from_json(data: dict) -> QuiverSpec:
    """Accepts {n, matrix} or {n, arrows: [[source, target, multiplicity], ...]} with 1-based vertices"""
    try:
        n = int(data["n"])
        if "matrix" in data:
            matrix = ExchangeMatrix(tuple(tuple(r) for r in data["matrix"]))
            if matrix.n != n:
                raise InvalidQuiver(f"n = {n} but the matrix is {matrix.n} x {matrix.n}")
            return quiver_from_matrix(matrix)
        arrows = tuple((int(a[0]) - 1, int(a[1]) - 1, int(a[2]) if len(a) > 2 else 1) for a in data["arrows"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"malformed quiver description: {exc}") from exc
    return QuiverSpec(n, arrows)


def load_quiver(path: str) -> QuiverSpec:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInput(f"cannot read quiver file {path}: {exc}") from exc
    return quiver_from_json(data)


def kronecker_sequence(n_max: int) -> List[LaurentPoly]:
    """y_0..y_{n_max} from alternating mutations mu_2, mu_1 of the Kronecker seed"""
    seed = Seed.initial(matrix_from_quiver(PRESETS["kronecker"]))
    ys = [seed.cluster[1], seed.cluster[0]]
    direction = 1
    while len(ys) <= n_max:
        seed = seed_mutate(seed, direction)
        ys.append(seed.cluster[direction])
        direction = 1 - direction
    return ys[: n_max + 1]
