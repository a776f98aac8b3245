import json

import pytest

from app.errors import InvalidInput, InvalidQuiver, PreconditionError
from app.laurent import LaurentPoly, denominator_vector
from app.mutation import (
    PRESETS,
    ExchangeGraph,
    ExchangeMatrix,
    QuiverSpec,
    Seed,
    acyclic_seed_subgraph,
    canonical_seed,
    cluster_variables,
    exchange_graph_is_regular,
    explore,
    kronecker_sequence,
    labeled_seed_count,
    load_quiver,
    matrix_from_quiver,
    matrix_mutate,
    mutate_sequence,
    preset,
    quiver_from_json,
    quiver_from_matrix,
    seed_determined_by_cluster,
    seed_mutate,
    variable_support_subgraph,
)

x1 = LaurentPoly.variable(2, 0)
x2 = LaurentPoly.variable(2, 1)


def initial(name):
    return Seed.initial(matrix_from_quiver(PRESETS[name]))


def test_matrix_from_quiver_kronecker():
    assert matrix_from_quiver(PRESETS["kronecker"]).to_list() == [[0, 2], [-2, 0]]


def test_quiver_matrix_round_trip():
    for name in ("a3", "d4", "kronecker"):
        assert quiver_from_matrix(matrix_from_quiver(PRESETS[name])) == PRESETS[name]


def test_matrix_must_be_antisymmetric():
    with pytest.raises(InvalidQuiver):
        ExchangeMatrix(((0, 1), (1, 0)))


def test_quiver_rejects_loops_and_two_cycles():
    with pytest.raises(InvalidQuiver):
        QuiverSpec(2, ((0, 0, 1),))
    with pytest.raises(InvalidQuiver):
        QuiverSpec(2, ((0, 1, 1), (1, 0, 1)))


def test_matrix_mutation_is_an_involution():
    b = matrix_from_quiver(PRESETS["d4"])
    for j in range(4):
        assert matrix_mutate(matrix_mutate(b, j), j) == b


def test_matrix_mutation_rule():
    # a3: 1 -> 2 -> 3; mutating at 2 reverses both arrows and adds 1 -> 3
    mutated = matrix_mutate(matrix_from_quiver(PRESETS["a3"]), 1)
    assert mutated.to_list() == [[0, -1, 1], [1, 0, -1], [-1, 1, 0]]


def test_kronecker_mutation():
    seed = seed_mutate(initial("kronecker"), 1)
    assert seed.cluster == (x1, (x1 ** 2 + 1).exact_div(x2))
    assert seed.matrix.to_list() == [[0, -2], [2, 0]]


def test_seed_mutation_is_an_involution():
    seed = initial("a2")
    assert mutate_sequence(seed, [0, 0]) == seed


def test_pentagon_periodicity():
    seed = mutate_sequence(initial("a2"), [0, 1, 0, 1, 0])
    assert seed.cluster_set() == frozenset({x1, x2})


def test_direction_out_of_range():
    with pytest.raises(InvalidInput):
        seed_mutate(initial("a2"), 2)


def test_canonical_seed_is_relabeling_invariant():
    seed = mutate_sequence(initial("a3"), [0, 2, 1])
    relabeled = Seed(tuple(reversed(seed.cluster)), seed.matrix.permuted([2, 1, 0]))
    assert canonical_seed(seed) == canonical_seed(relabeled)


@pytest.mark.parametrize("name,clusters,variables", [
    ("a1", 2, 2),
    ("a2", 5, 5),
    ("a3", 14, 9),
    ("a4", 42, 14),
])
def test_finite_type_counts(name, clusters, variables):
    graph = explore(initial(name))
    assert graph.complete
    assert len(graph.nodes) == clusters
    assert len(cluster_variables(graph)) == variables
    assert exchange_graph_is_regular(graph)


def test_a2_variables():
    graph = explore(initial("a2"))
    expected = {
        x1,
        x2,
        (1 + x2).exact_div(x1),
        (1 + x1).exact_div(x2),
        (1 + x1 + x2).exact_div(x1 * x2),
    }
    assert set(cluster_variables(graph)) == expected


def test_labeled_seed_counts():
    assert labeled_seed_count(initial("a1")) == 2
    assert labeled_seed_count(initial("a2")) == 10
    assert labeled_seed_count(initial("kronecker"), max_seeds=20) is None


def test_parallel_exploration_is_identical():
    serial = explore(initial("a3"))
    parallel = explore(initial("a3"), parallel=True)
    assert serial.serialize() == parallel.serialize()


def test_truncated_exploration():
    graph = explore(initial("kronecker"), max_seeds=20)
    assert not graph.complete
    assert len(graph.nodes) == 20
    with pytest.raises(PreconditionError):
        seed_determined_by_cluster(graph)


@pytest.mark.parametrize("name", ["a3", "a4", "d4"])
def test_connectivity_properties(name):
    graph = explore(initial(name))
    for v in cluster_variables(graph):
        assert variable_support_subgraph(graph, v).is_connected
    acyclic = acyclic_seed_subgraph(graph)
    assert acyclic.nodes and acyclic.is_connected
    assert seed_determined_by_cluster(graph)


def test_kronecker_sequence_recurrence():
    ys = kronecker_sequence(8)
    assert ys[0] == x2 and ys[1] == x1
    for n in range(1, 8):
        assert ys[n - 1] * ys[n + 1] == ys[n] ** 2 + 1


def test_preset_lookup():
    assert preset("A3") == PRESETS["a3"]
    with pytest.raises(InvalidInput):
        preset("e9")


def test_quiver_from_json_is_one_based(tmp_path):
    path = tmp_path / "kronecker.json"
    path.write_text(json.dumps({"n": 2, "arrows": [[1, 2, 2]]}))
    assert load_quiver(str(path)) == PRESETS["kronecker"]
    assert quiver_from_json({"n": 2, "matrix": [[0, 2], [-2, 0]]}) == PRESETS["kronecker"]


def test_malformed_quiver_json():
    with pytest.raises(InvalidInput):
        quiver_from_json({"arrows": [[1, 2]]})


def test_quiver_json_size_must_match_n():
    with pytest.raises(InvalidInput):
        quiver_from_json({"n": 3, "matrix": [[0, 2], [-2, 0]]})


def test_d4_exploration():
    graph = explore(initial("d4"))
    assert graph.complete
    assert len(graph.nodes) == 50
    variables = cluster_variables(graph)
    assert len(variables) == 16
    # every non-initial variable has a non-negative, non-zero denominator vector
    initial_vars = set(initial("d4").cluster)
    denominators = {denominator_vector(v) for v in variables if v not in initial_vars}
    assert len(denominators) == 12
    assert all(min(d) >= 0 and any(d) for d in denominators)
    assert exchange_graph_is_regular(graph)


def test_regularity_detects_a_repeated_neighbour():
    graph = explore(initial("a2"))
    first, second = sorted({j for i, j, _ in graph.edges if i == 0})
    # node 0 reaches `first` in both directions and loses its edge to `second`
    edges = [e for e in graph.edges if {e[0], e[1]} != {0, second}]
    edges = [(0, first, 0) if e[0] == 0 else e for e in edges] + [(0, first, 1)]
    broken = ExchangeGraph(nodes=graph.nodes, edges=edges, complete=True, depths=graph.depths)
    assert not exchange_graph_is_regular(broken)


def test_depth_cap_with_a_closed_frontier_is_complete():
    graph = explore(initial("a1"), max_depth=1)
    assert graph.complete
    assert len(graph.nodes) == 2
    assert exchange_graph_is_regular(graph)


def test_depth_cap_with_an_open_frontier_is_truncated():
    graph = explore(initial("kronecker"), max_depth=3)
    assert not graph.complete
    assert max(graph.depths) == 3
