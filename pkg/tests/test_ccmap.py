import pytest

from app.ccmap import (
    GENERATING_SERIES_NOTE,
    cc_by_definition,
    cc_from_table,
    cc_of_module,
    cc_of_object,
    chi_stability,
    compatibility_graph,
    exchange_partners,
    kronecker_generating_series,
    rigid_indecomposables,
    tilting_bijection_check,
    variable_bijection_check,
    verify_denominator,
    verify_exchange,
    verify_object_denominator,
    x_power,
)
from app.errors import PreconditionError
from app.laurent import LaurentPoly
from app.mutation import PRESETS, Seed, explore, kronecker_sequence, matrix_from_quiver
from app.repcore import ClusterObject, GenericFamily, context, kronecker_family, positive_roots, sum_family
from app.utils import ObjectSpecParser

x1 = LaurentPoly.variable(2, 0)
x2 = LaurentPoly.variable(2, 1)


@pytest.fixture
def a2():
    return context(PRESETS["a2"])


@pytest.fixture
def kronecker():
    return context(PRESETS["kronecker"])


def parse(ctx, text):
    return ObjectSpecParser(ctx).parse(text) if text else ClusterObject(ctx)


def test_x_power(kronecker):
    assert x_power(kronecker, (1, 0)) == x1
    assert x_power(kronecker, (0, 1)) == LaurentPoly(2, {(-2, 1): 1})


def test_cc_of_a2_modules(a2):
    assert cc_of_module(GenericFamily(a2, (0, 1))).polynomial == (1 + x1).exact_div(x2)
    assert cc_of_module(GenericFamily(a2, (1, 0))).polynomial == (1 + x2).exact_div(x1)
    result = cc_of_module(GenericFamily(a2, (1, 1)))
    assert result.polynomial == (1 + x1 + x2).exact_div(x1 * x2)
    assert result.denominator.denominator == (1, 1)


def test_cc_of_shifted_projectives(kronecker):
    assert cc_of_object(ClusterObject.shifted_projective(kronecker, 0)).polynomial == x1
    assert cc_of_object(ClusterObject(kronecker)).polynomial == LaurentPoly.one(2)


def test_cc_of_kronecker_modules():
    y = kronecker_sequence(5)
    for n in range(3):
        assert cc_of_module(kronecker_family("U", n)).polynomial == y[n + 2]
    w1 = cc_of_module(kronecker_family("W", 1)).polynomial
    assert w1 == (1 + x1 ** 2 + x2 ** 2).exact_div(x1 * x2)


def test_duality_of_preinjectives():
    for n in range(3):
        u = cc_of_module(kronecker_family("U", n)).polynomial
        v = cc_of_module(kronecker_family("V", n)).polynomial
        assert v == u.swap_variables([1, 0])


def test_formula_equivalence():
    for family in (kronecker_family("U", 2), kronecker_family("W", 1)):
        result = cc_of_module(family)
        assert cc_by_definition(family.ctx, family.dims, result.chi_table) == \
            cc_from_table(family.ctx, family.dims, result.chi_table)


def test_serialized_result(a2):
    data = cc_of_module(GenericFamily(a2, (1, 1))).serialize()
    assert data["denominator"] == [1, 1]
    assert data["object"]["module_dims"] == [1, 1]
    assert [[0, 0], 1] in data["chi_table"]


def test_verify_denominator_on_roots():
    ctx = context(PRESETS["a3"])
    for d in positive_roots(ctx, 2):
        assert verify_denominator(GenericFamily(ctx, d)).passed
    assert verify_denominator(kronecker_family("V", 2)).passed


def test_verify_denominator_needs_exceptional():
    with pytest.raises(PreconditionError):
        verify_denominator(kronecker_family("W", 1))


def test_object_denominator(a2):
    x = parse(a2, "SP:1 + S:2")
    report = verify_object_denominator(x)
    assert report.passed
    assert report.witnesses["delta"] == [-1, 1]


@pytest.mark.parametrize("quiver,m,n,b,b_prime", [
    ("a2", "S:1", "S:2", "P:1", None),
    ("a2", "SP:1", "S:1", None, "SP:2"),
    ("a2", "SP:2", "S:2", "SP:1", None),
    ("a2", "SP:2", "P:1", None, "S:1"),
    ("a3", "S:3", "I:2", "P:1", "S:1"),
    ("a3", "P:2", "S:1", "P:1", "S:3"),
    ("kronecker", "SP:1", "kronecker:U:1", "kronecker:U:0 + kronecker:U:0", None),
])
def test_exchange_relations(quiver, m, n, b, b_prime):
    ctx = context(PRESETS[quiver])
    report = verify_exchange(*(parse(ctx, s) for s in (m, n, b, b_prime)))
    assert report.passed, report.witnesses


def test_w1_exchange_with_postprojectives(kronecker):
    w1 = ClusterObject.of_module(kronecker_family("W", 1))
    below = ClusterObject.shifted_projective(kronecker, 0)
    for n in range(2):
        u = ClusterObject.of_module(kronecker_family("U", n))
        above = ClusterObject.of_module(kronecker_family("U", n + 1))
        assert verify_exchange(w1, u, above, below).passed
        below = u


def test_exchange_needs_one_dimensional_ext(a2):
    with pytest.raises(PreconditionError):
        verify_exchange(parse(a2, "S:1"), parse(a2, "S:1"), parse(a2, "S:1"), parse(a2, None))


def test_partners_of_simples(a2):
    b, b_prime = exchange_partners(parse(a2, "S:1"), parse(a2, "S:2"))
    assert b.module_dims == (1, 1) and not b.shifted
    assert b_prime.is_zero


def test_partners_with_a_shifted_projective(a2):
    b, b_prime = exchange_partners(parse(a2, "SP:1"), parse(a2, "S:1"))
    assert b.is_zero
    assert b_prime.module is None and b_prime.shifted == (1,)

    b, b_prime = exchange_partners(parse(a2, "SP:2"), parse(a2, "S:2"))
    assert b.module is None and b.shifted == (0,)
    assert b_prime.is_zero

    b, b_prime = exchange_partners(parse(a2, "P:1"), parse(a2, "SP:2"))
    assert b.is_zero
    assert b_prime.module_dims == (1, 0) and not b_prime.shifted


def test_derived_partners_satisfy_exchange():
    ctx = context(PRESETS["a3"])
    objects = rigid_indecomposables(ctx, 2)
    checked = 0
    for i, m in enumerate(objects):
        for n in objects[i + 1:]:
            try:
                b, b_prime = exchange_partners(m, n)
            except PreconditionError:
                continue
            assert verify_exchange(m, n, b, b_prime).passed
            checked += 1
    assert checked > 0


def test_bijections_for_a2(a2):
    graph = explore(Seed.initial(matrix_from_quiver(PRESETS["a2"])))
    assert variable_bijection_check(a2, graph, 2).passed
    report = tilting_bijection_check(a2, graph, 2)
    assert report.passed
    assert report.witnesses["tilting_objects"] == 5


def test_compatibility_graph(a2):
    objects = rigid_indecomposables(a2, 2)
    graph = compatibility_graph(objects)
    assert graph.number_of_nodes() == 5
    # the exchange graph of A_2 is a pentagon, so is the compatibility graph
    assert graph.number_of_edges() == 5


def test_bijection_needs_a_complete_graph(kronecker):
    graph = explore(Seed.initial(matrix_from_quiver(PRESETS["kronecker"])), max_seeds=5)
    with pytest.raises(PreconditionError):
        variable_bijection_check(kronecker, graph, 2)


def test_generating_series():
    ys = kronecker_sequence(8)
    w1 = (1 + x1 ** 2 + x2 ** 2).exact_div(x1 * x2)
    coefficients = kronecker_generating_series(ys, w1)
    assert coefficients[0] == x2
    assert coefficients[1] == -(1 + x2 ** 2).exact_div(x1)
    assert all(c.is_zero for c in coefficients[2:])
    assert "x_2 - y_{-1} t" in GENERATING_SERIES_NOTE


def test_chi_stability():
    stability = chi_stability(kronecker_family("U", 1))
    assert stability["agree"]
    assert stability["chi"]["0,1"] == 2


def test_cc_map_is_multiplicative_on_direct_sums():
    u1, w1 = kronecker_family("U", 1), kronecker_family("W", 1)
    product = cc_of_module(u1).polynomial * cc_of_module(w1).polynomial
    assert cc_of_module(sum_family(u1, w1)).polynomial == product
    both = ClusterObject.of_module(u1).plus(ClusterObject.of_module(w1))
    assert cc_of_object(both).polynomial == product


def test_tilting_bijection_for_a3():
    ctx = context(PRESETS["a3"])
    graph = explore(Seed.initial(matrix_from_quiver(PRESETS["a3"])))
    report = tilting_bijection_check(ctx, graph, 2)
    assert report.passed, report.witnesses
    assert report.witnesses["tilting_objects"] == 14
    assert report.witnesses["clusters"] == 14


@pytest.mark.slow
def test_cc_of_u4_matches_mutation():
    y = kronecker_sequence(6)
    u4 = cc_of_module(kronecker_family("U", 4), budget=None).polynomial
    assert u4 == y[6]
    v4 = cc_of_module(kronecker_family("V", 4), budget=None).polynomial
    assert v4 == u4.swap_variables([1, 0])
