import random

import pytest

from app.errors import InvalidInput, InvalidQuiver, PreconditionError
from app.mutation import PRESETS, QuiverSpec
from app.repcore import (
    ClusterObject,
    GenericFamily,
    QuiverAlgebraContext,
    QuiverRep,
    build_extension,
    cokernel,
    context,
    coxeter_tau,
    coxeter_tau_inverse,
    direct_sum,
    ext_cocycle_basis,
    ext_dim,
    ext_dim_cluster,
    ext_dim_cokernel,
    generic_rep,
    hom_basis,
    hom_dim,
    injective_rep,
    is_coboundary,
    is_exceptional,
    is_rigid,
    kernel,
    kronecker_family,
    kronecker_module,
    positive_roots,
    projective_family,
    projective_rep,
    representation_from_json,
    simple_rep,
)

P = 101


@pytest.fixture
def a2():
    return context(PRESETS["a2"])


@pytest.fixture
def a3():
    return context(PRESETS["a3"])


@pytest.fixture
def kronecker():
    return context(PRESETS["kronecker"])


def test_projective_and_injective_dims(a2, a3):
    assert a2.projective_dims == [(1, 1), (0, 1)]
    assert a2.injective_dims == [(1, 0), (1, 1)]
    assert a3.projective_dims[0] == (1, 1, 1)
    assert a3.injective_dims[2] == (1, 1, 1)


def test_kronecker_invariants(kronecker):
    assert kronecker.euler_form((1, 0), (0, 1)) == -2
    assert kronecker.x_exponent((1, 0)) == (1, 0)
    assert kronecker.tau((1, 2)) == (-1, 0)
    # AR orbit of the postprojectives: tau U^(n+2) = U^n
    for n in range(4):
        assert kronecker.tau((n + 2, n + 3)) == (n, n + 1)
    assert coxeter_tau_inverse(kronecker, (0, 1)) == (2, 3)


def test_coxeter_tau_on_a2():
    a2 = context(PRESETS["a2"])
    assert coxeter_tau(a2, (1, 1)) == (-1, 0)
    assert coxeter_tau(a2, (0, 1)) == (-1, -1)
    assert coxeter_tau_inverse(a2, coxeter_tau(a2, (1, 0))) == (1, 0)


def test_tau_of_projectives_is_minus_injectives(a3):
    for j in range(3):
        assert a3.tau(a3.projective_dims[j]) == tuple(-x for x in a3.injective_dims[j])


def test_cyclic_quiver_has_no_context():
    with pytest.raises(InvalidQuiver):
        QuiverAlgebraContext(QuiverSpec(3, ((0, 1, 1), (1, 2, 1), (2, 0, 1))))


def test_rep_validation(a2):
    with pytest.raises(InvalidInput):
        QuiverRep.build(a2, 4, (1, 1), [[[1]]])
    with pytest.raises(InvalidInput):
        QuiverRep.build(a2, P, (1, 1), [[[1, 0]]])


def test_hom_and_ext_of_simples(a2):
    s1, s2 = simple_rep(a2, 0), simple_rep(a2, 1)
    assert hom_dim(s1, s2) == 0
    assert ext_dim(s1, s2) == 1
    assert ext_dim(s2, s1) == 0
    assert hom_dim(projective_rep(a2, 0), s1) == 1


def test_extension_of_simples_is_the_projective(a2):
    s1, s2 = simple_rep(a2, 0), simple_rep(a2, 1)
    cocycles = ext_cocycle_basis(s1, s2)
    assert len(cocycles) == 1
    assert not is_coboundary(s1, s2, cocycles[0])
    middle = build_extension(s1, s2, cocycles[0])
    assert middle.dims == (1, 1)
    assert is_exceptional(middle)
    assert hom_dim(projective_rep(a2, 0), middle) == 1


def test_kronecker_extension_of_w1_by_u0_is_u1():
    w1, u0, u1 = (kronecker_module(kind, n) for kind, n in (("W", 1), ("U", 0), ("U", 1)))
    cocycles = ext_cocycle_basis(w1, u0)
    assert len(cocycles) == 1
    middle = build_extension(w1, u0, cocycles[0])
    assert middle.dims == u1.dims == (1, 2)
    # U1 is the only exceptional module of dimension (1, 2)
    assert is_exceptional(middle)
    assert hom_dim(middle, u1) == hom_dim(u1, middle) == 1


def test_split_extension_is_decomposable(a2):
    total = direct_sum(simple_rep(a2, 0), simple_rep(a2, 1))
    assert total.dims == (1, 1)
    assert hom_dim(total, total) == 2
    assert not is_exceptional(total)


def test_kernel_and_cokernel(a2):
    p2, p1 = projective_rep(a2, 1), projective_rep(a2, 0)
    (f,) = hom_basis(p2, p1)
    assert kernel(p2, f).dims == (0, 0)
    quotient = cokernel(p1, f, p2.dims)
    assert quotient.dims == (1, 0)
    assert hom_dim(quotient, simple_rep(a2, 0)) == 1


def test_hom_ext_agree_on_random_pairs(a3, kronecker):
    rng = random.Random(7)
    for ctx in (a3, kronecker):
        for _ in range(20):
            reps = []
            for _ in range(2):
                dims = [rng.randint(0, 2) for _ in range(ctx.n)]
                maps = [[[rng.randrange(5) for _ in range(dims[s])] for _ in range(dims[t])] for s, t in ctx.arrows]
                reps.append(QuiverRep.build(ctx, 5, dims, maps))
            m, n = reps
            assert hom_dim(m, n) - ext_dim(m, n) == ctx.euler_form(m.dims, n.dims)
            assert ext_dim(m, n, cross_check=True) == ext_dim_cokernel(m, n)


def test_positive_roots(a3, kronecker):
    assert len(positive_roots(a3, 2)) == 6
    assert positive_roots(kronecker, 2) == [(0, 1), (1, 0), (1, 2), (2, 1)]


def test_generic_rep_is_exceptional(a3):
    rep = generic_rep(a3, (1, 1, 1), P, seed=3)
    assert is_exceptional(rep)
    assert generic_rep(a3, (1, 1, 1), P, seed=3) == rep


def test_generic_rep_needs_a_real_root(kronecker):
    with pytest.raises(PreconditionError):
        generic_rep(kronecker, (1, 1), P)


def test_generic_family_per_prime(a2):
    family = GenericFamily(a2, (1, 1))
    assert family.at(2).dims == (1, 1)
    assert family.at(3).p == 3
    assert family.at(2) is family.at(2)


def test_kronecker_modules():
    assert kronecker_module("U", 2).dims == (2, 3)
    assert kronecker_module("V", 2).dims == (3, 2)
    assert is_exceptional(kronecker_module("U", 3))
    assert is_exceptional(kronecker_module("V", 1))
    w1 = kronecker_module("W", 1)
    assert hom_dim(w1, w1) == 1 and ext_dim(w1, w1) == 1
    assert not is_rigid(w1)
    assert kronecker_module("W", 1, point=(0, 1)).dims == (1, 1)
    with pytest.raises(InvalidInput):
        kronecker_family("X", 1)
    with pytest.raises(InvalidInput):
        kronecker_family("W", 0)


def test_cluster_objects(a2):
    sp1 = ClusterObject.shifted_projective(a2, 0)
    p2 = ClusterObject.of_module(projective_family(a2, 1))
    assert sp1.label == "SP1"
    assert sp1.plus(p2).label == "P2 + SP1"
    assert ClusterObject(a2).is_zero
    assert is_exceptional(sp1)
    # SP_i against M sees (dim M)_i
    assert ext_dim_cluster(sp1, ClusterObject.of_module(projective_family(a2, 0))) == 1
    assert ext_dim_cluster(sp1, p2) == 0


def test_representation_json_round_trip(kronecker):
    rep = kronecker_module("W", 2, point=(1, 3))
    assert representation_from_json(kronecker, rep.serialize()) == rep


def test_representation_json_missing_arrow(a2):
    with pytest.raises(InvalidInput):
        representation_from_json(a2, {"p": 5, "dims": [1, 1], "arrows": []})


def test_injective_rep_socle(a3):
    i3 = injective_rep(a3, 2)
    assert i3.dims == (1, 1, 1)
    assert hom_dim(simple_rep(a3, 2), i3) == 1
