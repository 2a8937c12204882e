import pytest

from homlr import fixtures as fx
from homlr.field import GF, QQ
from homlr.hlr import check_morphism, identity_morphism
from homlr.linalg import Matrix, Subspace
from homlr.report import HypothesisError
from homlr.tensor import (
    abelian_tensor, bracket_pair, build_tensor, central_extension_pairs, check_compatible,
    check_pairing, compare_uce_tensor, projections, self_action, symmetry_iso, tensor_exactness,
    tensor_map, trivial_pair, universal_pairing_factorization,
)
from homlr.uce import build_uce
from oracles import tensor_dim_oracle

SELF_DIMS = {"F1": 4, "F2": 3, "F3": 3, "F4": 8, "W": 4, "F5": 4, "F6": 10, "F6t": 10}


def _F6_pair():
    H = fx.F6()
    V = Subspace.span(H.field, [H.basis(i) for i in range(3, 7)], 7)
    return bracket_pair(H, Subspace.full(H.field, 7), V)[0]


@pytest.mark.parametrize("name", sorted(SELF_DIMS))
def test_self_tensor_dims(name):
    P = self_action(fx.all_algebras()[name])
    assert check_compatible(P) == []
    T = build_tensor(P)
    assert T.dim == SELF_DIMS[name]
    if name not in ("F6", "F6t"):
        assert tensor_dim_oracle(P) == T.dim


def test_other_pairs_against_oracle():
    for P, d in ((_F6_pair(), 7), (trivial_pair(fx.F1(), fx.F2()), 0),
                 (trivial_pair(fx.F1(), fx.F1()), 4), (self_action(fx.F2(GF(5))), 3)):
        assert build_tensor(P).dim == d == tensor_dim_oracle(P)


def test_trivial_pair_needs_zero_anchor():
    assert check_compatible(trivial_pair(fx.W(), fx.W()))


@pytest.mark.parametrize("name", ["F1", "F2", "F3", "F4", "W", "F5"])
def test_projections(name):
    H = fx.all_algebras()[name]
    T = build_tensor(self_action(H))
    pi1, pi2 = projections(T)
    assert check_morphism(T.algebra, H, pi1) == []
    assert check_morphism(T.algebra, H, pi2) == []


def test_universal_pairing():
    H = fx.F2()
    P = self_action(H)
    T = build_tensor(P)
    g = H.bracket
    assert check_pairing(P, H, g) == []
    Phi = universal_pairing_factorization(T, H, g)
    assert Phi.f == projections(T)[1].f
    for x in range(3):
        for m in range(3):
            assert Phi.f.apply(T.canonical_pairing()[x][m]) == tuple(g[x][m])


def test_bad_pairing_rejected():
    H = fx.F2()
    T = build_tensor(self_action(H))
    g = [[H.basis(0) for _ in range(3)] for _ in range(3)]
    assert check_pairing(T.pair, H, g)
    with pytest.raises(HypothesisError):
        universal_pairing_factorization(T, H, g)


@pytest.mark.parametrize("which", ["F6_bracket", "F2_self", "F1_F2_trivial"])
def test_symmetry_iso(which):
    P = {"F6_bracket": _F6_pair, "F2_self": lambda: self_action(fx.F2()),
         "F1_F2_trivial": lambda: trivial_pair(fx.F1(), fx.F2())}[which]()
    S = symmetry_iso(P)
    back = symmetry_iso(P.swapped())
    assert (back.f @ S.f) == Matrix.identity(QQ, build_tensor(P).dim)


@pytest.mark.parametrize("name", ["F2", "F3", "F6", "F6t"])
def test_compare_uce_tensor(name):
    H = fx.all_algebras()[name]
    Phi = compare_uce_tensor(H)
    T = build_tensor(self_action(H))
    assert Phi.f.is_invertible()
    assert projections(T)[1].f @ Phi.f == build_uce(H).u.f


def test_compare_uce_tensor_needs_perfect():
    with pytest.raises(HypothesisError):
        compare_uce_tensor(fx.F1())


def test_abelian_tensor_F1():
    P = trivial_pair(fx.F1(), fx.F1())
    Ab, Phi = abelian_tensor(P)
    assert Ab.dim == build_tensor(P).dim == 4
    assert Phi.f.rank() == 4


def test_abelian_tensor_restrictions():
    with pytest.raises(ValueError):
        abelian_tensor(self_action(fx.F2()))
    with pytest.raises(ValueError):
        abelian_tensor(trivial_pair(fx.F4(), fx.F4()))


def test_tensor_map_functorial():
    H = fx.F6()
    P = self_action(H)
    a = fx.F6_automorphisms()["scale"].f
    b = fx.F6_automorphisms()["swap"].f
    Fa, Fb = tensor_map(P, P, a, a).f, tensor_map(P, P, b, b).f
    assert tensor_map(P, P, a @ b, a @ b).f == Fa @ Fb
    eye = identity_morphism(H).f
    assert tensor_map(P, P, eye, eye).f == Matrix.identity(QQ, 10)


@pytest.mark.parametrize("kind", ["split", "cocycle"])
def test_tensor_exactness(kind):
    E = fx.cocycle_extension(fx.F2(), {}, 1) if kind == "split" else fx.heisenberg_extension()
    P1, P2, P3 = central_extension_pairs(E)
    assert tensor_exactness(P1, P2, P3, E.i.f, E.sigma.f) == []


def test_tensor_exactness_needs_exact_input():
    E = fx.heisenberg_extension()
    P1, P2, P3 = central_extension_pairs(E)
    with pytest.raises(HypothesisError):
        tensor_exactness(P1, P2, P3, Matrix.zeros(QQ, 3, 1), E.sigma.f)
