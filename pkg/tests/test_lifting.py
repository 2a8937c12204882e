import pytest

from homlr import fixtures as fx
from homlr.hlr import HLRMorphism, check_morphism
from homlr.lifting import (
    AlphaDerivation, alpha_derivation_space, check_alpha_derivation, inner_derivation,
    is_alpha_derivation, lift_alpha_derivation, lift_automorphism, split_derivation_vector,
    uce_derivation,
)
from homlr.linalg import Matrix
from homlr.report import HypothesisError
from homlr.uce import build_uce, kernel_of_u

# dim of the space of pairs (D, sigma)
FROZEN = {"F1": 4, "F2": 3, "F3": 1, "F4": 2, "W": 2, "F5": 1, "F6": 11, "F6t": 5}


@pytest.mark.parametrize("name", sorted(FROZEN))
def test_derivation_space(name):
    H = fx.all_algebras()[name]
    S = alpha_derivation_space(H)
    assert S.dim == FROZEN[name]
    for b in S.basis:
        d = split_derivation_vector(H, b)
        assert is_alpha_derivation(H, d.D, d.sigma)


def test_F2_derivations_are_inner():
    # every derivation of sl2 is inner
    H = fx.F2()
    S = alpha_derivation_space(H)
    inner = [inner_derivation(H, H.basis(i)) for i in range(3)]
    for d in inner:
        assert S.contains(tuple(d.D.entries) + tuple(d.sigma.entries))


def test_non_derivation_reported():
    H = fx.F3()
    bad = check_alpha_derivation(H, Matrix.identity(H.field, 3), Matrix.zeros(H.field, 1, 1))
    assert any(v.condition == "bracket" for v in bad)


def test_uce_derivation_preserves_kernel():
    for H in (fx.F6(), fx.F6t()):
        U = build_uce(H)
        for d in fx.F6_derivations(H).values():
            Du = uce_derivation(U, d)
            assert is_alpha_derivation(U.algebra, Du.D, Du.sigma)
            assert U.u.f @ Du.D == d.D @ U.u.f
            assert kernel_of_u(U).image(Du.D) <= kernel_of_u(U)


def test_F3_lifts():
    E = fx.F3_trivial_extension()
    L = E.base
    r = lift_automorphism(E, HLRMorphism(L.alpha))
    assert r.stable and r.P.dim == 0
    assert E.sigma.f @ r.lift == L.alpha @ E.sigma.f
    d = inner_derivation(L, L.basis(2))
    r = lift_alpha_derivation(E, d)
    assert r.lift == Matrix(L.field, [[4, 0, 0], [0, -1, 0], [0, 0, 0]])
    assert E.sigma.f @ r.lift == d.D @ E.sigma.f


def test_F3_nondegenerate_extension_refused():
    with pytest.raises(HypothesisError):
        lift_automorphism(fx.F3_coboundary_extension(), HLRMorphism(fx.F3().alpha))


@pytest.mark.parametrize("twisted", [False, True])
@pytest.mark.parametrize("key,stable", [("scale", True), ("swap", False)])
def test_F6_automorphism_lifts(twisted, key, stable):
    E = fx.F6_extension(twisted=twisted)
    h = fx.F6_automorphisms()[key]
    r = lift_automorphism(E, h)
    assert r.stable == stable and r.P.dim == 2
    if stable:
        assert E.sigma.f @ r.lift == h.f @ E.sigma.f
        assert check_morphism(E.mid, E.mid, HLRMorphism(r.lift)) == []
        assert r.lift.is_invertible()
    else:
        assert r.lift is None


@pytest.mark.parametrize("twisted", [False, True])
@pytest.mark.parametrize("key,stable", [("w1_to_w2", True), ("ad_h", True),
                                        ("w2_to_w1", False)])
def test_F6_derivation_lifts(twisted, key, stable):
    E = fx.F6_extension(twisted=twisted)
    d = fx.F6_derivations(E.base)[key]
    r = lift_alpha_derivation(E, d)
    assert r.stable == stable
    if stable:
        assert E.sigma.f @ r.lift == d.D @ E.sigma.f
        assert check_alpha_derivation(E.mid, r.lift, d.sigma) == []


def test_lift_rejects_non_automorphism():
    E = fx.F6_extension()
    with pytest.raises(HypothesisError):
        lift_automorphism(E, HLRMorphism(Matrix.zeros(E.field, 7, 7)))
    with pytest.raises(HypothesisError):
        lift_alpha_derivation(E, AlphaDerivation(Matrix.identity(E.field, 7),
                                                 Matrix.zeros(E.field, 1, 1)))
