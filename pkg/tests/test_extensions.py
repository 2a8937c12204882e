import random

import pytest

from homlr import fixtures as fx
from homlr.cohomology import (cochain_vector, extension_from_cocycle, make_left_module,
                              trivial_module)
from homlr.extensions import (
    Extension, are_equivalent, central_lifts, check_extension, compose_central,
    equivalence_map, find_A_split_section, find_central_splitting, identity_extension,
    is_alpha_central, is_central, is_extension,
)
from homlr.hlr import HLRMorphism, check_morphism
from homlr.linalg import Matrix
from homlr.report import HypothesisError
from homlr.uce import build_uce, uce_extension
from seeds import coboundary_extension


def test_fixture_extensions_are_central():
    exts = [fx.heisenberg_extension(), fx.F3_trivial_extension(), fx.F3_coboundary_extension(),
            fx.F6_extension(), fx.F6_extension(twisted=True)]
    for E in exts:
        assert check_extension(E) == []
        assert is_central(E) and is_alpha_central(E)


def test_identity_extension():
    E = identity_extension(fx.F2())
    assert is_extension(E) and is_central(E)


def test_broken_exactness_reported():
    E = fx.heisenberg_extension()
    bad = Extension(E.ker, E.mid, E.base, HLRMorphism(Matrix.zeros(E.field, 3, 1)), E.sigma)
    conds = {v.condition for v in check_extension(bad)}
    assert {"i-injective", "exactness"} <= conds


def test_split_extension_has_section():
    E = fx.cocycle_extension(fx.F2(), {}, 2)
    sec, unique = find_central_splitting(E)
    assert sec is not None and unique
    assert E.sigma.f @ sec.f == Matrix.identity(E.field, 3)


def test_coboundary_extension_of_perfect_splits_uniquely():
    E = coboundary_extension(fx.F2(), 2, random.Random(3))
    sec, unique = find_central_splitting(E)
    assert sec is not None and unique
    assert check_morphism(E.base, E.mid, sec) == []


def test_abelian_base_splitting_not_unique():
    # F1 is abelian, so splittings differ by any map F1 -> k
    E = fx.cocycle_extension(fx.F1(), {}, 1)
    sec, unique = find_central_splitting(E)
    assert sec is not None and not unique


def test_A_split_section():
    E = fx.heisenberg_extension()
    tau = find_A_split_section(E)
    assert tau is not None
    assert E.sigma.f @ tau == Matrix.identity(E.field, 2)


def _noncentral():
    # sl2 (+) sl2 over sl2 with the adjoint module as kernel
    H = fx.F2()
    ident = [[tuple(1 if r == c else 0 for r in range(3)) for c in range(3)]]
    adj = make_left_module(H, 3, ident, [[H.bracket[x][y] for y in range(3)]
                                         for x in range(3)], H.alpha)
    return extension_from_cocycle(H, adj, cochain_vector(H, adj, 2, {}))


def test_noncentral_detected():
    E = _noncentral()
    assert is_extension(E)
    assert not is_central(E)
    with pytest.raises(HypothesisError):
        find_central_splitting(E)
    with pytest.raises(HypothesisError):
        central_lifts(E.base, E, Matrix.identity(E.field, 3))


def test_compose_F6_stack():
    E = fx.F6_extension()
    U = build_uce(E.mid)
    inner = uce_extension(U)
    C = compose_central(E, inner)
    assert is_extension(C) and is_alpha_central(C)
    assert C.ker.dim == 3 and C.mid.dim == 10


def test_compose_requires_matching_base():
    with pytest.raises(ValueError):
        compose_central(fx.F6_extension(), fx.heisenberg_extension())


def test_equivalence():
    H = fx.F1()
    M = trivial_module(H)
    E1 = extension_from_cocycle(H, M, cochain_vector(H, M, 2, {(0, 1): (1,)}))
    E2 = extension_from_cocycle(H, M, cochain_vector(H, M, 2, {(0, 1): (2,)}))
    # same kernel map required: scaling the cocycle is not an equivalence
    assert not are_equivalent(E1, E2)
    F = equivalence_map(E1, E1)
    assert F is not None and F.is_invertible()


def test_cohomologous_equivalent_on_F6():
    E0 = fx.cocycle_extension(fx.F6(), {}, 1)
    E1 = coboundary_extension(fx.F6(), 1, random.Random(11))
    assert are_equivalent(E0, E1)
