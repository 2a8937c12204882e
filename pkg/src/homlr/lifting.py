"""alpha-derivations, the derivation induced on uce, and lifting of
automorphisms and alpha-derivations along central extensions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .commalg import matrix_from_vector
from .extensions import Extension, is_central
from .hlr import HLRMorphism, HomLieRinehart, check_morphism, is_alpha_perfect
from .linalg import Matrix, Subspace, kernel, right_inverse, unit_vector, vsub
from .report import HypothesisError, Violation
from .uce import UceAlgebra, _add_sparse, build_uce, kernel_of_u, uce_of_morphism


@dataclass(frozen=True)
class AlphaDerivation:
    D: Matrix
    sigma: Matrix


def _derivation_conditions(H: HomLieRinehart, D: Matrix, s: Matrix):
    """Yields (condition, witness, defect vector)."""
    A, n, d = H.A, H.dim, H.A.dim
    aX = [H.alpha.column(i) for i in range(n)]
    DX = [D.column(i) for i in range(n)]
    yield "commutes-alpha", (), (D @ H.alpha - H.alpha @ D).entries
    for i in range(n):
        for j in range(i + 1, n):
            lhs = D.apply(H.bracket[i][j])
            rhs = [p + q for p, q in zip(H.br(DX[i], aX[j]), H.br(aX[i], DX[j]))]
            yield "bracket", (i, j), vsub(lhs, rhs)
    for i in range(d):
        for j in range(i, d):
            lhs = s.apply(A.mult[i][j])
            rhs = [p + q for p, q in zip(A.mul(H.phi.column(i), s.column(j)),
                                         A.mul(H.phi.column(j), s.column(i)))]
            yield "symbol-derivation", (i, j), vsub(lhs, rhs)
    yield "symbol-commutes-phi", (), (s @ H.phi - H.phi @ s).entries
    for i in range(d):
        pa, sa = H.phi.column(i), s.column(i)
        for j in range(n):
            lhs = D.apply(H.action[i][j])
            rhs = [p + q for p, q in zip(H.act(pa, DX[j]), H.act(sa, aX[j]))]
            yield "A-leibniz", (i, j), vsub(lhs, rhs)
    for j in range(n):
        lhs = s @ H.anchor[j]
        rhs = H.rho(aX[j]) @ s + H.rho(DX[j]) @ H.phi
        yield "anchor", (j,), (lhs - rhs).entries


def _check_shapes(H, D, s):
    if D.shape != (H.dim, H.dim):
        raise ValueError("D must be %dx%d" % (H.dim, H.dim))
    if s.shape != (H.A.dim, H.A.dim):
        raise ValueError("symbol must be %dx%d" % (H.A.dim, H.A.dim))


def check_alpha_derivation(H: HomLieRinehart, D: Matrix, sigma: Matrix) -> list:
    _check_shapes(H, D, sigma)
    return [Violation(c, w) for c, w, v in _derivation_conditions(H, D, sigma) if any(v)]


def is_alpha_derivation(H, D, sigma) -> bool:
    return not check_alpha_derivation(H, D, sigma)


def split_derivation_vector(H: HomLieRinehart, v) -> AlphaDerivation:
    """Inverse of the flattening (row-major D, then row-major sigma)."""
    f, n, d = H.field, H.dim, H.A.dim
    return AlphaDerivation(matrix_from_vector(f, v[:n * n], n, n),
                           matrix_from_vector(f, v[n * n:], d, d))


def alpha_derivation_space(H: HomLieRinehart) -> Subspace:
    """All (D, sigma) as a subspace of k^(dim L^2 + dim A^2)."""
    f = H.field
    N = H.dim ** 2 + H.A.dim ** 2
    cols = []
    for k in range(N):
        dv = split_derivation_vector(H, unit_vector(f, N, k))
        res = []
        for _, _, v in _derivation_conditions(H, dv.D, dv.sigma):
            res.extend(v)
        cols.append(res)
    return kernel(Matrix.from_columns(f, cols, len(cols[0])))


def inner_derivation(H: HomLieRinehart, x) -> AlphaDerivation:
    """D(y) = [x, y] with zero symbol; an alpha-derivation when alpha(x) = x
    and x acts trivially on A."""
    f = H.field
    D = Matrix.from_columns(f, [H.br(x, H.basis(j)) for j in range(H.dim)], H.dim)
    return AlphaDerivation(D, Matrix.zeros(f, H.A.dim, H.A.dim))


# -- the induced derivation on uce -------------------------------------------

def uce_derivation(U: UceAlgebra, der: AlphaDerivation) -> AlphaDerivation:
    """(a,x,y) -> (sigma a, ax, ay) + (phi a, Dx, ay) + (phi a, ax, Dy)."""
    H, T = U.source, U.tensor
    bad = check_alpha_derivation(H, der.D, der.sigma)
    if bad:
        raise ValueError("not an alpha-derivation: %s" % bad[0])
    f = H.field
    D, s = der.D, der.sigma

    def image(k):
        a, x, y = T.triple(k)
        pa, ax, ay = H.phi.column(a), H.alpha.column(x), H.alpha.column(y)
        out = T.expand(s.column(a), ax, ay)
        T.expand(pa, D.column(x), ay, into=out)
        T.expand(pa, ax, D.column(y), into=out)
        return out

    for g in U.generators:
        img = {}
        for k, c in g.items():
            _add_sparse(img, image(k), c)
        if any(U.project(img)):
            raise ArithmeticError("induced derivation is not well defined")
    Du = Matrix.from_columns(f, [U.project(image(p)) for p in U.presentation.rep_columns], U.dim)
    res = AlphaDerivation(Du, s)
    bad = check_alpha_derivation(U.algebra, Du, s)
    if bad:
        raise ArithmeticError("induced map is not an alpha-derivation: %s" % bad[0])
    Ku = kernel_of_u(U)
    if not Ku.image(Du) <= Ku:
        raise ArithmeticError("induced derivation does not preserve Ker(u)")
    return res


# -- lifting -----------------------------------------------------------------

@dataclass(frozen=True)
class LiftResult:
    lift: Optional[Matrix]
    P: Subspace
    stable: bool


@dataclass(frozen=True)
class _LiftData:
    UK: UceAlgebra
    UL: UceAlgebra
    F: Matrix
    pi: Matrix
    R: Matrix
    P: Subspace


def _lift_setup(E: Extension) -> _LiftData:
    K, L = E.mid, E.base
    if not is_central(E):
        raise HypothesisError("extension is not central")
    if not is_alpha_perfect(K):
        raise HypothesisError("middle term is not alpha-perfect")
    UK, UL = build_uce(K), build_uce(L)
    F = uce_of_morphism(E.sigma, K, L).f
    if not F.is_invertible():
        raise ArithmeticError("uce(f) is not invertible")
    if UL.u.f @ F != E.sigma.f @ UK.u.f:
        raise ArithmeticError("u_L . uce(f) != f . u_K")
    pi = UK.u.f @ F.inverse()
    P = kernel(pi)
    return _LiftData(UK, UL, F, pi, right_inverse(pi), P)


def _check_induced(pi: Matrix, M: Matrix, P: Subspace):
    for b in P.basis:
        if any(pi.apply(M.apply(b))):
            raise ArithmeticError("lift is not well defined")


def lift_automorphism(E: Extension, h: HLRMorphism) -> LiftResult:
    """Lift an automorphism h of the base to the middle term when
    uce(h) preserves P = uce(f)(Ker u_K)."""
    L = E.base
    if check_morphism(L, L, h) or not h.f.is_invertible():
        raise HypothesisError("h is not an automorphism of the base")
    ld = _lift_setup(E)
    Hu = uce_of_morphism(h, L, L).f
    stable = ld.P.image(Hu) == ld.P
    if not stable:
        return LiftResult(None, ld.P, False)
    _check_induced(ld.pi, Hu, ld.P)
    lift = ld.pi @ Hu @ ld.R
    K = E.mid
    if E.sigma.f @ lift != h.f @ E.sigma.f:
        raise ArithmeticError("f . lift != h . f")
    if check_morphism(K, K, HLRMorphism(lift)):
        raise ArithmeticError("lift is not a morphism")
    Kf = E.sigma_kernel()
    if Kf.image(lift) != Kf:
        raise ArithmeticError("lift does not preserve Ker f")
    return LiftResult(lift, ld.P, True)


def lift_alpha_derivation(E: Extension, der: AlphaDerivation) -> LiftResult:
    """Lift an alpha-derivation of the base to the middle term when the
    induced derivation on uce(L) preserves P."""
    L = E.base
    bad = check_alpha_derivation(L, der.D, der.sigma)
    if bad:
        raise HypothesisError("not an alpha-derivation of the base: %s" % bad[0])
    ld = _lift_setup(E)
    Du = uce_derivation(ld.UL, der).D
    stable = ld.P.image(Du) <= ld.P
    if not stable:
        return LiftResult(None, ld.P, False)
    _check_induced(ld.pi, Du, ld.P)
    lift = ld.pi @ Du @ ld.R
    K = E.mid
    if E.sigma.f @ lift != der.D @ E.sigma.f:
        raise ArithmeticError("f . D_K != D_L . f")
    bad = check_alpha_derivation(K, lift, der.sigma)
    if bad:
        raise ArithmeticError("lift is not an alpha-derivation: %s" % bad[0])
    Kf = E.sigma_kernel()
    if not Kf.image(lift) <= Kf:
        raise ArithmeticError("lift does not preserve Ker f")
    return LiftResult(lift, ld.P, True)
