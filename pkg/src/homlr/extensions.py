"""Short exact sequences of hom-Lie-Rinehart algebras over a fixed (A, phi):
exactness, centrality, sections and splittings, composition, equivalence."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .commalg import matrix_from_vector
from .hlr import (HLRMorphism, HomLieRinehart, center, check_morphism, identity_morphism,
                  is_perfect, restrict, zero_algebra)
from .linalg import Matrix, Subspace, kernel, right_inverse, solve_affine, span
from .report import HypothesisError, Violation, prefixed


@dataclass(frozen=True)
class Extension:
    """ker --i--> mid --sigma--> base."""

    ker: HomLieRinehart
    mid: HomLieRinehart
    base: HomLieRinehart
    i: HLRMorphism
    sigma: HLRMorphism

    @property
    def field(self):
        return self.mid.field

    def kernel_space(self) -> Subspace:
        """Im(i) inside mid."""
        return span(self.field, self.i.f.columns(), self.mid.dim)

    def sigma_kernel(self) -> Subspace:
        return kernel(self.sigma.f)


def _check_shapes(E: Extension):
    if E.i.f.shape != (E.mid.dim, E.ker.dim):
        raise ValueError("i must be %dx%d" % (E.mid.dim, E.ker.dim))
    if E.sigma.f.shape != (E.base.dim, E.mid.dim):
        raise ValueError("sigma must be %dx%d" % (E.base.dim, E.mid.dim))


def check_extension(E: Extension) -> list:
    _check_shapes(E)
    out = []
    if E.ker.A != E.mid.A or E.base.A != E.mid.A or E.ker.phi != E.mid.phi \
            or E.base.phi != E.mid.phi:
        out.append(Violation("common-base", (), "all three algebras must share (A, phi)"))
        return out
    if E.i.f.rank() != E.ker.dim:
        out.append(Violation("i-injective"))
    if E.sigma.f.rank() != E.base.dim:
        out.append(Violation("sigma-surjective"))
    if E.kernel_space() != E.sigma_kernel():
        out.append(Violation("exactness", (), "Im(i) != Ker(sigma)"))
    out += prefixed("i", check_morphism(E.ker, E.mid, E.i))
    out += prefixed("sigma", check_morphism(E.mid, E.base, E.sigma))
    for j in range(E.ker.dim):
        if not E.ker.anchor[j].is_zero():
            out.append(Violation("kernel-anchor", (j,)))
    return out


def is_extension(E: Extension) -> bool:
    return not check_extension(E)


def is_central(E: Extension) -> bool:
    return E.kernel_space() <= center(E.mid, verify=False)


def is_alpha_central(E: Extension) -> bool:
    twisted = span(E.field, [E.mid.tw(c) for c in E.i.f.columns()], E.mid.dim)
    return twisted <= center(E.mid, verify=False)


def identity_extension(H: HomLieRinehart) -> Extension:
    return Extension(zero_algebra(H.A, H.phi), H, H,
                     HLRMorphism(Matrix.zeros(H.field, H.dim, 0)), identity_morphism(H))


# -- sections ----------------------------------------------------------------

def _solve_maps(field, rows: int, cols: int, residual):
    """Affine solve for an unknown rows x cols matrix (row-major unknowns)."""
    def res(v):
        return residual(matrix_from_vector(field, v, rows, cols))

    x, hom = solve_affine(field, rows * cols, res)
    part = None if x is None else matrix_from_vector(field, x, rows, cols)
    return part, hom


def _entries(*ms):
    out = []
    for m in ms:
        out.extend(m.entries)
    return out


def _a_linear_defect(src: HomLieRinehart, dst: HomLieRinehart, T: Matrix) -> list:
    out = []
    for i in range(src.A.dim):
        e = src.A.basis(i)
        for j in range(src.dim):
            a = T.apply(src.action[i][j])
            b = dst.act(e, T.column(j))
            out.extend(x - y for x, y in zip(a, b))
    return out


@lru_cache(maxsize=64)
def find_A_split_section(E: Extension):
    """Linear tau with sigma tau = id, tau A-linear and tau alpha = alpha tau; or None."""
    f = E.field
    eye = Matrix.identity(f, E.base.dim)

    def residual(T):
        return _entries(E.sigma.f @ T - eye, T @ E.base.alpha - E.mid.alpha @ T) \
            + _a_linear_defect(E.base, E.mid, T)

    part, _ = _solve_maps(f, E.mid.dim, E.base.dim, residual)
    return part


def central_lifts(src: HomLieRinehart, E: Extension, base_map: Matrix):
    """Morphisms F: src -> E.mid with sigma F = base_map.

    For a central extension the bracket condition
    F[x, y] = [F0 x, F0 y] only depends on sigma F, so the whole problem
    is linear.  Returns ``(particular or None, homogeneous Subspace)``; the
    homogeneous part is given as row-major matrices.
    """
    if not is_central(E):
        raise HypothesisError("extension is not central")
    f = E.field
    s = right_inverse(E.sigma.f)
    F0 = s @ base_map
    n = src.dim
    targets = {}
    for x in range(n):
        for y in range(x + 1, n):
            targets[(x, y)] = E.mid.br(F0.column(x), F0.column(y))

    def residual(F):
        r = _entries(E.sigma.f @ F - base_map, F @ src.alpha - E.mid.alpha @ F)
        r += _a_linear_defect(src, E.mid, F)
        for (x, y), t in targets.items():
            r.extend(a - b for a, b in zip(F.apply(src.bracket[x][y]), t))
        return r

    return _solve_maps(f, E.mid.dim, n, residual)


@lru_cache(maxsize=64)
def find_central_splitting(E: Extension):
    """``(section or None, unique)`` for a central extension."""
    if not is_central(E):
        raise HypothesisError("extension is not central")
    part, hom = central_lifts(E.base, E, Matrix.identity(E.field, E.base.dim))
    sec = None if part is None else HLRMorphism(part)
    if sec is not None and check_morphism(E.base, E.mid, sec):
        raise ArithmeticError("splitting solver returned a non-morphism")
    return sec, hom.dim == 0


# -- composition -------------------------------------------------------------

def compose_central(outer: Extension, inner: Extension) -> Extension:
    """Given outer: M -> K -> L and inner: N -> L' -> K, the sequence
    Ker -> L' -> L along sigma_outer . sigma_inner.

    When K is perfect the result is checked to be alpha-central.
    """
    if inner.base != outer.mid:
        raise ValueError("the inner extension must have the outer middle term as base")
    if not is_central(outer) or not is_central(inner):
        raise HypothesisError("both extensions must be central")
    sig = outer.sigma.compose(inner.sigma)
    Kspace = kernel(sig.f)
    ker, inc = restrict(inner.mid, Kspace, "ker")
    E = Extension(ker, inner.mid, outer.base, inc, sig)
    bad = check_extension(E)
    if bad:
        raise ArithmeticError("composite is not an extension: %s" % bad[0])
    if is_perfect(outer.mid) and not is_alpha_central(E):
        raise ArithmeticError("composite over a perfect middle is not alpha-central")
    return E


# -- equivalence -------------------------------------------------------------

def equivalence_map(E1: Extension, E2: Extension):
    """An isomorphism mid1 -> mid2 commuting with i and sigma, or None.

    After fixing the linear conditions the bracket condition is affine in
    the remaining freedom as long as the kernel is abelian.
    """
    if E1.ker != E2.ker or E1.base != E2.base:
        raise ValueError("extensions must have the same kernel and base")
    if not E1.ker.is_abelian():
        raise ValueError("equivalence test needs an abelian kernel")
    f = E1.field
    n1, n2 = E1.mid.dim, E2.mid.dim
    if n1 != n2:
        return None
    mid1, mid2 = E1.mid, E2.mid

    def linear(F):
        r = _entries(F @ E1.i.f - E2.i.f, E2.sigma.f @ F - E1.sigma.f,
                     F @ mid1.alpha - mid2.alpha @ F)
        return r + _a_linear_defect(mid1, mid2, F)

    part, hom = _solve_maps(f, n2, n1, linear)
    if part is None:
        return None
    G = [matrix_from_vector(f, b, n2, n1) for b in hom.basis]

    def bracket_res(c):
        F = part
        for ci, g in zip(c, G):
            if ci:
                F = F + g.scale(ci)
        r = []
        for x in range(n1):
            for y in range(x + 1, n1):
                lhs = F.apply(mid1.bracket[x][y])
                rhs = mid2.br(F.column(x), F.column(y))
                r.extend(a - b for a, b in zip(lhs, rhs))
        return r

    c, _ = solve_affine(f, len(G), bracket_res)
    if c is None:
        return None
    F = part
    for ci, g in zip(c, G):
        F = F + g.scale(ci)
    if not F.is_invertible() or check_morphism(mid1, mid2, HLRMorphism(F)):
        raise ArithmeticError("equivalence solver returned an invalid map")
    return F


def are_equivalent(E1: Extension, E2: Extension) -> bool:
    return equivalence_map(E1, E2) is not None
