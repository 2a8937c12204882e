"""The shipped small instances.

F1   abelian 2-dim, A = Q
F2   sl2 in the basis (e, f, h)
F3   sl2 twisted by alpha = diag(2, 1/2, 1)
W    Witt-type seed A.D over Q[t]/(t^2), D(t) = t
F4   W twisted by g(t) = 0, f(aD) = g(a)D (zero bracket, zero anchor)
F5   W twisted by g(t) = 2t, f(aD) = g(a)D
F6   sl2 acting on V (x) k^2, V the standard module, [V, V] = 0
F6t  F6 twisted by Ad(diag(2, 1/2)) on sl2 + V, identity on k^2
"""

from __future__ import annotations

from fractions import Fraction

from .commalg import truncated_polynomials
from .constructors import from_hom_lie_algebra, twist_by_endomorphism
from .field import QQ, Field
from .hlr import HomLieRinehart
from .linalg import Matrix


def _bracket_from_dict(n, table):
    """table maps (i, j) -> {k: coeff}; antisymmetric completion."""
    out = [[[0] * n for _ in range(n)] for _ in range(n)]
    for (i, j), vals in table.items():
        for k, c in vals.items():
            out[i][j][k] += c
            out[j][i][k] -= c
    return out


def sl2_bracket():
    # basis e, f, h
    return _bracket_from_dict(3, {(0, 1): {2: 1}, (2, 0): {0: 2}, (2, 1): {1: -2}})


def heisenberg_bracket():
    return _bracket_from_dict(3, {(0, 1): {2: 1}})


def identity(n):
    return [[1 if r == c else 0 for c in range(n)] for r in range(n)]


def diag(*xs):
    n = len(xs)
    return [[xs[r] if r == c else 0 for c in range(n)] for r in range(n)]


def F1(field: Field = QQ) -> HomLieRinehart:
    return from_hom_lie_algebra(field, _bracket_from_dict(2, {}), identity(2), "F1")


def F2(field: Field = QQ) -> HomLieRinehart:
    return from_hom_lie_algebra(field, sl2_bracket(), identity(3), "F2")


F3_ALPHA = diag(2, Fraction(1, 2), 1)


def F3(field: Field = QQ) -> HomLieRinehart:
    return twist_by_endomorphism(F2(field), Matrix.identity(field, 1),
                                 Matrix(field, F3_ALPHA), "F3")


def witt_seed(field: Field = QQ, order: int = 2, c=1, name: str = "W") -> HomLieRinehart:
    """L = A.D over k[t]/(t^order) with D(t) = c t; basis t^k D."""
    A = truncated_polynomials(field, order)
    n = order
    cc = field(c)
    # D(t^k) = c k t^k
    def D(k):
        v = [field(0)] * n
        if k < n:
            v[k] = cc * k
        return v
    action = [[[1 if l == i + j else 0 for l in range(n)] for j in range(n)] for i in range(n)]
    # [t^i D, t^j D] = (t^i D(t^j) - t^j D(t^i)) D = c (j - i) t^{i+j} D
    bracket = []
    for i in range(n):
        row = []
        for j in range(n):
            v = [0] * n
            if i + j < n:
                v[i + j] = cc * (j - i)
            row.append(v)
        bracket.append(row)
    # rho(t^i D)(t^k) = t^i c k t^k
    anchor = []
    for i in range(n):
        cols = []
        for k in range(n):
            v = [field(0)] * n
            if i + k < n:
                v[i + k] = cc * k
            cols.append(v)
        anchor.append(Matrix.from_columns(field, cols, n))
    return HomLieRinehart.build(A, Matrix.identity(field, n), n, bracket,
                                Matrix.identity(field, n), anchor, action, name)


def witt_scaling(field: Field, order: int, lam):
    """(g, f) with g(t) = lam t and f(aD) = g(a)D."""
    lam = field(lam)
    g = Matrix(field, diag(*[lam ** k for k in range(order)]))
    return g, g


def W(field: Field = QQ) -> HomLieRinehart:
    return witt_seed(field, 2, 1, "W")


def F4(field: Field = QQ) -> HomLieRinehart:
    g, f = witt_scaling(field, 2, 0)
    return twist_by_endomorphism(W(field), g, f, "F4")


def F5(field: Field = QQ) -> HomLieRinehart:
    g, f = witt_scaling(field, 2, 2)
    return twist_by_endomorphism(W(field), g, f, "F5")


def semidirect_bracket(mult: int = 2):
    """sl2 + (V (x) k^mult) with [V, V] = 0.

    Basis: e, f, h, then v+ (x) w_1, v- (x) w_1, v+ (x) w_2, ...
    """
    n = 3 + 2 * mult
    table = {(0, 1): {2: 1}, (2, 0): {0: 2}, (2, 1): {1: -2}}
    for w in range(mult):
        p, m = 3 + 2 * w, 4 + 2 * w
        table[(2, p)] = {p: 1}
        table[(2, m)] = {m: -1}
        table[(0, m)] = {p: 1}
        table[(1, p)] = {m: 1}
    return _bracket_from_dict(n, table)


def F6(field: Field = QQ) -> HomLieRinehart:
    return from_hom_lie_algebra(field, semidirect_bracket(2), identity(7), "F6")


LAMBDA = 2


def F6_twist(field: Field = QQ):
    lam = Fraction(LAMBDA)
    return Matrix(field, diag(lam ** 2, lam ** -2, 1, lam, 1 / lam, lam, 1 / lam))


def F6t(field: Field = QQ) -> HomLieRinehart:
    return twist_by_endomorphism(F6(field), Matrix.identity(field, 1), F6_twist(field), "F6t")


def all_algebras(field: Field = QQ) -> dict:
    return {
        "F1": F1(field), "F2": F2(field), "F3": F3(field), "F4": F4(field),
        "W": W(field), "F5": F5(field), "F6": F6(field), "F6t": F6t(field),
    }


# -- extensions, automorphisms and derivations -------------------------------

def heisenberg_extension(field: Field = QQ):
    """k -> heis -> F1 from the 2-cocycle f(x_0, x_1) = 1."""
    from .cohomology import cochain_vector, extension_from_cocycle, trivial_module
    L = F1(field)
    M = trivial_module(L)
    E = extension_from_cocycle(L, M, cochain_vector(L, M, 2, {(0, 1): (1,)}))
    return _named(E, "k", "heis", "F1")


def cocycle_extension(H: HomLieRinehart, values: dict, dim: int = 1, names=("M", "K", None)):
    """Extension of H by the trivial module k^dim along the given 2-cocycle."""
    from .cohomology import cochain_vector, extension_from_cocycle, trivial_module
    M = trivial_module(H, dim)
    E = extension_from_cocycle(H, M, cochain_vector(H, M, 2, values))
    return _named(E, names[0], names[1], names[2] or H.name)


def _named(E, ker, mid, base):
    from dataclasses import replace
    from .extensions import Extension
    return Extension(replace(E.ker, name=ker), replace(E.mid, name=mid),
                     replace(E.base, name=base), E.i, E.sigma)


def F3_trivial_extension(field: Field = QQ):
    """0 -> K -> F3 with K = F3 (+) 0; central, f an isomorphism."""
    return cocycle_extension(F3(field), {}, 0, ("zero", "F3x0", None))


def F3_coboundary_extension(field: Field = QQ):
    """F3 extended by k along the coboundary f(e, f) = 1."""
    return cocycle_extension(F3(field), {(0, 1): (1,)}, 1, ("k", "F3xk", None))


def F6_extension(field: Field = QQ, twisted: bool = False):
    """k -> K -> F6 (or F6t) along f(v+ w1, v- w1) = 1."""
    H = F6t(field) if twisted else F6(field)
    name = "Kt" if twisted else "K"
    return cocycle_extension(H, {(3, 4): (1,)}, 1, ("k", name, None))


def F6_automorphisms(field: Field = QQ) -> dict:
    """``scale`` lifts along F6_extension; ``swap`` exchanges w1, w2 and does not."""
    from .hlr import HLRMorphism
    swap = [[0] * 7 for _ in range(7)]
    for a, b in ((0, 0), (1, 1), (2, 2), (3, 5), (4, 6), (5, 3), (6, 4)):
        swap[a][b] = 1
    return {"scale": HLRMorphism(Matrix(field, diag(1, 1, 1, 2, 2, 3, 3))),
            "swap": HLRMorphism(Matrix(field, swap))}


def F6_derivations(H: HomLieRinehart) -> dict:
    """alpha-derivations alpha . (1 (x) E) of F6 or F6t: ``w1_to_w2`` lifts,
    ``w2_to_w1`` does not; ``ad_h`` is the inner derivation of h."""
    from .lifting import AlphaDerivation, inner_derivation
    f = H.field
    up = [[0] * 7 for _ in range(7)]
    up[5][3] = up[6][4] = 1
    down = [[0] * 7 for _ in range(7)]
    down[3][5] = down[4][6] = 1
    z = Matrix.zeros(f, 1, 1)
    return {"w1_to_w2": AlphaDerivation(H.alpha @ Matrix(f, up), z),
            "w2_to_w1": AlphaDerivation(H.alpha @ Matrix(f, down), z),
            "ad_h": inner_derivation(H, H.basis(2))}
