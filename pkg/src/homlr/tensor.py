"""Quasi hom-actions, compatible pairs, pairings and the non-abelian tensor
product L * M presented as A (x) L (x) M modulo relations."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import combinations

from .hlr import (HLRMorphism, HomLieRinehart, center, check_morphism, is_perfect)
from .linalg import (Matrix, SpanBuilder, Subspace, kernel, lincomb, quotient, right_inverse,
                     span, unit_vector, vadd, vsub, zero_vector)
from .report import HypothesisError, Violation, prefixed
from .uce import SparseProjector, TripleTensor, _add_sparse, build_uce


def _bilinear(field, table, u, v, dim) -> tuple:
    terms = []
    for i, c in enumerate(u):
        if c:
            row = table[i]
            for j, d in enumerate(v):
                if d:
                    terms.append((c * d, row[j]))
    return lincomb(field, dim, terms)


@dataclass(frozen=True)
class QuasiHomAction:
    """``theta[x][m]`` is the image of the basis pair (x, m)."""

    theta: tuple

    @classmethod
    def from_table(cls, field, table) -> "QuasiHomAction":
        return cls(tuple(tuple(tuple(field(c) for c in v) for v in row) for row in table))

    @classmethod
    def zero(cls, field, n: int, m: int) -> "QuasiHomAction":
        return cls(tuple(tuple(zero_vector(field, m) for _ in range(m)) for _ in range(n)))

    @classmethod
    def bracket(cls, H: HomLieRinehart) -> "QuasiHomAction":
        return cls(H.bracket)


@dataclass(frozen=True)
class CompatiblePair:
    """L acts on M by ``act_LM`` (x, m -> x_m), M acts on L by ``act_ML`` (m, x -> m_x)."""

    L: HomLieRinehart
    M: HomLieRinehart
    act_LM: QuasiHomAction
    act_ML: QuasiHomAction

    @property
    def field(self):
        return self.L.field

    def xm(self, x, m) -> tuple:
        return _bilinear(self.field, self.act_LM.theta, x, m, self.M.dim)

    def mx(self, m, x) -> tuple:
        return _bilinear(self.field, self.act_ML.theta, m, x, self.L.dim)

    def swapped(self) -> "CompatiblePair":
        return CompatiblePair(self.M, self.L, self.act_ML, self.act_LM)


def _action_shape(HL, HM, act):
    t = act.theta
    if len(t) != HL.dim or any(len(r) != HM.dim for r in t) \
            or any(len(v) != HM.dim for r in t for v in r):
        raise ValueError("action table must be %dx%d with values of length %d"
                         % (HL.dim, HM.dim, HM.dim))


def check_quasi_action(HL: HomLieRinehart, HM: HomLieRinehart, act: QuasiHomAction) -> list:
    _action_shape(HL, HM, act)
    f, A = HL.field, HL.A
    if HM.A != A or HM.phi != HL.phi:
        raise ValueError("algebras must share (A, phi)")

    def th(x, m):
        return _bilinear(f, act.theta, x, m, HM.dim)

    out = []
    nL, nM = HL.dim, HM.dim
    X = [HL.basis(i) for i in range(nL)]
    aX = [HL.alpha.column(i) for i in range(nL)]
    aM = [HM.alpha.column(i) for i in range(nM)]
    for x in range(nL):
        for i in range(A.dim):
            pa, ra = HL.phi.column(i), HL.anchor[x].column(i)
            for m in range(nM):
                lhs = th(X[x], HM.action[i][m])
                rhs = vadd(HM.act(pa, act.theta[x][m]), HM.act(ra, aM[m]))
                if lhs != rhs:
                    out.append(Violation("action-A-module", (x, i, m)))
    for x, y in combinations(range(nL), 2):
        for m in range(nM):
            lhs = th(HL.bracket[x][y], aM[m])
            rhs = vsub(th(aX[x], act.theta[y][m]), th(aX[y], act.theta[x][m]))
            if lhs != rhs:
                out.append(Violation("action-bracket", (x, y, m)))
    for x in range(nL):
        for m, n in combinations(range(nM), 2):
            lhs = th(aX[x], HM.bracket[m][n])
            rhs = vadd(HM.br(act.theta[x][m], aM[n]), HM.br(aM[m], act.theta[x][n]))
            if lhs != rhs:
                out.append(Violation("action-derivation", (x, m, n)))
    for x in range(nL):
        for m in range(nM):
            lhs = HM.rho(act.theta[x][m]) @ HL.phi
            rhs = HL.rho(aX[x]) @ HM.anchor[m] - HM.rho(aM[m]) @ HL.anchor[x]
            if lhs != rhs:
                out.append(Violation("action-anchor", (x, m)))
            if HM.tw(act.theta[x][m]) != th(aX[x], aM[m]):
                out.append(Violation("action-alpha", (x, m)))
    return out


def check_compatible(pair: CompatiblePair) -> list:
    L, M = pair.L, pair.M
    out = prefixed("L-on-M", check_quasi_action(L, M, pair.act_LM))
    out += prefixed("M-on-L", check_quasi_action(M, L, pair.act_ML))
    for x in range(L.dim):
        for m in range(M.dim):
            xm = pair.act_LM.theta[x][m]
            mx = pair.act_ML.theta[m][x]
            if M.rho(xm) != -L.rho(mx):
                out.append(Violation("compatible-anchor", (x, m)))
            for n in range(M.dim):
                if pair.xm(mx, M.basis(n)) != M.br(M.basis(n), xm):
                    out.append(Violation("compatible-M", (x, m, n)))
            for y in range(L.dim):
                if pair.mx(xm, L.basis(y)) != L.br(L.basis(y), mx):
                    out.append(Violation("compatible-L", (x, m, y)))
    return out


def self_action(H: HomLieRinehart) -> CompatiblePair:
    act = QuasiHomAction.bracket(H)
    return CompatiblePair(H, H, act, act)


def trivial_pair(L: HomLieRinehart, M: HomLieRinehart) -> CompatiblePair:
    f = L.field
    return CompatiblePair(L, M, QuasiHomAction.zero(f, L.dim, M.dim),
                          QuasiHomAction(tuple(tuple(zero_vector(f, L.dim) for _ in range(L.dim))
                                               for _ in range(M.dim))))


def bracket_pair(H: HomLieRinehart, N: Subspace, P: Subspace):
    """Two quasi-ideals of H acting on each other by the bracket.

    Returns ``(pair, incN, incP)``.
    """
    from .hlr import is_quasi_ideal, restrict
    if not (is_quasi_ideal(H, N) and is_quasi_ideal(H, P)):
        raise ValueError("both subspaces must be quasi-ideals")
    Nn, iN = restrict(H, N, "N")
    Pp, iP = restrict(H, P, "P")
    actNP = [[P.coordinates(H.br(u, v)) for v in P.basis] for u in N.basis]
    actPN = [[N.coordinates(H.br(v, u)) for u in N.basis] for v in P.basis]
    pair = CompatiblePair(Nn, Pp, QuasiHomAction(tuple(map(tuple, actNP))),
                          QuasiHomAction(tuple(map(tuple, actPN))))
    return pair, iN, iP


# -- pairings ----------------------------------------------------------------

def check_pairing(pair: CompatiblePair, N: HomLieRinehart, g) -> list:
    """``g[x][m]`` in N on basis pairs."""
    L, M = pair.L, pair.M
    f, A = L.field, L.A
    if len(g) != L.dim or any(len(r) != M.dim for r in g) \
            or any(len(v) != N.dim for r in g for v in r):
        raise ValueError("pairing table must be %dx%d with values of length %d"
                         % (L.dim, M.dim, N.dim))

    def G(x, m):
        return _bilinear(f, g, x, m, N.dim)

    out = []
    aX = [L.alpha.column(i) for i in range(L.dim)]
    aM = [M.alpha.column(i) for i in range(M.dim)]
    for x in range(L.dim):
        for m in range(M.dim):
            if N.rho(g[x][m]) != M.rho(pair.act_LM.theta[x][m]):
                out.append(Violation("pairing-anchor", (x, m)))
            if G(aX[x], aM[m]) != N.tw(g[x][m]):
                out.append(Violation("pairing-alpha", (x, m)))
    for x, y in combinations(range(L.dim), 2):
        for m in range(M.dim):
            lhs = G(L.bracket[x][y], aM[m])
            rhs = vsub(G(aX[x], pair.act_LM.theta[y][m]), G(aX[y], pair.act_LM.theta[x][m]))
            if lhs != rhs:
                out.append(Violation("pairing-L-bracket", (x, y, m)))
    for x in range(L.dim):
        for m, n in combinations(range(M.dim), 2):
            lhs = G(aX[x], M.bracket[m][n])
            rhs = vsub(G(pair.act_ML.theta[n][x], aM[m]), G(pair.act_ML.theta[m][x], aM[n]))
            if lhs != rhs:
                out.append(Violation("pairing-M-bracket", (x, m, n)))
    for a in range(A.dim):
        ea, pa = A.basis(a), L.phi.column(a)
        for b in range(A.dim):
            eb, pb = A.basis(b), L.phi.column(b)
            pab = L.phi.apply(A.mult[a][b])
            for x in range(L.dim):
                for m in range(M.dim):
                    fxm = g[x][m]
                    mx = L.act(ea, pair.act_ML.theta[m][x])
                    for y in range(L.dim):
                        for n in range(M.dim):
                            fyn = g[y][n]
                            yn = M.act(eb, pair.act_LM.theta[y][n])
                            lhs = G(mx, yn)
                            rhs = N.act(pab, N.br(fxm, fyn))
                            rhs = vadd(rhs, N.act(A.mul(pa, N.rho(fxm).column(b)), N.tw(fyn)))
                            rhs = vsub(N.act(A.mul(pb, N.rho(fyn).column(a)), N.tw(fxm)), rhs)
                            if lhs != rhs:
                                out.append(Violation("pairing-product", (a, b, x, m, y, n)))
    return out


# -- the tensor product ------------------------------------------------------

@dataclass(frozen=True, eq=False)
class TensorAlgebra:
    pair: CompatiblePair
    tensor: TripleTensor
    presentation: object
    generators: tuple
    algebra: HomLieRinehart
    projector: SparseProjector = dc_field(repr=False)

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def ambient_dim(self) -> int:
        return self.tensor.dim

    def symbol(self, a, x, m) -> tuple:
        """Coset of a(x * m)."""
        return self.projector(self.tensor.expand(a, x, m))

    def project(self, sparse: dict) -> tuple:
        return self.projector(sparse)

    def canonical_pairing(self) -> tuple:
        P = self.pair
        one = P.L.A.one
        return tuple(tuple(self.symbol(one, P.L.basis(x), P.M.basis(m)) for m in range(P.M.dim))
                     for x in range(P.L.dim))


def _tensor_generators(pair: CompatiblePair, T: TripleTensor):
    L, M = pair.L, pair.M
    A = L.A
    one = A.one
    nL, nM = L.dim, M.dim
    aX = [L.alpha.column(i) for i in range(nL)]
    aM = [M.alpha.column(i) for i in range(nM)]
    xm = pair.act_LM.theta
    mx = pair.act_ML.theta
    for x, y in combinations(range(nL), 2):
        for m in range(nM):
            g = T.expand(one, L.bracket[x][y], aM[m])
            T.expand(one, aX[x], xm[y][m], coeff=-1, into=g)
            T.expand(one, aX[y], xm[x][m], into=g)
            if g:
                yield g
    for x in range(nL):
        for m, n in combinations(range(nM), 2):
            g = T.expand(one, aX[x], M.bracket[m][n])
            T.expand(one, mx[n][x], aM[m], coeff=-1, into=g)
            T.expand(one, mx[m][x], aM[n], into=g)
            if g:
                yield g
    # b-dependent factors do not depend on (x, m); compute them once
    Mb = [[[M.act(A.basis(b), xm[y][n]) for n in range(nM)] for y in range(nL)]
          for b in range(A.dim)]
    Lb = [[[L.act(A.basis(b), mx[n][y]) for n in range(nM)] for y in range(nL)]
          for b in range(A.dim)]
    for a in range(A.dim):
        ea, pa = A.basis(a), L.phi.column(a)
        for b in range(A.dim):
            pb = L.phi.column(b)
            pab = L.phi.apply(A.mult[a][b])
            for x in range(nL):
                for m in range(nM):
                    u = L.act(ea, mx[m][x])
                    w = M.act(ea, xm[x][m])
                    rx = M.rho(xm[x][m]).column(b)
                    for y in range(nL):
                        for n in range(nM):
                            v = Mb[b][y][n]
                            g5 = T.expand(one, u, v)
                            T.expand(one, Lb[b][y][n], w, into=g5)
                            if g5:
                                yield g5
                            g6 = T.expand(one, u, v)
                            T.expand(pab, mx[m][x], xm[y][n], coeff=-1, into=g6)
                            T.expand(A.mul(pa, rx), aX[y], aM[n], into=g6)
                            T.expand(A.mul(pb, M.rho(xm[y][n]).column(a)), aX[x], aM[m],
                                     coeff=-1, into=g6)
                            if g6:
                                yield g6


def _normalized(g: dict) -> tuple:
    k0 = min(g)
    c = g[k0]
    return tuple(sorted((k, v / c) for k, v in g.items()))


def _a_closure(A, T, sb, gens):
    from .uce import _a_mult_sparse
    base = list(gens)
    for i in range(A.dim):
        if A.basis(i) == A.one:
            continue
        for g in base:
            h = _a_mult_sparse(A, T, A.basis(i), g)
            if h and sb.add(T.dense(h)):
                gens.append(h)
            if sb.full():
                return


def _t_bracket(pair, T, p, q) -> dict:
    L, M = pair.L, pair.M
    a, x, m = T.triple(p)
    b, y, n = T.triple(q)
    u = L.act(L.A.basis(a), pair.act_ML.theta[m][x])
    v = M.act(L.A.basis(b), pair.act_LM.theta[y][n])
    return T.expand(L.A.one, u, v, coeff=-1)


def _t_alpha(pair, T, p) -> dict:
    a, x, m = T.triple(p)
    return T.expand(pair.L.phi.column(a), pair.L.alpha.column(x), pair.M.alpha.column(m))


def _t_anchor(pair, T, p) -> Matrix:
    a, x, m = T.triple(p)
    L, M = pair.L, pair.M
    return L.A.mult_matrix(L.phi.column(a)) @ M.rho(pair.act_LM.theta[x][m])


def _sum_sparse(fn, g: dict) -> dict:
    out = {}
    for k, c in g.items():
        _add_sparse(out, fn(k), c)
    return out


@lru_cache(maxsize=64)
def build_tensor(pair: CompatiblePair, verify: bool = True) -> TensorAlgebra:
    L, M = pair.L, pair.M
    if L.A != M.A or L.phi != M.phi:
        raise ValueError("algebras must share (A, phi)")
    bad = check_compatible(pair)
    if bad:
        raise HypothesisError("actions are not compatible: %s" % bad[0])
    f, A = L.field, L.A
    T = TripleTensor(f, A.dim, L.dim, M.dim)
    sb = SpanBuilder(f, T.dim)
    gens, seen = [], set()
    for g in _tensor_generators(pair, T):
        key = _normalized(g)
        if key in seen:
            continue
        seen.add(key)
        if sb.add(T.dense(g)):
            gens.append(g)
        if sb.full():
            break
    if not sb.full():
        _a_closure(A, T, sb, gens)
    Q = quotient(T.dim, sb.subspace())
    proj = SparseProjector(Q)
    reps = Q.rep_columns
    q = Q.dim
    bracket = [[proj(_t_bracket(pair, T, p, r)) for r in reps] for p in reps]
    alpha = Matrix.from_columns(f, [proj(_t_alpha(pair, T, p)) for p in reps], q)
    anchor = [_t_anchor(pair, T, p) for p in reps]
    action = []
    for i in range(A.dim):
        row = []
        for p in reps:
            a, x, m = T.triple(p)
            row.append(proj(T.expand(A.mult[i][a], L.basis(x), M.basis(m))))
        action.append(row)
    alg = HomLieRinehart.build(A, L.phi, q, bracket, alpha, anchor, action,
                               "%s*%s" % (L.name or "L", M.name or "M"))
    TA = TensorAlgebra(pair, T, Q, tuple(gens), alg, proj)
    if verify:
        _verify_tensor(TA)
    return TA


def _verify_tensor(TA: TensorAlgebra):
    pair, T, proj = TA.pair, TA.tensor, TA.projector
    cache = {}

    def pbr(p, r):
        v = cache.get((p, r))
        if v is None:
            v = proj(_t_bracket(pair, T, p, r))
            cache[(p, r)] = v
        return v

    for g in TA.generators:
        if any(proj(_sum_sparse(lambda k: _t_alpha(pair, T, k), g))):
            raise ArithmeticError("twist does not preserve the tensor relations")
        rho = None
        for k, c in g.items():
            m = _t_anchor(pair, T, k).scale(c)
            rho = m if rho is None else rho + m
        if rho is not None and not rho.is_zero():
            raise ArithmeticError("anchor does not vanish on the tensor relations")
        for r in range(T.dim):
            for side in (0, 1):
                acc = [0] * TA.dim
                for k, c in g.items():
                    v = pbr(k, r) if side == 0 else pbr(r, k)
                    for j, x in enumerate(v):
                        if x:
                            acc[j] += c * x
                if any(acc):
                    raise ArithmeticError("bracket is not well defined on L*M")


def projections(TA: TensorAlgebra):
    """(pi1, pi2) with pi1(a(x*m)) = -a(m_x), pi2(a(x*m)) = a(x_m); both
    checked to be morphisms with kernels inside the center."""
    pair, T = TA.pair, TA.tensor
    L, M = pair.L, pair.M
    f = L.field
    c1, c2 = [], []
    for p in TA.presentation.rep_columns:
        a, x, m = T.triple(p)
        e = L.A.basis(a)
        c1.append(tuple(-c for c in L.act(e, pair.act_ML.theta[m][x])))
        c2.append(M.act(e, pair.act_LM.theta[x][m]))
    pi1 = HLRMorphism(Matrix.from_columns(f, c1, L.dim))
    pi2 = HLRMorphism(Matrix.from_columns(f, c2, M.dim))
    for dst, pi, name in ((L, pi1, "pi1"), (M, pi2, "pi2")):
        bad = check_morphism(TA.algebra, dst, pi)
        if bad:
            raise ArithmeticError("%s is not a morphism: %s" % (name, bad[0]))
    Z = center(TA.algebra, verify=False)
    if not (kernel(pi1.f) <= Z and kernel(pi2.f) <= Z):
        raise ArithmeticError("projection kernel is not central")
    return pi1, pi2


def universal_pairing_factorization(TA: TensorAlgebra, N: HomLieRinehart, g) -> HLRMorphism:
    """The morphism L*M -> N with x*m -> g(x, m)."""
    pair, T = TA.pair, TA.tensor
    bad = check_pairing(pair, N, g)
    if bad:
        raise HypothesisError("not a pairing: %s" % bad[0])
    f = N.field
    A = pair.L.A

    def img(k):
        a, x, m = T.triple(k)
        return N.act(A.basis(a), g[x][m])

    for gen in TA.generators:
        acc = zero_vector(f, N.dim)
        for k, c in gen.items():
            acc = vadd(acc, tuple(c * v for v in img(k)))
        if any(acc):
            raise ArithmeticError("pairing does not vanish on the tensor relations")
    Phi = HLRMorphism(Matrix.from_columns(f, [img(p) for p in TA.presentation.rep_columns],
                                          N.dim))
    bad = check_morphism(TA.algebra, N, Phi)
    if bad:
        raise ArithmeticError("factorization is not a morphism: %s" % bad[0])
    # x*m generate L*M as an A-module, which pins Phi down
    sym = [TA.symbol(A.basis(a), pair.L.basis(x), pair.M.basis(m))
           for a in range(A.dim) for x in range(pair.L.dim) for m in range(pair.M.dim)]
    if span(f, sym, TA.dim).dim != TA.dim:
        raise ArithmeticError("symbols do not span L*M")
    return Phi


def symmetry_iso(pair: CompatiblePair) -> HLRMorphism:
    """L*M -> M*L with x*m -> -(m*x)."""
    T1, T2 = build_tensor(pair), build_tensor(pair.swapped())
    f = pair.field

    def img(k):
        a, x, m = T1.tensor.triple(k)
        return {T2.tensor.index(a, m, x): -f.one}

    for g in T1.generators:
        if any(T2.project(_sum_sparse(img, g))):
            raise ArithmeticError("swap does not preserve the relations")
    S = Matrix.from_columns(f, [T2.project(img(p)) for p in T1.presentation.rep_columns], T2.dim)
    if not S.is_invertible():
        raise ArithmeticError("swap is not invertible")
    bad = check_morphism(T1.algebra, T2.algebra, HLRMorphism(S))
    if bad:
        raise ArithmeticError("swap is not a morphism: %s" % bad[0])
    return HLRMorphism(S)


def tensor_map(P1: CompatiblePair, P2: CompatiblePair, s: Matrix, t: Matrix) -> HLRMorphism:
    """s * t : L1*M1 -> L2*M2 for action-preserving morphisms s, t."""
    f = P1.field
    for x in range(P1.L.dim):
        for m in range(P1.M.dim):
            sx, tm = s.column(x), t.column(m)
            if s.apply(P1.act_ML.theta[m][x]) != P2.mx(tm, sx) or \
                    t.apply(P1.act_LM.theta[x][m]) != P2.xm(sx, tm):
                raise HypothesisError("maps do not preserve the actions at (%d, %d)" % (x, m))
    for H1, H2, mm in ((P1.L, P2.L, s), (P1.M, P2.M, t)):
        if check_morphism(H1, H2, HLRMorphism(mm)):
            raise HypothesisError("component map is not a morphism")
    T1, T2 = build_tensor(P1), build_tensor(P2)
    A = P1.L.A

    def img(k):
        a, x, m = T1.tensor.triple(k)
        return T2.tensor.expand(A.basis(a), s.column(x), t.column(m))

    for g in T1.generators:
        if any(T2.project(_sum_sparse(img, g))):
            raise ArithmeticError("induced map does not preserve the relations")
    F = HLRMorphism(Matrix.from_columns(f, [T2.project(img(p))
                                            for p in T1.presentation.rep_columns], T2.dim))
    bad = check_morphism(T1.algebra, T2.algebra, F)
    if bad:
        raise ArithmeticError("induced map is not a morphism: %s" % bad[0])
    return F


def tensor_exactness(P1: CompatiblePair, P2: CompatiblePair, P3: CompatiblePair,
                     fmap: Matrix, gmap: Matrix) -> list:
    """For L1 -f-> L2 -g-> L3 exact and a common M, check that
    L1*M -> L2*M -> L3*M is exact with the second map onto."""
    M = P1.M
    if P2.M != M or P3.M != M:
        raise ValueError("all three pairs must share M")
    if fmap.rank() != P1.L.dim or gmap.rank() != P3.L.dim or \
            span(fmap.field, fmap.columns(), P2.L.dim) != kernel(gmap):
        raise HypothesisError("L1 -> L2 -> L3 is not short exact")
    eye = Matrix.identity(M.field, M.dim)
    F = tensor_map(P1, P2, fmap, eye).f
    G = tensor_map(P2, P3, gmap, eye).f
    out = []
    if G.rank() != G.rows:
        out.append(Violation("tensor-surjective"))
    if span(F.field, F.columns(), F.rows) != kernel(G):
        out.append(Violation("tensor-exactness", (), "Im(f*id) != Ker(g*id)"))
    return out


def central_extension_pairs(E):
    """Pairs (Ker, Mid), (Mid, Mid), (Base, Mid) for a central extension E,
    all acting through the bracket of the middle term."""
    from .extensions import is_central
    if not is_central(E):
        raise HypothesisError("extension is not central")
    K, Mid, B = E.ker, E.mid, E.base
    f = Mid.field
    P2 = self_action(Mid)
    P1 = CompatiblePair(K, Mid,
                        QuasiHomAction(tuple(tuple(zero_vector(f, Mid.dim) for _ in range(Mid.dim))
                                             for _ in range(K.dim))),
                        QuasiHomAction(tuple(tuple(zero_vector(f, K.dim) for _ in range(K.dim))
                                             for _ in range(Mid.dim))))
    s = right_inverse(E.sigma.f)
    act_BM = tuple(tuple(Mid.br(s.column(t), Mid.basis(p)) for p in range(Mid.dim))
                   for t in range(B.dim))
    act_MB = tuple(tuple(E.sigma.f.apply(Mid.br(Mid.basis(p), s.column(t))) for t in range(B.dim))
                   for p in range(Mid.dim))
    P3 = CompatiblePair(B, Mid, QuasiHomAction(act_BM), QuasiHomAction(act_MB))
    return P1, P2, P3


# -- comparison with uce -----------------------------------------------------

@lru_cache(maxsize=64)
def compare_uce_tensor(H: HomLieRinehart) -> HLRMorphism:
    """The isomorphism uce(H) -> H*H, (a, x, y) -> a(x*y), for perfect H."""
    if not is_perfect(H):
        raise HypothesisError("algebra is not perfect")
    U = build_uce(H)
    TA = build_tensor(self_action(H))
    for g in U.generators:
        if any(TA.project(g)):
            raise ArithmeticError("uce relations do not map to tensor relations")
    f = H.field
    Phi = Matrix.from_columns(f, [TA.projector.column(p) for p in U.presentation.rep_columns],
                              TA.dim)
    if not Phi.is_invertible():
        raise ArithmeticError("comparison map is not invertible")
    bad = check_morphism(U.algebra, TA.algebra, HLRMorphism(Phi))
    if bad:
        raise ArithmeticError("comparison map is not a morphism: %s" % bad[0])
    _, pi2 = projections(TA)
    if pi2.f @ Phi != U.u.f:
        raise ArithmeticError("u != pi . Phi")
    return HLRMorphism(Phi)


def abelian_tensor(pair: CompatiblePair):
    """L^ab (x) M^ab with zero bracket and anchor, and the comparison map
    L*M -> L^ab (x) M^ab.  Only for trivial actions over A = k.

    Returns ``(algebra, map)``.
    """
    L, M = pair.L, pair.M
    f = L.field
    if L.A.dim != 1:
        raise ValueError("only implemented over A = k")
    if any(any(v) for r in pair.act_LM.theta for v in r) or \
            any(any(v) for r in pair.act_ML.theta for v in r):
        raise ValueError("actions must be trivial")
    from .hlr import derived_submodule
    from .linalg import quotient as mkq
    QL = mkq(L.dim, derived_submodule(L))
    QM = mkq(M.dim, derived_submodule(M))
    dl, dm = QL.dim, QM.dim
    n = dl * dm
    alpha_L = QL.project_matrix @ L.alpha @ QL.lift_matrix
    alpha_M = QM.project_matrix @ M.alpha @ QM.lift_matrix
    alpha = Matrix.from_function(f, n, n, lambda c: tuple(
        alpha_L[i, c // dm] * alpha_M[j, c % dm] for i in range(dl) for j in range(dm)))
    from .hlr import abelian_algebra
    action = [[unit_vector(f, n, k) for k in range(n)]]
    Ab = abelian_algebra(L.A, L.phi, n, action, alpha, "Lab(x)Mab")
    TA = build_tensor(pair)

    def img(k):
        _, x, m = TA.tensor.triple(k)
        u, v = QL.project(L.basis(x)), QM.project(M.basis(m))
        return tuple(u[i] * v[j] for i in range(dl) for j in range(dm))

    Phi = Matrix.from_columns(f, [img(p) for p in TA.presentation.rep_columns], n)
    bad = check_morphism(TA.algebra, Ab, HLRMorphism(Phi))
    if bad:
        raise ArithmeticError("comparison map is not a morphism: %s" % bad[0])
    return Ab, HLRMorphism(Phi)

