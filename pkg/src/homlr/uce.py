"""The universal central extension built as A (x) L (x) L modulo relations,
with its induced structure, the projection u, functoriality and the
universality maps into central and alpha-central extensions."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import combinations

from .extensions import Extension, is_alpha_central, is_central
from .hlr import (HLRMorphism, HomLieRinehart, check_morphism, is_alpha_perfect, is_perfect)
from .linalg import (Matrix, QuotientPresentation, SpanBuilder, Subspace, kernel, quotient,
                     right_inverse, unit_vector)
from .report import HypothesisError


class TripleTensor:
    """Index bookkeeping for U (x) V (x) W with basis index (i*dV + j)*dW + k."""

    def __init__(self, field, d0: int, d1: int, d2: int):
        self.field = field
        self.dims = (d0, d1, d2)
        self.dim = d0 * d1 * d2

    def index(self, i: int, j: int, k: int) -> int:
        _, d1, d2 = self.dims
        return (i * d1 + j) * d2 + k

    def triple(self, idx: int) -> tuple:
        _, d1, d2 = self.dims
        ij, k = divmod(idx, d2)
        i, j = divmod(ij, d1)
        return i, j, k

    def expand(self, u, v, w, coeff=1, into: dict | None = None) -> dict:
        """Sparse coordinates of coeff * u (x) v (x) w."""
        out = {} if into is None else into
        su = [(i, c) for i, c in enumerate(u) if c]
        sv = [(j, c) for j, c in enumerate(v) if c]
        sw = [(k, c) for k, c in enumerate(w) if c]
        for i, a in su:
            for j, b in sv:
                ab = coeff * a * b
                for k, c in sw:
                    idx = self.index(i, j, k)
                    val = out.get(idx, 0) + ab * c
                    if val:
                        out[idx] = val
                    else:
                        out.pop(idx, None)
        return out

    def dense(self, sparse: dict) -> tuple:
        v = [self.field.zero] * self.dim
        for k, c in sparse.items():
            v[k] = self.field(c)
        return tuple(v)


def _scale_sparse(c, d: dict) -> dict:
    return {k: c * v for k, v in d.items() if c * v}


def _add_sparse(out: dict, d: dict, c=1) -> dict:
    for k, v in d.items():
        val = out.get(k, 0) + c * v
        if val:
            out[k] = val
        else:
            out.pop(k, None)
    return out


class SparseProjector:
    """Projection of sparse ambient vectors through a QuotientPresentation."""

    def __init__(self, Q: QuotientPresentation):
        self.Q = Q
        f = Q.field
        self._cols = {}
        self._zero = tuple(f.zero for _ in range(Q.dim))

    def column(self, k: int) -> tuple:
        col = self._cols.get(k)
        if col is None:
            col = self.Q.project(unit_vector(self.Q.field, self.Q.ambient_dim, k))
            self._cols[k] = col
        return col

    def __call__(self, sparse: dict) -> tuple:
        acc = list(self._zero)
        for k, c in sparse.items():
            for j, x in enumerate(self.column(k)):
                if x:
                    acc[j] += c * x
        return tuple(acc)


# -- relations ---------------------------------------------------------------

def _relation_generators(H: HomLieRinehart, T: TripleTensor):
    """Sparse generators of the relation submodule before A-closure."""
    f, A, n = H.field, H.A, H.dim
    aX = [H.alpha.column(i) for i in range(n)]
    B = H.bracket
    for a in range(A.dim):
        for x in range(n):
            yield {T.index(a, x, x): f.one}
        for x, y in combinations(range(n), 2):
            yield {T.index(a, x, y): f.one, T.index(a, y, x): f.one}
    for a in range(A.dim):
        e = A.basis(a)
        for x, y, z in combinations(range(n), 3):
            g = T.expand(e, aX[x], B[y][z])
            T.expand(e, aX[y], B[z][x], into=g)
            T.expand(e, aX[z], B[x][y], into=g)
            if g:
                yield g
    pairs = list(combinations(range(n), 2))
    for a in range(A.dim):
        e = A.basis(a)
        pa = H.phi.column(a)
        for x, y in pairs:
            c = B[x][y]
            if not any(c):
                continue
            rc = H.rho(c).column(a)
            for xp, yp in pairs:
                cp = B[xp][yp]
                g = T.expand(pa, c, cp)
                T.expand(rc, aX[xp], aX[yp], into=g)
                T.expand(A.one, c, H.act(e, cp), coeff=-1, into=g)
                if g:
                    yield g


def _independent_generators(H: HomLieRinehart, T: TripleTensor):
    """Independent sparse generators spanning the relation submodule.

    One pass of A-multiplication on the first factor closes the span.
    """
    f, A = H.field, H.A
    sb = SpanBuilder(f, T.dim)
    gens = []
    for g in _relation_generators(H, T):
        if sb.add(T.dense(g)):
            gens.append(g)
        if sb.full():
            return gens, sb.subspace()
    base = list(gens)
    for i in range(A.dim):
        if A.basis(i) == A.one:
            continue
        for g in base:
            h = _a_mult_sparse(A, T, A.basis(i), g)
            if h and sb.add(T.dense(h)):
                gens.append(h)
            if sb.full():
                return gens, sb.subspace()
    return gens, sb.subspace()


def _a_mult_sparse(A, T: TripleTensor, b, sparse: dict) -> dict:
    out = {}
    for idx, c in sparse.items():
        a, x, y = T.triple(idx)
        prod = A.mul(b, A.basis(a))
        for k, v in enumerate(prod):
            if v:
                _add_sparse(out, {T.index(k, x, y): c * v})
    return out


def relation_submodule(H: HomLieRinehart) -> Subspace:
    return build_uce(H).presentation.relations


# -- the algebra -------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class UceAlgebra:
    source: HomLieRinehart
    tensor: TripleTensor
    presentation: QuotientPresentation
    generators: tuple
    algebra: HomLieRinehart
    u: HLRMorphism
    projector: SparseProjector = dc_field(repr=False)

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def ambient_dim(self) -> int:
        return self.tensor.dim

    def rep(self, j: int) -> tuple:
        """(a, x, y) basis indices of the ambient tensor lifting quotient basis j."""
        return self.tensor.triple(self.presentation.rep_columns[j])

    def symbol(self, a, x, y) -> tuple:
        """Coset of a (x) x (x) y for vectors a, x, y."""
        return self.projector(self.tensor.expand(a, x, y))

    def project(self, sparse: dict) -> tuple:
        return self.projector(sparse)


def _ambient_bracket(H: HomLieRinehart, T: TripleTensor, p: int, q: int) -> dict:
    A = H.A
    a1, x1, y1 = T.triple(p)
    a2, x2, y2 = T.triple(q)
    c1, c2 = H.bracket[x1][y1], H.bracket[x2][y2]
    out = {}
    if any(c1) and any(c2):
        T.expand(H.phi.apply(A.mult[a1][a2]), c1, c2, into=out)
    if any(c1):
        r = H.rho(c1).column(a2)
        if any(r):
            T.expand(A.mul(H.phi.column(a1), r), H.alpha.column(x2), H.alpha.column(y2), into=out)
    if any(c2):
        r = H.rho(c2).column(a1)
        if any(r):
            T.expand(A.mul(H.phi.column(a2), r), H.alpha.column(x1), H.alpha.column(y1),
                     coeff=-1, into=out)
    return out


def _ambient_alpha(H, T, p) -> dict:
    a, x, y = T.triple(p)
    return T.expand(H.phi.column(a), H.alpha.column(x), H.alpha.column(y))


def _ambient_anchor(H, T, p) -> Matrix:
    a, x, y = T.triple(p)
    return H.A.mult_matrix(H.phi.column(a)) @ H.rho(H.bracket[x][y])


def _ambient_u(H, T, p) -> tuple:
    a, x, y = T.triple(p)
    return H.act(H.A.basis(a), H.bracket[x][y])


def _apply_sparse(fn, sparse: dict, field, dim):
    acc = [field.zero] * dim
    for k, c in sparse.items():
        for j, x in enumerate(fn(k)):
            if x:
                acc[j] += c * x
    return tuple(acc)


@lru_cache(maxsize=64)
def build_uce(H: HomLieRinehart, verify: bool = True) -> UceAlgebra:
    f, A, n = H.field, H.A, H.dim
    T = TripleTensor(f, A.dim, n, n)
    gens, rel = _independent_generators(H, T)
    Q = quotient(T.dim, rel)
    proj = SparseProjector(Q)
    reps = Q.rep_columns
    q = Q.dim

    bracket = [[proj(_ambient_bracket(H, T, p, r)) for r in reps] for p in reps]
    alpha = Matrix.from_columns(f, [proj(_ambient_alpha(H, T, p)) for p in reps], q)
    anchor = [_ambient_anchor(H, T, p) for p in reps]
    action = []
    for i in range(A.dim):
        row = []
        for p in reps:
            a, x, y = T.triple(p)
            row.append(proj(T.expand(A.mult[i][a], H.basis(x), H.basis(y))))
        action.append(row)
    alg = HomLieRinehart.build(A, H.phi, q, bracket, alpha, anchor, action,
                               "uce(%s)" % (H.name or "L"))
    umat = Matrix.from_columns(f, [_ambient_u(H, T, p) for p in reps], n)
    U = UceAlgebra(H, T, Q, tuple(gens), alg, HLRMorphism(umat), proj)
    if verify:
        _verify_uce(U)
    return U


def _verify_uce(U: UceAlgebra):
    H, T, proj = U.source, U.tensor, U.projector
    f = H.field
    zero_q = tuple(f.zero for _ in range(U.dim))
    cache = {}

    def pbr(p, r):
        key = (p, r)
        v = cache.get(key)
        if v is None:
            v = proj(_ambient_bracket(H, T, p, r))
            cache[key] = v
        return v

    for g in U.generators:
        al = {}
        for k, c in g.items():
            _add_sparse(al, _ambient_alpha(H, T, k), c)
        if proj(al) != zero_q:
            raise ArithmeticError("twist does not preserve the relations")
        rho = None
        for k, c in g.items():
            m = _ambient_anchor(H, T, k).scale(c)
            rho = m if rho is None else rho + m
        if rho is not None and not rho.is_zero():
            raise ArithmeticError("anchor does not vanish on the relations")
        if any(_apply_sparse(lambda k: _ambient_u(H, T, k), g, f, H.dim)):
            raise ArithmeticError("u does not vanish on the relations")
        for r in range(T.dim):
            acc = list(zero_q)
            for k, c in g.items():
                for j, x in enumerate(pbr(k, r)):
                    if x:
                        acc[j] += c * x
            if any(acc):
                raise ArithmeticError("bracket is not well defined on the quotient")


# -- functoriality -----------------------------------------------------------

def _check_same_base(H1, H2):
    if H1.A != H2.A or H1.phi != H2.phi:
        raise ValueError("algebras must share (A, phi)")


def uce_of_morphism(m: HLRMorphism, src: HomLieRinehart, dst: HomLieRinehart) -> HLRMorphism:
    """(a, x, y) -> (a, f x, f y)."""
    _check_same_base(src, dst)
    if m.g is not None and m.g != Matrix.identity(src.field, src.A.dim):
        raise ValueError("only morphisms with g = id are supported")
    U1, U2 = build_uce(src), build_uce(dst)
    T1 = U1.tensor
    f = src.field
    fx = [m.f.column(j) for j in range(src.dim)]

    def image(k):
        a, x, y = T1.triple(k)
        return U2.tensor.expand(src.A.basis(a), fx[x], fx[y])

    for g in U1.generators:
        img = {}
        for k, c in g.items():
            _add_sparse(img, image(k), c)
        if any(U2.project(img)):
            raise ArithmeticError("the map does not send relations to relations")
    cols = [U2.project(image(p)) for p in U1.presentation.rep_columns]
    return HLRMorphism(Matrix.from_columns(f, cols, U2.dim))


def kernel_of_u(U: UceAlgebra) -> Subspace:
    return kernel(U.u.f)


def uce_extension(U: UceAlgebra) -> Extension:
    """Ker(u) -> uce(L) -> L; exact only when L is perfect."""
    from .hlr import restrict
    K, inc = restrict(U.algebra, kernel_of_u(U), "Ker(u)")
    return Extension(K, U.algebra, U.source, inc, U.u)


# -- universality ------------------------------------------------------------

def _map_from_images(field, pairs, qdim: int, outdim: int):
    """Linear map sending each q-vector to its target; None when the
    q-vectors do not span.  Raises if the data are inconsistent."""
    sb = SpanBuilder(field, qdim)
    chosen = []
    for qv, t in pairs:
        if sb.add(qv):
            chosen.append((qv, t))
        if sb.full():
            break
    if len(chosen) < qdim:
        return None
    if qdim == 0:
        M = Matrix.zeros(field, outdim, 0)
    else:
        Qm = Matrix.from_columns(field, [c[0] for c in chosen], qdim)
        Tm = Matrix.from_columns(field, [c[1] for c in chosen], outdim)
        M = Tm @ Qm.inverse()
    for qv, t in pairs:
        if M.apply(qv) != tuple(t):
            raise ArithmeticError("the defining map is not well defined on the quotient")
    return M


def universality_witness(U: UceAlgebra, E: Extension) -> HLRMorphism:
    """The morphism uce(L) -> E.mid over L for a central extension E of a perfect L."""
    H = U.source
    if E.base != H:
        raise ValueError("extension base differs from the uce source")
    if not is_perfect(H):
        raise HypothesisError("source is not perfect")
    if not is_central(E):
        raise HypothesisError("extension is not central")
    f = H.field
    s = right_inverse(E.sigma.f)
    sx = [s.column(j) for j in range(H.dim)]
    T = U.tensor

    def psi(k):
        a, x, y = T.triple(k)
        return E.mid.act(H.A.basis(a), E.mid.br(sx[x], sx[y]))

    for g in U.generators:
        if any(_apply_sparse(psi, g, f, E.mid.dim)):
            raise ArithmeticError("psi does not vanish on the relations")
    tau = HLRMorphism(Matrix.from_columns(f, [psi(p) for p in U.presentation.rep_columns],
                                          E.mid.dim))
    _post_universality(U, E, tau)
    return tau


def alpha_universality_witness(U: UceAlgebra, E: Extension) -> HLRMorphism:
    """The morphism uce(L) -> E.mid for an alpha-central E of an alpha-perfect L,
    fixed on the symbols (a, alpha x, alpha y)."""
    H = U.source
    if E.base != H:
        raise ValueError("extension base differs from the uce source")
    if not is_alpha_perfect(H):
        raise HypothesisError("source is not alpha-perfect")
    if not is_alpha_central(E):
        raise HypothesisError("extension is not alpha-central")
    f = H.field
    s = right_inverse(E.sigma.f)
    asx = [E.mid.tw(s.column(j)) for j in range(H.dim)]
    pairs = []
    for a in range(H.A.dim):
        e = H.A.basis(a)
        for x in range(H.dim):
            for y in range(H.dim):
                qv = U.symbol(e, H.alpha.column(x), H.alpha.column(y))
                pairs.append((qv, E.mid.act(e, E.mid.br(asx[x], asx[y]))))
    M = _map_from_images(f, pairs, U.dim, E.mid.dim)
    if M is None:
        raise HypothesisError("the alpha-symbols do not span uce(L)")
    tau = HLRMorphism(M)
    _post_universality(U, E, tau)
    return tau


def _post_universality(U, E, tau):
    if E.sigma.f @ tau.f != U.u.f:
        raise ArithmeticError("sigma . tau != u")
    bad = check_morphism(U.algebra, E.mid, tau)
    if bad:
        raise ArithmeticError("universality map is not a morphism: %s" % bad[0])
