"""Hom-Lie-Rinehart algebras given by structure constants.

An instance stores the base algebra A with its endomorphism phi, the
dimension of L over the field, the A-action ``action[i][j] = e_i . x_j``,
the bracket ``bracket[i][j] = [x_i, x_j]``, the twist ``alpha`` and the
anchor, one End(A) matrix per basis vector of L.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from itertools import combinations

from .commalg import CommAlgebra, check_algebra_endo, check_comm_algebra, derivation_violations
from .field import Field
from .linalg import (Matrix, Subspace, SpanBuilder, kernel, lincomb, unit_vector,
                     vadd, zero_vector)
from .report import Violation, prefixed


def _vec(field, v):
    return tuple(field(x) for x in v)


@dataclass(frozen=True, eq=False)
class HomLieRinehart:
    A: CommAlgebra
    phi: Matrix
    dim: int
    action: tuple
    bracket: tuple
    alpha: Matrix
    anchor: tuple
    name: str = dc_field(default="", compare=False)

    def __post_init__(self):
        n, d = self.dim, self.A.dim
        if self.phi.shape != (d, d):
            raise ValueError("phi must be %dx%d" % (d, d))
        if self.alpha.shape != (n, n):
            raise ValueError("alpha must be %dx%d" % (n, n))
        if len(self.action) != d or any(len(r) != n for r in self.action):
            raise ValueError("action table must be %dx%d" % (d, n))
        if len(self.bracket) != n or any(len(r) != n for r in self.bracket):
            raise ValueError("bracket table must be %dx%d" % (n, n))
        for tab in (self.action, self.bracket):
            for row in tab:
                for v in row:
                    if len(v) != n:
                        raise ValueError("structure vectors must have length %d" % n)
        if len(self.anchor) != n or any(m.shape != (d, d) for m in self.anchor):
            raise ValueError("anchor must be %d matrices of size %dx%d" % (n, d, d))

    # equality by value, used for matching bases of extensions
    def _key(self):
        return (self.A, self.phi, self.dim, self.action, self.bracket, self.alpha, self.anchor)

    def __eq__(self, other):
        if not isinstance(other, HomLieRinehart):
            return NotImplemented
        return self is other or self._key() == other._key()

    def __hash__(self):
        return hash((self.dim, self.A.dim, self.alpha, self.phi))

    @classmethod
    def build(cls, A: CommAlgebra, phi, dim: int, bracket, alpha, anchor=None, action=None,
              name: str = "") -> "HomLieRinehart":
        """Coerce nested lists into a HomLieRinehart.

        ``action`` defaults to scalar multiplication, which needs dim A = 1.
        ``anchor`` defaults to zero.
        """
        f = A.field
        d = A.dim
        if not isinstance(phi, Matrix):
            phi = Matrix(f, phi, d, d)
        if not isinstance(alpha, Matrix):
            alpha = Matrix(f, alpha, dim, dim)
        if action is None:
            if d != 1:
                raise ValueError("an explicit A-action is needed when dim A > 1")
            u = A.unit[0]
            action = [[[u * x for x in unit_vector(f, dim, j)] for j in range(dim)]]
        action = tuple(tuple(_vec(f, v) for v in row) for row in action)
        bracket = tuple(tuple(_vec(f, v) for v in row) for row in bracket)
        if anchor is None:
            anchor = [Matrix.zeros(f, d, d) for _ in range(dim)]
        anchor = tuple(m if isinstance(m, Matrix) else Matrix(f, m, d, d) for m in anchor)
        return cls(A, phi, dim, action, bracket, alpha, anchor, name)

    @property
    def field(self) -> Field:
        return self.A.field

    def basis(self, i: int) -> tuple:
        return unit_vector(self.field, self.dim, i)

    @property
    def zero(self) -> tuple:
        return zero_vector(self.field, self.dim)

    @cached_property
    def _action_matrices(self) -> tuple:
        n = self.dim
        return tuple(Matrix.from_columns(self.field, list(self.action[i]), n)
                     for i in range(self.A.dim))

    def action_matrix(self, a) -> Matrix:
        """Matrix of x -> a.x on L."""
        m = Matrix.zeros(self.field, self.dim, self.dim)
        for i, c in enumerate(a):
            if c:
                m = m + self._action_matrices[i].scale(c)
        return m

    def act(self, a, x) -> tuple:
        terms = []
        for i, c in enumerate(a):
            if not c:
                continue
            for j, y in enumerate(x):
                if y:
                    terms.append((c * y, self.action[i][j]))
        return lincomb(self.field, self.dim, terms)

    def br(self, x, y) -> tuple:
        terms = []
        for i, c in enumerate(x):
            if not c:
                continue
            row = self.bracket[i]
            for j, d in enumerate(y):
                if d:
                    terms.append((c * d, row[j]))
        return lincomb(self.field, self.dim, terms)

    def tw(self, x) -> tuple:
        return self.alpha.apply(x)

    def rho(self, x) -> Matrix:
        d = self.A.dim
        m = Matrix.zeros(self.field, d, d)
        for j, c in enumerate(x):
            if c:
                m = m + self.anchor[j].scale(c)
        return m

    def rho_apply(self, x, a) -> tuple:
        terms = [(c, self.anchor[j].apply(a)) for j, c in enumerate(x) if c]
        return lincomb(self.field, self.A.dim, terms)

    def ph(self, a) -> tuple:
        return self.phi.apply(a)

    def has_zero_anchor(self) -> bool:
        return all(m.is_zero() for m in self.anchor)

    def is_abelian(self) -> bool:
        return not any(any(v) for row in self.bracket for v in row)

    def __repr__(self):
        label = self.name or "HomLieRinehart"
        return "<%s dim A=%d, dim L=%d over %s>" % (label, self.A.dim, self.dim, self.field)


@dataclass(frozen=True)
class HLRMorphism:
    """A pair (g, f); ``g`` is None for the identity of A."""

    f: Matrix
    g: Matrix | None = None

    def g_matrix(self, A: CommAlgebra) -> Matrix:
        return self.g if self.g is not None else Matrix.identity(A.field, A.dim)

    def __call__(self, x) -> tuple:
        return self.f.apply(x)

    def compose(self, other: "HLRMorphism") -> "HLRMorphism":
        """self after other."""
        if self.g is None and other.g is None:
            g = None
        elif self.g is None:
            g = other.g
        elif other.g is None:
            g = self.g
        else:
            g = self.g @ other.g
        return HLRMorphism(self.f @ other.f, g)


def identity_morphism(H: HomLieRinehart) -> HLRMorphism:
    return HLRMorphism(Matrix.identity(H.field, H.dim))


# -- axioms ------------------------------------------------------------------

def check_axioms(H: HomLieRinehart) -> list:
    """All identities of a hom-Lie-Rinehart algebra on basis tuples."""
    A, n, d = H.A, H.dim, H.A.dim
    out = prefixed("A", check_comm_algebra(A))
    out += prefixed("phi", check_algebra_endo(A, H.phi))
    B = [[H.bracket[i][j] for j in range(n)] for i in range(n)]
    X = [H.basis(i) for i in range(n)]
    aX = [H.alpha.column(i) for i in range(n)]

    for i in range(n):
        if any(B[i][i]):
            out.append(Violation("bracket-skew", (i, i)))
        for j in range(i + 1, n):
            if vadd(B[i][j], B[j][i]) != H.zero:
                out.append(Violation("bracket-skew", (i, j)))

    # A-module structure on L
    for j in range(n):
        if H.act(A.unit, X[j]) != X[j]:
            out.append(Violation("action-unital", (j,)))
    for i in range(d):
        for k in range(d):
            for j in range(n):
                lhs = H.act(A.basis(i), H.action[k][j])
                rhs = H.act(A.mult[i][k], X[j])
                if lhs != rhs:
                    out.append(Violation("action-associative", (i, k, j)))

    # hom-Lie algebra
    for i in range(n):
        for j in range(i + 1, n):
            if H.tw(B[i][j]) != H.br(aX[i], aX[j]):
                out.append(Violation("alpha-multiplicative", (i, j)))
    for i, j, k in combinations(range(n), 3):
        s = vadd(vadd(H.br(aX[i], B[j][k]), H.br(aX[j], B[k][i])), H.br(aX[k], B[i][j]))
        if any(s):
            out.append(Violation("hom-Jacobi", (i, j, k)))

    # alpha(a.x) = phi(a).alpha(x)
    for i in range(d):
        pa = H.phi.column(i)
        for j in range(n):
            if H.tw(H.action[i][j]) != H.act(pa, aX[j]):
                out.append(Violation("alpha-A-linear", (i, j)))

    # anchor lands in Der_phi(A)
    for j in range(n):
        for v in derivation_violations(A, H.phi, H.anchor[j]):
            out.append(Violation("anchor-derivation", (j,) + v.witness))

    # (rho, phi) is a representation on A
    rhoA = [H.rho(aX[j]) for j in range(n)]
    for j in range(n):
        if rhoA[j] @ H.phi != H.phi @ H.anchor[j]:
            out.append(Violation("rep-twist", (j,)))
    for i in range(n):
        for j in range(i + 1, n):
            lhs = H.rho(B[i][j]) @ H.phi
            rhs = rhoA[i] @ H.anchor[j] - rhoA[j] @ H.anchor[i]
            if lhs != rhs:
                out.append(Violation("rep-bracket", (i, j)))

    # rho(a.x) = phi(a) rho(x)
    for i in range(d):
        mphi = A.mult_matrix(H.phi.column(i))
        for j in range(n):
            if H.rho(H.action[i][j]) != mphi @ H.anchor[j]:
                out.append(Violation("anchor-A-linear", (i, j)))

    # [x, a.y] = phi(a)[x,y] + rho(x)(a) alpha(y)
    for j in range(n):
        for i in range(d):
            pa = H.phi.column(i)
            ra = H.anchor[j].column(i)
            for k in range(n):
                lhs = H.br(X[j], H.action[i][k])
                rhs = vadd(H.act(pa, B[j][k]), H.act(ra, aX[k]))
                if lhs != rhs:
                    out.append(Violation("Leibniz", (j, i, k)))
    return out


def is_valid(H: HomLieRinehart) -> bool:
    return not check_axioms(H)


# -- submodules --------------------------------------------------------------

def a_span(H: HomLieRinehart, generators) -> Subspace:
    """A-submodule generated by the given vectors (one multiplication pass)."""
    b = SpanBuilder(H.field, H.dim)
    gens = list(generators)
    for i in range(H.A.dim):
        for g in gens:
            b.add(H.act(H.A.basis(i), g))
            if b.full():
                return b.subspace()
    return b.subspace()


def derived_submodule(H: HomLieRinehart) -> Subspace:
    return a_span(H, [H.bracket[i][j] for i, j in combinations(range(H.dim), 2)])


def alpha_derived_submodule(H: HomLieRinehart) -> Subspace:
    aX = [H.alpha.column(i) for i in range(H.dim)]
    return a_span(H, [H.br(aX[i], aX[j]) for i, j in combinations(range(H.dim), 2)])


def is_perfect(H: HomLieRinehart) -> bool:
    return derived_submodule(H).dim == H.dim


def is_alpha_perfect(H: HomLieRinehart) -> bool:
    return alpha_derived_submodule(H).dim == H.dim


def is_subalgebra(H: HomLieRinehart, S: Subspace) -> bool:
    for v in S.basis:
        if not S.contains(H.tw(v)):
            return False
        for i in range(H.A.dim):
            if not S.contains(H.act(H.A.basis(i), v)):
                return False
    for u in S.basis:
        for v in S.basis:
            if not S.contains(H.br(u, v)):
                return False
    return True


def is_quasi_ideal(H: HomLieRinehart, S: Subspace) -> bool:
    if not is_subalgebra(H, S):
        return False
    return all(S.contains(H.br(v, H.basis(j))) for v in S.basis for j in range(H.dim))


def is_ideal(H: HomLieRinehart, S: Subspace) -> bool:
    return is_quasi_ideal(H, S) and all(H.rho(v).is_zero() for v in S.basis)


def center(H: HomLieRinehart, verify: bool = True) -> Subspace:
    """Z_A(L): x with [a.x, z] = [a.alpha(x), z] = 0 and rho(x)(a) = 0."""
    f, n, d = H.field, H.dim, H.A.dim
    cols = []
    for c in range(n):
        x = H.basis(c)
        ax = H.tw(x)
        res = []
        for i in range(d):
            e = H.A.basis(i)
            u, w = H.act(e, x), H.act(e, ax)
            for z in range(n):
                res.extend(H.br(u, H.basis(z)))
                res.extend(H.br(w, H.basis(z)))
            res.extend(H.anchor[c].column(i))
        cols.append(res)
    if n == 0:
        return Subspace.zero(f, 0)
    Z = kernel(Matrix.from_columns(f, cols, len(cols[0])))
    if verify and not is_ideal(H, Z):
        raise ValueError("center of %r is not an ideal" % (H,))
    return Z


# -- morphisms ---------------------------------------------------------------

def check_morphism(src: HomLieRinehart, dst: HomLieRinehart, m: HLRMorphism) -> list:
    fm = m.f
    if fm.shape != (dst.dim, src.dim):
        raise ValueError("morphism matrix must be %dx%d, got %dx%d"
                         % ((dst.dim, src.dim) + fm.shape))
    g = m.g_matrix(src.A)
    if g.shape != (dst.A.dim, src.A.dim):
        raise ValueError("algebra map has shape %dx%d, expected %dx%d"
                         % (g.shape + (dst.A.dim, src.A.dim)))
    out = []
    if g.apply(src.A.unit) != dst.A.unit:
        out.append(Violation("g-unit"))
    for i in range(src.A.dim):
        for j in range(i, src.A.dim):
            if g.apply(src.A.mult[i][j]) != dst.A.mul(g.column(i), g.column(j)):
                out.append(Violation("g-multiplicative", (i, j)))
    fx = [fm.column(j) for j in range(src.dim)]
    for i in range(src.A.dim):
        ga = g.column(i)
        for j in range(src.dim):
            if fm.apply(src.action[i][j]) != dst.act(ga, fx[j]):
                out.append(Violation("A-linear", (i, j)))
    for i in range(src.dim):
        for j in range(i + 1, src.dim):
            if fm.apply(src.bracket[i][j]) != dst.br(fx[i], fx[j]):
                out.append(Violation("bracket", (i, j)))
    for j in range(src.dim):
        if fm.apply(src.alpha.column(j)) != dst.tw(fx[j]):
            out.append(Violation("alpha", (j,)))
    if g @ src.phi != dst.phi @ g:
        out.append(Violation("phi"))
    for j in range(src.dim):
        lhs = g @ src.anchor[j]
        rhs = dst.rho(fx[j]) @ g
        if lhs != rhs:
            out.append(Violation("anchor", (j,)))
    return out


def is_morphism(src, dst, m) -> bool:
    return not check_morphism(src, dst, m)


# -- derived algebras --------------------------------------------------------

def restrict(H: HomLieRinehart, S: Subspace, name: str = ""):
    """Subalgebra on S in the coordinates of its canonical basis.

    Returns ``(K, inclusion)``; raises if S is not a subalgebra.
    """
    if not is_subalgebra(H, S):
        raise ValueError("subspace is not a subalgebra")
    f = H.field
    B = list(S.basis)
    k = len(B)

    def coords(v):
        return S.coordinates(v)

    action = [[coords(H.act(H.A.basis(i), b)) for b in B] for i in range(H.A.dim)]
    bracket = [[coords(H.br(u, v)) for v in B] for u in B]
    alpha = Matrix.from_columns(f, [coords(H.tw(b)) for b in B], k)
    anchor = [H.rho(b) for b in B]
    K = HomLieRinehart.build(H.A, H.phi, k, bracket, alpha, anchor, action, name)
    return K, HLRMorphism(S.basis_matrix())


def quotient_algebra(H: HomLieRinehart, I: Subspace, name: str = ""):
    """H / I for an ideal I.  Returns ``(Q, projection)``."""
    if not is_ideal(H, I):
        raise ValueError("subspace is not an ideal")
    from .linalg import quotient
    Qp = quotient(H.dim, I)
    f = H.field
    reps = [H.basis(j) for j in Qp.rep_columns]
    q = Qp.dim
    action = [[Qp.project(H.act(H.A.basis(i), r)) for r in reps] for i in range(H.A.dim)]
    bracket = [[Qp.project(H.br(u, v)) for v in reps] for u in reps]
    alpha = Matrix.from_columns(f, [Qp.project(H.tw(r)) for r in reps], q)
    anchor = [H.rho(r) for r in reps]
    Q = HomLieRinehart.build(H.A, H.phi, q, bracket, alpha, anchor, action, name)
    return Q, HLRMorphism(Qp.project_matrix)


def zero_algebra(A: CommAlgebra, phi: Matrix) -> HomLieRinehart:
    return HomLieRinehart(A, phi, 0, tuple(() for _ in range(A.dim)), (), Matrix.zeros(A.field, 0, 0),
                          (), "0")


def abelian_algebra(A: CommAlgebra, phi: Matrix, dim: int, action, beta: Matrix,
                    name: str = "") -> HomLieRinehart:
    """Zero bracket and zero anchor on an A-module with twist beta."""
    f = A.field
    bracket = [[zero_vector(f, dim)] * dim for _ in range(dim)]
    return HomLieRinehart.build(A, phi, dim, bracket, beta, None, action, name)


def transport(H: HomLieRinehart, P: Matrix, name: str = "") -> HomLieRinehart:
    """Same algebra in the basis given by the columns of the invertible P."""
    Pi = P.inverse()
    cols = [P.column(j) for j in range(H.dim)]
    action = [[Pi.apply(H.act(H.A.basis(i), c)) for c in cols] for i in range(H.A.dim)]
    bracket = [[Pi.apply(H.br(u, v)) for v in cols] for u in cols]
    alpha = Pi @ H.alpha @ P
    anchor = [H.rho(c) for c in cols]
    return HomLieRinehart.build(H.A, H.phi, H.dim, bracket, alpha, anchor, action,
                                name or H.name)
