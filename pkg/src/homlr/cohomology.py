"""Left and right modules, the cochain complex C^n(L; M) and low-degree
cohomology, and the passage between 2-cocycles and extensions."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb

from .hlr import HLRMorphism, HomLieRinehart, abelian_algebra
from .linalg import (Matrix, Subspace, SpanBuilder, alternating_eval, kernel, lincomb,
                     unit_vector, vadd, vsub, zero_vector)
from .report import Violation


@dataclass(frozen=True)
class LeftModule:
    """``action[i][m] = e_i . m``, ``theta[x][m] = {x, m}``, twist ``beta``."""

    dim: int
    action: tuple
    theta: tuple
    beta: Matrix

    def act(self, field, a, m) -> tuple:
        terms = []
        for i, c in enumerate(a):
            if c:
                for j, y in enumerate(m):
                    if y:
                        terms.append((c * y, self.action[i][j]))
        return lincomb(field, self.dim, terms)

    def th(self, field, x, m) -> tuple:
        terms = []
        for i, c in enumerate(x):
            if c:
                for j, y in enumerate(m):
                    if y:
                        terms.append((c * y, self.theta[i][j]))
        return lincomb(field, self.dim, terms)


@dataclass(frozen=True)
class RightModule:
    """``theta[m][x] = {m, x}``."""

    dim: int
    action: tuple
    theta: tuple
    beta: Matrix

    def act(self, field, a, m) -> tuple:
        return LeftModule.act(self, field, a, m)

    def th(self, field, m, x) -> tuple:
        terms = []
        for i, c in enumerate(m):
            if c:
                for j, y in enumerate(x):
                    if y:
                        terms.append((c * y, self.theta[i][j]))
        return lincomb(field, self.dim, terms)


def _tup(field, v):
    return tuple(field(x) for x in v)


def make_left_module(H: HomLieRinehart, dim: int, action, theta, beta) -> LeftModule:
    f = H.field
    action = tuple(tuple(_tup(f, v) for v in row) for row in action)
    theta = tuple(tuple(_tup(f, v) for v in row) for row in theta)
    if not isinstance(beta, Matrix):
        beta = Matrix(f, beta, dim, dim)
    return LeftModule(dim, action, theta, beta)


def trivial_module(H: HomLieRinehart, dim: int = 1, beta=None, augmentation=None) -> LeftModule:
    """k^dim with zero theta; A acts through an algebra map A -> k.

    ``augmentation`` lists the values on the basis of A; by default the
    unit gets 1 and every other basis vector 0.
    """
    f = H.field
    if augmentation is None:
        augmentation = [f.one if u else f.zero for u in H.A.unit]
    eps = [f(x) for x in augmentation]
    action = [[vscale_unit(f, dim, j, eps[i]) for j in range(dim)] for i in range(H.A.dim)]
    theta = [[zero_vector(f, dim)] * dim for _ in range(H.dim)]
    if beta is None:
        beta = Matrix.identity(f, dim)
    return make_left_module(H, dim, action, theta, beta)


def vscale_unit(f, n, j, c):
    return tuple(c if k == j else f.zero for k in range(n))


def canonical_module(H: HomLieRinehart) -> LeftModule:
    """(A, phi) with {x, a} = rho(x)(a)."""
    A = H.A
    action = [[A.mult[i][j] for j in range(A.dim)] for i in range(A.dim)]
    theta = [[H.anchor[x].column(a) for a in range(A.dim)] for x in range(H.dim)]
    return make_left_module(H, A.dim, action, theta, H.phi)


def canonical_right_candidate(H: HomLieRinehart) -> RightModule:
    """(A, phi) with {a, x} := rho(x)(a); generally not a right module."""
    A = H.A
    action = tuple(tuple(A.mult[i][j] for j in range(A.dim)) for i in range(A.dim))
    theta = tuple(tuple(H.anchor[x].column(a) for x in range(H.dim)) for a in range(A.dim))
    return RightModule(A.dim, action, theta, H.phi)


def _module_laws(H, M) -> list:
    f, A = H.field, H.A
    out = []
    for j in range(M.dim):
        m = unit_vector(f, M.dim, j)
        if M.act(f, A.unit, m) != m:
            out.append(Violation("module-unital", (j,)))
    for i in range(A.dim):
        for k in range(A.dim):
            for j in range(M.dim):
                lhs = M.act(f, A.basis(i), M.action[k][j])
                rhs = M.act(f, A.mult[i][k], unit_vector(f, M.dim, j))
                if lhs != rhs:
                    out.append(Violation("module-associative", (i, k, j)))
    for i in range(A.dim):
        pa = H.phi.column(i)
        for j in range(M.dim):
            lhs = M.beta.apply(M.action[i][j])
            rhs = M.act(f, pa, M.beta.column(j))
            if lhs != rhs:
                out.append(Violation("beta-A-linear", (i, j)))
    return out


def check_left_module(H: HomLieRinehart, M: LeftModule) -> list:
    f, A, n = H.field, H.A, H.dim
    if M.beta.shape != (M.dim, M.dim):
        raise ValueError("beta must be %dx%d" % (M.dim, M.dim))
    if len(M.theta) != n or any(len(r) != M.dim for r in M.theta):
        raise ValueError("theta must be indexed by L basis x M basis")
    if len(M.action) != A.dim or any(len(r) != M.dim for r in M.action):
        raise ValueError("module action must be indexed by A basis x M basis")
    out = _module_laws(H, M)
    X = [H.basis(i) for i in range(n)]
    aX = [H.alpha.column(i) for i in range(n)]
    Ms = [unit_vector(f, M.dim, j) for j in range(M.dim)]
    for x in range(n):
        for j in range(M.dim):
            lhs = M.th(f, aX[x], M.beta.column(j))
            rhs = M.beta.apply(M.theta[x][j])
            if lhs != rhs:
                out.append(Violation("rep-twist", (x, j)))
    for x in range(n):
        for y in range(x + 1, n):
            for j in range(M.dim):
                lhs = M.th(f, H.bracket[x][y], M.beta.column(j))
                rhs = vsub(M.th(f, aX[x], M.theta[y][j]), M.th(f, aX[y], M.theta[x][j]))
                if lhs != rhs:
                    out.append(Violation("rep-bracket", (x, y, j)))
    for i in range(A.dim):
        pa = H.phi.column(i)
        for x in range(n):
            for j in range(M.dim):
                lhs = M.th(f, H.action[i][x], Ms[j])
                rhs = M.act(f, pa, M.theta[x][j])
                if lhs != rhs:
                    out.append(Violation("theta-A-linear", (i, x, j)))
                lhs = M.th(f, X[x], M.action[i][j])
                rhs = vadd(M.act(f, pa, M.theta[x][j]),
                           M.act(f, H.anchor[x].column(i), M.beta.column(j)))
                if lhs != rhs:
                    out.append(Violation("theta-Leibniz", (x, i, j)))
    return out


def check_right_module(H: HomLieRinehart, M: RightModule) -> list:
    f, A, n = H.field, H.A, H.dim
    if M.beta.shape != (M.dim, M.dim):
        raise ValueError("beta must be %dx%d" % (M.dim, M.dim))
    if len(M.theta) != M.dim or any(len(r) != n for r in M.theta):
        raise ValueError("theta must be indexed by M basis x L basis")
    out = _module_laws(H, M)
    X = [H.basis(i) for i in range(n)]
    aX = [H.alpha.column(i) for i in range(n)]
    Ms = [unit_vector(f, M.dim, j) for j in range(M.dim)]
    # representation conditions for theta(x) = {-, x}
    for x in range(n):
        for j in range(M.dim):
            lhs = M.th(f, M.beta.column(j), aX[x])
            rhs = M.beta.apply(M.theta[j][x])
            if lhs != rhs:
                out.append(Violation("rep-twist", (x, j)))
    for x in range(n):
        for y in range(x + 1, n):
            for j in range(M.dim):
                lhs = M.th(f, M.beta.column(j), H.bracket[x][y])
                rhs = vsub(M.th(f, M.theta[j][y], aX[x]), M.th(f, M.theta[j][x], aX[y]))
                if lhs != rhs:
                    out.append(Violation("rep-bracket", (x, y, j)))
    for i in range(A.dim):
        pa = H.phi.column(i)
        for x in range(n):
            for j in range(M.dim):
                target = vsub(M.act(f, pa, M.theta[j][x]),
                              M.act(f, H.anchor[x].column(i), M.beta.column(j)))
                if M.th(f, M.action[i][j], X[x]) != target:
                    out.append(Violation("right-A-module-slot", (i, x, j)))
                if M.th(f, Ms[j], H.action[i][x]) != target:
                    out.append(Violation("right-A-algebra-slot", (i, x, j)))
    return out


# -- cochains ----------------------------------------------------------------

def cochain_index(H: HomLieRinehart, n: int) -> list:
    return list(combinations(range(H.dim), n))


def cochain_coeff_dim(H, M, n) -> int:
    return comb(H.dim, n) * M.dim if 0 <= n <= H.dim else 0


def cochain_values(H, M, n, vec) -> dict:
    """Increasing index tuple -> value vector in M."""
    out = {}
    for k, I in enumerate(cochain_index(H, n)):
        v = tuple(vec[k * M.dim:(k + 1) * M.dim])
        if any(v):
            out[I] = v
    return out


def cochain_vector(H, M, n, values: dict) -> tuple:
    f = H.field
    out = []
    for I in cochain_index(H, n):
        out.extend(values.get(I, zero_vector(f, M.dim)))
    return tuple(out)


def evaluate(H, M, n, vec, xs) -> tuple:
    """f(x_1, ..., x_n) for arbitrary vectors by alternating multilinearity."""
    return alternating_eval(H.field, cochain_values(H, M, n, vec), xs, M.dim)


def _evaluator(H, M, n, vec):
    vals = cochain_values(H, M, n, vec)
    return lambda xs: alternating_eval(H.field, vals, xs, M.dim)


def _power(m: Matrix, k: int) -> Matrix:
    out = Matrix.identity(m.field, m.rows)
    for _ in range(k):
        out = m @ out
    return out


def membership_residual(H, M, n, vec) -> tuple:
    """Stacked defects of the two membership conditions (zero iff f in C^n)."""
    f = H.field
    ev = _evaluator(H, M, n, vec)
    res = []
    aX = [H.alpha.column(i) for i in range(H.dim)]
    for I in cochain_index(H, n):
        lhs = ev([aX[i] for i in I])
        rhs = M.beta.apply(ev([H.basis(i) for i in I]))
        res.extend(vsub(lhs, rhs))
    phik = _power(H.phi, n - 1)
    for i in range(H.A.dim):
        pa = phik.column(i)
        for j in range(H.dim):
            for J in combinations(range(H.dim), n - 1):
                xs = [H.basis(t) for t in J]
                lhs = ev([H.action[i][j]] + xs)
                rhs = M.act(f, pa, ev([H.basis(j)] + xs))
                res.extend(vsub(lhs, rhs))
    return tuple(res)


def is_cochain(H, M, n, vec) -> bool:
    return not any(membership_residual(H, M, n, vec))


def cochain_space(H: HomLieRinehart, M: LeftModule, n: int) -> Subspace:
    f = H.field
    N = cochain_coeff_dim(H, M, n)
    if N == 0:
        return Subspace.zero(f, N)
    cols = [membership_residual(H, M, n, unit_vector(f, N, k)) for k in range(N)]
    if not cols[0]:
        return Subspace.full(f, N)
    return kernel(Matrix.from_columns(f, cols, len(cols[0])))


def differential(H: HomLieRinehart, M: LeftModule, n: int, vec, check: bool = True) -> tuple:
    """delta f in C^{n+1} with the usual alternating signs."""
    f = H.field
    if check and not is_cochain(H, M, n, vec):
        raise ValueError("argument is not in C^%d" % n)
    ev = _evaluator(H, M, n, vec)
    an1 = _power(H.alpha, n - 1)
    out = {}
    for I in combinations(range(H.dim), n + 1):
        xs = [H.basis(i) for i in I]
        acc = zero_vector(f, M.dim)
        for p in range(n + 1):
            rest = xs[:p] + xs[p + 1:]
            term = M.th(f, an1.apply(xs[p]), ev(rest))
            acc = vadd(acc, term) if p % 2 == 0 else vsub(acc, term)
        axs = [H.alpha.apply(x) for x in xs]
        for p in range(n + 1):
            for q in range(p + 1, n + 1):
                rest = [axs[t] for t in range(n + 1) if t != p and t != q]
                term = ev([H.br(xs[p], xs[q])] + rest)
                acc = vadd(acc, term) if (p + q) % 2 == 0 else vsub(acc, term)
        if any(acc):
            out[I] = acc
    return cochain_vector(H, M, n + 1, out)


def differential_matrix(H, M, n) -> Matrix:
    """delta on the full coefficient space of degree n (no membership check)."""
    f = H.field
    N = cochain_coeff_dim(H, M, n)
    rows = cochain_coeff_dim(H, M, n + 1)
    cols = [differential(H, M, n, unit_vector(f, N, k), check=False) for k in range(N)]
    if not cols:
        return Matrix.zeros(f, rows, 0)
    return Matrix.from_columns(f, cols, rows)


@dataclass(frozen=True)
class Cohomology:
    degree: int
    dim: int
    cocycles: Subspace
    coboundaries: Subspace
    representatives: tuple


@lru_cache(maxsize=64)
def cohomology(H: HomLieRinehart, M: LeftModule, n: int) -> Cohomology:
    """H^n = ker(delta on C^n) / delta(C^{n-1}); delta(C^0) is taken as 0."""
    f = H.field
    if n < 1:
        raise ValueError("degree must be at least 1")
    C = cochain_space(H, M, n)
    N = cochain_coeff_dim(H, M, n)
    if N == 0:
        z = Subspace.zero(f, 0)
        return Cohomology(n, 0, z, z, ())
    images = [differential(H, M, n, b, check=False) for b in C.basis]
    if images and any(any(v) for v in images):
        coords = Matrix.from_columns(f, images, len(images[0]))
        ker = kernel(coords)
        Z = Subspace.span(f, [lincomb(f, N, zip(k, C.basis)) for k in ker.basis], N)
    else:
        Z = C
    if n >= 2:
        Cm = cochain_space(H, M, n - 1)
        Bv = [differential(H, M, n - 1, b, check=False) for b in Cm.basis]
        B = Subspace.span(f, Bv, N)
        if not B <= Z:
            raise ArithmeticError("coboundaries are not cocycles: the complex is broken")
    else:
        B = Subspace.zero(f, N)
    sb = SpanBuilder(f, N)
    for b in B.basis:
        sb.add(b)
    reps = [z for z in Z.basis if sb.add(z)]
    return Cohomology(n, len(reps), Z, B, tuple(reps))


# -- cocycles and extensions -------------------------------------------------

def module_algebra(H: HomLieRinehart, M: LeftModule, name: str = "") -> HomLieRinehart:
    """M as an algebra with zero bracket and zero anchor."""
    return abelian_algebra(H.A, H.phi, M.dim, M.action, M.beta, name)


def extension_from_cocycle(H: HomLieRinehart, M: LeftModule, vec, check: bool = True):
    """L (+) M with [x+m, y+n] = [x,y] + {x,n} - {y,m} + f(x,y)."""
    from .extensions import Extension
    f = H.field
    if check:
        if not is_cochain(H, M, 2, vec):
            raise ValueError("not a 2-cochain")
        if any(differential(H, M, 2, vec, check=False)):
            raise ValueError("not a 2-cocycle")
    n, m = H.dim, M.dim
    N = n + m
    ev = _evaluator(H, M, 2, vec)
    zL, zM = zero_vector(f, n), zero_vector(f, m)
    bracket = [[zero_vector(f, N)] * N for _ in range(N)]
    for i in range(n):
        for j in range(n):
            bracket[i][j] = H.bracket[i][j] + ev([H.basis(i), H.basis(j)])
        for k in range(m):
            v = M.theta[i][k]
            bracket[i][n + k] = zL + v
            bracket[n + k][i] = zL + tuple(-c for c in v)
    action = [[H.action[i][j] + zM for j in range(n)] + [zL + M.action[i][k] for k in range(m)]
              for i in range(H.A.dim)]
    from .linalg import block_diagonal
    alpha = block_diagonal(f, H.alpha, M.beta)
    anchor = list(H.anchor) + [Matrix.zeros(f, H.A.dim, H.A.dim)] * m
    mid = HomLieRinehart.build(H.A, H.phi, N, bracket, alpha, anchor, action)
    ker = module_algebra(H, M)
    i_map = Matrix.from_columns(f, [zL + unit_vector(f, m, k) for k in range(m)], N)
    s_map = Matrix.from_columns(f, [H.basis(j) for j in range(n)] + [zL] * m, n)
    return Extension(ker, mid, H, HLRMorphism(i_map), HLRMorphism(s_map))


def induced_module(E, tau: Matrix) -> LeftModule:
    """Module structure on the kernel from [tau(x), i(m)] and the kernel's A-action."""
    from .linalg import solve
    H, K = E.base, E.ker
    Im = E.i.f

    def pull(v):
        w = solve(Im, v)
        if w is None:
            raise ArithmeticError("[tau(x), i(m)] is not in the kernel")
        return w

    theta = [[pull(E.mid.br(tau.column(x), Im.column(k))) for k in range(K.dim)]
             for x in range(H.dim)]
    return make_left_module(H, K.dim, K.action, theta, K.alpha)


def cocycle_from_extension(E, tau: Matrix | None = None) -> tuple:
    """f(x, y) = [tau x, tau y] - tau [x, y] pulled back to the kernel."""
    from .extensions import find_A_split_section
    from .linalg import solve
    H = E.base
    if tau is None:
        tau = find_A_split_section(E)
        if tau is None:
            raise ValueError("the extension is not A-split")
    M = induced_module(E, tau)
    vals = {}
    for i, j in combinations(range(H.dim), 2):
        d = vsub(E.mid.br(tau.column(i), tau.column(j)), tau.apply(H.bracket[i][j]))
        v = solve(E.i.f, d)
        if v is None:
            raise ArithmeticError("bracket defect is not in the kernel")
        if any(v):
            vals[(i, j)] = v
    return cochain_vector(H, M, 2, vals)
