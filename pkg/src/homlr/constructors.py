"""Ways of producing hom-Lie-Rinehart algebras from simpler data."""

from __future__ import annotations

from .commalg import ground_algebra, check_algebra_endo
from .field import Field
from .hlr import HLRMorphism, HomLieRinehart, check_axioms, check_morphism, restrict
from .linalg import Matrix, Subspace, kernel, zero_vector


def from_hom_lie_algebra(field: Field, bracket, alpha, name: str = "") -> HomLieRinehart:
    """A hom-Lie algebra seen over A = k with phi = id and zero anchor."""
    n = len(bracket)
    A = ground_algebra(field)
    H = HomLieRinehart.build(A, [[1]], n, bracket, alpha, None, None, name)
    bad = check_axioms(H)
    if bad:
        raise ValueError("not a hom-Lie algebra: %s" % "; ".join(str(v) for v in bad[:5]))
    return H


def twist_by_endomorphism(H: HomLieRinehart, g: Matrix, f: Matrix, name: str = "") -> HomLieRinehart:
    """Compose a Lie-Rinehart algebra with an endomorphism (g, f).

    The new bracket is f([x, y]), the anchor g(rho(x)(a)), alpha = f, phi = g.
    """
    field = H.field
    eye_L = Matrix.identity(field, H.dim)
    eye_A = Matrix.identity(field, H.A.dim)
    if H.alpha != eye_L or H.phi != eye_A:
        raise ValueError("the seed must have alpha = id and phi = id")
    if check_algebra_endo(H.A, g):
        raise ValueError("g is not an algebra endomorphism")
    bad = check_morphism(H, H, HLRMorphism(f, g))
    if bad:
        raise ValueError("(g, f) is not an endomorphism: %s" % "; ".join(str(v) for v in bad[:5]))
    n = H.dim
    bracket = [[f.apply(H.bracket[i][j]) for j in range(n)] for i in range(n)]
    anchor = [g @ m for m in H.anchor]
    return HomLieRinehart.build(H.A, g, n, bracket, f, anchor, H.action, name)


def fiber_product(H1: HomLieRinehart, H2: HomLieRinehart, name: str = ""):
    """Pairs (l, m) with rho(l) = rho(m), componentwise structure.

    Returns ``(P, pr1, pr2)``.
    """
    if H1.A != H2.A or H1.phi != H2.phi:
        raise ValueError("fiber product needs a common (A, phi)")
    field = H1.field
    A = H1.A
    n1, n2, d = H1.dim, H2.dim, A.dim
    n = n1 + n2

    def split(v):
        return v[:n1], v[n1:]

    # ambient direct sum, anchor read from the first factor
    action = [[None] * n for _ in range(d)]
    for i in range(d):
        for j in range(n1):
            action[i][j] = H1.action[i][j] + zero_vector(field, n2)
        for j in range(n2):
            action[i][n1 + j] = zero_vector(field, n1) + H2.action[i][j]
    bracket = [[zero_vector(field, n)] * n for _ in range(n)]
    for i in range(n1):
        for j in range(n1):
            bracket[i][j] = H1.bracket[i][j] + zero_vector(field, n2)
    for i in range(n2):
        for j in range(n2):
            bracket[n1 + i][n1 + j] = zero_vector(field, n1) + H2.bracket[i][j]
    from .linalg import block_diagonal
    alpha = block_diagonal(field, H1.alpha, H2.alpha)
    anchor = list(H1.anchor) + [Matrix.zeros(field, d, d)] * n2
    S = HomLieRinehart.build(A, H1.phi, n, bracket, alpha, anchor, action)

    # condition rho1(l) - rho2(m) = 0, linear in (l, m)
    cols = []
    for j in range(n1):
        cols.append(H1.anchor[j].entries)
    for j in range(n2):
        cols.append((-H2.anchor[j]).entries)
    if n == 0:
        V = Subspace.zero(field, 0)
    elif d == 0:
        V = Subspace.full(field, n)
    else:
        V = kernel(Matrix.from_columns(field, cols, d * d))
    P, inc = restrict(S, V, name)
    pr1 = HLRMorphism(Matrix(field, [r for r in inc.f.data[:n1]], n1, P.dim))
    pr2 = HLRMorphism(Matrix(field, [r for r in inc.f.data[n1:]], n2, P.dim))
    return P, pr1, pr2


def change_basis(H: HomLieRinehart, P: Matrix, name: str = "") -> HomLieRinehart:
    """Re-express H in the basis given by the columns of P."""
    from .hlr import transport
    return transport(H, P, name)
