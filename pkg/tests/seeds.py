"""Random valid Lie-Rinehart seeds with endomorphisms, and mutations."""

from __future__ import annotations

import random
from fractions import Fraction

from homlr import fixtures as fx
from homlr.constructors import change_basis, from_hom_lie_algebra
from homlr.field import QQ
from homlr.hlr import HomLieRinehart
from homlr.linalg import Matrix


def small(rng: random.Random, nonzero: bool = False):
    while True:
        x = Fraction(rng.randint(-3, 3), rng.choice((1, 1, 2, 3)))
        if x or not nonzero:
            return x


def random_invertible(rng: random.Random, n: int, field=QQ) -> Matrix:
    while True:
        m = Matrix(field, [[field(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)])
        if m.is_invertible():
            return m


def _sl2_endo(rng):
    if rng.random() < 0.2:
        return fx.diag(0, 0, 0)
    lam = small(rng, True)
    return fx.diag(lam, 1 / lam, 1)


def _block(n, blocks):
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, r in enumerate(b):
            for j, x in enumerate(r):
                out[off + i][off + j] = x
        off += len(b)
    return out


def random_seed(rng: random.Random, field=QQ):
    """(H, g, f): a Lie-Rinehart algebra (alpha = id, phi = id) and an
    endomorphism (g, f), re-expressed in a random basis."""
    kind = rng.choice(["sl2", "heis", "semidirect", "witt", "abelian"])
    one_by_one = Matrix.identity(field, 1)
    if kind == "sl2":
        H = fx.F2(field)
        g, f = one_by_one, Matrix(field, _sl2_endo(rng))
    elif kind == "heis":
        H = from_hom_lie_algebra(field, fx.heisenberg_bracket(), fx.identity(3), "heis")
        a, b = small(rng), small(rng)
        g, f = one_by_one, Matrix(field, fx.diag(a, b, a * b))
    elif kind == "semidirect":
        H = fx.F6(field)
        lam = small(rng, True)
        M = [[small(rng) for _ in range(2)] for _ in range(2)]
        if rng.random() < 0.2:
            M = [[0, 0], [0, 0]]
        # Ad(diag(lam, 1/lam)) on sl2 and on V, tensored with M on k^2
        V = [[lam, 0], [0, 1 / lam]]
        # basis v+ w1, v- w1, v+ w2, v- w2
        VM = [[V[i % 2][j % 2] * M[i // 2][j // 2] for j in range(4)] for i in range(4)]
        f = Matrix(field, _block(7, [fx.diag(lam * lam, 1 / (lam * lam), 1), VM]))
        g = one_by_one
    elif kind == "witt":
        order = rng.choice((2, 3))
        H = fx.witt_seed(field, order, small(rng, True))
        g, f = fx.witt_scaling(field, order, small(rng))
    else:
        n = rng.randint(1, 4)
        H = from_hom_lie_algebra(field, [[[0] * n for _ in range(n)] for _ in range(n)],
                                 fx.identity(n), "ab")
        g = one_by_one
        f = Matrix(field, [[small(rng) for _ in range(n)] for _ in range(n)])
    if rng.random() < 0.7:
        P = random_invertible(rng, H.dim, field)
        H = change_basis(H, P)
        f = P.inverse() @ f @ P
    return H, g, f


def mutate(H: HomLieRinehart, rng: random.Random) -> HomLieRinehart:
    """Perturb one structure constant so that at least one identity fails."""
    f = H.field
    n = H.dim
    bracket = [[list(v) for v in r] for r in H.bracket]
    action = [[list(v) for v in r] for r in H.action]
    kind = rng.choice(["skew", "diagonal", "unit"]) if n else "unit"
    c = f(small(rng, True))
    if kind == "skew" and n >= 2:
        i, j = rng.sample(range(n), 2)
        bracket[i][j][rng.randrange(n)] += c
    elif kind == "diagonal" or (kind == "skew" and n < 2):
        i = rng.randrange(n)
        bracket[i][i][rng.randrange(n)] += c
    else:
        # a.x for the unit a must be x; perturb the unit's action
        j = rng.randrange(n)
        u = H.A.unit
        k = next(i for i, x in enumerate(u) if x)
        action[k][j][rng.randrange(n)] += c / u[k]
    return HomLieRinehart.build(H.A, H.phi, n, bracket, H.alpha, H.anchor, action, "mutant")


def coboundary_extension(H: HomLieRinehart, m: int, rng: random.Random):
    """Central extension of H by k^m along delta of a random 1-cochain.

    Forced to be nonzero when the coboundary space allows it.
    """
    from homlr.cohomology import (cochain_space, differential, extension_from_cocycle,
                                  trivial_module)
    from homlr.linalg import lincomb
    M = trivial_module(H, m)
    C = cochain_space(H, M, 1)
    N = H.dim * m
    for _ in range(20):
        c = lincomb(H.field, N, [(H.field(small(rng)), b) for b in C.basis])
        b = differential(H, M, 1, c)
        if any(b):
            break
    return extension_from_cocycle(H, M, b)
