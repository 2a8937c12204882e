"""Acceptance criteria 1-8, exact arithmetic throughout.

Each test prints one ``criterion N: PASS`` or ``criterion N: FAIL`` line and
then asserts.  Also runnable as a script:  python3 tests/test_acceptance.py
"""

import os
import random
import subprocess
import sys

import pytest

HERE = os.path.dirname(os.path.abspath(__file__))
if HERE not in sys.path:
    sys.path.insert(0, HERE)

from homlr import clear_caches, fixtures as fx  # noqa: E402
from homlr.cli import corpus, run  # noqa: E402
from homlr.cohomology import (canonical_module, cochain_space, cohomology,  # noqa: E402
                              differential, is_cochain, trivial_module)
from homlr.constructors import from_hom_lie_algebra, twist_by_endomorphism  # noqa: E402
from homlr.extensions import (Extension, central_lifts, compose_central,  # noqa: E402
                              is_alpha_central, is_central)
from homlr.field import QQ  # noqa: E402
from homlr.hlr import (HLRMorphism, center, check_axioms, check_morphism,  # noqa: E402
                       is_alpha_perfect, is_perfect)
from homlr.lifting import (check_alpha_derivation, inner_derivation,  # noqa: E402
                           lift_alpha_derivation, lift_automorphism)
from homlr.linalg import Matrix, Subspace, lincomb  # noqa: E402
from homlr.report import HypothesisError  # noqa: E402
from homlr.tensor import (abelian_tensor, bracket_pair, build_tensor,  # noqa: E402
                          central_extension_pairs, compare_uce_tensor, projections,
                          self_action, symmetry_iso, tensor_exactness, trivial_pair)
from homlr.uce import (alpha_universality_witness, build_uce, kernel_of_u,  # noqa: E402
                       uce_extension, universality_witness)
import regen_goldens as rg  # noqa: E402
from seeds import coboundary_extension, mutate, random_seed  # noqa: E402


def _report(n, ok, detail=""):
    line = "criterion %d: %s" % (n, "PASS" if ok else "FAIL")
    if detail and not ok:
        line += "  (%s)" % detail
    print(line, flush=True)


def _outcome(n, checks):
    """Run named checks; each returns truthy for success."""
    failed = []
    for name, fn in checks:
        try:
            if not fn():
                failed.append(name)
        except Exception as e:  # a crash counts as a failure of that check
            failed.append("%s: %r" % (name, e))
    return not failed, "; ".join(failed)


# -- criterion 1 -------------------------------------------------------------

def criterion_1():
    def fixtures_valid():
        return all(check_axioms(getattr(fx, n)()) == [] for n in ("F1", "F2", "F3", "F4"))

    def twists_valid():
        rng = random.Random(1001)
        for _ in range(20):
            H, g, f = random_seed(rng)
            if check_axioms(H) or check_axioms(twist_by_endomorphism(H, g, f)):
                return False
        return True

    def mutants_flagged():
        rng = random.Random(2002)
        for _ in range(20):
            H, _, _ = random_seed(rng)
            bad = check_axioms(mutate(H, rng))
            if not bad or any(v.witness is None for v in bad):
                return False
        return True

    return _outcome(1, [("F1-F4 valid", fixtures_valid), ("20 twists", twists_valid),
                        ("20 mutants", mutants_flagged)])


# -- criterion 2 -------------------------------------------------------------

def criterion_2():
    def dd_zero():
        rng = random.Random(3)
        for name in ("F1", "F2", "F3", "F4"):
            H = getattr(fx, name)()
            for M in (trivial_module(H), canonical_module(H)):
                for n in range(1, H.dim):
                    C = cochain_space(H, M, n)
                    vecs = list(C.basis)
                    for _ in range(3 if vecs else 0):
                        vecs.append(lincomb(H.field, C.ambient_dim,
                                            [(H.field(rng.randint(-4, 4)), b) for b in C.basis]))
                    for c in vecs:
                        d = differential(H, M, n, c)
                        if not is_cochain(H, M, n + 1, d):
                            return False
                        if any(differential(H, M, n + 1, d)):
                            return False
        return True

    return _outcome(2, [("delta delta = 0", dd_zero)])


# -- criterion 3 -------------------------------------------------------------

def criterion_3():
    def abelian_law():
        for n in (2, 3, 4):
            zero = [[[0] * n for _ in range(n)] for _ in range(n)]
            ident = [[int(r == c) for c in range(n)] for r in range(n)]
            if build_uce(from_hom_lie_algebra(QQ, zero, ident, "ab")).dim != n * (n - 1) // 2:
                return False
        return True

    def h2(H):
        return cohomology(H, trivial_module(H), 2).dim

    return _outcome(3, [
        ("dim uce(F1) = 1", lambda: build_uce(fx.F1()).dim == 1),
        ("dim uce(F2) = 3", lambda: build_uce(fx.F2()).dim == 3),
        ("Ker u = 0 on F2", lambda: kernel_of_u(build_uce(fx.F2())).dim == 0),
        ("H2(F1) = 1", lambda: h2(fx.F1()) == 1),
        ("H2(F2) = 0", lambda: h2(fx.F2()) == 0),
        ("abelian law", abelian_law),
    ])


# -- criterion 4 -------------------------------------------------------------

def _universality_ok(H, E):
    U = build_uce(H)
    tau = universality_witness(U, E)
    if E.sigma.f @ tau.f != U.u.f or check_morphism(U.algebra, E.mid, tau):
        return False
    part, hom = central_lifts(U.algebra, E, U.u.f)
    if hom.dim != 0 or part != tau.f:
        return False
    # perturbing tau through the kernel destroys the morphism property
    for j in range(U.dim):
        for k in range(E.ker.dim):
            lam = Matrix.from_function(QQ, E.ker.dim, U.dim,
                                       lambda c: tuple(int(r == k and c == j)
                                                       for r in range(E.ker.dim)))
            if not check_morphism(U.algebra, E.mid, HLRMorphism(tau.f + E.i.f @ lam)):
                return False
    if is_alpha_perfect(H) and alpha_universality_witness(U, E).f != tau.f:
        return False
    return True


def criterion_4():
    checks = []
    for name in ("F2", "F3"):
        H = getattr(fx, name)()

        def structure(H=H):
            U = build_uce(H)
            return (kernel_of_u(U) <= center(U.algebra) and is_perfect(U.algebra)
                    and is_alpha_perfect(U.algebra))

        def universality(H=H):
            exts = [coboundary_extension(H, m, random.Random(40 + m)) for m in (1, 2, 3)]
            exts.append(uce_extension(build_uce(H)))
            return all(is_central(E) for E in exts) and all(_universality_ok(H, E) for E in exts)

        checks += [(name + " uce structure", structure), (name + " universality", universality)]
    return _outcome(4, checks)


# -- criterion 5 -------------------------------------------------------------

def _rebase(E, base):
    return Extension(E.ker, E.mid, base, E.i, E.sigma)


def stacked_extensions():
    out = []
    for twisted in (False, True):
        outer = fx.F6_extension(twisted=twisted)
        out.append((outer, uce_extension(build_uce(outer.mid))))
    for H in (fx.F6(), fx.F3()):
        UH = build_uce(H)
        inner = coboundary_extension(UH.algebra, 1, random.Random(5))
        out.append((uce_extension(UH), _rebase(inner, UH.algebra)))
    return out


def criterion_5():
    def stacked():
        stacks = stacked_extensions()
        for outer, inner in stacks:
            if not is_perfect(outer.mid):
                return False
            if not is_alpha_central(compose_central(outer, inner)):
                return False
        return len(stacks) >= 3

    return _outcome(5, [("stacked composites", stacked)])


# -- criterion 6 -------------------------------------------------------------

def criterion_6():
    def automorphism():
        E = fx.F3_trivial_extension()
        h = HLRMorphism(E.base.alpha)
        r = lift_automorphism(E, h)
        return (r.stable and E.sigma.f @ r.lift == h.f @ E.sigma.f
                and not check_morphism(E.mid, E.mid, HLRMorphism(r.lift)))

    def derivation():
        E = fx.F3_trivial_extension()
        d = inner_derivation(E.base, E.base.basis(2))
        r = lift_alpha_derivation(E, d)
        return (r.stable and E.sigma.f @ r.lift == d.D @ E.sigma.f
                and not check_alpha_derivation(E.mid, r.lift, d.sigma))

    def gate():
        codes = [run(cmd, corpus()[name])[1]
                 for name in ("F6_unstable.hlr", "F6t_unstable.hlr")
                 for cmd in ("lift-aut", "lift-der")]
        lib = lift_automorphism(fx.F6_extension(), fx.F6_automorphisms()["swap"])
        return codes == [2, 2, 2, 2] and not lib.stable and lib.lift is None

    def hypothesis_gate():
        try:
            lift_automorphism(fx.F3_coboundary_extension(), HLRMorphism(fx.F3().alpha))
        except HypothesisError:
            return run("lift-aut", corpus()["F3.hlr"], {"extension": "E_cob"})[1] == 2
        return False

    return _outcome(6, [("lift alpha", automorphism), ("lift ad_h", derivation),
                        ("P-stability gate", gate), ("alpha-perfect gate", hypothesis_gate)])


# -- criterion 7 -------------------------------------------------------------

def criterion_7():
    def compare():
        H = fx.F2()
        Phi = compare_uce_tensor(H)
        _, pi2 = projections(build_tensor(self_action(H)))
        return Phi.f.is_invertible() and pi2.f @ Phi.f == build_uce(H).u.f

    def symmetry():
        H = fx.F6()
        V = Subspace.span(QQ, [H.basis(i) for i in range(3, 7)], 7)
        pairs = [bracket_pair(H, Subspace.full(QQ, 7), V)[0], self_action(fx.F2()),
                 trivial_pair(fx.F1(), fx.F2())]
        for P in pairs:
            S, B = symmetry_iso(P), symmetry_iso(P.swapped())
            if not S.f.is_invertible() or B.f @ S.f != Matrix.identity(QQ, S.f.cols):
                return False
        return True

    def abelian():
        P = trivial_pair(fx.F1(), fx.F1())
        Ab, Phi = abelian_tensor(P)
        return Ab.dim == build_tensor(P).dim and Phi.f.is_invertible()

    def exactness():
        for E in (fx.cocycle_extension(fx.F2(), {}, 1), fx.heisenberg_extension()):
            P1, P2, P3 = central_extension_pairs(E)
            if tensor_exactness(P1, P2, P3, E.i.f, E.sigma.f):
                return False
        return True

    return _outcome(7, [("uce vs tensor", compare), ("symmetry", symmetry),
                        ("abelian tensor", abelian), ("exactness", exactness)])


# -- criterion 8 -------------------------------------------------------------

def criterion_8():
    def in_process():
        clear_caches()
        return rg.check("forward") == []

    def second_process():
        # a fresh interpreter, opposite order
        r = subprocess.run([sys.executable, os.path.join(HERE, "regen_goldens.py"),
                            "--check", "reverse"], capture_output=True)
        return r.returncode == 0

    return _outcome(8, [("run 1, forward order", in_process),
                        ("run 2, reverse order", second_process)])


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4,
            5: criterion_5, 6: criterion_6, 7: criterion_7, 8: criterion_8}


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, capsys):
    ok, detail = CRITERIA[n]()
    with capsys.disabled():
        print()
        _report(n, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    results = []
    for n in sorted(CRITERIA):
        ok, detail = CRITERIA[n]()
        _report(n, ok, detail)
        results.append(ok)
    sys.exit(0 if all(results) else 1)
