"""Command-line interface: ``homlr <command> <file> [key=value ...]``.

Every command prints one JSON report ``{"command", "status", "payload"}``
with sorted keys; exact scalars are strings ``"n"`` or ``"p/q"``.

Exit codes: 0 ok, 1 violations found, 2 hypothesis refused, 3 parse,
shape or reference error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .cohomology import (RightModule, canonical_module, canonical_right_candidate,
                         check_left_module, check_right_module, cochain_index, cohomology,
                         trivial_module)
from .commalg import check_algebra_endo, check_comm_algebra
from .extensions import (check_extension, compose_central, find_A_split_section,
                         find_central_splitting, is_alpha_central, is_central)
from .field import QQ
from .fileformat import Document, DocumentWriter, FormatError, echo, parse
from .hlr import (HLRMorphism, alpha_derived_submodule, center, check_axioms, check_morphism,
                  derived_submodule, is_alpha_perfect, is_ideal, is_perfect)
from .lifting import check_alpha_derivation, lift_alpha_derivation, lift_automorphism
from .report import HypothesisError
from .tensor import (build_tensor, check_compatible, check_pairing, compare_uce_tensor,
                     projections, self_action)
from .uce import build_uce, kernel_of_u, uce_extension

EXIT = {"ok": 0, "violations": 1, "refused": 2, "error": 3}


# -- serialization helpers ---------------------------------------------------

class _Fmt:
    def __init__(self, field):
        self.field = field

    def s(self, x) -> str:
        return self.field.format(x)

    def vec(self, v) -> list:
        return [self.s(x) for x in v]

    def mat(self, m) -> list:
        return [self.vec(r) for r in m.data]

    def table(self, t) -> list:
        return [[self.vec(v) for v in r] for r in t]

    def sub(self, S) -> dict:
        return {"dim": S.dim, "basis": [self.vec(b) for b in S.basis]}

    def sparse(self, d: dict) -> list:
        return [[k, self.s(d[k])] for k in sorted(d)]


def _violations(report) -> list:
    return [v.as_dict() for v in report]


def _structure(fm: _Fmt, H) -> dict:
    return {"dim": H.dim, "bracket": fm.table(H.bracket), "alpha": fm.mat(H.alpha),
            "action": fm.table(H.action), "anchor": [fm.mat(m) for m in H.anchor]}


class _Refused(Exception):
    def __init__(self, payload):
        self.payload = payload


class _Invalid(Exception):
    def __init__(self, payload):
        self.payload = payload


# -- commands ----------------------------------------------------------------

def _check_block(doc: Document, blk) -> list:
    obj = doc.objects[(blk.kind, blk.name)]
    if blk.kind == "algebra":
        return check_comm_algebra(obj)
    if blk.kind == "endo":
        return check_algebra_endo(doc.objects[("algebra", blk.entries["algebra"])], obj)
    if blk.kind == "hlr":
        return check_axioms(obj)
    if blk.kind == "module":
        H = doc.get("hlr", obj.hlr)
        if isinstance(obj.module, RightModule):
            return check_right_module(H, obj.module)
        return check_left_module(H, obj.module)
    if blk.kind == "morphism":
        s, d, m = obj
        return check_morphism(doc.get("hlr", s), doc.get("hlr", d), m)
    if blk.kind == "extension":
        return check_extension(obj)
    if blk.kind == "action":
        return check_compatible(obj)
    if blk.kind == "pair":
        a, t, g = obj
        return check_pairing(doc.get("action", a), doc.get("hlr", t), g)
    if blk.kind == "derivation":
        h, der = obj
        return check_alpha_derivation(doc.get("hlr", h), der.D, der.sigma)
    return []  # pragma: no cover


def cmd_check(doc, fm, params):
    blocks, bad = [], False
    for blk in doc.blocks:
        v = _check_block(doc, blk)
        bad = bad or bool(v)
        entry = {"kind": blk.kind, "name": blk.name, "violations": _violations(v)}
        if blk.kind == "hlr":
            H = doc.objects[("hlr", blk.name)]
            entry["dims"] = {"A": H.A.dim, "L": H.dim}
        blocks.append(entry)
    return ("violations" if bad else "ok"), {"blocks": blocks}


def _hlr(doc, params):
    H = doc.get("hlr", params.get("hlr"))
    bad = check_axioms(H)
    if bad:
        raise _Invalid({"hlr": H.name, "violations": _violations(bad)})
    return H


def cmd_center(doc, fm, params):
    H = _hlr(doc, params)
    Z = center(H)
    return "ok", {"center": fm.sub(Z), "is_ideal": is_ideal(H, Z)}


def cmd_perfect(doc, fm, params):
    H = _hlr(doc, params)
    return "ok", {"dim": H.dim, "derived_dim": derived_submodule(H).dim,
                  "alpha_derived_dim": alpha_derived_submodule(H).dim,
                  "perfect": is_perfect(H), "alpha_perfect": is_alpha_perfect(H)}


def cmd_uce(doc, fm, params):
    H = _hlr(doc, params)
    U = build_uce(H)
    return "ok", {"ambient_dim": U.ambient_dim, "relation_rank": len(U.generators),
                  "quotient_dim": U.dim, "relations": [fm.sparse(g) for g in U.generators],
                  "representatives": [list(U.rep(j)) for j in range(U.dim)],
                  "structure": _structure(fm, U.algebra), "u": fm.mat(U.u.f),
                  "ker_u": fm.sub(kernel_of_u(U))}


def _module(doc, H, params):
    name = params.get("module", "trivial")
    if name == "trivial":
        return trivial_module(H)
    if name == "canonical":
        return canonical_module(H)
    md = doc.get("module", name)
    if md.kind != "left":
        raise HypothesisError("cohomology needs a left module")
    return md.module


def cmd_h2(doc, fm, params):
    H = _hlr(doc, params)
    try:
        n = int(params.get("n", "2"))
    except ValueError:
        raise FormatError("n must be an integer") from None
    if n < 1:
        raise HypothesisError("degree must be at least 1")
    M = _module(doc, H, params)
    bad = check_left_module(H, M)
    if bad:
        raise HypothesisError("not a left module: %s" % bad[0])
    C = cohomology(H, M, n)
    return "ok", {"degree": n, "dim": C.dim, "cocycles_dim": C.cocycles.dim,
                  "coboundaries_dim": C.coboundaries.dim,
                  "index": [list(t) for t in cochain_index(H, n)],
                  "representatives": [fm.vec(r) for r in C.representatives]}


def _extension(doc, params, key="extension"):
    return doc.get("extension", params.get(key))


def cmd_ext_check(doc, fm, params):
    E = _extension(doc, params)
    v = check_extension(E)
    if v:
        return "violations", {"violations": _violations(v)}
    return "ok", {"dims": {"ker": E.ker.dim, "mid": E.mid.dim, "base": E.base.dim},
                  "central": is_central(E), "alpha_central": is_alpha_central(E)}


def _valid_extension(E):
    v = check_extension(E)
    if v:
        raise HypothesisError("not an extension: %s" % v[0])


def cmd_ext_central(doc, fm, params):
    E = _extension(doc, params)
    _valid_extension(E)
    return "ok", {"central": is_central(E), "alpha_central": is_alpha_central(E)}


def cmd_split(doc, fm, params):
    E = _extension(doc, params)
    _valid_extension(E)
    tau = find_A_split_section(E)
    sec, unique = find_central_splitting(E)
    return "ok", {"A_split_section": None if tau is None else fm.mat(tau),
                  "central_splitting": None if sec is None else fm.mat(sec.f),
                  "unique": unique if sec is not None else False}


def cmd_compose(doc, fm, params):
    names = doc.names("extension")
    outer = params.get("outer", names[0] if names else None)
    inner = params.get("inner", names[1] if len(names) > 1 else None)
    if inner is None:
        raise FormatError("compose needs two extension blocks")
    Eo, Ei = doc.get("extension", outer), doc.get("extension", inner)
    _valid_extension(Eo)
    _valid_extension(Ei)
    if Ei.base != Eo.mid:
        raise HypothesisError("the inner extension must end at the outer middle term")
    E = compose_central(Eo, Ei)
    return "ok", {"ker_dim": E.ker.dim, "central": is_central(E),
                  "alpha_central": is_alpha_central(E), "outer_mid_perfect": is_perfect(Eo.mid),
                  "i": fm.mat(E.i.f), "sigma": fm.mat(E.sigma.f)}


def cmd_tensor(doc, fm, params):
    if "action" in params or doc.names("action"):
        pair = doc.get("action", params.get("action"))
    else:
        pair = self_action(_hlr(doc, params))
    TA = build_tensor(pair)
    pi1, pi2 = projections(TA)
    return "ok", {"ambient_dim": TA.ambient_dim, "relation_rank": len(TA.generators),
                  "quotient_dim": TA.dim,
                  "representatives": [list(TA.tensor.triple(p))
                                      for p in TA.presentation.rep_columns],
                  "structure": _structure(fm, TA.algebra),
                  "pi1": fm.mat(pi1.f), "pi2": fm.mat(pi2.f)}


def _lift_report(fm, res, what):
    if not res.stable:
        raise _Refused({"hypothesis": "%s does not preserve P" % what, "P": fm.sub(res.P)})
    return "ok", {"lift": fm.mat(res.lift), "P": fm.sub(res.P)}


def cmd_lift_aut(doc, fm, params):
    E = _extension(doc, params)
    _valid_extension(E)
    src, dst, h = doc.get("morphism", params.get("morphism"))
    if doc.get("hlr", src) != E.base or doc.get("hlr", dst) != E.base:
        raise HypothesisError("the morphism must be an endomorphism of the base")
    return _lift_report(fm, lift_automorphism(E, h), "uce(h)")


def cmd_lift_der(doc, fm, params):
    E = _extension(doc, params)
    _valid_extension(E)
    h, der = doc.get("derivation", params.get("derivation"))
    if doc.get("hlr", h) != E.base:
        raise HypothesisError("the derivation must live on the base")
    return _lift_report(fm, lift_alpha_derivation(E, der), "the induced derivation")


def cmd_compare(doc, fm, params):
    H = _hlr(doc, params)
    Phi = compare_uce_tensor(H)
    return "ok", {"iso": fm.mat(Phi.f), "uce_dim": Phi.f.cols, "tensor_dim": Phi.f.rows}


COMMANDS = {
    "check": cmd_check,
    "center": cmd_center,
    "perfect": cmd_perfect,
    "uce": cmd_uce,
    "h2": cmd_h2,
    "ext-check": cmd_ext_check,
    "ext-central": cmd_ext_central,
    "split": cmd_split,
    "compose": cmd_compose,
    "tensor": cmd_tensor,
    "lift-aut": cmd_lift_aut,
    "lift-der": cmd_lift_der,
    "compare-uce-tensor": cmd_compare,
}


def run(command: str, text: str, params: dict | None = None):
    """Returns (report dict, exit code)."""
    params = dict(params or {})
    echo_cmd = " ".join([command] + ["%s=%s" % (k, params[k]) for k in sorted(params)])
    try:
        doc = parse(text)
        fm = _Fmt(doc.field)
        status, payload = COMMANDS[command](doc, fm, params)
    except FormatError as e:
        status, payload = "error", {"message": e.message, "line": e.line, "column": e.col}
    except _Refused as e:
        status, payload = "refused", e.payload
    except _Invalid as e:
        status, payload = "violations", e.payload
    except HypothesisError as e:
        status, payload = "refused", {"hypothesis": str(e)}
    except ArithmeticError as e:
        status, payload = "violations", {"internal": str(e)}
    report = {"command": echo_cmd, "status": status, "payload": payload}
    return report, EXIT[status]


def render(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


# -- shipped corpus ----------------------------------------------------------

def corpus(field=QQ) -> dict:
    """File name -> document text for the shipped fixtures."""
    from . import fixtures as fx
    from .lifting import inner_derivation

    out = {}

    w = DocumentWriter(field)
    L = fx.F1(field)
    w.hlr(L, "F1")
    w.module(L, trivial_module(L), "left", "k")
    w.action(self_action(L), "self")
    out["F1.hlr"] = w.text()

    w = DocumentWriter(field)
    L = fx.F2(field)
    w.hlr(L, "F2")
    w.module(L, trivial_module(L), "left", "k")
    P = self_action(L)
    w.action(P, "self")
    w.pairing(P, L, L.bracket, "commutator")
    w.derivation(L, inner_derivation(L, L.basis(2)), "ad_h")
    out["F2.hlr"] = w.text()

    w = DocumentWriter(field)
    L = fx.F3(field)
    w.hlr(L, "F3")
    w.action(self_action(L), "self")
    w.extension(fx.F3_trivial_extension(field), "E", "zero", "F3x0", "F3")
    w.extension(fx.F3_coboundary_extension(field), "E_cob", "k", "F3xk", "F3")
    w.morphism(L, L, HLRMorphism(L.alpha), "alpha")
    w.derivation(L, inner_derivation(L, L.basis(2)), "ad_h")
    out["F3.hlr"] = w.text()

    w = DocumentWriter(field)
    L = fx.F4(field)
    w.hlr(L, "F4")
    w.module(L, canonical_module(L), "left", "A_left")
    w.module(L, canonical_right_candidate(L), "right", "A_right")
    out["F4.hlr"] = w.text()

    w = DocumentWriter(field)
    w.extension(fx.heisenberg_extension(field), "E", "k", "heis", "F1")
    out["heisenberg.hlr"] = w.text()

    for twisted, fname in ((False, "F6"), (True, "F6t")):
        E = fx.F6_extension(field, twisted)
        auts = fx.F6_automorphisms(field)
        ders = fx.F6_derivations(E.base)
        for stable, tag in ((True, ""), (False, "_unstable")):
            w = DocumentWriter(field)
            w.hlr(E.base, fname)
            w.extension(E, "E", "k", E.mid.name, fname)
            if stable:
                w.extension(uce_extension(build_uce(E.mid)), "U", "ker_u", "uce_" + E.mid.name,
                            E.mid.name)
                w.morphism(E.base, E.base, auts["scale"], "scale")
                w.derivation(E.base, ders["w1_to_w2"], "w1_to_w2")
                w.derivation(E.base, ders["ad_h"], "ad_h")
            else:
                w.morphism(E.base, E.base, auts["swap"], "swap")
                w.derivation(E.base, ders["w2_to_w1"], "w2_to_w1")
            out[fname + tag + ".hlr"] = w.text()
    return out


def write_corpus(outdir: str, field=QQ) -> list:
    os.makedirs(outdir, exist_ok=True)
    paths = []
    for name, text in sorted(corpus(field).items()):
        path = os.path.join(outdir, name)
        with open(path, "w") as fh:
            fh.write(text)
        paths.append(path)
    return paths


# -- entry point -------------------------------------------------------------

def _parse_params(items) -> dict:
    params = {}
    for it in items:
        if "=" not in it:
            raise FormatError("expected key=value, got %r" % it)
        k, v = it.split("=", 1)
        params[k] = v
    return params


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="homlr", description=__doc__.split("\n")[0])
    ap.add_argument("command", choices=sorted(COMMANDS) + ["echo", "fixtures"])
    ap.add_argument("path", help="input document (output directory for 'fixtures')")
    ap.add_argument("params", nargs="*", help="key=value options")
    args = ap.parse_args(argv)
    if args.command == "fixtures":
        for p in write_corpus(args.path):
            print(p)
        return 0
    try:
        with open(args.path) as fh:
            text = fh.read()
    except OSError as e:
        print(render({"command": args.command, "status": "error",
                      "payload": {"message": str(e), "line": 0, "column": 0}}), end="")
        return 3
    if args.command == "echo":
        try:
            sys.stdout.write(echo(parse(text)))
            return 0
        except FormatError as e:
            report = {"command": "echo", "status": "error",
                      "payload": {"message": e.message, "line": e.line, "column": e.col}}
            sys.stdout.write(render(report))
            return 3
    try:
        params = _parse_params(args.params)
    except FormatError as e:
        sys.stdout.write(render({"command": args.command, "status": "error",
                                 "payload": {"message": e.message, "line": 0, "column": 0}}))
        return 3
    report, code = run(args.command, text, params)
    sys.stdout.write(render(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
