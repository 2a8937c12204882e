"""Line-oriented text format for structure constants.

A document starts with a ``field`` line (``field Q`` or ``field F <p>``)
followed by named blocks::

    hlr L
      algebra A
      endo id
      dim 2
      bracket [2,2,2] =
        0 0  0 0
        0 0  0 0
      alpha [2,2] = 1 0 0 1
    end

A tensor entry ``key [d1,...,dk] = values`` lists its values in row-major
order; values may continue on following lines that start with a literal.
Rational literals are ``n`` or ``p/q``; prime-field literals are integers.
``#`` starts a comment.

Layouts: ``mult[i][j][k]`` is the e_k coefficient of e_i e_j; matrices are
stored row by row and act on column vectors; ``anchor[x]`` is the matrix of
rho(x_x) on A; ``action[i][j][k]`` is the x_k coefficient of e_i . x_j; a
left module's ``theta[x][m][k]`` is the m_k coefficient of {x, m}.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from math import prod

from .commalg import CommAlgebra
from .field import QQ, Field, GF
from .hlr import HLRMorphism, HomLieRinehart
from .linalg import Matrix

KINDS = ("algebra", "endo", "hlr", "module", "morphism", "extension", "action", "pair",
         "derivation")
_LITERAL = re.compile(r"^[+-]?\d+(/\d+)?$")
_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_.\-]*$")
_SHAPE = re.compile(r"^\[(\d+(?:,\d+)*)?\]$")


class FormatError(ValueError):
    """Syntax, reference or shape problem; carries a 1-based position."""

    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.message = message
        self.line = line
        self.col = col
        where = "line %d, column %d: " % (line, col) if line else ""
        super().__init__(where + message)


@dataclass
class Tensor:
    shape: tuple
    values: list
    line: int
    col: int

    def nested(self):
        def build(vals, shape):
            if len(shape) <= 1:
                return list(vals)
            step = prod(shape[1:])
            return [build(vals[i * step:(i + 1) * step], shape[1:]) for i in range(shape[0])]
        return build(self.values, self.shape)


@dataclass
class Block:
    kind: str
    name: str
    line: int
    entries: dict = dc_field(default_factory=dict)
    positions: dict = dc_field(default_factory=dict)


def _tokens(line: str):
    """(token, 1-based column) pairs with comments removed."""
    out = []
    for m in re.finditer(r"\S+", line.split("#", 1)[0]):
        out.append((m.group(0), m.start() + 1))
    return out


def _scan(text: str):
    """Field descriptor and raw blocks."""
    lines = text.splitlines()
    fld = None
    blocks = []
    cur = None
    pending = None  # (block, key, tensor) still collecting values
    for ln, raw in enumerate(lines, 1):
        toks = _tokens(raw)
        if not toks:
            continue
        first, col = toks[0]
        if pending is not None:
            if _LITERAL.match(first):
                blk, key, ten = pending
                for tok, c in toks:
                    if not _LITERAL.match(tok):
                        raise FormatError("expected a literal in %s.%s, got %r"
                                          % (blk.name, key, tok), ln, c)
                    ten.values.append((tok, ln, c))
                continue
            _close_tensor(*pending)
            pending = None
        if cur is None:
            if first == "field":
                if fld is not None:
                    raise FormatError("duplicate field line", ln, col)
                fld = _parse_field(toks, ln)
                continue
            if first not in KINDS:
                raise FormatError("unknown block kind %r" % first, ln, col)
            if fld is None:
                raise FormatError("the field line must come first", ln, col)
            if len(toks) != 2 or not _NAME.match(toks[1][0]):
                raise FormatError("expected '%s <name>'" % first, ln, col)
            name = toks[1][0]
            if any(b.kind == first and b.name == name for b in blocks):
                raise FormatError("duplicate %s block %r" % (first, name), ln, toks[1][1])
            cur = Block(first, name, ln)
            continue
        if first == "end":
            if len(toks) != 1:
                raise FormatError("unexpected text after 'end'", ln, toks[1][1])
            blocks.append(cur)
            cur = None
            continue
        if not _NAME.match(first):
            raise FormatError("expected a key, got %r" % first, ln, col)
        if first in cur.entries:
            raise FormatError("duplicate key %r in %s %s" % (first, cur.kind, cur.name), ln, col)
        cur.positions[first] = (ln, col)
        if len(toks) >= 2 and toks[1][0].startswith("["):
            shape_tok, sc = toks[1]
            m = _SHAPE.match(shape_tok)
            if not m:
                raise FormatError("malformed shape %r" % shape_tok, ln, sc)
            shape = tuple(int(x) for x in m.group(1).split(",")) if m.group(1) else ()
            if len(toks) < 3 or toks[2][0] != "=":
                raise FormatError("expected '=' after the shape", ln, sc + len(shape_tok))
            ten = Tensor(shape, [], ln, col)
            for tok, c in toks[3:]:
                if not _LITERAL.match(tok):
                    raise FormatError("expected a literal, got %r" % tok, ln, c)
                ten.values.append((tok, ln, c))
            cur.entries[first] = ten
            pending = (cur, first, ten)
        elif len(toks) == 2:
            cur.entries[first] = toks[1][0]
        else:
            raise FormatError("expected '<key> <value>' or '<key> [shape] = values'", ln, col)
    if pending is not None:
        _close_tensor(*pending)
    if cur is not None:
        raise FormatError("block %s %r is not closed by 'end'" % (cur.kind, cur.name), cur.line, 1)
    if fld is None:
        raise FormatError("missing field line", 1, 1)
    return fld, blocks


def _close_tensor(blk, key, ten):
    need = prod(ten.shape) if ten.shape else 1
    if len(ten.values) != need:
        raise FormatError("shape error in %s %s: %s declared %s needs %d values, got %d"
                          % (blk.kind, blk.name, key, list(ten.shape), need, len(ten.values)),
                          ten.line, ten.col)


def _parse_field(toks, ln) -> Field:
    if len(toks) == 2 and toks[1][0] == "Q":
        return QQ
    if len(toks) == 3 and toks[1][0] == "F":
        try:
            return GF(int(toks[2][0]))
        except ValueError as e:
            raise FormatError(str(e), ln, toks[2][1])
    raise FormatError("expected 'field Q' or 'field F <p>'", ln, toks[0][1])


# -- building objects --------------------------------------------------------

@dataclass
class ModuleData:
    hlr: str
    kind: str
    module: object


@dataclass
class Document:
    field: Field
    blocks: list
    objects: dict

    def names(self, kind: str) -> list:
        return [b.name for b in self.blocks if b.kind == kind]

    def get(self, kind: str, name: str | None = None):
        if name is None:
            names = self.names(kind)
            if not names:
                raise FormatError("document has no %s block" % kind)
            name = names[0]
        try:
            return self.objects[(kind, name)]
        except KeyError:
            raise FormatError("unknown %s %r" % (kind, name)) from None


class _Ctx:
    def __init__(self, fld: Field, blk: Block, objects: dict):
        self.field = fld
        self.blk = blk
        self.objects = objects

    def pos(self, key):
        return self.blk.positions.get(key, (self.blk.line, 1))

    def err(self, key, msg):
        ln, col = self.pos(key)
        return FormatError("%s %s: %s" % (self.blk.kind, self.blk.name, msg), ln, col)

    def has(self, key):
        return key in self.blk.entries

    def word(self, key, default=None):
        v = self.blk.entries.get(key, default)
        if v is None:
            raise self.err(key, "missing key %r" % key)
        if isinstance(v, Tensor):
            raise self.err(key, "%r must be a single word" % key)
        return v

    def integer(self, key):
        w = self.word(key)
        if not re.match(r"^\d+$", w):
            raise self.err(key, "%r must be a nonnegative integer" % key)
        return int(w)

    def ref(self, key, kind):
        name = self.word(key)
        obj = self.objects.get((kind, name))
        if obj is None:
            raise self.err(key, "unresolved %s reference %r" % (kind, name))
        return obj

    def tensor(self, key, shape, optional=False):
        t = self.blk.entries.get(key)
        if t is None:
            if optional:
                return None
            raise self.err(key, "missing tensor %r" % key)
        if not isinstance(t, Tensor):
            raise self.err(key, "%r must be a tensor" % key)
        if tuple(t.shape) != tuple(shape):
            raise FormatError("shape error in %s %s: %s declared %s, expected %s"
                              % (self.blk.kind, self.blk.name, key, list(t.shape), list(shape)),
                              t.line, t.col)
        vals = []
        for tok, ln, col in t.values:
            try:
                vals.append(self.field.parse(tok))
            except (ValueError, ZeroDivisionError) as e:
                raise FormatError("bad literal %r: %s" % (tok, e), ln, col)
        return Tensor(t.shape, vals, t.line, t.col).nested()

    def matrix(self, key, rows, cols, optional=False):
        t = self.tensor(key, (rows, cols), optional)
        if t is None:
            return None
        return Matrix(self.field, t, rows, cols)


def _build_block(ctx: _Ctx):
    kind = ctx.blk.kind
    f = ctx.field
    if kind == "algebra":
        d = ctx.integer("dim")
        return CommAlgebra.from_table(f, ctx.tensor("mult", (d, d, d)), ctx.tensor("unit", (d,)))
    if kind == "endo":
        A = ctx.ref("algebra", "algebra")
        return ctx.matrix("matrix", A.dim, A.dim)
    if kind == "hlr":
        A = ctx.ref("algebra", "algebra")
        endo = ctx.word("endo", "id")
        phi = Matrix.identity(f, A.dim) if endo == "id" else ctx.ref("endo", "endo")
        n = ctx.integer("dim")
        action = ctx.tensor("action", (A.dim, n, n), optional=True)
        if action is None:
            if A.dim != 1:
                raise ctx.err("action", "an explicit action is needed when dim A > 1")
            c = 1 / A.unit[0]
            action = [[[c if k == j else 0 for k in range(n)] for j in range(n)]]
        bracket = ctx.tensor("bracket", (n, n, n))
        alpha = ctx.matrix("alpha", n, n)
        anchor = ctx.tensor("anchor", (n, A.dim, A.dim), optional=True)
        if anchor is not None:
            anchor = [Matrix(f, m, A.dim, A.dim) for m in anchor]
        return HomLieRinehart.build(A, phi, n, bracket, alpha, anchor, action, ctx.blk.name)
    if kind == "module":
        from .cohomology import RightModule, make_left_module
        H = ctx.ref("hlr", "hlr")
        side = ctx.word("kind", "left")
        m = ctx.integer("dim")
        action = ctx.tensor("action", (H.A.dim, m, m))
        beta = ctx.matrix("beta", m, m)
        if side == "left":
            theta = ctx.tensor("theta", (H.dim, m, m))
            return ModuleData(ctx.word("hlr"), side, make_left_module(H, m, action, theta, beta))
        if side == "right":
            theta = ctx.tensor("theta", (m, H.dim, m))
            tup = lambda t: tuple(tuple(tuple(f(x) for x in v) for v in r) for r in t)
            return ModuleData(ctx.word("hlr"), side, RightModule(m, tup(action), tup(theta), beta))
        raise ctx.err("kind", "module kind must be 'left' or 'right'")
    if kind == "morphism":
        S, D = ctx.ref("src", "hlr"), ctx.ref("dst", "hlr")
        return (ctx.word("src"), ctx.word("dst"),
                HLRMorphism(ctx.matrix("f", D.dim, S.dim),
                            ctx.matrix("g", D.A.dim, S.A.dim, optional=True)))
    if kind == "extension":
        from .extensions import Extension
        K, M, B = ctx.ref("ker", "hlr"), ctx.ref("mid", "hlr"), ctx.ref("base", "hlr")
        return Extension(K, M, B, HLRMorphism(ctx.matrix("i", M.dim, K.dim)),
                         HLRMorphism(ctx.matrix("sigma", B.dim, M.dim)))
    if kind == "action":
        from .tensor import CompatiblePair, QuasiHomAction
        L, M = ctx.ref("L", "hlr"), ctx.ref("M", "hlr")
        lm = ctx.tensor("theta_LM", (L.dim, M.dim, M.dim))
        ml = ctx.tensor("theta_ML", (M.dim, L.dim, L.dim))
        return CompatiblePair(L, M, QuasiHomAction.from_table(f, lm),
                              QuasiHomAction.from_table(f, ml))
    if kind == "pair":
        P = ctx.ref("action", "action")
        N = ctx.ref("target", "hlr")
        vals = ctx.tensor("values", (P.L.dim, P.M.dim, N.dim))
        g = tuple(tuple(tuple(f(x) for x in v) for v in r) for r in vals)
        return (ctx.word("action"), ctx.word("target"), g)
    if kind == "derivation":
        from .lifting import AlphaDerivation
        H = ctx.ref("hlr", "hlr")
        return (ctx.word("hlr"),
                AlphaDerivation(ctx.matrix("D", H.dim, H.dim),
                                ctx.matrix("sigma", H.A.dim, H.A.dim)))
    raise ctx.err("", "unknown block kind")  # pragma: no cover


_ALLOWED = {
    "algebra": {"dim", "mult", "unit"},
    "endo": {"algebra", "matrix"},
    "hlr": {"algebra", "endo", "dim", "action", "bracket", "alpha", "anchor"},
    "module": {"hlr", "kind", "dim", "action", "theta", "beta"},
    "morphism": {"src", "dst", "f", "g"},
    "extension": {"ker", "mid", "base", "i", "sigma"},
    "action": {"L", "M", "theta_LM", "theta_ML"},
    "pair": {"action", "target", "values"},
    "derivation": {"hlr", "D", "sigma"},
}


def parse(text: str) -> Document:
    fld, blocks = _scan(text)
    objects = {}
    for blk in blocks:
        for key in blk.entries:
            if key not in _ALLOWED[blk.kind]:
                ln, col = blk.positions[key]
                raise FormatError("unknown key %r in %s block" % (key, blk.kind), ln, col)
        ctx = _Ctx(fld, blk, objects)
        try:
            objects[(blk.kind, blk.name)] = _build_block(ctx)
        except FormatError:
            raise
        except (ValueError, ZeroDivisionError) as e:
            raise FormatError("%s %s: %s" % (blk.kind, blk.name, e), blk.line, 1)
    return Document(fld, blocks, objects)


# -- writing -----------------------------------------------------------------

def _flat(x):
    if isinstance(x, Matrix):
        return [list(r) for r in x.data]
    if isinstance(x, (list, tuple)):
        return [_flat(y) for y in x]
    return x


def _shape(x):
    if isinstance(x, list):
        return [len(x)] + (_shape(x[0]) if x else [])
    return []


class DocumentWriter:
    """Serializes library objects.

    The ``emit_*`` methods write one block with explicit references; the
    plain methods write missing dependencies first and reuse blocks already
    written for equal objects.
    """

    def __init__(self, fld: Field):
        self.field = fld
        self.lines = ["field Q" if fld.characteristic == 0 else "field F %d" % fld.characteristic]
        self._seen = {k: [] for k in KINDS}
        self._used = set()

    def _lookup(self, kind, obj):
        for o, name in self._seen[kind]:
            if o is obj or o == obj:
                return name
        return None

    def _fresh(self, base):
        name, k = base, 2
        while name in self._used:
            name = "%s_%d" % (base, k)
            k += 1
        return name

    def _fmt(self, x) -> str:
        return self.field.format(self.field(x))

    def _tensor(self, key, data, shape=None):
        data = _flat(data)
        if shape is None:
            shape = _shape(data)
        vals = []

        def walk(v):
            if isinstance(v, list):
                for w in v:
                    walk(w)
            else:
                vals.append(self._fmt(v))
        walk(data)
        head = "  %s [%s] =" % (key, ",".join(str(s) for s in shape))
        if len(vals) <= 8:
            self.lines.append(" ".join([head] + vals))
            return
        width = (shape[-1] if shape else 1) or 1
        self.lines.append(head)
        for i in range(0, len(vals), width):
            self.lines.append("    " + " ".join(vals[i:i + width]))

    def _open(self, block_kind, name, obj=None, **refs):
        self._used.add(name)
        if obj is not None:
            self._seen[block_kind].append((obj, name))
        self.lines.append("")
        self.lines.append("%s %s" % (block_kind, name))
        for k, v in refs.items():
            self.lines.append("  %s %s" % (k, v))

    def _close(self):
        self.lines.append("end")

    # explicit emitters

    def emit_algebra(self, name, A: CommAlgebra):
        self._open("algebra", name, A)
        self.lines.append("  dim %d" % A.dim)
        self._tensor("mult", [[list(v) for v in r] for r in A.mult], [A.dim] * 3)
        self._tensor("unit", list(A.unit))
        self._close()

    def emit_endo(self, name, algebra, A, phi):
        self._open("endo", name, (A, phi), algebra=algebra)
        self._tensor("matrix", phi)
        self._close()

    def emit_hlr(self, name, algebra, endo, H: HomLieRinehart):
        self._open("hlr", name, H, algebra=algebra, endo=endo)
        self.lines.append("  dim %d" % H.dim)
        f = H.field
        scalar = H.A.dim == 1 and H.A.unit == (f.one,) and all(
            H.action[0][j] == H.basis(j) for j in range(H.dim))
        if not scalar:
            self._tensor("action", [[list(v) for v in r] for r in H.action],
                         [H.A.dim, H.dim, H.dim])
        self._tensor("bracket", [[list(v) for v in r] for r in H.bracket], [H.dim] * 3)
        self._tensor("alpha", H.alpha, [H.dim] * 2)
        if not H.has_zero_anchor():
            self._tensor("anchor", list(H.anchor))
        self._close()

    def emit_module(self, name, hlr, kind, M):
        self._open("module", name, hlr=hlr, kind=kind)
        self.lines.append("  dim %d" % M.dim)
        self._tensor("action", [[list(v) for v in r] for r in M.action],
                     [len(M.action), M.dim, M.dim])
        self._tensor("theta", [[list(v) for v in r] for r in M.theta],
                     [len(M.theta), len(M.theta[0]) if M.theta else 0, M.dim])
        self._tensor("beta", M.beta, [M.dim] * 2)
        self._close()

    def emit_morphism(self, name, src, dst, m: HLRMorphism):
        self._open("morphism", name, src=src, dst=dst)
        self._tensor("f", m.f, list(m.f.shape))
        if m.g is not None:
            self._tensor("g", m.g, list(m.g.shape))
        self._close()

    def emit_extension(self, name, ker, mid, base, E):
        self._open("extension", name, ker=ker, mid=mid, base=base)
        self._tensor("i", E.i.f, list(E.i.f.shape))
        self._tensor("sigma", E.sigma.f, list(E.sigma.f.shape))
        self._close()

    def emit_action(self, name, L, M, pair):
        self._open("action", name, pair, L=L, M=M)
        nl, nm = pair.L.dim, pair.M.dim
        self._tensor("theta_LM", [[list(v) for v in r] for r in pair.act_LM.theta],
                     [nl, nm, nm])
        self._tensor("theta_ML", [[list(v) for v in r] for r in pair.act_ML.theta],
                     [nm, nl, nl])
        self._close()

    def emit_pair(self, name, action, target, g):
        self._open("pair", name, action=action, target=target)
        self._tensor("values", [[list(v) for v in r] for r in g])
        self._close()

    def emit_derivation(self, name, hlr, der):
        self._open("derivation", name, hlr=hlr)
        self._tensor("D", der.D)
        self._tensor("sigma", der.sigma)
        self._close()

    # dependency-resolving writers

    def algebra(self, A: CommAlgebra, name: str = "A") -> str:
        old = self._lookup("algebra", A)
        if old:
            return old
        name = self._fresh(name)
        self.emit_algebra(name, A)
        return name

    def endo(self, A: CommAlgebra, phi: Matrix, name: str = "phi") -> str:
        if phi == Matrix.identity(A.field, A.dim):
            return "id"
        old = self._lookup("endo", (A, phi))
        if old:
            return old
        a = self.algebra(A)
        name = self._fresh(name)
        self.emit_endo(name, a, A, phi)
        return name

    def hlr(self, H: HomLieRinehart, name: str | None = None) -> str:
        old = self._lookup("hlr", H)
        if old:
            return old
        a = self.algebra(H.A)
        e = self.endo(H.A, H.phi)
        name = self._fresh(name or H.name or "L")
        self.emit_hlr(name, a, e, H)
        return name

    def module(self, H, M, kind: str = "left", name: str = "M") -> str:
        h = self.hlr(H)
        name = self._fresh(name)
        self.emit_module(name, h, kind, M)
        return name

    def morphism(self, src, dst, m: HLRMorphism, name: str = "h") -> str:
        s, d = self.hlr(src), self.hlr(dst)
        name = self._fresh(name)
        self.emit_morphism(name, s, d, m)
        return name

    def extension(self, E, name: str = "E", ker: str = "ker", mid: str = "mid",
                  base: str = "base") -> str:
        b = self.hlr(E.base, base)
        m = self.hlr(E.mid, mid)
        k = self.hlr(E.ker, ker)
        name = self._fresh(name)
        self.emit_extension(name, k, m, b, E)
        return name

    def action(self, pair, name: str = "P") -> str:
        old = self._lookup("action", pair)
        if old:
            return old
        l, m = self.hlr(pair.L), self.hlr(pair.M)
        name = self._fresh(name)
        self.emit_action(name, l, m, pair)
        return name

    def pairing(self, pair, N, g, name: str = "g") -> str:
        p = self.action(pair)
        t = self.hlr(N)
        name = self._fresh(name)
        self.emit_pair(name, p, t, g)
        return name

    def derivation(self, H, der, name: str = "D") -> str:
        h = self.hlr(H)
        name = self._fresh(name)
        self.emit_derivation(name, h, der)
        return name

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"


def echo(doc: Document) -> str:
    """Canonical re-serialization of a parsed document."""
    w = DocumentWriter(doc.field)
    for blk in doc.blocks:
        obj = doc.objects[(blk.kind, blk.name)]
        e, name = blk.entries, blk.name
        if blk.kind == "algebra":
            w.emit_algebra(name, obj)
        elif blk.kind == "endo":
            w.emit_endo(name, e["algebra"], doc.objects[("algebra", e["algebra"])], obj)
        elif blk.kind == "hlr":
            w.emit_hlr(name, e["algebra"], e.get("endo", "id"), obj)
        elif blk.kind == "module":
            w.emit_module(name, obj.hlr, obj.kind, obj.module)
        elif blk.kind == "morphism":
            w.emit_morphism(name, obj[0], obj[1], obj[2])
        elif blk.kind == "extension":
            w.emit_extension(name, e["ker"], e["mid"], e["base"], obj)
        elif blk.kind == "action":
            w.emit_action(name, e["L"], e["M"], obj)
        elif blk.kind == "pair":
            w.emit_pair(name, obj[0], obj[1], obj[2])
        elif blk.kind == "derivation":
            w.emit_derivation(name, obj[0], obj[1])
    return w.text()
