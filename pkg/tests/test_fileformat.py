import pytest

from homlr import fixtures as fx
from homlr.cli import corpus
from homlr.field import GF, QQ
from homlr.fileformat import DocumentWriter, FormatError, echo, parse

BASE = """field Q
algebra A
  dim 1
  mult [1,1,1] = 1
  unit [1] = 1
end
hlr L
  algebra A
  endo id
  dim 2
  bracket [2,2,2] = 0 0 0 0 0 0 0 0
  alpha [2,2] = 2/4 0 0 1
end
"""


def _err(text):
    with pytest.raises(FormatError) as info:
        parse(text)
    return info.value


@pytest.mark.parametrize("name", sorted(corpus(QQ)))
def test_corpus_round_trip(name):
    text = corpus(QQ)[name]
    doc = parse(text)
    again = parse(echo(doc))
    assert echo(again) == echo(doc) == text
    for kind in ("hlr", "extension", "module", "morphism", "derivation"):
        assert [again.get(kind, n) for n in again.names(kind)] == \
            [doc.get(kind, n) for n in doc.names(kind)]


def test_prime_field_corpus():
    for name, text in corpus(GF(7)).items():
        doc = parse(text)
        assert doc.field == GF(7)
        assert echo(doc) == text


def test_literal_normalized():
    doc = parse(BASE)
    assert "alpha [2,2] = 1/2 0 0 1" in echo(doc)
    assert doc.get("hlr").alpha[0, 0] == QQ.parse("1/2")


def test_comments_and_continuations():
    text = BASE.replace("  alpha [2,2] = 2/4 0 0 1",
                        "  # the twist\n  alpha [2,2] =\n    1/2 0  # first row\n    0 1")
    assert echo(parse(text)) == echo(parse(BASE))


def test_writer_reproduces_objects():
    w = DocumentWriter(QQ)
    w.hlr(fx.F3(), "F3")
    w.extension(fx.F6_extension(), "E")
    doc = parse(w.text())
    assert doc.get("hlr", "F3") == fx.F3()
    assert doc.get("extension", "E") == fx.F6_extension()


@pytest.mark.parametrize("edit,line,col,fragment", [
    (lambda t: t.replace("field Q\n", ""), 1, 1, "field line"),
    (lambda t: t.replace("alpha [2,2] = 2/4 0 0 1", "alpha [3,3] =\n    1 0 0\n    0 1 0"),
     12, 3, "shape error in hlr L"),
    (lambda t: t.replace("algebra A\n  endo", "algebra B\n  endo"), 8, 3, "unresolved"),
    (lambda t: t.replace("2/4", "x"), 12, 17, "expected a literal"),
    (lambda t: t.replace("2/4", "1/0"), 12, 17, "bad literal"),
    (lambda t: t.replace("  dim 2\n", "  dim 2\n  color red\n"), 11, 3, "unknown key"),
    (lambda t: t[:-4], 7, 1, "not closed"),
    (lambda t: t + t[t.index("hlr L"):], 14, 5, "duplicate"),
    (lambda t: t.replace("field Q", "field F 4"), 1, 9, "prime"),
    (lambda t: t.replace("hlr L", "widget L"), 7, 1, "unknown block kind"),
    (lambda t: t.replace("  alpha [2,2] = 2/4 0 0 1\n", ""), 7, 1, "missing tensor 'alpha'"),
])
def test_errors_have_positions(edit, line, col, fragment):
    e = _err(edit(BASE))
    assert (e.line, e.col) == (line, col)
    assert fragment in e.message


def test_shape_error_names_block():
    e = _err(BASE.replace("alpha [2,2] = 2/4 0 0 1",
                          "alpha [3,3] =\n    1 0 0\n    0 1 0"))
    assert "hlr L" in e.message and "alpha" in e.message


def test_declared_shape_must_match_dim():
    e = _err(BASE.replace("alpha [2,2] = 2/4 0 0 1", "alpha [3,3] = 1 0 0 0 1 0 0 0 1"))
    assert e.line >= 7


def test_get_missing_kind():
    doc = parse(BASE)
    with pytest.raises(FormatError):
        doc.get("extension")
