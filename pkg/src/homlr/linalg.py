"""Dense exact linear algebra over a :class:`~homlr.field.Field`.

Vectors are tuples of field elements.  Matrices act on column vectors:
``m[r, c]`` is the coefficient of basis vector ``r`` in the image of basis
vector ``c``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable, Iterable, Sequence

from .field import Field

Vector = tuple


# -- vectors -----------------------------------------------------------------

@lru_cache(maxsize=4096)
def zero_vector(field: Field, n: int) -> Vector:
    z = field.zero
    return (z,) * n


@lru_cache(maxsize=65536)
def unit_vector(field: Field, n: int, i: int) -> Vector:
    z, o = field.zero, field.one
    return tuple(o if k == i else z for k in range(n))


def vadd(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Sequence, v: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v: Sequence) -> Vector:
    return tuple(c * a for a in v)


def is_zero_vector(v: Sequence) -> bool:
    return not any(v)


def lincomb(field: Field, n: int, terms: Iterable) -> Vector:
    """Sum of ``c * v`` over ``(c, v)`` pairs, skipping zero coefficients."""
    acc = [field.zero] * n
    for c, v in terms:
        if not c:
            continue
        for k, x in enumerate(v):
            if x:
                acc[k] += c * x
    return tuple(acc)


# -- matrices ----------------------------------------------------------------

class Matrix:
    """Immutable dense matrix with exact entries."""

    __slots__ = ("field", "rows", "cols", "data", "_hash")

    def __init__(self, field: Field, data: Sequence[Sequence], rows: int | None = None,
                 cols: int | None = None):
        data = tuple(tuple(field(x) for x in row) for row in data)
        if rows is None:
            rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError("matrix data does not match declared shape %dx%d" % (rows, cols))
        self.field = field
        self.rows = rows
        self.cols = cols
        self.data = data
        self._hash = None

    @classmethod
    def _raw(cls, field, data, rows, cols):
        m = cls.__new__(cls)
        m.field, m.data, m.rows, m.cols, m._hash = field, data, rows, cols, None
        return m

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        z = field.zero
        return cls._raw(field, tuple((z,) * cols for _ in range(rows)), rows, cols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls._raw(field, tuple(unit_vector(field, n, i) for i in range(n)), n, n)

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence], rows: int) -> "Matrix":
        columns = [tuple(c) for c in columns]
        for c in columns:
            if len(c) != rows:
                raise ValueError("column length %d, expected %d" % (len(c), rows))
        data = tuple(tuple(c[r] for c in columns) for r in range(rows))
        return cls._raw(field, data, rows, len(columns))

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], cols: int) -> "Matrix":
        return cls(field, rows, len(rows), cols)

    @classmethod
    def from_function(cls, field: Field, rows: int, cols: int,
                      image: Callable[[int], Sequence]) -> "Matrix":
        """Matrix whose column ``c`` is ``image(c)``."""
        return cls.from_columns(field, [image(c) for c in range(cols)], rows)

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def entries(self) -> tuple:
        return tuple(x for row in self.data for x in row)

    def __getitem__(self, idx):
        r, c = idx
        return self.data[r][c]

    def row(self, r: int) -> Vector:
        return self.data[r]

    def column(self, c: int) -> Vector:
        return tuple(row[c] for row in self.data)

    def columns(self) -> list:
        return [self.column(c) for c in range(self.cols)]

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.cols:
            raise ValueError("vector of length %d applied to %dx%d matrix"
                             % (len(v), self.rows, self.cols))
        z = self.field.zero
        out = []
        nz = [(k, x) for k, x in enumerate(v) if x]
        for row in self.data:
            s = z
            for k, x in nz:
                a = row[k]
                if a:
                    s += a * x
            out.append(s)
        return tuple(out)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch %s @ %s" % (self.shape, other.shape))
        cols = [self.apply(c) for c in other.columns()]
        return Matrix.from_columns(self.field, cols, self.rows)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix._raw(self.field, tuple(vadd(a, b) for a, b in zip(self.data, other.data)),
                           self.rows, self.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix._raw(self.field, tuple(vsub(a, b) for a, b in zip(self.data, other.data)),
                           self.rows, self.cols)

    def __neg__(self) -> "Matrix":
        return Matrix._raw(self.field, tuple(tuple(-x for x in r) for r in self.data),
                           self.rows, self.cols)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        return Matrix._raw(self.field, tuple(vscale(c, r) for r in self.data),
                           self.rows, self.cols)

    @property
    def T(self) -> "Matrix":
        return Matrix._raw(self.field, tuple(self.columns()), self.cols, self.rows)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.data)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.data))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(self.field.format(x) for x in r) for r in self.data)
        return "Matrix(%dx%d: %s)" % (self.rows, self.cols, body)

    def rank(self) -> int:
        return len(_echelon_rows(self.field, self.data, self.cols))

    def rref(self) -> "Matrix":
        return rref(self)

    def kernel(self) -> "Subspace":
        return kernel(self)

    def image(self) -> "Subspace":
        return Subspace.span(self.field, self.columns(), self.rows)

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("only square matrices are invertible")
        n = self.rows
        aug = [list(self.data[r]) + list(unit_vector(self.field, n, r)) for r in range(n)]
        red, pivots = _rref_rows(self.field, aug, 2 * n)
        if pivots[:n] != list(range(n)) or len([p for p in pivots if p < n]) != n:
            raise ZeroDivisionError("matrix is singular")
        return Matrix._raw(self.field, tuple(tuple(row[n:]) for row in red[:n]), n, n)

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows


def block_diagonal(field: Field, *blocks: Matrix) -> Matrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    data = [[field.zero] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for r in range(b.rows):
            for c in range(b.cols):
                data[r0 + r][c0 + c] = b.data[r][c]
        r0 += b.rows
        c0 += b.cols
    return Matrix(field, data, rows, cols)


def det(field: Field, m: Sequence[Sequence]) -> object:
    """Determinant of a small square array by elimination."""
    n = len(m)
    if n == 0:
        return field.one
    a = [list(r) for r in m]
    d = field.one
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            return field.zero
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        piv = a[c][c]
        d = d * piv
        for r in range(c + 1, n):
            f = a[r][c]
            if f:
                q = f / piv
                a[r] = [x - q * y for x, y in zip(a[r], a[c])]
    return d


def permutation_sign(perm: Sequence[int]) -> int:
    perm = list(perm)
    sign = 1
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            sign = -sign
    return sign


# -- elimination -------------------------------------------------------------

def _rref_rows(field: Field, rows: Sequence[Sequence], ncols: int):
    """Gauss-Jordan on a list of rows; returns (nonzero rref rows, pivots)."""
    a = [list(r) for r in rows]
    pivots = []
    r = 0
    nrows = len(a)
    for c in range(ncols):
        if r >= nrows:
            break
        p = next((k for k in range(r, nrows) if a[k][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c] if field.characteristic == 0 else field.one / a[r][c]
        if a[r][c] != 1:
            a[r] = [x * inv for x in a[r]]
        pivot_row = a[r]
        support = [j for j in range(c, ncols) if pivot_row[j]]
        for k in range(nrows):
            if k != r:
                f = a[k][c]
                if f:
                    row = a[k]
                    for j in support:
                        row[j] -= f * pivot_row[j]
        pivots.append(c)
        r += 1
    return [tuple(x for x in row) for row in a[:r]], pivots


def _echelon_rows(field: Field, rows: Sequence[Sequence], ncols: int):
    red, _ = _rref_rows(field, rows, ncols)
    return red


def rref(m: Matrix) -> Matrix:
    """Reduced row echelon form; zero rows are kept at the bottom."""
    red, _ = _rref_rows(m.field, m.data, m.cols)
    z = m.field.zero
    data = tuple(red) + tuple((z,) * m.cols for _ in range(m.rows - len(red)))
    return Matrix._raw(m.field, data, m.rows, m.cols)


class SpanBuilder:
    """Incremental span: reduce each incoming vector against the rows so far.

    Rows are kept with pivot entry 1 and zeros at every earlier pivot, so
    sequential reduction in insertion order clears all pivots.
    """

    def __init__(self, field: Field, dim: int):
        self.field = field
        self.dim = dim
        self.rows: list = []
        self.pivots: list = []

    def reduce(self, v: Sequence) -> list:
        w = list(v)
        for row, p in zip(self.rows, self.pivots):
            c = w[p]
            if c:
                for j, x in row:
                    w[j] -= c * x
        return w

    def add(self, v: Sequence) -> bool:
        if len(v) != self.dim:
            raise ValueError("vector of length %d in ambient dimension %d" % (len(v), self.dim))
        if len(self.rows) == self.dim:
            return False
        w = self.reduce(v)
        p = next((j for j, x in enumerate(w) if x), None)
        if p is None:
            return False
        inv = self.field.one / w[p]
        self.rows.append([(j, x * inv) for j, x in enumerate(w) if x])
        self.pivots.append(p)
        return True

    def __len__(self):
        return len(self.rows)

    def full(self) -> bool:
        return len(self.rows) == self.dim

    def subspace(self) -> "Subspace":
        z = self.field.zero
        dense = []
        for row in self.rows:
            d = [z] * self.dim
            for j, x in row:
                d[j] = x
            dense.append(d)
        return Subspace._from_rows(self.field, self.dim, dense)


# -- subspaces ---------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """A subspace of k^n stored by the RREF of a spanning set.

    The representation is canonical: equal subspaces compare equal.
    """

    field: Field
    ambient_dim: int
    basis: tuple
    pivots: tuple

    @classmethod
    def _from_rows(cls, field, dim, rows):
        red, pivots = _rref_rows(field, rows, dim)
        return cls(field, dim, tuple(red), tuple(pivots))

    @classmethod
    def span(cls, field: Field, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        b = SpanBuilder(field, ambient_dim)
        for v in vectors:
            b.add(v)
            if b.full():
                break
        return b.subspace()

    @classmethod
    def zero(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n, (), ())

    @classmethod
    def full(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n, tuple(unit_vector(field, n, i) for i in range(n)), tuple(range(n)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def is_zero(self) -> bool:
        return self.dim == 0

    def reduce(self, v: Sequence) -> Vector:
        """Normal form of v modulo the subspace (zero at all pivots)."""
        w = list(v)
        for row, p in zip(self.basis, self.pivots):
            c = w[p]
            if c:
                for j, x in enumerate(row):
                    if x:
                        w[j] -= c * x
        return tuple(w)

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.ambient_dim:
            raise ValueError("vector of length %d, ambient dimension %d" % (len(v), self.ambient_dim))
        return not any(self.reduce(v))

    __contains__ = contains

    def coordinates(self, v: Sequence) -> Vector:
        """Coefficients of v in the RREF basis; raises if v is not inside."""
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return tuple(v[p] for p in self.pivots)

    def from_coordinates(self, c: Sequence) -> Vector:
        return lincomb(self.field, self.ambient_dim, zip(c, self.basis))

    def issubset(self, other: "Subspace") -> bool:
        return all(other.contains(b) for b in self.basis)

    __le__ = issubset

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.field, list(self.basis) + list(other.basis), self.ambient_dim)

    def intersection(self, other: "Subspace") -> "Subspace":
        # solve sum a_i u_i = sum b_j w_j
        n = self.ambient_dim
        cols = list(self.basis) + [vscale(-1, w) for w in other.basis]
        if not cols:
            return Subspace.zero(self.field, n)
        ker = kernel(Matrix.from_columns(self.field, cols, n))
        vecs = [lincomb(self.field, n, zip(k[: self.dim], self.basis)) for k in ker.basis]
        return Subspace.span(self.field, vecs, n)

    def image(self, m: Matrix) -> "Subspace":
        return Subspace.span(self.field, [m.apply(b) for b in self.basis], m.rows)

    def basis_matrix(self) -> Matrix:
        """Matrix whose columns are the basis vectors (an inclusion map)."""
        return Matrix.from_columns(self.field, self.basis, self.ambient_dim)

    def complement_basis(self) -> list:
        """Unit vectors at non-pivot positions: a complement to this subspace."""
        piv = set(self.pivots)
        return [unit_vector(self.field, self.ambient_dim, j)
                for j in range(self.ambient_dim) if j not in piv]


def span(field: Field, vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
    return Subspace.span(field, vectors, ambient_dim)


def kernel(m: Matrix) -> Subspace:
    """Null space {v : m v = 0}."""
    field = m.field
    red, pivots = _rref_rows(field, m.data, m.cols)
    piv = set(pivots)
    free = [j for j in range(m.cols) if j not in piv]
    vecs = []
    for f in free:
        v = [field.zero] * m.cols
        v[f] = field.one
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        vecs.append(v)
    return Subspace._from_rows(field, m.cols, vecs)


def solve(m: Matrix, b: Sequence) -> Vector | None:
    """Some x with m x = b, or None when the system is inconsistent."""
    if len(b) != m.rows:
        raise ValueError("right-hand side has length %d, expected %d" % (len(b), m.rows))
    field = m.field
    aug = [list(row) + [field(x)] for row, x in zip(m.data, b)]
    red, pivots = _rref_rows(field, aug, m.cols + 1)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [field.zero] * m.cols
    for row, p in zip(red, pivots):
        x[p] = row[m.cols]
    return tuple(x)


def solve_affine(field: Field, nvars: int, residual: Callable[[Vector], Sequence]):
    """Solve residual(x) = 0 for an affine map ``residual``.

    Returns ``(particular, homogeneous)`` where ``particular`` is a solution
    or None and ``homogeneous`` is the Subspace of solutions of the linear
    part.
    """
    zero = zero_vector(field, nvars)
    r0 = tuple(residual(zero))
    cols = []
    for k in range(nvars):
        rk = residual(unit_vector(field, nvars, k))
        cols.append(vsub(rk, r0))
    m = Matrix.from_columns(field, cols, len(r0)) if nvars else Matrix.zeros(field, len(r0), 0)
    x = solve(m, vscale(-1, r0))
    return x, kernel(m)


# -- quotients ---------------------------------------------------------------

@dataclass(frozen=True)
class QuotientPresentation:
    """k^n / relations with coset representatives on the non-pivot columns."""

    ambient_dim: int
    relations: Subspace
    rep_columns: tuple

    @property
    def field(self) -> Field:
        return self.relations.field

    @property
    def dim(self) -> int:
        return len(self.rep_columns)

    def project(self, v: Sequence) -> Vector:
        w = self.relations.reduce(v)
        return tuple(w[j] for j in self.rep_columns)

    def lift(self, q: Sequence) -> Vector:
        if len(q) != self.dim:
            raise ValueError("quotient vector of length %d, expected %d" % (len(q), self.dim))
        v = [self.field.zero] * self.ambient_dim
        for j, x in zip(self.rep_columns, q):
            v[j] = x
        return tuple(v)

    @cached_property
    def project_matrix(self) -> Matrix:
        f = self.field
        return Matrix.from_function(f, self.dim, self.ambient_dim,
                                    lambda c: self.project(unit_vector(f, self.ambient_dim, c)))

    @cached_property
    def lift_matrix(self) -> Matrix:
        f = self.field
        return Matrix.from_function(f, self.ambient_dim, self.dim,
                                    lambda c: self.lift(unit_vector(f, self.dim, c)))


def quotient(ambient_dim: int, relations: Subspace) -> QuotientPresentation:
    if relations.ambient_dim != ambient_dim:
        raise ValueError("relations live in dimension %d, not %d"
                         % (relations.ambient_dim, ambient_dim))
    piv = set(relations.pivots)
    reps = tuple(j for j in range(ambient_dim) if j not in piv)
    return QuotientPresentation(ambient_dim, relations, reps)


def right_inverse(m: Matrix) -> Matrix:
    """Some r with m r = identity; raises if m is not surjective."""
    cols = []
    for i in range(m.rows):
        x = solve(m, unit_vector(m.field, m.rows, i))
        if x is None:
            raise ValueError("map is not surjective")
        cols.append(x)
    return Matrix.from_columns(m.field, cols, m.cols)


def alternating_eval(field: Field, values: dict, vectors: Sequence[Sequence], out_dim: int) -> Vector:
    """Evaluate an alternating multilinear map given on increasing index tuples.

    ``values`` maps sorted index tuples to output vectors.
    """
    n = len(vectors)
    supports = [[(j, c) for j, c in enumerate(v) if c] for v in vectors]
    acc = [field.zero] * out_dim

    def rec(k, chosen, coeff):
        if k == n:
            order = sorted(range(n), key=lambda t: chosen[t])
            key = tuple(chosen[t] for t in order)
            val = values.get(key)
            if val is None:
                return
            c = coeff if permutation_sign(order) == 1 else -coeff
            for j, x in enumerate(val):
                if x:
                    acc[j] += c * x
            return
        for j, c in supports[k]:
            if j in chosen:
                continue
            rec(k + 1, chosen + (j,), coeff * c)

    rec(0, (), field.one)
    return tuple(acc)


__all__ = [
    "Vector", "Matrix", "Subspace", "QuotientPresentation", "SpanBuilder",
    "zero_vector", "unit_vector", "vadd", "vsub", "vscale", "lincomb", "is_zero_vector",
    "rref", "span", "kernel", "quotient", "solve", "solve_affine", "right_inverse",
    "block_diagonal", "det", "permutation_sign", "alternating_eval",
]
