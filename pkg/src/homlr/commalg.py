"""Finite-dimensional commutative unital algebras given by multiplication
tables, algebra endomorphisms and phi-derivations."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .field import Field
from .linalg import Matrix, Subspace, kernel, lincomb, unit_vector, vsub, zero_vector
from .report import Violation


@dataclass(frozen=True)
class CommAlgebra:
    """Algebra with basis e_0..e_{n-1}; ``mult[i][j]`` is e_i e_j as a vector."""

    field: Field
    dim: int
    mult: tuple
    unit: tuple

    def __post_init__(self):
        n = self.dim
        if len(self.mult) != n or any(len(r) != n for r in self.mult):
            raise ValueError("multiplication table must be %dx%d" % (n, n))
        for r in self.mult:
            for v in r:
                if len(v) != n:
                    raise ValueError("product vectors must have length %d" % n)
        if len(self.unit) != n:
            raise ValueError("unit vector must have length %d" % n)

    @classmethod
    def from_table(cls, field: Field, table, unit) -> "CommAlgebra":
        n = len(table)
        mult = tuple(tuple(tuple(field(c) for c in v) for v in row) for row in table)
        return cls(field, n, mult, tuple(field(c) for c in unit))

    def basis(self, i: int) -> tuple:
        return unit_vector(self.field, self.dim, i)

    @property
    def one(self) -> tuple:
        return self.unit

    @property
    def zero(self) -> tuple:
        return zero_vector(self.field, self.dim)

    def mul(self, a, b) -> tuple:
        terms = []
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    terms.append((x * y, self.mult[i][j]))
        return lincomb(self.field, self.dim, terms)

    @cached_property
    def _basis_mult_matrices(self) -> tuple:
        n = self.dim
        return tuple(Matrix.from_columns(self.field, [self.mult[i][j] for j in range(n)], n)
                     for i in range(n))

    def mult_matrix(self, a) -> Matrix:
        """Matrix of b -> a*b."""
        m = Matrix.zeros(self.field, self.dim, self.dim)
        for i, x in enumerate(a):
            if x:
                m = m + self._basis_mult_matrices[i].scale(x)
        return m

    def mult_basis_matrix(self, i: int) -> Matrix:
        return self._basis_mult_matrices[i]


def ground_algebra(field: Field) -> CommAlgebra:
    """The base field as a 1-dimensional algebra."""
    return CommAlgebra.from_table(field, [[[1]]], [1])


def truncated_polynomials(field: Field, n: int) -> CommAlgebra:
    """k[t]/(t^n) with basis 1, t, ..., t^{n-1}."""
    table = []
    for i in range(n):
        row = []
        for j in range(n):
            v = [0] * n
            if i + j < n:
                v[i + j] = 1
            row.append(v)
        table.append(row)
    return CommAlgebra.from_table(field, table, [1] + [0] * (n - 1))


def check_comm_algebra(A: CommAlgebra) -> list:
    out = []
    n = A.dim
    for i in range(n):
        for j in range(i + 1, n):
            if A.mult[i][j] != A.mult[j][i]:
                out.append(Violation("commutativity", (i, j)))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                left = A.mul(A.mult[i][j], A.basis(k))
                right = A.mul(A.basis(i), A.mult[j][k])
                if left != right:
                    out.append(Violation("associativity", (i, j, k)))
    for i in range(n):
        e = A.basis(i)
        if A.mul(A.unit, e) != e or A.mul(e, A.unit) != e:
            out.append(Violation("unit", (i,)))
    return out


def _check_square(A: CommAlgebra, m: Matrix, what: str):
    if m.shape != (A.dim, A.dim):
        raise ValueError("%s must be %dx%d, got %dx%d" % ((what, A.dim, A.dim) + m.shape))


def check_algebra_endo(A: CommAlgebra, phi: Matrix) -> list:
    _check_square(A, phi, "endomorphism")
    out = []
    if phi.apply(A.unit) != A.unit:
        out.append(Violation("endo-unit", (), "phi(1) != 1"))
    for i in range(A.dim):
        for j in range(i, A.dim):
            lhs = phi.apply(A.mult[i][j])
            rhs = A.mul(phi.column(i), phi.column(j))
            if lhs != rhs:
                out.append(Violation("endo-multiplicative", (i, j)))
    return out


def derivation_violations(A: CommAlgebra, phi: Matrix, delta: Matrix) -> list:
    _check_square(A, delta, "derivation")
    out = []
    for i in range(A.dim):
        for j in range(i, A.dim):
            lhs = delta.apply(A.mult[i][j])
            rhs = [x + y for x, y in zip(A.mul(phi.column(i), delta.column(j)),
                                         A.mul(phi.column(j), delta.column(i)))]
            if lhs != tuple(rhs):
                out.append(Violation("phi-Leibniz", (i, j)))
    return out


def is_phi_derivation(A: CommAlgebra, phi: Matrix, delta: Matrix) -> bool:
    return not derivation_violations(A, phi, delta)


def matrix_from_vector(field: Field, v, rows: int, cols: int) -> Matrix:
    """Inverse of ``Matrix.entries`` (row-major)."""
    v = list(v)
    return Matrix(field, [v[r * cols:(r + 1) * cols] for r in range(rows)], rows, cols)


def phi_derivation_space(A: CommAlgebra, phi: Matrix) -> Subspace:
    """Der_phi(A) as a subspace of dim(A)^2, matrices flattened row-major."""
    n = A.dim
    f = A.field
    cols = []
    for k in range(n * n):
        d = matrix_from_vector(f, unit_vector(f, n * n, k), n, n)
        res = []
        for i in range(n):
            for j in range(i, n):
                lhs = d.apply(A.mult[i][j])
                rhs = [x + y for x, y in zip(A.mul(phi.column(i), d.column(j)),
                                             A.mul(phi.column(j), d.column(i)))]
                res.extend(vsub(lhs, rhs))
        cols.append(res)
    if not cols:
        return Subspace.zero(f, 0)
    return kernel(Matrix.from_columns(f, cols, len(cols[0])))
