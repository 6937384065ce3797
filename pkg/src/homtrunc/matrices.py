"""Dense exact matrices and the row-reduction primitives.

Everything downstream (kernels, images, quotients, homology) reduces to
`rref`.  The pivot choices made there fix every basis in the engine:
quotients always use the complement spanned by the standard basis vectors
picked up when the subspace basis is greedily extended to a full basis,
which is what makes whole runs reproducible bit for bit.

Matrices are immutable tuples of row tuples; at desk scale (dimensions
well under 100 per degree) dense storage and cubic elimination are plenty.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .fields import Field, Scalar


class LinAlgError(Exception):
    """Raised when a linear system has no solution."""


@dataclass(frozen=True)
class Matrix:
    field: Field
    rows: int
    cols: int
    entries: tuple[tuple[Scalar, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows:
            raise ValueError(f"expected {self.rows} rows, got {len(self.entries)}")
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError(f"ragged row: expected {self.cols} columns, got {len(row)}")

    # ---- constructors ----------------------------------------------------

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence[Scalar]]) -> Matrix:
        data = tuple(tuple(row) for row in rows)
        ncols = len(data[0]) if data else 0
        return cls(field, len(data), ncols, data)

    @classmethod
    def from_cols(cls, field: Field, cols: Sequence[Sequence[Scalar]], rows: int | None = None) -> Matrix:
        if cols:
            rows = len(cols[0])
        elif rows is None:
            raise ValueError("row count required for a matrix with no columns")
        data = tuple(tuple(col[i] for col in cols) for i in range(rows))
        return cls(field, rows, len(cols), data)

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> Matrix:
        z = field.zero
        return cls(field, rows, cols, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, field: Field, n: int) -> Matrix:
        z, o = field.zero, field.one
        return cls(field, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    # ---- access ----------------------------------------------------------

    def column(self, j: int) -> tuple[Scalar, ...]:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list[tuple[Scalar, ...]]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    # ---- arithmetic --------------------------------------------------------

    def __add__(self, other: Matrix) -> Matrix:
        self._conform(other, same_shape=True)
        add = self.field.add
        data = tuple(
            tuple(add(a, b) for a, b in zip(ra, rb))
            for ra, rb in zip(self.entries, other.entries)
        )
        return Matrix(self.field, self.rows, self.cols, data)

    def __sub__(self, other: Matrix) -> Matrix:
        self._conform(other, same_shape=True)
        sub = self.field.sub
        data = tuple(
            tuple(sub(a, b) for a, b in zip(ra, rb))
            for ra, rb in zip(self.entries, other.entries)
        )
        return Matrix(self.field, self.rows, self.cols, data)

    def __neg__(self) -> Matrix:
        neg = self.field.neg
        return Matrix(self.field, self.rows, self.cols,
                      tuple(tuple(neg(a) for a in row) for row in self.entries))

    def scale(self, s: Scalar) -> Matrix:
        mul = self.field.mul
        return Matrix(self.field, self.rows, self.cols,
                      tuple(tuple(mul(s, a) for a in row) for row in self.entries))

    def __matmul__(self, other: Matrix) -> Matrix:
        self._conform(other)
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        zero = self.field.zero
        p = self.field.p
        ocols = other.cols
        out = []
        for arow in self.entries:
            row = [zero] * ocols
            for k, a in enumerate(arow):
                if a == 0:
                    continue
                brow = other.entries[k]
                for j in range(ocols):
                    b = brow[j]
                    if b != 0:
                        row[j] = row[j] + a * b
            if p is not None:
                row = [x % p for x in row]
            out.append(tuple(row))
        return Matrix(self.field, self.rows, ocols, tuple(out))

    def apply(self, vec: Sequence[Scalar]) -> tuple[Scalar, ...]:
        """Matrix times column vector."""
        if len(vec) != self.cols:
            raise ValueError(f"vector length {len(vec)} does not match {self.cols} columns")
        zero = self.field.zero
        p = self.field.p
        out = []
        for row in self.entries:
            acc = zero
            for a, v in zip(row, vec):
                if a != 0 and v != 0:
                    acc = acc + a * v
            out.append(acc % p if p is not None else acc)
        return tuple(out)

    def transpose(self) -> Matrix:
        return Matrix(self.field, self.cols, self.rows,
                      tuple(self.column(j) for j in range(self.cols)))

    def hstack(self, other: Matrix) -> Matrix:
        self._conform(other)
        if self.rows != other.rows:
            raise ValueError("row counts differ")
        data = tuple(ra + rb for ra, rb in zip(self.entries, other.entries))
        return Matrix(self.field, self.rows, self.cols + other.cols, data)

    def submatrix_cols(self, cols: Sequence[int]) -> Matrix:
        data = tuple(tuple(row[j] for j in cols) for row in self.entries)
        return Matrix(self.field, self.rows, len(cols), data)

    def _conform(self, other: Matrix, same_shape: bool = False):
        if self.field != other.field:
            raise ValueError("field mismatch")
        if same_shape and (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}")


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns.

    Pivots are the first nonzero entry scanning each column top-down from
    the current row; exact arithmetic needs no magnitude-based pivoting,
    and this rule makes the result (and every basis derived from it)
    canonical.
    """
    fld = m.field
    work = [list(row) for row in m.entries]
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        pivot_row = None
        for i in range(r, m.rows):
            if work[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        inv = fld.inv(work[r][c])
        if inv != fld.one:
            work[r] = [fld.mul(inv, x) for x in work[r]]
        for i in range(m.rows):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [fld.sub(a, fld.mul(f, b)) for a, b in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    return Matrix(fld, m.rows, m.cols, tuple(tuple(row) for row in work)), tuple(pivots)


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: Matrix) -> Matrix:
    """Basis of the null space, one column per free variable.

    The free column ``f`` contributes the vector with 1 at position ``f``
    and ``-R[k][f]`` at each pivot position; columns are ordered by
    ascending free column index.
    """
    red, pivots = rref(m)
    pivot_set = set(pivots)
    fld = m.field
    cols = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        vec = [fld.zero] * m.cols
        vec[f] = fld.one
        for k, pc in enumerate(pivots):
            vec[pc] = fld.neg(red.entries[k][f])
        cols.append(vec)
    return Matrix.from_cols(fld, cols, rows=m.cols)


def image_basis(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """The pivot columns of ``m`` (a basis of the column space) and their indices."""
    _, pivots = rref(m)
    return m.submatrix_cols(pivots), pivots


def solve(m: Matrix, rhs: Matrix) -> Matrix:
    """Solve ``m @ X = rhs`` exactly, free variables set to zero.

    Raises LinAlgError when the system is inconsistent.
    """
    if m.rows != rhs.rows:
        raise ValueError("row counts differ")
    aug, pivots = rref(m.hstack(rhs))
    for p in pivots:
        if p >= m.cols:
            raise LinAlgError("inconsistent linear system")
    fld = m.field
    out = [[fld.zero] * rhs.cols for _ in range(m.cols)]
    for k, pc in enumerate(pivots):
        for j in range(rhs.cols):
            out[pc][j] = aug.entries[k][m.cols + j]
    return Matrix.from_rows(fld, out) if m.cols else Matrix(fld, 0, rhs.cols, ())


def in_column_space(m: Matrix, vec: Sequence[Scalar]) -> bool:
    try:
        solve(m, Matrix.from_cols(m.field, [tuple(vec)], rows=m.rows))
    except LinAlgError:
        return False
    return True


class QuotientData(NamedTuple):
    """Canonical complement presentation of an ambient space mod a subspace.

    ``kept`` lists the standard basis vectors spanning the complement:
    the subspace basis (pivot columns of the subspace matrix) is greedily
    extended to a full basis by standard vectors, and the extension is the
    complement.  ``projection @ section`` is the identity; the kernel of
    ``projection`` is exactly the subspace.
    """

    dim: int
    kept: tuple[int, ...]
    projection: Matrix
    section: Matrix


def quotient_data(sub: Matrix) -> QuotientData:
    fld = sub.field
    m = sub.rows
    basis, _ = image_basis(sub)
    ident = Matrix.identity(fld, m)
    _, pivots = rref(basis.hstack(ident))
    kept = tuple(p - basis.cols for p in pivots if p >= basis.cols)
    ext = ident.submatrix_cols(kept)
    full = basis.hstack(ext)
    inv = solve(full, ident)
    projection = Matrix.from_rows(fld, inv.entries[basis.cols:]) if inv.rows else Matrix(fld, 0, m, ())
    return QuotientData(len(kept), kept, projection, ext)


def quotient_coordinates(sub: Matrix, vec: Sequence[Scalar]) -> tuple[Scalar, ...]:
    """Coordinates of the class of ``vec`` in the canonical complement of ``sub``."""
    if len(vec) != sub.rows:
        raise ValueError(f"vector length {len(vec)} does not match ambient dimension {sub.rows}")
    return quotient_data(sub).projection.apply(vec)
