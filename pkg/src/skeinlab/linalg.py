"""Dense exact matrices over a FieldSpec and exact Gaussian elimination.

Everything is immutable; elimination uses ordinary exact division with
first-nonzero pivoting (all our scalars form a field, so no fraction-free
bookkeeping is needed).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .fields import FieldSpec, Scalar


@dataclass(frozen=True)
class ExactMatrix:
    field: FieldSpec
    rows: int
    cols: int
    entries: tuple[Scalar, ...]  # row-major

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match dimensions")

    # -- constructors --------------------------------------------------------
    @staticmethod
    def from_rows(field: FieldSpec, rows: Sequence[Sequence[Scalar]],
                  cols: int | None = None) -> "ExactMatrix":
        r = len(rows)
        c = len(rows[0]) if rows else (cols if cols is not None else 0)
        flat = []
        for row in rows:
            if len(row) != c:
                raise ValueError("ragged rows")
            flat.extend(row)
        return ExactMatrix(field, r, c, tuple(flat))

    @staticmethod
    def zeros(field: FieldSpec, rows: int, cols: int) -> "ExactMatrix":
        z = field.zero()
        return ExactMatrix(field, rows, cols, (z,) * (rows * cols))

    @staticmethod
    def identity(field: FieldSpec, n: int) -> "ExactMatrix":
        z, o = field.zero(), field.one()
        return ExactMatrix(field, n, n,
                           tuple(o if i == j else z for i in range(n) for j in range(n)))

    @staticmethod
    def build(field: FieldSpec, rows: int, cols: int,
              fn: Callable[[int, int], Scalar]) -> "ExactMatrix":
        return ExactMatrix(field, rows, cols,
                           tuple(fn(i, j) for i in range(rows) for j in range(cols)))

    # -- access ---------------------------------------------------------------
    def get(self, i: int, j: int) -> Scalar:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Scalar, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[Scalar, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._shape_check(other)
        return ExactMatrix(self.field, self.rows, self.cols,
                           tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._shape_check(other)
        return ExactMatrix(self.field, self.rows, self.cols,
                           tuple(a - b for a, b in zip(self.entries, other.entries)))

    def scale(self, c: Scalar) -> "ExactMatrix":
        return ExactMatrix(self.field, self.rows, self.cols,
                           tuple(c * a for a in self.entries))

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        z = self.field.zero()
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                acc = z
                for k in range(self.cols):
                    a = ri[k]
                    if not a.is_zero():
                        b = other.entries[k * other.cols + j]
                        if not b.is_zero():
                            acc = acc + a * b
                out.append(acc)
        return ExactMatrix(self.field, self.rows, other.cols, tuple(out))

    def kron(self, other: "ExactMatrix") -> "ExactMatrix":
        """Kronecker product, row-major index convention (i1*r2+i2, j1*c2+j2)."""
        out = []
        for i1 in range(self.rows):
            for i2 in range(other.rows):
                for j1 in range(self.cols):
                    a = self.get(i1, j1)
                    for j2 in range(other.cols):
                        out.append(a * other.get(i2, j2))
        return ExactMatrix(self.field, self.rows * other.rows,
                           self.cols * other.cols, tuple(out))

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.field, self.cols, self.rows,
                           tuple(self.get(i, j) for j in range(self.cols)
                                 for i in range(self.rows)))

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)

    def _shape_check(self, other: "ExactMatrix"):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("matrix shape mismatch")


def rref(m: ExactMatrix) -> tuple[ExactMatrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns.

    Elimination touches only the nonzero columns of the pivot row, which
    matters a lot for the sparse intertwiner systems this library builds.
    """
    rows = [list(m.row(i)) for i in range(m.rows)]
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        pivot_row = None
        for i in range(r, m.rows):
            if not rows[i][c].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = rows[r][c].inverse()
        piv = rows[r]
        if not inv.is_one():
            for k in range(c, m.cols):
                if not piv[k].is_zero():
                    piv[k] = inv * piv[k]
        nz = [k for k in range(c, m.cols) if not piv[k].is_zero()]
        for i in range(m.rows):
            if i == r:
                continue
            f = rows[i][c]
            if f.is_zero():
                continue
            ri = rows[i]
            for k in nz:
                ri[k] = ri[k] - f * piv[k]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    flat = tuple(x for row in rows for x in row)
    return ExactMatrix(m.field, m.rows, m.cols, flat), pivots


def rank(m: ExactMatrix) -> int:
    return len(rref(m)[1])


def nullspace(m: ExactMatrix) -> list[ExactMatrix]:
    """Exact basis of the right nullspace, as cols x 1 column vectors."""
    red, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    z, o = m.field.zero(), m.field.one()
    for fc in free:
        vec = [z] * m.cols
        vec[fc] = o
        for r, pc in enumerate(pivots):
            vec[pc] = -red.get(r, fc)
        basis.append(ExactMatrix(m.field, m.cols, 1, tuple(vec)))
    return basis


def inverse(m: ExactMatrix) -> ExactMatrix:
    if m.rows != m.cols:
        raise ValueError("inverse of non-square matrix")
    n = m.rows
    aug = ExactMatrix.from_rows(
        m.field,
        [list(m.row(i)) + list(ExactMatrix.identity(m.field, n).row(i)) for i in range(n)],
        cols=2 * n,
    )
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ArithmeticError("matrix is singular")
    return ExactMatrix(m.field, n, n,
                       tuple(red.get(i, n + j) for i in range(n) for j in range(n)))


def solve(m: ExactMatrix, b: ExactMatrix) -> ExactMatrix | None:
    """One exact solution of m @ x = b, or None if the system is inconsistent."""
    if b.rows != m.rows or b.cols != 1:
        raise ValueError("right-hand side shape mismatch")
    aug = ExactMatrix.from_rows(
        m.field,
        [list(m.row(i)) + [b.get(i, 0)] for i in range(m.rows)],
        cols=m.cols + 1,
    )
    red, pivots = rref(aug)
    if m.cols in pivots:
        return None
    z = m.field.zero()
    x = [z] * m.cols
    for r, pc in enumerate(pivots):
        x[pc] = red.get(r, m.cols)
    return ExactMatrix(m.field, m.cols, 1, tuple(x))


def hstack(mats: Iterable[ExactMatrix]) -> ExactMatrix:
    mats = list(mats)
    rows = mats[0].rows
    if any(m.rows != rows for m in mats):
        raise ValueError("hstack row mismatch")
    out_rows = [[x for m in mats for x in m.row(i)] for i in range(rows)]
    return ExactMatrix.from_rows(mats[0].field, out_rows, cols=sum(m.cols for m in mats))
