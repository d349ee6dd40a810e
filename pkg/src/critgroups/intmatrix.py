"""Exact integer matrices and the normal forms built on them.

Everything here works over arbitrary-precision Python ints: no floats,
no modular shortcuts.  Matrices are immutable once constructed; all
operations return fresh objects.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class IntMatrix:
    """Dense integer matrix, row-major."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, entries: Iterable[int]):
        data = [int(x) for x in entries]
        if len(data) != rows * cols:
            raise ValueError(f"need {rows * cols} entries, got {len(data)}")
        self.rows = rows
        self.cols = cols
        self._data = tuple(data)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        for row in rows:
            if len(row) != c:
                raise ValueError("ragged rows")
        return cls(r, c, [x for row in rows for x in row])

    @classmethod
    def from_cols(cls, cols: Sequence[Sequence[int]]) -> "IntMatrix":
        if not cols:
            return cls(0, 0, [])
        return cls.from_rows(list(zip(*cols)))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def diagonal(cls, diag: Sequence[int]) -> "IntMatrix":
        n = len(diag)
        return cls(n, n, [diag[i] if i == j else 0 for i in range(n) for j in range(n)])

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self._data[i * self.cols + j]

    def row(self, i: int) -> list[int]:
        return list(self._data[i * self.cols : (i + 1) * self.cols])

    def col(self, j: int) -> list[int]:
        return [self._data[i * self.cols + j] for i in range(self.rows)]

    def to_rows(self) -> list[list[int]]:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows([self.col(j) for j in range(self.cols)])

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return IntMatrix.from_rows(
            [self.row(i) + other.row(i) for i in range(self.rows)]
        )

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        ot = other.to_rows()
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            out.append(
                [
                    sum(ri[k] * ot[k][j] for k in range(self.cols))
                    for j in range(other.cols)
                ]
            )
        return IntMatrix.from_rows(out) if out else IntMatrix(0, other.cols, [])

    def apply(self, vec: Sequence[int]) -> list[int]:
        if len(vec) != self.cols:
            raise ValueError("dimension mismatch")
        return [
            sum(self._data[i * self.cols + k] * vec[k] for k in range(self.cols))
            for i in range(self.rows)
        ]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, IntMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self._data == other._data
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._data))

    def __repr__(self) -> str:
        return f"IntMatrix({self.to_rows()!r})"


def det_bareiss(m: IntMatrix) -> int:
    """Determinant by fraction-free (Bareiss) elimination.

    Exact over the integers; every intermediate division is exact.
    """
    if m.rows != m.cols:
        raise ValueError("determinant needs a square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class SnfResult:
    """U * M * V == S with U, V unimodular and S in Smith normal form."""

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix
    Uinv: IntMatrix
    Vinv: IntMatrix

    def invariant_factors(self) -> list[int]:
        """Diagonal of S, nonzero entries only (they satisfy d1 | d2 | ...)."""
        out = []
        for k in range(min(self.S.rows, self.S.cols)):
            d = self.S[k, k]
            if d != 0:
                out.append(d)
        return out


def smith_normal_form(m: IntMatrix) -> SnfResult:
    """Smith normal form with both transforms and their inverses.

    Pivoting picks the smallest nonzero magnitude in the working
    submatrix to limit entry growth.
    """
    rows, cols = m.rows, m.cols
    a = m.to_rows()
    u = IntMatrix.identity(rows).to_rows()
    uinv = IntMatrix.identity(rows).to_rows()
    v = IntMatrix.identity(cols).to_rows()
    vinv = IntMatrix.identity(cols).to_rows()

    # Row ops act on (a, u) and inversely on uinv (as column ops);
    # column ops act on (a, v) and inversely on vinv (as row ops).
    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]
        for r in range(rows):
            uinv[r][i], uinv[r][j] = uinv[r][j], uinv[r][i]

    def add_row(i, j, q):
        # row_i += q * row_j ; uinv col_j -= q * col_i
        ai, aj = a[i], a[j]
        for k in range(cols):
            ai[k] += q * aj[k]
        ui, uj = u[i], u[j]
        for k in range(rows):
            ui[k] += q * uj[k]
        for r in range(rows):
            uinv[r][j] -= q * uinv[r][i]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]
        for r in range(rows):
            uinv[r][i] = -uinv[r][i]

    def swap_cols(i, j):
        for r in range(rows):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        for r in range(cols):
            v[r][i], v[r][j] = v[r][j], v[r][i]
        vinv[i], vinv[j] = vinv[j], vinv[i]

    def add_col(i, j, q):
        # col_i += q * col_j ; vinv row_j -= q * row_i
        for r in range(rows):
            a[r][i] += q * a[r][j]
        for r in range(cols):
            v[r][i] += q * v[r][j]
        vj, vi = vinv[j], vinv[i]
        for k in range(cols):
            vj[k] -= q * vi[k]

    def negate_col(i):
        for r in range(rows):
            a[r][i] = -a[r][i]
        for r in range(cols):
            v[r][i] = -v[r][i]
        vinv[i] = [-x for x in vinv[i]]

    t = 0
    limit = min(rows, cols)
    while t < limit:
        # Find the smallest-magnitude nonzero pivot in a[t:, t:].
        pi = pj = -1
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = a[i][j]
                if x != 0 and (best is None or abs(x) < best):
                    best = abs(x)
                    pi, pj = i, j
        if best is None:
            break
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)
        # Clear row and column t; restart if a remainder creates a
        # smaller entry elsewhere.
        dirty = False
        for i in range(t + 1, rows):
            if a[i][t] != 0:
                q = a[i][t] // a[t][t]
                add_row(i, t, -q)
                if a[i][t] != 0:
                    dirty = True
        for j in range(t + 1, cols):
            if a[t][j] != 0:
                q = a[t][j] // a[t][t]
                add_col(j, t, -q)
                if a[t][j] != 0:
                    dirty = True
        if dirty:
            continue
        # Enforce divisibility: the pivot must divide everything below
        # and to the right.
        offender = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if a[i][j] % a[t][t] != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(t, offender, 1)
            continue
        if a[t][t] < 0:
            negate_row(t)
        t += 1

    s = IntMatrix.from_rows(a) if rows else IntMatrix(0, cols, [])
    return SnfResult(
        U=IntMatrix.from_rows(u) if rows else IntMatrix(0, 0, []),
        S=s,
        V=IntMatrix.from_rows(v) if cols else IntMatrix(0, 0, []),
        Uinv=IntMatrix.from_rows(uinv) if rows else IntMatrix(0, 0, []),
        Vinv=IntMatrix.from_rows(vinv) if cols else IntMatrix(0, 0, []),
    )


@dataclass(frozen=True)
class HnfResult:
    """M * T == H with T unimodular and H in column Hermite normal form.

    H is a lower staircase: reading columns left to right, pivot rows
    strictly increase, pivots are positive, entries left of a pivot in
    its row are reduced into [0, pivot), and zero columns trail.
    """

    H: IntMatrix
    T: IntMatrix

    def pivots(self) -> list[tuple[int, int]]:
        """(row, col) of each pivot."""
        out = []
        r = -1
        for j in range(self.H.cols):
            col = self.H.col(j)
            nz = [i for i, x in enumerate(col) if x != 0]
            if not nz:
                break
            out.append((nz[0], j))
            r = nz[0]
        return out


def hermite_normal_form(m: IntMatrix) -> HnfResult:
    """Column-style Hermite normal form via unimodular column operations."""
    rows, cols = m.rows, m.cols
    a = m.to_rows()
    t = IntMatrix.identity(cols).to_rows()

    def swap_cols(i, j):
        for r in range(rows):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        for r in range(cols):
            t[r][i], t[r][j] = t[r][j], t[r][i]

    def add_col(i, j, q):
        for r in range(rows):
            a[r][i] += q * a[r][j]
        for r in range(cols):
            t[r][i] += q * t[r][j]

    def negate_col(i):
        for r in range(rows):
            a[r][i] = -a[r][i]
        for r in range(cols):
            t[r][i] = -t[r][i]

    pivot_col = 0
    for r in range(rows):
        if pivot_col >= cols:
            break
        # gcd-reduce columns pivot_col.. on row r
        while True:
            nz = [j for j in range(pivot_col, cols) if a[r][j] != 0]
            if len(nz) <= 1:
                break
            jmin = min(nz, key=lambda j: abs(a[r][j]))
            for j in nz:
                if j != jmin:
                    q = a[r][j] // a[r][jmin]
                    add_col(j, jmin, -q)
        nz = [j for j in range(pivot_col, cols) if a[r][j] != 0]
        if not nz:
            continue
        j0 = nz[0]
        if j0 != pivot_col:
            swap_cols(pivot_col, j0)
        if a[r][pivot_col] < 0:
            negate_col(pivot_col)
        # reduce earlier columns against this pivot
        p = a[r][pivot_col]
        for j in range(pivot_col):
            q = a[r][j] // p
            if q:
                add_col(j, pivot_col, -q)
        pivot_col += 1

    h = IntMatrix.from_rows(a) if rows else IntMatrix(0, cols, [])
    return HnfResult(H=h, T=IntMatrix.from_rows(t) if cols else IntMatrix(0, 0, []))


def solve_in_column_span(m: IntMatrix, vec: Sequence[int]) -> list[int] | None:
    """An integer x with m @ x == vec, or None if no integral solution."""
    if len(vec) != m.rows:
        raise ValueError("dimension mismatch")
    hnf = hermite_normal_form(m)
    h = hnf.H
    residue = [int(x) for x in vec]
    y = [0] * m.cols
    j = 0
    for i in range(m.rows):
        if j < m.cols and h[i, j] != 0:
            q, r = divmod(residue[i], h[i, j])
            if r != 0:
                return None
            y[j] = q
            if q:
                col = h.col(j)
                for k in range(m.rows):
                    residue[k] -= q * col[k]
            j += 1
        elif residue[i] != 0:
            return None
    if any(residue):
        return None
    return hnf.T.apply(y)


def lattice_contains(m: IntMatrix, vec: Sequence[int]) -> bool:
    """Is vec an integer combination of the columns of m?"""
    return solve_in_column_span(m, vec) is not None


def integer_kernel(m: IntMatrix) -> IntMatrix:
    """Basis for {x : m @ x == 0}, as columns.  May have zero columns count."""
    hnf = hermite_normal_form(m)
    zero_cols = [
        j for j in range(m.cols) if all(hnf.H[i, j] == 0 for i in range(m.rows))
    ]
    # Columns of T over the zero columns of H form a kernel basis: T is
    # unimodular, so they are independent, and they exhaust the kernel.
    basis = [hnf.T.col(j) for j in zero_cols]
    if not basis:
        return IntMatrix(m.cols, 0, [])
    return IntMatrix.from_cols(basis)
