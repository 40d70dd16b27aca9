"""Exact integer linear algebra on arbitrary-precision matrices.

Everything here runs over Python's native bignums, so all results are
exact no matter how large the entries grow.  The module provides Smith
normal form with unimodular transforms, kernel bases, determinants, and
a bounded enumerator for the integer solutions of ``X * K = T``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterator, Sequence


class Matrix:
    """Immutable integer matrix.

    A homomorphism ``Z^c -> Z^r`` is the ``r x c`` matrix ``M`` acting on
    column vectors by ``x -> M @ x``; composition ``g after f`` is the
    product ``G * F``.  Zero-row and zero-column matrices are legal.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence[int]], cols: int | None = None):
        rows = len(entries)
        if rows == 0:
            cols = 0 if cols is None else cols
        elif cols is None:
            cols = len(entries[0])
        data = []
        for r, row in enumerate(entries):
            if len(row) != cols:
                raise ValueError(f"row {r} has length {len(row)}, expected {cols}")
            for x in row:
                if not isinstance(x, int) or isinstance(x, bool):
                    raise ValueError(f"non-integer entry {x!r} in row {r}")
            data.append(tuple(row))
        self.rows = rows
        self.cols = cols
        self.entries = tuple(data)

    # -- constructors -------------------------------------------------

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix([[1 if i == j else 0 for j in range(n)] for i in range(n)], cols=n)

    @staticmethod
    def zero(rows: int, cols: int) -> "Matrix":
        return Matrix([[0] * cols for _ in range(rows)], cols=cols)

    @staticmethod
    def from_columns(columns: Sequence[Sequence[int]], rows: int | None = None) -> "Matrix":
        if not columns:
            if rows is None:
                raise ValueError("need explicit row count for a zero-column matrix")
            return Matrix([[] for _ in range(rows)], cols=0)
        n = len(columns[0])
        if rows is not None and rows != n:
            raise ValueError("column length disagrees with declared row count")
        return Matrix([[col[i] for col in columns] for i in range(n)], cols=len(columns))

    # -- basic queries ------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        return f"Matrix({[list(r) for r in self.entries]!r}, cols={self.cols})"

    def __getitem__(self, key: tuple) -> int:
        i, j = key
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def col(self, j: int) -> tuple:
        return tuple(self.entries[i][j] for i in range(self.rows))

    def to_lists(self) -> list:
        return [list(r) for r in self.entries]

    def transpose(self) -> "Matrix":
        return Matrix(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
            cols=self.rows,
        )

    def is_nonnegative(self) -> bool:
        return all(x >= 0 for row in self.entries for x in row)

    def max_abs(self) -> int:
        return max((abs(x) for row in self.entries for x in row), default=0)

    # -- arithmetic ---------------------------------------------------

    def __mul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(
                f"shape mismatch: ({self.rows}x{self.cols}) * ({other.rows}x{other.cols})"
            )
        ot = other.transpose()
        return Matrix(
            [
                [sum(a * b for a, b in zip(row, ocol)) for ocol in ot.entries]
                for row in self.entries
            ],
            cols=other.cols,
        )

    def apply(self, vec: Sequence[int]) -> tuple:
        """Apply to a column vector, returning ``M @ vec`` as a tuple."""
        if len(vec) != self.cols:
            raise ValueError(f"vector length {len(vec)}, expected {self.cols}")
        return tuple(sum(a * b for a, b in zip(row, vec)) for row in self.entries)


# ---------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------


def _swap_rows(a, u, i, j):
    if i != j:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]


def _swap_cols(a, v, i, j):
    if i != j:
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]


def _add_row(a, u, dst, src, c):
    # row_dst += c * row_src
    arow, srow = a[dst], a[src]
    for j in range(len(arow)):
        arow[j] += c * srow[j]
    urow, usrow = u[dst], u[src]
    for j in range(len(urow)):
        urow[j] += c * usrow[j]


def _add_col(a, v, dst, src, c):
    # col_dst += c * col_src
    for row in a:
        row[dst] += c * row[src]
    for row in v:
        row[dst] += c * row[src]


def snf(m: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form: returns ``(s, u, v)`` with ``u*m*v = s``,
    ``s`` diagonal with ``d1 | d2 | ...``, ``di >= 0``, and ``u``, ``v``
    unimodular.

    Pivoting picks the smallest nonzero absolute value, tie-broken by
    lowest row then column, so the transforms are reproducible.
    """
    rows, cols = m.rows, m.cols
    a = [list(r) for r in m.entries]
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]
    t = 0
    while t < min(rows, cols):
        best = None
        pr = pc = -1
        for i in range(t, rows):
            for j in range(t, cols):
                x = abs(a[i][j])
                if x and (best is None or x < best):
                    best, pr, pc = x, i, j
        if best is None:
            break
        _swap_rows(a, u, t, pr)
        _swap_cols(a, v, t, pc)
        while True:
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    _add_row(a, u, i, t, -q)
                    if a[i][t]:
                        # remainder became the smaller pivot
                        _swap_rows(a, u, t, i)
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    _add_col(a, v, j, t, -q)
                    if a[t][j]:
                        _swap_cols(a, v, t, j)
            if all(a[i][t] == 0 for i in range(t + 1, rows)) and all(
                a[t][j] == 0 for j in range(t + 1, cols)
            ):
                break
        d = a[t][t]
        bad = -1
        for i in range(t + 1, rows):
            if any(a[i][j] % d for j in range(t + 1, cols)):
                bad = i
                break
        if bad >= 0:
            # fold the offending row in so the next pass shrinks the pivot
            _add_row(a, u, t, bad, 1)
            continue
        if d < 0:
            for j in range(cols):
                a[t][j] = -a[t][j]
            for j in range(rows):
                u[t][j] = -u[t][j]
        t += 1
    return Matrix(a, cols=cols), Matrix(u, cols=rows), Matrix(v, cols=cols)


def rank(m: Matrix) -> int:
    s, _, _ = snf(m)
    return sum(1 for i in range(min(s.rows, s.cols)) if s[i, i] != 0)


def det(m: Matrix) -> int:
    """Determinant of a square matrix by fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant requires a square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = [list(r) for r in m.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][k] != 0), -1)
            if piv < 0:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def kernel_basis(m: Matrix) -> Matrix:
    """Basis of ``{x : m @ x = 0}`` as matrix columns.

    Zero columns exactly when ``m`` is injective.
    """
    s, _, v = snf(m)
    r = sum(1 for i in range(min(s.rows, s.cols)) if s[i, i] != 0)
    return Matrix.from_columns([v.col(j) for j in range(r, m.cols)], rows=m.cols)


def is_injective(m: Matrix) -> bool:
    return kernel_basis(m).cols == 0


# ---------------------------------------------------------------------
# Bounded integer solutions of X * K = T
# ---------------------------------------------------------------------


def matrix_values(entry_bound: int, nonnegative: bool) -> list:
    """Candidate entry values, smallest magnitude first (0, 1, -1, 2, ...)."""
    if nonnegative:
        return list(range(entry_bound + 1))
    vals = [0]
    for x in range(1, entry_bound + 1):
        vals.extend((x, -x))
    return vals


def iter_matrices(rows: int, cols: int, entry_bound: int, nonnegative: bool = False) -> Iterator[Matrix]:
    """All ``rows x cols`` matrices with entries within the bound, in
    deterministic position-lexicographic order with small magnitudes first."""
    vals = matrix_values(entry_bound, nonnegative)
    n = rows * cols
    if n == 0:
        yield Matrix.zero(rows, cols)
        return
    for flat in itertools.product(vals, repeat=n):
        yield Matrix([list(flat[i * cols : (i + 1) * cols]) for i in range(rows)], cols=cols)


def _independent_rows(columns: list, count: int) -> list:
    """Indices of the first ``count`` linearly independent rows of the
    matrix whose columns are given."""
    if count == 0:
        return []
    n = len(columns[0])
    picked = []
    reduced: list = []  # echelonized picked rows, as Fraction lists
    for i in range(n):
        vec = [Fraction(col[i]) for col in columns]
        for rvec in reduced:
            lead = next((k for k, x in enumerate(rvec) if x), None)
            if lead is not None and vec[lead]:
                f = vec[lead] / rvec[lead]
                vec = [x - f * y for x, y in zip(vec, rvec)]
        if any(vec):
            picked.append(i)
            reduced.append(vec)
            if len(picked) == count:
                return picked
    raise ValueError("columns are not linearly independent")


def _adjugate(a: list) -> list:
    n = len(a)
    if n == 1:
        return [[1]]
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1 :] for k, row in enumerate(a) if k != i]
            adj[j][i] = (-1) ** (i + j) * det(Matrix(minor, cols=n - 1))
    return adj


def _solve_transposed(k: Matrix, c: Sequence[int]):
    """Integer solutions of ``y @ k = c`` for a row vector ``y``.

    Returns ``(consistent, z0, basis_cols)`` where the solution set is
    ``{z0 + sum p_j * basis_cols[j]}``; ``z0``/``basis_cols`` are ``None``
    when inconsistent.
    """
    a = k.transpose()  # y*k = c  <=>  a @ y^T = c^T
    s, u, v = snf(a)
    w = u.apply(c)
    r = sum(1 for i in range(min(s.rows, s.cols)) if s[i, i] != 0)
    y = [0] * a.cols
    for i in range(r):
        d = s[i, i]
        if w[i] % d:
            return False, None, None
        y[i] = w[i] // d
    for i in range(r, a.rows):
        if w[i]:
            return False, None, None
    z0 = v.apply(y)
    basis = [v.col(j) for j in range(r, a.cols)]
    return True, z0, basis


def _row_stream(z0, basis, entry_bound, nonnegative) -> Iterator[tuple]:
    lo = 0 if nonnegative else -entry_bound
    hi = entry_bound

    def in_box(z):
        return all(lo <= x <= hi for x in z)

    if not basis:
        if in_box(z0):
            yield tuple(z0)
        return
    f = len(basis)
    pivots = _independent_rows(basis, f)
    sub = [[basis[j][i] for j in range(f)] for i in pivots]
    d = det(Matrix(sub, cols=f))
    adj = _adjugate(sub)
    spans = [max(abs(lo - z0[i]), abs(hi - z0[i])) for i in pivots]
    ranges = []
    for j in range(f):
        bound = sum(abs(adj[j][i]) * spans[i] for i in range(f)) // abs(d)
        ranges.append(range(-bound, bound + 1))
    for p in itertools.product(*ranges):
        z = list(z0)
        for j, pj in enumerate(p):
            if pj:
                bj = basis[j]
                for i in range(len(z)):
                    z[i] += pj * bj[i]
        if in_box(z):
            yield tuple(z)


class MatrixEqSolutions:
    """Lazy, deterministic enumeration of every integer matrix ``X`` with
    ``X * k = t`` and entries in ``[-entry_bound, entry_bound]`` (or
    ``[0, entry_bound]`` under the nonnegative constraint).

    ``consistent`` is False when the system has no integer solution at
    all, which is distinguishable from an enumeration that is merely
    empty at the given bound.
    """

    def __init__(self, k: Matrix, t: Matrix, constraint: str = "any", entry_bound: int = 0):
        if constraint not in ("any", "nonnegative"):
            raise ValueError(f"unknown constraint {constraint!r}")
        if entry_bound < 0:
            raise ValueError("entry_bound must be >= 0")
        if k.cols != t.cols:
            raise ValueError(
                f"shape mismatch: X*k has {k.cols} columns, t has {t.cols}"
            )
        self.k = k
        self.t = t
        self.entry_bound = entry_bound
        self.nonnegative = constraint == "nonnegative"
        self._rows = []
        self.consistent = True
        for i in range(t.rows):
            ok, z0, basis = _solve_transposed(k, t.row(i))
            if not ok:
                self.consistent = False
                self._rows = []
                break
            self._rows.append((z0, basis))

    def __iter__(self) -> Iterator[Matrix]:
        if not self.consistent:
            return
        if self.t.rows == 0:
            yield Matrix([], cols=self.k.rows)
            return

        def rec(i):
            if i == len(self._rows):
                yield []
                return
            z0, basis = self._rows[i]
            for head in _row_stream(z0, basis, self.entry_bound, self.nonnegative):
                for tail in rec(i + 1):
                    yield [list(head)] + tail

        for rows in rec(0):
            yield Matrix(rows, cols=self.k.rows)


def solve_matrix_eq(k: Matrix, t: Matrix, constraint: str = "any", entry_bound: int = 0) -> MatrixEqSolutions:
    """Enumerator for the integer solutions of ``X * k = t`` within an
    entry bound.  See :class:`MatrixEqSolutions`."""
    return MatrixEqSolutions(k, t, constraint, entry_bound)
