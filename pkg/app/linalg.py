"""Exact dense linear algebra over Q(i).

Matrices are immutable wrappers around numpy object arrays whose entries
are ``GaussianRational`` values. Elimination is fraction-preserving
Gauss-Jordan with first-nonzero pivoting; there is no magnitude pivoting
since every pivot is exact.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple, Sequence

import numpy as np

from app.errors import InconsistentSystemError, ShapeMismatchError, SingularMatrixError
from app.scalar import ONE, ZERO, GaussianRational, ScalarLike

Range = tuple[int, int]


def _empty(rows: int, cols: int) -> np.ndarray:
    data = np.empty((rows, cols), dtype=object)
    data.fill(ZERO)
    return data


def _coerced(data: np.ndarray) -> np.ndarray:
    out = np.empty(data.shape, dtype=object)
    for index, value in np.ndenumerate(data):
        out[index] = GaussianRational.coerce(value)
    return out


class Mat:
    """
    An exact rows x cols matrix over Q(i).

    Zero-sized matrices are legal and behave as neutral blocks.
    """

    __slots__ = ("_data",)

    def __init__(self, data: np.ndarray) -> None:
        if data.ndim != 2:
            raise ShapeMismatchError(f"Matrix data must be 2-dimensional. Got shape {data.shape}")
        data = _coerced(data)
        data.flags.writeable = False
        self._data = data

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[ScalarLike | str]], cols: int | None = None) -> Mat:
        """Build a matrix from nested rows; ``cols`` is needed only when rows is empty."""
        height = len(rows)
        width = len(rows[0]) if height else (cols or 0)
        data = _empty(height, width)
        for r, row in enumerate(rows):
            if len(row) != width:
                raise ShapeMismatchError(f"Row {r} has {len(row)} entries, expected {width}")
            for c, value in enumerate(row):
                data[r, c] = GaussianRational.coerce(value)
        return cls(data)

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Iterable[ScalarLike]) -> Mat:
        flat = list(entries)
        if len(flat) != rows * cols:
            raise ShapeMismatchError(
                f"Expected {rows * cols} entries for a {rows}x{cols} matrix, got {len(flat)}"
            )
        data = _empty(rows, cols)
        for k, value in enumerate(flat):
            data[divmod(k, cols)] = GaussianRational.coerce(value)
        return cls(data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Mat:
        return cls(_empty(rows, cols))

    @classmethod
    def identity(cls, n: int) -> Mat:
        return cls.scalar(n, ONE)

    @classmethod
    def scalar(cls, n: int, value: ScalarLike) -> Mat:
        data = _empty(n, n)
        value = GaussianRational.coerce(value)
        for k in range(n):
            data[k, k] = value
        return cls(data)

    @classmethod
    def unit(cls, rows: int, cols: int, r: int, c: int) -> Mat:
        """Elementary matrix with a single 1 at (r, c), 0-based."""
        data = _empty(rows, cols)
        data[r, c] = ONE
        return cls(data)

    @classmethod
    def permutation(cls, perm: Sequence[int]) -> Mat:
        """Matrix S with (S a S^-1)[r, c] = a[perm[r], perm[c]], perm 0-based."""
        n = len(perm)
        data = _empty(n, n)
        for r, source in enumerate(perm):
            data[r, source] = ONE
        return cls(data)

    # -- accessors ----------------------------------------------------------

    @property
    def rows(self) -> int:
        return self._data.shape[0]

    @property
    def cols(self) -> int:
        return self._data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def entries(self) -> tuple[GaussianRational, ...]:
        """Row-major entries."""
        return tuple(self._data.flat)

    @property
    def array(self) -> np.ndarray:
        """Read-only view of the underlying object array."""
        return self._data

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, index: tuple[int, int]) -> GaussianRational:
        return self._data[index]

    def tolist(self) -> list[list[GaussianRational]]:
        return [list(row) for row in self._data]

    def copy_array(self) -> np.ndarray:
        """A writable copy for elimination routines."""
        return self._data.copy()

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self._data.flat)

    def is_unit_lower_triangular(self) -> bool:
        if not self.is_square():
            return False
        n = self.rows
        return all(
            self._data[r, c] == (ONE if r == c else ZERO)
            for r in range(n)
            for c in range(r, n)
        )

    def is_unit_upper_triangular(self) -> bool:
        return self.T.is_unit_lower_triangular()

    def is_integral(self) -> bool:
        """True when every entry is a Gaussian integer."""
        return all(x.is_integral() for x in self._data.flat)

    # -- arithmetic ---------------------------------------------------------

    @property
    def T(self) -> Mat:
        return Mat(self._data.T.copy())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for a, b in zip(self._data.flat, other._data.flat)
        )

    __hash__ = None

    def __add__(self, other: Mat) -> Mat:
        _require_same_shape(self, other, "add")
        return Mat(self._data + other._data)

    def __sub__(self, other: Mat) -> Mat:
        _require_same_shape(self, other, "subtract")
        return Mat(self._data - other._data)

    def __neg__(self) -> Mat:
        return Mat(-self._data)

    def __matmul__(self, other: Mat) -> Mat:
        return matmul(self, other)

    def scale(self, factor: ScalarLike) -> Mat:
        factor = GaussianRational.coerce(factor)
        return Mat(self._data * factor)

    def shifted(self, value: ScalarLike) -> Mat:
        """self - value * I."""
        if not self.is_square():
            raise ShapeMismatchError(f"Cannot shift a non-square {self.rows}x{self.cols} matrix")
        return self - Mat.scalar(self.rows, value)

    def trace(self) -> GaussianRational:
        if not self.is_square():
            raise ShapeMismatchError(f"Trace of a non-square {self.rows}x{self.cols} matrix")
        total = ZERO
        for k in range(self.rows):
            total = total + self._data[k, k]
        return total

    def power(self, exponent: int) -> Mat:
        if not self.is_square() or exponent < 0:
            raise ShapeMismatchError("power() needs a square matrix and a non-negative exponent")
        result = Mat.identity(self.rows)
        for _ in range(exponent):
            result = result @ self
        return result

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(x) for x in row) for row in self._data)
        return f"Mat({self.rows}x{self.cols}: [{body}])"


def _require_same_shape(a: Mat, b: Mat, op: str) -> None:
    if a.shape != b.shape:
        raise ShapeMismatchError(f"Cannot {op} {a.rows}x{a.cols} and {b.rows}x{b.cols} matrices")


# ---------------------------------------------------------------------------
# Products
# ---------------------------------------------------------------------------

def matmul(a: Mat, b: Mat) -> Mat:
    """
    Exact product a @ b.

    Raises:
        ShapeMismatchError: If a.cols != b.rows
    """
    if a.cols != b.rows:
        raise ShapeMismatchError(
            f"Cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}"
        )
    if a.cols == 0:
        return Mat.zeros(a.rows, b.cols)
    return Mat(np.dot(a.array, b.array))


def conjugate(g: Mat, a: Mat, g_inv: Mat) -> Mat:
    """g @ a @ g_inv."""
    return g @ a @ g_inv


def commutator(x: Mat, a: Mat) -> Mat:
    """[x, a] = x a - a x."""
    return x @ a - a @ x


# ---------------------------------------------------------------------------
# Elimination
# ---------------------------------------------------------------------------

class RrefResult(NamedTuple):
    reduced: Mat
    pivot_columns: list[int]
    rank: int


def _gauss_jordan(work: np.ndarray, limit: int | None = None) -> list[int]:
    """
    Reduce ``work`` in place to reduced row-echelon form.

    Only the first ``limit`` columns are used as pivot candidates.
    Returns the 0-based pivot columns.
    """
    rows, cols = work.shape
    limit = cols if limit is None else limit
    pivots: list[int] = []
    r = 0
    for c in range(limit):
        if r == rows:
            break
        # first nonzero entry at or below row r
        for k in range(r, rows):
            if not work[k, c].is_zero():
                break
        else:
            continue
        if k != r:
            work[[r, k]] = work[[k, r]]
        pivot = work[r, c]
        if pivot != ONE:
            work[r, :] = work[r, :] * pivot.inverse()
        for k in range(rows):
            if k != r and not work[k, c].is_zero():
                work[k, :] = work[k, :] - work[k, c] * work[r, :]
        pivots.append(c)
        r += 1
    return pivots


def rref(m: Mat) -> RrefResult:
    """
    Reduced row-echelon form by exact Gauss-Jordan.

    Returns:
        (reduced matrix, 0-based pivot columns, rank)
    """
    work = m.copy_array()
    pivots = _gauss_jordan(work)
    return RrefResult(Mat(work), pivots, len(pivots))


def rank(m: Mat) -> int:
    return rref(m).rank


def kernel_basis(m: Mat) -> Mat:
    """
    Basis of the right null space, one vector per column.

    Column k has a 1 in the k-th free column of rref(m); the width is
    m.cols - rank(m) and m @ kernel_basis(m) == 0 exactly.
    """
    reduced, pivots, _ = rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis = _empty(m.cols, len(free))
    for k, f in enumerate(free):
        basis[f, k] = ONE
        for row, p in enumerate(pivots):
            basis[p, k] = -reduced[row, f]
    return Mat(basis)


def _inverse_unit_lower(m: Mat) -> Mat:
    # Forward substitution; entries stay polynomial in those of m.
    n = m.rows
    a = m.array
    out = _empty(n, n)
    for c in range(n):
        out[c, c] = ONE
        for r in range(c + 1, n):
            total = ZERO
            for k in range(c, r):
                total = total + a[r, k] * out[k, c]
            out[r, c] = -total
    return Mat(out)


def inverse(m: Mat) -> Mat:
    """
    Exact inverse.

    Unitriangular inputs take a substitution fast path, so the inverse of
    an integer unitriangular matrix is again integral.

    Raises:
        ShapeMismatchError: If m is not square
        SingularMatrixError: If m is singular
    """
    if not m.is_square():
        raise ShapeMismatchError(f"Cannot invert a non-square {m.rows}x{m.cols} matrix")
    n = m.rows
    if m.is_unit_lower_triangular():
        return _inverse_unit_lower(m)
    if m.is_unit_upper_triangular():
        return _inverse_unit_lower(m.T).T

    work = np.hstack((m.copy_array(), Mat.identity(n).copy_array()))
    pivots = _gauss_jordan(work, limit=n)
    if len(pivots) < n:
        raise SingularMatrixError(f"Matrix is singular (rank {len(pivots)} < {n})")
    return Mat(work[:, n:].copy())


def solve(a: Mat, b: Mat) -> Mat:
    """
    A particular exact solution x of a @ x = b (free variables set to 0).

    Raises:
        ShapeMismatchError: If a.rows != b.rows
        InconsistentSystemError: If the system has no solution
    """
    if a.rows != b.rows:
        raise ShapeMismatchError(
            f"Cannot solve a {a.rows}x{a.cols} system with a {b.rows}x{b.cols} right-hand side"
        )
    work = np.hstack((a.copy_array(), b.copy_array()))
    pivots = _gauss_jordan(work, limit=a.cols)
    rank_a = len(pivots)
    for r in range(rank_a, a.rows):
        if any(not x.is_zero() for x in work[r, a.cols:]):
            raise InconsistentSystemError(
                f"Linear system is inconsistent (rank {rank_a}, row {r} of the reduced system is 0 = nonzero)"
            )
    x = _empty(a.cols, b.cols)
    for row, p in enumerate(pivots):
        x[p, :] = work[row, a.cols:]
    return Mat(x)


# ---------------------------------------------------------------------------
# Blocks
# ---------------------------------------------------------------------------

def block(m: Mat, row_range: Range, col_range: Range) -> Mat:
    """
    Submatrix m[r0:r1, c0:c1] with 0-based half-open ranges.

    Raises:
        ShapeMismatchError: If a range is out of bounds
    """
    (r0, r1), (c0, c1) = row_range, col_range
    if not (0 <= r0 <= r1 <= m.rows and 0 <= c0 <= c1 <= m.cols):
        raise ShapeMismatchError(
            f"Block rows {r0}:{r1}, cols {c0}:{c1} out of bounds for {m.rows}x{m.cols}"
        )
    return Mat(m.array[r0:r1, c0:c1].copy())


def assemble(grid: Sequence[Sequence[Mat]]) -> Mat:
    """
    Assemble a grid of blocks into one matrix.

    Every block in a grid row must share its row count and every block in
    a grid column its column count; zero-sized blocks are allowed.

    Raises:
        ShapeMismatchError: If block shapes are inconsistent
    """
    if not grid:
        return Mat.zeros(0, 0)
    width = len(grid[0])
    heights = [row[0].rows if row else 0 for row in grid]
    widths = [blk.cols for blk in grid[0]]
    for i, row in enumerate(grid):
        if len(row) != width:
            raise ShapeMismatchError(f"Block row {i} has {len(row)} blocks, expected {width}")
        for j, blk in enumerate(row):
            if blk.shape != (heights[i], widths[j]):
                raise ShapeMismatchError(
                    f"Block ({i}, {j}) is {blk.rows}x{blk.cols}, expected {heights[i]}x{widths[j]}"
                )
    out = _empty(sum(heights), sum(widths))
    r = 0
    for i, row in enumerate(grid):
        c = 0
        for j, blk in enumerate(row):
            out[r:r + heights[i], c:c + widths[j]] = blk.array
            c += widths[j]
        r += heights[i]
    return Mat(out)


def hstack(blocks: Sequence[Mat], rows: int | None = None) -> Mat:
    """Concatenate side by side; ``rows`` fixes the height of an empty list."""
    if not blocks:
        return Mat.zeros(rows or 0, 0)
    return assemble([list(blocks)])


def vstack(blocks: Sequence[Mat], cols: int | None = None) -> Mat:
    """Concatenate top to bottom; ``cols`` fixes the width of an empty list."""
    if not blocks:
        return Mat.zeros(0, cols or 0)
    return assemble([[blk] for blk in blocks])


def block_diag(blocks: Sequence[Mat]) -> Mat:
    sizes = [(blk.rows, blk.cols) for blk in blocks]
    grid = [
        [blk if i == j else Mat.zeros(sizes[i][0], sizes[j][1]) for j in range(len(blocks))]
        for i, blk in enumerate(blocks)
    ]
    return assemble(grid)


def split_rows(m: Mat, sizes: Sequence[int]) -> list[Mat]:
    """Cut m horizontally into consecutive blocks of the given heights."""
    if sum(sizes) != m.rows:
        raise ShapeMismatchError(f"Row sizes {list(sizes)} do not add up to {m.rows}")
    out, start = [], 0
    for size in sizes:
        out.append(block(m, (start, start + size), (0, m.cols)))
        start += size
    return out


def split_cols(m: Mat, sizes: Sequence[int]) -> list[Mat]:
    """Cut m vertically into consecutive blocks of the given widths."""
    return [blk.T for blk in split_rows(m.T, sizes)]
