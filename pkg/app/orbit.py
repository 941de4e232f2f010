"""Canonical coordinates on a coadjoint orbit and the maps between them and matrices.

The forward map is A = Q rho Q^-1 where Q is block-unitriangular with the
q-blocks below the diagonal and rho is block upper-triangular with
lambda'_k I on the diagonal and p_k [Q]_{M-k} as its k-th block row.
The inverse map runs the hierarchy of flights: at flight k the kernel of
(A_{k-1} - lambda'_k I) is put in the Grassmannian chart [I; q], and
conjugating by L = (I 0; q I) splits off (lambda'_k I, p; 0, A_k).

Block indices i, j and flight indices k are 1-based throughout.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, NamedTuple, Optional, Sequence

import numpy as np

from app.errors import (
    ChartDegenerateError,
    ConjugationResidueError,
    CoordinateShapeError,
    FinalResidueError,
    IndexOutOfRangeError,
    KernelDimensionError,
    NoChartError,
    ShapeMismatchError,
    SingularMatrixError,
)
from app.jordan import JordanStructure, TypeSequence
from app.linalg import (
    Mat,
    assemble,
    block,
    conjugate,
    hstack,
    inverse,
    kernel_basis,
    rref,
    split_cols,
    split_rows,
    vstack,
)
from app.oracle import OrbitReport, verify_on_orbit
from app.scalar import GaussianRational, ScalarLike

logger = logging.getLogger(__name__)

BlockKey = tuple[int, int]


def block_pairs(t: TypeSequence) -> list[BlockKey]:
    """All pairs (j, i) with 1 <= j < i <= M, lexicographic."""
    return [(j, i) for j in range(1, t.M + 1) for i in range(j + 1, t.M + 1)]


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CanonicalCoords:
    """
    The q- and p-blocks of one point of the enlarged orbit.

    q_blocks[(i, j)] is q_i^j of shape n_i x n_j and p_blocks[(j, i)] is
    p_j^i of shape n_j x n_i, for every 1 <= j < i <= M.

    Raises:
        CoordinateShapeError: If a block is missing, extra or misshapen
    """

    type_seq: TypeSequence
    q_blocks: Mapping[BlockKey, Mat] = field(default_factory=dict)
    p_blocks: Mapping[BlockKey, Mat] = field(default_factory=dict)

    def __post_init__(self) -> None:
        t = self.type_seq
        pairs = block_pairs(t)
        expected_q = {(i, j) for j, i in pairs}
        expected_p = set(pairs)
        for name, blocks, expected in (("q", self.q_blocks, expected_q), ("p", self.p_blocks, expected_p)):
            missing = sorted(expected - set(blocks))
            extra = sorted(set(blocks) - expected)
            if missing:
                raise CoordinateShapeError(f"Missing {name}-block {_key(missing[0])}")
            if extra:
                raise CoordinateShapeError(f"Unexpected {name}-block {_key(extra[0])} for M={t.M}")
        for (i, j), m in self.q_blocks.items():
            want = (t.step(i).n, t.step(j).n)
            if m.shape != want:
                raise CoordinateShapeError(f"q-block {_key((i, j))} is {m.rows}x{m.cols}, expected {want[0]}x{want[1]}")
        for (j, i), m in self.p_blocks.items():
            want = (t.step(j).n, t.step(i).n)
            if m.shape != want:
                raise CoordinateShapeError(f"p-block {_key((j, i))} is {m.rows}x{m.cols}, expected {want[0]}x{want[1]}")
        object.__setattr__(self, "q_blocks", dict(sorted(self.q_blocks.items(), key=lambda kv: (kv[0][1], kv[0][0]))))
        object.__setattr__(self, "p_blocks", dict(sorted(self.p_blocks.items())))

    @classmethod
    def zeros(cls, t: TypeSequence) -> CanonicalCoords:
        return cls(
            t,
            {(i, j): Mat.zeros(t.step(i).n, t.step(j).n) for j, i in block_pairs(t)},
            {(j, i): Mat.zeros(t.step(j).n, t.step(i).n) for j, i in block_pairs(t)},
        )

    @classmethod
    def from_values(cls, t: TypeSequence, values: Sequence[ScalarLike]) -> CanonicalCoords:
        """
        Build from a flat list: every p-entry first, then every q-entry.

        Both halves run over the block pairs (j, i) lexicographically and
        row-major inside a block.
        """
        values = list(values)
        p_count = sum(t.step(j).n * t.step(i).n for j, i in block_pairs(t))
        if len(values) != 2 * p_count:
            raise CoordinateShapeError(f"Expected {2 * p_count} coordinate values, got {len(values)}")
        p_blocks, q_blocks = {}, {}
        pos = 0
        for j, i in block_pairs(t):
            size = t.step(j).n * t.step(i).n
            p_blocks[(j, i)] = Mat.from_entries(t.step(j).n, t.step(i).n, values[pos:pos + size])
            pos += size
        for j, i in block_pairs(t):
            size = t.step(j).n * t.step(i).n
            q_blocks[(i, j)] = Mat.from_entries(t.step(i).n, t.step(j).n, values[pos:pos + size])
            pos += size
        return cls(t, q_blocks, p_blocks)

    def values(self) -> list:
        """Flat values in the order accepted by from_values."""
        out = []
        for j, i in block_pairs(self.type_seq):
            out.extend(self.p_blocks[(j, i)].entries)
        for j, i in block_pairs(self.type_seq):
            out.extend(self.q_blocks[(i, j)].entries)
        return out

    @property
    def dim(self) -> int:
        return len(self.values())

    def p_vector(self, k: int) -> Mat:
        """p_k = (p_k^{k+1} ... p_k^M), of shape n_k x (n_{k+1} + ... + n_M)."""
        t = self.type_seq
        return hstack([self.p_blocks[(k, i)] for i in range(k + 1, t.M + 1)], rows=t.step(k).n)

    def q_vector(self, k: int) -> Mat:
        """q^k = (q_{k+1}^k; ...; q_M^k), of shape (n_{k+1} + ... + n_M) x n_k."""
        t = self.type_seq
        return vstack([self.q_blocks[(i, k)] for i in range(k + 1, t.M + 1)], cols=t.step(k).n)

    def replace(self, q_blocks: Optional[Mapping[BlockKey, Mat]] = None,
                p_blocks: Optional[Mapping[BlockKey, Mat]] = None) -> CanonicalCoords:
        """A copy with some blocks swapped out."""
        return CanonicalCoords(
            self.type_seq,
            {**self.q_blocks, **(q_blocks or {})},
            {**self.p_blocks, **(p_blocks or {})},
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CanonicalCoords):
            return NotImplemented
        return (
            self.type_seq == other.type_seq
            and self.q_blocks == other.q_blocks
            and self.p_blocks == other.p_blocks
        )

    __hash__ = None


def _key(pair: BlockKey) -> str:
    return f"{pair[0]},{pair[1]}"


@dataclass(frozen=True)
class Chart:
    """
    A basis ordering: position r (1-based) holds original basis vector perm[r].

    Raises:
        IndexOutOfRangeError: If perm is not a permutation of 1..N
    """

    perm: tuple[int, ...]

    def __post_init__(self) -> None:
        perm = tuple(int(x) for x in self.perm)
        if sorted(perm) != list(range(1, len(perm) + 1)):
            raise IndexOutOfRangeError(f"Chart {list(perm)} is not a permutation of 1..{len(perm)}")
        object.__setattr__(self, "perm", perm)

    @classmethod
    def identity(cls, n: int) -> Chart:
        return cls(tuple(range(1, n + 1)))

    @property
    def size(self) -> int:
        return len(self.perm)

    def is_identity(self) -> bool:
        return self.perm == tuple(range(1, self.size + 1))

    def _check(self, a: Mat) -> None:
        if a.shape != (self.size, self.size):
            raise ShapeMismatchError(f"Chart of size {self.size} applied to a {a.rows}x{a.cols} matrix")

    def apply(self, a: Mat) -> Mat:
        """a'[r, c] = a[perm[r], perm[c]]."""
        self._check(a)
        s = Mat.permutation([p - 1 for p in self.perm])
        return conjugate(s, a, s.T)

    def unapply(self, a: Mat) -> Mat:
        """Inverse of apply."""
        self._check(a)
        return self.inverse().apply(a)

    def inverse(self) -> Chart:
        inv = [0] * self.size
        for r, p in enumerate(self.perm, start=1):
            inv[p - 1] = r
        return Chart(tuple(inv))


@dataclass(frozen=True, eq=False)
class OrbitPoint:
    """A matrix together with the Jordan structure it is claimed to have."""

    a: Mat
    structure: JordanStructure

    def verify(self) -> OrbitReport:
        return verify_on_orbit(self.a, self.structure)


# ---------------------------------------------------------------------------
# Forward map
# ---------------------------------------------------------------------------

def build_Q(c: CanonicalCoords) -> Mat:
    """Block-unitriangular Q: I_{n_k} on the diagonal, q_i^j below it."""
    t = c.type_seq
    grid = []
    for i in range(1, t.M + 1):
        row = []
        for j in range(1, t.M + 1):
            if i == j:
                row.append(Mat.identity(t.step(i).n))
            elif j < i:
                row.append(c.q_blocks[(i, j)])
            else:
                row.append(Mat.zeros(t.step(i).n, t.step(j).n))
        grid.append(row)
    return assemble(grid) if grid else Mat.zeros(0, 0)


def _trailing(t: TypeSequence, q_like: Mat, k: int) -> Mat:
    if not 0 <= k <= t.M:
        raise IndexOutOfRangeError(f"Trailing block count {k} outside 0..{t.M}")
    start = t.offset(t.M - k + 1)
    return block(q_like, (start, t.N), (start, t.N))


def trailing_Q(c: CanonicalCoords, k: int) -> Mat:
    """
    [Q]_k, the trailing block-submatrix of Q over steps M-k+1..M.

    Raises:
        IndexOutOfRangeError: If k is outside 0..M
    """
    return _trailing(c.type_seq, build_Q(c), k)


def rho_offdiagonal(t: TypeSequence, p_vector: Callable[[int], Mat], q_like: Mat) -> Mat:
    """Zero diagonal; block row k right of the diagonal is p_vector(k) @ [q_like]_{M-k}."""
    out = np.array(Mat.zeros(t.N, t.N).array)
    for k in range(1, t.M):
        rows = (t.offset(k), t.offset(k + 1))
        row = p_vector(k) @ _trailing(t, q_like, t.M - k)
        out[rows[0]:rows[1], rows[1]:] = row.array
    return Mat(out)


def _diagonal(t: TypeSequence) -> Mat:
    out = np.array(Mat.zeros(t.N, t.N).array)
    for k, s in enumerate(t.steps, start=1):
        start = t.offset(k)
        for r in range(start, start + s.n):
            out[r, r] = s.lam
    return Mat(out)


def build_rho(c: CanonicalCoords) -> Mat:
    """Block upper-triangular rho with rho_k = p_k [Q]_{M-k}."""
    t = c.type_seq
    return _diagonal(t) + rho_offdiagonal(t, c.p_vector, build_Q(c))


def parameterize(c: CanonicalCoords) -> Mat:
    """
    A = Q rho Q^-1.

    Defined for every coordinate value; points off the true orbit are
    those the oracle rejects.
    """
    if not c.type_seq.is_grouped():
        logger.debug("parameterizing over interleaved sequence %s", c.type_seq)
    q = build_Q(c)
    rho = _diagonal(c.type_seq) + rho_offdiagonal(c.type_seq, c.p_vector, q)
    return q @ rho @ inverse(q)


def _lower(q_col: Mat) -> tuple[Mat, Mat]:
    """L = (I 0; q I) and its inverse (I 0; -q I)."""
    m, n = q_col.shape
    upper = [Mat.identity(n), Mat.zeros(n, m)]
    return (
        assemble([upper, [q_col, Mat.identity(m)]]),
        assemble([upper, [-q_col, Mat.identity(m)]]),
    )


def parameterize_hierarchical(c: CanonicalCoords) -> Mat:
    """
    The same matrix as parameterize, built flight by flight from the bottom:
    A_{k-1} = L_k (lambda'_k I, p_k; 0, A_k) L_k^-1 starting at A_{M-1} = lambda'_M I.
    """
    t = c.type_seq
    if t.M == 0:
        return Mat.zeros(0, 0)
    last = t.step(t.M)
    a = Mat.scalar(last.n, last.lam)
    for k in range(t.M - 1, 0, -1):
        s = t.step(k)
        upper = assemble([
            [Mat.scalar(s.n, s.lam), c.p_vector(k)],
            [Mat.zeros(a.rows, s.n), a],
        ])
        lower, lower_inv = _lower(c.q_vector(k))
        a = lower @ upper @ lower_inv
    return a


# ---------------------------------------------------------------------------
# Inverse map
# ---------------------------------------------------------------------------

class Flight(NamedTuple):
    q_col: Mat
    p_row: Mat
    a_next: Mat


@dataclass(frozen=True, eq=False)
class FlightRecord:
    """One executed flight of an extraction."""

    index: int
    lam: GaussianRational
    n: int
    q_col: Mat
    p_row: Mat
    a_next: Mat


def flight(a_prev: Mat, lam: ScalarLike, n: int, index: Optional[int] = None) -> Flight:
    """
    Split one eigenvalue layer off a_prev.

    Args:
        a_prev: Square matrix of the previous level
        lam: Eigenvalue lambda'_k
        n: Expected kernel dimension n_k
        index: Flight number used in error messages

    Returns:
        (q_col, p_row, a_next) with L^-1 a_prev L = (lam I, p_row; 0, a_next)

    Raises:
        KernelDimensionError: If dim ker(a_prev - lam I) != n
        ChartDegenerateError: If the kernel's leading n x n minor is singular
        ConjugationResidueError: If the conjugated matrix is not block upper-triangular
    """
    size = a_prev.rows
    kernel = kernel_basis(a_prev.shifted(lam))
    if kernel.cols != n:
        raise KernelDimensionError(
            f"dim ker(A - ({lam})I) = {kernel.cols}, expected {n}", flight=index
        )
    try:
        lead_inv = inverse(block(kernel, (0, n), (0, n)))
    except SingularMatrixError as e:
        raise ChartDegenerateError(
            f"kernel of A - ({lam})I is not transverse to the retained coordinates", flight=index
        ) from e
    q_col = block(kernel @ lead_inv, (n, size), (0, n))
    lower, lower_inv = _lower(q_col)
    conj = lower_inv @ a_prev @ lower

    if not block(conj, (n, size), (0, n)).is_zero():
        raise ConjugationResidueError("bottom-left block is not zero", flight=index)
    if block(conj, (0, n), (0, n)) != Mat.scalar(n, lam):
        raise ConjugationResidueError(f"top-left block is not ({lam})I", flight=index)

    return Flight(q_col, block(conj, (0, n), (n, size)), block(conj, (n, size), (n, size)))


def _check_square(t: TypeSequence, a: Mat) -> None:
    if a.shape != (t.N, t.N):
        raise ShapeMismatchError(f"Matrix is {a.rows}x{a.cols}, type sequence has N={t.N}")


def extract_trace(t: TypeSequence, a: Mat, chart: Optional[Chart] = None) -> list[FlightRecord]:
    """
    Run all M-1 flights on chart.apply(a) and check the final residue.

    Raises:
        ExtractionError: From the failing flight, with its index
        FinalResidueError: If A_{M-1} != lambda'_M I
    """
    _check_square(t, a)
    if chart is not None:
        a = chart.apply(a)
    records: list[FlightRecord] = []
    for k in range(1, t.M):
        s = t.step(k)
        q_col, p_row, a = flight(a, s.lam, s.n, index=k)
        logger.debug("flight %d (%s, %d): remaining size %d", k, s.lam, s.n, a.rows)
        records.append(FlightRecord(k, s.lam, s.n, q_col, p_row, a))
    if t.M:
        last = t.step(t.M)
        if a != Mat.scalar(last.n, last.lam):
            raise FinalResidueError(f"final residue after {t.M - 1} flights is not ({last.lam})I: {a}")
    return records


def extract(t: TypeSequence, a: Mat, chart: Optional[Chart] = None) -> CanonicalCoords:
    """
    Canonical coordinates of a in the given chart (identity by default).

    extract(t, parameterize(c)) == c for every c where the flights are
    defined.
    """
    q_blocks, p_blocks = {}, {}
    for rec in extract_trace(t, a, chart):
        k = rec.index
        later = [t.step(i).n for i in range(k + 1, t.M + 1)]
        for i, blk in enumerate(split_rows(rec.q_col, later), start=k + 1):
            q_blocks[(i, k)] = blk
        for i, blk in enumerate(split_cols(rec.p_row, later), start=k + 1):
            p_blocks[(k, i)] = blk
    return CanonicalCoords(t, q_blocks, p_blocks)


def find_chart(t: TypeSequence, a: Mat) -> Chart:
    """
    A chart in which every flight of a is defined.

    At each flight the first n_k independent rows of the kernel basis are
    moved to the front of the remaining coordinates. Reordering trailing
    coordinates does not disturb earlier flights, so the per-flight
    choices compose into one permutation.

    Raises:
        NoChartError: If some kernel has the wrong dimension
    """
    _check_square(t, a)
    perm = list(range(1, t.N + 1))
    current = a
    for k in range(1, t.M):
        s = t.step(k)
        kernel = kernel_basis(current.shifted(s.lam))
        if kernel.cols != s.n:
            raise NoChartError(
                f"dim ker(A - ({s.lam})I) = {kernel.cols}, expected {s.n}; matrix is not on the orbit",
                flight=k,
            )
        chosen = rref(kernel.T).pivot_columns
        chosen_set = set(chosen)
        local = chosen + [r for r in range(current.rows) if r not in chosen_set]
        start = t.offset(k)
        perm[start:] = [perm[start + r] for r in local]
        current = Mat(current.array[np.ix_(local, local)])
        current = flight(current, s.lam, s.n, index=k).a_next
        if local != sorted(local):
            logger.debug("flight %d: reordered trailing coordinates to %s", k, local)
    return Chart(tuple(perm))


def chart_transition(c: CanonicalCoords, chart: Chart) -> CanonicalCoords:
    """Coordinates in `chart` of the point whose identity-chart coordinates are c."""
    return extract(c.type_seq, parameterize(c), chart)


def coords_from_blocks(t: TypeSequence, q: Mapping[BlockKey, Iterable], p: Mapping[BlockKey, Iterable]) -> CanonicalCoords:
    """Build coordinates from nested-row blocks."""
    return CanonicalCoords(
        t,
        {key: Mat.from_rows([list(r) for r in rows], cols=t.step(key[1]).n) for key, rows in q.items()},
        {key: Mat.from_rows([list(r) for r in rows], cols=t.step(key[1]).n) for key, rows in p.items()},
    )
