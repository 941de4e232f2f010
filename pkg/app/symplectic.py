"""Kirillov-Kostant form on orbit tangents and the Darboux check of (p, q).

A tangent vector at A is a matrix v = [X, A]. The form is evaluated as
tr(X_1 v_2), which does not depend on which X_1 solves [X_1, A] = v_1.
The global sign is config.KKS_ORIENTATION, fixed so that
omega(d/dp, d/dq) = +1 in the 2x2 case.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Literal, Optional, Sequence

import numpy as np

from app import config
from app.errors import (
    BasePointMismatchError,
    InconsistentSystemError,
    IndexOutOfRangeError,
    NotTangentError,
    ShapeMismatchError,
)
from app.jordan import TypeSequence
from app.linalg import Mat, assemble, block, commutator, conjugate, hstack, inverse, solve
from app.orbit import CanonicalCoords, block_pairs, build_Q, build_rho, rho_offdiagonal
from app.scalar import GaussianRational

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CoordinateIndex:
    """
    One scalar coordinate: entry (s, t) of p-block (j, i) or q-block (i, j).

    All indices are 1-based.
    """

    kind: Literal["p", "q"]
    block: tuple[int, int]
    entry: tuple[int, int]

    def __str__(self) -> str:
        return f"{self.kind}[{self.block[0]},{self.block[1]}]({self.entry[0]},{self.entry[1]})"

    def partner(self) -> CoordinateIndex:
        """The conjugate coordinate: (p_j^i)_{st} <-> (q_i^j)_{ts}."""
        other = "q" if self.kind == "p" else "p"
        return CoordinateIndex(other, (self.block[1], self.block[0]), (self.entry[1], self.entry[0]))


@dataclass(frozen=True, eq=False)
class TangentVector:
    """v = [X, at] for some X."""

    at: Mat
    v: Mat


@dataclass(frozen=True, eq=False)
class GramReport:
    enumeration: list[CoordinateIndex]
    gram: Mat
    canonical: Mat
    match: bool
    first_mismatch: Optional[dict] = None


def enumerate_coordinates(t: TypeSequence) -> list[CoordinateIndex]:
    """
    Every coordinate in a fixed order.

    p-entries come first, then q-entries; both run over the block pairs
    (j, i) lexicographically and row-major inside each block. This is
    the order of CanonicalCoords.values().
    """
    p_part, q_part = [], []
    for j, i in block_pairs(t):
        nj, ni = t.step(j).n, t.step(i).n
        p_part.extend(CoordinateIndex("p", (j, i), (s, u)) for s in range(1, nj + 1) for u in range(1, ni + 1))
        q_part.extend(CoordinateIndex("q", (i, j), (s, u)) for s in range(1, ni + 1) for u in range(1, nj + 1))
    return p_part + q_part


# ---------------------------------------------------------------------------
# Tangents
# ---------------------------------------------------------------------------

def _unit_block(c: CanonicalCoords, idx: CoordinateIndex) -> Mat:
    blocks = {"p": c.p_blocks, "q": c.q_blocks}.get(idx.kind, {})
    if idx.block not in blocks:
        raise IndexOutOfRangeError(f"No coordinate block {idx.kind}{list(idx.block)} for M={c.type_seq.M}")
    shape = blocks[idx.block].shape
    s, u = idx.entry
    if not (1 <= s <= shape[0] and 1 <= u <= shape[1]):
        raise IndexOutOfRangeError(f"Entry {idx.entry} outside the {shape[0]}x{shape[1]} block of {idx}")
    return Mat.unit(shape[0], shape[1], s - 1, u - 1)


def coordinate_tangent(c: CanonicalCoords, idx: CoordinateIndex) -> TangentVector:
    """
    Exact partial derivative of parameterize(c) along one coordinate.

    rho is affine in p, so d/dp gives Q (d rho) Q^-1. Along q both Q and rho
    move: dA = (dQ) rho Q^-1 + Q (d rho) Q^-1 - A (dQ) Q^-1 with
    d rho_k = p_k [dQ]_{M-k}.

    Raises:
        IndexOutOfRangeError: If idx does not name a coordinate of c
    """
    t = c.type_seq
    unit = _unit_block(c, idx)
    q = build_Q(c)
    q_inv = inverse(q)
    rho = build_rho(c)
    a = q @ rho @ q_inv
    direction = CanonicalCoords.zeros(t)
    if idx.kind == "p":
        direction = direction.replace(p_blocks={idx.block: unit})
        d_rho = rho_offdiagonal(t, direction.p_vector, q)
        return TangentVector(a, q @ d_rho @ q_inv)
    direction = direction.replace(q_blocks={idx.block: unit})
    d_q = build_Q(direction) - Mat.identity(t.N)
    d_rho = rho_offdiagonal(t, c.p_vector, d_q)
    return TangentVector(a, d_q @ rho @ q_inv + q @ d_rho @ q_inv - a @ d_q @ q_inv)


def _commutator_system(a: Mat) -> Mat:
    """The N^2 x N^2 matrix of X -> XA - AX on row-major vec(X)."""
    n = a.rows
    data = np.array(Mat.zeros(n * n, n * n).array)
    arr = a.array
    for r in range(n):
        for col in range(n):
            row = r * n + col
            for k in range(n):
                data[row, r * n + k] = data[row, r * n + k] + arr[k, col]
                data[row, k * n + col] = data[row, k * n + col] - arr[r, k]
    return Mat(data)


def solve_infinitesimal_many(a: Mat, vs: Sequence[Mat]) -> list[Mat]:
    """
    One X with XA - AX = v for each v, from a single elimination.

    Raises:
        ShapeMismatchError: If a is not square or a v has another shape
        NotTangentError: If some v is not of the form [X, a]
    """
    if not a.is_square():
        raise ShapeMismatchError(f"Base point must be square. Got {a.rows}x{a.cols}")
    n = a.rows
    for v in vs:
        if v.shape != a.shape:
            raise ShapeMismatchError(f"Tangent is {v.rows}x{v.cols}, base point is {n}x{n}")
    if not vs:
        return []
    rhs = hstack([Mat.from_entries(n * n, 1, v.entries) for v in vs], rows=n * n)
    try:
        x = solve(_commutator_system(a), rhs)
    except InconsistentSystemError as e:
        raise NotTangentError("matrix is not tangent to the orbit at the base point") from e
    return [Mat.from_entries(n, n, block(x, (0, n * n), (k, k + 1)).entries) for k in range(len(vs))]


def solve_infinitesimal(a: Mat, v: Mat) -> Mat:
    """
    Some X with [X, a] = v.

    Raises:
        NotTangentError: If v is not tangent to the orbit at a
    """
    return solve_infinitesimal_many(a, [v])[0]


# ---------------------------------------------------------------------------
# Forms
# ---------------------------------------------------------------------------

def kks_form(t1: TangentVector, t2: TangentVector) -> GaussianRational:
    """
    omega(t1, t2) = KKS_ORIENTATION * tr(X_1 v_2) where [X_1, A] = v_1.

    Raises:
        BasePointMismatchError: If the tangents sit at different points
        NotTangentError: If t1.v is not tangent at its base point
    """
    if t1.at != t2.at:
        raise BasePointMismatchError("Tangent vectors are based at different matrices")
    x1 = solve_infinitesimal(t1.at, t1.v)
    return config.KKS_ORIENTATION * (x1 @ t2.v).trace()


def kks_form_group(j: Mat, g: Mat, e1: Mat, e2: Mat) -> GaussianRational:
    """
    The form evaluated at the base point J.

    For tangents [E_i, gJg^-1] this is tr J [g^-1 E_1 g, g^-1 E_2 g], with
    the same orientation as kks_form.
    """
    g_inv = inverse(g)
    pulled = commutator(conjugate(g_inv, e1, g), conjugate(g_inv, e2, g))
    return config.KKS_ORIENTATION * (j @ pulled).trace()


def _aux_blocks(b: Mat, n: int) -> tuple[Mat, Mat]:
    size = b.rows
    if not b.is_square() or not 0 <= n <= size:
        raise ShapeMismatchError(f"Cannot split a {b.rows}x{b.cols} matrix at {n}")
    return block(b, (0, n), (n, size)), block(b, (n, size), (0, n))


def aux_form(b1: Mat, b2: Mat, n: int, m: int) -> GaussianRational:
    """
    omega(B1, B2) = tr(b2_21 b1_12) - tr(b2_12 b1_21) on (n+m)x(n+m) matrices.

    Raises:
        ShapeMismatchError: If b1 or b2 is not (n+m)x(n+m)
    """
    for b in (b1, b2):
        if b.shape != (n + m, n + m):
            raise ShapeMismatchError(f"Expected {n + m}x{n + m} matrices, got {b.rows}x{b.cols}")
    b1_12, b1_21 = _aux_blocks(b1, n)
    b2_12, b2_21 = _aux_blocks(b2, n)
    return (b2_21 @ b1_12).trace() - (b2_12 @ b1_21).trace()


def aux_embed(p: Mat, q: Mat) -> Mat:
    """(0 p; q 0) for p of shape n x m and q of shape m x n."""
    if p.shape != (q.cols, q.rows):
        raise ShapeMismatchError(f"p is {p.rows}x{p.cols} but q is {q.rows}x{q.cols}")
    n, m = p.shape
    return assemble([[Mat.zeros(n, n), p], [q, Mat.zeros(m, m)]])


def aux_split(b: Mat, n: int) -> tuple[Mat, Mat]:
    """Inverse of aux_embed: the off-diagonal blocks (p, q)."""
    return _aux_blocks(b, n)


def aux_darboux_basis(n: int, m: int) -> list[tuple[Mat, Mat]]:
    """Couples (P_ij, Q_ji) with aux_form(P_ij, Q_ji) = 1 and all other pairings 0."""
    pairs = []
    for i in range(n):
        for jj in range(m):
            pairs.append((
                aux_embed(Mat.unit(n, m, i, jj), Mat.zeros(m, n)),
                aux_embed(Mat.zeros(n, m), Mat.unit(m, n, jj, i)),
            ))
    return pairs


# ---------------------------------------------------------------------------
# Gram matrices
# ---------------------------------------------------------------------------

def gram_matrix(c: CanonicalCoords) -> Mat:
    """
    kks_form over all pairs of coordinate tangents, in enumerate_coordinates order.

    Raises:
        NotTangentError: If a coordinate tangent is not tangent to the orbit
    """
    enumeration = enumerate_coordinates(c.type_seq)
    d = len(enumeration)
    if not d:
        return Mat.zeros(0, 0)
    tangents = [coordinate_tangent(c, idx) for idx in enumeration]
    a = tangents[0].at
    xs = solve_infinitesimal_many(a, [tv.v for tv in tangents])
    logger.debug("gram matrix: %d coordinates at N=%d", d, a.rows)
    return Mat.from_rows([
        [config.KKS_ORIENTATION * (x @ tv.v).trace() for tv in tangents]
        for x in xs
    ])


def canonical_gram(t: TypeSequence) -> Mat:
    """+1 at (p-entry, its q partner), -1 at the transpose, 0 elsewhere."""
    enumeration = enumerate_coordinates(t)
    position = {idx: k for k, idx in enumerate(enumeration)}
    d = len(enumeration)
    data = np.array(Mat.zeros(d, d).array)
    for idx in enumeration:
        if idx.kind == "p":
            r, col = position[idx], position[idx.partner()]
            data[r, col] = GaussianRational(1)
            data[col, r] = GaussianRational(-1)
    return Mat(data)


def darboux_report(c: CanonicalCoords) -> GramReport:
    """Compare gram_matrix(c) with canonical_gram and locate the first difference."""
    enumeration = enumerate_coordinates(c.type_seq)
    gram = gram_matrix(c)
    canonical = canonical_gram(c.type_seq)
    mismatch = None
    for r in range(gram.rows):
        for col in range(gram.cols):
            if gram[r, col] != canonical[r, col]:
                mismatch = {
                    "row": str(enumeration[r]),
                    "col": str(enumeration[col]),
                    "found": str(gram[r, col]),
                    "expected": str(canonical[r, col]),
                }
                break
        if mismatch:
            break
    return GramReport(enumeration, gram, canonical, mismatch is None, mismatch)


def is_antisymmetric(m: Mat) -> bool:
    return m.is_square() and (m + m.T).is_zero()
