"""Worked examples with labelled coordinates q1, q2, ... and p1, p2, ...

Each ``*_coords`` helper builds CanonicalCoords from dicts {label: value};
the companion functions return the matrices printed for that example,
written out entry by entry from the same labels.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from app.jordan import TypeSequence
from app.linalg import Mat
from app.orbit import CanonicalCoords, coords_from_blocks
from app.scalar import GaussianRational

Values = Mapping[int, GaussianRational]


# ---------------------------------------------------------------------------
# 2x2 orbit with eigenvalues 0 and R
# ---------------------------------------------------------------------------

def pair_sequence(r: GaussianRational) -> TypeSequence:
    return TypeSequence.of([(0, 1), (r, 1)])


def pair_coords(p: GaussianRational, q: GaussianRational, r: GaussianRational) -> CanonicalCoords:
    return coords_from_blocks(pair_sequence(r), {(2, 1): [[q]]}, {(1, 2): [[p]]})


def pair_matrix(p: GaussianRational, q: GaussianRational, r: GaussianRational) -> Mat:
    return Mat.from_rows([
        [-p * q, p],
        [-q * (p * q + r), p * q + r],
    ])


# ---------------------------------------------------------------------------
# Four distinct eigenvalues and the nilpotent 4x4 box
# ---------------------------------------------------------------------------

DISTINCT4_LAMBDAS = (4, 3, 2, 1)


def distinct4_sequence(lams=DISTINCT4_LAMBDAS) -> TypeSequence:
    return TypeSequence.of([(lam, 1) for lam in lams])


def nilpotent4_sequence() -> TypeSequence:
    return TypeSequence.of([(0, 1)] * 4)


def distinct4_coords(q: Values, p: Values, t: TypeSequence | None = None) -> CanonicalCoords:
    t = t or distinct4_sequence()
    return coords_from_blocks(
        t,
        {
            (2, 1): [[q[4]]], (3, 1): [[q[5]]], (4, 1): [[q[6]]],
            (3, 2): [[q[2]]], (4, 2): [[q[3]]], (4, 3): [[q[1]]],
        },
        {
            (1, 2): [[p[4]]], (1, 3): [[p[5]]], (1, 4): [[p[6]]],
            (2, 3): [[p[2]]], (2, 4): [[p[3]]], (3, 4): [[p[1]]],
        },
    )


def distinct4_Q(q: Values) -> Mat:
    return Mat.from_rows([
        [1, 0, 0, 0],
        [q[4], 1, 0, 0],
        [q[5], q[2], 1, 0],
        [q[6], q[3], q[1], 1],
    ])


def distinct4_Q_inv(q: Values) -> Mat:
    return Mat.from_rows([
        [1, 0, 0, 0],
        [-q[4], 1, 0, 0],
        [-q[5] + q[4] * q[2], -q[2], 1, 0],
        [-q[6] + q[5] * q[1] - q[4] * (-q[3] + q[1] * q[2]), -q[3] + q[1] * q[2], -q[1], 1],
    ])


def distinct4_rho(q: Values, p: Values, lams=DISTINCT4_LAMBDAS) -> Mat:
    l4, l3, l2, l1 = lams
    return Mat.from_rows([
        [l4, p[4] + p[5] * q[2] + p[6] * q[3], p[5] + p[6] * q[1], p[6]],
        [0, l3, p[2] + p[3] * q[1], p[3]],
        [0, 0, l2, p[1]],
        [0, 0, 0, l1],
    ])


# ---------------------------------------------------------------------------
# Five distinct eigenvalues
# ---------------------------------------------------------------------------

DISTINCT5_LAMBDAS = (5, 4, 3, 2, 1)


def distinct5_sequence() -> TypeSequence:
    return TypeSequence.of([(lam, 1) for lam in DISTINCT5_LAMBDAS])


def distinct5_coords(q: Values, p: Values) -> CanonicalCoords:
    return coords_from_blocks(
        distinct5_sequence(),
        {
            (2, 1): [[q[7]]], (3, 1): [[q[8]]], (4, 1): [[q[9]]], (5, 1): [[q[10]]],
            (3, 2): [[q[4]]], (4, 2): [[q[5]]], (5, 2): [[q[6]]],
            (4, 3): [[q[2]]], (5, 3): [[q[3]]],
            (5, 4): [[q[1]]],
        },
        {
            (1, 2): [[p[7]]], (1, 3): [[p[8]]], (1, 4): [[p[9]]], (1, 5): [[p[10]]],
            (2, 3): [[p[4]]], (2, 4): [[p[5]]], (2, 5): [[p[6]]],
            (3, 4): [[p[2]]], (3, 5): [[p[3]]],
            (4, 5): [[p[1]]],
        },
    )


def distinct5_Q(q: Values) -> Mat:
    return Mat.from_rows([
        [1, 0, 0, 0, 0],
        [q[7], 1, 0, 0, 0],
        [q[8], q[4], 1, 0, 0],
        [q[9], q[5], q[2], 1, 0],
        [q[10], q[6], q[3], q[1], 1],
    ])


def distinct5_rho(q: Values, p: Values) -> Mat:
    l5, l4, l3, l2, l1 = DISTINCT5_LAMBDAS
    return Mat.from_rows([
        [l5, p[7] + p[8] * q[4] + p[9] * q[5] + p[10] * q[6], p[8] + p[9] * q[2] + p[10] * q[3], p[9] + p[10] * q[1], p[10]],
        [0, l4, p[4] + p[5] * q[2] + p[6] * q[3], p[5] + p[6] * q[1], p[6]],
        [0, 0, l3, p[2] + p[3] * q[1], p[3]],
        [0, 0, 0, l2, p[1]],
        [0, 0, 0, 0, l1],
    ])


# ---------------------------------------------------------------------------
# {0: [3, 2], 1: [1]}
# ---------------------------------------------------------------------------

def mixed6_sequence() -> TypeSequence:
    return TypeSequence.of([(0, 2), (0, 2), (0, 1), (1, 1)])


def mixed6_coords(q: Values, p: Values) -> CanonicalCoords:
    return coords_from_blocks(
        mixed6_sequence(),
        {
            (2, 1): [[q[10], q[6]], [q[11], q[7]]],
            (3, 1): [[q[12], q[8]]],
            (4, 1): [[q[13], q[9]]],
            (3, 2): [[q[4], q[2]]],
            (4, 2): [[q[5], q[3]]],
            (4, 3): [[q[1]]],
        },
        {
            (1, 2): [[p[10], p[11]], [p[6], p[7]]],
            (1, 3): [[p[12]], [p[8]]],
            (1, 4): [[p[13]], [p[9]]],
            (2, 3): [[p[4]], [p[2]]],
            (2, 4): [[p[5]], [p[3]]],
            (3, 4): [[p[1]]],
        },
    )


def mixed6_Q(q: Values) -> Mat:
    return Mat.from_rows([
        [1, 0, 0, 0, 0, 0],
        [0, 1, 0, 0, 0, 0],
        [q[10], q[6], 1, 0, 0, 0],
        [q[11], q[7], 0, 1, 0, 0],
        [q[12], q[8], q[4], q[2], 1, 0],
        [q[13], q[9], q[5], q[3], q[1], 1],
    ])


def mixed6_rho(q: Values, p: Values) -> Mat:
    return Mat.from_rows([
        [0, 0, p[10] + p[12] * q[4] + p[13] * q[5], p[11] + p[12] * q[2] + p[13] * q[3], p[12] + p[13] * q[1], p[13]],
        [0, 0, p[6] + p[8] * q[4] + p[9] * q[5], p[7] + p[8] * q[2] + p[9] * q[3], p[8] + p[9] * q[1], p[9]],
        [0, 0, 0, 0, p[4] + p[5] * q[1], p[5]],
        [0, 0, 0, 0, p[2] + p[3] * q[1], p[3]],
        [0, 0, 0, 0, 0, p[1]],
        [0, 0, 0, 0, 0, 1],
    ])


def mixed6_J() -> Mat:
    return Mat.from_rows([
        [0, 1, 0, 0, 0, 0],
        [0, 0, 1, 0, 0, 0],
        [0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 1],
    ])


def labels(rng, count: int, bound: int = 50) -> dict[int, GaussianRational]:
    """Random rational values for labels 1..count."""
    return {
        k: GaussianRational(Fraction(rng.randint(-bound, bound), rng.randint(1, 7)))
        for k in range(1, count + 1)
    }
