"""Seeded random points, coordinates and conjugators.

Every sampler takes an explicit ``random.Random`` so a run is fully
determined by its seed.
"""

from __future__ import annotations

import logging
import random
from typing import Literal

from app import config
from app.errors import DegenerateSampleError, InputError
from app.jordan import TypeSequence, coordinate_dim, jordan_matrix, structure_from_sequence
from app.linalg import Mat, conjugate, inverse
from app.oracle import verify_on_orbit
from app.orbit import CanonicalCoords, OrbitPoint, parameterize
from app.scalar import GaussianRational

logger = logging.getLogger(__name__)

Mode = Literal["coords", "conjugate"]


def random_scalar(rng: random.Random, bound: int = config.DEFAULT_BOUND, complex_: bool = False) -> GaussianRational:
    """Integer real part in [-bound, bound]; imaginary part likewise when complex_."""
    re = rng.randint(-bound, bound)
    im = rng.randint(-bound, bound) if complex_ else 0
    return GaussianRational(re, im)


def random_coords(t: TypeSequence, rng: random.Random, bound: int = config.DEFAULT_BOUND,
                  complex_: bool = False) -> CanonicalCoords:
    return CanonicalCoords.from_values(t, [random_scalar(rng, bound, complex_) for _ in range(coordinate_dim(t))])


def random_unitriangular(n: int, rng: random.Random, bound: int = config.DEFAULT_BOUND,
                         lower: bool = True) -> Mat:
    rows = [
        [1 if r == c else (rng.randint(-bound, bound) if (c < r) == lower else 0) for c in range(n)]
        for r in range(n)
    ]
    return Mat.from_rows(rows, cols=n)


def random_conjugator(n: int, rng: random.Random, bound: int = config.DEFAULT_BOUND) -> tuple[Mat, Mat]:
    """g = U L with U upper and L lower unitriangular, and g^-1 = L^-1 U^-1, both integral."""
    upper = random_unitriangular(n, rng, bound, lower=False)
    lower = random_unitriangular(n, rng, bound, lower=True)
    return upper @ lower, inverse(lower) @ inverse(upper)


def random_generic_coords(t: TypeSequence, rng: random.Random,
                          bound: int = config.DEFAULT_BOUND, complex_: bool = False,
                          retries: int = config.DEGENERACY_RETRIES) -> CanonicalCoords:
    """
    Random coordinates whose matrix has the Jordan structure of t.

    Raises:
        DegenerateSampleError: If the first draw and every retry are degenerate
    """
    structure = structure_from_sequence(t)
    for attempt in range(retries + 1):
        c = random_coords(t, rng, bound, complex_)
        report = verify_on_orbit(parameterize(c), structure)
        if report.match:
            return c
        logger.debug("degenerate coordinate sample on attempt %d: found %s", attempt + 1, report.found)
    raise DegenerateSampleError(
        f"{retries + 1} coordinate samples for {structure} were all off the orbit"
    )


def random_point(t: TypeSequence, seed: int, mode: Mode = "coords",
                 bound: int = config.DEFAULT_BOUND, complex_: bool = False) -> OrbitPoint:
    """
    A seeded point of the orbit whose type sequence is t.

    Args:
        t: Type sequence; the point has Jordan structure structure_from_sequence(t)
        seed: Seed for random.Random
        mode: "coords" parameterizes random coordinates, "conjugate" applies
            a random unitriangular-product g to jordan_matrix(t)
        bound: Bound on random integer entries
        complex_: Draw complex coordinates (coords mode only)

    Raises:
        InputError: If mode is unknown
        DegenerateSampleError: If coords mode keeps landing off the orbit
    """
    rng = random.Random(seed)
    if mode == "coords":
        c = random_generic_coords(t, rng, bound, complex_)
        return OrbitPoint(parameterize(c), structure_from_sequence(t))
    if mode == "conjugate":
        j = jordan_matrix(t)
        g, g_inv = random_conjugator(j.rows, rng, bound)
        return OrbitPoint(conjugate(g, j, g_inv), structure_from_sequence(t))
    raise InputError(f"Unknown sampling mode {mode!r}. Expected 'coords' or 'conjugate'")
