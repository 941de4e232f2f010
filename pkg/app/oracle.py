"""Jordan structure of an exact matrix from ranks of powers (Weyr characteristics).

Eigenvalues are always supplied by the caller; nothing here computes a
spectrum.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable

from app.errors import ShapeMismatchError, SpectrumMismatchError
from app.jordan import EigenChains, JordanStructure, conjugate_partition
from app.linalg import Mat, rank
from app.scalar import GaussianRational, ScalarLike

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WeyrTable:
    """dims[k] = dim ker (A - lambda I)^(k+1), recorded until it stabilizes."""

    eigenvalue: GaussianRational
    dims: tuple[int, ...]

    @property
    def multiplicity(self) -> int:
        return self.dims[-1]

    @property
    def characteristic(self) -> tuple[int, ...]:
        """Successive differences of the kernel dimensions, zeros dropped."""
        previous, out = 0, []
        for d in self.dims:
            if d > previous:
                out.append(d - previous)
            previous = d
        return tuple(out)

    def chains(self) -> tuple[int, ...]:
        return conjugate_partition(self.characteristic)


@dataclass(frozen=True)
class OrbitReport:
    match: bool
    expected: JordanStructure
    found: JordanStructure | None
    weyr: dict[GaussianRational, WeyrTable] = field(default_factory=dict)
    reason: str | None = None


def weyr(a: Mat, lam: ScalarLike) -> WeyrTable:
    """
    Kernel dimensions of successive powers of (a - lam I).

    Powers are accumulated one multiplication at a time. The table stops
    as soon as a dimension repeats the previous one or reaches N, so a
    non-eigenvalue gives (0,) and a single nilpotent box of size 4 gives
    (1, 2, 3, 4).

    Raises:
        ShapeMismatchError: If a is not square
    """
    if not a.is_square():
        raise ShapeMismatchError(f"Weyr table needs a square matrix. Got {a.rows}x{a.cols}")
    lam = GaussianRational.coerce(lam)
    n = a.rows
    shifted = a.shifted(lam)
    power = shifted
    dims: list[int] = []
    while True:
        d = n - rank(power)
        if dims and d == dims[-1]:
            dims.append(d)
            break
        dims.append(d)
        if d == 0 or d == n:
            break
        power = power @ shifted
    logger.debug("weyr at %s: %s", lam, dims)
    return WeyrTable(lam, tuple(dims))


def jordan_structure_of(a: Mat, eigenvalues: Iterable[ScalarLike]) -> JordanStructure:
    """
    Jordan structure of a for a supplied spectrum.

    Args:
        a: Square matrix
        eigenvalues: Every eigenvalue of a exactly once

    Returns:
        Structure whose chains are the conjugate of each Weyr characteristic

    Raises:
        SpectrumMismatchError: If an eigenvalue repeats, has a trivial kernel,
            or the multiplicities do not sum to N
    """
    tables = _tables(a, eigenvalues)
    return _structure_from_tables(a, tables)


def _tables(a: Mat, eigenvalues: Iterable[ScalarLike]) -> dict[GaussianRational, WeyrTable]:
    tables: dict[GaussianRational, WeyrTable] = {}
    for value in eigenvalues:
        lam = GaussianRational.coerce(value)
        if lam in tables:
            raise SpectrumMismatchError(f"Eigenvalue {lam} supplied twice")
        tables[lam] = weyr(a, lam)
    return tables


def _structure_from_tables(a: Mat, tables: dict[GaussianRational, WeyrTable]) -> JordanStructure:
    for lam, table in tables.items():
        if table.multiplicity == 0:
            raise SpectrumMismatchError(f"{lam} is not an eigenvalue of the matrix")
    total = sum(t.multiplicity for t in tables.values())
    if total != a.rows:
        raise SpectrumMismatchError(
            f"Supplied eigenvalues {[str(v) for v in tables]} account for {total} of {a.rows} dimensions"
        )
    return JordanStructure(EigenChains(lam, t.chains()) for lam, t in tables.items())


def verify_on_orbit(a: Mat, j: JordanStructure) -> OrbitReport:
    """
    Check that a has Jordan structure j.

    A spectrum mismatch is reported as a failed match, never raised.
    """
    if not a.is_square() or a.rows != j.size:
        return OrbitReport(False, j, None, {}, f"matrix is {a.rows}x{a.cols}, structure has N={j.size}")
    tables = _tables(a, j.eigenvalues)
    try:
        found = _structure_from_tables(a, tables)
    except SpectrumMismatchError as e:
        return OrbitReport(False, j, None, tables, str(e))
    return OrbitReport(found == j, j, found, tables)
