"""Tool definitions shared by the MCP server and the command line.

Every tool takes and returns plain JSON-compatible values in the payload
formats of app.payloads, and raises the errors of app.errors.
"""

import logging
import random
from typing import Any, Dict, List, Literal, Optional, Union

from app import config
from app.errors import ExtractionError, FinalResidueError, InputError, OffOrbitError
from app.jordan import (
    TypeSequence,
    coordinate_dim,
    orbit_dim,
    project,
    structure_from_sequence,
)
from app.linalg import Mat
from app.oracle import jordan_structure_of, verify_on_orbit, weyr
from app.orbit import CanonicalCoords, Chart, block_pairs, extract, find_chart, parameterize
from app.payloads import (
    ChartPayload,
    CoordsPayload,
    GramReportPayload,
    MatrixPayload,
    StructurePayload,
    TypeSequencePayload,
    structure_from_json,
    sequence_from_json,
    to_domain,
    validate,
)
from app.sampling import random_generic_coords, random_point as sample_point
from app.scalar import parse, render
from app.symplectic import darboux_report, enumerate_coordinates

logger = logging.getLogger(__name__)

Json = Dict[str, Any]


def ping() -> str:
    """Health check tool."""
    return "pong"


def _coords(coords: Json, t: Optional[TypeSequence] = None) -> CanonicalCoords:
    c = to_domain(validate(CoordsPayload, coords, "coords"), "coords")
    if t is not None and structure_from_sequence(c.type_seq) != structure_from_sequence(t):
        raise InputError(
            f"coords: type sequence {c.type_seq} does not belong to structure {structure_from_sequence(t)}"
        )
    return c


def _matrix(matrix: Json, source: str = "matrix") -> Mat:
    return to_domain(validate(MatrixPayload, matrix, source), source)


def orbit_info(structure: Json) -> Json:
    """
    Summarize a structure: N, type sequence, orbit dimension and coordinate blocks.

    Args:
        structure: Structure JSON or type-sequence JSON

    Returns:
        {"N", "type_sequence", "orbit_dim", "q_blocks", "p_blocks"}
    """
    t = sequence_from_json(structure, "structure")
    j = structure_from_sequence(t)
    dim = orbit_dim(j)
    if dim != coordinate_dim(t):
        raise InputError(f"structure: orbit dimension {dim} differs from coordinate count {coordinate_dim(t)}")
    return {
        "N": t.N,
        "structure": StructurePayload.from_domain(j).model_dump(mode="json"),
        "type_sequence": TypeSequencePayload.from_domain(t).model_dump(mode="json", by_alias=True),
        "orbit_dim": dim,
        "q_blocks": [
            {"block": f"{i},{j_}", "shape": [t.step(i).n, t.step(j_).n]} for j_, i in block_pairs(t)
        ],
        "p_blocks": [
            {"block": f"{j_},{i}", "shape": [t.step(j_).n, t.step(i).n]} for j_, i in block_pairs(t)
        ],
    }


def project_structure(structure: Json, eigenvalue: str) -> Json:
    """
    Project a structure along one eigenvalue: its chains shorten by one.

    Raises:
        NotAnEigenvalueError: If eigenvalue is absent
    """
    j = structure_from_json(structure, "structure")
    return StructurePayload.from_domain(project(j, parse(eigenvalue))).model_dump(mode="json")


def parameterize_matrix(coords: Json, structure: Optional[Json] = None) -> Json:
    """
    The matrix A = Q rho Q^-1 of a coordinate point.

    Args:
        coords: Coordinates JSON
        structure: Optional structure the coordinates must belong to

    Returns:
        Matrix JSON
    """
    t = sequence_from_json(structure, "structure") if structure is not None else None
    return MatrixPayload.from_domain(parameterize(_coords(coords, t))).model_dump(mode="json")


def extract_coordinates(structure: Json, matrix: Json, chart: Union[str, List[int], Json] = "auto") -> Json:
    """
    Canonical coordinates of an orbit point.

    Args:
        structure: Structure or type-sequence JSON fixing the flight order
        matrix: Matrix JSON
        chart: "auto" to search for a chart, or an explicit 1-based permutation

    Returns:
        {"coords": <coords JSON>, "chart": {"perm": [...]}}

    Raises:
        ExtractionError: If a flight fails (the message names the flight)
        FinalResidueError: If the last residue is not lambda_M I
    """
    t = sequence_from_json(structure, "structure")
    a = _matrix(matrix)
    if chart == "auto":
        used = find_chart(t, a)
    elif isinstance(chart, dict):
        used = to_domain(validate(ChartPayload, chart, "chart"), "chart")
    elif isinstance(chart, list):
        used = Chart(tuple(chart))
    else:
        raise InputError(f"chart must be 'auto' or a permutation. Got {chart!r}")
    if used.size != t.N:
        raise InputError(f"chart has size {used.size}, structure has N={t.N}")
    c = extract(t, a, used)
    return {
        "coords": CoordsPayload.from_domain(c).model_dump(mode="json", by_alias=True),
        "chart": ChartPayload.from_domain(used).model_dump(mode="json"),
    }


def verify_darboux(structure: Json, coords: Optional[Json] = None, seed: Optional[int] = None,
                   bound: int = config.DEFAULT_BOUND, complex_: bool = False) -> Json:
    """
    Compare the Kirillov-Kostant Gram matrix of the coordinates with the canonical one.

    Args:
        structure: Structure or type-sequence JSON
        coords: Coordinates to check; random generic ones are drawn when omitted
        seed: Seed for the random draw (ORBITDX_SEED or 0 by default)
        bound: Bound on random integer coordinates
        complex_: Draw complex coordinates

    Returns:
        Gram report JSON; "match" is true iff the coordinates are Darboux

    Raises:
        OffOrbitError: If supplied coordinates lie on the enlarged orbit only
    """
    t = sequence_from_json(structure, "structure")
    if coords is not None:
        c = _coords(coords, t)
        found = verify_on_orbit(parameterize(c), structure_from_sequence(t))
        if not found.match:
            raise OffOrbitError(
                f"coords: the matrix they parameterize is off the orbit of {structure_from_sequence(t)}"
            )
    else:
        rng = random.Random(config.default_seed() if seed is None else seed)
        c = random_generic_coords(t, rng, bound, complex_)
    report = darboux_report(c)
    out = GramReportPayload.from_domain(report).model_dump(mode="json")
    out["coords"] = CoordsPayload.from_domain(c).model_dump(mode="json", by_alias=True)
    return out


def jordan_verify(matrix: Json, eigenvalues: List[str]) -> Json:
    """
    Weyr tables and Jordan structure of a matrix with a supplied spectrum.

    Raises:
        SpectrumMismatchError: If the eigenvalues are not the full spectrum
    """
    a = _matrix(matrix)
    lams = [parse(v) for v in eigenvalues]
    j = jordan_structure_of(a, lams)
    return {
        "structure": StructurePayload.from_domain(j).model_dump(mode="json"),
        "weyr": {render(lam): list(weyr(a, lam).dims) for lam in lams},
    }


def random_point(structure: Json, seed: Optional[int] = None, mode: Literal["coords", "conjugate"] = "coords",
                 bound: int = config.DEFAULT_BOUND, complex_: bool = False) -> Json:
    """
    A seeded matrix on the orbit of a structure.

    Raises:
        DegenerateSampleError: If coords mode keeps landing off the orbit
    """
    t = sequence_from_json(structure, "structure")
    point = sample_point(t, config.default_seed() if seed is None else seed, mode, bound, complex_)
    return MatrixPayload.from_domain(point.a).model_dump(mode="json")


def _first_difference(t: TypeSequence, found: CanonicalCoords, expected: CanonicalCoords) -> Optional[Json]:
    for idx, a, b in zip(enumerate_coordinates(t), found.values(), expected.values()):
        if a != b:
            return {"coordinate": str(idx), "found": render(a), "expected": render(b)}
    return None


def roundtrip(structure: Json, seed: Optional[int] = None, trials: int = config.DEFAULT_TRIALS,
              bound: int = config.DEFAULT_BOUND) -> Json:
    """
    Check extract after parameterize, and parameterize after extract, on seeded samples.

    Trial k uses seed + k. Coordinates are drawn generic; matrices come
    from random conjugation of the normal form and are extracted in the
    chart find_chart returns.

    Returns:
        {"trials", "passed", "failures": [{"seed", "check", ...}]}
    """
    t = sequence_from_json(structure, "structure")
    base = config.default_seed() if seed is None else seed
    failures: List[Json] = []
    for k in range(trials):
        trial_seed = base + k
        c = random_generic_coords(t, random.Random(trial_seed), bound)
        try:
            back = extract(t, parameterize(c))
        except (ExtractionError, FinalResidueError) as e:
            failures.append({"seed": trial_seed, "check": "extract(parameterize(c))", "error": str(e)})
        else:
            diff = _first_difference(t, back, c)
            if diff:
                failures.append({"seed": trial_seed, "check": "extract(parameterize(c))", **diff})

        a = sample_point(t, trial_seed, "conjugate", bound).a
        try:
            chart = find_chart(t, a)
            again = chart.unapply(parameterize(extract(t, a, chart)))
        except (ExtractionError, FinalResidueError) as e:
            failures.append({"seed": trial_seed, "check": "parameterize(extract(a))", "error": str(e)})
            continue
        if again != a:
            failures.append({"seed": trial_seed, "check": "parameterize(extract(a))", "chart": list(chart.perm)})
    logger.debug("roundtrip: %d trials, %d failures", trials, len(failures))
    return {"trials": trials, "passed": not failures, "failures": failures}
