"""JSON payloads for matrices, structures, coordinates, charts and reports.

Each model converts to and from its domain object. Scalars travel as
strings in the canonical text format.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Optional, TypeVar, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from app.errors import InputError, PayloadError
from app.jordan import (
    EigenChains,
    JordanStructure,
    Step,
    TypeSequence,
    structure_from_sequence,
    type_sequence,
)
from app.linalg import Mat
from app.orbit import CanonicalCoords, Chart
from app.scalar import parse, render
from app.symplectic import CoordinateIndex, GramReport

Model = TypeVar("Model", bound=BaseModel)


class MatrixPayload(BaseModel):
    """{"rows": R, "cols": C, "entries": [[...], ...]}"""

    rows: int = Field(ge=0)
    cols: int = Field(ge=0)
    entries: list[list[str]]

    @model_validator(mode="after")
    def _check_shape(self) -> MatrixPayload:
        if len(self.entries) != self.rows:
            raise ValueError(f"expected {self.rows} rows of entries, got {len(self.entries)}")
        for r, row in enumerate(self.entries):
            if len(row) != self.cols:
                raise ValueError(f"row {r} has {len(row)} entries, expected {self.cols}")
        return self

    def to_domain(self) -> Mat:
        return Mat.from_rows([[parse(x) for x in row] for row in self.entries], cols=self.cols)

    @classmethod
    def from_domain(cls, m: Mat) -> MatrixPayload:
        return cls(rows=m.rows, cols=m.cols, entries=[[render(x) for x in row] for row in m.tolist()])


class EigenChainsPayload(BaseModel):
    value: str
    chains: list[int] = Field(min_length=1)


class StructurePayload(BaseModel):
    """{"eigenvalues": [{"value": "<scalar>", "chains": [3, 2]}, ...]}"""

    eigenvalues: list[EigenChainsPayload]

    def to_domain(self) -> JordanStructure:
        return JordanStructure(EigenChains(parse(e.value), tuple(e.chains)) for e in self.eigenvalues)

    @classmethod
    def from_domain(cls, j: JordanStructure) -> StructurePayload:
        return cls(eigenvalues=[
            EigenChainsPayload(value=render(e.value), chains=list(e.chains)) for e in j.spec
        ])


class StepPayload(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    lam: str = Field(alias="lambda")
    n: int = Field(ge=1)


class TypeSequencePayload(BaseModel):
    """{"steps": [{"lambda": "<scalar>", "n": 2}, ...]}"""

    steps: list[StepPayload]

    def to_domain(self) -> TypeSequence:
        return TypeSequence(tuple(Step(parse(s.lam), s.n) for s in self.steps))

    @classmethod
    def from_domain(cls, t: TypeSequence) -> TypeSequencePayload:
        return cls(steps=[StepPayload(lam=render(s.lam), n=s.n) for s in t.steps])


def _pair(key: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in key.split(","))
    except ValueError as e:
        raise PayloadError(f"Block key {key!r} is not of the form 'i,j'") from e
    return a, b


class CoordsPayload(BaseModel):
    """{"type_sequence": {...}, "q": {"i,j": <matrix>}, "p": {"j,i": <matrix>}}"""

    type_sequence: TypeSequencePayload
    q: dict[str, MatrixPayload] = Field(default_factory=dict)
    p: dict[str, MatrixPayload] = Field(default_factory=dict)

    def to_domain(self) -> CanonicalCoords:
        t = self.type_sequence.to_domain()
        return CanonicalCoords(
            t,
            {_pair(k): m.to_domain() for k, m in self.q.items()},
            {_pair(k): m.to_domain() for k, m in self.p.items()},
        )

    @classmethod
    def from_domain(cls, c: CanonicalCoords) -> CoordsPayload:
        return cls(
            type_sequence=TypeSequencePayload.from_domain(c.type_seq),
            q={f"{i},{j}": MatrixPayload.from_domain(m) for (i, j), m in c.q_blocks.items()},
            p={f"{j},{i}": MatrixPayload.from_domain(m) for (j, i), m in c.p_blocks.items()},
        )


class ChartPayload(BaseModel):
    """{"perm": [3, 1, 2, ...]}, 1-based."""

    perm: list[int]

    def to_domain(self) -> Chart:
        return Chart(tuple(self.perm))

    @classmethod
    def from_domain(cls, chart: Chart) -> ChartPayload:
        return cls(perm=list(chart.perm))


class CoordinateIndexPayload(BaseModel):
    kind: str
    block: tuple[int, int]
    entry: tuple[int, int]

    @classmethod
    def from_domain(cls, idx: CoordinateIndex) -> CoordinateIndexPayload:
        return cls(kind=idx.kind, block=idx.block, entry=idx.entry)


class GramReportPayload(BaseModel):
    """{"enumeration": [...], "gram": <matrix>, "canonical": <matrix>, "match": bool}"""

    enumeration: list[CoordinateIndexPayload]
    gram: MatrixPayload
    canonical: MatrixPayload
    match: bool
    first_mismatch: Optional[dict[str, str]] = None

    @classmethod
    def from_domain(cls, report: GramReport) -> GramReportPayload:
        return cls(
            enumeration=[CoordinateIndexPayload.from_domain(i) for i in report.enumeration],
            gram=MatrixPayload.from_domain(report.gram),
            canonical=MatrixPayload.from_domain(report.canonical),
            match=report.match,
            first_mismatch=report.first_mismatch,
        )


# ---------------------------------------------------------------------------
# Loading
# ---------------------------------------------------------------------------

def validate(model: type[Model], data: Any, source: str = "payload") -> Model:
    """
    Validate parsed JSON against a model.

    Raises:
        PayloadError: Naming the source and the first offending field
    """
    try:
        return model.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(x) for x in first["loc"]) or "<root>"
        raise PayloadError(f"{source}: invalid {model.__name__} at {where}: {first['msg']}") from e


def read_json(path: Union[str, Path]) -> Any:
    """
    Raises:
        PayloadError: If the file cannot be read or is not JSON
    """
    path = Path(path)
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise PayloadError(f"{path}: cannot read file ({e.strerror})") from e
    except json.JSONDecodeError as e:
        raise PayloadError(f"{path}: not valid JSON ({e.msg} at line {e.lineno})") from e


def load(model: type[Model], path: Union[str, Path]) -> Model:
    return validate(model, read_json(path), str(path))


def to_domain(payload: BaseModel, source: str = "payload") -> Any:
    """Convert a payload, prefixing domain input errors with their source."""
    try:
        return payload.to_domain()
    except InputError as e:
        raise type(e)(f"{source}: {e}") from e


def sequence_from_json(data: Any, source: str = "payload") -> TypeSequence:
    """Accept either structure JSON (grouped in listed order) or type-sequence JSON."""
    if isinstance(data, dict) and "steps" in data:
        return to_domain(validate(TypeSequencePayload, data, source), source)
    return type_sequence(to_domain(validate(StructurePayload, data, source), source))


def structure_from_json(data: Any, source: str = "payload") -> JordanStructure:
    """Accept either structure JSON or type-sequence JSON."""
    if isinstance(data, dict) and "steps" in data:
        return structure_from_sequence(to_domain(validate(TypeSequencePayload, data, source), source))
    return to_domain(validate(StructurePayload, data, source), source)


def dump(payload: BaseModel) -> str:
    return payload.model_dump_json(by_alias=True, indent=2)
