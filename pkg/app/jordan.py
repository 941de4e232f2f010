"""Jordan structures, their projections and the (lambda'_k, n_k) type sequences."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Optional, Sequence

from app.errors import NotAnEigenvalueError, SequenceError
from app.linalg import Mat, assemble
from app.scalar import GaussianRational, ScalarLike

logger = logging.getLogger(__name__)


def conjugate_partition(parts: Iterable[int]) -> tuple[int, ...]:
    """
    Conjugate of a partition: entry i counts the parts >= i + 1.

    Chain lengths and Weyr characteristics are conjugate to each other.

    Example:
        >>> conjugate_partition([3, 2])
        (2, 2, 1)
    """
    parts = [p for p in parts if p > 0]
    if not parts:
        return ()
    return tuple(sum(1 for p in parts if p > i) for i in range(max(parts)))


@dataclass(frozen=True)
class EigenChains:
    """One eigenvalue with the lengths of its Jordan chains, longest first."""

    value: GaussianRational
    chains: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", GaussianRational.coerce(self.value))
        chains = tuple(sorted((int(c) for c in self.chains), reverse=True))
        if not chains:
            raise SequenceError(f"Eigenvalue {self.value} has no Jordan chains")
        if chains[-1] < 1:
            raise SequenceError(f"Chain lengths must be positive. Got {list(chains)} for {self.value}")
        object.__setattr__(self, "chains", chains)

    @property
    def size(self) -> int:
        return sum(self.chains)

    @property
    def longest(self) -> int:
        return self.chains[0]


class JordanStructure:
    """
    Eigenvalues of a transformation with the multiset of chain lengths of each.

    The listed order of eigenvalues is kept (it is the default flight
    order) but does not take part in equality.
    """

    __slots__ = ("_spec",)

    def __init__(self, spec: Iterable[EigenChains]) -> None:
        spec = tuple(spec)
        seen: set[GaussianRational] = set()
        for entry in spec:
            if entry.value in seen:
                raise SequenceError(f"Eigenvalue {entry.value} listed twice")
            seen.add(entry.value)
        self._spec = spec

    @classmethod
    def from_mapping(cls, mapping: Mapping[ScalarLike | str, Sequence[int]]) -> JordanStructure:
        """Build from {eigenvalue: chains}, keeping the mapping's order."""
        return cls(EigenChains(GaussianRational.coerce(v), tuple(c)) for v, c in mapping.items())

    @classmethod
    def empty(cls) -> JordanStructure:
        return cls(())

    @property
    def spec(self) -> tuple[EigenChains, ...]:
        return self._spec

    @property
    def eigenvalues(self) -> list[GaussianRational]:
        return [entry.value for entry in self._spec]

    @property
    def size(self) -> int:
        """N, the dimension of the space."""
        return sum(entry.size for entry in self._spec)

    def is_empty(self) -> bool:
        return not self._spec

    def chains_of(self, value: ScalarLike) -> tuple[int, ...]:
        """
        Raises:
            NotAnEigenvalueError: If value is not an eigenvalue
        """
        value = GaussianRational.coerce(value)
        for entry in self._spec:
            if entry.value == value:
                return entry.chains
        raise NotAnEigenvalueError(f"{value} is not an eigenvalue of {self}")

    def as_dict(self) -> dict[GaussianRational, tuple[int, ...]]:
        return {entry.value: entry.chains for entry in self._spec}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, JordanStructure):
            return NotImplemented
        return self.as_dict() == other.as_dict()

    def __hash__(self) -> int:
        return hash(frozenset(self.as_dict().items()))

    def __str__(self) -> str:
        inner = ", ".join(f"{e.value}: {list(e.chains)}" for e in self._spec)
        return "{" + inner + "}"

    def __repr__(self) -> str:
        return f"JordanStructure({self})"


@dataclass(frozen=True)
class Step:
    """One flight of the hierarchy: split off n chains-still-alive of eigenvalue lam."""

    lam: GaussianRational
    n: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "lam", GaussianRational.coerce(self.lam))
        if int(self.n) < 1:
            raise SequenceError(f"Step sizes must be positive. Got n={self.n} for {self.lam}")
        object.__setattr__(self, "n", int(self.n))


@dataclass(frozen=True)
class TypeSequence:
    """The ordered couples (lambda'_k, n_k), k = 1..M."""

    steps: tuple[Step, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "steps", tuple(self.steps))

    @classmethod
    def of(cls, pairs: Iterable[tuple[ScalarLike | str, int]]) -> TypeSequence:
        return cls(tuple(Step(GaussianRational.coerce(lam), n) for lam, n in pairs))

    @property
    def M(self) -> int:
        return len(self.steps)

    @property
    def sizes(self) -> list[int]:
        return [s.n for s in self.steps]

    @property
    def lambdas(self) -> list[GaussianRational]:
        return [s.lam for s in self.steps]

    @property
    def N(self) -> int:
        return sum(self.sizes)

    def step(self, k: int) -> Step:
        """1-based access to step k."""
        return self.steps[k - 1]

    def offset(self, k: int) -> int:
        """0-based row of the first coordinate of step k (1-based)."""
        return sum(self.sizes[: k - 1])

    def tail(self, k: int) -> TypeSequence:
        """Steps k..M as a sequence of their own."""
        return TypeSequence(self.steps[k - 1:])

    def is_grouped(self) -> bool:
        """True when each eigenvalue's occurrences are consecutive."""
        finished: set[GaussianRational] = set()
        previous: Optional[GaussianRational] = None
        for s in self.steps:
            if s.lam != previous:
                if s.lam in finished:
                    return False
                if previous is not None:
                    finished.add(previous)
                previous = s.lam
        return True

    def __str__(self) -> str:
        return "[" + ", ".join(f"({s.lam}, {s.n})" for s in self.steps) + "]"


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def project(j: JordanStructure, lam: ScalarLike) -> JordanStructure:
    """
    The structure J \\ {lam}: every lam-chain one unit shorter, unit chains dropped.

    Raises:
        NotAnEigenvalueError: If lam is not an eigenvalue of j
    """
    lam = GaussianRational.coerce(lam)
    j.chains_of(lam)
    out = []
    for entry in j.spec:
        if entry.value != lam:
            out.append(entry)
            continue
        shorter = tuple(c - 1 for c in entry.chains if c > 1)
        if shorter:
            out.append(EigenChains(entry.value, shorter))
    return JordanStructure(out)


def project_sequence(j: JordanStructure, lams: Iterable[ScalarLike]) -> JordanStructure:
    """Iterated projection J \\ {lam_1 ... lam_k}."""
    for lam in lams:
        j = project(j, lam)
    return j


def type_sequence(j: JordanStructure, eigenvalue_order: Optional[Sequence[ScalarLike]] = None) -> TypeSequence:
    """
    The type sequence of j with eigenvalue groups in the given order.

    Eigenvalue lam contributes r_lam consecutive steps whose sizes are the
    Weyr characteristic of its chains. The default order is the listed one.

    Raises:
        SequenceError: If eigenvalue_order is not a permutation of the eigenvalues
    """
    if eigenvalue_order is None:
        order = j.eigenvalues
    else:
        order = [GaussianRational.coerce(v) for v in eigenvalue_order]
        if len(order) != len(set(order)) or set(order) != set(j.eigenvalues):
            raise SequenceError(
                f"Eigenvalue order {[str(v) for v in order]} is not a permutation of "
                f"{[str(v) for v in j.eigenvalues]}"
            )
    steps = []
    for lam in order:
        for n in conjugate_partition(j.chains_of(lam)):
            steps.append(Step(lam, n))
    return TypeSequence(tuple(steps))


def structure_from_sequence(t: TypeSequence) -> JordanStructure:
    """
    Invert type_sequence: chains are the conjugate of each eigenvalue's n-values.

    Interleaved sequences are accepted; only the per-eigenvalue order of
    the n-values matters.

    Raises:
        SequenceError: If the n-values of some eigenvalue increase
    """
    grouped: dict[GaussianRational, list[int]] = {}
    for s in t.steps:
        grouped.setdefault(s.lam, []).append(s.n)
    entries = []
    for lam, ns in grouped.items():
        if any(b > a for a, b in zip(ns, ns[1:])):
            raise SequenceError(f"Step sizes for eigenvalue {lam} must be non-increasing. Got {ns}")
        entries.append(EigenChains(lam, conjugate_partition(ns)))
    return JordanStructure(entries)


def shift(t: TypeSequence, mu: ScalarLike) -> TypeSequence:
    """Add mu to every eigenvalue of the sequence."""
    mu = GaussianRational.coerce(mu)
    return TypeSequence(tuple(Step(s.lam + mu, s.n) for s in t.steps))


def orbit_dim(j: JordanStructure) -> int:
    """
    Dimension of the orbit: N^2 minus the centralizer dimension.

    The centralizer of a Jordan matrix has dimension
    sum over eigenvalues of sum_{a, b} min(l_a, l_b).
    """
    centralizer = sum(
        min(a, b) for entry in j.spec for a in entry.chains for b in entry.chains
    )
    return j.size ** 2 - centralizer


def coordinate_dim(t: TypeSequence) -> int:
    """Number of scalar coordinates 2 * sum_{j<i} n_i n_j."""
    return 2 * sum(a * b for a, b in combinations(t.sizes, 2))


def jordan_matrix(t: TypeSequence) -> Mat:
    """
    A normal-form matrix with Jordan structure structure_from_sequence(t).

    Built in Weyr form: lambda'_k I on the diagonal and [I; 0] from each
    step to the next occurrence of the same eigenvalue. The kernel of
    (A - lambda'_1 I) is then spanned by the leading n_1 basis vectors,
    and the same holds at every later flight.
    """
    sizes = t.sizes
    grid = [[Mat.zeros(a, b) for b in sizes] for a in sizes]
    for k, s in enumerate(t.steps):
        grid[k][k] = Mat.scalar(s.n, s.lam)
        for later in range(k + 1, t.M):
            if t.steps[later].lam == s.lam:
                width = t.steps[later].n
                grid[k][later] = Mat.from_rows(
                    [[1 if r == c else 0 for c in range(width)] for r in range(s.n)],
                    cols=width,
                )
                break
    return assemble(grid)
