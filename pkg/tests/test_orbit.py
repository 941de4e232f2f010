"""Tests for the forward map, the flight hierarchy and charts."""

import random
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from app.catalog import load_sequence, load_structure
from app.errors import (
    ChartDegenerateError,
    CoordinateShapeError,
    ExtractionError,
    FinalResidueError,
    IndexOutOfRangeError,
    KernelDimensionError,
    NoChartError,
    ShapeMismatchError,
)
from app.jordan import TypeSequence, project_sequence, shift, structure_from_sequence
from app.linalg import Mat, inverse
from app.oracle import verify_on_orbit
from app.orbit import (
    CanonicalCoords,
    Chart,
    block_pairs,
    build_Q,
    build_rho,
    chart_transition,
    extract,
    extract_trace,
    find_chart,
    flight,
    parameterize,
    parameterize_hierarchical,
    trailing_Q,
)
from app.sampling import random_generic_coords, random_point
from app.scalar import GaussianRational

from tests.golden import (
    distinct4_coords,
    distinct4_Q,
    distinct4_Q_inv,
    distinct4_rho,
    distinct4_sequence,
    distinct5_coords,
    distinct5_Q,
    distinct5_rho,
    nilpotent4_sequence,
    mixed6_coords,
    mixed6_Q,
    mixed6_rho,
    pair_coords,
    pair_matrix,
    pair_sequence,
    labels,
)

CATALOG = ["pair", "distinct4", "distinct5", "nilpotent2", "nilpotent4", "mixed6", "square_zero", "gaussian"]


# ---------------------------------------------------------------------------
# Coordinates
# ---------------------------------------------------------------------------

class TestCanonicalCoords:
    """Block layout and validation."""

    def test_block_pairs_lexicographic(self):
        assert block_pairs(distinct4_sequence()) == [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]

    def test_values_order_p_then_q(self):
        t = TypeSequence.of([(0, 1), (1, 1)])
        c = CanonicalCoords.from_values(t, [7, 9])
        assert c.p_blocks[(1, 2)][0, 0] == 7
        assert c.q_blocks[(2, 1)][0, 0] == 9
        assert c.values() == [7, 9]
        assert c.dim == 2

    def test_from_values_wrong_count(self):
        with pytest.raises(CoordinateShapeError, match="Expected 2"):
            CanonicalCoords.from_values(TypeSequence.of([(0, 1), (1, 1)]), [1])

    def test_missing_and_misshapen_blocks(self):
        t = TypeSequence.of([(0, 2), (1, 1)])
        good = CanonicalCoords.zeros(t)
        with pytest.raises(CoordinateShapeError, match="Missing q-block 2,1"):
            CanonicalCoords(t, {}, good.p_blocks)
        with pytest.raises(CoordinateShapeError, match="p-block 1,2 is 1x1"):
            good.replace(p_blocks={(1, 2): Mat.zeros(1, 1)})
        with pytest.raises(CoordinateShapeError, match="Unexpected"):
            CanonicalCoords(t, {**good.q_blocks, (3, 1): Mat.zeros(1, 2)}, good.p_blocks)

    def test_vectors_of_mixed6(self):
        rng = random.Random(5)
        q, p = labels(rng, 13), labels(rng, 13)
        c = mixed6_coords(q, p)
        assert c.p_vector(1) == Mat.from_rows([[p[10], p[11], p[12], p[13]], [p[6], p[7], p[8], p[9]]])
        assert c.q_vector(2) == Mat.from_rows([[q[4], q[2]], [q[5], q[3]]])
        assert c.p_vector(4).shape == (1, 0)
        assert c.dim == 26


# ---------------------------------------------------------------------------
# Forward map against the worked examples
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("p, q, r", [(1, 0, 1), (2, 3, 5), (-4, 7, 2), (3, 2, GaussianRational(1, 1))])
def test_two_by_two_matrix(p, q, r):
    p, q, r = (GaussianRational.coerce(x) for x in (p, q, r))
    c = pair_coords(p, q, r)
    a = parameterize(c)
    assert a == pair_matrix(p, q, r)
    assert extract(pair_sequence(r), a) == c


def test_two_by_two_matrix_random_samples():
    rng = random.Random(20)
    for _ in range(20):
        p, q, r = (GaussianRational(rng.randint(-30, 30), rng.randint(-30, 30)) for _ in range(3))
        c = pair_coords(p, q, r)
        assert parameterize(c) == pair_matrix(p, q, r)
        if not r.is_zero():
            assert extract(pair_sequence(r), parameterize(c)) == c


def test_distinct4_blocks():
    rng = random.Random(1)
    for _ in range(5):
        q, p = labels(rng, 6), labels(rng, 6)
        c = distinct4_coords(q, p)
        big_q = build_Q(c)
        assert big_q == distinct4_Q(q)
        assert inverse(big_q) == distinct4_Q_inv(q)
        assert build_rho(c) == distinct4_rho(q, p)
        assert parameterize(c) == distinct4_Q(q) @ distinct4_rho(q, p) @ distinct4_Q_inv(q)


def test_distinct4_trailing_blocks():
    rng = random.Random(2)
    q, p = labels(rng, 6), labels(rng, 6)
    c = distinct4_coords(q, p)
    assert trailing_Q(c, 1) == Mat.identity(1)
    assert trailing_Q(c, 2) == Mat.from_rows([[1, 0], [q[1], 1]])
    assert trailing_Q(c, 4) == build_Q(c)
    assert trailing_Q(c, 0).shape == (0, 0)
    with pytest.raises(IndexOutOfRangeError):
        trailing_Q(c, 5)


def test_distinct5_blocks():
    rng = random.Random(3)
    for _ in range(5):
        q, p = labels(rng, 10), labels(rng, 10)
        c = distinct5_coords(q, p)
        assert build_Q(c) == distinct5_Q(q)
        assert build_rho(c) == distinct5_rho(q, p)


def test_nilpotent4_nilpotent_blocks():
    """Same Q and rho shapes as four distinct eigenvalues, with zero diagonal."""
    rng = random.Random(4)
    for _ in range(5):
        q, p = labels(rng, 6), labels(rng, 6)
        c = distinct4_coords(q, p, nilpotent4_sequence())
        assert build_rho(c) == distinct4_rho(q, p, (0, 0, 0, 0))
        assert parameterize(c).power(4).is_zero()


def test_mixed6_blocks():
    rng = random.Random(6)
    for _ in range(5):
        q, p = labels(rng, 13), labels(rng, 13)
        c = mixed6_coords(q, p)
        assert build_Q(c) == mixed6_Q(q)
        assert build_rho(c) == mixed6_rho(q, p)


def test_shifted_sequence_adds_scalar():
    """Coordinates over shift(t, mu) give parameterize(c) + mu I."""
    mu = GaussianRational(2, -1)
    c = random_generic_coords(load_sequence("mixed6"), random.Random(14), bound=10)
    moved = CanonicalCoords(shift(c.type_seq, mu), c.q_blocks, c.p_blocks)
    assert parameterize(moved) == parameterize(c) + Mat.scalar(6, mu)


@pytest.mark.parametrize("name", CATALOG)
def test_hierarchical_construction_agrees(name):
    """Building A flight by flight gives Q rho Q^-1."""
    t = load_sequence(name)
    c = random_generic_coords(t, random.Random(17), bound=20)
    assert parameterize_hierarchical(c) == parameterize(c)


# ---------------------------------------------------------------------------
# Roundtrips
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("name", CATALOG)
def test_extract_inverts_parameterize(name):
    t = load_sequence(name)
    rng = random.Random(2024)
    for _ in range(100):
        c = random_generic_coords(t, rng, bound=50, complex_=name == "gaussian")
        assert extract(t, parameterize(c)) == c


@pytest.mark.parametrize("name", CATALOG)
def test_parameterize_inverts_extract_in_found_chart(name):
    t = load_sequence(name)
    for seed in range(25):
        a = random_point(t, seed, "conjugate", bound=5).a
        chart = find_chart(t, a)
        assert chart.unapply(parameterize(extract(t, a, chart))) == a


def test_distinct_eigenvalues_need_no_genericity():
    """Every labelled coordinate value of distinct4 lies on the orbit."""
    rng = random.Random(9)
    t = distinct4_sequence()
    for _ in range(10):
        c = distinct4_coords(labels(rng, 6), labels(rng, 6))
        assert extract(t, parameterize(c)) == c


def test_repeated_eigenvalue_enlarged_orbit():
    """Over [(0, 1), (0, 1)], p = 0 parameterizes the zero matrix, which is off the orbit."""
    zero = GaussianRational(0)
    t = pair_sequence(zero)
    j = structure_from_sequence(t)
    assert j == load_structure("nilpotent2")
    off = parameterize(pair_coords(zero, GaussianRational(3), zero))
    assert off == Mat.zeros(2, 2)
    assert not verify_on_orbit(off, j).match
    on = parameterize(pair_coords(GaussianRational(2), GaussianRational(3), zero))
    assert on == Mat.from_rows([[-6, 2], [-18, 6]])
    assert verify_on_orbit(on, j).match


# ---------------------------------------------------------------------------
# Flights
# ---------------------------------------------------------------------------

def test_each_flight_projects_the_structure():
    """After flight k the residue has structure J minus lambda'_1..lambda'_k."""
    t = load_sequence("mixed6")
    j = structure_from_sequence(t)
    c = random_generic_coords(t, random.Random(31), bound=30)
    records = extract_trace(t, parameterize(c))
    assert [r.index for r in records] == [1, 2, 3]
    for rec in records:
        assert rec.q_col == c.q_vector(rec.index)
        assert rec.p_row == c.p_vector(rec.index)
        projected = project_sequence(j, t.lambdas[: rec.index])
        assert rec.a_next.rows == projected.size
        assert verify_on_orbit(rec.a_next, projected).match


def test_flight_splits_off_eigenvalue():
    a = Mat.from_rows([[2, 1], [0, 3]])
    q_col, p_row, a_next = flight(a, 2, 1)
    assert q_col == Mat.zeros(1, 1)
    assert p_row == Mat.from_rows([[1]])
    assert a_next == Mat.from_rows([[3]])


def test_kernel_dimension_error_names_flight():
    with pytest.raises(KernelDimensionError, match="flight 1") as info:
        extract(pair_sequence(GaussianRational(1)), Mat.zeros(2, 2))
    assert info.value.flight == 1
    assert info.value.exit_code == 3


def test_final_residue_error():
    with pytest.raises(FinalResidueError) as info:
        extract(pair_sequence(GaussianRational(1)), Mat.from_rows([[0, 1], [0, 2]]))
    assert info.value.exit_code == 4


def test_shape_mismatch():
    with pytest.raises(ShapeMismatchError):
        extract(distinct4_sequence(), Mat.identity(3))


# ---------------------------------------------------------------------------
# Charts
# ---------------------------------------------------------------------------

class TestChart:
    """Permutation charts."""

    def test_rejects_non_permutation(self):
        with pytest.raises(IndexOutOfRangeError):
            Chart((1, 1))
        with pytest.raises(IndexOutOfRangeError):
            Chart((0, 1))

    def test_apply_unapply(self):
        a = Mat.from_entries(3, 3, range(9))
        chart = Chart((3, 1, 2))
        moved = chart.apply(a)
        assert moved[0, 1] == a[2, 0]
        assert chart.unapply(moved) == a
        assert chart.inverse().inverse() == chart
        assert Chart.identity(3).is_identity()

    def test_degenerate_identity_chart(self):
        """A = (R 0; x 0) needs the swapped chart, where p = x and q = 0."""
        r, x = GaussianRational(3), GaussianRational(5)
        t = pair_sequence(r)
        a = Mat.from_rows([[r, 0], [x, 0]])
        with pytest.raises(ChartDegenerateError, match="flight 1"):
            extract(t, a)
        chart = find_chart(t, a)
        assert chart == Chart((2, 1))
        c = extract(t, a, chart)
        assert c.p_blocks[(1, 2)][0, 0] == x
        assert c.q_blocks[(2, 1)][0, 0] == 0

    def test_no_chart_off_orbit(self):
        with pytest.raises(NoChartError):
            find_chart(pair_sequence(GaussianRational(1)), Mat.identity(2))

    def test_no_chart_is_extraction_error(self):
        with pytest.raises(ExtractionError):
            find_chart(pair_sequence(GaussianRational(1)), Mat.zeros(2, 2))

    def test_chart_transition_describes_same_point(self):
        c = pair_coords(GaussianRational(2), GaussianRational(3), GaussianRational(1))
        chart = Chart((2, 1))
        moved = chart_transition(c, chart)
        assert parameterize(moved) == chart.apply(parameterize(c))
        assert moved.q_blocks[(2, 1)][0, 0] == GaussianRational(1) / 3
