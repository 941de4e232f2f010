"""Tests for Weyr tables and the Jordan-structure oracle."""

import random
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from app.errors import ShapeMismatchError, SpectrumMismatchError
from app.jordan import JordanStructure, jordan_matrix, type_sequence
from app.linalg import Mat
from app.oracle import jordan_structure_of, verify_on_orbit, weyr
from app.sampling import random_conjugator
from app.scalar import GaussianRational

MIXED6 = JordanStructure.from_mapping({0: [3, 2], 1: [1]})


def _mixed6_matrix() -> Mat:
    return jordan_matrix(type_sequence(MIXED6))


def test_weyr_tables_mixed6():
    a = _mixed6_matrix()
    at_zero = weyr(a, 0)
    assert at_zero.dims == (2, 4, 5, 5)
    assert at_zero.characteristic == (2, 2, 1)
    assert at_zero.chains() == (3, 2)
    assert weyr(a, 1).dims == (1, 1)


def test_weyr_of_non_eigenvalue_and_single_box():
    assert weyr(Mat.identity(3), 2).dims == (0,)
    box = Mat.from_rows([[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 0, 0]])
    assert weyr(box, 0).dims == (1, 2, 3, 4)
    with pytest.raises(ShapeMismatchError):
        weyr(Mat.zeros(2, 3), 0)


def test_structure_survives_conjugation():
    rng = random.Random(11)
    g, g_inv = random_conjugator(6, rng, bound=5)
    a = g @ _mixed6_matrix() @ g_inv
    assert jordan_structure_of(a, [0, 1]) == MIXED6


def test_complex_spectrum():
    a = Mat.from_rows([[0, -1], [1, 0]])
    j = jordan_structure_of(a, ["i", "-i"])
    assert j == JordanStructure.from_mapping({GaussianRational(0, 1): [1], GaussianRational(0, -1): [1]})


@pytest.mark.parametrize("eigenvalues, message", [
    ([0], "account for 5 of 6"),
    ([0, 1, 2], "not an eigenvalue"),
    ([0, 0, 1], "twice"),
])
def test_spectrum_mismatch(eigenvalues, message):
    with pytest.raises(SpectrumMismatchError, match=message):
        jordan_structure_of(_mixed6_matrix(), eigenvalues)


def test_verify_on_orbit_reports_without_raising():
    a = _mixed6_matrix()
    ok = verify_on_orbit(a, MIXED6)
    assert ok.match and ok.found == MIXED6

    wrong_chains = verify_on_orbit(a, JordanStructure.from_mapping({0: [4, 1], 1: [1]}))
    assert not wrong_chains.match
    assert wrong_chains.found == MIXED6

    wrong_spectrum = verify_on_orbit(a, JordanStructure.from_mapping({0: [3, 2], 2: [1]}))
    assert not wrong_spectrum.match
    assert wrong_spectrum.found is None
    assert "not an eigenvalue" in wrong_spectrum.reason

    wrong_size = verify_on_orbit(Mat.identity(2), MIXED6)
    assert not wrong_size.match
    assert "N=6" in wrong_size.reason


def test_zero_matrix_is_off_the_nilpotent_orbit():
    """The zero 2x2 matrix has structure {0: [1, 1]}, not {0: [2]}."""
    report = verify_on_orbit(Mat.zeros(2, 2), JordanStructure.from_mapping({0: [2]}))
    assert not report.match
    assert report.found == JordanStructure.from_mapping({0: [1, 1]})
    assert verify_on_orbit(Mat.from_rows([[0, 1], [0, 0]]), JordanStructure.from_mapping({0: [2]})).match


@pytest.mark.parametrize("mu", [GaussianRational(3), GaussianRational(-1, 2), GaussianRational(0, 1)])
def test_weyr_tables_follow_a_scalar_shift(mu):
    """weyr(A + mu I, lam + mu) = weyr(A, lam), also away from the spectrum."""
    rng = random.Random(5)
    g, g_inv = random_conjugator(6, rng, bound=4)
    a = g @ _mixed6_matrix() @ g_inv
    moved = a + Mat.scalar(6, mu)
    for lam in (GaussianRational(0), GaussianRational(1), GaussianRational(2)):
        assert weyr(moved, lam + mu).dims == weyr(a, lam).dims
    assert jordan_structure_of(moved, [mu, 1 + mu]) == JordanStructure.from_mapping({mu: [3, 2], 1 + mu: [1]})
