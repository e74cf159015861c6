"""Tests for the Pfaffian kernel and Gaussian-state amplitudes."""

import numpy as np
import pytest

from mglab.errors import LengthMismatchError, TooLargeError
from mglab.pfaffian import GaussianState, SkewMatrix, amplitude, normalize, pfaffian, restrict


def random_skew(rng: np.random.Generator, dim: int, complex_entries: bool = True) -> np.ndarray:
    a = rng.normal(size=(dim, dim))
    if complex_entries:
        a = a + 1j * rng.normal(size=(dim, dim))
    return a - a.T


def cofactor_pfaffian(a: np.ndarray) -> complex:
    """Textbook recursion Pf(A) = sum_j (-1)^j A[0,j] Pf(A without rows/cols 0,j)."""
    m = a.shape[0]
    if m == 0:
        return 1.0
    if m % 2 == 1:
        return 0.0
    total = 0.0
    for j in range(1, m):
        keep = [k for k in range(m) if k not in (0, j)]
        sign = (-1) ** (j - 1)
        total += sign * a[0, j] * cofactor_pfaffian(a[np.ix_(keep, keep)])
    return total


# ---------------------------------------------------------------------------
# Pfaffian values
# ---------------------------------------------------------------------------

def test_empty_matrix_pfaffian_is_one():
    assert pfaffian(np.zeros((0, 0))) == 1.0


def test_two_by_two_base_case():
    assert pfaffian(np.array([[0, 3], [-3, 0]], dtype=complex)) == 3.0


@pytest.mark.parametrize("dim", [1, 3, 5, 7])
def test_odd_dimension_is_zero(dim):
    rng = np.random.default_rng(dim)
    assert pfaffian(random_skew(rng, dim)) == 0.0


def test_four_by_four_integer_pattern():
    # upper entries (a, b, c, d, e, f) -> Pf = a*f - b*e + c*d
    a, b, c, d, e, f = 1, 2, 3, 4, 5, 6
    mat = np.array(
        [[0, a, b, c], [-a, 0, d, e], [-b, -d, 0, f], [-c, -e, -f, 0]], dtype=complex
    )
    assert pfaffian(mat) == pytest.approx(a * f - b * e + c * d)


def test_four_by_four_random_pattern():
    rng = np.random.default_rng(0)
    for _ in range(20):
        a, b, c, d, e, f = rng.normal(size=6) + 1j * rng.normal(size=6)
        mat = np.array(
            [[0, a, b, c], [-a, 0, d, e], [-b, -d, 0, f], [-c, -e, -f, 0]]
        )
        assert pfaffian(mat) == pytest.approx(a * f - b * e + c * d, rel=1e-12)


@pytest.mark.parametrize("dim", [2, 4, 6, 8])
def test_matches_cofactor_recursion(dim):
    rng = np.random.default_rng(dim + 50)
    mat = random_skew(rng, dim)
    assert pfaffian(mat) == pytest.approx(cofactor_pfaffian(mat), rel=1e-10)


@pytest.mark.parametrize("dim", [2, 4, 6, 8, 10, 12])
@pytest.mark.parametrize("complex_entries", [False, True])
def test_pfaffian_squared_is_determinant(dim, complex_entries):
    rng = np.random.default_rng(dim * 2 + complex_entries)
    for _ in range(25):
        mat = random_skew(rng, dim, complex_entries)
        pf = pfaffian(mat)
        det = np.linalg.det(mat)
        assert pf * pf == pytest.approx(det, rel=1e-8, abs=1e-12)


def test_congruence_covariance():
    rng = np.random.default_rng(9)
    for dim in (2, 4, 6):
        mat = random_skew(rng, dim)
        b = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        lhs = pfaffian(b.T @ mat @ b)
        rhs = np.linalg.det(b) * pfaffian(mat)
        assert lhs == pytest.approx(rhs, rel=1e-8)


def test_row_column_pair_scaling():
    rng = np.random.default_rng(10)
    mat = random_skew(rng, 6)
    lam = 2.5 - 0.3j
    scaled = mat.copy()
    scaled[2, :] *= lam
    scaled[:, 2] *= lam
    assert pfaffian(scaled) == pytest.approx(lam * pfaffian(mat), rel=1e-10)


def test_singular_input_gives_zero():
    # mode 0 decoupled from everything: Pf vanishes without pivot breakdown
    mat = np.zeros((4, 4), dtype=complex)
    mat[2, 3], mat[3, 2] = 1.0, -1.0
    assert pfaffian(mat) == 0.0


# ---------------------------------------------------------------------------
# SkewMatrix type and restriction
# ---------------------------------------------------------------------------

def test_skew_validation_and_diagonal_zeroing():
    with pytest.raises(ValueError):
        SkewMatrix(np.array([[0.0, 1.0], [1.0, 0.0]]))
    g = SkewMatrix(np.array([[1e-13, 1.0], [-1.0, -1e-13]]))
    assert g.entries[0, 0] == 0.0 and g.entries[1, 1] == 0.0


def test_restrict_all_zeros_and_ones():
    rng = np.random.default_rng(2)
    g = SkewMatrix(random_skew(rng, 4))
    assert restrict(g, "0000").dim == 0
    np.testing.assert_array_equal(restrict(g, "1111").entries, g.entries)


def test_restrict_index_bookkeeping():
    rng = np.random.default_rng(3)
    g = SkewMatrix(random_skew(rng, 4))
    sub = restrict(g, "1010")
    expected = np.zeros((2, 2), dtype=complex)
    for a, i in enumerate((0, 2)):
        for b, j in enumerate((0, 2)):
            expected[a, b] = g.entries[i, j]
    np.testing.assert_array_equal(sub.entries, expected)


def test_restrict_length_mismatch():
    g = SkewMatrix(np.zeros((2, 2)))
    with pytest.raises(LengthMismatchError):
        restrict(g, "101")


def test_skew_json_round_trip():
    rng = np.random.default_rng(4)
    g = SkewMatrix(random_skew(rng, 5))
    back = SkewMatrix.from_json(g.to_json())
    np.testing.assert_array_equal(back.entries, g.entries)


# ---------------------------------------------------------------------------
# Gaussian states
# ---------------------------------------------------------------------------

def test_zero_generating_matrix_is_vacuum():
    st = normalize(SkewMatrix(np.zeros((3, 3))))
    assert st.norm_constant == 1.0
    assert amplitude(st, "000") == 1.0
    assert amplitude(st, "110") == 0.0


def test_two_mode_closed_form():
    g = 0.8 - 0.55j
    st = normalize(SkewMatrix(np.array([[0, g], [-g, 0]])))
    assert st.norm_constant == pytest.approx((1 + abs(g) ** 2) ** -0.5, rel=1e-12)
    assert amplitude(st, "00") == pytest.approx(st.norm_constant)
    assert amplitude(st, "11") == pytest.approx(st.norm_constant * g)


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_amplitudes_normalized_and_even_only(n):
    rng = np.random.default_rng(n)
    st = normalize(SkewMatrix(random_skew(rng, n)))
    total = 0.0
    for i in range(1 << n):
        x = format(i, f"0{n}b")
        amp = amplitude(st, x)
        if x.count("1") % 2 == 1:
            assert amp == 0.0
        total += abs(amp) ** 2
    assert total == pytest.approx(1.0, abs=1e-9)


def test_vacuum_amplitude_is_norm_constant():
    rng = np.random.default_rng(77)
    st = normalize(SkewMatrix(random_skew(rng, 4)))
    assert amplitude(st, "0000") == st.norm_constant


def test_normalize_guard():
    with pytest.raises(TooLargeError):
        normalize(SkewMatrix(np.zeros((22, 22))))


def test_gaussian_state_field_validation():
    with pytest.raises(ValueError):
        GaussianState(3, SkewMatrix(np.zeros((2, 2))), 1.0)
    with pytest.raises(ValueError):
        GaussianState(2, SkewMatrix(np.zeros((2, 2))), 0.0)
