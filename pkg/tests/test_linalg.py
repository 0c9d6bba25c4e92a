"""Tests for the dense complex matrix toolbox."""

import json

import numpy as np
import pytest

from gybe import linalg
from gybe.solutions import base_solution, rowell_solution

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def test_kron_identity_case():
    np.testing.assert_array_equal(
        linalg.kron(linalg.identity(2), linalg.identity(2)), linalg.identity(4)
    )


def test_kron_diagonal_case():
    omega = np.exp(0.73j)
    got = linalg.kron(np.diag([1, omega]), linalg.identity(2))
    np.testing.assert_allclose(got, np.diag([1, 1, omega, omega]), atol=1e-15)


def test_kron_pauli_expansion():
    # Expanding block (i, j) = sigma_x[i, j] * sigma_z by hand.
    expected = np.array(
        [
            [0, 0, 1, 0],
            [0, 0, 0, -1],
            [1, 0, 0, 0],
            [0, -1, 0, 0],
        ],
        dtype=complex,
    )
    np.testing.assert_array_equal(linalg.kron(SIGMA_X, SIGMA_Z), expected)


def test_kron_mixed_product_identity():
    rng = np.random.default_rng(0)
    for _ in range(5):
        a, c = rng.standard_normal((2, 2, 2)) + 1j * rng.standard_normal((2, 2, 2))
        b, d = rng.standard_normal((2, 4, 4)) + 1j * rng.standard_normal((2, 4, 4))
        lhs = linalg.kron(a, b) @ linalg.kron(c, d)
        rhs = linalg.kron(a @ c, b @ d)
        assert linalg.max_abs_diff(lhs, rhs) <= 1e-12


def test_kron_associativity():
    rng = np.random.default_rng(1)
    for _ in range(5):
        a, b, c = (
            rng.uniform(-1, 1, (2, 2)) + 1j * rng.uniform(-1, 1, (2, 2))
            for _ in range(3)
        )
        lhs = linalg.kron(linalg.kron(a, b), c)
        rhs = linalg.kron(a, linalg.kron(b, c))
        assert linalg.max_abs_diff(lhs, rhs) <= 1e-15


def test_kron_power():
    q = np.array([[1, 2], [3, 4]], dtype=complex)
    np.testing.assert_array_equal(linalg.kron_power(q, 0), linalg.identity(1))
    np.testing.assert_array_equal(
        linalg.kron_power(q, 3), np.kron(np.kron(q, q), q)
    )
    with pytest.raises(ValueError):
        linalg.kron_power(q, -1)


def test_direct_sum_identity():
    np.testing.assert_array_equal(
        linalg.direct_sum(linalg.identity(2), linalg.identity(2)), linalg.identity(4)
    )


def test_direct_sum_of_transcribed_blocks_reproduces_zeta_solution():
    # The two 4x4 blocks transcribed directly, joined by direct_sum.
    zeta = np.exp(2j * np.pi / 8)
    zi = zeta ** (-1)
    s = 1 / np.sqrt(2)
    x = s * np.array(
        [[zi, 0, -zi, 0], [0, zeta, 0, zeta], [zeta, 0, zeta, 0], [0, -zi, 0, zi]]
    )
    y = s * np.array(
        [[zeta, 0, zeta, 0], [0, zi, 0, -zi], [-zi, 0, zi, 0], [0, zeta, 0, zeta]]
    )
    assert linalg.max_abs_diff(
        linalg.direct_sum(x, y), rowell_solution().matrix
    ) <= 1e-15


def test_direct_sum_identical_blocks():
    rng = np.random.default_rng(2)
    x = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    out = linalg.direct_sum(x, x)
    assert out.shape == (8, 8)
    np.testing.assert_array_equal(out[:4, :4], x)
    np.testing.assert_array_equal(out[4:, 4:], x)
    assert linalg.max_abs(out[:4, 4:]) == 0
    assert linalg.max_abs(out[4:, :4]) == 0


def test_direct_sum_rejects_non_square():
    with pytest.raises(ValueError):
        linalg.direct_sum(np.ones((2, 3)), linalg.identity(2))


def test_direct_sum_unitary_iff_blocks_unitary():
    rng = np.random.default_rng(3)
    for _ in range(4):
        u = linalg.random_unitary(3, rng)
        v = linalg.random_unitary(5, rng)
        assert linalg.is_unitary(linalg.direct_sum(u, v), 1e-12).passed
        bad = u + 0.1 * rng.standard_normal((3, 3))
        assert not linalg.is_unitary(linalg.direct_sum(bad, v), 1e-6).passed
        assert not linalg.is_unitary(linalg.direct_sum(u, 2 * v), 1e-6).passed


def test_dagger_known_matrix():
    a = np.array([[1 + 1j, 2 - 1j], [3, 4 + 2j]])
    expected = np.array([[1 - 1j, 3], [2 + 1j, 4 - 2j]])
    np.testing.assert_array_equal(linalg.dagger(a), expected)


def test_dagger_involution():
    rng = np.random.default_rng(4)
    m = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    np.testing.assert_array_equal(linalg.dagger(linalg.dagger(m)), m)


def test_is_unitary_zeta_solution():
    check = linalg.is_unitary(rowell_solution().matrix, 1e-12)
    assert check.passed
    assert bool(check) is True
    assert check.residual <= 1e-14


def test_is_unitary_scaled_identity_residual_three():
    check = linalg.is_unitary(2 * linalg.identity(4), 1e-12)
    assert not check.passed
    assert bool(check) is False
    # (2I)(2I)^dagger - I = 3I entrywise.
    assert check.residual == pytest.approx(3.0, abs=1e-15)


def test_inverse_identity():
    np.testing.assert_array_equal(linalg.inverse(linalg.identity(8)), linalg.identity(8))


def test_inverse_of_unitary_is_dagger():
    rng = np.random.default_rng(5)
    for n in (2, 4, 8):
        u = linalg.random_unitary(n, rng)
        assert linalg.max_abs_diff(linalg.inverse(u), linalg.dagger(u)) <= 1e-10


def test_inverse_diagonal():
    got = linalg.inverse(np.diag([2.0, 1j]))
    np.testing.assert_allclose(got, np.diag([0.5, -1j]), atol=1e-14)


def test_inverse_contract_residual():
    rng = np.random.default_rng(6)
    m = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
    assert linalg.max_abs_diff(m @ linalg.inverse(m), linalg.identity(8)) <= 1e-10


def test_inverse_singular_raises():
    with pytest.raises(linalg.SingularMatrixError):
        linalg.inverse(np.array([[1.0, 1.0], [1.0, 1.0]]))
    with pytest.raises(ValueError):
        linalg.inverse(np.ones((2, 3)))


def test_determinant_matches_eigenvalue_product():
    rng = np.random.default_rng(7)
    for _ in range(5):
        m = rng.uniform(-1, 1, (4, 4)) + 1j * rng.uniform(-1, 1, (4, 4))
        eig_prod = np.prod(linalg.eigenvalues(m))
        assert abs(eig_prod - linalg.determinant(m)) <= 1e-8


def test_char_poly_small_cases():
    coeffs = linalg.char_poly_coefficients(np.diag([2.0, 3.0]))
    np.testing.assert_allclose(coeffs, [1.0, -5.0, 6.0], atol=1e-12)


def test_char_poly_matches_numpy_poly():
    rng = np.random.default_rng(8)
    m = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
    np.testing.assert_allclose(
        linalg.char_poly_coefficients(m), np.poly(m), atol=1e-10
    )


def test_eigenvalues_identity():
    np.testing.assert_allclose(
        linalg.eigenvalues(linalg.identity(4)), np.ones(4), atol=1e-12
    )


def test_eigenvalues_family_one_base_block():
    expected = [np.exp(-1j * np.pi / 12)] * 2 + [np.exp(7j * np.pi / 12)] * 2
    got = linalg.eigenvalues(base_solution(1).x_matrix())
    assert linalg.eigenvalue_multisets_close(got, expected, 1e-8)


def test_eigenvalues_family_three_base_block():
    expected = [np.exp(-1j * np.pi / 4)] * 2 + [np.exp(1j * np.pi / 4)] * 2
    got = linalg.eigenvalues(base_solution(3).x_matrix())
    assert linalg.eigenvalue_multisets_close(got, expected, 1e-8)


def test_eigenvalues_satisfy_char_poly():
    rng = np.random.default_rng(9)
    for n in (4, 8):
        m = rng.uniform(-1, 1, (n, n)) + 1j * rng.uniform(-1, 1, (n, n))
        coeffs = linalg.char_poly_coefficients(m)
        for lam in linalg.eigenvalues(m):
            assert abs(np.polyval(coeffs, lam)) <= 1e-8


def test_eigenvalues_of_unitary_lie_on_circle():
    rng = np.random.default_rng(10)
    for _ in range(4):
        u = linalg.random_unitary(6, rng)
        assert np.all(np.abs(np.abs(linalg.eigenvalues(u)) - 1.0) <= 1e-8)


def test_eigenvalues_size_cap():
    with pytest.raises(ValueError):
        linalg.eigenvalues(np.eye(17))


def test_eigenvalue_multiset_comparison():
    a = [1.0, 1j, 1j, -1.0]
    b = [1j, -1.0, 1.0, 1j]
    assert linalg.eigenvalue_multisets_close(a, b, 1e-12)
    assert not linalg.eigenvalue_multisets_close(a, [1.0, 1j, -1j, -1.0], 1e-6)
    assert not linalg.eigenvalue_multisets_close(a, [1.0, 1j], 1e-6)


def test_matrix_json_round_trip_is_exact():
    rng = np.random.default_rng(11)
    m = rng.standard_normal((5, 3)) + 1j * rng.standard_normal((5, 3))
    back = linalg.matrix_from_json(linalg.matrix_to_json(m))
    np.testing.assert_array_equal(back, m)


def test_matrix_json_shape():
    data = linalg.matrix_to_json_dict(linalg.identity(2))
    assert data == {
        "rows": 2,
        "cols": 2,
        "entries": [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [1.0, 0.0]],
    }
    assert json.loads(json.dumps(data)) == data


def test_matrix_from_json_rejects_malformed():
    with pytest.raises(ValueError):
        linalg.matrix_from_json('{"rows": 2, "cols": 2, "entries": [[1, 0]]}')
    with pytest.raises(ValueError):
        linalg.matrix_from_json('{"rows": 1, "cols": 1, "entries": [[1, 0, 0]]}')
    with pytest.raises(ValueError):
        linalg.matrix_from_json('{"cols": 1, "entries": [[1, 0]]}')
