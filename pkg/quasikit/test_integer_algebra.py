"""
Unit tests for the Integer Algebra Module

Test coverage:
- Smith normal form on hand-checked matrices
- Smith form invariants on 500 seeded random matrices
- Sparse versus dense elementary divisors
- Cokernel presentations
- Rational rank
- AbelianGroup validation and formatting
"""

import unittest

import numpy as np

from quasikit.integer_algebra import (
    AbelianGroup,
    cokernel_presentation,
    determinant,
    elementary_divisors,
    identity_matrix,
    integer_matrix,
    matmul,
    rational_rank,
    smith_normal_form,
    sparse_elementary_divisors,
    zero_matrix,
)


def random_matrix(rng, max_dim=8, max_entry=9):
    m, n = rng.integers(1, max_dim + 1, size=2)
    values = rng.integers(-max_entry, max_entry + 1, size=(m, n))
    # Sprinkle zeros so rank-deficient cases show up
    values[rng.random((m, n)) < 0.3] = 0
    return integer_matrix(values.tolist())


class TestSmithNormalForm(unittest.TestCase):
    """Test Smith normal form computation."""

    def test_zero_matrix(self):
        """Test the zero matrix keeps identity transforms."""
        A = zero_matrix(2, 3)
        snf = smith_normal_form(A)
        self.assertTrue(np.array_equal(snf.D, A))
        self.assertTrue(np.array_equal(snf.U, identity_matrix(2)))
        self.assertTrue(np.array_equal(snf.V, identity_matrix(3)))
        self.assertEqual(snf.rank, 0)

    def test_two_by_two(self):
        """Test [[2,4],[6,8]] has diagonal (2, 4)."""
        A = integer_matrix([[2, 4], [6, 8]])
        snf = smith_normal_form(A)
        self.assertEqual(snf.diagonal, (2, 4))
        self.assertTrue(snf.verify(A))

    def test_identity(self):
        """Test the identity is its own Smith form."""
        A = identity_matrix(4)
        snf = smith_normal_form(A)
        self.assertTrue(np.array_equal(snf.D, A))
        self.assertTrue(snf.verify(A))

    def test_empty_shapes(self):
        """Test matrices with a zero dimension."""
        A = integer_matrix([], shape=(0, 3))
        snf = smith_normal_form(A)
        self.assertEqual(snf.diagonal, ())
        self.assertEqual(snf.V.shape, (3, 3))
        self.assertTrue(snf.verify(A))

    def test_divisibility_needs_row_mixing(self):
        """Test diag(2, 3) becomes (1, 6)."""
        A = integer_matrix([[2, 0], [0, 3]])
        snf = smith_normal_form(A)
        self.assertEqual(snf.diagonal, (1, 6))
        self.assertTrue(snf.verify(A))

    def test_large_entries_stay_exact(self):
        """Test entries beyond 64 bits are handled exactly."""
        big = 2 ** 70
        A = integer_matrix([[big, 0], [0, big * 3]])
        snf = smith_normal_form(A)
        self.assertEqual(snf.diagonal, (big, big * 3))
        self.assertTrue(snf.verify(A))

    def test_random_matrices(self):
        """Test UAV = D, unimodularity, divisibility and rank on 500 seeded matrices."""
        rng = np.random.default_rng(20240501)
        for trial in range(500):
            A = random_matrix(rng)
            snf = smith_normal_form(A)
            self.assertTrue(np.array_equal(matmul(matmul(snf.U, A), snf.V), snf.D), trial)
            self.assertEqual(abs(determinant(snf.U)), 1, trial)
            self.assertEqual(abs(determinant(snf.V)), 1, trial)
            nonzero = [d for d in snf.diagonal if d]
            self.assertTrue(all(b % a == 0 for a, b in zip(nonzero, nonzero[1:])), trial)
            self.assertEqual(snf.rank, rational_rank(A), trial)
            self.assertTrue(snf.verify(A), trial)

    def test_permutation_and_transpose_invariance(self):
        """Test the diagonal ignores row/column permutations and transposition."""
        rng = np.random.default_rng(7)
        for _ in range(50):
            A = random_matrix(rng, max_dim=6)
            expected = elementary_divisors(A)
            rows = rng.permutation(A.shape[0])
            cols = rng.permutation(A.shape[1])
            self.assertEqual(elementary_divisors(A[rows][:, cols]), expected)
            self.assertEqual(elementary_divisors(A.T.copy()), expected)


class TestSparseDivisors(unittest.TestCase):
    """Test sparse elementary divisors against the dense path."""

    def test_matches_dense(self):
        """Test sparse and dense divisors agree as multisets."""
        rng = np.random.default_rng(11)
        for _ in range(200):
            A = random_matrix(rng, max_entry=3)
            rows = [{j: int(A[i, j]) for j in range(A.shape[1]) if A[i, j]} for i in range(A.shape[0])]
            self.assertEqual(sorted(sparse_elementary_divisors(rows)), elementary_divisors(A))

    def test_empty_rows(self):
        """Test empty and all-zero rows give no divisors."""
        self.assertEqual(sparse_elementary_divisors([]), [])
        self.assertEqual(sparse_elementary_divisors([{}, {0: 0}]), [])


class TestCokernel(unittest.TestCase):
    """Test cokernel presentations."""

    def test_z_mod_two(self):
        """Test Z / 2Z."""
        self.assertEqual(cokernel_presentation(integer_matrix([[2]])), AbelianGroup(0, (2,)))

    def test_no_relations(self):
        """Test no relations on Z^3 leave Z^3."""
        self.assertEqual(cokernel_presentation(integer_matrix([], shape=(0, 3))), AbelianGroup(3))

    def test_mixed(self):
        """Test Z^2 / <(1,0), (0,3)> = Z/3."""
        self.assertEqual(cokernel_presentation(integer_matrix([[1, 0], [0, 3]])), AbelianGroup(0, (3,)))

    def test_free_part(self):
        """Test one relation on Z^3 leaves Z^2 + Z/2."""
        self.assertEqual(cokernel_presentation(integer_matrix([[2, 4, 6]])), AbelianGroup(2, (2,)))


class TestRationalRank(unittest.TestCase):
    """Test rational rank."""

    def test_examples(self):
        """Test zero, identity and proportional rows."""
        self.assertEqual(rational_rank(zero_matrix(3, 3)), 0)
        self.assertEqual(rational_rank(identity_matrix(4)), 4)
        self.assertEqual(rational_rank(integer_matrix([[1, 2], [2, 4]])), 1)
        self.assertEqual(rational_rank(integer_matrix([], shape=(0, 2))), 0)


class TestAbelianGroup(unittest.TestCase):
    """Test the AbelianGroup value type."""

    def test_validation(self):
        """Test torsion must be >= 2 and form a divisibility chain."""
        with self.assertRaises(ValueError):
            AbelianGroup(0, (1,))
        with self.assertRaises(ValueError):
            AbelianGroup(0, (4, 2))
        with self.assertRaises(ValueError):
            AbelianGroup(-1)
        self.assertEqual(AbelianGroup(1, (2, 4)).torsion, (2, 4))

    def test_formatting(self):
        """Test the readable form."""
        self.assertEqual(str(AbelianGroup()), "0")
        self.assertEqual(str(AbelianGroup(1)), "Z")
        self.assertEqual(str(AbelianGroup(2, (2,))), "Z^2 + Z/2")
        self.assertEqual(str(AbelianGroup(0, (2, 6))), "Z/2 + Z/6")

    def test_dict_form(self):
        """Test to_dict and from_dict agree."""
        group = AbelianGroup(3, (2,))
        self.assertEqual(AbelianGroup.from_dict(group.to_dict()), group)
        self.assertTrue(AbelianGroup().is_trivial)

    def test_integer_matrix_rejects_non_integers(self):
        """Test floats and ragged rows are rejected."""
        with self.assertRaises(ValueError):
            integer_matrix([[1.5]])
        with self.assertRaises(ValueError):
            integer_matrix([[1, 2], [3]])

    def test_determinant(self):
        """Test exact determinants, including the empty matrix."""
        self.assertEqual(determinant(integer_matrix([[2, 1], [7, 4]])), 1)
        self.assertEqual(determinant(zero_matrix(0, 0)), 1)


if __name__ == '__main__':
    unittest.main()
