import math
import unittest
from itertools import permutations

from erasure.exceptions import UsageError
from erasure.gensets import (
    GenericSet, apply_transform, bound_report, construct_arm, construct_full, construct_weber,
    find_covering_vector, parity_pattern_matrix, lower_bound, size_formula, upper_bound,
    upper_bound_coefficient, weber_transform_matrix
)
from erasure.gf2_core import (
    BitMatrix, BitVec, enumerate_independent_subsets, parity, popcount, random_invertible, rank,
    vec_mat_mul
)


class TestConstructions(unittest.TestCase):

    def test_arm_small(self):
        self.assertEqual(construct_arm(3, 2).to_lines(), ["100", "110", "101"])
        self.assertEqual(len(construct_arm(4, 3)), 7)

    def test_arm_members(self):
        for r in range(2, 8):
            for m in range(2, r + 1):
                with self.subTest(r=r, m=m):
                    for a in construct_arm(r, m).members:
                        self.assertEqual(a & 1, 1)
                        self.assertLessEqual(popcount(a), m)

    def test_size_formula(self):
        for r in range(2, 17):
            for m in range(2, r + 1):
                with self.subTest(r=r, m=m):
                    expected = sum(math.comb(r - 1, i) for i in range(m))
                    self.assertEqual(size_formula(r, m), expected)
                    self.assertEqual(len(construct_arm(r, m)), expected)

    def test_m_equal_two_is_basis_sized(self):
        for r in range(2, 13):
            self.assertEqual(len(construct_arm(r, 2)), lower_bound(r, 2))

    def test_arm_full_when_m_equals_r(self):
        self.assertEqual(len(construct_arm(5, 5)), 16)

    def test_bad_ranges(self):
        with self.assertRaises(UsageError):
            construct_arm(2, 3)
        with self.assertRaises(UsageError):
            construct_arm(3, 1)
        with self.assertRaises(UsageError):
            construct_weber(2)

    def test_weber(self):
        self.assertEqual(construct_weber(3).to_lines(), ["100", "010", "001", "111"])
        self.assertEqual(len(construct_weber(6)), 6 + math.comb(5, 2))

    def test_full(self):
        self.assertEqual(len(construct_full(4)), 15)

    def test_transform_matrix(self):
        self.assertEqual(weber_transform_matrix(3).to_strings(), ["100", "110", "101"])
        self.assertEqual(rank(weber_transform_matrix(8)), 8)

    def test_weber_is_transformed_arm(self):
        for r in range(3, 11):
            with self.subTest(r=r):
                transformed = apply_transform(construct_arm(r, 3), weber_transform_matrix(r))
                self.assertEqual(transformed, construct_weber(r))

    def test_apply_transform_identity(self):
        a = construct_arm(5, 3)
        self.assertEqual(apply_transform(a, BitMatrix.identity(5)), a)

    def test_apply_transform_rejects_singular(self):
        with self.assertRaises(UsageError):
            apply_transform(construct_arm(3, 2), BitMatrix.from_strings(["110", "101", "011"]))
        with self.assertRaises(UsageError):
            apply_transform(construct_arm(3, 2), BitMatrix.identity(4))

    def test_apply_transform_preserves_size(self):
        a = construct_arm(6, 3)
        self.assertEqual(len(apply_transform(a, random_invertible(6, 11))), len(a))


class TestGenericSet(unittest.TestCase):

    def test_rejects_zero(self):
        with self.assertRaises(UsageError):
            GenericSet(3, frozenset({0, 1}))

    def test_rejects_out_of_range(self):
        with self.assertRaises(UsageError):
            GenericSet(2, frozenset({4}))

    def test_membership(self):
        a = GenericSet.from_vectors(3, [BitVec.from_string("110"), BitVec.from_string("100")])
        self.assertIn(BitVec.from_string("110"), a)
        self.assertNotIn(BitVec.from_string("010"), a)
        self.assertEqual(a.sorted_members(), (1, 3))


class TestCoveringVector(unittest.TestCase):

    def check_all(self, r, m, all_orders=True):
        arm = construct_arm(r, m)
        for columns in enumerate_independent_subsets(r, m):
            orders = permutations(columns) if all_orders else (columns, columns[::-1])
            for order in orders:
                matrix = BitMatrix.from_columns(order, r)
                a = find_covering_vector(matrix)
                self.assertIn(a, arm)
                self.assertEqual(vec_mat_mul(a, matrix).weight, 1)

    def test_exhaustive_small(self):
        for r in range(2, 7):
            for m in range(2, min(r, 3) + 1):
                with self.subTest(r=r, m=m):
                    self.check_all(r, m)

    def test_square(self):
        self.check_all(4, 4, all_orders=False)

    def test_zero_first_row(self):
        matrix = BitMatrix.from_strings(["00", "10", "01"])
        a = find_covering_vector(matrix)
        self.assertEqual(a[1], 1)
        self.assertEqual(vec_mat_mul(a, matrix).weight, 1)

    def test_rank_deficient(self):
        with self.assertRaises(UsageError):
            find_covering_vector(BitMatrix.from_strings(["11", "11", "00"]))


class TestBounds(unittest.TestCase):

    def test_coefficients(self):
        self.assertEqual(upper_bound_coefficient(2), 2.0)
        self.assertAlmostEqual(upper_bound_coefficient(3), 4.4244, delta=1e-3)
        self.assertAlmostEqual(upper_bound_coefficient(4), 9.638, delta=1e-2)

    def test_upper_bound(self):
        self.assertEqual(upper_bound(5, 2), (2.0, 10))
        coefficient, bound = upper_bound(7, 3)
        self.assertEqual(bound, math.ceil(coefficient * 7))

    def test_lower_bound(self):
        self.assertEqual(lower_bound(6, 3), 6)
        with self.assertRaises(UsageError):
            lower_bound(3, 4)

    def test_report(self):
        report = bound_report(4, 3)
        self.assertEqual(report.lower, 4)
        self.assertEqual(report.construction_size, 7)
        self.assertLessEqual(report.lower, report.construction_size)
        self.assertEqual(bound_report(5, 1).construction_size, 5)

    def test_parity_pattern_example(self):
        matrix = parity_pattern_matrix(BitVec.from_string("111"), 2)
        self.assertEqual(matrix.to_strings(), ["10", "01", "10"])
        self.assertEqual(vec_mat_mul(BitVec.from_string("110"), matrix).to_string(), "11")

    def test_parity_pattern_matrix(self):
        for r in range(1, 6):
            for m in range(1, r + 1):
                for v_bits in range(1, 1 << r):
                    with self.subTest(r=r, m=m, v=v_bits):
                        v = BitVec(r, v_bits)
                        matrix = parity_pattern_matrix(v, m)
                        self.assertEqual(rank(matrix), m)
                        for i, row in enumerate(matrix.rows, start=1):
                            self.assertEqual(parity(row), v[i])
                        for a in range(1 << r):
                            if parity(a & v_bits) == 0:
                                self.assertEqual(parity(vec_mat_mul(BitVec(r, a), matrix).bits), 0)

    def test_parity_pattern_rejects_zero(self):
        with self.assertRaises(UsageError):
            parity_pattern_matrix(BitVec(3, 0), 2)


if __name__ == '__main__':
    unittest.main()
