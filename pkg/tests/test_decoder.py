import unittest
from itertools import combinations

import numpy as np

from erasure.decoder import (
    CheckCollection, Code, ReceivedWord, enumerate_stopping_sets, generate_checks, hamming_code,
    is_correctable, is_hamming_reducing, is_m_erasure_decoding, is_m_erasure_reducing,
    is_stopping_set, peel_decode, random_code, repetition_example_checks, repetition_example_code
)
from erasure.exceptions import FormatError, UsageError
from erasure.gensets import GenericSet, construct_arm
from erasure.gf2_core import BitMatrix, BitVec
from erasure.verifier import verify_generic


def codeword_oracle(code, positions):
    """不包含任何非零码字的支撑"""
    mask = sum(1 << (p - 1) for p in positions)
    return not any(c.bits and c.bits & ~mask == 0 for c in code.codewords())


class TestRepetitionExample(unittest.TestCase):

    def setUp(self):
        self.code = repetition_example_code()
        self.checks = repetition_example_checks()

    def test_fixture(self):
        self.assertEqual(self.code.n, 5)
        self.assertEqual(self.code.r, 4)
        self.assertEqual(len(self.checks), 4)
        self.assertEqual(sorted(c.to_string() for c in self.code.codewords()), ["00000", "11111"])

    def test_reducing_at_four(self):
        self.assertTrue(is_m_erasure_reducing(self.checks, self.code, 4))

    def test_not_reducing_at_three(self):
        result = is_m_erasure_reducing(self.checks, self.code, 3)
        self.assertFalse(result)
        self.assertEqual(result.witness, (2, 3, 4))

    def test_not_decoding(self):
        self.assertFalse(is_m_erasure_decoding(self.checks, self.code, 4))
        self.assertTrue(is_m_erasure_decoding(self.checks, self.code, 0))

    def test_stopping_sets(self):
        found = enumerate_stopping_sets(self.checks, 3, self.code)
        self.assertIn("{2,3,4} correctable", [s.to_line() for s in found])
        sizes = [len(s.positions) for s in found]
        self.assertEqual(sizes, sorted(sizes))
        for s in found:
            self.assertTrue(is_stopping_set(self.checks, s.positions))

    def test_full_support_is_uncorrectable(self):
        found = enumerate_stopping_sets(self.checks, 5, self.code)
        self.assertIn("{1,2,3,4,5} uncorrectable", [s.to_line() for s in found])

    def test_peel_gets_stuck(self):
        trace = peel_decode(self.checks, ReceivedWord.from_string("????0"))
        self.assertFalse(trace.succeeded)
        self.assertEqual(trace.residual, frozenset({2, 3, 4}))
        self.assertEqual(trace.to_lines(), ["step 1: check 1 resolves pos 1 = 0", "stuck: {2,3,4}"])

    def test_peel_without_erasures(self):
        trace = peel_decode(self.checks, ReceivedWord.from_string("11111"))
        self.assertEqual(trace.to_lines(), ["decoded: 11111"])

    def test_empty_set_is_not_stopping(self):
        with self.assertRaises(UsageError):
            is_stopping_set(self.checks, [])


class TestHammingDecoding(unittest.TestCase):

    def setUp(self):
        self.code = hamming_code(4)
        self.checks = generate_checks(construct_arm(4, 3), self.code)

    def test_check_count(self):
        self.assertEqual(self.code.n, 15)
        self.assertEqual(len(self.checks), 7)
        for check in self.checks.vectors():
            self.assertTrue(self.code.in_dual(check))

    def test_correctable_triples(self):
        triples = list(combinations(range(1, 16), 3))
        weight_three = [c for c in self.code.codewords() if c.weight == 3]
        correctable = [e for e in triples if is_correctable(self.code, e)]
        self.assertEqual(len(triples), 455)
        self.assertEqual(len(weight_three), 35)
        self.assertEqual(len(correctable), 420)

    def test_exhaustive_zero_codeword(self):
        zero = BitVec.zeros(15)
        for size in (1, 2, 3):
            for erasures in combinations(range(1, 16), size):
                word = ReceivedWord.from_codeword(zero, erasures)
                trace = peel_decode(self.checks, word)
                with self.subTest(erasures=erasures):
                    self.assertEqual(trace.succeeded, is_correctable(self.code, erasures))

    def test_random_codewords(self):
        rng = np.random.default_rng(11)
        patterns = {size: [e for e in combinations(range(1, 16), size) if is_correctable(self.code, e)]
                    for size in (1, 2, 3)}
        for _ in range(50):
            codeword = self.code.random_codeword(rng)
            self.assertTrue(self.code.is_codeword(codeword))
            for size, erasures_list in patterns.items():
                for erasures in erasures_list:
                    trace = peel_decode(self.checks, ReceivedWord.from_codeword(codeword, erasures))
                    self.assertEqual(trace.decoded, codeword)

    def test_decoding_property(self):
        self.assertTrue(is_m_erasure_decoding(self.checks, self.code, 3))

    def test_unit_set_reproduces_pcm(self):
        units = GenericSet(4, frozenset({1, 2, 4, 8}))
        self.assertEqual(generate_checks(units, self.code).checks, self.code.pcm.rows)

    def test_dimension_mismatch(self):
        with self.assertRaises(UsageError):
            generate_checks(construct_arm(3, 2), self.code)


class TestHammingReduction(unittest.TestCase):

    def test_matches_verifier(self):
        rng = np.random.default_rng(17)
        for r, m in [(3, 1), (3, 2), (3, 3), (4, 2)]:
            for _ in range(15):
                size = int(rng.integers(1, 2 * r + 1))
                a = GenericSet(r, frozenset(int(x) for x in rng.integers(1, 1 << r, size=size)))
                with self.subTest(r=r, m=m, members=a.sorted_members()):
                    self.assertEqual(is_hamming_reducing(a, m), verify_generic(a, r, m).passed)


class TestRandomCodes(unittest.TestCase):

    def test_random_code_properties(self):
        for seed in range(4):
            code = random_code(8, 4, seed)
            with self.subTest(seed=seed):
                self.assertEqual(code.r, 4)
                words = list(code.codewords())
                self.assertEqual(len(words), 16)
                self.assertEqual(len(set(words)), 16)
                for word in words:
                    self.assertTrue(code.is_codeword(word))
                for row in code.pcm.vectors:
                    self.assertTrue(code.in_dual(row))

    def test_correctability_oracle(self):
        code = random_code(8, 4, 5)
        for size in range(1, 5):
            for erasures in combinations(range(1, 9), size):
                self.assertEqual(is_correctable(code, erasures), codeword_oracle(code, erasures))

    def test_peeling_never_miscorrects(self):
        code = random_code(9, 5, 1)
        checks = generate_checks(construct_arm(5, 3), code)
        rng = np.random.default_rng(1)
        for _ in range(20):
            codeword = code.random_codeword(rng)
            for erasures in combinations(range(1, 10), 3):
                trace = peel_decode(checks, ReceivedWord.from_codeword(codeword, erasures))
                if is_correctable(code, erasures):
                    self.assertEqual(trace.decoded, codeword)
                else:
                    self.assertFalse(trace.succeeded)

class TestGenericChecksOnRandomCodes(unittest.TestCase):
    """通用集合生成的校验方程在随机码上的性质"""

    def setUp(self):
        rng = np.random.default_rng(23)
        self.cases = []
        for seed in range(20):
            r = int(rng.integers(3, 6))
            n = int(rng.integers(r + 1, 13))
            m = int(rng.integers(2, 4))
            code = random_code(n, r, seed)
            self.cases.append((code, m, generate_checks(construct_arm(r, m), code)))

    def test_peeling_recovers_every_correctable_pattern(self):
        rng = np.random.default_rng(29)
        for code, m, checks in self.cases:
            with self.subTest(n=code.n, r=code.r, m=m):
                self.assertTrue(is_m_erasure_decoding(checks, code, m))
                for _ in range(3):
                    codeword = code.random_codeword(rng)
                    for size in range(1, m + 1):
                        for erasures in combinations(range(1, code.n + 1), size):
                            trace = peel_decode(checks, ReceivedWord.from_codeword(codeword, erasures))
                            if is_correctable(code, erasures):
                                self.assertEqual(trace.decoded, codeword)
                            else:
                                self.assertFalse(trace.succeeded)

    def test_small_stopping_sets_are_uncorrectable(self):
        for code, m, checks in self.cases:
            with self.subTest(n=code.n, r=code.r, m=m):
                for stopping_set in enumerate_stopping_sets(checks, m, code):
                    self.assertEqual(stopping_set.label, 'uncorrectable')
                    self.assertFalse(is_correctable(code, stopping_set.positions))

    def test_stuck_residual_is_stopping_set(self):
        rng = np.random.default_rng(31)
        stuck = 0
        for trial in range(200):
            code, _, generated = self.cases[trial % len(self.cases)]
            checks = generated if trial % 2 else CheckCollection.from_vectors(code.n, code.pcm.vectors)
            size = int(rng.integers(1, code.n + 1))
            erasures = tuple(int(p) for p in rng.choice(np.arange(1, code.n + 1), size=size, replace=False))
            trace = peel_decode(checks, ReceivedWord.from_codeword(code.random_codeword(rng), erasures))
            self.assertLessEqual(trace.residual, frozenset(erasures))
            if trace.succeeded:
                self.assertEqual(trace.residual, frozenset())
                continue
            stuck += 1
            self.assertTrue(is_stopping_set(checks, trace.residual))
        self.assertGreater(stuck, 0)


class TestInputContracts(unittest.TestCase):

    def test_rank_deficient_code(self):
        with self.assertRaises(UsageError):
            Code.from_strings(["110", "110"])

    def test_received_word_alphabet(self):
        with self.assertRaises(FormatError):
            ReceivedWord.from_string("01?x")
        self.assertEqual(ReceivedWord.from_string("0?1").erasures, frozenset({2}))

    def test_length_mismatch(self):
        with self.assertRaises(UsageError):
            peel_decode(repetition_example_checks(), ReceivedWord.from_string("0?0"))

    def test_checks_drop_zero_and_duplicates(self):
        checks = CheckCollection.from_strings(["110", "000", "110", "011"])
        self.assertEqual(checks.to_lines(), ["110", "011"])

    def test_stopping_guard(self):
        checks = CheckCollection(21, (1,))
        with self.assertRaises(UsageError):
            enumerate_stopping_sets(checks, 1)

    def test_max_size_zero(self):
        self.assertEqual(enumerate_stopping_sets(repetition_example_checks(), 0), [])

    def test_covering_checks_have_no_singleton_stopping_sets(self):
        code = Code(BitMatrix.from_strings(["1000", "0100", "0010", "0001"]))
        checks = CheckCollection.from_vectors(4, code.pcm.vectors)
        self.assertEqual(enumerate_stopping_sets(checks, 1, code), [])

    def test_m_out_of_range(self):
        with self.assertRaises(UsageError):
            is_m_erasure_reducing(repetition_example_checks(), repetition_example_code(), 6)


if __name__ == '__main__':
    unittest.main()
