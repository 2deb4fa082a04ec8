import math
import os
import sys
import unittest

import numpy as np
from hypothesis import assume, given, settings, strategies as st

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.ssli_verifier.core import check_tuple3, check_elem_sym, check_inverse_sum, check_means, check_squared, \
    check_2d, check_exp, check_exp_zero_sum, normalize_sum_zero, equality_case, CHECKERS
from src.ssli_verifier.matlog import check_charpol, check_frobenius
from src.ssli_verifier.schema import ArgumentError, Formulation, TheoremViolationError
from src.ssli_verifier.search import equal_product_logs, random_rotations
from src.ssli_verifier.symtuple import exp_sums

e = math.e


class TestCheckTuple3(unittest.TestCase):
    def test_equal_tuples(self):
        """y = a: zero margins, everything holds."""
        report = check_tuple3([2.0, 1.0, 0.5], [2.0, 1.0, 0.5])
        self.assertEqual([0.0, 0.0], report.margins)
        self.assertEqual([0.0], report.equality_defects)
        self.assertTrue(report.hypotheses_hold)
        self.assertEqual(0.0, report.conclusion_margin)
        self.assertTrue(report.conclusion_holds)
        self.assertFalse(report.theorem_contradicted)

    def test_second_condition_dropped(self):
        report = check_tuple3([e ** 6, 1.0, e ** -6], [e ** 4, e ** 4, e ** -8])
        self.assertGreater(report.margins[0], 0)
        self.assertLess(report.margins[1], 0)
        self.assertFalse(report.hypotheses_hold)
        self.assertFalse(report.conclusion_holds)
        self.assertFalse(report.theorem_contradicted)
        self.assertEqual(Formulation.TUPLE3, report.formulation)

    def test_wrong_lengths(self):
        with self.assertRaises(ArgumentError):
            check_tuple3([1, 2, 3, 4], [1, 2, 3, 4])
        with self.assertRaises(ArgumentError):
            check_tuple3([1, 2, 3], [1, 2])

    def test_numpy_arrays(self):
        y, a = [e ** 6, 1.0, e ** -6], [e ** 4, e ** 4, e ** -8]
        self.assertEqual(check_tuple3(y, a), check_tuple3(np.array(y), np.array(a)))
        with self.assertRaises(ArgumentError):
            check_tuple3(np.array([y]), np.array([a]))

    def test_scales_are_not_serialized(self):
        dump = check_tuple3([2.0, 1.0, 0.5], [2.0, 1.0, 0.5]).model_dump()
        self.assertNotIn("scales", dump)
        self.assertIn("margins", dump)


class TestCheckElemSym(unittest.TestCase):
    def test_agrees_with_tuple3(self):
        y, a = [3.0, 1.0, 1.0 / 3.0], [2.0, 1.0, 0.5]
        general, special = check_elem_sym(y, a), check_tuple3(y, a)
        self.assertEqual(general.margins, special.margins)
        self.assertEqual(general.conclusion_margin, special.conclusion_margin)
        self.assertEqual(Formulation.ELEMSYM, general.formulation)

    def test_four_numbers(self):
        report = check_elem_sym([e, e ** 7, e ** 7, e ** -15], [e ** 6, e ** 6, e ** 7, e ** -19])
        self.assertEqual(3, len(report.margins))
        self.assertGreater(report.margins[0], 0)
        self.assertGreater(report.margins[1], 0)
        self.assertLess(report.margins[2], 0)
        self.assertAlmostEqual(324.0 - 482.0, report.conclusion_margin, places=9)

    def test_two_numbers(self):
        report = check_elem_sym([4.0, 0.25], [2.0, 0.5])
        self.assertEqual(1, len(report.margins))
        self.assertTrue(report.hypotheses_hold)
        self.assertTrue(report.conclusion_holds)


class TestOtherTupleFormulations(unittest.TestCase):
    def test_means_orientation(self):
        """The harmonic line is reported as H(a) - H(y), positive when satisfied."""
        report = check_means([3.0, 1.0, 1.0 / 3.0], [1.0, 1.0, 1.0])
        self.assertTrue(all(m > 0 for m in report.margins))
        self.assertTrue(report.hypotheses_hold)

    def test_inverse_sum(self):
        report = check_inverse_sum([3.0, 1.0, 1.0 / 3.0], [1.0, 1.0, 1.0])
        self.assertAlmostEqual(3.0 + 1.0 + 1.0 / 3.0 - 3.0, report.margins[1], places=14)

    def test_squared_conclusion_is_unsquared(self):
        report = check_squared([e, 1.0, 1.0 / e], [1.0, 1.0, 1.0])
        self.assertAlmostEqual(2.0, report.conclusion_lhs, places=14)
        self.assertTrue(report.hypotheses_hold)

    def test_2d(self):
        report = check_2d([2.0, 0.5], [1.0, 1.0])
        self.assertEqual([4.25 - 2.0], report.margins)
        self.assertEqual([0.25 + 4.0 - 2.0], report.derived_margins)
        self.assertTrue(report.hypotheses_hold)
        self.assertAlmostEqual(2 * math.log(2.0) ** 2, report.conclusion_lhs, places=14)
        with self.assertRaises(ArgumentError):
            check_2d([1, 2, 3], [1, 2, 3])

    def test_registry(self):
        self.assertEqual(8, len(CHECKERS))
        self.assertNotIn(Formulation.CHARPOL, CHECKERS)


class TestCheckExp(unittest.TestCase):
    def test_unequal_sums_rejected(self):
        with self.assertRaises(ArgumentError):
            check_exp([1.0, 0.0, -1.0], [1.0, 0.0, 0.0])

    def test_wrong_length(self):
        with self.assertRaises(ArgumentError):
            check_exp([1.0, -1.0], [0.5, -0.5])

    def test_margins_are_exp_sums(self):
        report = check_exp([1.0, 0.0, -1.0], [0.5, 0.0, -0.5])
        pos_z, neg_z = exp_sums([1.0, 0.0, -1.0])
        pos_c, neg_c = exp_sums([0.5, 0.0, -0.5])
        self.assertEqual([pos_z - pos_c, neg_z - neg_c], report.margins)
        self.assertEqual(2.0, report.conclusion_lhs)
        self.assertEqual(0.5, report.conclusion_rhs)

    def test_zero_sum_variant(self):
        shifted = check_exp_zero_sum([6.0, 5.0, 4.0], [5.5, 5.0, 4.5])
        centered = check_exp([1.0, 0.0, -1.0], [0.5, 0.0, -0.5])
        self.assertEqual(Formulation.EXP_ZERO_SUM, shifted.formulation)
        for got, want in zip(shifted.margins, centered.margins):
            self.assertAlmostEqual(want, got, places=12)
        self.assertTrue(shifted.hypotheses_hold)
        self.assertTrue(shifted.conclusion_holds)

    def test_normalize_sum_zero(self):
        self.assertEqual((1.0, 0.0, -1.0), normalize_sum_zero([1.0, 2.0, 3.0]).values)
        z = normalize_sum_zero([1.0, 0.0, -1.0])
        self.assertEqual(0.0, z.sum)


class TestEqualityCase(unittest.TestCase):
    def test_equal_tuples(self):
        self.assertTrue(equality_case([1.0, 0.0, -1.0], [1.0, 0.0, -1.0]))

    def test_strict_case(self):
        self.assertFalse(equality_case([1.0, 0.0, -1.0], [0.5, 0.0, -0.5]))

    def test_hypotheses_must_hold(self):
        with self.assertRaises(ArgumentError):
            equality_case([0.5, 0.0, -0.5], [1.0, 0.0, -1.0])

    def test_rigidity_violation_is_raised(self):
        """With a zero threshold, equal squared sums on entrywise different tuples are a breach."""
        z = [1.0, 0.0, -1.0]
        c = [1.0 + 1e-14, 0.0, -1.0 - 1e-14]
        with self.assertRaises(TheoremViolationError):
            equality_case(z, c, tol=1e-12, rigidity_tol=0.0)

    @given(st.floats(min_value=0.1, max_value=3.0), st.floats(min_value=0.0, max_value=math.pi / 3))
    @settings(max_examples=200)
    def test_equal_norm_pairs_coincide(self, r, phi):
        """Sum-zero triples of equal norm satisfying both exponential inequalities are the same triple."""
        z = [r * math.cos(phi), r * math.cos(phi - 2 * math.pi / 3), r * math.cos(phi + 2 * math.pi / 3)]
        self.assertTrue(equality_case(z, list(z)))


class TestScalingIncreasesExpSums(unittest.TestCase):
    def test_both_sums_grow(self):
        """Scaling a nonzero sum-zero triple by k > 1 strictly increases both exponential sums."""
        rng = np.random.default_rng(11)
        for _ in range(2000):
            z = rng.normal(size=3)
            z -= z.mean()
            norm = np.linalg.norm(z)
            if norm < 0.1:
                continue
            k = rng.uniform(1.01, 3.0)
            pos, neg = exp_sums(z.tolist())
            pos_k, neg_k = exp_sums((k * z).tolist())
            self.assertGreater(pos_k, pos)
            self.assertGreater(neg_k, neg)


def _lift(values, rotation):
    return (rotation * np.asarray(values)) @ rotation.T


class TestCrossFormulationAgreement(unittest.TestCase):
    def test_all_formulations_agree(self):
        """Every formulation gives the same hypothesis verdict and conclusion sign on one pair."""
        rng = np.random.default_rng(2024)
        count = 500
        ly, la = equal_product_logs(rng, 3, 1.0, count)
        rotations = random_rotations(rng, count)
        holding = 0

        for i in range(count):
            y, a = np.exp(ly[i]), np.exp(la[i])
            reports = [
                check_tuple3(y.tolist(), a.tolist()),
                check_inverse_sum(y.tolist(), a.tolist()),
                check_means(y.tolist(), a.tolist()),
                check_exp(ly[i].tolist(), la[i].tolist()),
                check_squared(np.sqrt(y).tolist(), np.sqrt(a).tolist()),
                check_charpol(_lift(y, rotations[i]), np.diag(a)),
                check_frobenius(_lift(np.sqrt(y), rotations[i]), np.diag(np.sqrt(a))),
            ]
            verdicts = {r.hypotheses_hold for r in reports}
            self.assertEqual(1, len(verdicts), (i, [r.formulation.value for r in reports]))
            if abs(reports[0].conclusion_margin) > 1e-9:
                signs = {r.conclusion_margin > 0 for r in reports}
                self.assertEqual(1, len(signs), i)
            if reports[0].hypotheses_hold:
                holding += 1
                self.assertTrue(all(r.conclusion_holds for r in reports), i)
        self.assertGreater(holding, 0)


class TestTheoremOnRandomTriples(unittest.TestCase):
    @given(st.lists(st.floats(min_value=-3.0, max_value=3.0), min_size=3, max_size=3),
           st.lists(st.floats(min_value=-3.0, max_value=3.0), min_size=3, max_size=3))
    @settings(max_examples=300)
    def test_hypotheses_imply_conclusion(self, ly, la):
        ly = [v - math.fsum(ly) / 3 for v in ly]
        la = [v - math.fsum(la) / 3 for v in la]
        report = check_tuple3([math.exp(v) for v in ly], [math.exp(v) for v in la])
        assume(report.hypotheses_hold)
        self.assertTrue(report.conclusion_holds, report)


if __name__ == '__main__':
    unittest.main()
