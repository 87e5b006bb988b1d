"""
Tests altbase/analysis/certify.py
"""
import unittest
import warnings
from fractions import Fraction
from unittest import mock

from altbase.analysis.certify import (
    DeltaKind,
    certificate_rationals,
    check_pair,
    classify_delta,
    finiteness_sample_check,
    necessary_conditions,
    periodicity_certificate,
    poly_det,
    positivity_report,
    pure_periodic_identity_check,
)
from altbase.arith.exactnum import Polynomial
from altbase.errors import (
    DegenerateChoice,
    ExpansionDidNotClose,
    NoRootAboveOne,
    NotPurelyPeriodic,
)
from altbase.numeration.admissibility import Verdict, VerdictKind
from altbase.numeration.base import BaseConfig, make_base, pp_family, shift
from altbase.numeration.expansion import DigitWord, ExpansionKind, greedy_expand

X = Polynomial.monomial(1)


class Test_classify_delta(unittest.TestCase):
    def test_family_is_pisot_unit(self):
        for m in range(1, 11):
            with self.subTest(m=m):
                c = classify_delta([-1, -(m + 1), 1], (m + 1, m + 2))
                self.assertEqual(c.kind, DeltaKind.PISOT)
                self.assertTrue(c.is_algebraic_integer)
                self.assertTrue(c.is_unit)
                self.assertEqual(len(c.conjugate_moduli), 1)
                # The conjugate is -1/delta.
                self.assertLessEqual(c.conjugate_moduli[0].modulus, 0.8)
                self.assertAlmostEqual(c.conjugate_moduli[0].modulus, 1 / c.delta_approx)
        return

    def test_salem_quartic(self):
        c = classify_delta([1, -1, -1, -1, 1], (1, 2))
        self.assertEqual(c.kind, DeltaKind.SALEM)
        self.assertTrue(c.is_unit)
        self.assertTrue(c.minpoly.is_palindromic())
        bands = sorted(m.band for m in c.conjugate_moduli)
        self.assertEqual(bands, ['inside', 'on_circle', 'on_circle'])
        self.assertAlmostEqual(c.delta_approx, 1.72208, places=4)
        return

    def test_neither(self):
        c = classify_delta([-3, 0, 1], (1, 2))  # sqrt(3), conjugate -sqrt(3)
        self.assertEqual(c.kind, DeltaKind.NEITHER)
        self.assertTrue(c.is_algebraic_integer)
        self.assertFalse(c.is_unit)
        c = classify_delta([-3, 0, 2], (1, 2))  # sqrt(3/2)
        self.assertFalse(c.is_algebraic_integer)
        self.assertEqual(c.kind, DeltaKind.NEITHER)
        return

    def test_rational_integer(self):
        c = classify_delta([-2, 1], (1, 3))
        self.assertEqual(c.kind, DeltaKind.PISOT)
        self.assertFalse(c.is_unit)
        self.assertEqual(c.conjugate_moduli, ())
        return

    def test_no_root_above_one(self):
        with self.assertRaises(NoRootAboveOne):
            classify_delta([-1, -1, 1], (-1, 0))
        return


class Test_positivity_report(unittest.TestCase):
    def test_pp_family(self):
        rows = positivity_report(pp_family(2))
        self.assertEqual(len(rows), 2)
        self.assertTrue(rows[0].is_identity)
        self.assertEqual(rows[0].verdict, 'all_positive')
        self.assertEqual(rows[1].verdict, 'not_all_positive')
        # psi(beta_2) = -1/delta - 1 < 0
        self.assertLess(rows[1].values[1].real, -1)
        self.assertEqual(rows[1].band_flags, (False, False))
        return


class Test_periodicity_certificate(unittest.TestCase):
    def setUp(self):
        self.base = pp_family(2)
        return

    def test_poly_det(self):
        matrix = [[X, Polynomial.constant(1)], [Polynomial.constant(2), X]]
        self.assertEqual(poly_det(matrix), X**2 - 2)
        return

    def test_poly_det_by_cofactors(self):
        one = Polynomial.constant(1)
        matrix = [
            [X, one, Polynomial()],
            [one, X, one],
            [Polynomial(), one, X - 1],
        ]
        # Cofactor expansion along the first row.
        expected = X * (X * (X - 1) - 1) - (X - 1)
        self.assertEqual(poly_det(matrix), expected)
        self.assertEqual(poly_det([]), one)
        return

    def test_wrong_number_of_rationals(self):
        with self.assertRaises(ValueError):
            periodicity_certificate(self.base, [Fraction(3, 4)])
        with self.assertRaises(ValueError):
            certificate_rationals(self.base, -1, 1)
        with self.assertRaises(ValueError):
            certificate_rationals(self.base, 0, 0)
        return

    def test_generated_rationals(self):
        xs = certificate_rationals(self.base, 0, 1)
        self.assertEqual(len(xs), 2)
        self.assertEqual(greedy_expand(self.base, xs[0]).word.prefix(2), (1, 0))
        self.assertEqual(greedy_expand(self.base, xs[1]).word.prefix(2), (0, 1))
        certificate = periodicity_certificate(self.base, xs, min_preperiod_blocks=2)
        self.assertTrue(certificate.checks['matrix_kills_v'])
        self.assertTrue(certificate.checks['det_vanishes_at_delta'])
        self.assertTrue(certificate.checks['det_nonzero_poly'])
        self.assertFalse(certificate.detpoly.is_zero)
        self.assertEqual(certificate.r, 2)
        return

    def test_degenerate_choice(self):
        with self.assertRaises(DegenerateChoice) as cm:
            periodicity_certificate(self.base, [Fraction(3, 4), Fraction(3, 4)])
        self.assertTrue(cm.exception.certificate.checks['matrix_kills_v'])
        return

    def test_expansion_did_not_close(self):
        with self.assertRaises(ExpansionDidNotClose) as cm:
            periodicity_certificate(self.base, [Fraction(1, 3), Fraction(3, 4)], cap=1)
        self.assertEqual(cm.exception.index, 1)
        return

    def test_pure_periodic_identity(self):
        report = greedy_expand(self.base, Fraction(3, 4))
        self.assertTrue(pure_periodic_identity_check(self.base, Fraction(3, 4), report))
        self.assertFalse(pure_periodic_identity_check(self.base, Fraction(1, 4), report))
        zero = greedy_expand(self.base, 0)
        self.assertTrue(pure_periodic_identity_check(self.base, 0, zero))
        half = greedy_expand(shift(self.base, 2), Fraction(1, 2))
        with self.assertRaises(NotPurelyPeriodic):
            pure_periodic_identity_check(shift(self.base, 2), Fraction(1, 2), half)
        return


class Test_finiteness(unittest.TestCase):
    def test_counterexample(self):
        """
        In the single base over x^2 - 3x + 1, 1/delta - 1/delta^3 expands as
        0,2(0,1), so (F) fails.
        """
        base = make_base(BaseConfig((1, -3, 1), (Fraction(2), Fraction(3)), ((0, 1),)))
        failures = check_pair(base, DigitWord((1,), ()), DigitWord((0, 0, 1), ()))
        ops = {op: report for op, report in failures}
        self.assertIn('-', ops)
        self.assertEqual(ops['-'].word, DigitWord((0, 2), (0, 1)))
        self.assertEqual(ops['-'].kind, ExpansionKind.EVENTUALLY_PERIODIC)
        return

    def test_sampler(self):
        with warnings.catch_warnings():
            warnings.simplefilter('ignore')
            report = finiteness_sample_check(pp_family(1), 5, seed=1, max_length=4)
        self.assertEqual(report.samples, 5)
        self.assertEqual(report.checked, 5)
        self.assertIsInstance(report.message, str)
        self.assertEqual(finiteness_sample_check(pp_family(1), 0).checked, 0)
        return

    def test_sampler_is_seeded(self):
        with warnings.catch_warnings():
            warnings.simplefilter('ignore')
            a = finiteness_sample_check(pp_family(2), 4, seed=7, max_length=4)
            b = finiteness_sample_check(pp_family(2), 4, seed=7, max_length=4)
        self.assertEqual(a, b)
        return

    def test_sampler_counts_skipped_pairs(self):
        """ Pairs without two admissible draws are skipped, not counted as checked. """
        rejected = Verdict(VerdictKind.NOT_ADMISSIBLE, 1)
        with mock.patch('altbase.analysis.certify.is_admissible', return_value=rejected):
            with mock.patch('altbase.analysis.certify.MAX_REJECTIONS', 3):
                with self.assertWarns(UserWarning):
                    report = finiteness_sample_check(pp_family(1), 4, max_length=4)
        self.assertEqual(report.checked, 0)
        self.assertEqual(report.skipped, 4)
        self.assertEqual(report.counterexamples, [])
        return


class Test_necessary_conditions(unittest.TestCase):
    def test_pp_family(self):
        with warnings.catch_warnings():
            warnings.simplefilter('ignore')
            dashboard = necessary_conditions(pp_family(1), samples=3)
        checks = dashboard.checks
        self.assertTrue(checks['delta_pisot_or_salem'])
        self.assertTrue(checks['betas_in_field'])
        self.assertTrue(checks['delta_unit'])
        self.assertTrue(checks['no_positive_conjugate_vector'])
        self.assertTrue(checks['one_expansions_finite'])
        self.assertEqual(str(dashboard.one_expansions[0].word), '1,1')
        self.assertEqual(str(dashboard.quasi_greedy[0].word), '(1,0)')
        self.assertEqual(str(dashboard.quasi_greedy[1].word), '1,0(0,1)')
        return


if __name__ == '__main__':
    unittest.main()
