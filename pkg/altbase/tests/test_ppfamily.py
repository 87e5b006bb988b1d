"""
Tests for ppfamily.py and plot_gamma_scan.py.
"""
import itertools
import unittest
import warnings
from fractions import Fraction
from unittest import mock

import matplotlib

matplotlib.use('Agg')
import matplotlib.pyplot as plt
import numpy as np
import pandas as pd

from altbase.analysis.certify import pure_periodic_identity_check
from altbase.analysis.ppfamily import (
    farey_sequence,
    gamma_profile,
    gamma_scan,
    half_expansion_formula,
    pp_rewrite,
)
from altbase.errors import OutOfRange, RewriteFailed
from altbase.numeration.admissibility import VerdictKind, is_admissible
from altbase.numeration.base import pp_family, shift
from altbase.numeration.expansion import (
    DigitWord,
    ExpansionKind,
    ExpansionReport,
    greedy_expand,
    value_of,
)
from altbase.plot.plot_gamma_scan import plot_gamma_scan


class Test_pp_rewrite(unittest.TestCase):
    def test_three_quarters(self):
        report, steps = pp_rewrite(2, Fraction(3, 4), trace=True)
        self.assertEqual(str(report.word), '(1,0,0,0,0,1,1,0,0,2,0,0)')
        self.assertEqual(report.kind, ExpansionKind.PURELY_PERIODIC)
        # The delta-digit 3 = m + 1 appears once per period of (2,1,1,2,3,0).
        self.assertEqual([step.rule for step in steps if step.rule == 'i'], ['i', 'i'])
        self.assertTrue(all(step.value_preserved for step in steps))
        return

    def test_zero(self):
        report = pp_rewrite(3, 0)
        self.assertEqual(report.kind, ExpansionKind.FINITE)
        self.assertEqual(report.word, DigitWord())
        return

    def test_out_of_range(self):
        with self.assertRaises(OutOfRange):
            pp_rewrite(2, 1)
        with self.assertRaises(OutOfRange):
            pp_rewrite(2, Fraction(-1, 3))
        return

    def test_matches_greedy(self):
        for m in range(1, 4):
            base = pp_family(m)
            for x in farey_sequence(12):
                with self.subTest(m=m, x=x):
                    self.assertEqual(pp_rewrite(m, x).word, greedy_expand(base, x).word)
        return

    def test_malformed_delta_expansion(self):
        """ The rewriting refuses delta-expansions that break the family's digit rules. """
        periods = [
            (5, 0),  # a delta-digit above m + 1
            (3, 1, 0),  # m + 1 not followed by 0
            (1, 2),  # a period not ending in 0
        ]
        for period in periods:
            fake = ExpansionReport(DigitWord((), period), ExpansionKind.PURELY_PERIODIC, 2)
            with self.subTest(period=period):
                with mock.patch('altbase.analysis.ppfamily.greedy_expand', return_value=fake):
                    with self.assertRaises(RewriteFailed):
                        pp_rewrite(2, Fraction(1, 3))
        return

    def test_stalled_rewriting(self):
        with mock.patch('altbase.analysis.ppfamily._leftmost_forbidden', return_value=('A', 0)):
            with self.assertRaises(RewriteFailed):
                pp_rewrite(2, Fraction(3, 4))
        return

    def test_value_changing_step(self):
        # Every block string gets a fresh value, so each step looks value-changing.
        with mock.patch('altbase.analysis.ppfamily._blocks_value', side_effect=itertools.count()):
            with self.assertRaises(RewriteFailed):
                pp_rewrite(2, Fraction(3, 4))
        return


class Test_half_expansion_formula(unittest.TestCase):
    def test_formula(self):
        self.assertEqual(str(half_expansion_formula(2)), '1(0,0,0,1,0,2)')
        self.assertEqual(str(half_expansion_formula(3)), '1(0,2)')
        for m in range(1, 9):
            with self.subTest(m=m):
                report = greedy_expand(shift(pp_family(m), 2), Fraction(1, 2))
                self.assertEqual(report.word, half_expansion_formula(m))
        return

    def test_bad_parameter(self):
        with self.assertRaises(ValueError):
            half_expansion_formula(0)
        return


class Test_farey_sequence(unittest.TestCase):
    def test_order_five(self):
        expected = ['1/5', '1/4', '1/3', '2/5', '1/2', '3/5', '2/3', '3/4', '4/5']
        self.assertEqual(list(farey_sequence(5)), [Fraction(x) for x in expected])
        return

    def test_count(self):
        # |F_n| - 2 = sum_{q <= n} phi(q) - 1
        self.assertEqual(len(list(farey_sequence(10))), 31)
        return


class Test_gamma_scan(unittest.TestCase):
    def test_pure_periodicity(self):
        """ Every rational with q <= 40 is purely periodic in pp_family(m). """
        for m in range(1, 4):
            with self.subTest(m=m):
                base = pp_family(m)
                report = gamma_scan(base, 40)
                self.assertIsNone(report.first_failure)
                self.assertIsNone(report.undecided)
                self.assertEqual(report.verified_lower, 1)
                self.assertTrue((report.table['kind'] == 'purely_periodic').all())
                for x in farey_sequence(40):
                    expansion = greedy_expand(base, x)
                    self.assertTrue(pure_periodic_identity_check(base, x, expansion))
        return

    def test_second_shift(self):
        base = shift(pp_family(2), 2)
        report = gamma_scan(base, 200)
        x, failure = report.first_failure
        self.assertTrue(0.39 <= float(x) <= 0.44)
        self.assertNotEqual(failure.kind, ExpansionKind.PURELY_PERIODIC)
        self.assertEqual(report.verified_lower, x)
        self.assertIsInstance(report.table, pd.DataFrame)
        self.assertEqual(
            list(report.table.columns),
            ['numerator', 'denominator', 'value', 'kind', 'preperiod_length', 'period_length'],
        )
        half = greedy_expand(base, Fraction(1, 2))
        self.assertEqual(half.kind, ExpansionKind.EVENTUALLY_PERIODIC)
        return

    def test_bad_qmax(self):
        with self.assertRaises(ValueError):
            gamma_scan(pp_family(2), 1)
        return

    def test_workers(self):
        base = shift(pp_family(2), 2)
        serial = gamma_scan(base, 15, workers=1, stop_at_failure=False)
        parallel = gamma_scan(base, 15, workers=2, stop_at_failure=False)
        self.assertEqual(serial.first_failure, parallel.first_failure)
        self.assertTrue(serial.table.equals(parallel.table))
        return

    def test_truncated_scan_warns(self):
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter('always')
            report = gamma_scan(pp_family(2), 10, cap=2)
        self.assertIsNotNone(report.undecided)
        self.assertEqual(report.verified_lower, report.undecided)
        self.assertTrue(any('scan aborted' in str(w.message) for w in caught))
        return

    def test_profile(self):
        reports = gamma_profile(pp_family(2), 12)
        self.assertEqual(len(reports), 2)
        self.assertIsNone(reports[0].first_failure)
        return

    def test_plot_gamma_scan(self):
        report = gamma_scan(shift(pp_family(2), 2), 30, stop_at_failure=False)
        ax = plot_gamma_scan(report)
        self.assertEqual(ax.get_xlim(), (0, 1))
        plt.close('all')
        return


class Test_property_suite(unittest.TestCase):
    def test_random_rationals(self):
        """
        Greedy expansions of random rationals are admissible, evaluate back
        to the rational, and agree with the rewriting in the unshifted base.
        """
        rng = np.random.default_rng(2021)
        bases = [(m, i, shift(pp_family(m), i)) for m in (1, 2, 3) for i in (1, 2)]
        for n in range(500):
            m, i, base = bases[n % len(bases)]
            q = int(rng.integers(2, 30))
            x = Fraction(int(rng.integers(0, q)), q)
            with self.subTest(m=m, shift=i, x=x):
                report = greedy_expand(base, x)
                self.assertNotEqual(report.kind, ExpansionKind.TRUNCATED)
                self.assertEqual(is_admissible(base, report.word).kind, VerdictKind.ADMISSIBLE)
                self.assertEqual(value_of(base, report), x)
                if i == 1:
                    rewritten, steps = pp_rewrite(m, x, trace=True)
                    self.assertEqual(rewritten.word, report.word)
                    self.assertTrue(all(step.value_preserved for step in steps))
        return


if __name__ == '__main__':
    unittest.main()
