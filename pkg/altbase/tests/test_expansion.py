"""
Tests altbase/numeration/expansion.py
"""
import unittest
from fractions import Fraction

import numpy as np

from altbase.arith.numberfield import floor_of
from altbase.errors import DigitNotInAlphabet, DigitOutOfRange, NonPeriodicWord, OutOfRange
from altbase.numeration.base import pp_family, shift, single_base
from altbase.numeration.expansion import (
    DeltaWord,
    DigitWord,
    ExpansionKind,
    block_decode,
    block_encode,
    digit_bounds,
    expand_nonneg,
    expand_signed,
    expansion_of_one,
    greedy_expand,
    is_B_integer,
    quasi_greedy_one,
    replay_cycle,
    value_of,
    value_of_pointed,
)

THREE_QUARTERS = DigitWord((), (1, 0, 0, 0, 0, 1, 1, 0, 0, 2, 0, 0))


class Test_digit_word(unittest.TestCase):
    def test_str(self):
        self.assertEqual(str(THREE_QUARTERS), '(1,0,0,0,0,1,1,0,0,2,0,0)')
        self.assertEqual(str(DigitWord((2, 0), (0, 1))), '2,0(0,1)')
        self.assertEqual(str(DigitWord((1, 1), ())), '1,1')
        self.assertEqual(str(DigitWord()), '')
        return

    def test_zero_period_is_finite(self):
        self.assertTrue(DigitWord((1,), (0, 0)).is_finite)
        self.assertEqual(DigitWord((1,), (0, 0)), DigitWord((1,), ()))
        return

    def test_canonical(self):
        self.assertEqual(DigitWord((1, 0), (1, 0)).canonical(), DigitWord((), (1, 0)))
        self.assertEqual(DigitWord((), (1, 0, 1, 0)).canonical(), DigitWord((), (1, 0)))
        self.assertEqual(DigitWord((2, 0, 0), ()).canonical(), DigitWord((2,), ()))
        self.assertEqual(DigitWord((2, 0, 0), (1, 0, 0)).canonical(), DigitWord((2,), (0, 0, 1)))
        self.assertEqual(DigitWord((1,), (0, 0)).canonical(), DigitWord((1,), ()))
        return

    def test_prefix_suffix(self):
        w = DigitWord((2, 0), (0, 1))
        self.assertEqual(w.prefix(6), (2, 0, 0, 1, 0, 1))
        self.assertEqual(w.suffix(1), DigitWord((0,), (0, 1)))
        self.assertEqual(w.suffix(3), DigitWord((), (1, 0)))
        self.assertEqual(DigitWord((1, 2), ()).suffix(5), DigitWord())
        return

    def test_aligned(self):
        w = DigitWord((5,), (1, 2, 3)).aligned(2)
        self.assertEqual(len(w.preperiod), 2)
        self.assertEqual(len(w.period), 6)
        self.assertEqual(w.prefix(20), DigitWord((5,), (1, 2, 3)).prefix(20))
        return


class Test_greedy_expand(unittest.TestCase):
    def setUp(self):
        self.base = pp_family(2)
        return

    def test_three_quarters(self):
        report = greedy_expand(self.base, Fraction(3, 4))
        self.assertEqual(report.word, THREE_QUARTERS)
        self.assertEqual(report.kind, ExpansionKind.PURELY_PERIODIC)
        self.assertEqual(report.steps_used, 12)
        self.assertEqual((report.cycle_start, report.cycle_length), (0, 12))
        self.assertTrue(replay_cycle(self.base, report, Fraction(3, 4)))
        return

    def test_renyi_expansion(self):
        """ The single base over x^2 - 3x - 1. """
        report = greedy_expand(single_base(self.base.field), Fraction(3, 4))
        self.assertEqual(str(report.word), '(2,1,1,2,3,0)')
        return

    def test_zero(self):
        report = greedy_expand(self.base, 0)
        self.assertEqual(report.kind, ExpansionKind.FINITE)
        self.assertEqual(report.word, DigitWord())
        self.assertEqual(report.steps_used, 0)
        return

    def test_out_of_range(self):
        with self.assertRaises(OutOfRange):
            greedy_expand(self.base, 1)
        with self.assertRaises(OutOfRange):
            greedy_expand(self.base, Fraction(-1, 2))
        return

    def test_truncated(self):
        report = greedy_expand(self.base, Fraction(3, 4), cap=3)
        self.assertEqual(report.kind, ExpansionKind.TRUNCATED)
        self.assertEqual(report.word.preperiod, (1, 0, 0))
        self.assertIsNotNone(report.remainder_at_cutoff)
        with self.assertRaises(NonPeriodicWord):
            value_of(self.base, report)
        return

    def test_field_element_input(self):
        base = self.base
        x = 1 / base.betas[0]
        report = greedy_expand(base, x)
        self.assertEqual(report.word, DigitWord((1,), ()))
        return

    def test_half_in_second_shift(self):
        report = greedy_expand(shift(self.base, 2), Fraction(1, 2))
        self.assertEqual(str(report.word), '1(0,0,0,1,0,2)')
        self.assertEqual(report.kind, ExpansionKind.EVENTUALLY_PERIODIC)
        return

    def test_bad_arguments(self):
        with self.assertRaises(ValueError):
            greedy_expand(self.base, Fraction(1, 2), cap=0)
        with self.assertRaises(ValueError):
            quasi_greedy_one(self.base, depth=0)
        return


class Test_random_greedy_expansions(unittest.TestCase):
    """ Checks the greedy digits of random rationals against their defining inequalities. """

    def setUp(self):
        self.rng = np.random.default_rng(13)
        self.bases = (pp_family(2), shift(pp_family(3), 2))
        self.depth = 8
        return

    def random_fractions(self, n):
        fractions = []
        for _ in range(n):
            q = int(self.rng.integers(2, 30))
            fractions.append(Fraction(int(self.rng.integers(0, q)), q))
        return fractions

    def test_bumping_a_digit_overshoots(self):
        for base in self.bases:
            bounds = digit_bounds(base)
            for x in self.random_fractions(10):
                word = greedy_expand(base, x, cap=200).word
                for k in range(self.depth):
                    prefix = word.prefix(k + 1)
                    with self.subTest(x=x, k=k):
                        self.assertLessEqual(value_of(base, DigitWord(prefix, ())), x)
                        if prefix[-1] < bounds[k % base.period]:
                            bumped = prefix[:-1] + (prefix[-1] + 1,)
                            self.assertGreater(value_of(base, DigitWord(bumped, ())), x)
        return

    def test_remainders_stay_in_unit_interval(self):
        for base in self.bases:
            for x in self.random_fractions(10):
                word = greedy_expand(base, x, cap=200).word
                scale = base.field.one()
                for k in range(1, self.depth + 1):
                    scale = scale * base.beta(k)
                    remainder = (x - value_of(base, DigitWord(word.prefix(k), ()))) * scale
                    with self.subTest(x=x, k=k):
                        self.assertEqual(floor_of(remainder), 0)
        return


class Test_expansions_of_one(unittest.TestCase):
    def test_family(self):
        for m in range(1, 9):
            with self.subTest(m=m):
                base = pp_family(m)
                second = shift(base, 2)
                self.assertEqual(expansion_of_one(base).word, DigitWord((1, 1), ()))
                self.assertEqual(expansion_of_one(second).word, DigitWord((m, 0, 1), ()))
                self.assertEqual(quasi_greedy_one(base).word, DigitWord((), (1, 0)))
                self.assertEqual(quasi_greedy_one(second).word, DigitWord((m, 0), (0, 1)))
        return

    def test_truncated_quasi_greedy(self):
        report = quasi_greedy_one(pp_family(2), depth=5, cap=1)
        self.assertEqual(report.kind, ExpansionKind.TRUNCATED)
        self.assertEqual(report.word.preperiod, (1,))
        return


class Test_value_of(unittest.TestCase):
    def setUp(self):
        self.base = pp_family(2)
        return

    def test_three_quarters(self):
        self.assertEqual(value_of(self.base, THREE_QUARTERS), Fraction(3, 4))
        self.assertEqual(value_of(self.base, DigitWord((0,), ())), 0)
        return

    def test_round_trip(self):
        for base in (self.base, shift(self.base, 2), pp_family(1)):
            for x in (Fraction(1, 3), Fraction(2, 7), Fraction(5, 9), Fraction(1, 2)):
                with self.subTest(base=base.period, x=x):
                    self.assertEqual(value_of(base, greedy_expand(base, x)), x)
        return

    def test_digit_out_of_range(self):
        with self.assertRaises(DigitOutOfRange):
            value_of(self.base, DigitWord((2,), ()))
        with self.assertRaises(DigitOutOfRange):
            value_of(self.base, DigitWord((), (1, 3)))
        with self.assertRaises(DigitOutOfRange):
            value_of(self.base, DigitWord((-1,), ()))
        return


class Test_block_codec(unittest.TestCase):
    def setUp(self):
        self.base = pp_family(2)
        return

    def test_encode(self):
        delta = self.base.delta
        dw = block_encode(self.base, THREE_QUARTERS)
        self.assertEqual(dw.preperiod, ())
        self.assertEqual(list(dw.period), [delta - 1, 0, 1, delta - 1, 2, 0])
        return

    def test_round_trip(self):
        for w in (THREE_QUARTERS, DigitWord((1,), (2, 0)), DigitWord((0, 1, 1), ())):
            with self.subTest(w=str(w)):
                self.assertEqual(block_decode(self.base, block_encode(self.base, w)), w.canonical())
        return

    def test_random_round_trip(self):
        rng = np.random.default_rng(3)
        bounds = digit_bounds(self.base)
        for _ in range(100):
            n, s = int(rng.integers(0, 7)), int(rng.integers(0, 5))
            digits = [int(rng.integers(0, bounds[k % 2] + 1)) for k in range(n + s)]
            w = DigitWord(tuple(digits[:n]), tuple(digits[n:]))
            with self.subTest(w=str(w)):
                self.assertEqual(block_decode(self.base, block_encode(self.base, w)), w.canonical())
        return

    def test_not_in_alphabet(self):
        with self.assertRaises(DigitNotInAlphabet):
            block_decode(self.base, DeltaWord((self.base.field.element(7),), ()))
        return


class Test_nonnegative_expansions(unittest.TestCase):
    def setUp(self):
        self.base = pp_family(2)
        return

    def test_one(self):
        w = expand_nonneg(self.base, 1)
        self.assertEqual(w.integer_part, (0, 1))
        self.assertEqual(w.fractional_part, DigitWord())
        self.assertEqual(str(w), '0,1.')
        self.assertEqual(value_of_pointed(self.base, w), 1)
        return

    def test_round_trip(self):
        for x in (Fraction(7, 2), Fraction(10), Fraction(1, 5)):
            with self.subTest(x=x):
                w = expand_nonneg(self.base, x)
                self.assertEqual(value_of_pointed(self.base, w), x)
        return

    def test_signed(self):
        s, w = expand_signed(self.base, -1)
        self.assertEqual(s, -1)
        self.assertEqual(w, expand_nonneg(self.base, 1))
        with self.assertRaises(OutOfRange):
            expand_nonneg(self.base, -1)
        return

    def test_B_integers(self):
        self.assertTrue(is_B_integer(self.base, 1))
        self.assertTrue(is_B_integer(self.base, self.base.delta))
        self.assertFalse(is_B_integer(self.base, Fraction(1, 2)))
        return


if __name__ == '__main__':
    unittest.main()
