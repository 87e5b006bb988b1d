"""
Admissibility of eventually periodic digit words: a word x_1 x_2 ... is the
greedy expansion of some x in [0, 1) if and only if every suffix
x_i x_(i+1) ... is nonnegative and lexicographically smaller than the
quasi-greedy expansion of 1 in the shifted base B^(i).
"""
import collections
import enum
import functools
import math
from typing import Optional, Tuple

import altbase
from altbase.numeration.base import AlternateBase, shift
from altbase.numeration.expansion import DigitWord, ExpansionKind, ExpansionReport, quasi_greedy_one


class VerdictKind(enum.Enum):
    ADMISSIBLE = 'admissible'
    NOT_ADMISSIBLE = 'not_admissible'
    UNDECIDED = 'undecided'


# position is the 1-based index of the offending suffix, None if admissible.
Verdict = collections.namedtuple('Verdict', ['kind', 'position'])


def lex_compare(u: DigitWord, w: DigitWord) -> int:
    """
    Exact lexicographic comparison of two eventually periodic words, -1, 0
    or +1. Two such words agree everywhere once they agree on the longer
    preperiod plus the lcm of the periods.
    """
    n = max(len(u.preperiod), len(w.preperiod))
    n += math.lcm(max(len(u.period), 1), max(len(w.period), 1))
    for a, b in zip(u.prefix(n), w.prefix(n)):
        if a != b:
            return -1 if a < b else 1
    return 0


def _compare_truncated(u: DigitWord, prefix: Tuple[int, ...], depth: int) -> Optional[int]:
    """ Compares u against a finite prefix of an unknown word, None if undecided. """
    for k, b in enumerate(prefix[:depth]):
        a = u.digit(k)
        if a != b:
            return -1 if a < b else 1
    return None


@functools.lru_cache(maxsize=128)
def quasi_greedy_words(base: AlternateBase, depth: int, cap: int) -> Tuple[ExpansionReport, ...]:
    """ d*_{B^(i)}(1) for i = 1, ..., p. """
    return tuple(quasi_greedy_one(shift(base, i), depth, cap) for i in range(1, base.period + 1))


def is_admissible(base: AlternateBase, w: DigitWord, depth: int = None, cap: int = None) -> Verdict:
    """
    Decides whether w is the greedy expansion of a number in [0, 1).

    Only finitely many (suffix, shift) pairs exist for an eventually periodic
    word, so suffixes starting in the preperiod and in the first p periods
    are checked.

    Parameters
    ----------
    base: AlternateBase
        The base.
    w: DigitWord
        The candidate word.
    depth: int, optional
        The comparison depth when a quasi-greedy word is only known as a
        truncated prefix. Defaults to altbase.config['DEPTH'].
    cap: int, optional
        The step cap for the expansions of 1. Defaults to altbase.config['CAP'].

    Returns
    -------
    Verdict
        ADMISSIBLE with position None, NOT_ADMISSIBLE with the 1-based start
        of the first offending suffix, or UNDECIDED with the first suffix
        whose comparison did not resolve within depth digits. A definite
        NOT_ADMISSIBLE takes precedence over UNDECIDED.

    Example
    -------
    | from altbase.numeration.base import pp_family
    | from altbase.numeration.expansion import DigitWord
    |
    | w = DigitWord((), (1, 0, 0, 0, 0, 1, 1, 0, 0, 2, 0, 0))
    | is_admissible(pp_family(2), w).kind  # VerdictKind.ADMISSIBLE
    """
    if depth is None:
        depth = altbase.config['DEPTH']
    if cap is None:
        cap = altbase.config['CAP']
    p = base.period
    n_positions = len(w.preperiod) + max(len(w.period), 1) * p
    for k in range(n_positions):
        if w.digit(k) < 0:
            return Verdict(VerdictKind.NOT_ADMISSIBLE, k + 1)

    references = quasi_greedy_words(base, depth, cap)
    undecided = None
    for k in range(n_positions):
        reference = references[k % p]
        suffix = w.suffix(k)
        if reference.kind == ExpansionKind.TRUNCATED:
            result = _compare_truncated(suffix, reference.word.preperiod, depth)
            if result is None:
                if undecided is None:
                    undecided = k + 1
                continue
        else:
            result = lex_compare(suffix, reference.word)
        if result >= 0:
            return Verdict(VerdictKind.NOT_ADMISSIBLE, k + 1)
    if undecided is not None:
        return Verdict(VerdictKind.UNDECIDED, undecided)
    return Verdict(VerdictKind.ADMISSIBLE, None)
