"""
Greedy and quasi-greedy expansions in an alternate base, exact periodicity
classification by remainder cycle detection, exact value reconstruction and
the block codec between B-words and delta-words over the alphabet D.
"""
import enum
import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple, Union

import altbase
from altbase.arith.numberfield import FieldElement, floor_of, sign_of
from altbase.errors import (
    DigitNotInAlphabet,
    DigitOutOfRange,
    NonPeriodicWord,
    OutOfRange,
    Undecided,
)
from altbase.numeration.base import (
    AlternateBase,
    digit_alphabet,
    digit_vector,
    max_digit,
    shift,
)

NORMALIZATION = 'shortest preperiod, primitive period'


@dataclass(frozen=True)
class DigitWord:
    """
    An eventually periodic digit sequence preperiod (period)^omega. An empty
    period means the word is finite, i.e. it ends in 0^omega.
    """

    preperiod: Tuple[int, ...] = ()
    period: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'preperiod', tuple(int(d) for d in self.preperiod))
        period = tuple(int(d) for d in self.period)
        if not any(period):
            period = ()
        object.__setattr__(self, 'period', period)

    @property
    def is_finite(self) -> bool:
        return not self.period

    def digit(self, k: int) -> int:
        """ The digit at 0-based position k. """
        n = len(self.preperiod)
        if k < n:
            return self.preperiod[k]
        if not self.period:
            return 0
        return self.period[(k - n) % len(self.period)]

    def digits(self) -> Iterator[int]:
        """ Iterates over the (infinite) digit sequence. """
        k = 0
        while True:
            yield self.digit(k)
            k += 1

    def prefix(self, n: int) -> Tuple[int, ...]:
        """ The first n digits. """
        return tuple(self.digit(k) for k in range(n))

    def suffix(self, n: int) -> 'DigitWord':
        """ The word with its first n digits removed. """
        if n <= len(self.preperiod):
            return DigitWord(self.preperiod[n:], self.period)
        if not self.period:
            return DigitWord()
        k = (n - len(self.preperiod)) % len(self.period)
        return DigitWord((), self.period[k:] + self.period[:k])

    def aligned(self, p: int) -> 'DigitWord':
        """
        The same sequence written with a preperiod and a period whose lengths
        are multiples of p.
        """
        r = -(-len(self.preperiod) // p) * p
        if not self.period:
            return DigitWord(self.preperiod + (0,) * (r - len(self.preperiod)), ())
        s = len(self.period) * p // math.gcd(len(self.period), p)
        return DigitWord(self.prefix(r), tuple(self.digit(k) for k in range(r, r + s)))

    def canonical(self) -> 'DigitWord':
        """
        The normal form: trailing zeros dropped from finite words, otherwise
        the shortest preperiod and a primitive period.
        """
        pre = list(self.preperiod)
        if not any(self.period):
            while pre and pre[-1] == 0:
                pre.pop()
            return DigitWord(tuple(pre), ())
        per = list(self.period)
        while pre and pre[-1] == per[-1]:
            per = [per[-1]] + per[:-1]
            pre.pop()
        n = len(per)
        for s in range(1, n + 1):
            if n % s == 0 and per == per[:s] * (n // s):
                per = per[:s]
                break
        return DigitWord(tuple(pre), tuple(per))

    def __str__(self):
        out = ','.join(str(d) for d in self.preperiod)
        if self.period:
            out += '(' + ','.join(str(d) for d in self.period) + ')'
        return out


class ExpansionKind(enum.Enum):
    FINITE = 'finite'
    PURELY_PERIODIC = 'purely_periodic'
    EVENTUALLY_PERIODIC = 'eventually_periodic'
    TRUNCATED = 'truncated'


@dataclass(frozen=True)
class ExpansionReport:
    """
    The outcome of an expansion run.

    word: the canonical digit word. For TRUNCATED runs it is the finite
        prefix of steps_used digits that was computed.
    kind: the periodicity class of the word.
    steps_used: the number of greedy steps performed.
    remainder_at_cutoff: the exact remainder after the last step of a
        TRUNCATED run.
    cycle_start, cycle_length: positions of the first repeated greedy state,
        before canonicalization.
    """

    word: DigitWord
    kind: ExpansionKind
    steps_used: int
    remainder_at_cutoff: Optional[FieldElement] = None
    cycle_start: Optional[int] = None
    cycle_length: Optional[int] = None
    normalization: str = NORMALIZATION


@dataclass(frozen=True)
class PointedWord:
    """
    d_B(x) = integer_part . fractional_part for x >= 0. The integer part has
    a length that is a multiple of p.
    """

    integer_part: Tuple[int, ...]
    fractional_part: DigitWord
    kind: ExpansionKind

    def __str__(self):
        return ','.join(str(d) for d in self.integer_part) + '.' + str(self.fractional_part)


@dataclass(frozen=True)
class DeltaWord:
    """ An eventually periodic word over the alphabet D of delta-digits. """

    preperiod: Tuple[FieldElement, ...] = ()
    period: Tuple[FieldElement, ...] = ()


def kind_of(word: DigitWord) -> ExpansionKind:
    """ The periodicity class of a canonical word. """
    if word.is_finite:
        return ExpansionKind.FINITE
    if not word.preperiod:
        return ExpansionKind.PURELY_PERIODIC
    return ExpansionKind.EVENTUALLY_PERIODIC


def _greedy_run(base: AlternateBase, r: FieldElement, cap: int) -> ExpansionReport:
    """
    The greedy recurrence a_k = floor(beta_k r_{k-1}), r_k = beta_k r_{k-1} - a_k
    started at r. Stops at a zero remainder, at the first repeated
    (remainder, phase) state, or after cap steps.
    """
    p = base.period
    digits: List[int] = []
    seen = {}
    for k in range(cap + 1):
        if r.is_zero:
            word = DigitWord(tuple(digits), ()).canonical()
            return ExpansionReport(word, ExpansionKind.FINITE, k)
        state = (r.coords, k % p)
        if state in seen:
            start = seen[state]
            word = DigitWord(tuple(digits[:start]), tuple(digits[start:])).canonical()
            return ExpansionReport(word, kind_of(word), k, None, start, k - start)
        if k == cap:
            break
        seen[state] = k
        t = base.betas[k % p] * r
        a = floor_of(t)
        digits.append(a)
        r = t - a
    return ExpansionReport(DigitWord(tuple(digits), ()), ExpansionKind.TRUNCATED, cap, r)


def _as_element(base: AlternateBase, x) -> FieldElement:
    if isinstance(x, FieldElement):
        return base.field.element(x)
    return base.field.element(Fraction(x))


def greedy_expand(base: AlternateBase, x, cap: int = None) -> ExpansionReport:
    """
    The greedy B-expansion of 0 <= x < 1.

    Parameters
    ----------
    base: AlternateBase
        The base.
    x: FieldElement, Fraction or int
        The number to expand.
    cap: int, optional
        The maximal number of greedy steps. Defaults to altbase.config['CAP'].

    Returns
    -------
    ExpansionReport
        FINITE if a remainder hits 0, PURELY_PERIODIC or EVENTUALLY_PERIODIC
        if a (remainder, phase) state repeats, TRUNCATED otherwise.

    Raises
    ------
    OutOfRange
        If x < 0 or x >= 1.

    Example
    -------
    | from fractions import Fraction
    | from altbase.numeration.base import pp_family
    |
    | report = greedy_expand(pp_family(2), Fraction(3, 4))
    | str(report.word)  # '(1,0,0,0,0,1,1,0,0,2,0,0)'
    """
    if cap is None:
        cap = altbase.config['CAP']
    if cap < 1:
        raise ValueError(f'cap must be >= 1, got {cap}.')
    x = _as_element(base, x)
    if sign_of(x) < 0 or sign_of(x - 1) >= 0:
        raise OutOfRange(f'The greedy expansion needs 0 <= x < 1, got x = {x}.')
    return _greedy_run(base, x, cap)


def expansion_of_one(base: AlternateBase, cap: int = None) -> ExpansionReport:
    """ The greedy expansion d_B(1), the same recurrence started at r_0 = 1. """
    if cap is None:
        cap = altbase.config['CAP']
    return _greedy_run(base, base.field.one(), cap)


def replay_cycle(base: AlternateBase, report: ExpansionReport, x) -> bool:
    """
    Re-runs the greedy recurrence from the detected cycle start and checks
    that the remainder comes back after cycle_length steps while emitting the
    period digits of report.word.
    """
    if report.cycle_start is None:
        return report.kind in (ExpansionKind.FINITE, ExpansionKind.TRUNCATED)
    p = base.period
    r = _as_element(base, x)
    for k in range(report.cycle_start):
        t = base.betas[k % p] * r
        r = t - floor_of(t)
    start = r
    replayed = []
    for k in range(report.cycle_start, report.cycle_start + report.cycle_length):
        t = base.betas[k % p] * r
        a = floor_of(t)
        replayed.append(a)
        r = t - a
    expected = [
        report.word.digit(k)
        for k in range(report.cycle_start, report.cycle_start + report.cycle_length)
    ]
    return r == start and replayed == expected


def quasi_greedy_one(base: AlternateBase, depth: int = None, cap: int = None) -> ExpansionReport:
    """
    The quasi-greedy expansion d*_B(1).

    If d_{B^(i)}(1) is infinite it is its own quasi-greedy expansion. If it is
    finite, t_1 ... t_m with t_m != 0, then d*_{B^(i)}(1) is
    t_1 ... t_{m-1} (t_m - 1) followed by d*_{B^(i+m)}(1). The recursion over
    shift indices closes into an eventually periodic word as soon as a shift
    index recurs.

    Parameters
    ----------
    base: AlternateBase
        The base.
    depth: int, optional
        The prefix length returned when an expansion of 1 does not close
        within cap. Defaults to altbase.config['DEPTH'].
    cap: int, optional
        The step cap of each expansion of 1. Defaults to altbase.config['CAP'].

    Returns
    -------
    ExpansionReport
        The canonical quasi-greedy word with its kind, or a TRUNCATED report
        holding a prefix of at most depth digits.
    """
    if depth is None:
        depth = altbase.config['DEPTH']
    if depth < 1:
        raise ValueError(f'depth must be >= 1, got {depth}.')
    p = base.period
    out: List[int] = []
    visited = {}
    steps = 0
    i = 0
    while i not in visited:
        visited[i] = len(out)
        report = expansion_of_one(shift(base, i + 1), cap)
        steps += report.steps_used
        if report.kind == ExpansionKind.TRUNCATED:
            prefix = tuple(out) + report.word.preperiod
            return ExpansionReport(
                DigitWord(prefix[:depth], ()),
                ExpansionKind.TRUNCATED,
                steps,
                report.remainder_at_cutoff,
            )
        if report.kind != ExpansionKind.FINITE:
            word = DigitWord(tuple(out) + report.word.preperiod, report.word.period).canonical()
            return ExpansionReport(word, kind_of(word), steps)
        t = list(report.word.preperiod)
        t[-1] -= 1
        out.extend(t)
        i = (i + len(t)) % p
    start = visited[i]
    word = DigitWord(tuple(out[:start]), tuple(out[start:])).canonical()
    return ExpansionReport(word, kind_of(word), steps, None, start, len(out) - start)


@functools.lru_cache(maxsize=128)
def digit_bounds(base: AlternateBase) -> Tuple[int, ...]:
    """ The largest digit allowed at each phase, ceil(beta_i) - 1. """
    return tuple(max_digit(beta) for beta in base.betas)


def _check_digits(base: AlternateBase, word: DigitWord) -> None:
    bounds = digit_bounds(base)
    p = base.period
    # Every (digit, phase) pair occurs within the preperiod plus p periods.
    for k in range(len(word.preperiod) + len(word.period) * p):
        d = word.digit(k)
        if d < 0 or d > bounds[k % p]:
            raise DigitOutOfRange(f'Digit {d} at position {k + 1} is outside 0..{bounds[k % p]}.')


def _block_values(base: AlternateBase, digits: Sequence[int]) -> List[FieldElement]:
    v = digit_vector(base)
    p = base.period
    values = []
    for j in range(0, len(digits), p):
        value = base.field.zero()
        for a, weight in zip(digits[j : j + p], v):
            if a:
                value = value + weight * a
        values.append(value)
    return values


def _horner(delta: FieldElement, values: Sequence[FieldElement]) -> FieldElement:
    """ sum_k values[k] * delta^(n - 1 - k) """
    total = delta.field.zero()
    for value in values:
        total = total * delta + value
    return total


def value_of(base: AlternateBase, w: Union[DigitWord, ExpansionReport]) -> FieldElement:
    """
    The exact value sum_k x_k / (beta_1 ... beta_k) of an eventually periodic
    word. With the word aligned to blocks of p digits (r preperiod blocks, s
    period blocks) and block digits d_k in D,

        x delta^r (delta^s - 1) = (delta^s - 1) sum_{k<=r} d_k delta^(r-k)
                                  + sum_{k<=s} d_(r+k) delta^(s-k).

    Raises
    ------
    NonPeriodicWord
        If w is a TRUNCATED ExpansionReport.
    DigitOutOfRange
        If a digit is negative or not below its beta.
    """
    if isinstance(w, ExpansionReport):
        if w.kind == ExpansionKind.TRUNCATED:
            raise NonPeriodicWord('A truncated expansion has no exact value.')
        w = w.word
    _check_digits(base, w)
    aligned = w.aligned(base.period)
    delta = base.delta
    head = _horner(delta, _block_values(base, aligned.preperiod))
    r = len(aligned.preperiod) // base.period
    scale = delta**r
    if aligned.is_finite:
        return head / scale
    tail = _horner(delta, _block_values(base, aligned.period))
    s = len(aligned.period) // base.period
    ds = delta**s - 1
    return (ds * head + tail) / (scale * ds)


def block_encode(base: AlternateBase, w: DigitWord) -> DeltaWord:
    """
    Groups the digits of w into blocks of p and replaces every block
    (x_1, ..., x_p) by the delta-digit (x_1, ..., x_p).v in D.
    """
    aligned = w.aligned(base.period)
    return DeltaWord(
        tuple(_block_values(base, aligned.preperiod)),
        tuple(_block_values(base, aligned.period)),
    )


def block_decode(base: AlternateBase, dw: DeltaWord) -> DigitWord:
    """
    Replaces every delta-digit by its block of p digits and returns the
    canonical word.

    Raises
    ------
    DigitNotInAlphabet
        If a delta-digit is not an element of D.
    """
    inverse = digit_alphabet(base).inverse

    def unblock(values):
        digits = []
        for value in values:
            try:
                digits.extend(inverse[value])
            except KeyError as err:
                raise DigitNotInAlphabet(f'{value} is not a digit of the alphabet D.') from err
        return tuple(digits)

    return DigitWord(unblock(dw.preperiod), unblock(dw.period)).canonical()


def expand_nonneg(base: AlternateBase, x, cap: int = None) -> PointedWord:
    """
    The expansion d_B(x) = a_1 ... a_pk . a_(pk+1) ... of x >= 0, where k is
    the least integer with x / delta^k < 1 and a is the greedy expansion of
    x / delta^k.

    Raises
    ------
    OutOfRange
        If x < 0.
    """
    x = _as_element(base, x)
    if sign_of(x) < 0:
        raise OutOfRange(f'expand_nonneg needs x >= 0, got x = {x}.')
    delta_inv = base.delta.inverse()
    z, k = x, 0
    while sign_of(z - 1) >= 0:
        z = z * delta_inv
        k += 1
    report = greedy_expand(base, z, cap)
    n = k * base.period
    integer_part = report.word.prefix(n)
    while integer_part[: base.period] == (0,) * base.period and integer_part:
        integer_part = integer_part[base.period :]
    if report.kind == ExpansionKind.TRUNCATED:
        fractional = DigitWord(report.word.preperiod[n:], ())
        return PointedWord(integer_part, fractional, ExpansionKind.TRUNCATED)
    fractional = report.word.suffix(n).canonical()
    return PointedWord(integer_part, fractional, kind_of(fractional))


def value_of_pointed(base: AlternateBase, w: PointedWord) -> FieldElement:
    """ The exact value of integer_part . fractional_part. """
    if w.kind == ExpansionKind.TRUNCATED:
        raise NonPeriodicWord('A truncated expansion has no exact value.')
    if len(w.integer_part) % base.period != 0:
        raise ValueError(
            f'The integer part length {len(w.integer_part)} is not a multiple of '
            f'p = {base.period}.'
        )
    k = len(w.integer_part) // base.period
    whole = DigitWord(w.integer_part + w.fractional_part.preperiod, w.fractional_part.period)
    return value_of(base, whole) * base.delta**k


def expand_signed(base: AlternateBase, x, cap: int = None) -> Tuple[int, PointedWord]:
    """ The sign of x and the expansion of |x|, for any x in Q(delta). """
    x = _as_element(base, x)
    s = sign_of(x)
    return s, expand_nonneg(base, -x if s < 0 else x, cap)


def is_B_integer(base: AlternateBase, x, cap: int = None) -> bool:
    """
    True if d_B(x) has only zeros after the radix point.

    Raises
    ------
    Undecided
        If the fractional part did not close within cap.
    """
    w = expand_nonneg(base, x, cap)
    if w.kind == ExpansionKind.TRUNCATED:
        raise Undecided(f'The expansion of {x} did not close within the cap.')
    return w.fractional_part == DigitWord()
