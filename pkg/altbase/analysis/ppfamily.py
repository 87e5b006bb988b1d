"""
The family beta_1 = delta/(delta - 1), beta_2 = delta - 1 with
delta^2 = (m + 1) delta + 1, in which every rational of [0, 1) has a purely
periodic expansion. pp_rewrite derives that expansion from the Renyi
delta-expansion by block rewriting. gamma_scan estimates gamma(B), the
supremum of the gamma with every rational in [0, gamma) purely periodic.
"""
import collections
import concurrent.futures
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple

import pandas as pd

import altbase
from altbase.arith.numberfield import FieldElement
from altbase.errors import OutOfRange, PeriodDidNotClose, RewriteFailed, Undecided
from altbase.numeration.base import AlternateBase, digit_vector, pp_family, shift, single_base
from altbase.numeration.expansion import (
    DigitWord,
    ExpansionKind,
    ExpansionReport,
    greedy_expand,
    kind_of,
)

Block = Tuple[int, int]

# rule is 'i' (0(m+1),00 -> 10,10), 'A' (0m,0b -> 10,0(b-1)) or
# 'B' (0m,10,10 -> 10,0m,00). position is the 0-based block index in the
# doubled period.
TraceStep = collections.namedtuple(
    'TraceStep', ['rule', 'position', 'before', 'after', 'value_preserved']
)


def _blocks_value(blocks: Sequence[Block], v: Sequence[FieldElement], delta_inv: FieldElement):
    """ sum_t (a_t, b_t).v delta^(-t), the value of a block string up to scale. """
    total = delta_inv.field.zero()
    scale = delta_inv.field.one()
    for a, b in blocks:
        total = total + (v[0] * a + v[1] * b) * scale
        scale = scale * delta_inv
    return total


def _leftmost_forbidden(blocks: List[Block], m: int):
    """ The leftmost Type A or Type B factor, or None. """
    for i in range(len(blocks) - 1):
        if blocks[i] != (0, m):
            continue
        a, b = blocks[i + 1]
        if a == 0 and 1 <= b <= m:
            return 'A', i
        if blocks[i + 1] == (1, 0) and i + 2 < len(blocks) and blocks[i + 2] == (1, 0):
            return 'B', i
    return None


def pp_rewrite(m: int, x, cap: int = None, trace: bool = False):
    """
    The purely periodic expansion of a rational x in pp_family(m), obtained
    by rewriting its Renyi delta-expansion.

    The delta-expansion (d_1 ... d_n)^omega is written in blocks (0, d_k) and
    rewritten on the doubled period in two passes:

    (i)  0(m+1),00 -> 10,10 until every block is a digit of D.
    (ii) the leftmost forbidden factor, 0m,0b -> 10,0(b-1) for 1 <= b <= m
         or 0m,10,10 -> 10,0m,00, until none is left.

    Parameters
    ----------
    m: int
        The family parameter, m >= 1.
    x: Fraction, int or 'p/q' str
        A rational in [0, 1).
    cap: int, optional
        Step cap of the delta-expansion. Defaults to altbase.config['CAP'].
    trace: bool
        If True, also return the list of TraceStep applied.

    Returns
    -------
    ExpansionReport
        The canonical purely periodic B-word (the empty FINITE word for x = 0).
        With trace=True a tuple (report, steps) is returned.

    Raises
    ------
    OutOfRange
        If x is not in [0, 1).
    PeriodDidNotClose
        If the delta-expansion is not purely periodic within cap.
    RewriteFailed
        If an invariant of the rewriting breaks: a delta-digit outside
        0..m+1, a digit m+1 not followed by 0, no progress of the leftmost
        forbidden factor, a step that changes the value, or a doubled period
        that does not close as ww.
    Undecided
        If step (ii) exceeds its step budget.

    Example
    -------
    | str(pp_rewrite(2, '3/4').word)  # '(1,0,0,0,0,1,1,0,0,2,0,0)'
    """
    x = Fraction(x)
    if not 0 <= x < 1:
        raise OutOfRange(f'pp_rewrite needs 0 <= x < 1, got x = {x}.')
    base = pp_family(m)
    delta_report = greedy_expand(single_base(base.field), x, cap)
    steps: List[TraceStep] = []
    if delta_report.kind == ExpansionKind.FINITE and x == 0:
        return (delta_report, steps) if trace else delta_report
    if delta_report.kind != ExpansionKind.PURELY_PERIODIC:
        raise PeriodDidNotClose(
            f'The delta-expansion of {x} is {delta_report.kind.value}, '
            f'not purely periodic within {delta_report.steps_used} steps.'
        )
    period = delta_report.word.period
    for k, d in enumerate(period):
        if not 0 <= d <= m + 1:
            raise RewriteFailed(f'delta-digit {d} is outside 0..{m + 1}.')
        if d == m + 1 and period[(k + 1) % len(period)] != 0:
            raise RewriteFailed(f'delta-digit {m + 1} at position {k + 1} is not followed by 0.')
    if period[-1] != 0:
        raise RewriteFailed(f'The period {period} of {x} does not end in 0.')

    v = digit_vector(base)
    delta_inv = base.delta.inverse()

    def apply(blocks, rule, i, before, after):
        preserved = _blocks_value(before, v, delta_inv) == _blocks_value(after, v, delta_inv)
        steps.append(TraceStep(rule, i, tuple(before), tuple(after), preserved))
        blocks[i : i + len(before)] = after

    blocks: List[Block] = [(0, d) for d in period] * 2
    # Step (i).
    i = 0
    while i < len(blocks) - 1:
        if blocks[i] == (0, m + 1) and blocks[i + 1] == (0, 0):
            apply(blocks, 'i', i, blocks[i : i + 2], [(1, 0), (1, 0)])
            i += 2
        else:
            i += 1
    if (0, m + 1) in blocks:
        raise RewriteFailed(f'Step (i) left a block 0,{m + 1} in {blocks}.')

    # Step (ii).
    budget = len(blocks) ** 2 + 8
    position = -1
    for _ in range(budget):
        found = _leftmost_forbidden(blocks, m)
        if found is None:
            break
        rule, i = found
        if i <= position:
            raise RewriteFailed(f'The leftmost forbidden factor moved from {position} to {i}.')
        position = i
        if rule == 'A':
            b = blocks[i + 1][1]
            apply(blocks, 'A', i, blocks[i : i + 2], [(1, 0), (0, b - 1)])
        else:
            apply(blocks, 'B', i, blocks[i : i + 3], [(1, 0), (0, m), (0, 0)])
    else:
        warnings.warn(f'pp_rewrite(m={m}, x={x}) exceeded its budget of {budget} steps.')
        raise Undecided(f'The rewriting of {x} did not terminate within {budget} steps.')

    n = len(period)
    if blocks[:n] != blocks[n:]:
        raise RewriteFailed('The rewritten doubled period is not of the form ww.')
    changed = [step for step in steps if not step.value_preserved]
    if changed:
        raise RewriteFailed(f'The rewriting step {changed[0]} changed the value.')
    digits = tuple(d for block in blocks[:n] for d in block)
    word = DigitWord((), digits).canonical()
    report = ExpansionReport(word, kind_of(word), delta_report.steps_used)
    return (report, steps) if trace else report


def half_expansion_formula(m: int) -> DigitWord:
    """
    The closed form of d(1/2) in the shift B^(2) of pp_family(m):
    k (0 0 0 k 0 k+1)^omega for m = 2k and k (0 k+1)^omega for m = 2k + 1.
    """
    if m < 1:
        raise ValueError(f'The family parameter m must be >= 1, got {m}.')
    k = m // 2
    if m % 2 == 0:
        return DigitWord((k,), (0, 0, 0, k, 0, k + 1)).canonical()
    return DigitWord((k,), (0, k + 1)).canonical()


def farey_sequence(qmax: int) -> Iterator[Fraction]:
    """ Every p/q in (0, 1) with q <= qmax, in increasing order. """
    a, b, c, d = 0, 1, 1, qmax
    while c < d:
        yield Fraction(c, d)
        k = (qmax + b) // d
        a, b, c, d = c, d, k * c - a, k * d - b


@dataclass
class GammaScanReport:
    """
    verified_lower: every rational below it with denominator <= qmax is
        purely periodic (1 if no failure was found).
    first_failure: the smallest such rational that is not purely periodic,
        with its ExpansionReport.
    undecided: the rational where a truncated expansion aborted the scan.
    table: one row per classified rational.
    """

    verified_lower: Fraction
    first_failure: Optional[Tuple[Fraction, ExpansionReport]]
    qmax: int
    cap: int
    undecided: Optional[Fraction]
    table: pd.DataFrame


def _classify_chunk(base: AlternateBase, xs: List[Fraction], cap: int) -> List[ExpansionReport]:
    return [greedy_expand(base, x, cap) for x in xs]


def gamma_scan(
    base: AlternateBase, qmax: int, cap: int = None, workers: int = None, stop_at_failure=True
) -> GammaScanReport:
    """
    Classifies the rationals p/q in (0, 1) with q <= qmax in increasing order
    and reports the first one without a purely periodic expansion.

    Parameters
    ----------
    base: AlternateBase
        The base.
    qmax: int
        The largest denominator, qmax >= 2.
    cap: int, optional
        Step cap of every expansion. Defaults to altbase.config['CAP'].
    workers: int, optional
        Number of worker processes. Defaults to altbase.config['WORKERS'].
    stop_at_failure: bool
        Stop classifying at the first failure. Only applies when workers == 1.

    Returns
    -------
    GammaScanReport

    Raises
    ------
    ValueError
        If qmax < 2.

    Example
    -------
    | from altbase.numeration.base import pp_family, shift
    |
    | report = gamma_scan(shift(pp_family(2), 2), 200)
    | float(report.first_failure[0])  # about 0.41
    """
    if qmax < 2:
        raise ValueError(f'qmax must be >= 2, got {qmax}.')
    if cap is None:
        cap = altbase.config['CAP']
    if workers is None:
        workers = altbase.config['WORKERS']
    xs = list(farey_sequence(qmax))

    if workers > 1:
        size = -(-len(xs) // (4 * workers))
        chunks = [xs[i : i + size] for i in range(0, len(xs), size)]
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as executor:
            results = executor.map(
                _classify_chunk, [base] * len(chunks), chunks, [cap] * len(chunks)
            )
            reports = iter([report for chunk in results for report in chunk])
    else:
        reports = (greedy_expand(base, x, cap) for x in xs)

    rows = []
    first_failure = None
    undecided = None
    for x, report in zip(xs, reports):
        rows.append(
            {
                'numerator': x.numerator,
                'denominator': x.denominator,
                'value': float(x),
                'kind': report.kind.value,
                'preperiod_length': len(report.word.preperiod),
                'period_length': len(report.word.period),
            }
        )
        if report.kind == ExpansionKind.PURELY_PERIODIC:
            continue
        if report.kind == ExpansionKind.TRUNCATED:
            undecided = x
            warnings.warn(f'The expansion of {x} did not close within {cap} steps, scan aborted.')
            break
        if first_failure is None:
            first_failure = (x, report)
            if stop_at_failure:
                break

    if first_failure is not None:
        verified_lower = first_failure[0]
    elif undecided is not None:
        verified_lower = undecided
    else:
        verified_lower = Fraction(1)
    return GammaScanReport(
        verified_lower, first_failure, qmax, cap, undecided, pd.DataFrame(rows)
    )


def gamma_profile(
    base: AlternateBase, qmax: int, cap: int = None, workers: int = None
) -> List[GammaScanReport]:
    """ gamma_scan of every shift B^(1), ..., B^(p). gamma(B^(i)) may differ with i. """
    return [gamma_scan(shift(base, i), qmax, cap, workers) for i in range(1, base.period + 1)]
