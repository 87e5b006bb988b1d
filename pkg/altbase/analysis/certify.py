"""
Necessary conditions for purely periodic expansions of rationals: the
algebraic classification of delta, the positivity of the embedded betas, the
periodicity certificate matrix M(X) and a bounded sampler for the
finiteness property (F).
"""
import enum
import math
import warnings
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg
import sympy

import altbase
from altbase.arith.exactnum import Polynomial
from altbase.arith.numberfield import (
    NumberField,
    embed,
    embeddings_of,
    floor_of,
    sign_of,
)
from altbase.errors import (
    DegenerateChoice,
    ExpansionDidNotClose,
    NoRootAboveOne,
    NotPurelyPeriodic,
    RootNotGreaterThanOne,
    Undecided,
)
from altbase.numeration.admissibility import VerdictKind, is_admissible
from altbase.numeration.base import AlternateBase, digit_vector, shift
from altbase.numeration.expansion import (
    DigitWord,
    ExpansionKind,
    ExpansionReport,
    digit_bounds,
    expansion_of_one,
    greedy_expand,
    quasi_greedy_one,
    value_of,
)

# Draws of the finiteness sampler before a pair is skipped.
MAX_REJECTIONS = 1000


class DeltaKind(enum.Enum):
    PISOT = 'pisot'
    SALEM = 'salem'
    NEITHER = 'neither'
    BORDERLINE = 'borderline'


@dataclass(frozen=True)
class ConjugateModulus:
    root: complex
    modulus: float
    # 'inside', 'on_circle' (within the tolerance band) or 'outside'.
    band: str


@dataclass(frozen=True)
class AlgebraicClassification:
    is_algebraic_integer: bool
    is_unit: bool
    kind: DeltaKind
    conjugate_moduli: Tuple[ConjugateModulus, ...]
    minpoly: Polynomial
    delta_approx: float


def classify_delta(minpoly, root_isolator) -> AlgebraicClassification:
    """
    Classifies the root delta > 1 of minpoly isolated by root_isolator.

    The algebraic integer and unit tests are exact on the primitive integer
    form of minpoly. The Pisot/Salem verdict uses the numeric moduli of the
    non-identity conjugates with the tolerance altbase.config['MODULUS_TOL'];
    a modulus inside the band around 1 gives SALEM only if minpoly is
    palindromic of even degree, otherwise BORDERLINE.

    Parameters
    ----------
    minpoly: Polynomial or sequence of int
        The minimal polynomial of delta, ascending coefficients.
    root_isolator: Interval or (lo, hi)
        An interval isolating delta.

    Returns
    -------
    AlgebraicClassification

    Raises
    ------
    NotSquarefree
        If minpoly has a repeated factor.
    NoRootAboveOne
        If the isolated root is not > 1.

    Example
    -------
    | classify_delta([1, -1, -1, -1, 1], (1, 2)).kind  # DeltaKind.SALEM
    """
    try:
        field = NumberField(minpoly, root_isolator)
    except RootNotGreaterThanOne as err:
        raise NoRootAboveOne(str(err)) from err
    p = field.minpoly
    is_algebraic_integer = p.leading == 1
    is_unit = is_algebraic_integer and abs(p.coeffs[0]) == 1

    tol = altbase.config['MODULUS_TOL']
    moduli = []
    for e in embeddings_of(field):
        if e.is_identity:
            delta_approx = e.conjugate.real
            continue
        modulus = abs(e.conjugate)
        if modulus < 1 - tol:
            band = 'inside'
        elif modulus > 1 + tol:
            band = 'outside'
        else:
            band = 'on_circle'
        moduli.append(ConjugateModulus(e.conjugate, modulus, band))

    bands = {m.band for m in moduli}
    if not is_algebraic_integer or 'outside' in bands:
        kind = DeltaKind.NEITHER
    elif 'on_circle' not in bands:
        kind = DeltaKind.PISOT
    elif p.is_palindromic() and p.degree % 2 == 0:
        kind = DeltaKind.SALEM
    else:
        kind = DeltaKind.BORDERLINE
        warnings.warn(
            f'A conjugate of the root of {p} lies within {tol} of the unit circle but '
            f'the polynomial is not self-reciprocal. Classified as borderline.'
        )
    return AlgebraicClassification(
        is_algebraic_integer, is_unit, kind, tuple(moduli), p, delta_approx
    )


@dataclass(frozen=True)
class PositivityRow:
    conjugate: complex
    is_identity: bool
    values: Tuple[complex, ...]
    # 'all_positive', 'not_all_positive' or None for complex embeddings.
    verdict: Optional[str]
    # True where a real value lies within the tolerance band around 0.
    band_flags: Tuple[bool, ...]


def positivity_report(base: AlternateBase) -> List[PositivityRow]:
    """
    The vector (psi(beta_1), ..., psi(beta_p)) for every embedding psi, the
    identity first. Real embeddings get a positivity verdict; complex ones do
    not.
    """
    tol = altbase.config['MODULUS_TOL']
    rows = []
    for e in embeddings_of(base.field):
        values = tuple(embed(beta, e) for beta in base.betas)
        if e.conjugate.imag != 0:
            rows.append(PositivityRow(e.conjugate, e.is_identity, values, None, ()))
            continue
        reals = [v.real for v in values]
        verdict = 'all_positive' if all(v > 0 for v in reals) else 'not_all_positive'
        flags = tuple(abs(v) <= tol for v in reals)
        rows.append(PositivityRow(e.conjugate, e.is_identity, values, verdict, flags))
    return rows


@dataclass
class PeriodicityCertificate:
    """
    rationals: (numerator, denominator, ExpansionReport) per row.
    r, s: the common preperiod and period lengths in blocks of p digits.
    matrix: M(X) with entry (j, i) = q_j h_i^(j)(X), and
        q_j h_p^(j)(X) - p_j X^r (X^s - 1) in the last column.
    detpoly: det M(X).
    checks: matrix_kills_v, det_vanishes_at_delta, det_nonzero_poly and
        rank_p_minus_1 (numeric).
    numeric_rank: rank of M(delta) from its singular values.
    rank_certified_exactly: the leading (p-1)x(p-1) minor of M(delta) is
        nonzero in Q(delta), which together with M(delta) v = 0 pins the
        rank at p - 1.
    """

    rationals: List[Tuple[int, int, ExpansionReport]]
    r: int
    s: int
    matrix: List[List[Polynomial]]
    detpoly: Polynomial
    checks: Dict[str, bool] = dataclass_field(default_factory=dict)
    numeric_rank: int = 0
    rank_certified_exactly: bool = False


def poly_det(matrix: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """ The determinant of a square polynomial matrix, division free (Berkowitz). """
    if len(matrix) == 0:
        return Polynomial.constant(1)
    m = sympy.Matrix([[entry.as_expr() for entry in row] for row in matrix])
    return Polynomial.from_expr(m.det(method='berkowitz'))


def _phase_polynomial(digits: Sequence[int], p: int, i: int, start: int, stop: int) -> Polynomial:
    """ sum_{k=start+1}^{stop} x_{p(k-1)+i} X^(stop-k), i is 1-based. """
    return Polynomial(digits[p * (stop - 1 - e) + i - 1] for e in range(stop - start))


def periodicity_certificate(
    base: AlternateBase, xs: Sequence, cap: int = None, min_preperiod_blocks: int = 0
) -> PeriodicityCertificate:
    """
    Builds the matrix M(X) from the expansions of p rationals and checks it
    against the base.

    Every expansion x_1 x_2 ... is written with a common preperiod of r blocks
    and period of s blocks, and

        g_i(X) = sum_{k=1}^{r} x_{p(k-1)+i} X^(r-k),
        f_i(X) = sum_{k=r+1}^{r+s} x_{p(k-1)+i} X^(r+s-k),
        h_i(X) = (X^s - 1) g_i(X) + f_i(X).

    Parameters
    ----------
    base: AlternateBase
        The base.
    xs: sequence of p rationals in [0, 1)
        The rationals p_j/q_j.
    cap: int, optional
        Step cap of each greedy expansion. Defaults to altbase.config['CAP'].
    min_preperiod_blocks: int, optional
        A lower bound on r.

    Returns
    -------
    PeriodicityCertificate

    Raises
    ------
    ExpansionDidNotClose
        If the expansion of xs[j - 1] is truncated. The index is j.
    ValueError
        If len(xs) != p.
    DegenerateChoice
        If det M(X) is the zero polynomial. The certificate is attached.
    """
    p = base.period
    if len(xs) != p:
        raise ValueError(f'Expected {p} rationals, got {len(xs)}.')
    xs = [Fraction(x) for x in xs]
    reports = []
    for j, x in enumerate(xs, start=1):
        report = greedy_expand(base, x, cap)
        if report.kind == ExpansionKind.TRUNCATED:
            raise ExpansionDidNotClose(j)
        reports.append(report)

    r = max([min_preperiod_blocks] + [-(-len(rep.word.preperiod) // p) for rep in reports])
    s = 1
    for rep in reports:
        s = math.lcm(s, math.lcm(max(len(rep.word.period), 1), p) // p)

    X = Polynomial.monomial(1)
    Xs_minus_1 = X**s - 1
    matrix = []
    for x, rep in zip(xs, reports):
        digits = rep.word.prefix(p * (r + s))
        row = []
        for i in range(1, p + 1):
            g = _phase_polynomial(digits, p, i, 0, r)
            f = _phase_polynomial(digits, p, i, r, r + s)
            row.append((Xs_minus_1 * g + f) * x.denominator)
        row[-1] = row[-1] - X**r * Xs_minus_1 * x.numerator
        matrix.append(row)
    detpoly = poly_det(matrix)

    field = base.field
    v = digit_vector(base)
    values = [[field.evaluate_polynomial(entry) for entry in row] for row in matrix]
    kills_v = all(
        sum((a * b for a, b in zip(row, v)), field.zero()).is_zero for row in values
    )
    numeric = np.array([[float(a) for a in row] for row in values])
    singular = scipy.linalg.svdvals(numeric)
    if singular.size == 0 or singular[0] == 0:
        numeric_rank = 0
    else:
        numeric_rank = int(np.sum(singular > altbase.config['RANK_TOL'] * singular[0]))
    leading_minor = poly_det([row[: p - 1] for row in matrix[: p - 1]])
    rank_exact = kills_v and not field.evaluate_polynomial(leading_minor).is_zero

    certificate = PeriodicityCertificate(
        rationals=[(x.numerator, x.denominator, rep) for x, rep in zip(xs, reports)],
        r=r,
        s=s,
        matrix=matrix,
        detpoly=detpoly,
        checks={
            'matrix_kills_v': kills_v,
            'det_vanishes_at_delta': field.evaluate_polynomial(detpoly).is_zero,
            'det_nonzero_poly': not detpoly.is_zero,
            'rank_p_minus_1': numeric_rank == p - 1,
        },
        numeric_rank=numeric_rank,
        rank_certified_exactly=rank_exact,
    )
    if detpoly.is_zero:
        raise DegenerateChoice(certificate)
    return certificate


def certificate_rationals(
    base: AlternateBase, n: int = 0, m: int = 1, cap: int = None, max_bits: int = 256
) -> List[Fraction]:
    """
    Picks p dyadic rationals x_j whose expansions start with
    0^(pn+j-1) 1 0^(pm-j), j = 1, ..., p. These fall into pairwise disjoint
    intervals, which keeps M(X) nonsingular.

    x_j is the first (floor(L_j 2^k) + 1) / 2^k, k = 1, 2, ..., whose greedy
    prefix matches, where L_j is the value of the prefix itself.

    Raises
    ------
    Undecided
        If no dyadic rational with at most max_bits bits has the prefix.
    ValueError
        If n < 0 or m < 1.
    """
    if n < 0 or m < 1:
        raise ValueError(f'Need n >= 0 and m >= 1, got n = {n}, m = {m}.')
    p = base.period
    length = p * (n + m)
    out = []
    for j in range(1, p + 1):
        target = (0,) * (p * n + j - 1) + (1,) + (0,) * (p * m - j)
        lower = value_of(base, DigitWord(target, ()))
        for k in range(1, max_bits + 1):
            x = Fraction(floor_of(lower * 2**k) + 1, 2**k)
            if x >= 1:
                continue
            report = greedy_expand(base, x, cap)
            if report.word.prefix(length) == target:
                out.append(x)
                break
        else:
            raise Undecided(f'No dyadic rational below 2^-{max_bits} found for prefix {j}.')
    return out


def pure_periodic_identity_check(base: AlternateBase, x, report: ExpansionReport) -> bool:
    """
    Checks x (delta^s - 1) = (f_1(delta), ..., f_p(delta)).v exactly, where s is
    the period length in blocks and f_i(X) = sum_{k=1}^{s} x_{p(k-1)+i} X^(s-k).

    Raises
    ------
    NotPurelyPeriodic
        If report is not PURELY_PERIODIC (x = 0 with its empty word is
        accepted as the period 0^p).
    """
    x = Fraction(x)
    p = base.period
    if report.kind == ExpansionKind.FINITE and report.word == DigitWord() and x == 0:
        period = (0,) * p
    elif report.kind == ExpansionKind.PURELY_PERIODIC:
        period = report.word.aligned(p).period
    else:
        raise NotPurelyPeriodic(f'The expansion of {x} is {report.kind.value}.')
    s = len(period) // p
    field = base.field
    rhs = field.zero()
    for i, weight in enumerate(digit_vector(base), start=1):
        f = _phase_polynomial(period, p, i, 0, s)
        rhs = rhs + field.evaluate_polynomial(f) * weight
    lhs = field.evaluate_polynomial(Polynomial.monomial(s) - 1) * x
    return lhs == rhs


@dataclass
class FinitenessReport:
    samples: int
    checked: int = 0
    undecided: int = 0
    # Pairs dropped because no admissible word was drawn.
    skipped: int = 0
    # (u, w, operation, ExpansionReport of the result)
    counterexamples: List[Tuple[DigitWord, DigitWord, str, ExpansionReport]] = dataclass_field(
        default_factory=list
    )

    @property
    def message(self) -> str:
        if self.counterexamples:
            return f'{len(self.counterexamples)} violation(s) of (F) found.'
        return f'no violation found in {self.checked} samples'


def check_pair(base: AlternateBase, u: DigitWord, w: DigitWord, cap: int = None):
    """
    Tests the two clauses of (F) on x = value(u) and y = value(w): x + y and
    |x - y| must have finite expansions whenever they lie in [0, 1).

    Returns
    -------
    list
        (operation, ExpansionReport) for every clause that failed or did not
        close within cap.
    """
    x, y = value_of(base, u), value_of(base, w)
    if sign_of(x - y) < 0:
        x, y = y, x
    out = []
    for op, z in (('+', x + y), ('-', x - y)):
        if sign_of(z - 1) >= 0:
            continue
        report = greedy_expand(base, z, cap)
        if report.kind != ExpansionKind.FINITE:
            out.append((op, report))
    return out


def _random_finite_word(base: AlternateBase, rng: np.random.Generator, max_length: int):
    bounds = digit_bounds(base)
    p = base.period
    length = int(rng.integers(1, max_length + 1))
    return DigitWord(tuple(int(rng.integers(0, bounds[k % p] + 1)) for k in range(length)), ())


def finiteness_sample_check(
    base: AlternateBase, samples: int, cap: int = None, seed: int = 0, max_length: int = 8
) -> FinitenessReport:
    """
    Samples pairs of finite admissible words of at most max_length digits and
    tests (F) on their values. Only evidence: a clean report does not prove
    (F).

    Parameters
    ----------
    base: AlternateBase
        The base.
    samples: int
        The number of pairs to test.
    cap: int, optional
        Step cap of every expansion. Defaults to altbase.config['CAP'].
    seed: int
        Seed of numpy.random.default_rng.
    max_length: int
        The longest word drawn.

    Returns
    -------
    FinitenessReport
    """
    report = FinitenessReport(samples)
    if samples <= 0:
        return report
    rng = np.random.default_rng(seed)

    def draw():
        # Rejection sampling over the digit-bounded words.
        for _ in range(MAX_REJECTIONS):
            word = _random_finite_word(base, rng, max_length).canonical()
            if is_admissible(base, word, cap=cap).kind == VerdictKind.ADMISSIBLE:
                return word
        return None

    for _ in range(samples):
        u, w = draw(), draw()
        if u is None or w is None:
            report.skipped += 1
            continue
        failures = check_pair(base, u, w, cap)
        report.checked += 1
        for op, result in failures:
            if result.kind == ExpansionKind.TRUNCATED:
                report.undecided += 1
            else:
                report.counterexamples.append((u, w, op, result))
    if report.skipped:
        warnings.warn(
            f'{report.skipped} of {samples} pairs were skipped: no admissible word was drawn '
            f'within {MAX_REJECTIONS} tries.'
        )
    if report.counterexamples:
        u, w, op, result = report.counterexamples[0]
        warnings.warn(
            f'Property (F) fails: value({u}) {op} value({w}) has the expansion {result.word}.'
        )
    return report


@dataclass
class NecessaryConditions:
    classification: AlgebraicClassification
    positivity: List[PositivityRow]
    one_expansions: List[ExpansionReport]
    quasi_greedy: List[ExpansionReport]
    finiteness: FinitenessReport
    checks: Dict[str, bool] = dataclass_field(default_factory=dict)


def necessary_conditions(
    base: AlternateBase, cap: int = None, depth: int = None, samples: int = 50
) -> NecessaryConditions:
    """
    A dashboard of the necessary conditions for rationals to expand
    periodically.

    checks holds
    delta_pisot_or_salem: delta is a Pisot or a Salem number (eventually
        periodic rationals in every shift need this).
    betas_in_field: every beta_i lies in Q(delta), true by construction.
    delta_unit: delta is an algebraic unit (needed for (PP)).
    no_positive_conjugate_vector: no non-identity real embedding maps the
        betas to a positive vector (needed for (PP) and for (F)).
    one_expansions_finite: d_{B^(i)}(1) is finite for every shift (needed
        for (F)).
    pp_sufficient_premises: delta is a Pisot unit, every expansion of 1 is
        finite and no (F) violation was sampled. Under these premises every
        shift has (PP).
    """
    field = base.field
    classification = classify_delta(field.minpoly, field.root_isolator)
    positivity = positivity_report(base)
    shifts = [shift(base, i) for i in range(1, base.period + 1)]
    ones = [expansion_of_one(b, cap) for b in shifts]
    quasi = [quasi_greedy_one(b, depth, cap) for b in shifts]
    finiteness = finiteness_sample_check(base, samples, cap)

    pisot_unit = classification.kind == DeltaKind.PISOT and classification.is_unit
    checks = {
        'delta_pisot_or_salem': classification.kind in (DeltaKind.PISOT, DeltaKind.SALEM),
        'betas_in_field': True,
        'delta_unit': classification.is_unit,
        'no_positive_conjugate_vector': all(
            row.verdict != 'all_positive' for row in positivity if not row.is_identity
        ),
        'one_expansions_finite': all(rep.kind == ExpansionKind.FINITE for rep in ones),
        'pp_sufficient_premises': pisot_unit
        and all(rep.kind == ExpansionKind.FINITE for rep in ones)
        and not finiteness.counterexamples,
    }
    return NecessaryConditions(classification, positivity, ones, quasi, finiteness, checks)
