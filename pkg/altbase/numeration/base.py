"""
Alternate bases B = (beta_1, ..., beta_p) with every beta_i in Q(delta), where
delta = beta_1 * ... * beta_p is the designated root of the field.
"""
import collections
import functools
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from altbase.arith.exactnum import Interval, Polynomial
from altbase.arith.numberfield import FieldElement, NumberField, floor_of, sign_of
from altbase.errors import BetaNotGreaterThanOne, MalformedConfig

# (digits sorted ascending, {digit: (a_1, ..., a_p)})
Alphabet = collections.namedtuple('Alphabet', ['digits', 'inverse'])


@dataclass(frozen=True)
class BaseConfig:
    """
    The raw description of an alternate base, as read from a BaseConfig file.

    minpoly: ascending integer coefficients of the minimal polynomial of delta.
    root_interval: (lo, hi) rationals isolating delta.
    betas: one coordinate vector (power basis 1, delta, ...) per beta_i.
    """

    minpoly: Tuple[int, ...]
    root_interval: Tuple[Fraction, Fraction]
    betas: Tuple[Tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class AlternateBase:
    """
    A validated alternate base. Build it with make_base, pp_family or
    single_base rather than directly.
    """

    betas: Tuple[FieldElement, ...]
    field: NumberField
    delta: FieldElement = dataclass_field(init=False, compare=False, repr=False)

    def __post_init__(self):
        product = self.field.one()
        for beta in self.betas:
            product = product * beta
        object.__setattr__(self, 'delta', product)

    @property
    def period(self) -> int:
        return len(self.betas)

    def beta(self, k: int) -> FieldElement:
        """ beta_k for any k >= 1, extended periodically. """
        return self.betas[(k - 1) % self.period]


def make_base(cfg: BaseConfig) -> AlternateBase:
    """
    Builds and validates an alternate base from its configuration.

    Parameters
    ----------
    cfg: BaseConfig
        The minimal polynomial, the isolator of delta and the coordinate
        vectors of the betas.

    Returns
    -------
    AlternateBase
        The validated base.

    Raises
    ------
    MalformedConfig
        If there are no betas, a coordinate vector has the wrong length or
        the product of the betas is not the designated root delta.
    BetaNotGreaterThanOne
        If some beta_i <= 1. The index attribute is 1-based.
    RootNotGreaterThanOne
        If the isolated root of minpoly is not > 1.
    """
    field = NumberField(Polynomial(cfg.minpoly), Interval(*cfg.root_interval))
    betas = []
    for i, coords in enumerate(cfg.betas, start=1):
        if isinstance(coords, (int, Fraction, str)):
            coords = [coords]
        coords = list(coords)
        if len(coords) > field.degree:
            raise MalformedConfig(
                f'beta_{i} has {len(coords)} coordinates but the field has degree {field.degree}.'
            )
        coords += [0] * (field.degree - len(coords))
        betas.append(field.element(coords))
    return _validated(betas, field)


def _validated(betas: Sequence[FieldElement], field: NumberField) -> AlternateBase:
    if len(betas) == 0:
        raise MalformedConfig('An alternate base needs at least one beta.')
    for i, beta in enumerate(betas, start=1):
        if sign_of(beta - 1) <= 0:
            raise BetaNotGreaterThanOne(i, f'beta_{i} = {beta} is not greater than 1.')
    base = AlternateBase(tuple(betas), field)
    if base.delta != field.generator():
        raise MalformedConfig(
            f'The product of the betas, {base.delta}, is not the designated root of '
            f'{field.minpoly}. The field must be exactly Q(delta).'
        )
    return base


def shift(base: AlternateBase, i: int) -> AlternateBase:
    """
    The shifted base B^(i) = (beta_i, ..., beta_p, beta_1, ..., beta_{i-1}).
    i is taken modulo p, so shift(base, 1) and shift(base, p + 1) are base.
    """
    k = (i - 1) % base.period
    if k == 0:
        return base
    return AlternateBase(base.betas[k:] + base.betas[:k], base.field)


def digit_vector(base: AlternateBase) -> Tuple[FieldElement, ...]:
    """
    The vector v = (beta_2 * ... * beta_p, beta_3 * ... * beta_p, ..., 1)
    weighting the p digits of one block.
    """
    entries = [base.field.one()]
    for beta in reversed(base.betas[1:]):
        entries.append(entries[-1] * beta)
    return tuple(reversed(entries))


def max_digit(beta: FieldElement) -> int:
    """ The largest digit allowed below beta: ceil(beta) - 1. """
    n = floor_of(beta)
    if beta == n:
        return n - 1
    return n


@functools.lru_cache(maxsize=128)
def digit_alphabet(base: AlternateBase) -> Alphabet:
    """
    The alphabet D of delta-digits: all values (a_1, ..., a_p).v with integer
    0 <= a_i < beta_i.

    Parameters
    ----------
    base: AlternateBase
        The base.

    Returns
    -------
    Alphabet
        A namedtuple (digits, inverse). digits are the distinct values sorted
        ascending by exact comparison. inverse maps each digit to the block
        (a_1, ..., a_p) that produced it first in lexicographic block order.

    Example
    -------
    | from altbase.numeration.base import digit_alphabet, pp_family
    |
    | digits, inverse = digit_alphabet(pp_family(2))
    | len(digits)  # 6, {0, 1, 2, beta_2, beta_2 + 1, beta_2 + 2}
    """
    v = digit_vector(base)
    bounds = [max_digit(beta) for beta in base.betas]
    inverse: Dict[FieldElement, Tuple[int, ...]] = {}
    for block in _blocks(bounds):
        value = base.field.zero()
        for a, weight in zip(block, v):
            if a:
                value = value + weight * a
        inverse.setdefault(value, block)
    digits = sorted(inverse, key=functools.cmp_to_key(lambda a, b: sign_of(a - b)))
    return Alphabet(digits, inverse)


def _blocks(bounds: List[int]):
    """ Every integer tuple with 0 <= a_i <= bounds[i], lexicographically. """
    if not bounds:
        yield ()
        return
    for a in range(bounds[0] + 1):
        for rest in _blocks(bounds[1:]):
            yield (a,) + rest


def pp_family(m: int) -> AlternateBase:
    """
    The base (delta/(delta - 1), delta - 1) where delta > 1 is the root of
    x^2 - (m + 1)x - 1. Every rational in [0, 1) has a purely periodic
    expansion in it.

    Parameters
    ----------
    m: int
        The family parameter, m >= 1.

    Returns
    -------
    AlternateBase
        The p = 2 base.

    Raises
    ------
    ValueError
        If m < 1.
    """
    if not isinstance(m, int) or m < 1:
        raise ValueError(f'The family parameter m must be an integer >= 1, got {m}.')
    # x^2 - (m+1)x - 1 is -1 at m+1 and m+1 at m+2.
    field = NumberField([-1, -(m + 1), 1], (m + 1, m + 2))
    delta = field.generator()
    return _validated([delta / (delta - 1), delta - 1], field)


def single_base(field: NumberField) -> AlternateBase:
    """ The p = 1 base (delta) over field, the classical Renyi numeration. """
    return _validated([field.generator()], field)
