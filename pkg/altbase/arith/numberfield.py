"""
Exact arithmetic in Q(delta) = Q[X]/(P) where P is the minimal polynomial of
a designated real root delta > 1. Elements are stored by their coordinates in
the power basis 1, delta, ..., delta^(n-1). Comparisons are exact: a value is
enclosed in a rational interval obtained from a refined isolator of delta, and
the isolator is bisected until the sign (or floor) is certain.
"""
import collections
import functools
import math
from fractions import Fraction
from typing import List, Sequence, Tuple, Union

import numpy as np
import sympy

import altbase
from altbase.arith.exactnum import (
    Interval,
    Polynomial,
    check_squarefree,
    count_roots,
    poly_gcd,
    refine_root,
    sign,
    to_rational,
)
from altbase.errors import (
    DivisionByZero,
    FieldMismatch,
    InvalidIsolator,
    NotInvertible,
    RootFindingFailed,
    RootNotGreaterThanOne,
)

# Each sign/floor query starts at this isolator precision level (width / 2**level)
# and doubles the level until the answer is certain.
START_LEVEL = 16
# Above this level an undecided sign triggers the exact reducibility test.
REDUCIBILITY_CHECK_LEVEL = 512
# numpy's companion-matrix roots are not trusted beyond this degree.
MAX_EMBEDDING_DEGREE = 60

Embedding = collections.namedtuple('Embedding', ['conjugate', 'is_identity'])


class NumberField:
    """
    The field Q(delta) with delta pinned as the unique root of minpoly inside
    root_isolator.

    Parameters
    ----------
    minpoly: Polynomial or sequence of int/Fraction
        The minimal polynomial of delta, ascending coefficients. It is
        normalized to a primitive integer polynomial with a positive leading
        coefficient. Irreducibility is the caller's responsibility.
    root_isolator: Interval or (lo, hi)
        An interval isolating delta.

    Raises
    ------
    NotSquarefree, ZeroPolynomial
        If minpoly is not a nonzero squarefree polynomial.
    InvalidIsolator
        If root_isolator does not isolate exactly one real root.
    RootNotGreaterThanOne
        If the isolated root is not > 1.
    """

    def __init__(self, minpoly, root_isolator):
        if not isinstance(minpoly, Polynomial):
            minpoly = Polynomial(to_rational(c) for c in minpoly)
        check_squarefree(minpoly)
        if minpoly.degree < 1:
            raise InvalidIsolator('A constant minimal polynomial has no roots.')
        self.minpoly = minpoly.primitive_integer_form()
        if not isinstance(root_isolator, Interval):
            root_isolator = Interval(*(to_rational(x) for x in root_isolator))
        self.root_isolator = self._validate_isolator(root_isolator)
        self.degree = self.minpoly.degree
        self._monic_tail = tuple(-c / self.minpoly.leading for c in self.minpoly.coeffs[:-1])
        self._levels = {0: self.root_isolator}
        return

    def _validate_isolator(self, iv: Interval) -> Interval:
        p = self.minpoly
        if iv.is_degenerate:
            if p(iv.lo) != 0:
                raise InvalidIsolator(f'{iv.lo} is not a root of {p}.')
            if iv.lo <= 1:
                raise RootNotGreaterThanOne(f'The isolated root {iv.lo} is not > 1.')
            return iv
        if p(iv.lo) == 0 or p(iv.hi) == 0 or count_roots(p, iv.lo, iv.hi) != 1:
            raise InvalidIsolator(f'{iv} does not isolate exactly one root of {p}.')
        if iv.hi <= 1:
            raise RootNotGreaterThanOne(f'The root of {p} inside {iv} is not > 1.')
        if iv.lo < 1:
            # Decide on which side of 1 the root lies.
            s1 = sign(p(Fraction(1)))
            if s1 == 0 or s1 != sign(p(iv.lo)):
                raise RootNotGreaterThanOne(f'The root of {p} inside {iv} is not > 1.')
            iv = Interval(1, iv.hi)
        return iv

    def __eq__(self, other):
        if not isinstance(other, NumberField):
            return NotImplemented
        return self.minpoly == other.minpoly and self.root_isolator == other.root_isolator

    def __hash__(self):
        return hash((self.minpoly, self.root_isolator))

    def __repr__(self):
        return f'NumberField({self.minpoly}, {self.root_isolator})'

    def __getstate__(self):
        # The isolator cache is rebuilt on demand.
        return {
            'minpoly': self.minpoly,
            'root_isolator': self.root_isolator,
            'degree': self.degree,
            '_monic_tail': self._monic_tail,
        }

    def __setstate__(self, state):
        self.__dict__.update(state)
        self._levels = {0: self.root_isolator}

    def isolator_at(self, level: int) -> Interval:
        """
        An isolator of delta of width at most root_isolator.width / 2**level.
        Refinements are cached; concurrent callers may compute the same level
        twice, which is harmless.
        """
        if level in self._levels:
            return self._levels[level]
        known = max(k for k in self._levels if k < level)
        iv = self._levels[known]
        target = self.root_isolator.width / 2**level
        refined = refine_root(self.minpoly, iv, target)
        self._levels[level] = refined
        return refined

    def element(self, value) -> 'FieldElement':
        """
        Builds an element from a scalar (int, Fraction, 'p/q' string) or a
        coordinate sequence of length degree.
        """
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch('The element belongs to a different field.')
            return value
        if isinstance(value, (int, Fraction, str)):
            coords = [to_rational(value)] + [Fraction(0)] * (self.degree - 1)
            return FieldElement(coords, self)
        return FieldElement([to_rational(c) for c in value], self)

    def zero(self) -> 'FieldElement':
        return self.element(0)

    def one(self) -> 'FieldElement':
        return self.element(1)

    def generator(self) -> 'FieldElement':
        """ delta itself as a field element. """
        if self.degree == 1:
            return self.element(-self.minpoly.coeffs[0] / self.minpoly.leading)
        return FieldElement([0, 1] + [0] * (self.degree - 2), self)

    def reduce(self, coeffs: Sequence[Fraction]) -> Tuple[Fraction, ...]:
        """ Reduces a coefficient list modulo minpoly to degree coordinates. """
        c = list(coeffs)
        n = self.degree
        for k in range(len(c) - 1, n - 1, -1):
            top = c[k]
            if top:
                for i, t in enumerate(self._monic_tail):
                    c[k - n + i] += top * t
        c = c[:n]
        c += [Fraction(0)] * (n - len(c))
        return tuple(c)

    def evaluate_polynomial(self, poly: Polynomial) -> 'FieldElement':
        """ The exact value poly(delta) as a field element. """
        return FieldElement(self.reduce(poly.coeffs), self)


class FieldElement:
    """
    An element of a NumberField in power-basis coordinates.
    """

    __slots__ = ('coords', 'field')

    def __init__(self, coords: Sequence[Union[int, Fraction]], field: NumberField):
        coords = tuple(Fraction(c) for c in coords)
        if len(coords) != field.degree:
            raise ValueError(
                f'Expected {field.degree} coordinates, got {len(coords)}: {coords}.'
            )
        self.coords = coords
        self.field = field

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    @property
    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    @property
    def rational_value(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f'{self} is not a rational number.')
        return self.coords[0]

    def polynomial(self) -> Polynomial:
        return Polynomial(self.coords)

    def is_integral(self) -> bool:
        """ True if every coordinate is an integer, i.e. the element lies in Z[delta]. """
        return all(c.denominator == 1 for c in self.coords)

    def _coerce(self, other) -> 'FieldElement':
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch('Cannot combine elements of different number fields.')
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.element(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return FieldElement([a + b for a, b in zip(self.coords, other.coords)], self.field)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement([-a for a in self.coords], self.field)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return FieldElement([a - b for a, b in zip(self.coords, other.coords)], self.field)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement([a * other for a in self.coords], self.field)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        product = [Fraction(0)] * (2 * self.field.degree - 1)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    if b:
                        product[i + j] += a * b
        return FieldElement(self.field.reduce(product), self.field)

    __rmul__ = __mul__

    def inverse(self) -> 'FieldElement':
        """
        The multiplicative inverse: the coordinate polynomial inverted modulo
        minpoly with sympy.

        Raises
        ------
        DivisionByZero
            If self is zero.
        NotInvertible
            If gcd(self, minpoly) is nonconstant, which means the minimal
            polynomial is reducible.
        """
        if self.is_zero:
            raise DivisionByZero('Division by the zero element.')
        if self.is_rational:
            return self.field.element(1 / self.coords[0])
        a = self.polynomial()
        try:
            inv = Polynomial.from_sympy(a.poly.invert(self.field.minpoly.poly))
        except sympy.polys.polyerrors.NotInvertible:
            raise NotInvertible(
                f'gcd({a}, {self.field.minpoly}) = {poly_gcd(a, self.field.minpoly)} is '
                f'nonconstant; the minimal polynomial is reducible.'
            ) from None
        return FieldElement(self.field.reduce(inv.coeffs), self.field)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByZero('Division by zero.')
            return FieldElement([a / other for a in self.coords], self.field)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.field.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational and self.coords[0] == other
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.coords == other.coords and self.field == other.field

    def __hash__(self):
        if self.is_rational:
            # Consistent with the equality to ints and Fractions.
            return hash(self.coords[0])
        return hash(self.coords)

    def __lt__(self, other):
        return sign_of(self - other) < 0

    def __le__(self, other):
        return sign_of(self - other) <= 0

    def __gt__(self, other):
        return sign_of(self - other) > 0

    def __ge__(self, other):
        return sign_of(self - other) >= 0

    def __float__(self):
        iv = enclosure(self, 64)
        return float(iv.midpoint)

    def __repr__(self):
        return f'FieldElement({[str(c) for c in self.coords]})'

    def __str__(self):
        if self.is_rational:
            return str(self.coords[0])
        terms = []
        for i, c in enumerate(self.coords):
            if c == 0:
                continue
            power = '' if i == 0 else ('d' if i == 1 else f'd^{i}')
            if not power:
                terms.append(str(c))
            elif c == 1:
                terms.append(power)
            else:
                terms.append(f'({c})*{power}')
        return ' + '.join(terms)


def field_arithmetic(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    """
    Applies op in {'add', 'sub', 'mul', 'div'} to two elements of the same field.

    Raises
    ------
    FieldMismatch
        If a and b belong to different fields.
    DivisionByZero
        For div when b = 0.
    NotInvertible
        For div when gcd(b, minpoly) is nonconstant.
    ValueError
        If op is unknown.
    """
    if a.field != b.field:
        raise FieldMismatch('Cannot combine elements of different number fields.')
    if op == 'add':
        return a + b
    elif op == 'sub':
        return a - b
    elif op == 'mul':
        return a * b
    elif op == 'div':
        return a / b
    raise ValueError(f'Unknown field operation {op}, must be one of add, sub, mul, div.')


def enclosure(a: FieldElement, level: int) -> Interval:
    """
    A rational interval containing the real value of a, computed from the
    isolator of delta at the given precision level by interval arithmetic.
    The isolator lies in [1, oo) so every power delta^k is enclosed by
    [lo^k, hi^k].
    """
    if a.is_rational:
        return Interval(a.coords[0], a.coords[0])
    iv = a.field.isolator_at(level)
    total = Interval(0, 0)
    power = Interval(1, 1)
    for c in a.coords:
        if c:
            total = total + power * c
        power = power * iv
    return total


def sign_of(a: FieldElement) -> int:
    """
    The exact sign (-1, 0 or +1) of the real value of a.

    Example
    -------
    | from altbase.numeration.base import pp_family
    |
    | base = pp_family(2)
    | sign_of(base.delta - 3)  # +1, delta ~ 3.3028
    """
    if a.is_zero:
        return 0
    if a.is_rational:
        return sign(a.coords[0])
    level = START_LEVEL
    checked = False
    while True:
        iv = enclosure(a, level)
        if iv.excludes_zero():
            return 1 if iv.lo > 0 else -1
        if level >= REDUCIBILITY_CHECK_LEVEL and not checked:
            _check_nonzero_value(a)
            checked = True
        level *= 2


def _check_nonzero_value(a: FieldElement) -> None:
    """
    A nonzero coordinate vector can only vanish at delta if it shares a
    factor with the minimal polynomial.
    """
    g = poly_gcd(a.polynomial(), a.field.minpoly)
    if g.degree > 0:
        raise NotInvertible(
            f'{a} shares the factor {g} with {a.field.minpoly}; '
            f'the minimal polynomial is reducible.'
        )


def floor_of(a: FieldElement) -> int:
    """
    The unique integer n with n <= a < n + 1.

    The enclosure of a is shrunk until it holds at most one integer
    candidate n. An exact zero test of a - n settles the integer boundary,
    otherwise sign_of(a - n) decides between n and n - 1.
    """
    if a.is_rational:
        return math.floor(a.coords[0])
    level = START_LEVEL
    while True:
        iv = enclosure(a, level)
        low, high = math.floor(iv.lo), math.floor(iv.hi)
        if low == high:
            return low
        if high - low == 1:
            n = high
            if sign_of(a - n) >= 0:
                return n
            return n - 1
        level *= 2


def embeddings_of(field: NumberField) -> List[Embedding]:
    """
    The embeddings of field into C, one per root of minpoly. The identity
    embedding comes first, the others follow sorted by (real, imag) part.

    Raises
    ------
    RootFindingFailed
        If the degree exceeds MAX_EMBEDDING_DEGREE or a polished root does not
        satisfy |P(z)| <= tol * max_i |c_i| * (1 + |z|)**deg, where tol is
        altbase.config['ROOT_TOL'] and c_i are the integer coefficients of
        minpoly. The residual is measured relative to the coefficient size.
    """
    iv = field.isolator_at(60)
    delta = float(iv.midpoint)
    roots = _conjugates(
        tuple(field.minpoly.integer_coeffs()), delta, altbase.config['ROOT_TOL']
    )
    return [Embedding(z, i == 0) for i, z in enumerate(roots)]


@functools.lru_cache(maxsize=None)
def _conjugates(coeffs: Tuple[int, ...], delta: float, tol: float) -> Tuple[complex, ...]:
    """
    Numeric roots of the integer polynomial coeffs, polished by Newton steps.
    The root nearest to delta is replaced by delta and returned first.
    """
    degree = len(coeffs) - 1
    if degree > MAX_EMBEDDING_DEGREE:
        raise RootFindingFailed(
            f'Degree {degree} exceeds the embedding degree cap {MAX_EMBEDDING_DEGREE}.'
        )
    c = np.array(coeffs, dtype=float)
    dc = np.polynomial.polynomial.polyder(c)
    roots = np.polynomial.polynomial.polyroots(c).astype(complex)
    for _ in range(8):
        derivative = np.polynomial.polynomial.polyval(roots, dc)
        step = np.polynomial.polynomial.polyval(roots, c) / np.where(derivative == 0, 1, derivative)
        roots = roots - step
    residual = np.abs(np.polynomial.polynomial.polyval(roots, c))
    accepted = residual <= tol * (1 + np.abs(roots)) ** degree * max(1.0, np.max(np.abs(c)))
    if not np.all(accepted):
        raise RootFindingFailed(
            f'Root finding did not converge for the polynomial with coefficients {coeffs}.'
        )
    identity_index = int(np.argmin(np.abs(roots - delta)))
    others = [complex(z) for i, z in enumerate(roots) if i != identity_index]
    # Snap tiny imaginary parts of real roots to exact zero.
    others = [complex(z.real, 0.0) if abs(z.imag) <= tol * (1 + abs(z)) else z for z in others]
    others.sort(key=lambda z: (z.real, z.imag))
    return tuple([complex(delta, 0.0)] + others)


def embed(a: FieldElement, e: Embedding) -> complex:
    """ psi(a): the coordinate polynomial of a evaluated at the conjugate by Horner's scheme. """
    result = 0j
    for c in reversed(a.coords):
        result = result * e.conjugate + float(c)
    return result
