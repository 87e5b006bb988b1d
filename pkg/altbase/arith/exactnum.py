"""
Exact rational arithmetic, polynomials over Q and certified real-root
isolation. Polynomials are sympy.Poly objects over QQ behind a Fraction
interface. Nothing in this module touches floating point.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Union

import sympy

from altbase.errors import InvalidIsolator, NotSquarefree, ZeroPolynomial

# Rationals are fractions.Fraction: always in lowest terms with a positive denominator.
Rational = Fraction
Scalar = Union[int, Fraction]
# The indeterminate of every Polynomial.
X = sympy.Symbol('X')


def to_rational(value: Union[int, str, Fraction]) -> Fraction:
    """
    Converts an int, a Fraction or a 'p/q' (or 'p') string to a Fraction.

    Parameters
    ----------
    value: int, str, or Fraction
        The number to convert. Floats are refused because they are not exact.

    Returns
    -------
    Fraction
        The canonical rational.

    Raises
    ------
    ValueError
        If value is a float or a malformed string.
    """
    if isinstance(value, float):
        raise ValueError(f'Refusing to convert the float {value} to an exact rational.')
    if isinstance(value, str):
        value = value.strip()
        if not value:
            raise ValueError('Empty rational string.')
    return Fraction(value)


def sign(value) -> int:
    """ -1, 0 or +1 for a Fraction (or int). """
    return (value > 0) - (value < 0)


@dataclass(frozen=True)
class Interval:
    """
    A closed interval [lo, hi] with rational endpoints.
    """

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, 'lo', Fraction(self.lo))
        object.__setattr__(self, 'hi', Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f'Interval lower bound {self.lo} exceeds the upper bound {self.hi}.')

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def is_degenerate(self) -> bool:
        return self.lo == self.hi

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def excludes_zero(self) -> bool:
        return self.lo > 0 or self.hi < 0

    def __add__(self, other):
        if isinstance(other, Interval):
            return Interval(self.lo + other.lo, self.hi + other.hi)
        return Interval(self.lo + other, self.hi + other)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Interval):
            products = (
                self.lo * other.lo,
                self.lo * other.hi,
                self.hi * other.lo,
                self.hi * other.hi,
            )
            return Interval(min(products), max(products))
        if other >= 0:
            return Interval(self.lo * other, self.hi * other)
        return Interval(self.hi * other, self.lo * other)

    __rmul__ = __mul__

    def __iter__(self):
        # Allows lo, hi = interval.
        return iter((self.lo, self.hi))

    def __repr__(self):
        return f'Interval({self.lo}, {self.hi})'


class Polynomial:
    """
    A polynomial with rational coefficients, backed by a sympy.Poly over QQ.
    coeffs holds the coefficients as Fractions in ascending degree order with
    trailing zeros stripped, so the zero polynomial has no coefficients and
    degree -1.
    """

    __slots__ = ('coeffs', 'poly')

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)
        self.poly = sympy.Poly.from_list(
            [_to_sympy(x) for x in reversed(self.coeffs)] or [0], X, domain=sympy.QQ
        )

    @classmethod
    def from_sympy(cls, poly: sympy.Poly) -> 'Polynomial':
        return cls(_to_fraction(c) for c in reversed(poly.all_coeffs()))

    @classmethod
    def from_expr(cls, expr: sympy.Expr) -> 'Polynomial':
        """ Converts a sympy expression in X with rational coefficients. """
        return cls.from_sympy(sympy.Poly(expr, X, domain=sympy.QQ))

    @classmethod
    def monomial(cls, degree: int, coeff: Scalar = 1) -> 'Polynomial':
        return cls([0] * degree + [coeff])

    @classmethod
    def constant(cls, value: Scalar) -> 'Polynomial':
        return cls([value])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def as_expr(self) -> sympy.Expr:
        return self.poly.as_expr()

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __getstate__(self):
        return {'coeffs': self.coeffs}

    def __setstate__(self, state):
        self.__init__(state['coeffs'])

    def __repr__(self):
        return f'Polynomial({[str(c) for c in self.coeffs]})'

    def __str__(self):
        if self.is_zero:
            return '0'
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(f'{c}')
            elif i == 1:
                terms.append(f'{c}*X')
            else:
                terms.append(f'{c}*X^{i}')
        return ' + '.join(reversed(terms))

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Polynomial.from_sympy(self.poly + other.poly)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial.from_sympy(-self.poly)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Polynomial.from_sympy(self.poly - other.poly)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Polynomial.from_sympy(self.poly * other.poly)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError('Negative polynomial powers are not polynomials.')
        return Polynomial.from_sympy(self.poly**exponent)

    def __divmod__(self, other):
        other = self._coerce(other)
        if other.is_zero:
            raise ZeroDivisionError('Polynomial division by the zero polynomial.')
        q, r = self.poly.div(other.poly)
        return Polynomial.from_sympy(q), Polynomial.from_sympy(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        """
        Evaluates at x. Rationals go through sympy, anything else that
        supports + and * with Fractions (field elements, intervals) by Horner.
        """
        if isinstance(x, (int, Fraction)):
            return _to_fraction(self.poly.eval(_to_sympy(x)))
        result = Fraction(0)
        for c in reversed(self.coeffs):
            result = result * x + c
        return result

    def derivative(self) -> 'Polynomial':
        return Polynomial.from_sympy(self.poly.diff(X))

    def monic(self) -> 'Polynomial':
        if self.is_zero:
            return self
        return Polynomial.from_sympy(self.poly.monic())

    def is_palindromic(self) -> bool:
        """ True if the coefficient list reads the same in both directions. """
        return self.coeffs == self.coeffs[::-1]

    def primitive_integer_form(self) -> 'Polynomial':
        """
        Clears the denominators, divides by the content and makes the leading
        coefficient positive.
        """
        if self.is_zero:
            raise ZeroPolynomial('The zero polynomial has no primitive form.')
        _, integral = self.poly.clear_denoms(convert=True)
        _, primitive = integral.primitive()
        if primitive.LC() < 0:
            primitive = -primitive
        return Polynomial.from_sympy(primitive)

    def integer_coeffs(self) -> List[int]:
        """ The coefficients as ints, raising ValueError if any is not an integer. """
        out = []
        for c in self.coeffs:
            if c.denominator != 1:
                raise ValueError(f'{self} does not have integer coefficients.')
            out.append(c.numerator)
        return out


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """ The monic greatest common divisor of a and b (zero if both are zero). """
    return Polynomial.from_sympy(a.poly.gcd(b.poly)).monic()


def squarefree_part(p: Polynomial) -> Polynomial:
    """ p / gcd(p, p'), made monic. """
    if p.is_zero:
        raise ZeroPolynomial('The zero polynomial has no squarefree part.')
    return Polynomial.from_sympy(p.poly.sqf_part()).monic()


def check_squarefree(p: Polynomial) -> None:
    """
    Raises ZeroPolynomial or NotSquarefree unless p is a nonzero squarefree
    polynomial.
    """
    if p.is_zero:
        raise ZeroPolynomial('Expected a nonzero polynomial.')
    if p.degree > 0 and not p.poly.is_sqf:
        raise NotSquarefree(f'gcd(p, dp/dx) is nonconstant for p = {p}.')


def sturm_sequence(p: Polynomial) -> List[Polynomial]:
    """
    The Sturm sequence p0 = p, p1 = p', p_{i+1} = -rem(p_{i-1}, p_i).
    """
    if p.is_zero:
        raise ZeroPolynomial('The zero polynomial has no Sturm sequence.')
    return [Polynomial.from_sympy(q) for q in p.poly.sturm() if not q.is_zero]


def sign_variations(sequence: Sequence[Polynomial], x: Fraction) -> int:
    """ Number of sign changes of the sequence evaluated at x, zeros skipped. """
    signs = [sign(q(x)) for q in sequence]
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(p: Polynomial, lo: Fraction, hi: Fraction) -> int:
    """ Number of distinct real roots of p in the half-open interval (lo, hi]. """
    sequence = sturm_sequence(p)
    return sign_variations(sequence, Fraction(lo)) - sign_variations(sequence, Fraction(hi))


def isolate_real_roots(p: Polynomial) -> List[Interval]:
    """
    Isolates the real roots of a squarefree polynomial.

    Parameters
    ----------
    p: Polynomial
        A nonzero squarefree polynomial. Pass squarefree_part(p) first if
        you are not sure.

    Returns
    -------
    list of Interval
        Pairwise disjoint closed intervals in increasing order, each
        containing exactly one real root. p has nonzero, opposite signs at
        the endpoints of each interval, except for rational roots which are
        returned as degenerate intervals [r, r].

    Raises
    ------
    ZeroPolynomial
        If p = 0.
    NotSquarefree
        If gcd(p, p') is nonconstant.

    Example
    -------
    | from altbase.arith.exactnum import Polynomial, isolate_real_roots
    |
    | isolate_real_roots(Polynomial([-1, -3, 1]))  # x^2 - 3x - 1
    """
    check_squarefree(p)
    if p.degree == 0:
        return []
    found = [
        Interval(_to_fraction(lo), _to_fraction(hi)) for (lo, hi), _ in p.poly.intervals()
    ]
    found.sort(key=lambda iv: iv.lo)
    # Neighbours may share a bisection endpoint; shrink them apart.
    for i in range(len(found) - 1):
        while found[i].hi >= found[i + 1].lo:
            for j in (i, i + 1):
                if not found[j].is_degenerate:
                    found[j] = refine_root(p, found[j], found[j].width / 2)
    return found


def refine_root(p: Polynomial, iv: Interval, width: Fraction) -> Interval:
    """
    Shrinks an isolating interval until its width is at most width.

    Parameters
    ----------
    p: Polynomial
        The polynomial whose root is isolated.
    iv: Interval
        An interval isolating exactly one root of p (opposite signs at the
        endpoints, or a degenerate interval at an exact root).
    width: Fraction
        The target width.

    Returns
    -------
    Interval
        A subinterval of iv containing the same root.

    Raises
    ------
    InvalidIsolator
        If p does not change sign over iv.
    """
    lo, hi = iv.lo, iv.hi
    if lo == hi:
        if p(lo) != 0:
            raise InvalidIsolator(f'The degenerate interval {iv} is not a root of {p}.')
        return iv
    s_lo, s_hi = sign(p(lo)), sign(p(hi))
    if s_lo == 0:
        return Interval(lo, lo)
    if s_hi == 0:
        return Interval(hi, hi)
    if s_lo * s_hi > 0:
        raise InvalidIsolator(f'{p} does not change sign over {iv}.')
    width = Fraction(width)
    if lo < 0 < hi:
        # sympy only refines intervals on one side of 0.
        s_zero = sign(p(Fraction(0)))
        if s_zero == 0:
            return Interval(0, 0)
        if s_zero == s_lo:
            lo = Fraction(0)
        else:
            hi = Fraction(0)
    if hi - lo <= width:
        return Interval(lo, hi)
    s, t = p.poly.refine_root(_to_sympy(lo), _to_sympy(hi), eps=_to_sympy(width))
    # Clip to iv: both intervals contain the root.
    return Interval(max(lo, _to_fraction(s)), min(hi, _to_fraction(t)))


def _to_sympy(x: Scalar) -> sympy.Rational:
    x = Fraction(x)
    return sympy.Rational(x.numerator, x.denominator)


def _to_fraction(x) -> Fraction:
    x = sympy.Rational(x)
    return Fraction(int(x.p), int(x.q))
