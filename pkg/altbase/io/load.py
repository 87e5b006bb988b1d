"""
Reading and writing bases, words and rationals: the BaseConfig JSON format,
the pp:m[,shiftK] and file:<path> base references and the "a,b(c,d)" word
syntax used on the command line.
"""
import json
import pathlib
import re
from fractions import Fraction
from typing import Union

from altbase.arith.exactnum import to_rational
from altbase.arith.numberfield import FieldElement, NumberField
from altbase.errors import MalformedConfig
from altbase.numeration.base import AlternateBase, BaseConfig, make_base, pp_family, shift
from altbase.numeration.expansion import DigitWord

_PP_REF = re.compile(r'^pp:(\d+)(?:,shift(\d+))?$')


def parse_rational(s: Union[str, int, Fraction]) -> Fraction:
    """ Parses 'p/q' or 'p' into a Fraction. Raises ValueError if malformed. """
    return to_rational(s)


def format_rational(q) -> str:
    """ Always 'p/q', so 0 is '0/1' and 2 is '2/1'. """
    q = Fraction(q)
    return f'{q.numerator}/{q.denominator}'


def parse_word(s: str) -> DigitWord:
    """
    Parses the word syntax 'x1,x2(y1,y2,...)': comma separated digits with
    the period in parentheses. '(1,0)' is purely periodic, '1,1' finite and
    '' or '0' the zero word.

    Raises
    ------
    ValueError
        If s is malformed or a digit is negative.
    """
    s = s.replace(' ', '')
    match = re.fullmatch(r'([0-9,]*)(?:\(([0-9,]+)\))?', s)
    if match is None:
        raise ValueError(f'Malformed digit word {s!r}, expected e.g. "1,0(0,1)".')
    head, period = match.group(1), match.group(2)

    def digits(part):
        part = part.strip(',')
        if not part:
            return ()
        items = part.split(',')
        if any(item == '' for item in items):
            raise ValueError(f'Empty digit in the word {s!r}.')
        return tuple(int(item) for item in items)

    return DigitWord(digits(head), digits(period or ''))


def parse_element(s: str, field: NumberField) -> FieldElement:
    """
    Parses a rational 'p/q' or a coordinate vector '[c0,c1,...]' in the power
    basis of field.
    """
    s = s.strip()
    if s.startswith('['):
        if not s.endswith(']'):
            raise ValueError(f'Malformed coordinate vector {s!r}.')
        items = [item for item in s[1:-1].split(',') if item.strip()]
        coords = [to_rational(item) for item in items]
        if len(coords) > field.degree:
            raise ValueError(f'{s} has more than {field.degree} coordinates.')
        return field.element(coords + [Fraction(0)] * (field.degree - len(coords)))
    return field.element(to_rational(s))


def parse_base_config(obj: dict) -> Union[BaseConfig, int]:
    """
    Validates a decoded BaseConfig JSON object. Returns the family
    parameter m for the {"pp_family": m} form.

    Raises
    ------
    MalformedConfig
        If keys are missing or values are malformed.
    """
    if not isinstance(obj, dict):
        raise MalformedConfig('A base configuration must be a JSON object.')
    if 'pp_family' in obj:
        m = obj['pp_family']
        if not isinstance(m, int) or m < 1:
            raise MalformedConfig(f'pp_family must be an integer >= 1, got {m!r}.')
        return m
    try:
        minpoly = tuple(int(c) for c in obj['minpoly'])
        lo, hi = (to_rational(x) for x in obj['root_interval'])
        betas = tuple(tuple(to_rational(c) for c in beta) for beta in obj['betas'])
    except KeyError as err:
        raise MalformedConfig(f'The base configuration is missing the key {err}.') from err
    except (TypeError, ValueError) as err:
        raise MalformedConfig(f'Malformed base configuration: {err}') from err
    return BaseConfig(minpoly, (lo, hi), betas)


def load_base(path: Union[str, pathlib.Path]) -> AlternateBase:
    """
    Loads an alternate base from a BaseConfig JSON file.

    Parameters
    ----------
    path: str or pathlib.Path
        The JSON file.

    Returns
    -------
    AlternateBase

    Raises
    ------
    FileNotFoundError
        If path does not exist.
    MalformedConfig
        If the file is not valid JSON or not a valid configuration.

    Example
    -------
    | # base.json: {"minpoly": [-1, -1, 1], "root_interval": ["1", "2"], "betas": [["0", "1"]]}
    | base = load_base('base.json')  # the golden ratio base
    """
    path = pathlib.Path(path)
    with open(path) as f:
        try:
            obj = json.load(f)
        except json.JSONDecodeError as err:
            raise MalformedConfig(f'{path} is not valid JSON: {err}') from err
    cfg = parse_base_config(obj)
    if isinstance(cfg, int):
        return pp_family(cfg)
    return make_base(cfg)


def base_to_config(base: AlternateBase) -> dict:
    """ The BaseConfig JSON object of base, rationals written as 'p/q'. """
    lo, hi = base.field.root_isolator
    return {
        'minpoly': base.field.minpoly.integer_coeffs(),
        'root_interval': [format_rational(lo), format_rational(hi)],
        'betas': [[format_rational(c) for c in beta.coords] for beta in base.betas],
    }


def save_base(base: AlternateBase, path: Union[str, pathlib.Path]) -> pathlib.Path:
    """ Writes base as a BaseConfig JSON file and returns the path. """
    path = pathlib.Path(path)
    with open(path, 'w') as f:
        json.dump(base_to_config(base), f, indent=2)
    return path


def parse_base_ref(ref: str) -> AlternateBase:
    """
    Resolves a base reference: 'pp:m' is pp_family(m), 'pp:m,shiftK' its
    shift B^(K) and 'file:<path>' a BaseConfig JSON file.

    Raises
    ------
    ValueError
        If ref matches none of these forms.
    """
    ref = ref.strip()
    match = _PP_REF.match(ref)
    if match:
        base = pp_family(int(match.group(1)))
        if match.group(2) is not None:
            k = int(match.group(2))
            if k < 1:
                raise ValueError(f'Shift indices start at 1, got {ref!r}.')
            base = shift(base, k)
        return base
    if ref.startswith('file:'):
        return load_base(ref[len('file:') :])
    raise ValueError(f'Unknown base reference {ref!r}, expected pp:m, pp:m,shiftK or file:<path>.')
