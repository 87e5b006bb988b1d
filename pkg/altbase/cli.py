"""
The altbase command line. Every command prints one JSON object

    {"command": ..., "inputs": {...}, "payload": {...}}

and exits with 0 on success, 1 on a domain error (the payload then holds
"error" and "message") and 2 on a malformed invocation.
"""
import argparse
import json
import os
import sys
from fractions import Fraction
from typing import List, Optional

import altbase
from altbase.analysis.certify import (
    certificate_rationals,
    check_pair,
    classify_delta,
    finiteness_sample_check,
    necessary_conditions,
    periodicity_certificate,
)
from altbase.analysis.ppfamily import gamma_scan, pp_rewrite
from altbase.arith.exactnum import Polynomial
from altbase.arith.numberfield import FieldElement, sign_of
from altbase.errors import AltBaseError, DigitNotInAlphabet
from altbase.io.load import format_rational, parse_base_ref, parse_element, parse_rational, parse_word
from altbase.numeration.admissibility import is_admissible
from altbase.numeration.base import digit_alphabet, pp_family, shift
from altbase.numeration.expansion import (
    DeltaWord,
    DigitWord,
    ExpansionKind,
    ExpansionReport,
    block_decode,
    block_encode,
    expand_signed,
    expansion_of_one,
    greedy_expand,
    quasi_greedy_one,
    value_of,
)


def _approx(z) -> dict:
    z = complex(z)
    if z.imag == 0:
        return {'approx': z.real}
    return {'approx': [z.real, z.imag]}


def element_json(a: FieldElement):
    """ 'p/q' for rationals, otherwise the exact coordinates and a labeled float. """
    if a.is_rational:
        return format_rational(a.rational_value)
    return {'coords': [format_rational(c) for c in a.coords], 'approx': float(a)}


def poly_json(poly: Polynomial) -> list:
    return [c.numerator if c.denominator == 1 else format_rational(c) for c in poly.coeffs]


def report_json(report: ExpansionReport) -> dict:
    remainder = report.remainder_at_cutoff
    return {
        'word': str(report.word),
        'kind': report.kind.value,
        'steps_used': report.steps_used,
        'cycle_start': report.cycle_start,
        'cycle_length': report.cycle_length,
        'remainder_at_cutoff': None if remainder is None else element_json(remainder),
        'normalization': report.normalization,
    }


def _cap(args) -> int:
    if args.cap is not None:
        return args.cap
    env = os.environ.get('ALTBASE_CAP')
    if env:
        return int(env)
    return altbase.config['CAP']


def cmd_expand(args) -> dict:
    base = parse_base_ref(args.base)
    x = parse_element(args.x, base.field)
    cap = _cap(args)
    if sign_of(x) >= 0 and sign_of(x - 1) < 0:
        return report_json(greedy_expand(base, x, cap))
    s, pointed = expand_signed(base, x, cap)
    return {
        'sign': s,
        'integer_part': ','.join(str(d) for d in pointed.integer_part),
        'fractional_part': str(pointed.fractional_part),
        'kind': pointed.kind.value,
    }


def cmd_one(args) -> dict:
    base = parse_base_ref(args.base)
    cap = _cap(args)
    shifts = []
    for i in range(1, base.period + 1):
        b = shift(base, i)
        shifts.append(
            {
                'shift': i,
                'one': report_json(expansion_of_one(b, cap)),
                'quasi_greedy_one': report_json(quasi_greedy_one(b, args.depth, cap)),
            }
        )
    return {'shifts': shifts}


def cmd_admissible(args) -> dict:
    base = parse_base_ref(args.base)
    word = parse_word(args.word)
    verdict = is_admissible(base, word, args.depth, _cap(args))
    return {'verdict': verdict.kind.value, 'position': verdict.position}


def cmd_value(args) -> dict:
    base = parse_base_ref(args.base)
    word = parse_word(args.word)
    return {'value': element_json(value_of(base, word))}


def _classification_json(c) -> dict:
    return {
        'kind': c.kind.value,
        'is_algebraic_integer': c.is_algebraic_integer,
        'is_unit': c.is_unit,
        'minpoly': poly_json(c.minpoly),
        'delta': {'approx': c.delta_approx},
        'conjugates': [
            {'root': _approx(m.root), 'modulus': {'approx': m.modulus}, 'band': m.band}
            for m in c.conjugate_moduli
        ],
    }


def _finiteness_json(report) -> dict:
    return {
        'samples': report.samples,
        'checked': report.checked,
        'undecided': report.undecided,
        'skipped': report.skipped,
        'counterexamples': [
            {'u': str(u), 'w': str(w), 'operation': op, 'result': report_json(result)}
            for u, w, op, result in report.counterexamples
        ],
        'message': report.message,
    }


def cmd_classify(args) -> dict:
    base = parse_base_ref(args.base)
    cap = _cap(args)
    dashboard = necessary_conditions(base, cap, args.depth, args.samples)
    return {
        'classification': _classification_json(dashboard.classification),
        'positivity': [
            {
                'conjugate': _approx(row.conjugate),
                'is_identity': row.is_identity,
                'values': [_approx(v) for v in row.values],
                'verdict': row.verdict,
                'band_flags': list(row.band_flags),
            }
            for row in dashboard.positivity
        ],
        'shifts': [
            {
                'shift': i,
                'one': str(one.word),
                'one_kind': one.kind.value,
                'quasi_greedy_one': str(quasi.word),
                'quasi_greedy_kind': quasi.kind.value,
            }
            for i, (one, quasi) in enumerate(
                zip(dashboard.one_expansions, dashboard.quasi_greedy), start=1
            )
        ],
        'finiteness': _finiteness_json(dashboard.finiteness),
        'checks': dashboard.checks,
    }


def cmd_certify(args) -> dict:
    base = parse_base_ref(args.base)
    cap = _cap(args)
    if args.x:
        xs = [parse_rational(x) for x in args.x.split(',')]
        min_blocks = 0
    else:
        xs = certificate_rationals(base, args.n, args.m, cap)
        min_blocks = args.n + args.m + 1
    certificate = periodicity_certificate(base, xs, cap, min_blocks)
    return {
        'rationals': [
            {'x': format_rational(Fraction(p, q)), 'word': str(rep.word), 'kind': rep.kind.value}
            for p, q, rep in certificate.rationals
        ],
        'r': certificate.r,
        's': certificate.s,
        'matrix': [[poly_json(entry) for entry in row] for row in certificate.matrix],
        'detpoly': poly_json(certificate.detpoly),
        'checks': certificate.checks,
        'numeric_rank': certificate.numeric_rank,
        'rank_certified_exactly': certificate.rank_certified_exactly,
        'classification': _classification_json(
            classify_delta(base.field.minpoly, base.field.root_isolator)
        ),
    }


def cmd_convert(args) -> dict:
    base = parse_base_ref(args.base)
    digits = digit_alphabet(base).digits
    index = {d: i for i, d in enumerate(digits)}
    if args.word is not None:
        word = parse_word(args.word)
        dw = block_encode(base, word)
        try:
            indices = DigitWord(
                tuple(index[d] for d in dw.preperiod), tuple(index[d] for d in dw.period)
            )
        except KeyError as err:
            raise DigitNotInAlphabet(f'A block of {word} is not a digit of D.') from err
    else:
        indices = parse_word(args.indices)
        try:
            dw = DeltaWord(
                tuple(digits[i] for i in indices.preperiod),
                tuple(digits[i] for i in indices.period),
            )
        except IndexError as err:
            raise DigitNotInAlphabet(f'D has only {len(digits)} digits.') from err
        word = block_decode(base, dw)
    return {
        'word': str(word.canonical()),
        'indices': str(indices.canonical()),
        'delta_word': {
            'preperiod': [element_json(d) for d in dw.preperiod],
            'period': [element_json(d) for d in dw.period],
        },
        'alphabet': [element_json(d) for d in digits],
    }


def cmd_pp_rewrite(args) -> dict:
    x = parse_rational(args.x)
    cap = _cap(args)
    report, steps = pp_rewrite(args.m, x, cap, trace=True)
    payload = report_json(report)
    greedy = greedy_expand(pp_family(args.m), x, cap)
    payload['matches_greedy'] = greedy.word == report.word
    if args.trace:
        payload['trace'] = [
            {
                'rule': step.rule,
                'position': step.position,
                'before': [list(block) for block in step.before],
                'after': [list(block) for block in step.after],
                'value_preserved': step.value_preserved,
            }
            for step in steps
        ]
    return payload


def cmd_gamma_scan(args) -> dict:
    base = parse_base_ref(args.base)
    report = gamma_scan(base, args.qmax, _cap(args), args.workers, not args.all)
    failure = None
    if report.first_failure is not None:
        x, rep = report.first_failure
        failure = {'x': format_rational(x), 'approx': float(x), **report_json(rep)}
    return {
        'verified_lower': format_rational(report.verified_lower),
        'first_failure': failure,
        'undecided': None if report.undecided is None else format_rational(report.undecided),
        'qmax': report.qmax,
        'cap': report.cap,
        'classified': len(report.table),
    }


def cmd_f_check(args) -> dict:
    base = parse_base_ref(args.base)
    cap = _cap(args)
    if args.u is not None or args.w is not None:
        if args.u is None or args.w is None:
            raise ValueError('--u and --w must be given together.')
        u, w = parse_word(args.u), parse_word(args.w)
        failures = check_pair(base, u, w, cap)
        return {
            'failures': [{'operation': op, 'result': report_json(rep)} for op, rep in failures],
            'holds': not failures,
        }
    report = finiteness_sample_check(base, args.samples, cap, args.seed, args.max_length)
    return _finiteness_json(report)


COMMANDS = {
    'expand': cmd_expand,
    'one': cmd_one,
    'admissible': cmd_admissible,
    'classify': cmd_classify,
    'certify': cmd_certify,
    'value': cmd_value,
    'convert': cmd_convert,
    'pp-rewrite': cmd_pp_rewrite,
    'gamma-scan': cmd_gamma_scan,
    'f-check': cmd_f_check,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--cap', type=int, help='step cap of every expansion')
    common.add_argument('--depth', type=int, help='comparison depth for truncated words')
    common.add_argument('--trace', action='store_true', help='include per-step traces')
    output = common.add_mutually_exclusive_group()
    output.add_argument(
        '--json', dest='text', action='store_false', default=False, help='JSON output (default)'
    )
    output.add_argument('--text', dest='text', action='store_true', help='key: value output')

    parser = argparse.ArgumentParser(
        prog='altbase', description='Exact numeration in alternate bases.'
    )
    parser.add_argument('--version', action='version', version=altbase.__version__)
    sub = parser.add_subparsers(dest='command', required=True)

    def add(name, help):
        return sub.add_parser(name, parents=[common], help=help)

    p = add('expand', 'greedy expansion of x')
    p.add_argument('--base', required=True)
    p.add_argument('--x', required=True, help='p/q or [c0,c1,...]')

    p = add('one', 'd(1) and d*(1) in every shift')
    p.add_argument('--base', required=True)

    p = add('admissible', 'is a word the greedy expansion of some x in [0, 1)')
    p.add_argument('--base', required=True)
    p.add_argument('--word', required=True)

    p = add('classify', 'the necessary-condition dashboard')
    p.add_argument('--base', required=True)
    p.add_argument('--samples', type=int, default=20, help='(F) sample pairs')

    p = add('certify', 'the periodicity certificate matrix')
    p.add_argument('--base', required=True)
    p.add_argument('--x', help='comma separated rationals, one per beta')
    p.add_argument('--n', type=int, default=0)
    p.add_argument('--m', type=int, default=1)

    p = add('value', 'exact value of a word')
    p.add_argument('--base', required=True)
    p.add_argument('--word', required=True)

    p = add('convert', 'B-word to delta-word over D and back')
    p.add_argument('--base', required=True)
    direction = p.add_mutually_exclusive_group(required=True)
    direction.add_argument('--word', help='a B-word')
    direction.add_argument('--indices', help='a word of indices into the sorted alphabet D')

    p = add('pp-rewrite', 'purely periodic expansion by block rewriting')
    p.add_argument('--m', type=int, required=True)
    p.add_argument('--x', required=True)

    p = add('gamma-scan', 'first rational without a purely periodic expansion')
    p.add_argument('--base', required=True)
    p.add_argument('--qmax', type=int, required=True)
    p.add_argument('--workers', type=int)
    p.add_argument('--all', action='store_true', help='classify past the first failure')

    p = add('f-check', 'sample the finiteness property (F)')
    p.add_argument('--base', required=True)
    p.add_argument('--samples', type=int, default=50)
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--max-length', type=int, default=8)
    p.add_argument('--u')
    p.add_argument('--w')
    return parser


_GLOBAL_FLAGS = ('command', 'trace', 'text')


def _inputs(args) -> dict:
    return {
        key: value
        for key, value in vars(args).items()
        if key not in _GLOBAL_FLAGS and value is not None and value is not False
    }


def _emit(result: dict, text: bool) -> None:
    if text:
        for key, value in result['payload'].items():
            print(f'{key}: {json.dumps(value)}')
    else:
        print(json.dumps(result, indent=2))


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return err.code
    result = {'command': args.command, 'inputs': _inputs(args)}
    try:
        result['payload'] = COMMANDS[args.command](args)
        status = 0
    except AltBaseError as err:
        result['payload'] = {'error': type(err).__name__, 'message': str(err)}
        status = 1
    except (ValueError, OSError) as err:
        print(f'altbase {args.command}: error: {err}', file=sys.stderr)
        return 2
    _emit(result, args.text)
    return status


if __name__ == '__main__':
    sys.exit(main())
