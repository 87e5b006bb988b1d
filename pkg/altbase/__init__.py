import os
import pathlib
import configparser

__version__ = '0.1.0'

# Load the configuration settings.
HERE = pathlib.Path(__file__).parent.resolve()
settings = configparser.ConfigParser()
settings.read(HERE / 'config.ini')

try:
    CAP = settings['Defaults'].getint('cap', 10_000)
    DEPTH = settings['Defaults'].getint('depth', 200)
    WORKERS = settings['Defaults'].getint('workers', 1)
except KeyError:  # Raised if config.ini does not have Defaults.
    CAP, DEPTH, WORKERS = 10_000, 200, 1

try:
    MODULUS_TOL = settings['Tolerances'].getfloat('modulus', 1e-8)
    RANK_TOL = settings['Tolerances'].getfloat('rank', 1e-8)
    ROOT_TOL = settings['Tolerances'].getfloat('root', 1e-10)
except KeyError:  # Raised if config.ini does not have Tolerances.
    MODULUS_TOL, RANK_TOL, ROOT_TOL = 1e-8, 1e-8, 1e-10

# The environment overrides the configured cap.
if os.environ.get('ALTBASE_CAP'):
    CAP = int(os.environ['ALTBASE_CAP'])

config = {
    'ALTBASE_DIR': HERE,
    'CAP': CAP,
    'DEPTH': DEPTH,
    'WORKERS': WORKERS,
    'MODULUS_TOL': MODULUS_TOL,
    'RANK_TOL': RANK_TOL,
    'ROOT_TOL': ROOT_TOL,
}

# Import the exact arithmetic.
from altbase.arith.exactnum import Interval, Polynomial, isolate_real_roots
from altbase.arith.numberfield import NumberField, FieldElement, field_arithmetic
from altbase.arith.numberfield import sign_of, floor_of, embeddings_of

# Import the numeration functions.
from altbase.numeration.base import BaseConfig, AlternateBase, make_base, shift
from altbase.numeration.base import digit_alphabet, pp_family, single_base
from altbase.numeration.expansion import DigitWord, ExpansionKind, ExpansionReport
from altbase.numeration.expansion import greedy_expand, expansion_of_one, quasi_greedy_one
from altbase.numeration.expansion import value_of, block_encode, block_decode
from altbase.numeration.expansion import expand_nonneg, is_B_integer
from altbase.numeration.admissibility import is_admissible, lex_compare

# Import the analysis functions.
from altbase.analysis.certify import classify_delta, positivity_report
from altbase.analysis.certify import periodicity_certificate, finiteness_sample_check
from altbase.analysis.certify import necessary_conditions
from altbase.analysis.ppfamily import pp_rewrite, half_expansion_formula, gamma_scan

# Import the loading and plotting functions.
from altbase.io.load import load_base, parse_base_ref, parse_word
from altbase.plot.plot_gamma_scan import plot_gamma_scan
