"""
This example scans the rationals p/q with q <= 120 in the shift B^(2) of the
m = 2 family and plots which of them have purely periodic expansions. Every
rational is purely periodic in B itself, but in B^(2) the first failure sits
near 0.41, and 1/2 already has a preperiod.
"""
from fractions import Fraction

import matplotlib.pyplot as plt

import altbase

base = altbase.shift(altbase.pp_family(2), 2)
report = altbase.gamma_scan(base, 120, stop_at_failure=False)

x, failure = report.first_failure
print(f'First rational without a purely periodic expansion: {x} ~ {float(x):.4f}')
print(f'Its expansion is {failure.word} ({failure.kind.value}).')
print(f'd(1/2) = {altbase.greedy_expand(base, Fraction(1, 2)).word}')

fig, ax = plt.subplots(figsize=(8, 5))
altbase.plot_gamma_scan(report, ax=ax)
plt.tight_layout()
plt.show()
