"""
This example prints the necessary-condition dashboard of the m = 2 family and
builds the periodicity certificate matrix from two generated rationals.
"""
import altbase
from altbase.analysis.certify import certificate_rationals

base = altbase.pp_family(2)

dashboard = altbase.necessary_conditions(base, samples=10)
print(f'delta is {dashboard.classification.kind.value}, unit: {dashboard.classification.is_unit}')
for name, passed in dashboard.checks.items():
    print(f'{name:30} {passed}')

xs = certificate_rationals(base, n=0, m=1)
certificate = altbase.periodicity_certificate(base, xs, min_preperiod_blocks=2)
print(f'rationals: {[str(x) for x in xs]}')
print(f'det M(X) = {certificate.detpoly}')
for name, passed in certificate.checks.items():
    print(f'{name:30} {passed}')
