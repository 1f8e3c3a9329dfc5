"""
Small worked examples: a perturbed pair of quadratics, then two inputs
whose exact GCD has a tiny or a dominant leading coefficient.
"""

import numpy as np

from gpgcd import REAL_MONIC, SolverConfig, UniPoly, gpgcd
from gpgcd.polynomial import mul

np.set_printoptions(precision=10)

# x^2 - 6x + 5 = (x-1)(x-5) and a nearby quadratic with no exact common zero
F = UniPoly([1, -6, 5])
G = UniPoly([1, -6.3, 5.72])

r = gpgcd(F, G, 1)
print('free leading coefficients')
print('  H          ', r.h)
print('  common zero', r.common_zeros())
print('  perturbation %.7g after %d iterations' % (r.perturbation, r.iterations))

# keeping both inputs monic costs more perturbation
r = gpgcd(F, G, 1, kind=REAL_MONIC)
print('monic')
print('  common zero', r.common_zeros())
print('  perturbation %.7g after %d iterations' % (r.perturbation, r.iterations))

# plain gradient projection reaches the same point; its count differs by one
r = gpgcd(F, G, 1, cfg=SolverConfig(method='gradient_projection'))
print('gradient projection: perturbation %.7g, %d iterations' % (r.perturbation, r.iterations))

# exact GCD with a small leading coefficient
C = UniPoly([0.001, 1, 1])
r = gpgcd(mul(UniPoly([1, 0, 1, 1, 1]), C), mul(UniPoly([1, 1, 1, 1]), C), 2)
print('small leading coefficient: H =', r.h.coeffs, 'perturbation %.2e' % r.perturbation)

# and one with a dominant leading coefficient
C = UniPoly([1, 0, 0.001])
F = mul(UniPoly([1, 0, 0, 0, 0, 0, 0]) - UniPoly([0.8, 3, -4, -4, -5, 1]) * 1e-5, C)
G = mul(UniPoly([1, 1, 1, -0.1, 0, 1]), C)
r = gpgcd(F, G, 2)
print('large leading coefficient: H =', r.h.coeffs, 'perturbation %.2e' % r.perturbation)

# the returned pair factors exactly through H
assert r.f_tilde == r.h * r.b and r.g_tilde == r.h * r.a
