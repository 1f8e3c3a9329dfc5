"""
Ill-conditioned families: zeros on two circles, clustered zeros, a GCD of
large degree and high-multiplicity zeros.  Where the exact GCD is known
the relative coefficient error of H is printed.
"""

import time

from gpgcd import gpgcd, relative_error
from gpgcd.testgen import (high_multiplicity_bini, high_multiplicity_zeng, zeng_clustered_roots,
                           zeng_large_gcd, zeng_root_circles)

print('zeros on circles of radii 0.5 and 1.5')
for n in (6, 8, 10, 12):
    p, q, u = zeng_root_circles(n)
    r = gpgcd(p, q, n)
    print(f'  n={n:2d}  error {relative_error(r.h, u):.2e}  iterations {r.iterations}')

# no exact GCD here: the perturbation is the quantity of interest
print('clustered zeros')
p, q = zeng_clustered_roots()
for d in range(1, 11):
    r = gpgcd(p, q, d)
    print(f'  d={d:2d}  perturbation {r.perturbation:.3e}  {r.termination}')

print('GCD of large degree')
for n in (50, 100, 200, 500):
    p, q, u = zeng_large_gcd(n)
    t = time.perf_counter()
    r = gpgcd(p, q, n)
    print(f'  n={n:4d}  error {relative_error(r.h, u):.2e}  {time.perf_counter() - t:6.2f} s')

print('(x^3+3x-1)(x-1)^k and its derivative')
for k in (5, 10, 15, 25):
    u, v, w = high_multiplicity_bini(k)
    r = gpgcd(u, v, k - 1)
    print(f'  k={k:2d}  error {relative_error(r.h, w):.2e}  {r.termination}')

# the last group is beyond what double precision can represent stably
print('(x-1)^a (x-2)^b (x-3)^c (x-4)^e and its derivative')
for ms in ([2, 1, 1, 0], [4, 3, 2, 1], [9, 6, 4, 2], [20, 14, 10, 5], [100, 60, 40, 20]):
    p, q, w = high_multiplicity_zeng(*ms)
    r = gpgcd(p, q, w.degree)
    print(f'  {str(ms):18s}  error {relative_error(r.h, w):.2e}  {r.termination}')
