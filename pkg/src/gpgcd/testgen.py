"""
Seeded generators for the benchmark instance families.

Randomness comes from NumPy's PCG64 bit generator; instance ``i`` of a
suite seeded with ``s`` uses ``numpy.random.default_rng([s, i])``, so any
single instance can be regenerated without replaying the suite.
"""

from dataclasses import dataclass

import numpy as np

from .kernels import svd
from .polynomial import UniPoly, derivative, mul
from .structmat import subresultant_matrix

__all__ = [
    'RandomGcdSpec', 'random_with_gcd', 'well_posed_filter', 'random_suite',
    'zeng_root_circles', 'zeng_clustered_roots', 'zeng_large_gcd',
    'high_multiplicity_bini', 'high_multiplicity_zeng', 'expand_power_product',
]

# log10 bound on the coefficient 1-norm of expanded products
SAFE_LOG10 = 300.0


@dataclass(frozen=True)
class RandomGcdSpec:
    m: int
    n: int
    d: int
    coeff_range: tuple = (-10.0, 10.0)
    noise_f: float = 0.1
    noise_g: float = 0.1
    seed: int = 0
    field: str = 'real'

    def __post_init__(self):
        if not 0 < self.d <= self.n <= self.m:
            raise ValueError(f'need 0 < d <= n <= m, got {self.m, self.n, self.d}')
        if self.noise_f < 0 or self.noise_g < 0:
            raise ValueError('noise must be nonnegative')
        if self.field not in ('real', 'complex'):
            raise ValueError(f'unknown field {self.field!r}')


def _rand(rng, size, spec):
    lo, hi = spec.coeff_range
    c = rng.uniform(lo, hi, size)
    if spec.field == 'complex':
        c = c + 1j * rng.uniform(lo, hi, size)
    return c


def _monic(rng, deg, spec):
    return UniPoly(np.concatenate([[1.0], _rand(rng, deg, spec)]), spec.field)


def _noisy(p0, rng, deg, e, spec):
    if e == 0:
        return p0
    noise = UniPoly(_rand(rng, deg + 1, spec), spec.field)
    return p0 + noise * (e / np.sqrt(np.sum(np.abs(noise.coeffs) ** 2)))


def random_with_gcd(spec, rng=None):
    """Monic ``F0 = H*P``, ``G0 = H*Q`` plus noise of exact 2-norm ``e_F, e_G``.

    Returns ``(F, G, H)``.  Noise polynomials have degrees ``m-1`` and
    ``n-1``, so leading coefficients stay 1.
    """
    rng = np.random.default_rng(spec.seed) if rng is None else rng
    h = _monic(rng, spec.d, spec)
    p = _monic(rng, spec.m - spec.d, spec)
    q = _monic(rng, spec.n - spec.d, spec)
    f0, g0 = mul(h, p), mul(h, q)
    f = _noisy(f0, rng, spec.m - 1, spec.noise_f, spec)
    g = _noisy(g0, rng, spec.n - 1, spec.noise_g, spec)
    return f, g, h


def well_posed_filter(F, G, d, threshold=1.0):
    """True iff the smallest singular value of ``N_d(F, G)`` is ``>= threshold``."""
    if F.degree < G.degree:
        F, G = G, F
    if not d < G.degree:
        raise ValueError('well-posedness filter needs d < min degree')
    return bool(svd(subresultant_matrix(F, G, d)).sigma_min >= threshold)


def random_suite(spec, count, max_tries=1000):
    """``count`` filtered instances ``(F, G, H)``; instance ``i`` uses seed
    ``[spec.seed, i]``.  The filter is skipped when ``d == n``."""
    out = []
    for i in range(count):
        rng = np.random.default_rng([spec.seed, i])
        for _ in range(max_tries):
            f, g, h = random_with_gcd(spec, rng)
            if spec.d == spec.n or well_posed_filter(f, g, spec.d):
                break
        else:
            raise RuntimeError(f'instance {i}: no well-posed draw in {max_tries} tries')
        out.append((f, g, h))
    return out


def _quadratic_product(r, n, js):
    p = UniPoly([1.0])
    for j in js:
        a, b = r * np.cos(j * np.pi / n), r * np.sin(j * np.pi / n)
        p = mul(p, UniPoly([1.0, -2.0 * a, a * a + b * b]))
    return p


def zeng_root_circles(n):
    """``(u*v, u*w, u)`` with zeros on circles of radii 0.5 and 1.5."""
    if n < 2 or n % 2:
        raise ValueError('n must be even and >= 2')
    k = n // 2
    u = _quadratic_product(0.5, n, range(1, k + 1))
    v = _quadratic_product(1.5, n, range(1, k + 1))
    w = _quadratic_product(0.5, n, range(k + 1, n + 1))
    return mul(u, v), mul(u, w), u


def zeng_clustered_roots():
    """``p = prod(x - x_j)``, ``q = prod(x - x_j + 10^-j)``, ``x_j = (-1)^j j/2``."""
    j = np.arange(1, 11)
    xj = (-1.0) ** j * (j / 2.0)
    return UniPoly.from_roots(xj), UniPoly.from_roots(xj - 10.0 ** (-j))


def zeng_large_gcd(n, seed=0, literal_w=False):
    """``(u*v, u*w, u)`` with ``u`` of degree ``n`` with integer coefficients
    in ``[-5, 5]``, ``v = 1+x+x^2+x^3`` and ``w = 1-x+x^2-x^3+x^4``.

    With ``literal_w=True``, ``w = 1-x+x^2-x^3`` is used instead.  That
    choice shares the factor ``x^2+1`` with ``v``, so the exact GCD has
    degree ``n+2`` and a degree-``n`` GCD is not unique.
    """
    if n < 1:
        raise ValueError('n must be positive')
    rng = np.random.default_rng(seed)
    c = rng.integers(-5, 6, n + 1).astype(float)
    while c[0] == 0:
        c[0] = rng.integers(-5, 6)
    u = UniPoly(c)
    v = UniPoly([1.0, 1.0, 1.0, 1.0])
    w = UniPoly([-1.0, 1.0, -1.0, 1.0] if literal_w else [1.0, -1.0, 1.0, -1.0, 1.0])
    return mul(u, v), mul(u, w), u


def expand_power_product(factors):
    """Expand ``prod(p_i ** e_i)`` for ``(UniPoly, exponent)`` pairs.

    Raises ``OverflowError`` when the coefficient 1-norm bound
    ``prod(||p_i||_1 ** e_i)`` exceeds ``10**SAFE_LOG10``.
    """
    bound = sum(e * np.log10(np.sum(np.abs(p.coeffs))) for p, e in factors)
    if bound > SAFE_LOG10:
        raise OverflowError(f'coefficients may reach 1e{bound:.0f}: beyond double range')
    out = UniPoly([1.0])
    for p, e in factors:
        for _ in range(e):
            out = mul(out, p)
    return out


def high_multiplicity_bini(k):
    """``u = (x^3+3x-1)(x-1)^k``, ``v = u'`` and their GCD ``(x-1)^(k-1)``."""
    if k < 1:
        raise ValueError('k must be positive')
    x1 = UniPoly([1.0, -1.0])
    u = expand_power_product([(UniPoly([1.0, 0.0, 3.0, -1.0]), 1), (x1, k)])
    return u, derivative(u), expand_power_product([(x1, k - 1)])


def high_multiplicity_zeng(m1, m2, m3, m4):
    """``p = (x-1)^m1 (x-2)^m2 (x-3)^m3 (x-4)^m4``, ``q = p'`` and their GCD."""
    mults = (m1, m2, m3, m4)
    if min(mults) < 0 or not any(mults):
        raise ValueError('multiplicities must be nonnegative and not all zero')
    lin = [UniPoly([1.0, -float(r)]) for r in (1, 2, 3, 4)]
    p = expand_power_product(list(zip(lin, mults)))
    gcd = expand_power_product([(q, max(e - 1, 0)) for q, e in zip(lin, mults)])
    return p, derivative(p), gcd
