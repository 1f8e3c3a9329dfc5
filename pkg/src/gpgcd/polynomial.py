"""
Dense univariate polynomials over the reals or complexes.

Coefficients are stored highest-degree-first, the same order used by the
structured matrices in :mod:`gpgcd.structmat`.
"""

import numpy as np

__all__ = [
    'UniPoly', 'as_poly', 'norm2_sq', 'mul', 'add', 'sub', 'derivative',
    'evaluate', 'perturbation', 'relative_error',
]


class UniPoly:
    """Immutable dense polynomial, coefficients highest degree first.

    Parameters
    ----------
    coeffs : array_like
        Coefficients ``c_n, ..., c_0``.  Leading exact zeros are trimmed;
        an empty or all-zero input gives the zero polynomial ``[0]``.
    field : {'real', 'complex'}, optional
        Field tag.  Inferred from the dtype when omitted.  A real tag on
        coefficients with nonzero imaginary parts raises ``ValueError``.
    """

    __slots__ = ('_c', '_field')

    def __init__(self, coeffs, field=None):
        c = np.atleast_1d(np.asarray(coeffs))
        if c.ndim != 1:
            raise ValueError('coefficients must be one-dimensional')
        if field is None:
            field = 'complex' if np.iscomplexobj(c) else 'real'
        if field == 'real':
            if np.iscomplexobj(c):
                if np.any(c.imag != 0):
                    raise ValueError('real-tagged polynomial with complex coefficients')
                c = c.real
            c = c.astype(float)
        elif field == 'complex':
            c = c.astype(complex)
        else:
            raise ValueError(f'unknown field {field!r}')
        nz = np.flatnonzero(c)
        c = c[nz[0]:] if nz.size else c[:0]
        if c.size == 0:
            c = np.zeros(1, dtype=c.dtype)
        c = c.copy()
        c.setflags(write=False)
        self._c = c
        self._field = field

    @classmethod
    def from_roots(cls, roots, leading=1.0):
        roots = np.asarray(roots)
        c = np.array([leading], dtype=np.result_type(roots, float))
        for r in roots:
            c = np.convolve(c, [1.0, -r])
        return cls(c)

    @property
    def coeffs(self):
        return self._c

    @property
    def field(self):
        return self._field

    @property
    def degree(self):
        return self._c.size - 1

    @property
    def lc(self):
        return self._c[0]

    def is_zero(self):
        return self._c.size == 1 and self._c[0] == 0

    def to_complex(self):
        return self if self._field == 'complex' else UniPoly(self._c, 'complex')

    def monic(self):
        if self.is_zero():
            raise ZeroDivisionError('zero polynomial has no leading coefficient')
        return UniPoly(self._c / self._c[0], self._field)

    def padded(self, length):
        """Coefficient array left-padded with zeros to ``length`` entries."""
        if length < self._c.size:
            raise ValueError('cannot pad to a shorter length')
        out = np.zeros(length, dtype=self._c.dtype)
        out[length - self._c.size:] = self._c
        return out

    def __add__(self, other):
        return add(self, _coerce(other, self))

    __radd__ = __add__

    def __sub__(self, other):
        return sub(self, _coerce(other, self))

    def __rsub__(self, other):
        return sub(_coerce(other, self), self)

    def __neg__(self):
        return UniPoly(-self._c, self._field)

    def __mul__(self, other):
        if np.isscalar(other):
            return UniPoly(self._c * other, 'complex' if np.iscomplexobj(other) else self._field)
        return mul(self, other)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, scalar):
        return UniPoly(self._c / scalar, self._field)

    def __call__(self, z):
        return evaluate(self, z)

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self._field == other._field and np.array_equal(self._c, other._c)

    def __hash__(self):
        return hash((self._field, self._c.tobytes()))

    def __len__(self):
        return self._c.size

    def __repr__(self):
        return f'UniPoly({self._c.tolist()!r}, field={self._field!r})'


def as_poly(p):
    """Return ``p`` as a :class:`UniPoly` (arrays are taken highest-first)."""
    return p if isinstance(p, UniPoly) else UniPoly(p)


def _coerce(other, like):
    if isinstance(other, UniPoly):
        return other
    return UniPoly(np.atleast_1d(other), like.field)


def _check_fields(p, q):
    if p.field != q.field:
        raise ValueError(f'field mismatch: {p.field} vs {q.field}')


def norm2_sq(p):
    """Sum of squared coefficient magnitudes."""
    c = as_poly(p).coeffs
    return float(np.sum(c.real ** 2 + c.imag ** 2)) if np.iscomplexobj(c) else float(c @ c)


def mul(p, q):
    p, q = as_poly(p), as_poly(q)
    _check_fields(p, q)
    return UniPoly(np.convolve(p.coeffs, q.coeffs), p.field)


def _aligned(p, q):
    n = max(p.coeffs.size, q.coeffs.size)
    return p.padded(n), q.padded(n)


def add(p, q):
    p, q = as_poly(p), as_poly(q)
    _check_fields(p, q)
    a, b = _aligned(p, q)
    return UniPoly(a + b, p.field)


def sub(p, q):
    p, q = as_poly(p), as_poly(q)
    _check_fields(p, q)
    a, b = _aligned(p, q)
    return UniPoly(a - b, p.field)


def derivative(p):
    p = as_poly(p)
    n = p.degree
    if n == 0:
        return UniPoly([0.0], p.field)
    return UniPoly(p.coeffs[:-1] * np.arange(n, 0, -1), p.field)


def evaluate(p, z):
    """Horner evaluation; ``z`` may be a scalar or an array."""
    c = as_poly(p).coeffs
    acc = np.zeros_like(np.asarray(z), dtype=np.result_type(c, z)) + c[0]
    for ck in c[1:]:
        acc = acc * z + ck
    return acc[()] if np.ndim(acc) == 0 else acc


def perturbation(f_t, f, g_t, g):
    """``sqrt(||f_t - f||^2 + ||g_t - g||^2)`` with coefficients aligned by degree."""
    return float(np.sqrt(norm2_sq(sub(f_t, f)) + norm2_sq(sub(g_t, g))))


def relative_error(u_approx, u_true, normalize=True):
    """Relative 2-norm coefficient error of ``u_approx`` against ``u_true``.

    With ``normalize`` both polynomials are first scaled to unit leading
    coefficient, so the measure ignores the scale ambiguity of a GCD.
    """
    u_approx, u_true = as_poly(u_approx), as_poly(u_true)
    if u_true.is_zero():
        raise ValueError('relative error against the zero polynomial')
    if u_approx.field != u_true.field:
        u_approx, u_true = u_approx.to_complex(), u_true.to_complex()
    if normalize:
        if u_approx.is_zero():
            return float('inf')
        u_approx, u_true = u_approx.monic(), u_true.monic()
    return float(np.sqrt(norm2_sq(sub(u_approx, u_true)) / norm2_sq(u_true)))
