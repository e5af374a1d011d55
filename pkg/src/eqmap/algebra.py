"""Generic scalar substrate: truncated Taylor jets, Laurent polynomials in a
uniformizing variable T, and Laurent series at infinity.

Everything here is written once over a "scalar" supporting field operations.
Plain Python numbers, ``fractions.Fraction`` and :class:`Jet` instances all
flow through the same code paths, so exact rational verification, float
evaluation, and automatic propagation of Taylor coefficients share a single
implementation of every residue-extraction formula.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .errors import SingularJetError

__all__ = [
    "Jet",
    "LaurentPoly",
    "LaurentSeriesAtInfinity",
    "inv_sqrt_R_series",
    "laurent_zero_coeff",
    "substitute_uniformizer",
    "series_times_poly_coeff",
]


def _is_zero(v):
    if isinstance(v, Jet):
        return not v.coeffs.any()
    return v == 0


def _generic_sqrt(z):
    """Square root dispatch: jets use the jet series, rationals stay exact."""
    if isinstance(z, Jet):
        return z.sqrt()
    if isinstance(z, Fraction):
        rn, rd = math.isqrt(z.numerator), math.isqrt(z.denominator)
        if rn * rn == z.numerator and rd * rd == z.denominator:
            return Fraction(rn, rd)
        z = float(z)
    if z <= 0:
        raise ValueError("square root requires a positive argument, got %r" % (z,))
    return math.sqrt(z)


class Jet:
    """Dense truncated Taylor expansion around a base point.

    ``coeffs[k0, k1, ...]`` is the coefficient of ``offset0**k0 * offset1**k1
    * ...``; the all-zero index holds the value at the base point.  The
    truncation order in each variable is the array extent minus one.  Binary
    operations truncate to the elementwise minimum of the operand orders, so
    information never silently exceeds what both operands carry.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        arr = np.array(coeffs, dtype=object)
        if arr.ndim == 0:
            arr = arr.reshape((1,))
        self.coeffs = arr

    @classmethod
    def constant(cls, value, orders):
        arr = np.zeros(tuple(o + 1 for o in orders), dtype=object)
        arr[(0,) * len(orders)] = value
        return cls(arr)

    @classmethod
    def variable(cls, value, index, orders):
        """Jet of the coordinate function: value plus a unit first-order offset."""
        if orders[index] < 1:
            raise ValueError("variable %d needs truncation order >= 1" % index)
        arr = np.zeros(tuple(o + 1 for o in orders), dtype=object)
        arr[(0,) * len(orders)] = value
        idx = [0] * len(orders)
        idx[index] = 1
        arr[tuple(idx)] = 1
        return cls(arr)

    @property
    def orders(self):
        return tuple(n - 1 for n in self.coeffs.shape)

    @property
    def nvars(self):
        return self.coeffs.ndim

    @property
    def constant_term(self):
        return self.coeffs[(0,) * self.coeffs.ndim]

    def partial(self, index):
        """Partial derivative value: k! times the coefficient of the k-th offset power."""
        index = tuple(index)
        factor = 1
        for k in index:
            factor *= math.factorial(k)
        return self.coeffs[index] * factor

    def dx(self, var=0):
        """Derivative jet with respect to one variable; its order drops by one."""
        n = self.coeffs.shape[var]
        if n < 2:
            raise ValueError("jet carries no derivative information in variable %d" % var)
        sl = [slice(None)] * self.coeffs.ndim
        sl[var] = slice(1, None)
        shifted = self.coeffs[tuple(sl)]
        shape = [1] * self.coeffs.ndim
        shape[var] = n - 1
        mult = np.arange(1, n, dtype=object).reshape(shape)
        return Jet(shifted * mult)

    def truncated(self, orders):
        sl = tuple(slice(0, o + 1) for o in orders)
        return Jet(self.coeffs[sl])

    # ---- arithmetic -----------------------------------------------------

    def _check(self, other):
        if other.coeffs.ndim != self.coeffs.ndim:
            raise ValueError("jets over different variable sets")

    def __add__(self, other):
        if isinstance(other, LaurentPoly):
            return NotImplemented
        if isinstance(other, Jet):
            self._check(other)
            a, b = _aligned(self.coeffs, other.coeffs)
            return Jet(a + b)
        out = self.coeffs.copy()
        zero = (0,) * out.ndim
        out[zero] = out[zero] + other
        return Jet(out)

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.coeffs)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Jet) else -1 * other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            return NotImplemented
        if not isinstance(other, Jet):
            return Jet(self.coeffs * other)
        self._check(other)
        a, b = _aligned(self.coeffs, other.coeffs)
        shape = a.shape
        out = np.zeros(shape, dtype=object)
        for idx in np.ndindex(shape):
            v = a[idx]
            if _is_zero(v):
                continue
            src = tuple(slice(0, n - i) for i, n in zip(idx, shape))
            dst = tuple(slice(i, n) for i, n in zip(idx, shape))
            out[dst] += v * b[src]
        return Jet(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return self * other.reciprocal()
        return Jet(self.coeffs / other)

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("jet powers must be nonnegative integers")
        out = Jet.constant(1, self.orders)
        for _ in range(n):
            out = out * self
        return out

    # ---- analytic operations --------------------------------------------

    def reciprocal(self):
        c0 = self.constant_term
        if _is_zero(c0):
            raise SingularJetError("reciprocal of a jet with zero constant term")
        # 1/f = (1/c0) sum_k (1 - f/c0)**k; the sum is finite to truncation order
        # because 1 - f/c0 has no constant term.
        eta = -(self / c0) + 1
        return self._nilpotent_series(eta, lambda k: 1) / c0

    def log(self):
        c0 = self.constant_term
        if isinstance(c0, Fraction):
            c0 = float(c0)
        if not c0 > 0:
            raise SingularJetError("jet log requires a positive constant term")
        eta = self / self.constant_term - 1
        out = self._nilpotent_series(eta, lambda k: Fraction((-1) ** (k + 1), k) if k else 0)
        return out + math.log(c0)

    def exp(self):
        c0 = self.constant_term
        eta = self - c0
        out = self._nilpotent_series(eta, lambda k: Fraction(1, math.factorial(k)))
        return out * math.exp(c0)

    def sqrt(self):
        c0 = self.constant_term
        if isinstance(c0, Fraction):
            c0 = float(c0)
        if not c0 > 0:
            raise SingularJetError("jet sqrt requires a positive constant term")
        eta = self / self.constant_term - 1
        coeffs = [Fraction(1)]
        for k in range(sum(self.orders)):
            coeffs.append(coeffs[-1] * Fraction(1 - 2 * k, 2 * (k + 1)))
        out = self._nilpotent_series(eta, lambda k: coeffs[k])
        return out * math.sqrt(c0)

    def _nilpotent_series(self, eta, coeff):
        """sum_k coeff(k) * eta**k for eta with zero constant term."""
        total = sum(eta.orders)
        out = Jet.constant(coeff(0), eta.orders)
        p = eta
        for k in range(1, total + 1):
            c = coeff(k)
            if not _is_zero(c):
                out = out + p * c
            if k < total:
                p = p * eta
        return out

    def __repr__(self):
        return "Jet(orders=%r, coeffs=%r)" % (self.orders, self.coeffs.tolist())


def _aligned(a, b):
    shape = tuple(min(x, y) for x, y in zip(a.shape, b.shape))
    sl = tuple(slice(0, n) for n in shape)
    return a[sl], b[sl]


class LaurentPoly:
    """Laurent polynomial in T with generic scalar coefficients.

    Coefficients live in a dict keyed by integer exponent; absent keys are
    zero.  Arithmetic is closed: sums and products carry the exact exponent
    range of the inputs, which is what makes coefficient extraction a total
    operation.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        d = {}
        if coeffs:
            for k, v in coeffs.items():
                if not _is_zero(v):
                    d[int(k)] = v
        self.coeffs = d

    def coeff(self, k):
        return self.coeffs.get(k, 0)

    @property
    def min_exp(self):
        return min(self.coeffs) if self.coeffs else 0

    @property
    def max_exp(self):
        return max(self.coeffs) if self.coeffs else 0

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other):
        if isinstance(other, LaurentPoly):
            out = dict(self.coeffs)
            for k, v in other.coeffs.items():
                out[k] = out.get(k, 0) + v
            return LaurentPoly(out)
        out = dict(self.coeffs)
        out[0] = out.get(0, 0) + other
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, LaurentPoly) else -1 * other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            out = {}
            for k1, v1 in self.coeffs.items():
                for k2, v2 in other.coeffs.items():
                    k = k1 + k2
                    out[k] = out.get(k, 0) + v1 * v2
            return LaurentPoly(out)
        return LaurentPoly({k: v * other for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("Laurent powers must be nonnegative integers")
        out = LaurentPoly({0: 1})
        for _ in range(n):
            out = out * self
        return out

    def shifted(self, r):
        """Multiply by T**r."""
        return LaurentPoly({k + r: v for k, v in self.coeffs.items()})

    def derivative(self):
        """d/dT, valid for negative exponents as well."""
        return LaurentPoly({k - 1: k * v for k, v in self.coeffs.items() if k != 0})

    def __call__(self, tval):
        total = 0
        for k, v in self.coeffs.items():
            total = total + v * tval ** k
        return total

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        keys = set(self.coeffs) | set(other.coeffs)
        return all(self.coeff(k) == other.coeff(k) for k in keys)

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def __repr__(self):
        if not self.coeffs:
            return "LaurentPoly(0)"
        items = ", ".join("T^%d: %r" % (k, v) for k, v in sorted(self.coeffs.items()))
        return "LaurentPoly({%s})" % items


def laurent_zero_coeff(p):
    """Coefficient of T**0, the residue-extraction primitive."""
    return p.coeff(0)


def substitute_uniformizer(coeffs, u, z, mode="affine"):
    """Evaluate a polynomial P(y) at the uniformizing substitution.

    affine:    y = T + u + z/T
    symmetric: y = sqrt(z)*T + u + sqrt(z)/T   (requires z > 0)

    ``coeffs`` lists P's coefficients in ascending degree; the scalars may be
    numbers, Fractions or jets.  The result is a LaurentPoly with exponent
    range [-deg P, deg P].
    """
    if mode == "affine":
        y = LaurentPoly({1: 1, 0: u, -1: z})
    elif mode == "symmetric":
        s = _generic_sqrt(z)
        y = LaurentPoly({1: s, 0: u, -1: s})
    else:
        raise ValueError("mode must be 'affine' or 'symmetric'")
    out = LaurentPoly()
    for c in reversed(list(coeffs)):
        out = out * y + c
    return out


class LaurentSeriesAtInfinity:
    """Truncated Laurent expansion about y = infinity, descending powers."""

    __slots__ = ("top_degree", "coeffs")

    def __init__(self, top_degree, coeffs):
        self.top_degree = int(top_degree)
        self.coeffs = tuple(coeffs)

    def coeff(self, r):
        i = self.top_degree - r
        if i < 0:
            return 0
        if i >= len(self.coeffs):
            raise ValueError("series truncated before y**%d" % r)
        return self.coeffs[i]

    def __len__(self):
        return len(self.coeffs)

    def __repr__(self):
        return "LaurentSeriesAtInfinity(top_degree=%d, coeffs=%r)" % (
            self.top_degree, list(self.coeffs))


def inv_sqrt_R_series(alpha_minus, alpha_plus, n_terms):
    """Expansion of ((y - a)(y - b))**(-1/2) at infinity: sum_n q_n y**(-n-1).

    The coefficients solve Q(y)**2 * (y - a)(y - b) = 1 term by term with
    q_0 = 1; over int/Fraction endpoints the recursion is exact.
    """
    if n_terms < 1:
        raise ValueError("n_terms must be at least 1")
    exact = all(isinstance(v, (int, Fraction)) for v in (alpha_minus, alpha_plus))
    if exact:
        alpha_minus, alpha_plus = Fraction(alpha_minus), Fraction(alpha_plus)
    s = alpha_minus + alpha_plus
    p = alpha_minus * alpha_plus
    q = [Fraction(1) if exact else 1.0]
    c = [q[0]]  # c[m] = sum_{i+j=m} q_i q_j
    for n in range(1, n_terms):
        cn = s * c[n - 1] - (p * c[n - 2] if n >= 2 else 0)
        rest = sum(q[i] * q[n - i] for i in range(1, n))
        q.append((cn - rest) / 2)
        c.append(cn)
    return LaurentSeriesAtInfinity(top_degree=-1, coeffs=q)


def series_times_poly_coeff(poly_coeffs, series, r):
    """Coefficient of y**r in P(y) * S(y), P ascending, S descending at infinity."""
    total = 0
    for k, a in enumerate(poly_coeffs):
        if _is_zero(a):
            continue
        total = total + a * series.coeff(r - k)
    return total
