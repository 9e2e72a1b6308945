"""Exact arithmetic in the variable q.

Two representations are used throughout the package:

* ``QPolynomial``: a polynomial in q with arbitrary-precision integer
  coefficients.  q-integers, Gaussian binomials and q-multinomials live here.
* ``TruncatedQSeries``: a power series in q with exact rational coefficients,
  known through a stated order K (coefficients of q^0 .. q^K are trusted,
  everything above is discarded).  Arithmetic propagates the minimum order of
  the operands, so a result never claims more precision than its inputs.

No floating point enters this module.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InvalidInputError, PoleError

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _as_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError("exact arithmetic only accepts int or Fraction, got %r" % type(value))


class QPolynomial:
    """Dense polynomial in q with integer coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        coeffs = list(coeffs)
        for c in coeffs:
            if not isinstance(c, int):
                raise TypeError("QPolynomial coefficients must be int, got %r" % type(c))
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @classmethod
    def zero(cls):
        return cls(())

    @classmethod
    def one(cls):
        return cls((1,))

    @classmethod
    def monomial(cls, degree, coefficient=1):
        if degree < 0:
            raise InvalidInputError("q-polynomial degrees are nonnegative")
        return cls((0,) * degree + (coefficient,))

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def degree(self):
        # Degree of the zero polynomial is reported as -1.
        return len(self.coeffs) - 1

    def coefficient(self, j):
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else 0

    def __add__(self, other):
        if not isinstance(other, QPolynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for j, c in enumerate(b):
            out[j] += c
        return QPolynomial(out)

    def __sub__(self, other):
        if not isinstance(other, QPolynomial):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return QPolynomial(tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return QPolynomial(tuple(other * c for c in self.coeffs))
        if not isinstance(other, QPolynomial):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return QPolynomial.zero()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return QPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if exponent < 0:
            raise InvalidInputError("negative powers of a q-polynomial are not defined")
        result = QPolynomial.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def shift(self, k):
        """Multiply by q^k (k >= 0)."""
        if k < 0:
            raise InvalidInputError("cannot shift a q-polynomial by a negative power")
        if self.is_zero:
            return self
        return QPolynomial((0,) * k + self.coeffs)

    def evaluate(self, q):
        """Horner evaluation; exact for int/Fraction arguments."""
        acc = 0 if not isinstance(q, float) else 0.0
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def to_series(self, order):
        return TruncatedQSeries(order, [Fraction(self.coefficient(j)) for j in range(order + 1)])

    def __eq__(self, other):
        return isinstance(other, QPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if j == 0:
                parts.append(str(c))
            elif j == 1:
                parts.append("%s*q" % c if c != 1 else "q")
            else:
                parts.append("%s*q^%d" % (c, j) if c != 1 else "q^%d" % j)
        return " + ".join(parts)

    def __repr__(self):
        return "QPolynomial(%s)" % self


class TruncatedQSeries:
    """Power series in q with Fraction coefficients, trusted through q^order."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order, coeffs=None):
        if order < 0:
            raise InvalidInputError("series order must be nonnegative")
        self.order = order
        if coeffs is None:
            self.coeffs = (_ZERO,) * (order + 1)
            return
        coeffs = [_as_fraction(c) for c in coeffs]
        if len(coeffs) < order + 1:
            coeffs.extend([_ZERO] * (order + 1 - len(coeffs)))
        self.coeffs = tuple(coeffs[: order + 1])

    @classmethod
    def constant(cls, value, order):
        return cls(order, [_as_fraction(value)])

    @classmethod
    def one(cls, order):
        return cls.constant(1, order)

    @property
    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def coefficient(self, j):
        if j < 0:
            return _ZERO
        if j > self.order:
            raise InvalidInputError("coefficient q^%d is beyond the trusted order %d" % (j, self.order))
        return self.coeffs[j]

    def truncate(self, order):
        if order > self.order:
            raise InvalidInputError("cannot extend a truncated series (order %d -> %d)" % (self.order, order))
        return TruncatedQSeries(order, self.coeffs[: order + 1])

    def _common_order(self, other):
        return min(self.order, other.order)

    def __add__(self, other):
        if isinstance(other, QPolynomial):
            other = other.to_series(self.order)
        if not isinstance(other, TruncatedQSeries):
            return NotImplemented
        k = self._common_order(other)
        return TruncatedQSeries(k, [self.coeffs[j] + other.coeffs[j] for j in range(k + 1)])

    def __sub__(self, other):
        if isinstance(other, QPolynomial):
            other = other.to_series(self.order)
        if not isinstance(other, TruncatedQSeries):
            return NotImplemented
        k = self._common_order(other)
        return TruncatedQSeries(k, [self.coeffs[j] - other.coeffs[j] for j in range(k + 1)])

    def __neg__(self):
        return TruncatedQSeries(self.order, [-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, QPolynomial):
            other = other.to_series(self.order)
        if not isinstance(other, TruncatedQSeries):
            return NotImplemented
        k = self._common_order(other)
        out = [_ZERO] * (k + 1)
        for i in range(k + 1):
            a = self.coeffs[i]
            if a == 0:
                continue
            for j in range(k + 1 - i):
                b = other.coeffs[j]
                if b != 0:
                    out[i + j] += a * b
        return TruncatedQSeries(k, out)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if exponent < 0:
            raise InvalidInputError("use inverse() before raising to a negative power")
        result = TruncatedQSeries.one(self.order)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def scale(self, value):
        value = _as_fraction(value)
        return TruncatedQSeries(self.order, [value * c for c in self.coeffs])

    def shift_pow_q(self, s):
        """Multiply by q^s (s >= 0), keeping the same trusted order."""
        if s < 0:
            raise InvalidInputError("negative q-shift does not stay inside a power series")
        if s == 0:
            return self
        out = [_ZERO] * (self.order + 1)
        for j in range(self.order + 1 - s):
            out[j + s] = self.coeffs[j]
        return TruncatedQSeries(self.order, out)

    def inverse(self):
        """Multiplicative inverse; the constant term must be nonzero."""
        a0 = self.coeffs[0]
        if a0 == 0:
            raise PoleError("cannot invert a series with zero constant term")
        inv0 = _ONE / a0
        out = [inv0] + [_ZERO] * self.order
        for k in range(1, self.order + 1):
            acc = _ZERO
            for j in range(1, k + 1):
                aj = self.coeffs[j]
                if aj != 0:
                    acc += aj * out[k - j]
            out[k] = -inv0 * acc
        return TruncatedQSeries(self.order, out)

    def evaluate(self, q):
        acc = 0 if not isinstance(q, float) else 0.0
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def __eq__(self, other):
        return (
            isinstance(other, TruncatedQSeries)
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __repr__(self):
        return "TruncatedQSeries(order=%d, %s)" % (self.order, list(self.coeffs))


def q_integer(b):
    """[b]_q = 1 + q + ... + q^(b-1) for b >= 1."""
    if b < 1:
        raise InvalidInputError("q-integers are defined for b >= 1")
    return QPolynomial((1,) * b)


def q_factorial(b):
    """[b]_q! = [1]_q [2]_q ... [b]_q, with [0]_q! = 1."""
    if b < 0:
        raise InvalidInputError("q-factorials are defined for b >= 0")
    out = QPolynomial.one()
    for j in range(1, b + 1):
        out = out * q_integer(j)
    return out


_GAUSS_CACHE = {}


def gaussian_binomial(n, k):
    """Gaussian binomial coefficient [n choose k]_q, computed divisionlessly.

    Pascal-type recurrence [n,k] = [n-1,k-1] + q^k [n-1,k]; all intermediate
    objects are integer polynomials, no polynomial division ever happens.
    """
    if k < 0 or k > n:
        return QPolynomial.zero()
    if k == 0 or k == n:
        return QPolynomial.one()
    k = min(k, n - k)
    key = (n, k)
    hit = _GAUSS_CACHE.get(key)
    if hit is not None:
        return hit
    value = gaussian_binomial(n - 1, k - 1) + gaussian_binomial(n - 1, k).shift(k)
    _GAUSS_CACHE[key] = value
    return value


def q_multinomial(m, parts):
    """q-multinomial [m; parts]_q as an exact integer polynomial.

    parts must be nonnegative integers summing to m.  The value is the product
    of Gaussian binomials [k_1+...+k_j choose k_j]_q, so the computation stays
    divisionless.
    """
    parts = tuple(parts)
    if any((not isinstance(p, int)) or p < 0 for p in parts):
        raise InvalidInputError("multinomial parts must be nonnegative integers")
    if sum(parts) != m:
        raise InvalidInputError("multinomial parts %r do not sum to %d" % (list(parts), m))
    out = QPolynomial.one()
    partial = 0
    for p in parts:
        partial += p
        if p:
            out = out * gaussian_binomial(partial, p)
    return out


def q_pochhammer(m):
    """(q; q)_m = (1 - q)(1 - q^2)...(1 - q^m) as an exact integer polynomial."""
    if m < 0:
        raise InvalidInputError("(q;q)_m needs m >= 0")
    out = QPolynomial.one()
    for k in range(1, m + 1):
        out = out * QPolynomial((1,) + (0,) * (k - 1) + (-1,))
    return out


def pochhammer_finite(c, d, order):
    """(c; q)_d = prod_{i=1..d} (1 - c q^(i-1)) as a truncated series."""
    if d < 0:
        raise InvalidInputError("finite Pochhammer length must be nonnegative")
    c = _as_fraction(c)
    out = TruncatedQSeries.one(order)
    for i in range(d):
        if i > order and c != 0:
            break  # remaining factors are 1 modulo q^(order+1)
        factor = [_ONE] + [_ZERO] * order
        if i <= order:
            factor[i] = factor[i] - c
        out = out * TruncatedQSeries(order, factor)
    return out


def pochhammer_infinite_inverse(c, order):
    """1 / (c; q)_infinity modulo q^(order+1).

    The evaluation point must satisfy c != 1: the factor (1 - c) of the
    infinite product vanishes exactly there and the inverse has a pole.
    Factors (1 - c q^k) with k > order are 1 modulo the truncation.
    """
    c = _as_fraction(c)
    if c == 1:
        raise PoleError("1/(c;q)_infinity has a pole at c = 1")
    return pochhammer_finite(c, order + 1, order).inverse()


def euler_inverse(order):
    """1 / (q; q)_infinity modulo q^(order+1).

    Coefficient of q^j is the number of integer partitions of j, so this is
    computed with the classic partition-counting recurrence over part sizes;
    the result is integral.
    """
    counts = [0] * (order + 1)
    counts[0] = 1
    for part in range(1, order + 1):
        for j in range(part, order + 1):
            counts[j] += counts[j - part]
    return TruncatedQSeries(order, [Fraction(c) for c in counts])


def inverse_reversed_pochhammer(c, d, order):
    """Rewrite 1 / (c q^-1; q^-1)_d in nonnegative powers of q.

    Every factor 1 - c q^-i (i = 1..d) equals -c q^-i (1 - c^-1 q^i), so

        1 / (c q^-1; q^-1)_d  =  (-1)^d c^-d q^(d(d+1)/2) / (c^-1 q; q)_d.

    Returns (sign, power_of_c, qshift, series) with series the truncated
    expansion of 1 / (c^-1 q; q)_d, which has constant term 1 and therefore
    inverts for every nonzero rational c, including c = 1 (where the series
    part is simply 1/(q;q)_d).
    """
    if d < 0:
        raise InvalidInputError("reversed Pochhammer length must be nonnegative")
    c = _as_fraction(c)
    if c == 0:
        raise InvalidInputError("reversed Pochhammer factorization needs c != 0")
    sign = -1 if d % 2 else 1
    qshift = d * (d + 1) // 2
    cinv = 1 / c
    prod = TruncatedQSeries.one(order)
    for i in range(1, d + 1):
        if i > order:
            break
        factor = [_ONE] + [_ZERO] * order
        factor[i] = -cinv
        prod = prod * TruncatedQSeries(order, factor)
    return sign, -d, qshift, prod.inverse()
