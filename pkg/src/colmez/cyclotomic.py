"""Exact arithmetic in Q(zeta_n) on the power basis.

Elements are coefficient vectors of length phi(n) over ``1, z, ..., z^(phi(n)-1)``
reduced modulo the n-th cyclotomic polynomial.  Coefficients are Python ints
(cyclotomic integers) or :class:`fractions.Fraction`.  Norms are the
resultant of the cyclotomic polynomial with the representing polynomial,
evaluated as the determinant of the multiplication matrix (Phi_n is monic, so
the two agree); :func:`resultant` is kept as an independent route.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

from .errors import ZeroElement

Scalar = Union[int, Fraction]


def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _divmod_poly(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    b = _trim(list(b))
    q = [0] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(_trim(a)) >= len(b):
        shift = len(a) - len(b)
        coef = a[-1] if lead == 1 else Fraction(a[-1]) / lead
        q[shift] = coef
        for i, bc in enumerate(b):
            a[shift + i] -= coef * bc
        a.pop()
    return q, a


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients (constant term first) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("n must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _divmod_poly(poly, list(cyclotomic_polynomial(d)))
            assert not _trim(rem)
    return tuple(int(c) for c in poly)


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    return sum(1 for a in range(1, n + 1) if math.gcd(a, n) == 1)


def resultant(f: list, g: list) -> Fraction:
    """Resultant of two univariate polynomials (coefficients low to high)."""
    f = _trim([Fraction(c) for c in f])
    g = _trim([Fraction(c) for c in g])
    if not f or not g:
        return Fraction(0)
    sign = 1
    result = Fraction(1)
    while True:
        df, dg = len(f) - 1, len(g) - 1
        if dg == 0:
            return sign * result * g[0] ** df
        if df == 0:
            return sign * result * f[0] ** dg
        _, r = _divmod_poly(f, g)
        r = _trim(r)
        if not r:
            return Fraction(0)
        dr = len(r) - 1
        if (df * dg) % 2:
            sign = -sign
        result *= g[-1] ** (df - dr)
        f, g = g, r


def bareiss_determinant(matrix: list[list[int]]) -> int:
    """Fraction-free Gaussian elimination on an integer matrix."""
    m = [row[:] for row in matrix]
    size = len(m)
    sign, prev = 1, 1
    for k in range(size - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, size) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, size):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, size):
                row_i[j] = (row_i[j] * pivot - mik * row_k[j]) // prev
        prev = pivot
    return sign * m[-1][-1] if size else 1


def integer_root(value: int, k: int) -> int:
    """Exact k-th root of an integer that is known to be a perfect k-th power.

    For even ``k`` the non-negative root is returned.
    """
    if k == 1:
        return value
    neg = value < 0
    if neg and k % 2 == 0:
        raise ValueError("even root of a negative number")
    v = -value if neg else value
    lo, hi = 0, 1
    while hi ** k < v:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** k < v:
            lo = mid + 1
        else:
            hi = mid
    if lo ** k != v:
        raise ValueError(f"{value} is not a perfect {k}-th power")
    return -lo if neg else lo


class Cyclotomic:
    """An element of Q(zeta_n), immutable."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: Iterable[Scalar]):
        phi = cyclotomic_polynomial(n)
        deg = len(phi) - 1
        c = list(coeffs)
        if len(c) > deg:
            _, c = _divmod_poly(c, list(phi))
        c = [int(x) if isinstance(x, Fraction) and x.denominator == 1 else x for x in c]
        c = c + [0] * (deg - len(c))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("Cyclotomic is immutable")

    # constructors
    @classmethod
    def from_powers(cls, n: int, powers: Mapping[int, Scalar]) -> "Cyclotomic":
        """Sum of ``coef * zeta_n**k`` over the mapping ``{k: coef}``."""
        buf: list = [0] * n
        for k, v in powers.items():
            buf[k % n] += v
        return cls(n, buf)

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "Cyclotomic":
        return cls.from_powers(n, {k: 1})

    @classmethod
    def scalar(cls, n: int, value: Scalar) -> "Cyclotomic":
        return cls(n, [value])

    # arithmetic
    def _coerce(self, other) -> "Cyclotomic":
        if isinstance(other, Cyclotomic):
            if other.n != self.n:
                raise ValueError(f"mixing Q(zeta_{self.n}) and Q(zeta_{other.n})")
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.n, [other])
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Cyclotomic(self.n, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.n, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Cyclotomic(self.n, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.n, [a * other for a in self.coeffs])
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        prod: list = [0] * (2 * len(self.coeffs))
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                if b:
                    prod[i + j] += a * b
        return Cyclotomic(self.n, prod)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic(self.n, [other])
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n, self.coeffs))

    def __repr__(self):
        terms = [f"{c}*z^{i}" for i, c in enumerate(self.coeffs) if c]
        return f"Cyclotomic({self.n}: {' + '.join(terms) or '0'})"

    # structure
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self.coeffs[0])

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def galois(self, a: int) -> "Cyclotomic":
        """Image under the automorphism ``zeta -> zeta**a`` (gcd(a, n) = 1)."""
        if math.gcd(a, self.n) != 1:
            raise ValueError(f"{a} is not a unit mod {self.n}")
        return Cyclotomic.from_powers(
            self.n, {(a * i) % self.n: c for i, c in enumerate(self.coeffs) if c}
        )

    def conjugate(self) -> "Cyclotomic":
        return self.galois(-1)

    def to_complex(self) -> complex:
        z = cmath.exp(2j * math.pi / self.n)
        return complex(sum(float(c) * z ** i for i, c in enumerate(self.coeffs) if c))

    def multiplication_matrix(self) -> list[list]:
        """Matrix of y -> self * y on the power basis (column j is self * z^j)."""
        deg = len(self.coeffs)
        cols = []
        cur = self
        z = Cyclotomic.zeta(self.n)
        for _ in range(deg):
            cols.append(cur.coeffs)
            cur = cur * z
        return [[cols[j][i] for j in range(deg)] for i in range(deg)]

    def _full_norm(self):
        # det of the multiplication matrix = Res(Phi_n, p) because Phi_n is monic
        den = 1
        for c in self.coeffs:
            if isinstance(c, Fraction):
                den = math.lcm(den, c.denominator)
        scaled = self * den if den != 1 else self
        det = bareiss_determinant([[int(v) for v in row] for row in scaled.multiplication_matrix()])
        if den == 1:
            return det
        return Fraction(det, den ** len(self.coeffs))

    def norm(self, subfield_degree: int | None = None):
        """Norm down to Q.

        Without ``subfield_degree`` this is N_{Q(zeta_n)/Q} as an exact integer
        (or Fraction).  With it, the element is taken to lie in a subfield of that
        degree and N_{K/Q} is recovered as an exact root; when the root index is
        even the absolute value is returned.
        """
        if self.is_zero():
            raise ZeroElement("norm of zero")
        full = self._full_norm()
        if subfield_degree is None:
            return full
        deg = len(self.coeffs)
        if deg % subfield_degree:
            raise ValueError(f"degree {subfield_degree} does not divide {deg}")
        k = deg // subfield_degree
        if isinstance(full, Fraction):
            return Fraction(integer_root(abs(full.numerator), k), integer_root(full.denominator, k))
        if k % 2 == 0:
            return integer_root(abs(full), k)
        return integer_root(full, k)


def CyclotomicInteger(n: int, coeffs: Iterable[int]) -> Cyclotomic:
    """Cyclotomic element with integer coefficients (validated)."""
    c = list(coeffs)
    if not all(isinstance(x, int) for x in c):
        raise TypeError("cyclotomic integers need integer coefficients")
    return Cyclotomic(n, c)


def valuation(value, p: int) -> int:
    """p-adic valuation of a nonzero integer or Fraction."""
    if value == 0:
        raise ZeroElement("valuation of zero")
    value = Fraction(value)
    v = 0
    num, den = abs(value.numerator), value.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def prime_factors(n: int) -> list[int]:
    n = abs(n)
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and prime_factors(n) == [n]
