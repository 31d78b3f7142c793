"""Dirichlet characters stored as tables of root-of-unity exponents.

A character mod ``m`` of order ``d`` is the table ``a -> k`` with
``chi(a) = exp(2 pi i k / d)``; residues not coprime to ``m`` map to ``None``.
Characters are numbered by the mixed-radix encoding of their values on the
standard generators of (Z/m)^x returned by :func:`unit_group_generators`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product

from .cyclotomic import Cyclotomic


def _factor(n: int) -> list[tuple[int, int]]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            k = 0
            while n % d == 0:
                n //= d
                k += 1
            out.append((d, k))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def _mult_order(a: int, m: int) -> int:
    k, x = 1, a % m
    while x != 1 % m:
        x = x * a % m
        k += 1
    return k


def _crt_lift(r: int, q: int, n: int) -> int:
    """The unit mod n congruent to r mod q and to 1 mod n/q (gcd(q, n/q) = 1)."""
    rest = n // q
    for t in range(rest):
        b = r + t * q
        if b % rest == 1 % rest:
            return b % n
    raise AssertionError("CRT failed")


@lru_cache(maxsize=None)
def unit_group_generators(n: int) -> tuple[tuple[int, int], ...]:
    """Independent generators ``(g, order)`` with (Z/n)^x the direct product of <g>."""
    gens: list[tuple[int, int]] = []
    for p, k in _factor(n):
        q = p ** k
        if p == 2:
            if k >= 2:
                gens.append((_crt_lift(q - 1, q, n), 2))
            if k >= 3:
                gens.append((_crt_lift(5, q, n), 2 ** (k - 2)))
        else:
            phi = q - q // p
            r = next(r for r in range(2, q) if math.gcd(r, p) == 1 and _mult_order(r, q) == phi)
            gens.append((_crt_lift(r, q, n), phi))
    return tuple(gens)


@lru_cache(maxsize=None)
def discrete_logs(n: int) -> dict[int, tuple[int, ...]]:
    """Map each unit mod n to its exponent vector on the standard generators."""
    gens = unit_group_generators(n)
    table: dict[int, tuple[int, ...]] = {}
    for exps in product(*(range(s) for _, s in gens)):
        a = 1 % n
        for (g, _), e in zip(gens, exps):
            a = a * pow(g, e, n) % n
        table[a] = exps
    return table


@dataclass(frozen=True)
class DirichletCharacter:
    modulus: int
    order: int
    exponents: tuple  # per residue 0..modulus-1: int in [0, order) or None

    def exponent(self, a: int):
        return self.exponents[a % self.modulus]

    def __call__(self, a: int) -> complex:
        k = self.exponent(a)
        if k is None:
            return 0j
        return cmath.exp(2j * math.pi * k / self.order)

    def exact(self, a: int, e: int | None = None) -> Cyclotomic:
        """chi(a) as an element of Q(zeta_e); e defaults to the character order."""
        e = e or self.order
        if e % self.order:
            raise ValueError(f"order {self.order} does not divide {e}")
        k = self.exponent(a)
        if k is None:
            return Cyclotomic.scalar(max(e, 1), 0)
        return Cyclotomic.zeta(e, k * (e // self.order))

    def real_value(self, a: int) -> int:
        """Integer value of a character of order <= 2."""
        if self.order > 2:
            raise ValueError("character is not real")
        k = self.exponent(a)
        if k is None:
            return 0
        return -1 if k else 1

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    @property
    def is_quadratic(self) -> bool:
        return self.order == 2

    @property
    def parity(self) -> int:
        """0 for even, 1 for odd."""
        return 0 if self.exponent(-1) == 0 else 1

    @property
    def is_odd(self) -> bool:
        return self.parity == 1

    def conjugate(self) -> "DirichletCharacter":
        return DirichletCharacter(
            self.modulus,
            self.order,
            tuple(None if k is None else (-k) % self.order for k in self.exponents),
        )

    @cached_property
    def conductor(self) -> int:
        n = self.modulus
        for m in sorted(d for d in range(1, n + 1) if n % d == 0):
            if all(
                self.exponents[a] == 0
                for a in range(1, n, m)
                if math.gcd(a, n) == 1
            ):
                return m
        raise AssertionError("unreachable")

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    @cached_property
    def primitive(self) -> "DirichletCharacter":
        """The primitive character of conductor ``f`` inducing this one."""
        f, n = self.conductor, self.modulus
        if f == n:
            return self
        exps: list = [None] * f
        for a in range(f):
            if math.gcd(a, f) != 1:
                continue
            b = a
            while math.gcd(b, n) != 1:
                b += f
            exps[a] = self.exponents[b % n]
        return DirichletCharacter(f, self.order, tuple(exps))

    @cached_property
    def index(self) -> int:
        idx, radix = 0, 1
        for g, s in unit_group_generators(self.modulus):
            k = self.exponent(g)
            idx += (k * s // self.order) * radix
            radix *= s
        return idx

    @property
    def label(self) -> str:
        return f"{self.modulus}.{self.index}"

    def __repr__(self) -> str:
        return f"DirichletCharacter({self.label}, order={self.order}, conductor={self.conductor})"


def _from_generator_exponents(n: int, js: tuple[int, ...]) -> DirichletCharacter:
    gens = unit_group_generators(n)
    e = 1
    for _, s in gens:
        e = math.lcm(e, s)
    logs = discrete_logs(n)
    raw: list = [None] * n
    for a, la in logs.items():
        raw[a] = sum(j * l * (e // s) for j, l, (_, s) in zip(js, la, gens)) % e
    g = e
    for k in raw:
        if k is not None:
            g = math.gcd(g, k)
    order = e // g
    exps = tuple(None if k is None else k // g for k in raw)
    return DirichletCharacter(n, order, exps)


@lru_cache(maxsize=None)
def characters_mod(n: int) -> tuple[DirichletCharacter, ...]:
    """All Dirichlet characters mod n, ordered by index (trivial first)."""
    gens = unit_group_generators(n)
    chars = [_from_generator_exponents(n, js) for js in product(*(range(s) for _, s in gens))]
    chars.sort(key=lambda c: c.index)
    return tuple(chars)


def jacobi(a: int, n: int) -> int:
    if n <= 0 or n % 2 == 0:
        raise ValueError("Jacobi symbol needs odd positive n")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker(a: int, n: int) -> int:
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    return result * jacobi(a, n) if n > 1 else result


def is_fundamental_discriminant(d: int) -> bool:
    if d in (0, 1):
        return False
    if d % 4 == 1:
        return _squarefree(abs(d))
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and _squarefree(abs(m))
    return False


def _squarefree(n: int) -> bool:
    return all(k == 1 for _, k in _factor(n))


def kronecker_character(d: int) -> DirichletCharacter:
    """The primitive quadratic character a -> (d/a) of conductor |d|."""
    if not is_fundamental_discriminant(d):
        raise ValueError(f"{d} is not a fundamental discriminant")
    m = abs(d)
    exps = tuple(
        None if math.gcd(a, m) != 1 else (0 if kronecker(d, a) == 1 else 1) for a in range(m)
    )
    return DirichletCharacter(m, 2, exps)
