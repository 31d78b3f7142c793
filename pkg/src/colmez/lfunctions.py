"""Special values of Dirichlet L-functions at s = 0 and s = 1.

Every character is replaced by the primitive character inducing it, so the
values are those of the Artin L-function attached to it.  With f the conductor,

    L(chi, 0)  = -(1/f) sum_a a chi(a)
    L'(chi, 0) = -log f * L(chi, 0) + sum_a chi(a) log Gamma(a/f)

the second from zeta'(0, x) = log Gamma(x) - (1/2) log 2 pi and sum_a chi(a) = 0.
An Euler-Maclaurin evaluator of the Hurwitz zeta function is provided as an
independent oracle; it does not touch log Gamma.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import lru_cache

from .characters import DirichletCharacter
from .classfun import ClassFunction, decompose
from .cyclotomic import Cyclotomic
from .errors import (
    DomainError,
    EvenCharacter,
    EvenCharacterZero,
    NotCMZero,
    TrivialCharacter,
)

EULER_GAMMA = 0.57721566490153286061
LOG_2PI = math.log(2 * math.pi)
EVALUATOR_VERSION = "lgamma-1"
CONDUCTOR_CAP = 10 ** 5
CONVENTIONS = ("paper", "analytic")


def _csum(values) -> complex:
    vals = list(values)
    return complex(math.fsum(v.real for v in vals), math.fsum(v.imag for v in vals))


def _primitive_nontrivial(chi: DirichletCharacter) -> DirichletCharacter:
    if chi.is_trivial:
        raise TrivialCharacter("the trivial character has no finite L-value here")
    prim = chi.primitive
    if prim.modulus > CONDUCTOR_CAP:
        raise DomainError(f"conductor {prim.modulus} exceeds {CONDUCTOR_CAP}")
    return prim


def _maybe_real(z: complex, chi: DirichletCharacter):
    return z.real if chi.order <= 2 else z


# --- L(chi, 0) ------------------------------------------------------------------------


def l_at_zero_exact(chi: DirichletCharacter) -> Cyclotomic:
    """-(1/f) sum_a a chi(a) as an exact element of Q(zeta_order)."""
    prim = _primitive_nontrivial(chi)
    f, e = prim.modulus, prim.order
    powers: dict[int, int] = {}
    for a in range(1, f):
        k = prim.exponent(a)
        if k is not None:
            powers[k] = powers.get(k, 0) + a
    return Cyclotomic.from_powers(e, powers) * Fraction(-1, f)


def l_at_zero(chi: DirichletCharacter):
    """L(chi, 0); a Fraction for quadratic chi, a complex number otherwise."""
    prim = _primitive_nontrivial(chi)
    if not prim.is_odd:
        raise EvenCharacter(f"L({chi.label}, 0) = 0 for even chi")
    value = l_at_zero_exact(prim)
    if prim.order == 2:
        return value.as_rational()
    return value.to_complex()


# --- L'(chi, 0) -----------------------------------------------------------------------


@lru_cache(maxsize=None)
def _lgamma_table(f: int) -> tuple[float, ...]:
    return tuple(math.lgamma(a / f) if a else 0.0 for a in range(f))


def _l_prime_at_zero_with_error(prim: DirichletCharacter) -> tuple[complex, float]:
    f = prim.modulus
    table = _lgamma_table(f)
    terms = [prim(a) * table[a] for a in range(1, f) if prim.exponent(a) is not None]
    l0 = l_at_zero_exact(prim).to_complex() if prim.is_odd else 0j
    total = _csum(terms) - math.log(f) * l0
    # lgamma is good to a few ulps; allow 4 ulps per term plus the final rounding
    scale = math.fsum(abs(t) for t in terms) + abs(math.log(f) * l0)
    return total, 4 * len(terms) * 2.0 ** -52 * max(scale, 1.0)


def l_prime_at_zero(chi: DirichletCharacter):
    """L'(chi, 0) via log Gamma; finite for even chi too."""
    prim = _primitive_nontrivial(chi)
    value, _ = _l_prime_at_zero_with_error(prim)
    return _maybe_real(value, prim)


def log_derivative_at_zero(chi: DirichletCharacter):
    """Z(chi, 0) = L'(chi, 0) / L(chi, 0) for odd chi."""
    prim = _primitive_nontrivial(chi)
    if not prim.is_odd:
        raise EvenCharacterZero(f"L({chi.label}, 0) vanishes; no log derivative")
    return _maybe_real(l_value_record(prim).z, prim)


def log_derivative_at_one(chi: DirichletCharacter):
    """L'/L(chi, 1) from the functional equation of the completed L-function.

    For odd primitive chi of conductor f:
        L'/L(chi, 1) = -Z(conj chi, 0) - log(f / pi) + gamma + log 2.
    """
    prim = _primitive_nontrivial(chi)
    if not prim.is_odd:
        raise EvenCharacterZero(f"{chi.label} is even")
    z_bar = l_value_record(prim.conjugate()).z
    value = -z_bar - math.log(prim.modulus / math.pi) + EULER_GAMMA + math.log(2)
    return _maybe_real(value, prim)


# --- records and the Z functional -----------------------------------------------------


@dataclass(frozen=True)
class LValueRecord:
    character: str  # label of the primitive character
    l0: complex
    l0_prime: complex
    l0_exact: Fraction | None  # set for quadratic characters
    error: float

    @property
    def z(self) -> complex:
        if self.l0 == 0:
            raise EvenCharacterZero(f"L({self.character}, 0) = 0")
        return self.l0_prime / self.l0


def l_value_record(chi: DirichletCharacter, cache=None) -> LValueRecord:
    """L(chi, 0) and L'(chi, 0) for the primitive character of chi, optionally cached.

    ``cache`` needs ``get(key) -> (l0, l0_prime, error) | None`` and
    ``put(key, (l0, l0_prime, error))``.
    """
    prim = _primitive_nontrivial(chi)
    exact = None
    if prim.order == 2 and prim.is_odd:
        exact = l_at_zero_exact(prim).as_rational()
    key = (prim.modulus, prim.index, "L0", "double")
    hit = cache.get(key) if cache is not None else None
    if hit is not None:
        l0, l0p, err = hit
        return LValueRecord(prim.label, l0, l0p, exact, err)
    l0 = l_at_zero_exact(prim).to_complex() if prim.is_odd else 0j
    l0p, err = _l_prime_at_zero_with_error(prim)
    if cache is not None:
        cache.put(key, (l0, l0p, err))
    return LValueRecord(prim.label, l0, l0p, exact, err)


def trivial_z(convention: str = "paper") -> float:
    """Value assigned to Z at the trivial character.

    "paper": -log 2 pi.  "analytic": zeta'(0)/zeta(0) = +log 2 pi.
    """
    if convention == "paper":
        return -LOG_2PI
    if convention == "analytic":
        return LOG_2PI
    raise ValueError(f"unknown convention {convention!r}; use one of {CONVENTIONS}")


@dataclass(frozen=True)
class ZContribution:
    character: DirichletCharacter
    multiplicity: complex
    z: complex

    @property
    def value(self) -> complex:
        return self.multiplicity * self.z


@dataclass(frozen=True)
class ZBreakdown:
    value: float
    contributions: tuple[ZContribution, ...]
    convention: str


def z_breakdown(f: ClassFunction, convention: str = "paper", cache=None) -> ZBreakdown:
    """Z(f, 0) = sum_chi m_chi Z(chi, 0), with the per-character terms."""
    trivial = trivial_z(convention)
    dec = decompose(f)
    parts = []
    for chi, m in dec.nonzero():
        mult = m.to_complex()
        if chi.is_trivial:
            parts.append(ZContribution(chi, mult, complex(trivial)))
        elif not chi.is_odd:
            raise NotCMZero(f"even character {chi.label} has multiplicity {mult:.3g}")
        else:
            parts.append(ZContribution(chi, mult, l_value_record(chi, cache).z))
    total = _csum(p.value for p in parts)
    return ZBreakdown(total.real, tuple(parts), convention)


def z_functional(f: ClassFunction, convention: str = "paper", cache=None) -> float:
    return z_breakdown(f, convention, cache).value


# --- independent oracles --------------------------------------------------------------


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """B_n with B_1 = -1/2 (Akiyama-Tanigawa)."""
    a = [Fraction(0)] * (n + 1)
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
    return a[0] if n != 1 else Fraction(-1, 2)


def _hurwitz_em(s: float, x: float, terms: int = 20, order: int = 12) -> float:
    """Euler-Maclaurin evaluation of zeta(s, x) for real s != 1 and x > 0."""
    head = math.fsum((k + x) ** -s for k in range(terms))
    y = terms + x
    tail = [y ** (1 - s) / (s - 1), 0.5 * y ** -s]
    rising = s  # s (s+1) ... (s+2j-2)
    for j in range(1, order + 1):
        coef = float(bernoulli(2 * j) / math.factorial(2 * j))
        tail.append(coef * rising * y ** (-s - 2 * j + 1))
        rising *= (s + 2 * j - 1) * (s + 2 * j)
    return head + math.fsum(tail)


def hurwitz_zeta_oracle(s: float, x: float) -> float:
    """zeta(s, x) for |s| <= 1/2 and 0 < x <= 1."""
    if not abs(s) <= 0.5:
        raise DomainError(f"|s| = {abs(s)} > 1/2")
    if not 0 < x <= 1:
        raise DomainError(f"x = {x} outside (0, 1]")
    return _hurwitz_em(s, x)


def five_point_derivative(fn, t: float, h: float = 1e-3):
    return (-fn(t + 2 * h) + 8 * fn(t + h) - 8 * fn(t - h) + fn(t - 2 * h)) / (12 * h)


def hurwitz_derivative_oracle(x: float, h: float = 1e-3) -> float:
    """zeta'(0, x) by central differences of the Euler-Maclaurin evaluator."""
    return five_point_derivative(lambda s: hurwitz_zeta_oracle(s, x), 0.0, h)


def _l_series_em(prim: DirichletCharacter, s: float) -> complex:
    f = prim.modulus
    terms = [prim(a) * _hurwitz_em(s, a / f) for a in range(1, f + 1) if prim.exponent(a) is not None]
    return f ** -s * _csum(terms)


def l_prime_at_zero_oracle(chi: DirichletCharacter, h: float = 1e-3) -> complex:
    """L'(chi, 0) by finite differences of the Euler-Maclaurin L(chi, s)."""
    prim = _primitive_nontrivial(chi)
    return five_point_derivative(lambda s: _l_series_em(prim, s), 0.0, h)


def log_derivative_at_one_direct(chi: DirichletCharacter, h: float = 1e-3):
    """L'/L(chi, 1) straight from the Hurwitz decomposition near s = 1."""
    prim = _primitive_nontrivial(chi)
    if not prim.is_odd:
        raise EvenCharacterZero(f"{chi.label} is even")
    vals = {k: _l_series_em(prim, 1 + k * h) for k in (-2, -1, 1, 2)}
    deriv = (-vals[2] + 8 * vals[1] - 8 * vals[-1] + vals[-2]) / (12 * h)
    at_one = (-vals[2] + 4 * vals[1] + 4 * vals[-1] - vals[-2]) / 6
    return _maybe_real(deriv / at_one, prim)


def zeta_hasse(s: float, terms: int = 90, digits: int = 60) -> float:
    """Riemann zeta by Hasse's globally convergent series, in Decimal arithmetic."""
    with localcontext() as ctx:
        ctx.prec = digits
        ds = Decimal(repr(s))
        total = Decimal(0)
        powers = [Decimal(k + 1) ** (-ds) for k in range(terms)]
        for n in range(terms):
            inner = sum(
                ((-1) ** k * math.comb(n, k) * powers[k] for k in range(n + 1)), Decimal(0)
            )
            total += inner / Decimal(2) ** (n + 1)
        return float(total / (1 - Decimal(2) ** (1 - ds)))


def class_number(d: int) -> int:
    """h(d) for a negative discriminant by counting reduced primitive forms (a, b, c)."""
    if d >= 0 or d % 4 not in (0, 1):
        raise DomainError(f"{d} is not a negative discriminant")
    h = 0
    a = 1
    while 3 * a * a <= -d:
        for b in range(-a + 1, a + 1):
            num = b * b - d
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if math.gcd(math.gcd(a, abs(b)), c) == 1:
                h += 1
        a += 1
    return h


def units_in_order(d: int) -> int:
    return {-3: 6, -4: 4}.get(d, 2)
