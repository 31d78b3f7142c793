"""Artin conductor functionals, discriminants and root discriminants.

The p-part of the log-conductor functional is computed exactly two ways:

* ``mu_art_p`` regroups the character sum over the ramification filtration:
  v_p(f_chi) counts the steps ``a`` at which chi is nontrivial on the units
  congruent to 1 mod p^a (and to 1 away from p), so the character sum collapses
  to averages of f over those subgroups;
* ``mu_art_p_local`` uses p-adic valuations of norms of differences of
  conjugates of an integral generator.

``mu_art_p_characters`` is the plain character sum with exact cyclotomic
multiplicities, kept as a third route for testing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .characters import DirichletCharacter, _factor
from .classfun import ClassFunction, conj_average, decompose
from .cmtypes import A_partial
from .cyclotomic import Cyclotomic, euler_phi, integer_root, prime_factors, valuation
from .errors import IndexDivisible, NonMonogenic
from .galois import GaloisCMField, GroupElement

Exponents = dict  # prime -> Fraction


def _log_value(exponents: Exponents) -> float:
    return math.fsum(float(e) * math.log(p) for p, e in sorted(exponents.items()))


def _format_formal(exponents: Exponents) -> str:
    terms = [f"{e}*log({p})" for p, e in sorted(exponents.items()) if e]
    return " + ".join(terms) or "0"


@dataclass(frozen=True)
class ConductorReport:
    """mu_Art(f) as sum_p e_p log p with exact e_p, plus its float value."""

    exponents: dict
    value: float

    @property
    def formal(self) -> str:
        return _format_formal(self.exponents)


@dataclass(frozen=True)
class RootDiscriminant:
    exponents: dict
    value: float

    @property
    def log(self) -> float:
        return _log_value(self.exponents)

    def exponent(self, p: int) -> Fraction:
        return self.exponents.get(p, Fraction(0))

    @property
    def formal(self) -> str:
        terms = [f"{p}^({e})" for p, e in sorted(self.exponents.items()) if e]
        return " * ".join(terms) or "1"


# --- conductors and discriminants -------------------------------------------------


def character_conductor(chi: DirichletCharacter) -> int:
    return chi.conductor


def discriminant(fld: GaloisCMField) -> int:
    """|d_E| by the conductor-discriminant formula."""
    return math.prod(chi.conductor for chi in fld.characters)


def real_discriminant(fld: GaloisCMField) -> int:
    """|d_F| for the maximal totally real subfield (even characters only)."""
    return math.prod(chi.conductor for chi in fld.even_characters())


def relative_discriminant(fld: GaloisCMField) -> int:
    """Norm of the relative discriminant of E/F, i.e. |d_E| / d_F^2."""
    dE, dF = discriminant(fld), real_discriminant(fld)
    q, r = divmod(dE, dF * dF)
    assert r == 0
    return q


def ramified_primes(fld: GaloisCMField) -> list[int]:
    return prime_factors(fld.modulus)


# --- mu_Art,p -----------------------------------------------------------------------


@lru_cache(maxsize=None)
def _filtration(fld: GaloisCMField, p: int) -> tuple[tuple[GroupElement, ...], ...]:
    """Images in G of the subgroups {x = 1 mod n/p^k, x = 1 mod p^a}, a = 0..k-1."""
    n = fld.modulus
    k = dict(_factor(n)).get(p, 0)
    q = p ** k
    rest = n // q
    out = []
    for a in range(k):
        pa = p ** a
        sub = [
            x for x in range(1, n + 1)
            if math.gcd(x, n) == 1 and x % rest == 1 % rest and (x - 1) % pa == 0
        ]
        out.append(tuple(sorted({fld.canon(x) for x in sub})))
    return tuple(out)


def mu_art_p(f: ClassFunction, p: int) -> Fraction:
    """sum_chi <f, chi> v_p(f_chi), exactly."""
    fld = f.field
    f1 = f(fld.identity)
    total = Fraction(0)
    for sub in _filtration(fld, p):
        mean = sum((f(x) for x in sub), Fraction(0)) / len(sub)
        total += f1 - mean
    return total


def mu_art_p_characters(f: ClassFunction, p: int) -> Fraction:
    """Same value via exact cyclotomic multiplicities times v_p of each conductor."""
    dec = decompose(f)
    acc = Cyclotomic.scalar(dec.exponent, 0)
    for chi, m in dec.items():
        if chi.conductor % p == 0 and not m.is_zero():
            acc = acc + m * valuation(chi.conductor, p)
    return acc.as_rational()


def mu_art_exponents(f: ClassFunction) -> dict:
    return {p: mu_art_p(f, p) for p in ramified_primes(f.field)}


def mu_art(f: ClassFunction) -> ConductorReport:
    exps = mu_art_exponents(f)
    return ConductorReport(exps, _log_value(exps))


# --- integral generators --------------------------------------------------------------


@lru_cache(maxsize=None)
def _difference_norms(fld: GaloisCMField, alpha: Cyclotomic) -> dict:
    """|N_E(alpha - y alpha)| for every y != 1 (via Q(zeta_n) norms)."""
    k = euler_phi(fld.modulus) // fld.degree
    out = {}
    for y in fld.elements:
        if y == fld.identity:
            continue
        d = alpha - alpha.galois(y)
        if d.is_zero():
            raise NonMonogenic(f"{alpha!r} is fixed by {y}; it does not generate E")
        out[y] = _root_abs(d.norm(), k)
    return out


def _root_abs(value, k: int) -> int:
    return integer_root(abs(int(value)), k) if k % 2 == 0 else abs(integer_root(int(value), k))


def generator_discriminant(fld: GaloisCMField, alpha: Cyclotomic) -> int:
    """|disc| of the minimal polynomial of alpha over Q."""
    return math.prod(_difference_norms(fld, alpha).values())


def index_primes(fld: GaloisCMField, alpha: Cyclotomic) -> list[int]:
    """Primes dividing [O_E : Z[alpha]]."""
    disc, dE = generator_discriminant(fld, alpha), discriminant(fld)
    q, r = divmod(disc, dE)
    if r:
        raise NonMonogenic("discriminant of alpha is not a multiple of d_E")
    return prime_factors(q)


def is_monogenic_generator(fld: GaloisCMField, alpha: Cyclotomic) -> bool:
    try:
        return not index_primes(fld, alpha)
    except NonMonogenic:
        return False


def default_generator(fld: GaloisCMField) -> Cyclotomic:
    """zeta_n for E = Q(zeta_n); otherwise the first Gauss period that generates O_E.

    Falls back to the Gauss period of zeta_n itself when no candidate is
    monogenic; the local route is then unavailable at primes dividing the index.
    """
    if len(fld.kernel) == 1:
        return Cyclotomic.zeta(fld.modulus)
    candidates = [fld.gauss_period(a) for a in range(1, fld.modulus) if math.gcd(a, fld.modulus) == 1]
    n = fld.modulus
    for a in range(1, n):
        for b in range(a + 1, n):
            if math.gcd(a * b, n) == 1:
                candidates.append(fld.gauss_period(a) + fld.gauss_period(b))
    for alpha in candidates:
        if is_monogenic_generator(fld, alpha):
            return alpha
    return fld.gauss_period(1)


def mu_art_p_local(fld: GaloisCMField, y: GroupElement, p: int, alpha: Cyclotomic) -> Fraction:
    """mu_Art,p of the indicator of y, from valuations of conjugate differences."""
    if p in index_primes(fld, alpha):
        raise IndexDivisible(f"{p} divides the index of Z[alpha] in O_E")
    y = fld.canon(y)
    two_g = fld.degree
    if y == fld.identity:
        return Fraction(valuation(discriminant(fld), p), two_g)
    norm = _difference_norms(fld, alpha)[y]
    return -Fraction(valuation(norm, p), two_g)


# --- root discriminants ---------------------------------------------------------------


def root_discriminant(fld: GaloisCMField, S, alpha: Cyclotomic) -> RootDiscriminant:
    """d_S: exponents (1/[E:Q]) v_p(prod over ordered pairs s != t in S of N(s alpha - t alpha))."""
    S = sorted({fld.canon(s) for s in S})
    if not S:
        raise ValueError("S must be non-empty")
    norms = _difference_norms(fld, alpha)
    acc: dict[int, int] = {}
    for s in S:
        for t in S:
            if s == t:
                continue
            y = fld.mul(fld.inv(s), t)
            for p in prime_factors(norms[y]):
                acc[p] = acc.get(p, 0) + valuation(norms[y], p)
    bad = set(index_primes(fld, alpha)) & set(acc)
    if bad:
        raise NonMonogenic(f"primes {sorted(bad)} divide the index of Z[alpha]")
    exps = {p: Fraction(v, fld.degree) for p, v in sorted(acc.items())}
    return RootDiscriminant(exps, math.exp(_log_value(exps)))


def real_root_discriminant(fld: GaloisCMField, places, alpha: Cyclotomic) -> RootDiscriminant:
    """d_S computed inside the real subfield F, with generator alpha + conj(alpha)."""
    beta = alpha + alpha.conjugate()
    g = fld.g
    k = euler_phi(fld.modulus) // g
    one = fld.pair(fld.identity)
    norms = {}
    for y in fld.real_places:
        if y == one:
            continue
        d = beta - beta.galois(y)
        if d.is_zero():
            raise NonMonogenic("alpha + conj(alpha) does not generate F")
        norms[y] = int(d.norm())
    places = sorted({fld.pair(s) for s in places})
    acc: dict[int, Fraction] = {}
    for s in places:
        for t in places:
            if s == t:
                continue
            nrm = norms[fld.pair(fld.mul(fld.inv(s), t))]
            for p in prime_factors(nrm):
                acc[p] = acc.get(p, Fraction(0)) + Fraction(valuation(nrm, p), k)
    dF = real_discriminant(fld)
    for p in acc:
        # Z[beta] must be maximal at p: v_p(disc beta) = v_p(d_F)
        vdisc = sum(Fraction(valuation(v, p), k) for v in norms.values())
        if vdisc != valuation(dF, p):
            raise NonMonogenic(f"alpha + conj(alpha) is not p-maximal at {p}")
    exps = {p: e / g for p, e in sorted(acc.items())}
    return RootDiscriminant(exps, math.exp(_log_value(exps)))


# --- discriminant formula for partial types ---------------------------------------------


@dataclass(frozen=True)
class DiscriminantRow:
    p: int
    mu: Fraction
    d_phi: Fraction
    d_sigma_preimage: Fraction
    d_sigma_real: Fraction | None
    predicted_preimage: Fraction
    predicted_real: Fraction | None

    @property
    def residual_preimage(self) -> Fraction:
        return self.mu - self.predicted_preimage

    @property
    def residual_real(self) -> Fraction | None:
        if self.predicted_real is None:
            return None
        return self.mu - self.predicted_real


@dataclass(frozen=True)
class DiscriminantFormulaReport:
    size: int
    rows: tuple[DiscriminantRow, ...]
    remark_rows: tuple = field(default=())  # (p, d_sigma exponent, v_p(d_{E/F})/[F:Q])

    @property
    def asserted(self) -> bool:
        """Only singletons carry a pass/fail verdict."""
        return self.size == 1

    @property
    def passes(self) -> bool:
        return all(r.residual_preimage == 0 for r in self.rows)


def verify_discriminant_formula(phi, alpha: Cyclotomic | None = None) -> DiscriminantFormulaReport:
    """Compare mu_Art,p(A_phi) with the root-discriminant expression under two readings of d_Sigma."""
    fld = phi.field
    alpha = alpha if alpha is not None else default_generator(fld)
    f = conj_average(A_partial(phi))
    d_phi = root_discriminant(fld, phi.members, alpha)
    d_pre = root_discriminant(fld, phi.places_preimage, alpha)
    try:
        d_real = real_root_discriminant(fld, phi.places, alpha)
    except NonMonogenic:
        d_real = None
    dE = discriminant(fld)
    dEF = relative_discriminant(fld)
    k = len(phi)
    rows = []
    remark = []
    for p in ramified_primes(fld):
        vdE = valuation(dE, p)
        base = Fraction(k, 2 * fld.degree) * vdE - Fraction(1, 2) * d_phi.exponent(p)
        pred_pre = base + Fraction(1, 4) * d_pre.exponent(p)
        pred_real = None if d_real is None else base + Fraction(1, 4) * d_real.exponent(p)
        rows.append(
            DiscriminantRow(
                p,
                mu_art_p(f, p),
                d_phi.exponent(p),
                d_pre.exponent(p),
                None if d_real is None else d_real.exponent(p),
                pred_pre,
                pred_real,
            )
        )
        remark.append((p, d_pre.exponent(p), Fraction(valuation(dEF, p), fld.g)))
    return DiscriminantFormulaReport(k, tuple(rows), tuple(remark))
