"""Conjectural heights of CM-types and partial CM-types, and their verifiers.

The conjectural height of a class function a is ht(a) = -Z(a^vee, 0).  For a
CM-type or partial CM-type the height is

    h = ht(A^0) - (1/2) mu_Art(A^0)

with A^0 the conjugation average of the generating function.  All mu_Art values
come from the exact conductor route.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

from .characters import kronecker_character
from .classfun import ClassFunction, conj_average, dual
from .cmtypes import (
    A_full,
    A_partial,
    CMType,
    PartialCMType,
    a_phi_tau,
    b_tau_rho,
    enumerate_cm_types,
    nearby_taus,
)
from .conductors import (
    discriminant,
    mu_art,
    mu_art_p,
    ramified_primes,
    real_discriminant,
    relative_discriminant,
)
from .cyclotomic import is_prime, valuation
from .errors import BadPrime, ConjugatePair, EqualPlaces, NotInType
from .galois import GaloisCMField, GroupElement, quadratic_field
from .lfunctions import (
    EULER_GAMMA,
    LOG_2PI,
    l_value_record,
    log_derivative_at_one,
    trivial_z,
    z_breakdown,
)


@dataclass(frozen=True)
class HeightReport:
    field: str
    type_label: str
    convention: str
    z_part: float
    mu_part: float
    mu_formal: str
    contributions: tuple = field(default=())  # (character label, multiplicity, Z, term)

    @property
    def total(self) -> float:
        return self.z_part + self.mu_part

    def as_dict(self) -> dict:
        return {
            "field": self.field,
            "type": self.type_label,
            "convention": self.convention,
            "total": self.total,
            "z_part": self.z_part,
            "mu_part": self.mu_part,
            "mu_formal": self.mu_formal,
            "characters": [
                {"character": lab, "multiplicity": [m.real, m.imag], "z": [z.real, z.imag], "term": t}
                for lab, m, z, t in self.contributions
            ],
        }


def conjectural_ht(f: ClassFunction, convention: str = "paper", cache=None) -> float:
    return -z_breakdown(dual(f), convention, cache).value


def _report(f: ClassFunction, label: str, convention: str, cache) -> HeightReport:
    f0 = conj_average(f)
    zb = z_breakdown(dual(f0), convention, cache)
    # the term attached to each character in -Z(f^vee)
    contribs = tuple(
        (c.character.label, c.multiplicity, c.z, -c.value.real) for c in zb.contributions
    )
    mu = mu_art(f0)
    return HeightReport(
        field=f.field.label,
        type_label=label,
        convention=convention,
        z_part=-zb.value,
        mu_part=-0.5 * mu.value,
        mu_formal=mu.formal,
        contributions=contribs,
    )


def height_of_function(f: ClassFunction, convention: str = "paper", cache=None) -> HeightReport:
    """ht(f^0) - (1/2) mu_Art(f^0) for any f in the CM^0 space."""
    return _report(f, "function", convention, cache)


def height_full(Phi: CMType, convention: str = "paper", cache=None) -> HeightReport:
    return _report(A_full(Phi), f"full:{Phi.label}", convention, cache)


def height_partial(phi: PartialCMType, convention: str = "paper", cache=None) -> HeightReport:
    return _report(A_partial(phi), f"partial:{phi.label}", convention, cache)


def height_partial_explicit(
    fld: GaloisCMField,
    sigma: GroupElement,
    tau: GroupElement,
    convention: str = "paper",
    cache=None,
) -> HeightReport:
    """Height of {sigma, tau} from character values at x = tau sigma^-1.

    With Haar-normalized indicators the odd-character coefficient of A_phi is
    (chi(x) + conj chi(x)) / |G| plus 1/g from the two diagonal terms, so

        h = -Z(1) - (1/g) sum_odd Z(chi) - (1/|G|) sum_odd (chi(x) + conj chi(x)) Z(chi)
            - (1/2) mu_Art(A_phi).
    """
    sigma, tau = fld.canon(sigma), fld.canon(tau)
    if sigma == tau:
        raise EqualPlaces("sigma and tau coincide")
    if fld.mul(fld.conj, tau) == sigma:
        raise ConjugatePair("sigma is the conjugate of tau")
    x = fld.mul(tau, fld.inv(sigma))
    g, order = fld.g, fld.order
    terms = []
    contribs = []
    for chi in fld.odd_characters():
        z = l_value_record(chi, cache).z
        coef = 1 / g + (chi(x) + chi(x).conjugate()) / order
        term = -(coef * z)
        terms.append(term)
        contribs.append((chi.label, coef, z, term.real))
    z_part = -trivial_z(convention) + math.fsum(t.real for t in terms)
    phi = PartialCMType(fld, frozenset({sigma, tau}))
    mu = mu_art(conj_average(A_partial(phi)))
    return HeightReport(
        field=fld.label,
        type_label=f"explicit:{sigma},{tau}",
        convention=convention,
        z_part=z_part,
        mu_part=-0.5 * mu.value,
        mu_formal=mu.formal,
        contributions=tuple(contribs),
    )


# --- averaged formula ----------------------------------------------------------------


@dataclass(frozen=True)
class AveragedReport:
    field: str
    computed: float  # (1/2^g) sum over CM-types of h(Phi)
    predicted: float
    convention: str

    @property
    def residual(self) -> float:
        return self.predicted - self.computed


def averaged_prediction(fld: GaloisCMField, cache=None) -> float:
    """-(1/2) sum_odd Z(chi) - (1/8) log(d_{E/F} d_E) + (g/2) log 2 pi."""
    zsum = math.fsum(l_value_record(chi, cache).z.real for chi in fld.odd_characters())
    d_e, d_ef = discriminant(fld), relative_discriminant(fld)
    return -0.5 * zsum - 0.125 * (math.log(d_ef) + math.log(d_e)) + 0.5 * fld.g * LOG_2PI


def verify_averaged(fld: GaloisCMField, convention: str = "paper", cache=None) -> AveragedReport:
    types = enumerate_cm_types(fld)
    heights = [height_full(T, convention, cache).total for T in types]
    computed = math.fsum(heights) / 2 ** fld.g
    return AveragedReport(fld.label, computed, averaged_prediction(fld, cache), convention)


# --- biquadratic family ----------------------------------------------------------------


@dataclass(frozen=True)
class FamilyRow:
    p: int
    d: int  # |disc| of the imaginary quadratic field
    h_conj_route: float
    example_rhs: float

    @property
    def delta(self) -> float:
        return self.h_conj_route - self.example_rhs

    @property
    def h_minus_quarter_log_d(self) -> float:
        return self.h_conj_route - 0.25 * math.log(self.d)


@dataclass(frozen=True)
class FamilyTable:
    rows: tuple[FamilyRow, ...]

    @property
    def spread(self) -> float:
        if not self.rows:
            return 0.0
        deltas = [r.delta for r in self.rows]
        return max(deltas) - min(deltas)


def _quadratic_discriminant(m: int) -> int:
    """Fundamental discriminant of Q(sqrt(-m)) for squarefree m > 0."""
    return -m if (-m) % 4 == 1 else -4 * m


def example_rhs(d: int) -> float:
    """(1/4) log d + (1/2) L'/L(chi, 1) - gamma/2 - log 2 pi for the field of discriminant -d."""
    chi = kronecker_character(-d)
    return 0.25 * math.log(d) + 0.5 * log_derivative_at_one(chi) - EULER_GAMMA / 2 - LOG_2PI


def verify_example_family(primes, convention: str = "paper", cache=None) -> FamilyTable:
    rows = []
    for p in primes:
        if not isinstance(p, int) or not is_prime(p) or p % 4 != 1:
            raise BadPrime(f"{p!r} is not a prime congruent to 1 mod 4")
        d = -_quadratic_discriminant(p)
        fld = quadratic_field(-d)
        Phi = CMType(fld, frozenset({fld.identity}))
        h = height_full(Phi, convention, cache).total
        rows.append(FamilyRow(p, d, h, example_rhs(d)))
    return FamilyTable(tuple(rows))


# --- comparison with the unconditional decomposition ------------------------------------


def comparison_correction(Phi: CMType, tau: GroupElement) -> float:
    """(1/2) log 2 pi + (1/(4g)) log|d_E| - mu_Art(a^0_{Phi,tau})."""
    fld = Phi.field
    tau = fld.canon(tau)
    if tau not in Phi.members:
        raise NotInType(f"{tau} is not in {Phi!r}")
    a0 = conj_average(a_phi_tau(Phi, tau))
    return 0.5 * LOG_2PI + math.log(discriminant(fld)) / (4 * fld.g) - mu_art(a0).value


def nearby_conductor_identity(Phi1: CMType, Phi2: CMType) -> dict[int, tuple[Fraction, Fraction]]:
    """Per prime: (mu_Art,p(a^0_1 + a^0_2), (v_p(d_E) - v_p(d_F)) / g); equal for nearby types."""
    t1, t2 = nearby_taus(Phi1, Phi2)
    fld = Phi1.field
    total = conj_average(a_phi_tau(Phi1, t1)) + conj_average(a_phi_tau(Phi2, t2))
    d_e, d_f = discriminant(fld), real_discriminant(fld)
    return {
        p: (mu_art_p(total, p), Fraction(valuation(d_e, p) - valuation(d_f, p), fld.g))
        for p in ramified_primes(fld)
    }


# --- full type against its pairs --------------------------------------------------------


@dataclass(frozen=True)
class FullPartialReport:
    h_full: float
    pair_sum: float
    diag_height: float  # ht(b_tau_tau) - (1/2) mu_Art(b_tau_tau)
    printed_residual: float
    corrected_residual: float

    def vanishing(self, tol: float = 1e-9) -> list[str]:
        out = []
        if abs(self.printed_residual) < tol:
            out.append("printed")
        if abs(self.corrected_residual) < tol:
            out.append("corrected")
        return out


def verify_full_partial_heights(Phi: CMType, convention: str = "paper", cache=None) -> FullPartialReport:
    """Residuals (predicted - computed) of h(Phi) against the sum over pairs {tau, rho}.

    Pairs run over unordered pairs with tau = rho allowed.  The printed identity
    subtracts C(g,2) log 2 pi, where log 2 pi stands for the height of the
    constant 1 (so it flips sign under the analytic convention); the corrected
    one also subtracts g(g-1) times the height of b_{tau,tau}.
    """
    fld = Phi.field
    g = fld.g
    if g < 2:
        raise ValueError("needs g >= 2")
    members = sorted(Phi.members)
    pairs = [(t, r) for i, t in enumerate(members) for r in members[i:]]
    pair_heights = [
        height_partial(PartialCMType(fld, frozenset({t, r})), convention, cache).total for t, r in pairs
    ]
    pair_sum = math.fsum(pair_heights)
    h_full = height_full(Phi, convention, cache).total
    b = b_tau_rho(fld, fld.identity, fld.identity)
    diag = height_of_function(b, convention, cache).total
    one = height_of_function(ClassFunction.constant(fld, 1), convention, cache).total
    printed = pair_sum - comb(g, 2) * one - h_full
    corrected = pair_sum - comb(g, 2) * one - g * (g - 1) * diag - h_full
    return FullPartialReport(h_full, pair_sum, diag, printed, corrected)


def admissible_pairs(fld: GaloisCMField):
    """Unordered (sigma, tau) with sigma != tau and sigma != c tau."""
    for s, t in combinations(fld.elements, 2):
        if fld.mul(fld.conj, t) != s:
            yield s, t
