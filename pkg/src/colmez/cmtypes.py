"""CM-types, partial CM-types and the class functions attached to them.

Also holds the exact verifiers for the combinatorial identities relating
partial and full CM-types.  All residuals are exact :class:`ClassFunction`s.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import comb

from .classfun import ClassFunction, induce_sign_from_conjugation
from .errors import ConjugatePair, InvalidType, NotNearby, TooLarge
from .galois import GaloisCMField, GroupElement

MAX_ENUMERATION_G = 20


@dataclass(frozen=True)
class PartialCMType:
    field: GaloisCMField
    members: frozenset[GroupElement]

    def __post_init__(self):
        fld = self.field
        if not self.members:
            raise InvalidType("a type needs at least one embedding")
        canon = frozenset(fld.canon(x) for x in self.members)
        if len(canon) != len(self.members):
            raise InvalidType("repeated embedding in type")
        object.__setattr__(self, "members", canon)
        for x in canon:
            if fld.mul(fld.conj, x) in canon:
                raise ConjugatePair(f"{x} and its conjugate both appear")

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))

    @property
    def places(self) -> frozenset[GroupElement]:
        """Restrictions to the real subfield, as classes of G/<c>."""
        return frozenset(self.field.pair(x) for x in self.members)

    @property
    def places_preimage(self) -> frozenset[GroupElement]:
        fld = self.field
        return frozenset(self.members | {fld.mul(fld.conj, x) for x in self.members})

    def conjugate(self) -> "PartialCMType":
        fld = self.field
        return PartialCMType(fld, frozenset(fld.mul(fld.conj, x) for x in self.members))

    def translate(self, y: GroupElement) -> "PartialCMType":
        fld = self.field
        return PartialCMType(fld, frozenset(fld.mul(y, x) for x in self.members))

    @property
    def is_full(self) -> bool:
        return len(self.members) == self.field.g

    @property
    def label(self) -> str:
        return ",".join(str(x) for x in sorted(self.members))

    def __repr__(self):
        return f"{type(self).__name__}({self.field.label}; {{{self.label}}})"


@dataclass(frozen=True, repr=False)
class CMType(PartialCMType):
    def __post_init__(self):
        super().__post_init__()
        if len(self.members) != self.field.g:
            raise InvalidType(f"a CM-type of {self.field.label} has {self.field.g} members")

    def conjugate(self) -> "CMType":
        return CMType(self.field, super().conjugate().members)

    def translate(self, y: GroupElement) -> "CMType":
        return CMType(self.field, super().translate(y).members)


def partial_cm_type(fld: GaloisCMField, reps) -> PartialCMType:
    return PartialCMType(fld, frozenset(int(r) for r in reps))


def cm_type(fld: GaloisCMField, reps) -> CMType:
    return CMType(fld, frozenset(int(r) for r in reps))


def a_phi_tau(Phi: PartialCMType, tau: GroupElement) -> ClassFunction:
    """Indicator of {x : x tau in Phi}."""
    fld = Phi.field
    return ClassFunction.from_callable(fld, lambda x: int(fld.mul(x, tau) in Phi.members))


def b_tau_rho(fld: GaloisCMField, tau: GroupElement, rho: GroupElement) -> ClassFunction:
    """1/2 where x tau = rho, -1/2 where x tau = conj(rho), 0 elsewhere."""
    x = fld.mul(rho, fld.inv(tau))
    half = Fraction(1, 2)
    return ClassFunction.from_mapping(fld, {x: half, fld.mul(fld.conj, x): -half})


@lru_cache(maxsize=8192)
def A_full(Phi: PartialCMType) -> ClassFunction:
    """x -> |Phi cap x Phi|."""
    fld = Phi.field
    members = Phi.members
    return ClassFunction.from_callable(
        fld, lambda x: sum(1 for t in members if fld.mul(x, t) in members)
    )


@lru_cache(maxsize=8192)
def A_partial(phi: PartialCMType) -> ClassFunction:
    """x -> |phi cap x phi| + 1/2 |Sigma cap x Sigma^c| with Sigma in G/<c>."""
    fld = phi.field
    sigma = phi.places
    sigma_c = [p for p in fld.real_places if p not in sigma]
    overlap = A_full(phi)

    def value(x):
        moved = sum(1 for s in sigma_c if fld.pair(fld.mul(x, s)) in sigma)
        return overlap(x) + Fraction(moved, 2)

    return ClassFunction.from_callable(fld, value)


def enumerate_cm_types(fld: GaloisCMField, max_g: int = MAX_ENUMERATION_G) -> list[CMType]:
    """All 2^g CM-types, choosing one embedding from each conjugate pair."""
    if fld.g > max_g:
        raise TooLarge(f"g = {fld.g} exceeds enumeration limit {max_g}")
    pairs = [(p, fld.mul(fld.conj, p)) for p in fld.real_places]
    return [CMType(fld, frozenset(choice)) for choice in product(*pairs)]


def enumerate_partial_types(fld: GaloisCMField, max_size: int) -> list[PartialCMType]:
    out = []
    for k in range(1, max_size + 1):
        for places in combinations(fld.real_places, k):
            for signs in product((False, True), repeat=k):
                members = frozenset(fld.mul(fld.conj, p) if s else p for p, s in zip(places, signs))
                out.append(PartialCMType(fld, members))
    return out


def orbit_average(Phi: CMType) -> ClassFunction:
    """(1/|G|) sum over sigma in G and tau in Phi of a_{sigma Phi, sigma tau}."""
    fld = Phi.field
    moved = [
        (fld.mul(s, t), frozenset(fld.mul(s, u) for u in Phi.members))
        for s in fld.elements
        for t in Phi.members
    ]

    def count(x):
        return sum(1 for st, members in moved if fld.mul(x, st) in members)

    return ClassFunction.from_callable(fld, count) / fld.order


class TypeTable:
    """The functions A_full(Phi) for every CM-type of a field, computed once."""

    def __init__(self, fld: GaloisCMField, max_g: int = MAX_ENUMERATION_G):
        self.field = fld
        self.types = enumerate_cm_types(fld, max_g)
        self.functions = [A_full(T) for T in self.types]
        self._int_values = [tuple(int(v) for v in f.values) for f in self.functions]
        self.total = ClassFunction(fld, tuple(Fraction(sum(col)) for col in zip(*self._int_values)))

    def sum_containing(self, phi: PartialCMType) -> ClassFunction:
        acc = [0] * self.field.order
        for T, f in zip(self.types, self._int_values):
            if phi.members <= T.members:
                acc = [a + b for a, b in zip(acc, f)]
        return ClassFunction(self.field, tuple(Fraction(a) for a in acc))


def verify_partial_in_full(phi: PartialCMType, table: TypeTable | None = None) -> ClassFunction:
    """A_partial(phi) minus its expression through full CM-types; zero when the identity holds."""
    fld = phi.field
    table = table or TypeTable(fld)
    g, k = fld.g, len(phi)
    rhs = table.sum_containing(phi) * Fraction(1, 2 ** (g - k)) - table.total * Fraction(g - k, g * 2 ** g)
    return A_partial(phi) - rhs


@dataclass(frozen=True)
class FullInPartialReport:
    residual: ClassFunction
    printed: ClassFunction
    corrected: ClassFunction

    @property
    def printed_matches(self) -> bool:
        return self.residual == self.printed

    @property
    def corrected_matches(self) -> bool:
        return self.residual == self.corrected

    @property
    def printed_gap(self) -> ClassFunction:
        return self.residual - self.printed


def verify_full_in_partial(Phi: CMType) -> FullInPartialReport:
    """Compare A_full(Phi) with the sum of A_partial over unordered pairs (diagonal included)."""
    fld = Phi.field
    g = fld.g
    members = sorted(Phi.members)
    pair_sum = ClassFunction.zero(fld)
    for i, t in enumerate(members):
        for r in members[i:]:
            pair_sum = pair_sum + A_partial(PartialCMType(fld, frozenset({t, r})))
    residual = A_full(Phi) - pair_sum
    printed = ClassFunction.constant(fld, Fraction(-g * (g - 1), 2))
    diag = b_tau_rho(fld, fld.identity, fld.identity)
    corrected = ClassFunction.constant(fld, -comb(g, 2)) - diag * (g * (g - 1))
    return FullInPartialReport(residual, printed, corrected)


def nearby_pairs(types) -> list[tuple[CMType, CMType]]:
    """Ordered pairs of CM-types differing in exactly one embedding."""
    out = []
    for T in types:
        fld = T.field
        for t in sorted(T.members):
            other = CMType(fld, (T.members - {t}) | {fld.mul(fld.conj, t)})
            out.append((T, other))
    return out


def nearby_taus(Phi1: CMType, Phi2: CMType) -> tuple[GroupElement, GroupElement]:
    g = Phi1.field.g
    if Phi1.field != Phi2.field or len(Phi1.members & Phi2.members) != g - 1:
        raise NotNearby("CM-types must share exactly g - 1 embeddings")
    (t1,) = Phi1.members - Phi2.members
    (t2,) = Phi2.members - Phi1.members
    return t1, t2


def nearby_case_function(fld: GaloisCMField) -> ClassFunction:
    """2 at the identity, 0 at c, 1 elsewhere."""
    return ClassFunction.from_callable(
        fld, lambda x: 2 if x == fld.identity else (0 if x == fld.conj else 1)
    )


@dataclass(frozen=True)
class NearbyReport:
    case_residual: ClassFunction
    induced_residual: ClassFunction

    @property
    def ok(self) -> bool:
        return self.case_residual.is_zero() and self.induced_residual.is_zero()


def verify_nearby_sum(
    Phi1: CMType,
    Phi2: CMType,
    tau1: GroupElement | None = None,
    tau2: GroupElement | None = None,
) -> NearbyReport:
    t1, t2 = nearby_taus(Phi1, Phi2)
    if (tau1 is not None and Phi1.field.canon(tau1) != t1) or (
        tau2 is not None and Phi2.field.canon(tau2) != t2
    ):
        raise NotNearby("tau_i must be the embedding where the types differ")
    fld = Phi1.field
    total = a_phi_tau(Phi1, t1) + a_phi_tau(Phi2, t2)
    induced = 1 + induce_sign_from_conjugation(fld) * Fraction(1, fld.g)
    return NearbyReport(total - nearby_case_function(fld), total - induced)


@dataclass(frozen=True)
class AverageReport:
    normalized: ClassFunction
    unnormalized: ClassFunction


def verify_average_identity(fld: GaloisCMField, table: TypeTable | None = None) -> AverageReport:
    """Compare the CM-type sum of A_full with g/2 + g b_{tau,tau}, with and without 1/2^g."""
    table = table or TypeTable(fld)
    g = fld.g
    target = Fraction(g, 2) + b_tau_rho(fld, fld.identity, fld.identity) * g
    return AverageReport(table.total * Fraction(1, 2 ** g) - target, table.total - target)


def verify_b_decomposition(phi: PartialCMType) -> ClassFunction:
    """A_partial(phi) - (|phi|/2 + sum of b_{s,t} over ordered s, t in phi); zero when it holds."""
    fld = phi.field
    acc = ClassFunction.constant(fld, Fraction(len(phi), 2))
    for s in phi.members:
        for t in phi.members:
            acc = acc + b_tau_rho(fld, s, t)
    return A_partial(phi) - acc


def verify_diagonal_b(fld: GaloisCMField) -> ClassFunction:
    """b_{tau,tau} - (1/2g) Ind; zero iff the identity holds for every tau."""
    ind = induce_sign_from_conjugation(fld) * Fraction(1, 2 * fld.g)
    first = b_tau_rho(fld, fld.identity, fld.identity)
    for t in fld.elements:
        if b_tau_rho(fld, t, t) != first:
            return b_tau_rho(fld, t, t) - ind
    return first - ind
