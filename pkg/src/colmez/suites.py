"""Verification suites behind ``colmez verify``.

Each suite maps a field to a list of :class:`Check` records.  Exact checks carry
rational residuals and pass only at zero; numeric checks carry a float residual
and a tolerance; report checks record a value and never fail.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .classfun import ClassFunction, conj_average, dual, in_cm_space
from .cmtypes import (
    A_full,
    A_partial,
    TypeTable,
    b_tau_rho,
    cm_type,
    enumerate_cm_types,
    enumerate_partial_types,
    nearby_pairs,
    orbit_average,
    partial_cm_type,
    verify_average_identity,
    verify_b_decomposition,
    verify_diagonal_b,
    verify_full_in_partial,
    verify_nearby_sum,
    verify_partial_in_full,
)
from .conductors import (
    default_generator,
    discriminant,
    generator_discriminant,
    index_primes,
    mu_art_p,
    mu_art_p_characters,
    mu_art_p_local,
    ramified_primes,
    verify_discriminant_formula,
)
from .errors import NonMonogenic
from .galois import GaloisCMField, build_field, cm_fields, parse_field_spec
from .heights import (
    admissible_pairs,
    comparison_correction,
    conjectural_ht,
    height_full,
    height_partial,
    height_partial_explicit,
    nearby_conductor_identity,
    verify_averaged,
    verify_example_family,
    verify_full_partial_heights,
)
from .lfunctions import (
    LOG_2PI,
    class_number,
    hurwitz_derivative_oracle,
    hurwitz_zeta_oracle,
    l_at_zero,
    l_at_zero_exact,
    l_prime_at_zero,
    l_prime_at_zero_oracle,
    log_derivative_at_one,
    log_derivative_at_one_direct,
    units_in_order,
    z_breakdown,
    z_functional,
    zeta_hasse,
)

SUITES = ("identities", "conductors", "analytic", "heights")
DEFAULT_FIELDS = ("4", "3", "5", "20:9", "7", "8", "12")
FAMILY_PRIMES = (5, 13, 17, 29, 37)
ORACLE_TOLERANCE = 1e-6


@dataclass(frozen=True)
class Check:
    id: str
    kind: str  # exact | numeric | report
    residual: object  # Fraction for exact, float otherwise
    tolerance: float | None
    passed: bool
    anchor: str

    def as_dict(self) -> dict:
        res = self.residual
        if isinstance(res, Fraction):
            res = str(res)
        return {
            "id": self.id,
            "kind": self.kind,
            "residual": res,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "anchor": self.anchor,
        }


def exact(cid: str, residual, anchor: str) -> Check:
    if isinstance(residual, ClassFunction):
        residual = residual.max_abs()
    residual = Fraction(residual)
    return Check(cid, "exact", residual, None, residual == 0, anchor)


def numeric(cid: str, residual: float, tol: float, anchor: str) -> Check:
    residual = float(residual)
    return Check(cid, "numeric", residual, tol, abs(residual) < tol, anchor)


def report(cid: str, value, anchor: str) -> Check:
    if isinstance(value, ClassFunction):
        value = value.max_abs()
    return Check(cid, "report", value, None, True, anchor)


@dataclass(frozen=True)
class Options:
    convention: str = "paper"
    tolerance: float = 1e-9
    cache: object = None


# --- identities --------------------------------------------------------------------------


def identities_suite(fld: GaloisCMField, opts: Options) -> list[Check]:
    lab = fld.label
    table = TypeTable(fld)
    partials = enumerate_partial_types(fld, min(2, fld.g))
    out = []

    def worst(residuals):
        return max((r.max_abs() for r in residuals), default=Fraction(0))

    out.append(exact(f"identities/{lab}/partial-in-full",
                     worst(verify_partial_in_full(p, table) for p in partials),
                     "partial type as an unrestricted sum of CM-types"))
    cm_gaps = []
    for p in partials:
        ok, const = in_cm_space(A_partial(p))
        cm_gaps.append(Fraction(1) if not ok else abs(const - len(p)))
    out.append(exact(f"identities/{lab}/partial-cm-constant", max(cm_gaps, default=0),
                     "A_phi(x) + A_phi(cx) = |phi|"))
    out.append(exact(f"identities/{lab}/b-decomposition",
                     worst(verify_b_decomposition(p) for p in partials),
                     "A_phi = |phi|/2 + sum of b_{s,t}, diagonal included"))
    out.append(exact(f"identities/{lab}/partial-self-dual",
                     worst(dual(A_partial(p)) - A_partial(p) for p in partials),
                     "A_phi is self-dual"))
    out.append(exact(f"identities/{lab}/diagonal-b-induced", verify_diagonal_b(fld),
                     "b_{tau,tau} = (1/2g) Ind of the sign character of <c>"))
    out.append(exact(f"identities/{lab}/full-self-dual",
                     worst(dual(f) - f for f in table.functions), "A_Phi is self-dual"))
    out.append(exact(f"identities/{lab}/orbit-average",
                     worst(conj_average(A_full(T)) - orbit_average(T) for T in table.types),
                     "A_Phi^0 equals the Galois-orbit average"))
    nearby_case, nearby_ind = [], []
    for T1, T2 in nearby_pairs(table.types):
        rep = verify_nearby_sum(T1, T2)
        nearby_case.append(rep.case_residual)
        nearby_ind.append(rep.induced_residual)
    out.append(exact(f"identities/{lab}/nearby-case-function", worst(nearby_case),
                     "nearby types: a_1 + a_2 is 2 at 1, 0 at c, 1 elsewhere"))
    out.append(exact(f"identities/{lab}/nearby-induced", worst(nearby_ind),
                     "nearby types: a_1 + a_2 = 1 + (1/g) Ind"))
    avg = verify_average_identity(fld, table)
    out.append(exact(f"identities/{lab}/average-normalized", avg.normalized,
                     "(1/2^g) sum_Phi A_Phi = g/2 + g b_{tau,tau}"))
    out.append(report(f"identities/{lab}/average-unnormalized", avg.unnormalized,
                      "same sum without the 1/2^g factor"))
    fip = [verify_full_in_partial(T) for T in table.types]
    out.append(exact(f"identities/{lab}/full-in-partial-corrected",
                     worst(r.residual - r.corrected for r in fip),
                     "A_Phi - sum over pairs = -C(g,2) - g(g-1) b_{tau,tau}"))
    out.append(report(f"identities/{lab}/full-in-partial-printed-gap",
                      worst(r.printed_gap for r in fip),
                      "A_Phi - sum over pairs against the constant -g(g-1)/2"))
    return out


# --- conductors ---------------------------------------------------------------------------


def conductors_suite(fld: GaloisCMField, opts: Options) -> list[Check]:
    lab = fld.label
    out = []
    alpha = default_generator(fld)
    try:
        bad = set(index_primes(fld, alpha))
    except NonMonogenic:
        bad = set(ramified_primes(fld))
    if not bad:
        out.append(exact(f"conductors/{lab}/conductor-discriminant",
                         generator_discriminant(fld, alpha) - discriminant(fld),
                         "product of conductors equals the discriminant"))
    else:
        out.append(report(f"conductors/{lab}/index-primes", len(bad),
                          "default generator is not monogenic at these primes"))
    gap_chars, gap_local, skipped = Fraction(0), Fraction(0), 0
    for y in fld.elements:
        ind = ClassFunction.indicator(fld, y)
        for p in ramified_primes(fld):
            mu = mu_art_p(ind, p)
            gap_chars = max(gap_chars, abs(mu - mu_art_p_characters(ind, p)))
            if p in bad:
                skipped += 1
                continue
            gap_local = max(gap_local, abs(mu - mu_art_p_local(fld, y, p, alpha)))
    out.append(exact(f"conductors/{lab}/mu-character-route", gap_chars,
                     "mu_Art,p via regrouping equals the character sum"))
    out.append(exact(f"conductors/{lab}/mu-valuation-route", gap_local,
                     "mu_Art,p via character conductors equals the valuation route"))
    if skipped:
        out.append(report(f"conductors/{lab}/mu-valuation-skipped", skipped,
                          "cases at primes dividing the index of Z[alpha]"))
    singles, pairs = Fraction(0), []
    for phi in enumerate_partial_types(fld, min(2, fld.g)):
        try:
            rep = verify_discriminant_formula(phi, alpha)
        except NonMonogenic:
            continue
        worst_row = max((abs(r.residual_preimage) for r in rep.rows), default=Fraction(0))
        if rep.asserted:
            singles = max(singles, worst_row)
        else:
            pairs.append(worst_row)
    out.append(exact(f"conductors/{lab}/discriminant-formula-singletons", singles,
                     "mu_Art(A_phi) from root discriminants, |phi| = 1, preimage reading"))
    if pairs:
        out.append(report(f"conductors/{lab}/discriminant-formula-pairs", max(pairs),
                          "same expression for |phi| = 2 (largest residual)"))
    types = enumerate_cm_types(fld)
    gap = Fraction(0)
    for T1, T2 in nearby_pairs(types):
        for lhs, rhs in nearby_conductor_identity(T1, T2).values():
            gap = max(gap, abs(lhs - rhs))
    out.append(exact(f"conductors/{lab}/nearby-conductor", gap,
                     "mu_Art(a_1 + a_2) = (1/g) log |d_E/d_F| for nearby types"))
    return out


# --- analytic ----------------------------------------------------------------------------


def analytic_suite(fld: GaloisCMField, opts: Options) -> list[Check]:
    lab = fld.label
    tol = opts.tolerance
    out = []
    oracle_gap, conj_gap, one_gap, cn_gap = 0.0, 0.0, 0.0, Fraction(0)
    seen = set()
    for chi in fld.odd_characters():
        prim = chi.primitive
        if (prim.modulus, prim.index) in seen:
            continue
        seen.add((prim.modulus, prim.index))
        oracle_gap = max(oracle_gap, abs(complex(l_prime_at_zero(prim)) - l_prime_at_zero_oracle(prim)))
        conj_gap = max(
            conj_gap,
            abs(complex(l_prime_at_zero(prim.conjugate())) - complex(l_prime_at_zero(prim)).conjugate()),
        )
        one_gap = max(one_gap, abs(complex(log_derivative_at_one(prim)) - complex(log_derivative_at_one_direct(prim))))
        if prim.order == 2:
            d = prim.modulus if prim.exponent(-1) == 0 else -prim.modulus
            cn_gap = max(cn_gap, abs(l_at_zero(prim) - Fraction(2 * class_number(d), units_in_order(d))))
        else:
            exact_gap = l_at_zero_exact(prim.conjugate()) - l_at_zero_exact(prim).conjugate()
            cn_gap = max(cn_gap, Fraction(0 if exact_gap.is_zero() else 1))
    out.append(numeric(f"analytic/{lab}/lprime-hurwitz-oracle", oracle_gap, ORACLE_TOLERANCE,
                       "L'(chi,0) by log Gamma against Euler-Maclaurin differences"))
    out.append(numeric(f"analytic/{lab}/lprime-conjugation", conj_gap, tol,
                       "L'(conj chi, 0) = conj L'(chi, 0)"))
    out.append(numeric(f"analytic/{lab}/log-derivative-at-one", one_gap, ORACLE_TOLERANCE,
                       "functional-equation bridge against direct Hurwitz evaluation at s = 1"))
    out.append(exact(f"analytic/{lab}/l-at-zero-exact", cn_gap,
                     "L(chi,0) = 2h/w for quadratic chi; conjugation symmetry otherwise"))
    imag = 0.0
    for T in enumerate_cm_types(fld):
        zb = z_breakdown(A_full(T), opts.convention, opts.cache)
        total = sum((c.value for c in zb.contributions), 0j)
        imag = max(imag, abs(total.imag))
    out.append(numeric(f"analytic/{lab}/z-real", imag, tol, "Z of a rational class function is real"))
    return out


def analytic_global(opts: Options) -> list[Check]:
    out = []
    gap = max(abs(hurwitz_zeta_oracle(0.0, x) - (0.5 - x)) for x in (0.25, 0.5, 1.0))
    out.append(numeric("analytic/hurwitz-at-zero", gap, opts.tolerance, "zeta(0, x) = 1/2 - x"))
    target = math.lgamma(0.5) - 0.5 * LOG_2PI
    out.append(numeric("analytic/hurwitz-derivative-half", hurwitz_derivative_oracle(0.5) - target,
                       opts.tolerance, "zeta'(0, 1/2) = log Gamma(1/2) - (1/2) log 2 pi"))
    out.append(numeric("analytic/riemann-zeta-two-routes", hurwitz_zeta_oracle(-0.5, 1.0) - zeta_hasse(-0.5),
                       opts.tolerance, "zeta(-1/2): Euler-Maclaurin against Hasse's series"))
    return out


# --- heights -----------------------------------------------------------------------------


def heights_suite(fld: GaloisCMField, opts: Options) -> list[Check]:
    lab, tol, conv, cache = fld.label, opts.tolerance, opts.convention, opts.cache
    out = []
    avg = verify_averaged(fld, conv, cache)
    out.append(numeric(f"heights/{lab}/averaged-formula", avg.residual, tol,
                       "average of h(Phi) over CM-types"))
    gap = 0.0
    for s, t in admissible_pairs(fld):
        phi = partial_cm_type(fld, [s, t])
        a = height_partial(phi, conv, cache).total
        b = height_partial_explicit(fld, s, t, conv, cache).total
        c = height_partial_explicit(fld, t, s, conv, cache).total
        gap = max(gap, abs(a - b), abs(b - c))
    out.append(numeric(f"heights/{lab}/explicit-partial", gap, tol,
                       "explicit character formula for h({sigma,tau})"))
    types = enumerate_cm_types(fld)
    sym = 0.0
    for T in types:
        h = height_full(T, conv, cache).total
        sym = max(sym, abs(h - height_full(T.conjugate(), conv, cache).total))
        for y in fld.elements:
            sym = max(sym, abs(h - height_full(T.translate(y), conv, cache).total))
    out.append(numeric(f"heights/{lab}/full-invariance", sym, tol, "h(Phi) is invariant under G and c"))
    delta = 0.0
    for T in types:
        for t in T.members:
            d1 = comparison_correction(T, t)
            d2 = comparison_correction(T.conjugate(), fld.mul(fld.conj, t))
            delta = max(delta, abs(d1 - d2))
    out.append(numeric(f"heights/{lab}/correction-conjugation", delta, tol,
                       "comparison correction is conjugation symmetric"))
    b = b_tau_rho(fld, fld.identity, fld.identity)
    out.append(numeric(f"heights/{lab}/diagonal-height", conjectural_ht(b, conv, cache) + z_functional(b, conv, cache),
                       tol, "ht(b_{tau,tau}) = -Z(b_{tau,tau})"))
    if fld.g >= 2:
        reps = [verify_full_partial_heights(T, conv, cache) for T in types]
        out.append(numeric(f"heights/{lab}/full-partial-corrected",
                           max(abs(r.corrected_residual) for r in reps), tol,
                           "h(Phi) against pair heights with the b_{tau,tau} correction"))
        out.append(report(f"heights/{lab}/full-partial-printed", reps[0].printed_residual,
                          "h(Phi) against pair heights with constant C(g,2) log 2 pi"))
        gap = max(abs(r.printed_residual - fld.g * (fld.g - 1) * r.diag_height) for r in reps)
        out.append(numeric(f"heights/{lab}/full-partial-printed-explained", gap, tol,
                           "printed residual = g(g-1) (ht(b) - mu_Art(b)/2)"))
    return out


def heights_global(opts: Options) -> list[Check]:
    conv, cache, tol = opts.convention, opts.cache, opts.tolerance
    out = []
    table = verify_example_family(FAMILY_PRIMES, conv, cache)
    out.append(numeric("heights/family-delta-spread", table.spread, 1e-8,
                       "gap between conjectural height and the functional-equation expression is constant"))
    out.append(report("heights/family-delta", table.rows[0].delta, "value of the constant gap"))
    worst = max(abs(r.h_minus_quarter_log_d) for r in table.rows)
    out.append(numeric("heights/family-dominant-term", worst, 2.0, "h - (1/4) log d stays bounded"))
    q = build_field(4)
    e = build_field(20, [9])
    induced = height_full(cm_type(e, [1, 13]), conv, cache).total
    base = height_full(cm_type(q, [1]), conv, cache).total
    out.append(numeric("heights/induced-type", induced - 2 * base, tol,
                       "type induced from Q(i) to Q(i, sqrt5) doubles the height"))
    return out


# --- runner ------------------------------------------------------------------------------

FIELD_SUITES = {
    "identities": identities_suite,
    "conductors": conductors_suite,
    "analytic": analytic_suite,
    "heights": heights_suite,
}
GLOBAL_SUITES = {"analytic": analytic_global, "heights": heights_global}


def select_fields(specs=None, conductor_max: int | None = None, max_g: int = 10):
    """Resolve the field list; returns (fields, skipped labels)."""
    if specs:
        fields = [parse_field_spec(s) for s in specs]
    elif conductor_max is not None:
        fields = cm_fields(conductor_max)
    else:
        fields = [parse_field_spec(s) for s in DEFAULT_FIELDS]
    kept = [f for f in fields if f.g <= max_g]
    skipped = [f.label for f in fields if f.g > max_g]
    return kept, skipped


def run_checks(suite: str, fields, opts: Options, jobs: int = 1) -> list[Check]:
    names = SUITES if suite == "all" else (suite,)
    tasks = []
    for name in names:
        for fld in fields:
            tasks.append((FIELD_SUITES[name], fld))
        if name in GLOBAL_SUITES:
            tasks.append((GLOBAL_SUITES[name], None))

    def run(task):
        fn, fld = task
        return fn(opts) if fld is None else fn(fld, opts)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run, tasks))
    else:
        results = [run(t) for t in tasks]
    return [c for chunk in results for c in chunk]


def exit_code(checks) -> int:
    if any(c.kind == "exact" and not c.passed for c in checks):
        return 1
    if any(c.kind == "numeric" and not c.passed for c in checks):
        return 2
    return 0
