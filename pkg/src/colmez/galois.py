"""Abelian CM fields as subfields of Q(zeta_n).

A field ``E`` is the fixed field of a subgroup ``H`` of (Z/n)^x, so
Gal(E/Q) = (Z/n)^x / H.  Embeddings of ``E`` are identified with group
elements (the identity embedding with 1), each element is represented by the
least positive integer in its coset, and complex conjugation is the coset of -1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations

from .characters import DirichletCharacter, characters_mod, kronecker_character
from .cyclotomic import Cyclotomic
from .errors import BadGenerator, BadModulus, ForeignElement, NotCM

GroupElement = int


def subgroup_closure(n: int, gens) -> frozenset[int]:
    elems = {1 % n}
    frontier = [1 % n]
    gens = [g % n for g in gens]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = x * g % n
            if y not in elems:
                elems.add(y)
                frontier.append(y)
    return frozenset(elems)


@dataclass(frozen=True)
class GaloisCMField:
    modulus: int
    generators: tuple[int, ...]
    kernel: frozenset[int] = field(repr=False)

    @cached_property
    def _canon_map(self) -> dict[int, GroupElement]:
        """Residue mod n -> least positive representative of its coset."""
        n = self.modulus
        out: dict[int, GroupElement] = {}
        for a in range(1, n + 1):
            if a % n in out or math.gcd(a, n) != 1:
                continue
            rep = min((a * h) % n or n for h in self.kernel)
            for h in self.kernel:
                out[(a * h) % n] = rep
        return out

    @cached_property
    def elements(self) -> tuple[GroupElement, ...]:
        return tuple(sorted(set(self._canon_map.values())))

    @cached_property
    def _index(self) -> dict[int, int]:
        return {x: i for i, x in enumerate(self.elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def degree(self) -> int:
        return self.order

    @property
    def g(self) -> int:
        return self.order // 2

    @cached_property
    def conj(self) -> GroupElement:
        return self.canon(self.modulus - 1)

    @property
    def identity(self) -> GroupElement:
        return self.canon(1)

    @cached_property
    def real_kernel(self) -> frozenset[int]:
        return subgroup_closure(self.modulus, list(self.kernel) + [self.modulus - 1])

    @property
    def label(self) -> str:
        if not self.generators:
            return str(self.modulus)
        return f"{self.modulus}:{','.join(str(g) for g in self.generators)}"

    # group arithmetic
    def canon(self, a: int) -> GroupElement:
        try:
            return self._canon_map[a % self.modulus]
        except KeyError:
            raise ForeignElement(f"{a} is not a unit mod {self.modulus}") from None

    def coset(self, a: int) -> frozenset[int]:
        a = self.canon(a)
        return frozenset(a * h % self.modulus for h in self.kernel)

    def mul(self, a: GroupElement, b: GroupElement) -> GroupElement:
        # a non-unit factor makes the product a non-unit, which canon rejects
        return self.canon(a * b)

    def inv(self, a: GroupElement) -> GroupElement:
        self.check(a)
        return self.canon(pow(a, -1, self.modulus))

    def check(self, a: GroupElement) -> None:
        if math.gcd(a, self.modulus) != 1:
            raise ForeignElement(f"{a} is not a unit mod {self.modulus}")

    def index(self, a: GroupElement) -> int:
        return self._index[self.canon(a)]

    def element_order(self, a: GroupElement) -> int:
        k, x = 1, self.canon(a)
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
        return k

    @cached_property
    def exponent(self) -> int:
        e = 1
        for x in self.elements:
            e = math.lcm(e, self.element_order(x))
        return e

    def pair(self, a: GroupElement) -> GroupElement:
        """Representative of the class of ``a`` in G/<c> (a restriction to F)."""
        return min(self.canon(a), self.mul(a, self.conj))

    @cached_property
    def real_places(self) -> tuple[GroupElement, ...]:
        return tuple(sorted({self.pair(x) for x in self.elements}))

    # characters
    @cached_property
    def characters(self) -> tuple[DirichletCharacter, ...]:
        """Characters of G, i.e. Dirichlet characters mod n trivial on the kernel."""
        return tuple(
            chi for chi in characters_mod(self.modulus)
            if all(chi.exponent(h) == 0 for h in self.kernel)
        )

    def odd_characters(self) -> tuple[DirichletCharacter, ...]:
        return tuple(chi for chi in self.characters if chi.is_odd)

    def even_characters(self) -> tuple[DirichletCharacter, ...]:
        return tuple(chi for chi in self.characters if not chi.is_odd)

    @cached_property
    def conductor(self) -> int:
        f = 1
        for chi in self.characters:
            f = math.lcm(f, chi.conductor)
        return f

    # cyclotomic side
    def act(self, a: GroupElement, x: Cyclotomic) -> Cyclotomic:
        """Apply the automorphism represented by ``a`` to an element of Q(zeta_n)."""
        return x.galois(a)

    def gauss_period(self, a: int = 1) -> Cyclotomic:
        """Trace from Q(zeta_n) to E of zeta_n**a, up to the factor |H|."""
        return Cyclotomic.from_powers(self.modulus, {a * h: 1 for h in self.kernel})

    def contains(self, x: Cyclotomic) -> bool:
        return all(x.galois(h) == x for h in self.kernel)

    def __repr__(self) -> str:
        return f"GaloisCMField({self.label}, 2g={self.order})"


def build_field(n: int, generators=()) -> GaloisCMField:
    """Fixed field of the subgroup generated by ``generators`` inside Q(zeta_n)."""
    if not isinstance(n, int) or n < 3:
        raise BadModulus(f"modulus must be an integer >= 3, got {n!r}")
    gens = tuple(int(g) for g in generators)
    for gen in gens:
        if math.gcd(gen, n) != 1:
            raise BadGenerator(f"generator {gen} is not coprime to {n}")
    kernel = subgroup_closure(n, gens)
    if (n - 1) in kernel:
        raise NotCM(f"-1 lies in the subgroup generated by {list(gens)} mod {n}")
    return GaloisCMField(n, gens, kernel)


def parse_field_spec(spec: str) -> GaloisCMField:
    """Parse ``n`` or ``n:g1,g2,...``."""
    text = spec.strip()
    if ":" in text:
        head, tail = text.split(":", 1)
        gens = [int(t) for t in tail.split(",") if t.strip()]
    else:
        head, gens = text, []
    try:
        n = int(head)
    except ValueError:
        raise BadModulus(f"bad field spec {spec!r}") from None
    return build_field(n, gens)


def quadratic_field(d: int) -> GaloisCMField:
    """Imaginary quadratic field of fundamental discriminant d < 0 inside Q(zeta_|d|)."""
    if d >= 0:
        raise NotCM("quadratic field must be imaginary")
    chi = kronecker_character(d)
    m = abs(d)
    ker = sorted(a for a in range(1, m) if math.gcd(a, m) == 1 and chi.exponent(a) == 0)
    return build_field(m, _minimal_generators(m, ker))


def _minimal_generators(n: int, subgroup) -> list[int]:
    target = frozenset(subgroup)
    gens: list[int] = []
    current = subgroup_closure(n, [])
    for a in sorted(target):
        if a not in current:
            gens.append(a)
            current = subgroup_closure(n, gens)
        if current == target:
            break
    return gens


@lru_cache(maxsize=None)
def _subgroups(n: int) -> tuple[frozenset[int], ...]:
    units = [a for a in range(1, n) if math.gcd(a, n) == 1] or [1 % n]
    found = {subgroup_closure(n, [a]) for a in units}
    changed = True
    while changed:
        changed = False
        for a, b in combinations(list(found), 2):
            j = subgroup_closure(n, list(a | b))
            if j not in found:
                found.add(j)
                changed = True
    return tuple(sorted(found, key=lambda s: (len(s), sorted(s))))


def cm_fields(max_conductor: int) -> list[GaloisCMField]:
    """Every abelian CM field of conductor <= max_conductor, each once."""
    out = []
    for n in range(3, max_conductor + 1):
        if n % 4 == 2:
            continue
        for sub in _subgroups(n):
            if (n - 1) in sub:
                continue
            fld = build_field(n, _minimal_generators(n, sub))
            if fld.conductor == n:
                out.append(fld)
    return out
