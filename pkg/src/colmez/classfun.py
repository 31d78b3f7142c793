"""Exact-rational class functions on Gal(E/Q) and their character expansions."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Callable, Mapping

from .characters import DirichletCharacter
from .cyclotomic import Cyclotomic
from .galois import GaloisCMField, GroupElement


@dataclass(frozen=True, eq=False)
class ClassFunction:
    """Rational-valued function on G; ``values[i]`` is the value at ``field.elements[i]``."""

    field: GaloisCMField
    values: tuple[Fraction, ...]

    @classmethod
    def from_callable(cls, fld: GaloisCMField, fn: Callable[[GroupElement], object]) -> "ClassFunction":
        return cls(fld, tuple(Fraction(fn(x)) for x in fld.elements))

    @classmethod
    def from_mapping(cls, fld: GaloisCMField, values: Mapping[int, object]) -> "ClassFunction":
        vals = [Fraction(0)] * fld.order
        for x, v in values.items():
            vals[fld.index(x)] += Fraction(v)
        return cls(fld, tuple(vals))

    @classmethod
    def constant(cls, fld: GaloisCMField, c=1) -> "ClassFunction":
        return cls(fld, (Fraction(c),) * fld.order)

    @classmethod
    def indicator(cls, fld: GaloisCMField, y: GroupElement) -> "ClassFunction":
        return cls.from_mapping(fld, {y: 1})

    @classmethod
    def zero(cls, fld: GaloisCMField) -> "ClassFunction":
        return cls.constant(fld, 0)

    def __call__(self, x: GroupElement) -> Fraction:
        return self.values[self.field.index(x)]

    def _same(self, other: "ClassFunction") -> None:
        if self.field is not other.field and self.field != other.field:
            raise ValueError("class functions live on different fields")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ClassFunction.constant(self.field, other)
        if not isinstance(other, ClassFunction):
            return NotImplemented
        self._same(other)
        return ClassFunction(self.field, tuple(a + b for a, b in zip(self.values, other.values)))

    __radd__ = __add__

    def __neg__(self):
        return ClassFunction(self.field, tuple(-a for a in self.values))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, k):
        if not isinstance(k, (int, Fraction)):
            return NotImplemented
        return ClassFunction(self.field, tuple(a * k for a in self.values))

    __rmul__ = __mul__

    def __truediv__(self, k):
        return self * (Fraction(1) / Fraction(k))

    def __eq__(self, other):
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return self.field == other.field and self.values == other.values

    def __hash__(self):
        return hash((self.field.label, self.values))

    def is_zero(self) -> bool:
        return not any(self.values)

    def max_abs(self) -> Fraction:
        return max((abs(v) for v in self.values), default=Fraction(0))

    def as_dict(self) -> dict[int, Fraction]:
        return dict(zip(self.field.elements, self.values))

    def __repr__(self):
        body = ", ".join(f"{x}: {v}" for x, v in zip(self.field.elements, self.values))
        return f"ClassFunction({self.field.label}; {body})"


def in_cm_space(f: ClassFunction) -> tuple[bool, Fraction | None]:
    """Whether f(x) + f(cx) is independent of x; returns the constant if so."""
    fld = f.field
    sums = {f(x) + f(fld.mul(fld.conj, x)) for x in fld.elements}
    if len(sums) == 1:
        return True, sums.pop()
    return False, None


def dual(f: ClassFunction) -> ClassFunction:
    fld = f.field
    return ClassFunction.from_callable(fld, lambda x: f(fld.inv(x)))


@lru_cache(maxsize=4096)
def conj_average(f: ClassFunction) -> ClassFunction:
    """Average of f over conjugation by every group element."""
    fld = f.field
    n = fld.order

    def avg(x):
        counts = Counter(fld.mul(fld.mul(h, x), fld.inv(h)) for h in fld.elements)
        return sum((f(y) * k for y, k in counts.items()), Fraction(0)) / n

    return ClassFunction.from_callable(fld, avg)


@lru_cache(maxsize=None)
def induce_sign_from_conjugation(fld: GaloisCMField) -> ClassFunction:
    """Induction to G of the sign character of the order-2 subgroup <c>."""
    sub = {fld.identity: 1, fld.conj: -1}

    def ind(x):
        total = 0
        for h in fld.elements:
            y = fld.mul(fld.mul(fld.inv(h), x), h)
            total += sub.get(y, 0)
        return Fraction(total, len(sub))

    return ClassFunction.from_callable(fld, ind)


@dataclass(frozen=True)
class CharacterDecomposition:
    """Multiplicities of a class function on the characters of G, exact in Q(zeta_e)."""

    field: GaloisCMField
    exponent: int
    multiplicities: tuple[Cyclotomic, ...]  # aligned with field.characters

    @property
    def characters(self) -> tuple[DirichletCharacter, ...]:
        return self.field.characters

    def items(self):
        return zip(self.field.characters, self.multiplicities)

    def nonzero(self):
        return [(chi, m) for chi, m in self.items() if not m.is_zero()]

    def as_complex(self) -> list[complex]:
        return [m.to_complex() for m in self.multiplicities]

    def multiplicity(self, chi: DirichletCharacter) -> Cyclotomic:
        return self.multiplicities[self.field.characters.index(chi)]

    def reconstruct(self) -> ClassFunction:
        """Sum of m_chi * chi, evaluated exactly; fails if a value is irrational."""
        fld, e = self.field, self.exponent
        vals = []
        for x in fld.elements:
            acc = Cyclotomic.scalar(e, 0)
            for chi, m in self.items():
                if m.is_zero():
                    continue
                acc = acc + m * chi.exact(x, e)
            vals.append(acc.as_rational())
        return ClassFunction(fld, tuple(vals))


def decompose(f: ClassFunction) -> CharacterDecomposition:
    """m_chi = (1/|G|) sum_x f(x) conj(chi(x)) for each character of G."""
    fld = f.field
    e = max(fld.exponent, 1)
    mults = []
    for chi in fld.characters:
        scale = e // chi.order
        powers: dict[int, Fraction] = {}
        for x, v in zip(fld.elements, f.values):
            if v:
                k = (-chi.exponent(x) * scale) % e
                powers[k] = powers.get(k, Fraction(0)) + v
        m = Cyclotomic.from_powers(e, powers) * Fraction(1, fld.order)
        mults.append(m)
    return CharacterDecomposition(fld, e, tuple(mults))
