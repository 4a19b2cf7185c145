# algebra/graded.py

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple

from utils.exceptions import DegreeBookkeepingError, InputValidationError


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int

    @property
    def odd(self) -> bool:
        return self.degree % 2 == 1


@dataclass(frozen=True)
class GradedSpace:
    """Finite list of named generators with cohomological degrees; parity is degree mod 2."""
    generators: Tuple[Generator, ...]

    def __post_init__(self):
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise InputValidationError("Generator names must be unique", details=str(names))

    @classmethod
    def of(cls, pairs: Iterable[Tuple[str, int]]) -> "GradedSpace":
        return cls(tuple(Generator(str(name), int(degree)) for name, degree in pairs))

    def __len__(self) -> int:
        return len(self.generators)

    def __getitem__(self, i: int) -> Generator:
        return self.generators[i]

    def index(self, name: str) -> int:
        for i, g in enumerate(self.generators):
            if g.name == name:
                return i
        raise InputValidationError(f"Unknown generator '{name}'")

    def degrees(self) -> Tuple[int, ...]:
        return tuple(g.degree for g in self.generators)

    def shifted(self, by: int) -> "GradedSpace":
        """Moves every generator's degree by `by`."""
        return GradedSpace(tuple(Generator(g.name, g.degree + by) for g in self.generators))

    def dual(self) -> "GradedSpace":
        return GradedSpace(tuple(Generator(f"{g.name}^", -g.degree) for g in self.generators))


@dataclass(frozen=True, order=True)
class Monomial:
    """Exponent vector over a GradedSpace; odd generators appear at most once."""
    exponents: Tuple[int, ...]

    @classmethod
    def one(cls, space: GradedSpace) -> "Monomial":
        return cls((0,) * len(space))

    @classmethod
    def from_word(cls, space: GradedSpace, word: Sequence[int]) -> Tuple[int, Optional["Monomial"]]:
        """
        Normalizes a product of generators (given by index) to canonical order.

        Returns (sign, monomial); the monomial is None when an odd generator repeats.
        """
        letters = list(word)
        sign = 1
        for i in range(len(letters)):
            for j in range(len(letters) - 1 - i):
                a, b = letters[j], letters[j + 1]
                if a > b:
                    letters[j], letters[j + 1] = b, a
                    if space[a].odd and space[b].odd:
                        sign = -sign
        exponents = [0] * len(space)
        for letter in letters:
            exponents[letter] += 1
            if space[letter].odd and exponents[letter] > 1:
                return 0, None
        return sign, cls(tuple(exponents))

    def degree(self, space: GradedSpace) -> int:
        return sum(e * g.degree for e, g in zip(self.exponents, space.generators))

    @property
    def length(self) -> int:
        return sum(self.exponents)

    def odd_indices(self, space: GradedSpace) -> Tuple[int, ...]:
        return tuple(i for i, e in enumerate(self.exponents) if e and space[i].odd)

    def label(self, space: GradedSpace) -> str:
        parts = []
        for e, g in zip(self.exponents, space.generators):
            if e == 1:
                parts.append(g.name)
            elif e > 1:
                parts.append(f"{g.name}^{e}")
        return "*".join(parts) or "1"


def monomial_product(space: GradedSpace, m1: Monomial, m2: Monomial) -> Tuple[int, Optional[Monomial]]:
    """Product of canonical monomials with the Koszul sign of moving m2's odd letters into place."""
    odd1 = m1.odd_indices(space)
    odd2 = m2.odd_indices(space)
    if set(odd1) & set(odd2):
        return 0, None
    crossings = sum(1 for i in odd1 for j in odd2 if i > j)
    sign = -1 if crossings % 2 else 1
    return sign, Monomial(tuple(a + b for a, b in zip(m1.exponents, m2.exponents)))


class AlgebraElement:
    """Rational combination of monomials in the free graded-commutative algebra on a space."""

    def __init__(self, space: GradedSpace, terms: Mapping[Monomial, Fraction] = None):
        self.space = space
        clean: Dict[Monomial, Fraction] = {}
        for m, c in (terms or {}).items():
            if len(m.exponents) != len(space):
                raise ValueError("Monomial does not match the generator count")
            c = Fraction(c)
            if c:
                clean[m] = clean.get(m, Fraction(0)) + c
        self.terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def one(cls, space: GradedSpace) -> "AlgebraElement":
        return cls(space, {Monomial.one(space): 1})

    @classmethod
    def generator(cls, space: GradedSpace, name: str, coefficient=1) -> "AlgebraElement":
        i = space.index(name)
        exponents = [0] * len(space)
        exponents[i] = 1
        return cls(space, {Monomial(tuple(exponents)): coefficient})

    @classmethod
    def monomial(cls, space: GradedSpace, m: Monomial, coefficient=1) -> "AlgebraElement":
        return cls(space, {m: coefficient})

    def __iter__(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(sorted(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def _check_space(self, other: "AlgebraElement"):
        if other.space != self.space:
            raise ValueError("Elements live over different generator spaces")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check_space(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, Fraction(0)) + c
        return AlgebraElement(self.space, terms)

    def scale(self, factor) -> "AlgebraElement":
        factor = Fraction(factor)
        return AlgebraElement(self.space, {m: c * factor for m, c in self.terms.items()})

    def __neg__(self) -> "AlgebraElement":
        return self.scale(-1)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        return multiply(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.space == other.space and self.terms == other.terms

    def homogeneous_components(self) -> Dict[int, "AlgebraElement"]:
        parts: Dict[int, Dict[Monomial, Fraction]] = {}
        for m, c in self.terms.items():
            parts.setdefault(m.degree(self.space), {})[m] = c
        return {d: AlgebraElement(self.space, t) for d, t in sorted(parts.items())}

    @property
    def degree(self) -> Optional[int]:
        """Cohomological degree of a homogeneous element; None for zero."""
        degrees = {m.degree(self.space) for m in self.terms}
        if not degrees:
            return None
        if len(degrees) > 1:
            raise DegreeBookkeepingError("Element is not homogeneous", details=f"degrees {sorted(degrees)}")
        return degrees.pop()

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*{m.label(self.space)}" for m, c in self)
        return f"AlgebraElement({body or '0'})"


def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    x._check_space(y)
    terms: Dict[Monomial, Fraction] = {}
    for m1, a in x.terms.items():
        for m2, b in y.terms.items():
            sign, m = monomial_product(x.space, m1, m2)
            if m is not None:
                terms[m] = terms.get(m, Fraction(0)) + sign * a * b
    return AlgebraElement(x.space, terms)
