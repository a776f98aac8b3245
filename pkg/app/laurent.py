"""Exact multivariate Laurent polynomials over the integers.

Values are immutable. Arithmetic shifts both operands into the ordinary
polynomial ring, lets sympy do the work over ZZ, and shifts the result back.
"""
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

import sympy as sp
from sympy import ZZ, Poly
from sympy.polys.polyerrors import ExactQuotientFailed

from app.errors import InvalidInput, NotDivisible, VariableCountMismatch

Exponent = Tuple[int, ...]
Monomial = Exponent


@lru_cache(maxsize=None)
def ring_generators(n: int) -> Tuple[sp.Symbol, ...]:
    """Symbols x1..xn"""
    return tuple(sp.symbols(f"x1:{n + 1}"))


class LaurentPoly:
    """Finite sum of integer multiples of monomials x^e, e in Z^n"""

    __slots__ = ("_n", "_terms")

    def __init__(self, n: int, terms: Mapping[Exponent, int] = None):
        if n < 1:
            raise InvalidInput("a Laurent polynomial needs at least one variable")
        normalized: Dict[Exponent, int] = {}
        for exponent, coeff in (terms or {}).items():
            exponent = tuple(int(e) for e in exponent)
            if len(exponent) != n:
                raise VariableCountMismatch(f"exponent {exponent} does not have {n} entries")
            coeff = int(coeff)
            if coeff:
                normalized[exponent] = coeff
        self._n = n
        self._terms = dict(sorted(normalized.items()))

    # construction helpers

    @classmethod
    def zero(cls, n: int) -> "LaurentPoly":
        return cls(n)

    @classmethod
    def constant(cls, n: int, value: int) -> "LaurentPoly":
        return cls(n, {(0,) * n: value})

    @classmethod
    def one(cls, n: int) -> "LaurentPoly":
        return cls.constant(n, 1)

    @classmethod
    def monomial(cls, n: int, exponent: Sequence[int], coeff: int = 1) -> "LaurentPoly":
        return cls(n, {tuple(exponent): coeff})

    @classmethod
    def variable(cls, n: int, i: int) -> "LaurentPoly":
        """The initial cluster variable x_{i+1}"""
        if not 0 <= i < n:
            raise InvalidInput(f"variable index {i} out of range for {n} variables")
        return cls.monomial(n, tuple(1 if k == i else 0 for k in range(n)))

    @classmethod
    def parse(cls, data: Iterable, n: int) -> "LaurentPoly":
        """Inverse of serialize()"""
        terms: Dict[Exponent, int] = {}
        for coeff, exponent in data:
            key = tuple(int(e) for e in exponent)
            if key in terms:
                raise InvalidInput(f"duplicate monomial {key} in serialized polynomial")
            terms[key] = int(coeff)
        return cls(n, terms)

    # accessors

    @property
    def n(self) -> int:
        return self._n

    @property
    def terms(self) -> Tuple[Tuple[Exponent, int], ...]:
        return tuple(self._terms.items())

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, exponent: Sequence[int]) -> int:
        return self._terms.get(tuple(exponent), 0)

    def min_exponents(self) -> Exponent:
        if self.is_zero:
            return (0,) * self._n
        return tuple(min(e[i] for e in self._terms) for i in range(self._n))

    def key(self) -> Tuple:
        """Canonical sort key; equal polynomials have equal keys"""
        return (self._n, tuple(self._terms.items()))

    def serialize(self) -> List[list]:
        """Sorted [coefficient-string, exponent-vector] pairs"""
        return [[str(c), list(e)] for e, c in self._terms.items()]

    # sympy bridge

    def _poly(self, shift: Exponent) -> Poly:
        shifted = {tuple(e - s for e, s in zip(exp, shift)): c for exp, c in self._terms.items()}
        return Poly.from_dict(shifted, *ring_generators(self._n), domain=ZZ)

    @classmethod
    def _from_poly(cls, n: int, poly: Poly, shift: Exponent) -> "LaurentPoly":
        return cls(n, {tuple(e + s for e, s in zip(exp, shift)): int(c) for exp, c in poly.terms()})

    def to_sympy(self) -> sp.Expr:
        gens = ring_generators(self._n)
        return sp.Add(*[c * sp.Mul(*[g ** e for g, e in zip(gens, exp)]) for exp, c in self._terms.items()])

    def latex(self) -> str:
        return sp.latex(sp.together(self.to_sympy()))

    # arithmetic

    def _check(self, other: "LaurentPoly"):
        if not isinstance(other, LaurentPoly):
            raise TypeError(f"cannot combine LaurentPoly with {type(other).__name__}")
        if other._n != self._n:
            raise VariableCountMismatch(f"{self._n} variables vs {other._n} variables")

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly.constant(self._n, other)
        self._check(other)
        return other

    def __add__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        shift = tuple(min(a, b) for a, b in zip(self.min_exponents(), other.min_exponents()))
        return LaurentPoly._from_poly(self._n, self._poly(shift) + other._poly(shift), shift)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self._n, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly(self._n, {e: c * other for e, c in self._terms.items()})
        self._check(other)
        if self.is_zero or other.is_zero:
            return LaurentPoly.zero(self._n)
        sa, sb = self.min_exponents(), other.min_exponents()
        shift = tuple(a + b for a, b in zip(sa, sb))
        return LaurentPoly._from_poly(self._n, self._poly(sa) * other._poly(sb), shift)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            raise InvalidInput("only non-negative powers are supported")
        if self.is_zero:
            return LaurentPoly.one(self._n) if k == 0 else self
        shift = self.min_exponents()
        return LaurentPoly._from_poly(self._n, self._poly(shift) ** k, tuple(s * k for s in shift))

    def exact_div(self, divisor: "LaurentPoly") -> "LaurentPoly":
        """Quotient q with q * divisor == self, or NotDivisible"""
        self._check(divisor)
        if divisor.is_zero:
            raise InvalidInput("division by the zero polynomial")
        if self.is_zero:
            return self
        sa, sb = self.min_exponents(), divisor.min_exponents()
        try:
            quotient = self._poly(sa).exquo(divisor._poly(sb), auto=False)
        except ExactQuotientFailed as exc:
            raise NotDivisible(f"{self} is not divisible by {divisor}") from exc
        return LaurentPoly._from_poly(self._n, quotient, tuple(a - b for a, b in zip(sa, sb)))

    def swap_variables(self, permutation: Sequence[int]) -> "LaurentPoly":
        """Substitute x_i -> x_{permutation[i]}"""
        if sorted(permutation) != list(range(self._n)):
            raise InvalidInput(f"{permutation} is not a permutation of {self._n} indices")
        terms = {}
        for exp, c in self._terms.items():
            moved = [0] * self._n
            for i, e in enumerate(exp):
                moved[permutation[i]] = e
            terms[tuple(moved)] = c
        return LaurentPoly(self._n, terms)

    # dunder plumbing

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(self._n, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._n == other._n and self._terms == other._terms

    def __hash__(self) -> int:
        # constants compare equal to ints, so they hash like them
        if set(self._terms) <= {(0,) * self._n}:
            return hash(self.coefficient((0,) * self._n))
        return hash(self.key())

    def __lt__(self, other: "LaurentPoly") -> bool:
        return self.key() < other.key()

    def __str__(self) -> str:
        return str(sp.together(self.to_sympy()))

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"


@dataclass(frozen=True)
class FractionForm:
    """L = numerator / x^denominator with no x_i dividing the numerator"""
    numerator: LaurentPoly
    denominator: Exponent

    def reconstruct(self) -> LaurentPoly:
        n = self.numerator.n
        return self.numerator * LaurentPoly.monomial(n, tuple(-d for d in self.denominator))


def add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    a._check(b)
    return a + b


def mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    a._check(b)
    return a * b


def exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a.exact_div(b)


def to_fraction(a: LaurentPoly) -> FractionForm:
    """Unique factorization a = P / x^d; d may have negative entries"""
    if a.is_zero:
        raise InvalidInput("the zero polynomial has no fraction form")
    d = tuple(-m for m in a.min_exponents())
    numerator = a * LaurentPoly.monomial(a.n, d)
    return FractionForm(numerator=numerator, denominator=d)


def denominator_vector(a: LaurentPoly) -> Exponent:
    return to_fraction(a).denominator


def numerator_is_weakly_positive(p: LaurentPoly) -> bool:
    """Sufficient condition for weak positivity of a polynomial numerator.

    Non-negative coefficients, not zero, and for every variable a positive
    term that avoids it. True is conclusive, False only means unknown.
    """
    if p.is_zero:
        return False
    if any(c < 0 for _, c in p.terms):
        return False
    return all(any(c > 0 and exp[i] == 0 for exp, c in p.terms) for i in range(p.n))


def is_weakly_positive_sufficient(a: LaurentPoly) -> bool:
    if a.is_zero:
        return False
    return numerator_is_weakly_positive(to_fraction(a).numerator)


def sup_vector(d: Sequence[int], e: Sequence[int]) -> Exponent:
    if len(d) != len(e):
        raise InvalidInput(f"vectors of length {len(d)} and {len(e)}")
    return tuple(max(a, b) for a, b in zip(d, e))
