"""Exact coefficient domains: the rationals and prime fields.

Polynomials and matrices store *raw* coefficients (``Fraction`` for Q, ``int``
in ``[0, p)`` for Fp) and delegate arithmetic to the domain object.  The
:class:`Scalar` wrapper is the user-facing value type and rejects mixed-domain
arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any

from sympy import isprime


class DomainError(ValueError):
    """Raised on mixed-domain operations or impossible conversions."""


class Domain:
    """Base class; concrete domains are singletons compared by identity/equality."""

    name: str = "?"
    characteristic: int = 0

    def convert(self, x: Any) -> Any:
        raise NotImplementedError

    def is_zero(self, a: Any) -> bool:
        return a == 0

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, n: int):
        if n < 0:
            return self.power(self.inv(a), -n)
        result = self.one
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def format(self, a) -> str:
        return str(a)

    def __repr__(self) -> str:
        return self.name


class RationalField(Domain):
    name = "Q"
    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def convert(self, x: Any) -> Fraction:
        if isinstance(x, Scalar):
            if x.domain != self:
                raise DomainError(f"cannot coerce {x.domain} scalar into Q")
            return x.value
        if isinstance(x, bool):
            raise DomainError("booleans are not coefficients")
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x.strip())
        raise DomainError(f"cannot convert {type(x).__name__} to Q")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in Q")
        return 1 / Fraction(a)

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in Q")
        return Fraction(a) / b

    def format(self, a) -> str:
        a = Fraction(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")


class PrimeField(Domain):
    zero = 0
    one = 1

    def __init__(self, p: int):
        if not isprime(p):
            raise DomainError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"F{p}"

    def convert(self, x: Any) -> int:
        if isinstance(x, Scalar):
            if x.domain != self:
                raise DomainError(f"cannot coerce {x.domain} scalar into {self.name}")
            return x.value
        if isinstance(x, bool):
            raise DomainError("booleans are not coefficients")
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            den = x.denominator % self.p
            if den == 0:
                raise DomainError(f"denominator {x.denominator} vanishes mod {self.p}")
            return x.numerator * pow(den, -1, self.p) % self.p
        if isinstance(x, str):
            return self.convert(Fraction(x.strip()))
        raise DomainError(f"cannot convert {type(x).__name__} to {self.name}")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of zero in {self.name}")
        return pow(a, -1, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    """Return the (cached) prime field with ``p`` elements."""
    return PrimeField(p)


@dataclass(frozen=True)
class Scalar:
    """An exact value tagged with its domain."""

    value: Any
    domain: Domain

    @classmethod
    def of(cls, x: Any, domain: Domain = QQ) -> "Scalar":
        return cls(domain.convert(x), domain)

    def _other(self, other) -> Any:
        if isinstance(other, Scalar):
            if other.domain != self.domain:
                raise DomainError(f"mixed-domain arithmetic: {self.domain} vs {other.domain}")
            return other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.domain.convert(other)
        raise DomainError(f"refusing to coerce {type(other).__name__} into {self.domain}")

    def __add__(self, other):
        return Scalar(self.domain.add(self.value, self._other(other)), self.domain)

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.domain.sub(self.value, self._other(other)), self.domain)

    def __rsub__(self, other):
        return Scalar(self.domain.sub(self._other(other), self.value), self.domain)

    def __mul__(self, other):
        return Scalar(self.domain.mul(self.value, self._other(other)), self.domain)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Scalar(self.domain.div(self.value, self._other(other)), self.domain)

    def __rtruediv__(self, other):
        return Scalar(self.domain.div(self._other(other), self.value), self.domain)

    def __neg__(self):
        return Scalar(self.domain.neg(self.value), self.domain)

    def __pow__(self, n: int):
        return Scalar(self.domain.power(self.value, n), self.domain)

    def is_zero(self) -> bool:
        return self.domain.is_zero(self.value)

    def __str__(self) -> str:
        return self.domain.format(self.value)
