"""Arithmetic in ``F[x]/(m)`` for a squarefree modulus ``m``.

Counting the roots of ``m`` at which an expression vanishes reduces to
``deg gcd(m, expr mod m)``; this is how conditions are evaluated on all the
points of a zero-dimensional set at once without extracting roots.
"""

from __future__ import annotations

from typing import Any, Callable, Sequence

from . import dense
from .domain import Domain
from .poly import MultiPoly


class QuotientRing:
    def __init__(self, F: Domain, modulus: Sequence):
        self.F = F
        self.modulus = dense.monic(F, list(modulus))
        if len(self.modulus) < 1:
            raise ValueError("zero modulus")

    @property
    def rank(self) -> int:
        return len(self.modulus) - 1

    def reduce(self, a: Sequence) -> list:
        return dense.rem(self.F, list(a), self.modulus)

    def const(self, c) -> list:
        return self.reduce([c])

    def add(self, a, b):
        return dense.add(self.F, a, b)

    def sub(self, a, b):
        return dense.sub(self.F, a, b)

    def mul(self, a, b):
        return dense.mulmod(self.F, a, b, self.modulus)

    def neg(self, a):
        return dense.scale(self.F, a, self.F.neg(self.F.one))

    def inv(self, a):
        return dense.invmod(self.F, a, self.modulus)

    def power(self, a, e: int):
        return dense.powmod(self.F, a, e, self.modulus)

    def vanishing_count(self, a: Sequence) -> int:
        """Number of roots of the modulus at which ``a`` vanishes."""
        return dense.degree(dense.gcd(self.F, self.modulus, a)) if a else self.rank

    def is_zero(self, a) -> bool:
        return not self.reduce(a)

    def evaluate(self, p: MultiPoly, images: dict[str, list]) -> list:
        """Evaluate ``p`` with each variable replaced by a ring element."""
        F = self.F
        powers: dict[str, dict[int, list]] = {v: {0: [F.one]} for v in images}
        acc: list = []
        for mono, c in p.terms.items():
            term = [c]
            for v, e in zip(p.variables, mono):
                if e:
                    if v not in images:
                        raise ValueError(f"no image for variable {v}")
                    cache = powers[v]
                    if e not in cache:
                        cache[e] = self.power(images[v], e)
                    term = self.mul(term, cache[e])
            acc = self.add(acc, term)
        return self.reduce(acc)


def det_division_free(rows: Sequence[Sequence[Any]], mul: Callable, add: Callable, sub: Callable, zero: Any) -> Any:
    """Determinant by memoized Laplace expansion; needs only ring operations."""
    n = len(rows)
    if n == 0:
        raise ValueError("empty matrix")
    memo: dict[int, Any] = {}

    def minor(col: int, used: int) -> Any:
        if col == n:
            return None
        key = used
        if key in memo:
            return memo[key]
        acc = zero
        sign_index = 0
        for i in range(n):
            if used >> i & 1:
                continue
            entry = rows[i][col]
            if entry != zero and entry != [] and entry != 0:
                sub_val = minor(col + 1, used | (1 << i))
                term = entry if sub_val is None else mul(entry, sub_val)
                acc = add(acc, term) if sign_index % 2 == 0 else sub(acc, term)
            sign_index += 1
        memo[key] = acc
        return acc

    return minor(0, 0)
