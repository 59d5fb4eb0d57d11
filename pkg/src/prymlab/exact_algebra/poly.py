"""Sparse multivariate polynomials with exact coefficients.

Text format (both printed and parsed)::

    3*X^4 - 1/2*X^2*Y*Z + Z^4

Terms are printed in graded-lexicographic order, highest first.  A unit
coefficient is omitted and an exponent of one is written without ``^1``;
the parser accepts either spelling, as well as spaces anywhere.  Text with
parentheses, such as ``(X - Z)^2*(X + 2*Z)``, is expanded exactly.
"""

from __future__ import annotations

import ast
import re
from fractions import Fraction
from typing import Any, Iterable, Iterator, Mapping, Sequence

from .domain import QQ, Domain, DomainError, Scalar

Monomial = tuple[int, ...]


class PolyParseError(ValueError):
    """Raised when polynomial text is malformed."""


def _grlex_key(m: Monomial) -> tuple:
    return (sum(m), m)


class MultiPoly:
    """Polynomial in a fixed tuple of named variables over an exact domain."""

    __slots__ = ("variables", "terms", "domain")

    def __init__(
        self,
        variables: Sequence[str],
        terms: Mapping[Monomial, Any] | None = None,
        domain: Domain = QQ,
        *,
        raw: bool = False,
    ):
        self.variables = tuple(variables)
        self.domain = domain
        n = len(self.variables)
        clean: dict[Monomial, Any] = {}
        for mono, c in (terms or {}).items():
            mono = tuple(mono)
            if len(mono) != n or any(e < 0 for e in mono):
                raise ValueError(f"bad monomial {mono} for variables {self.variables}")
            c = c if raw else domain.convert(c)
            if c != 0:
                clean[mono] = domain.add(clean[mono], c) if mono in clean else c
                if clean[mono] == 0:
                    del clean[mono]
        self.terms = clean

    # -- construction -------------------------------------------------
    @classmethod
    def zero(cls, variables: Sequence[str], domain: Domain = QQ) -> "MultiPoly":
        return cls(variables, {}, domain)

    @classmethod
    def constant(cls, c: Any, variables: Sequence[str], domain: Domain = QQ) -> "MultiPoly":
        return cls(variables, {(0,) * len(variables): c}, domain)

    @classmethod
    def var(cls, name: str, variables: Sequence[str], domain: Domain = QQ) -> "MultiPoly":
        variables = tuple(variables)
        i = variables.index(name)
        mono = tuple(1 if k == i else 0 for k in range(len(variables)))
        return cls(variables, {mono: 1}, domain)

    @classmethod
    def gens(cls, variables: Sequence[str], domain: Domain = QQ) -> tuple["MultiPoly", ...]:
        return tuple(cls.var(v, variables, domain) for v in variables)

    @classmethod
    def parse(cls, text: str, variables: Sequence[str] = ("X", "Y", "Z"), domain: Domain = QQ) -> "MultiPoly":
        return parse_poly(text, variables, domain)

    def _new(self, terms: dict, variables: Sequence[str] | None = None) -> "MultiPoly":
        p = MultiPoly.__new__(MultiPoly)
        p.variables = self.variables if variables is None else tuple(variables)
        p.domain = self.domain
        p.terms = {m: c for m, c in terms.items() if c != 0}
        return p

    # -- basic queries --------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[Monomial, Any]]:
        return iter(sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True))

    def coeff(self, mono: Sequence[int]):
        return self.terms.get(tuple(mono), self.domain.zero)

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self.variables.index(name)
        return max((m[i] for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.coeff((0,) * len(self.variables))

    def leading_term(self) -> tuple[Monomial, Any]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self.terms, key=_grlex_key)
        return m, self.terms[m]

    # -- arithmetic -----------------------------------------------------
    def _check(self, other: "MultiPoly") -> None:
        if other.domain != self.domain:
            raise DomainError(f"mixed-domain arithmetic: {self.domain} vs {other.domain}")
        if other.variables != self.variables:
            raise ValueError(f"variable mismatch: {self.variables} vs {other.variables}")

    def _lift(self, other: Any) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        if isinstance(other, Scalar):
            if other.domain != self.domain:
                raise DomainError(f"mixed-domain arithmetic: {self.domain} vs {other.domain}")
            return MultiPoly.constant(other.value, self.variables, self.domain)
        if isinstance(other, int) and not isinstance(other, bool):
            return MultiPoly.constant(other, self.variables, self.domain)
        if isinstance(other, Fraction) and self.domain == QQ:
            return MultiPoly.constant(other, self.variables, self.domain)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        F = self.domain
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = F.add(out[m], c) if m in out else c
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        F = self.domain
        return self._new({m: F.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        F = self.domain
        out: dict[Monomial, Any] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                c = F.mul(c1, c2)
                out[m] = F.add(out[m], c) if m in out else c
        return self._new(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.constant(1, self.variables, self.domain)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c: Any) -> "MultiPoly":
        c = self.domain.convert(c)
        F = self.domain
        return self._new({m: F.mul(v, c) for m, v in self.terms.items()})

    def monic(self) -> "MultiPoly":
        """Divide by the grlex leading coefficient."""
        if not self.terms:
            return self
        _, lc = self.leading_term()
        F = self.domain
        inv = F.inv(lc)
        return self._new({m: F.mul(v, inv) for m, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return (
                self.variables == other.variables
                and self.domain == other.domain
                and self.terms == other.terms
            )
        if isinstance(other, int):
            return self == MultiPoly.constant(other, self.variables, self.domain)
        return NotImplemented

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def divexact(self, other: "MultiPoly") -> "MultiPoly":
        """Exact quotient ``self / other``; raises ``ArithmeticError`` if not exact."""
        other = self._lift(other)
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        F = self.domain
        lm, lc = other.leading_term()
        inv = F.inv(lc)
        rem = dict(self.terms)
        quot: dict[Monomial, Any] = {}
        while rem:
            m = max(rem, key=_grlex_key)
            shift = tuple(a - b for a, b in zip(m, lm))
            if any(e < 0 for e in shift):
                raise ArithmeticError("division is not exact")
            c = F.mul(rem[m], inv)
            quot[shift] = c
            for m2, c2 in other.terms.items():
                t = tuple(a + b for a, b in zip(shift, m2))
                v = F.sub(rem.get(t, F.zero), F.mul(c, c2))
                if v == 0:
                    rem.pop(t, None)
                else:
                    rem[t] = v
        return self._new(quot)

    # -- calculus and substitution --------------------------------------
    def derivative(self, name: str) -> "MultiPoly":
        i = self.variables.index(name)
        F = self.domain
        out = {}
        for m, c in self.terms.items():
            if m[i]:
                mm = list(m)
                mm[i] -= 1
                out[tuple(mm)] = F.mul(F.convert(m[i]), c)
        return self._new(out)

    def evaluate(self, point: Mapping[str, Any] | Sequence[Any]):
        """Evaluate at a full point (mapping ``name -> value`` or a sequence)."""
        F = self.domain
        if isinstance(point, Mapping):
            vals = [F.convert(point[v]) for v in self.variables]
        else:
            vals = [F.convert(x) for x in point]
        if len(vals) != len(self.variables):
            raise ValueError("point has the wrong number of coordinates")
        powers: list[dict[int, Any]] = [dict() for _ in vals]
        acc = F.zero
        for m, c in self.terms.items():
            t = c
            for i, e in enumerate(m):
                if e:
                    pw = powers[i].get(e)
                    if pw is None:
                        pw = F.power(vals[i], e)
                        powers[i][e] = pw
                    t = F.mul(t, pw)
            acc = F.add(acc, t)
        return acc

    def substitute(self, mapping: Mapping[str, "MultiPoly"], variables: Sequence[str] | None = None) -> "MultiPoly":
        """Replace variables by polynomials in ``variables`` (default: same ring).

        Variables absent from ``mapping`` are kept and must exist in the target ring.
        """
        target = self.variables if variables is None else tuple(variables)
        F = self.domain
        images: list[MultiPoly] = []
        for v in self.variables:
            if v in mapping:
                img = mapping[v]
                if not isinstance(img, MultiPoly):
                    img = MultiPoly.constant(img, target, F)
                if img.variables != target or img.domain != F:
                    raise ValueError(f"image of {v} lives in the wrong ring")
                images.append(img)
            else:
                images.append(MultiPoly.var(v, target, F))
        cache: list[dict[int, MultiPoly]] = [dict() for _ in images]
        out = MultiPoly.zero(target, F)
        for m, c in self.terms.items():
            t = MultiPoly(target, {(0,) * len(target): c}, F, raw=True)
            for i, e in enumerate(m):
                if e:
                    pw = cache[i].get(e)
                    if pw is None:
                        pw = images[i] ** e
                        cache[i][e] = pw
                    t = t * pw
            out = out + t
        return out

    def change_domain(self, domain: Domain) -> "MultiPoly":
        """Map coefficients into another domain (e.g. reduce Q -> Fp)."""
        if domain == self.domain:
            return self
        if self.domain != QQ:
            raise DomainError(f"cannot map {self.domain} coefficients into {domain}")
        return MultiPoly(self.variables, {m: domain.convert(c) for m, c in self.terms.items()}, domain)

    def rename(self, variables: Sequence[str]) -> "MultiPoly":
        if len(variables) != len(self.variables):
            raise ValueError("rename needs the same number of variables")
        return self._new(dict(self.terms), variables)

    def coefficients_in(self, name: str) -> list["MultiPoly"]:
        """Coefficients of powers of ``name`` (lowest first), still in the full ring."""
        i = self.variables.index(name)
        d = self.degree_in(name)
        buckets: list[dict] = [dict() for _ in range(d + 1)]
        for m, c in self.terms.items():
            mm = list(m)
            e = mm[i]
            mm[i] = 0
            buckets[e][tuple(mm)] = c
        return [self._new(b) for b in buckets]

    @classmethod
    def from_coefficients(cls, coeffs: Iterable["MultiPoly"], name: str) -> "MultiPoly":
        coeffs = list(coeffs)
        if not coeffs:
            raise ValueError("need at least one coefficient")
        base = coeffs[0]
        x = MultiPoly.var(name, base.variables, base.domain)
        out = MultiPoly.zero(base.variables, base.domain)
        for k, c in enumerate(coeffs):
            out = out + c * x**k
        return out

    def to_dense(self, name: str) -> list:
        """Raw dense coefficient list in ``name``; all other variables must be absent."""
        i = self.variables.index(name)
        out = [self.domain.zero] * (self.degree_in(name) + 1)
        for m, c in self.terms.items():
            if any(e for k, e in enumerate(m) if k != i):
                raise ValueError(f"polynomial is not univariate in {name}")
            out[m[i]] = c
        return out

    @classmethod
    def from_dense(cls, coeffs: Sequence, name: str, variables: Sequence[str], domain: Domain) -> "MultiPoly":
        variables = tuple(variables)
        i = variables.index(name)
        terms = {}
        for e, c in enumerate(coeffs):
            if c != 0:
                terms[tuple(e if k == i else 0 for k in range(len(variables)))] = c
        return cls(variables, terms, domain, raw=True)

    # -- text -----------------------------------------------------------
    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"MultiPoly({str(self)!r}, {self.variables}, {self.domain})"


def format_poly(p: MultiPoly) -> str:
    if not p.terms:
        return "0"
    F = p.domain
    pieces: list[str] = []
    for m, c in p:
        text = F.format(c)
        negative = text.startswith("-")
        if negative:
            text = text[1:]
        if F.characteristic and not negative and c > F.characteristic // 2:
            # symmetric representative reads better for small negatives mod p
            neg_text = F.format(F.neg(c))
            if len(neg_text) < len(text):
                text, negative = neg_text, True
        factors = []
        for name, e in zip(p.variables, m):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        if text != "1" or not factors:
            factors.insert(0, text)
        body = "*".join(factors)
        if not pieces:
            pieces.append(("-" if negative else "") + body)
        else:
            pieces.append((" - " if negative else " + ") + body)
    return "".join(pieces)


_SIGNED_TERM = re.compile(r"([+-])([^+-]+)")
_NUMBER = re.compile(r"^\d+(/\d+)?$")
_POWER = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*)(\^(\d+))?$")


def parse_poly(text: str, variables: Sequence[str] = ("X", "Y", "Z"), domain: Domain = QQ) -> MultiPoly:
    """Parse a sum of monomials ``[coeff*]var[^e]*...``; see the module docstring."""
    variables = tuple(variables)
    index = {v: i for i, v in enumerate(variables)}
    src = text.replace(" ", "").replace("\t", "").replace("\n", "").replace("**", "^")
    if not src:
        raise PolyParseError("empty polynomial text")
    if "(" in src or ")" in src:
        return _parse_expression(src, variables, domain)
    if src[0] not in "+-":
        src = "+" + src
    pieces = _SIGNED_TERM.findall(src)
    if "".join(s + t for s, t in pieces) != src:
        raise PolyParseError(f"malformed polynomial text {text!r}")
    terms: dict[Monomial, Fraction] = {}
    for sign, part in pieces:
        coeff = Fraction(-1 if sign == "-" else 1)
        mono = [0] * len(variables)
        for factor in part.split("*"):
            if factor == "":
                raise PolyParseError(f"empty factor in {text!r}")
            if _NUMBER.match(factor):
                try:
                    coeff *= Fraction(factor)
                except ZeroDivisionError as exc:
                    raise PolyParseError(f"zero denominator in {factor!r}") from exc
                continue
            mt = _POWER.match(factor)
            if not mt:
                raise PolyParseError(f"cannot parse factor {factor!r}")
            name = mt.group(1)
            if name not in index:
                raise PolyParseError(f"unknown variable {name!r}; expected one of {variables}")
            mono[index[name]] += int(mt.group(3) or 1)
        key = tuple(mono)
        terms[key] = terms.get(key, Fraction(0)) + coeff
    return MultiPoly(variables, terms, domain)


def _parse_expression(src: str, variables: tuple[str, ...], domain: Domain) -> MultiPoly:
    """Expand an arithmetic expression in ``variables`` without evaluating code."""
    try:
        tree = ast.parse(src.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise PolyParseError(f"malformed polynomial text {src!r}") from exc

    def walk(node: ast.AST) -> MultiPoly:
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return MultiPoly.constant(node.value, variables, domain)
        if isinstance(node, ast.Name):
            if node.id not in variables:
                raise PolyParseError(f"unknown variable {node.id!r}; expected one of {variables}")
            return MultiPoly.var(node.id, variables, domain)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.UAdd, ast.USub)):
            inner = walk(node.operand)
            return -inner if isinstance(node.op, ast.USub) else inner
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                e = node.right
                if not (isinstance(e, ast.Constant) and isinstance(e.value, int) and e.value >= 0):
                    raise PolyParseError("exponents must be nonnegative integer literals")
                return walk(node.left) ** e.value
            left, right = walk(node.left), walk(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                if not right.is_constant() or right.is_zero():
                    raise PolyParseError("division only by nonzero constants")
                return left.scale(domain.inv(right.constant_value()))
        raise PolyParseError(f"unsupported syntax in {src!r}")

    return walk(tree.body)
