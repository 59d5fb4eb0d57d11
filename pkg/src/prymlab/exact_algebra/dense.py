"""Dense univariate polynomials over a field.

A polynomial is a list of raw coefficients, lowest degree first, with no
trailing zeros (the zero polynomial is ``[]``).  Every function takes the
coefficient :class:`~prymlab.exact_algebra.domain.Domain` as first argument.
These routines are the hot loops behind elimination and modular counting.
"""

from __future__ import annotations

from typing import Sequence

from .domain import Domain, PrimeField

Dense = list


def strip(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def degree(a: Sequence) -> int:
    return len(a) - 1


def add(F: Domain, a: Sequence, b: Sequence) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = F.add(out[i], c)
    return strip(out)


def sub(F: Domain, a: Sequence, b: Sequence) -> list:
    out = list(a) + [F.zero] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = F.sub(out[i], c)
    return strip(out)


def scale(F: Domain, a: Sequence, c) -> list:
    if c == 0:
        return []
    return strip([F.mul(x, c) for x in a])


def mul(F: Domain, a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    if isinstance(F, PrimeField):
        p = F.p
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return strip([c % p for c in out])
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x != 0:
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
    return strip(out)


def divmod_(F: Domain, a: Sequence, b: Sequence) -> tuple[list, list]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], strip(r)
    inv_lc = F.inv(b[-1])
    q = [F.zero] * (len(r) - db)
    if isinstance(F, PrimeField):
        p = F.p
        for k in range(len(r) - 1 - db, -1, -1):
            c = r[k + db] * inv_lc % p
            q[k] = c
            if c:
                for j in range(db + 1):
                    r[k + j] = (r[k + j] - c * b[j]) % p
        return strip(q), strip(r[:db])
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db] * inv_lc
        q[k] = c
        if c != 0:
            for j in range(db + 1):
                r[k + j] = r[k + j] - c * b[j]
    return strip(q), strip(r[:db])


def rem(F: Domain, a: Sequence, b: Sequence) -> list:
    return divmod_(F, a, b)[1]


def monic(F: Domain, a: Sequence) -> list:
    if not a:
        return []
    return scale(F, a, F.inv(a[-1]))


def gcd(F: Domain, a: Sequence, b: Sequence) -> list:
    """Monic greatest common divisor (``[]`` only when both inputs vanish)."""
    a, b = strip(list(a)), strip(list(b))
    while b:
        a, b = b, rem(F, a, b)
    return monic(F, a)


def ext_gcd(F: Domain, a: Sequence, b: Sequence) -> tuple[list, list, list]:
    """Return ``(g, s, t)`` with ``s*a + t*b = g`` and ``g`` monic."""
    r0, r1 = strip(list(a)), strip(list(b))
    s0, s1 = [F.one], []
    t0, t1 = [], [F.one]
    while r1:
        q, r = divmod_(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(F, s0, mul(F, q, s1))
        t0, t1 = t1, sub(F, t0, mul(F, q, t1))
    if not r0:
        return [], [], []
    c = F.inv(r0[-1])
    return scale(F, r0, c), scale(F, s0, c), scale(F, t0, c)


def invmod(F: Domain, a: Sequence, m: Sequence) -> list:
    g, s, _ = ext_gcd(F, a, m)
    if len(g) != 1:
        raise ZeroDivisionError("not invertible modulo the given polynomial")
    return rem(F, s, m)


def mulmod(F: Domain, a: Sequence, b: Sequence, m: Sequence) -> list:
    return rem(F, mul(F, a, b), m)


def deriv(F: Domain, a: Sequence) -> list:
    return strip([F.mul(F.convert(i), a[i]) for i in range(1, len(a))])


def evaluate(F: Domain, a: Sequence, x):
    acc = F.zero
    if isinstance(F, PrimeField):
        p = F.p
        for c in reversed(a):
            acc = (acc * x + c) % p
        return acc
    for c in reversed(a):
        acc = acc * x + c
    return acc


def squarefree_part(F: Domain, a: Sequence) -> list:
    """Monic ``a / gcd(a, a')``; valid when the characteristic exceeds ``deg a``."""
    if not a:
        raise ValueError("squarefree part of the zero polynomial")
    g = gcd(F, a, deriv(F, a))
    return monic(F, divmod_(F, a, g)[0])


def squarefree_decomposition(F: Domain, a: Sequence) -> dict[int, list]:
    """Yun's algorithm: ``{multiplicity: monic factor}`` with nonconstant factors."""
    if not a:
        raise ValueError("squarefree decomposition of the zero polynomial")
    out: dict[int, list] = {}
    f = monic(F, a)
    if len(f) == 1:
        return out
    d = deriv(F, f)
    g = gcd(F, f, d)
    b = divmod_(F, f, g)[0]
    c = divmod_(F, d, g)[0]
    i = 1
    while len(b) > 1:
        y = sub(F, c, deriv(F, b))
        z = gcd(F, b, y)
        if len(z) > 1:
            out[i] = z
        b = divmod_(F, b, z)[0]
        c = divmod_(F, y, z)[0]
        i += 1
    return out


def multiplicity_partition(F: Domain, a: Sequence) -> dict[int, int]:
    """``{multiplicity: number of distinct roots}`` over the algebraic closure."""
    return {m: degree(f) for m, f in squarefree_decomposition(F, a).items()}


def resultant(F: Domain, a: Sequence, b: Sequence, da: int | None = None, db: int | None = None):
    """Sylvester resultant with formal degrees ``da, db`` (default: actual degrees).

    Matches the determinant of the Sylvester matrix with the rows of ``a``
    first, i.e. the classical ``Res(a, b) = lc(a)^db * prod b(roots of a)``.
    """
    na = len(a) - 1 if da is None else da
    nb = len(b) - 1 if db is None else db
    a, b = strip(list(a)), strip(list(b))
    if na < len(a) - 1 or nb < len(b) - 1:
        raise ValueError("formal degree below actual degree")
    if nb == 0:
        return F.power(b[0] if b else F.zero, na)
    if na == 0:
        return F.power(a[0] if a else F.zero, nb)
    if not a or not b:
        return F.zero
    ra, rb = len(a) - 1, len(b) - 1
    if na > ra and nb > rb:
        return F.zero
    factor = F.one
    if nb > rb:
        factor = F.power(a[-1], nb - rb)
    elif na > ra:
        factor = F.power(b[-1], na - ra)
        if ((na - ra) * nb) % 2:
            factor = F.neg(factor)
    return F.mul(factor, _resultant_actual(F, a, b))


def _resultant_actual(F: Domain, a: list, b: list):
    na, nb = len(a) - 1, len(b) - 1
    result = F.one
    while True:
        if na == 0:
            return F.mul(result, F.power(a[0], nb))
        if nb == 0:
            return F.mul(result, F.power(b[0], na))
        # Res(a, b) = (-1)^(na*nb) Res(b, a);  Res(b, a) = lc(b)^(na - deg r) Res(b, r)
        r = rem(F, a, b)
        if not r:
            return F.zero
        nr = len(r) - 1
        if (na * nb) % 2:
            result = F.neg(result)
        result = F.mul(result, F.power(b[-1], na - nr))
        a, b, na, nb = b, r, nb, nr


def interpolate(F: Domain, xs: Sequence, ys: Sequence) -> list:
    """Newton interpolation through ``(xs[i], ys[i])`` with distinct nodes."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = F.div(F.sub(coef[i], coef[i - 1]), F.sub(xs[i], xs[i - j]))
    out: list = []
    for i in range(n - 1, -1, -1):
        # out = out * (x - xs[i]) + coef[i]
        shifted = [F.zero] + list(out)
        for k in range(len(out)):
            shifted[k] = F.sub(shifted[k], F.mul(out[k], xs[i]))
        if shifted:
            shifted[0] = F.add(shifted[0], coef[i])
        else:
            shifted = [coef[i]]
        out = strip(shifted)
    return out


def powmod(F: Domain, a: Sequence, e: int, m: Sequence) -> list:
    result = [F.one]
    base = rem(F, a, m)
    while e:
        if e & 1:
            result = mulmod(F, result, base, m)
        base = mulmod(F, base, base, m)
        e >>= 1
    return result
