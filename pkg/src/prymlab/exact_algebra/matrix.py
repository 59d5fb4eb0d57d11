"""Dense and sparse exact linear algebra over a :class:`Domain`."""

from __future__ import annotations

from typing import Any, Iterable, Mapping, Sequence

from .domain import QQ, Domain, DomainError, PrimeField


class Matrix:
    """Immutable rectangular matrix of raw coefficients."""

    __slots__ = ("rows", "cols", "entries", "domain")

    def __init__(self, entries: Sequence[Sequence[Any]], domain: Domain = QQ, *, raw: bool = False):
        rows = [list(r) for r in entries]
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix")
        self.domain = domain
        self.rows = len(rows)
        self.cols = len(rows[0]) if rows else 0
        self.entries = tuple(tuple(c if raw else domain.convert(c) for c in r) for r in rows)

    @classmethod
    def zeros(cls, rows: int, cols: int, domain: Domain = QQ) -> "Matrix":
        return cls([[domain.zero] * cols for _ in range(rows)], domain, raw=True)

    @classmethod
    def identity(cls, n: int, domain: Domain = QQ) -> "Matrix":
        return cls([[domain.one if i == j else domain.zero for j in range(n)] for i in range(n)], domain, raw=True)

    def __getitem__(self, ij: tuple[int, int]):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.domain == other.domain and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(self.domain.format(c) for c in r) for r in self.entries)
        return f"Matrix[{self.rows}x{self.cols} over {self.domain}]({body})"

    def transpose(self) -> "Matrix":
        return Matrix([list(c) for c in zip(*self.entries)] if self.rows else [], self.domain, raw=True)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if other.domain != self.domain:
            raise DomainError("mixed-domain matrix product")
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        F = self.domain
        cols = list(zip(*other.entries))
        out = []
        for r in self.entries:
            row = []
            for c in cols:
                acc = F.zero
                for x, y in zip(r, c):
                    if x != 0 and y != 0:
                        acc = F.add(acc, F.mul(x, y))
                row.append(acc)
            out.append(row)
        return Matrix(out, F, raw=True)

    def change_domain(self, domain: Domain) -> "Matrix":
        if domain == self.domain:
            return self
        if self.domain != QQ:
            raise DomainError(f"cannot map {self.domain} entries into {domain}")
        return Matrix([[domain.convert(c) for c in r] for r in self.entries], domain, raw=True)

    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        """Reduced row echelon form and the pivot columns."""
        F = self.domain
        a = [list(r) for r in self.entries]
        pivots: list[int] = []
        r = 0
        for c in range(self.cols):
            piv = next((i for i in range(r, self.rows) if a[i][c] != 0), None)
            if piv is None:
                continue
            a[r], a[piv] = a[piv], a[r]
            inv = F.inv(a[r][c])
            a[r] = [F.mul(x, inv) for x in a[r]]
            for i in range(self.rows):
                if i != r and a[i][c] != 0:
                    f = a[i][c]
                    a[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(a[i], a[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return Matrix(a, F, raw=True) if a else self, tuple(pivots)

    def rank(self) -> int:
        return sparse_rank(
            ({j: c for j, c in enumerate(r) if c != 0} for r in self.entries), self.domain
        )

    def kernel_dim(self) -> int:
        return self.cols - self.rank()

    def kernel_basis(self) -> list[list]:
        """Basis of the right kernel as raw coefficient lists."""
        R, pivots = self.rref()
        F = self.domain
        free = [j for j in range(self.cols) if j not in pivots]
        basis = []
        for fj in free:
            v = [F.zero] * self.cols
            v[fj] = F.one
            for i, pj in enumerate(pivots):
                v[pj] = F.neg(R.entries[i][fj])
            basis.append(v)
        return basis

    def det(self):
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        F = self.domain
        a = [list(r) for r in self.entries]
        n = self.rows
        result = F.one
        for c in range(n):
            piv = next((i for i in range(c, n) if a[i][c] != 0), None)
            if piv is None:
                return F.zero
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                result = F.neg(result)
            result = F.mul(result, a[c][c])
            inv = F.inv(a[c][c])
            for i in range(c + 1, n):
                if a[i][c] != 0:
                    f = F.mul(a[i][c], inv)
                    a[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(a[i], a[c])]
        return result


def sparse_rank(rows: Iterable[Mapping[int, Any]], domain: Domain = QQ) -> int:
    """Rank of a matrix given as sparse rows ``{column: coefficient}``.

    Builds an echelon basis incrementally; each pivot row is kept monic and
    indexed by its smallest column.
    """
    F = domain
    basis: dict[int, dict[int, Any]] = {}
    prime = F.p if isinstance(F, PrimeField) else None
    for row in rows:
        r = {j: c for j, c in row.items() if c != 0}
        while r:
            lead = min(r)
            piv = basis.get(lead)
            if piv is None:
                inv = F.inv(r[lead])
                if prime is not None:
                    basis[lead] = {j: c * inv % prime for j, c in r.items()}
                else:
                    basis[lead] = {j: c * inv for j, c in r.items()}
                break
            f = r[lead]
            if prime is not None:
                for j, c in piv.items():
                    v = (r.get(j, 0) - f * c) % prime
                    if v:
                        r[j] = v
                    else:
                        r.pop(j, None)
            else:
                for j, c in piv.items():
                    v = r.get(j, 0) - f * c
                    if v != 0:
                        r[j] = v
                    else:
                        r.pop(j, None)
    return len(basis)
