"""Exact checks of the local structure at the special points.

Everything here is degree-by-degree linear algebra: Hilbert functions are
ranks of Macaulay matrices, and comparisons with parametrizations are rank
comparisons of evaluated monomials.  No Groebner bases are involved.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from math import comb, factorial
from typing import Mapping, Sequence

import sympy

from .exact_algebra import QQ, Domain, Matrix, MultiPoly, sparse_rank

SIGMA = (1, 0, 3, 2)  # (12)(34) on indices 0..3
U_VARS = tuple(f"u{i}{j}" for i in range(1, 5) for j in range(1, 5))
XY_VARS = tuple(f"x{i}" for i in range(1, 5)) + tuple(f"y{i}" for i in range(1, 5))

# 2-torsion of the Jacobian of a genus-3 curve: 2^(2*3) isolated fixed points
ISOLATED_FIXED_POINTS = 2 ** 6

STATED_FIXED_HYPERPLANES = (
    ("u11", "u22"),
    ("u33", "u44"),
    ("u13", "u42"),
    ("u14", "u32"),
    ("u23", "u41"),
    ("u24", "u31"),
)


class VerificationError(AssertionError):
    """A Hilbert value or structural check disagrees with its oracle."""


def u(i: int, j: int) -> str:
    return f"u{i + 1}{j + 1}"


@lru_cache(maxsize=None)
def monomials(nvars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return tuple(out)


def _index(nvars: int, degree: int) -> dict[tuple[int, ...], int]:
    return {m: i for i, m in enumerate(monomials(nvars, degree))}


def _shifted_rows(gens: Sequence[MultiPoly], nvars: int, degree: int):
    col = _index(nvars, degree)
    for g in gens:
        dg = g.total_degree()
        if dg > degree:
            continue
        for m in monomials(nvars, degree - dg):
            yield {col[tuple(a + b for a, b in zip(e, m))]: c for e, c in g.terms.items()}


@dataclass
class GradedIdeal:
    ambient_vars: tuple[str, ...]
    generators: list[MultiPoly]
    domain: Domain = QQ
    hilbert_cache: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        for g in self.generators:
            if g.is_zero():
                continue
            if g.variables != self.ambient_vars:
                raise ValueError("generator lives in a different ring")
            if not g.is_homogeneous():
                raise ValueError(f"generator {g} is not homogeneous")
        self.generators = [g for g in self.generators if not g.is_zero()]

    def hilbert(self, d: int) -> int:
        """``dim (S/I)_d`` as monomial count minus Macaulay-matrix rank."""
        if d not in self.hilbert_cache:
            n = len(self.ambient_vars)
            rank = sparse_rank(_shifted_rows(self.generators, n, d), self.domain)
            self.hilbert_cache[d] = comb(n + d - 1, d) - rank
        return self.hilbert_cache[d]

    def hilbert_table(self, max_degree: int) -> dict[int, int]:
        return {d: self.hilbert(d) for d in range(max_degree + 1)}

    def restrict(self, substitution: Mapping[str, str]) -> "GradedIdeal":
        """Intersect with the linear space ``{v = substitution[v]}``.

        The eliminated variables are replaced by their partners, giving an
        ideal in the remaining variables with the same Hilbert function as
        the ideal plus the linear forms ``v - substitution[v]``.
        """
        keep = tuple(v for v in self.ambient_vars if v not in substitution)
        gens_k = {v: MultiPoly.var(v, keep, self.domain) for v in keep}
        images = {v: gens_k[substitution.get(v, v)] for v in self.ambient_vars}
        new = [g.substitute(images, keep) for g in self.generators]
        return GradedIdeal(keep, new, self.domain)


# -- weights and Mukai vectors -----------------------------------------------


@dataclass(frozen=True)
class WeightAction:
    weights: tuple[tuple[str, int], ...]

    @classmethod
    def standard(cls) -> "WeightAction":
        """``lambda`` acting by ``+1`` on the ``x_i`` and ``-1`` on the ``y_i``."""
        return cls(tuple((v, 1 if v.startswith("x") else -1) for v in XY_VARS))

    def as_mapping(self) -> dict[str, int]:
        return dict(self.weights)

    def weight(self, exponents: Sequence[int], variables: Sequence[str] = XY_VARS) -> int:
        w = self.as_mapping()
        return sum(e * w[v] for e, v in zip(exponents, variables))

    def is_invariant(self, p: MultiPoly) -> bool:
        return all(self.weight(m, p.variables) == 0 for m in p.terms)


@dataclass(frozen=True)
class MukaiVector:
    v0: int
    v1: int
    v2: int


def mukai_pairing(v: MukaiVector, w: MukaiVector, h2: int = 4) -> int:
    """``v1 w1 H^2 - v0 w2 - v2 w0``."""
    return h2 * v.v1 * w.v1 - v.v0 * w.v2 - v.v2 * w.v0


def moduli_dimension(v: MukaiVector, h2: int = 4) -> int:
    return mukai_pairing(v, v, h2) + 2


def _decomposes(target: tuple[int, ...], parts: Sequence[tuple[int, ...]]) -> bool:
    @lru_cache(maxsize=None)
    def go(t: tuple[int, ...], start: int) -> bool:
        if not any(t):
            return True
        for k in range(start, len(parts)):
            p = parts[k]
            if all(a >= b for a, b in zip(t, p)):
                if go(tuple(a - b for a, b in zip(t, p)), k):
                    return True
        return False

    return go(target, 0)


def invariant_generation_check(action: WeightAction | None = None, max_degree: int = 4) -> bool:
    """Every weight-0 monomial of degree ``<= max_degree`` is a product of
    the quadratic invariants ``u_ij = x_i y_j``.
    """
    action = action or WeightAction.standard()
    n = len(XY_VARS)
    quad = [m for m in monomials(n, 2) if action.weight(m) == 0]
    for d in range(1, max_degree + 1):
        for m in monomials(n, d):
            if action.weight(m) == 0 and not _decomposes(m, tuple(quad)):
                return False
    return True


# -- the flag variety and the kappa-fixed cone ---------------------------------------


def segre_minors(variables: tuple[str, ...] = U_VARS, domain: Domain = QQ) -> list[MultiPoly]:
    """All 2x2 minors ``u_ij u_kl - u_kj u_il`` of the 4x4 matrix ``(u_ij)``."""
    g = {v: MultiPoly.var(v, variables, domain) for v in variables}
    out = []
    for i, k in combinations(range(4), 2):
        for j, l in combinations(range(4), 2):
            out.append(g[u(i, j)] * g[u(k, l)] - g[u(k, j)] * g[u(i, l)])
    return out


def trace_form(variables: tuple[str, ...] = U_VARS, domain: Domain = QQ) -> MultiPoly:
    out = MultiPoly.zero(variables, domain)
    for i in range(4):
        out = out + MultiPoly.var(u(i, i), variables, domain)
    return out


def flag_ideal(domain: Domain = QQ) -> GradedIdeal:
    """Incidence ``{p in h}`` in ``P^3 x P^3*`` in Segre coordinates."""
    return GradedIdeal(U_VARS, segre_minors(U_VARS, domain) + [trace_form(U_VARS, domain)], domain)


def _parametrization_rank(images: Sequence[dict], relations: Sequence[dict]) -> int:
    """``dim span(images) mod span(relations)`` by two rank computations."""
    def rows(items):
        cols: dict = {}
        out = []
        for p in items:
            out.append({cols.setdefault(m, len(cols)): c for m, c in p.items()})
        return out, cols

    all_rows, cols = rows(list(relations) + list(images))
    rel_rank = sparse_rank(all_rows[: len(relations)], QQ)
    return sparse_rank(all_rows, QQ) - rel_rank


def _mul_terms(a: dict, b: dict) -> dict:
    out: dict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            out[m] = out.get(m, 0) + ca * cb
    return {m: c for m, c in out.items() if c != 0}


def incidence_oracle(d: int) -> int:
    """Bidegree-``(d, d)`` forms on ``{sum x_i y_i = 0}`` spanned by products of ``x_i y_j``."""
    n = 8
    images = []
    for m in monomials(16, d):
        e = [0] * n
        for idx, k in enumerate(m):
            i, j = divmod(idx, 4)
            e[i] += k
            e[4 + j] += k
        images.append({tuple(e): Fraction(1)})
    q = {tuple(1 if t in (i, 4 + i) else 0 for t in range(n)): Fraction(1) for i in range(4)}
    relations = []
    if d >= 1:
        for a in monomials(4, d - 1):
            for b in monomials(4, d - 1):
                relations.append(_mul_terms({a + b: Fraction(1)}, q))
    return _parametrization_rank(images, relations)


# -- the kappa action -------------------------------------------------------------


def kappa_coordinate_action() -> Matrix:
    """``(x1..x4, y1..y4) -> (y2, y1, y4, y3, x2, x1, x4, x3)`` as a matrix."""
    images = [4 + SIGMA[i] for i in range(4)] + [SIGMA[i] for i in range(4)]
    rows = [[1 if c == images[r] else 0 for c in range(8)] for r in range(8)]
    return Matrix(rows)


def apply_coordinate_map(M: Matrix, p: MultiPoly) -> MultiPoly:
    """Substitute ``v_r -> sum_c M[r, c] v_c`` in a polynomial in ``x, y``."""
    gens = MultiPoly.gens(p.variables, p.domain)
    images = {}
    for r, v in enumerate(p.variables):
        img = MultiPoly.zero(p.variables, p.domain)
        for c in range(8):
            if M[r, c] != 0:
                img = img + gens[c].scale(M[r, c])
        images[v] = img
    return p.substitute(images)


def hyperbolic_form() -> MultiPoly:
    g = MultiPoly.gens(XY_VARS)
    out = MultiPoly.zero(XY_VARS)
    for i in range(4):
        out = out + g[i] * g[4 + i]
    return out


def kappa_action_report() -> dict:
    """κ is an involution, preserves ``sum x_i y_i`` and inverts the weights."""
    K = kappa_coordinate_action()
    involution = K @ K == Matrix.identity(8)
    preserves = apply_coordinate_map(K, hyperbolic_form()) == hyperbolic_form()
    w = [1] * 4 + [-1] * 4
    inverts = all(w[c] == -w[r] for r in range(8) for c in range(8) if K[r, c] != 0)
    return {"involution": involution, "preserves_quadric": preserves, "inverts_weights": inverts}


def induced_u_action() -> dict[str, str]:
    """Image of each ``u_ij = x_i y_j``: ``kappa(x_i) kappa(y_j) = u_{sigma(j) sigma(i)}``."""
    K = kappa_coordinate_action()
    col = {r: next(c for c in range(8) if K[r, c] != 0) for r in range(8)}
    out = {}
    for i in range(4):
        for j in range(4):
            a, b = col[i], col[4 + j]  # a is a y-index, b an x-index
            out[u(i, j)] = u(b, a - 4)
    return out


def derived_fixed_hyperplanes() -> list[tuple[str, str]]:
    """Pairs ``u = kappa(u)`` for the non-fixed coordinates, one per orbit."""
    act = induced_u_action()
    seen = set()
    out = []
    for v in U_VARS:
        w = act[v]
        if w != v and frozenset((v, w)) not in seen:
            seen.add(frozenset((v, w)))
            out.append((v, w))
    return out


def hyperplane_sets_match() -> bool:
    as_set = lambda pairs: {frozenset(p) for p in pairs}  # noqa: E731
    return as_set(derived_fixed_hyperplanes()) == as_set(STATED_FIXED_HYPERPLANES)


def kappa_fixed_ideal(domain: Domain = QQ, include_trace: bool = False) -> GradedIdeal:
    """Segre minors on the κ-fixed linear space, in the 10 surviving coordinates.

    With ``include_trace`` the incidence form is kept as well; that cuts the
    Veronese cone by a quadric and is reported separately.
    """
    gens = segre_minors(U_VARS, domain)
    if include_trace:
        gens.append(trace_form(U_VARS, domain))
    substitution = {b: a for a, b in derived_fixed_hyperplanes()}
    return GradedIdeal(U_VARS, gens, domain).restrict(substitution)


def veronese_oracle(d: int) -> int:
    """Rank of degree-``d`` monomials in the 10 coordinates under
    ``u_ij = x_i x_sigma(j)``, a symmetric parametrization of the fixed locus.
    """
    keep = kappa_fixed_ideal().ambient_vars
    images = []
    for m in monomials(len(keep), d):
        e = [0] * 4
        for v, k in zip(keep, m):
            i, j = int(v[1]) - 1, int(v[2]) - 1
            e[i] += k
            e[SIGMA[j]] += k
        images.append({tuple(e): Fraction(1)})
    return _parametrization_rank(images, [])


def interpolate_hilbert_polynomial(values: Mapping[int, int]) -> list[Fraction]:
    """Coefficients (lowest first) of the polynomial through ``values``."""
    d = sympy.Symbol("d")
    poly = sympy.Poly(sympy.interpolate([(x, values[x]) for x in sorted(values)], d), d)
    coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())]
    return coeffs + [Fraction(0)] * (len(values) - len(coeffs))


def variety_degree(values: Mapping[int, int], dimension: int) -> int:
    poly = interpolate_hilbert_polynomial(values)
    lead = poly[dimension] * factorial(dimension)
    if any(c != 0 for c in poly[dimension + 1 :]) or lead.denominator != 1:
        raise VerificationError(f"Hilbert polynomial {poly} has unexpected shape")
    return int(lead)


def verify_kappa_fixed(max_degree: int = 4) -> dict:
    """Hilbert values ``C(2d+3, 3)`` and degree 8 for the κ-fixed cone."""
    I = kappa_fixed_ideal()
    table = I.hilbert_table(max_degree)
    for d, h in table.items():
        expected = comb(2 * d + 3, 3)
        if h != expected:
            raise VerificationError(f"kappa-fixed Hilbert value at degree {d} is {h}, expected {expected}")
    if max_degree < 4:
        raise VerificationError("degree extraction needs values through degree 4")
    degree = variety_degree({d: table[d] for d in range(1, 5)}, 3)
    return {"hilbert": table, "degree": degree, "variables": len(I.ambient_vars)}


def quadric_cone_model() -> dict:
    """Rank, cone dimension, orbit dimension and quotient dimension of ``sum x_i y_i``."""
    q = hyperbolic_form()
    n = len(XY_VARS)
    S = Matrix(
        [[Fraction(q.coeff(tuple(2 if t == i else 0 for t in range(n)))) if i == j else
          Fraction(q.coeff(tuple(1 if t in (i, j) else 0 for t in range(n)))) / 2 for j in range(n)] for i in range(n)]
    )
    rank = S.rank()
    cone_dim = n - 1 if rank >= 3 else None  # an irreducible quadric hypersurface
    weights = WeightAction.standard()
    orbit_dim = 1 if any(w for _, w in weights.weights) else 0
    return {
        "rank": rank,
        "ambient_dimension": n,
        "cone_dimension": cone_dim,
        "orbit_dimension": orbit_dim,
        "quotient_dimension": cone_dim - orbit_dim if cone_dim is not None else None,
        "weight_zero": weights.is_invariant(q),
    }
