"""Exact coefficient domains, polynomials, linear algebra and elimination."""

from .domain import GF, QQ, Domain, DomainError, PrimeField, RationalField, Scalar
from .elimination import (
    discriminant,
    restrict_to_line,
    resultant,
    squarefree_decomposition,
    squarefree_part,
    subresultant_coeffs,
    subresultant_polynomial,
)
from .matrix import Matrix, sparse_rank
from .poly import MultiPoly, PolyParseError, format_poly, parse_poly

__all__ = [
    "GF",
    "QQ",
    "Domain",
    "DomainError",
    "Matrix",
    "MultiPoly",
    "PolyParseError",
    "PrimeField",
    "RationalField",
    "Scalar",
    "discriminant",
    "format_poly",
    "parse_poly",
    "restrict_to_line",
    "resultant",
    "sparse_rank",
    "squarefree_decomposition",
    "squarefree_part",
    "subresultant_coeffs",
    "subresultant_polynomial",
]
