"""Canonical text rendering of polynomials and operators.

The printed form is stable (graded-lex, leading terms first) and round-trips
through the expression parser: u1, k, nu3 name ring symbols and d2 names the
derivative in u2.
"""

from __future__ import annotations

from .poly import Poly, grlex_key
from .weyl import WeylOp

__all__ = ["print_canonical", "format_poly"]


def _power(name: str, exp: int) -> str:
    return name if exp == 1 else f"{name}^{exp}"


def _term_body(ring, coeff, monomial, alpha) -> str:
    factors = []
    nv = ring.num_vars
    for pos, exp in enumerate(monomial):
        if exp:
            factors.append(_power(ring.names[pos], exp))
    for pos, exp in enumerate(alpha):
        if exp:
            factors.append(_power(f"d{pos + 1}", exp))
    magnitude = abs(coeff)
    if magnitude != 1 or not factors:
        factors.insert(0, str(magnitude))
    return " ".join(factors)


def _render(ring, flat_terms) -> str:
    if not flat_terms:
        return "0"
    pieces = []
    for index, (coeff, monomial, alpha) in enumerate(flat_terms):
        body = _term_body(ring, coeff, monomial, alpha)
        if index == 0:
            pieces.append(f"-{body}" if coeff < 0 else body)
        else:
            pieces.append(f"- {body}" if coeff < 0 else f"+ {body}")
    return " ".join(pieces)


def print_canonical(op: WeylOp) -> str:
    """Normal form of an operator, one flat term per rational coefficient."""
    flat = []
    for alpha in sorted(op.terms, key=grlex_key, reverse=True):
        for monomial, coeff in op.terms[alpha].sorted_terms():
            flat.append((coeff, monomial, alpha))
    return _render(op.ring, flat)


def format_poly(p: Poly) -> str:
    none = (0,) * p.ring.num_vars
    flat = [(coeff, monomial, none) for monomial, coeff in p.sorted_terms()]
    return _render(p.ring, flat)
