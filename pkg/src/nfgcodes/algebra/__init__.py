"""Exact arithmetic: prime fields, vector alphabets, Q(w_p), sparse polynomials."""

from .cyclo import CycloRational, omega_pow
from .fields import Alphabet, PrimeField, Vec, inner_product, is_prime
from .poly import Polynomial, poly_scale_equal, poly_substitute


def exact_name(position: int, symbol_label: str, dual: bool = False) -> str:
    """Indeterminate for symbol value ``symbol_label`` at ``position``: x[k][a]."""
    return f"{'X' if dual else 'x'}[{position}][{symbol_label}]"


def complete_name(element: int, dual: bool = False) -> str:
    """Indeterminate for a field element in complete enumerators: x[c]."""
    return f"{'X' if dual else 'x'}[{element}]"


def hamming_names(dual: bool = False) -> tuple[str, str]:
    """(nonzero marker, zero marker) for Hamming enumerators."""
    return ("X", "Y") if dual else ("x", "y")


def undual_name(name: str) -> str:
    """Map a dual (X-prefixed) indeterminate back to the primal namespace."""
    if name.startswith("X"):
        return "x" + name[1:]
    if name == "Y":
        return "y"
    return name


__all__ = [
    "Alphabet",
    "CycloRational",
    "Polynomial",
    "PrimeField",
    "Vec",
    "complete_name",
    "exact_name",
    "hamming_names",
    "inner_product",
    "is_prime",
    "omega_pow",
    "poly_scale_equal",
    "poly_substitute",
    "undual_name",
]
