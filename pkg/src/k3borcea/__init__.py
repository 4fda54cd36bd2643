"""Exact Hodge numbers, Euler characteristics and invariant relations for
generalized Borcea-Voisin Calabi-Yau towers Y_{d,n}, d in {2, 3, 4, 6}."""

from .algebra import CyclotomicNumber, FracPoly, LinForm, parse_linform
from .errors import (
    InconsistentInvariantsError,
    InternalConsistencyError,
    K3Error,
    ParseError,
    ResourceError,
    UnboundSymbolError,
    UsageError,
    ValidationError,
)
from .euler import (
    compare_stringy_tables,
    crosscheck,
    euler_closed_form,
    euler_from_diamond,
    euler_hodge_symbolic,
    euler_orbifold,
    euler_recurrence,
)
from .hodge import HodgeDiamond, build_hodge_poly, hodge_diamond, hodge_numbers, verify_cy_shape
from .k3data import NAMESPACES, ORDERS, make_invariants, parse_invariants, serialize_invariants
from .lefschetz import derive_lefschetz_relations
from .relations import (
    derive_relations_from_euler,
    known_relations,
    minimal_sufficient_sets,
    random_consistent_set,
    riemann_hurwitz_check,
    solve_partial,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "CyclotomicNumber",
    "FracPoly",
    "HodgeDiamond",
    "InconsistentInvariantsError",
    "InternalConsistencyError",
    "K3Error",
    "LinForm",
    "NAMESPACES",
    "ORDERS",
    "ParseError",
    "ResourceError",
    "UnboundSymbolError",
    "UsageError",
    "ValidationError",
    "build_hodge_poly",
    "compare_stringy_tables",
    "crosscheck",
    "derive_lefschetz_relations",
    "derive_relations_from_euler",
    "euler_closed_form",
    "euler_from_diamond",
    "euler_hodge_symbolic",
    "euler_orbifold",
    "euler_recurrence",
    "hodge_diamond",
    "hodge_numbers",
    "known_relations",
    "make_invariants",
    "minimal_sufficient_sets",
    "parse_invariants",
    "parse_linform",
    "random_consistent_set",
    "riemann_hurwitz_check",
    "serialize_invariants",
    "solve_partial",
    "validate",
    "verify_cy_shape",
]
