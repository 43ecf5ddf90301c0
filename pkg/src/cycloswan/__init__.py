"""Swan subgroups of cyclotomic group rings via finite-field unit reduction."""

__version__ = "0.1.0"

from .bigarith import DomainError, Factorization, factor, is_prime, multiplicative_order
from .cyclofield import FieldSpec, cyclotomic_poly, make_field
from .primroots import generate_table, least_inert_prime_direct, least_primitive_root
from .swan import Exactness, Method, SwanResult, swan_order, verify_reference_tables

__all__ = [
    "DomainError", "Exactness", "Factorization", "FieldSpec", "Method", "SwanResult",
    "cyclotomic_poly", "factor", "generate_table", "is_prime", "least_inert_prime_direct",
    "least_primitive_root", "make_field", "multiplicative_order", "swan_order",
    "verify_reference_tables",
]
