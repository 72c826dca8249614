"""Independent reference computations and the identity-checking harness."""
from .fock import gram_schmidt_genbin, laguerre_poly, p_basis, q_basis
from .identities import SUITES, Report, check_identity
from .jack import jack_polynomial, lassalle_expansion, lassalle_oracle

__all__ = [
    "gram_schmidt_genbin", "laguerre_poly", "p_basis", "q_basis",
    "SUITES", "Report", "check_identity",
    "jack_polynomial", "lassalle_expansion", "lassalle_oracle",
]
