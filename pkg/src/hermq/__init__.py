"""Classical and q-deformed two-variable Hermite polynomials with exact checks."""

from .classical import hermite, hermite_explicit
from .polyring import Poly2
from .qcore import DomainError, IdentityViolation, SeriesDivergenceError, SeriesTruncation
from .qhermite import q_hermite, q_hermite_explicit, q_inversion
from .qinverse import c_coeff, q_inv_hermite
from .qp import qp_hermite

__all__ = [
    "Poly2",
    "DomainError",
    "IdentityViolation",
    "SeriesDivergenceError",
    "SeriesTruncation",
    "hermite",
    "hermite_explicit",
    "q_hermite",
    "q_hermite_explicit",
    "q_inversion",
    "q_inv_hermite",
    "c_coeff",
    "qp_hermite",
]

__version__ = "0.1.0"
