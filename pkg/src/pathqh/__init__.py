"""Quasi-hereditary endomorphism algebras of monomial path algebras.

Builds the endomorphism algebra of the principal-ideal module over a finite
dimensional monomial algebra, computes its quasi-hereditary structure
(standard, costandard, and characteristic tilting modules), and verifies the
Ringel-duality isomorphism against the opposite algebra by an explicit
certificate.
"""

__version__ = "0.1.0"
