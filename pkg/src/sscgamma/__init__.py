"""Exact gamma factors and distinction tests for simple supercuspidals of GL(n, E).

E/F is a quadratic extension of equal-characteristic local fields with odd
residual characteristic.  Modules, bottom-up:

- ``ff``: residue fields by discrete-log tables
- ``cyclo``: exact cyclotomic coefficients with Y = q^(1/2), X = q^(-s)
- ``lf``: truncated Laurent series, psi_E, multiplicative characters
- ``chargrp``: E^x / F^x (1 + P_E) and its dual
- ``ssc``: parameter triples, predicates, closed-form gamma factors
- ``rso``: GL(2) Whittaker / Rankin-Selberg oracle
- ``verify``: exhaustive verification suites
"""

from .cyclo import CycloRing, CycloVal, GammaMonomial, NotAMonomial, as_gamma_monomial
from .ff import FieldTable, FqElem, make_field, make_quadratic_extension
from .lf import LocalField, MultChar, Series, enumerate_chars, make_local_field
from .ssc import SSCTriple, make_triple

__all__ = [
    "CycloRing", "CycloVal", "GammaMonomial", "NotAMonomial", "as_gamma_monomial",
    "FieldTable", "FqElem", "make_field", "make_quadratic_extension",
    "LocalField", "MultChar", "Series", "enumerate_chars", "make_local_field",
    "SSCTriple", "make_triple",
]
__version__ = "0.1.0"
