"""Exact GF(p) computations for restricted Lie-Rinehart algebras.

Submodules: :mod:`rlr.gfp` (finite-field linear algebra), :mod:`rlr.algebra`
(algebras and their axioms), :mod:`rlr.cochains` (complexes),
:mod:`rlr.cohomology` (cocycle spaces and the p >= 3 verifier),
:mod:`rlr.deformation` (formal deformations) and :mod:`rlr.cli`.
"""

from .algebra import AlgebraPresentation, LiePresentation, RLRAlgebra, check_rlr
from .fileformat import AlgebraFile, load, parse, serialize

__version__ = "0.1.0"

__all__ = [
    "AlgebraFile",
    "AlgebraPresentation",
    "LiePresentation",
    "RLRAlgebra",
    "check_rlr",
    "load",
    "parse",
    "serialize",
]
