"""Exact homological algebra for finite-dimensional algebras and finite additive categories."""

from .linalg import QQ, Field, InputError, Mat, generic_invertibility, solve, subspace
from .algebra import Algebra, ValidationError, build_algebra, nakayama, path_algebra_linear
from .modules import (Module, Morphism, dual_module, ext_dim, hom_basis, homological_dims,
                      iso_test, syzygy, ar_translate)
from .nakayama import enumerate_indecomposables, uniserial
from .lincat import (LinCat, functor_module, homological_report, make_category,
                     minimal_resolution, quotient_by, weak_kernel)

__version__ = "0.1.0"

__all__ = [
    "QQ", "Field", "InputError", "Mat", "generic_invertibility", "solve", "subspace",
    "Algebra", "ValidationError", "build_algebra", "nakayama", "path_algebra_linear",
    "Module", "Morphism", "dual_module", "ext_dim", "hom_basis", "homological_dims",
    "iso_test", "syzygy", "ar_translate", "enumerate_indecomposables", "uniserial",
    "LinCat", "functor_module", "homological_report", "make_category",
    "minimal_resolution", "quotient_by", "weak_kernel",
]
