"""Exact computations for Koszul algebras kQ/I: resolutions, comultiplication
constants, Hochschild cohomology with cup products, and the Koszul dual."""
from .algebra import Algebra, FiniteDim, NotDecidedBy, TruncationError
from .comult import Comultiplication, ComultSlice
from .hochschild import Cochain, CohomologyClass, Hochschild, NotCocycle
from .koszul_dual import ExtElement, KoszulDual
from .linalg import BACKEND, Matrix, NotInSpan, Subspace
from .presentation import Presentation, PresentationError, TensorElement, parse, read, serialize
from .resolution import (ExactnessFailure, KoszulAssumptionViolated, Resolution, SpanMismatch,
                         compute_levels, override_basis, verify_exactness)
from .scalars import QQ, Field, FieldMismatch

__all__ = [
    "Algebra", "FiniteDim", "NotDecidedBy", "TruncationError",
    "Comultiplication", "ComultSlice",
    "Cochain", "CohomologyClass", "Hochschild", "NotCocycle",
    "ExtElement", "KoszulDual",
    "BACKEND", "Matrix", "NotInSpan", "Subspace",
    "Presentation", "PresentationError", "TensorElement", "parse", "read", "serialize",
    "ExactnessFailure", "KoszulAssumptionViolated", "Resolution", "SpanMismatch",
    "compute_levels", "override_basis", "verify_exactness",
    "QQ", "Field", "FieldMismatch",
]
