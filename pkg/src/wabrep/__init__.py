"""Exact checks for intermediate-series modules over the Lie algebras W(a, b).

W(a, b) has basis {L_i, W_i} with [L_i, L_j] = (j - i) L_{i+j},
[L_i, W_j] = (a + j + b i) W_{i+j} and [W_i, W_j] = 0.  The package provides
exact rational-function scalars, the algebra, a catalog of module families,
window verifiers (module relations, isomorphisms, duals, twists) and the
constraint machinery used to classify such modules.
"""

__version__ = "0.1.0"

from .algebra import AlgebraElement, AlgebraParams, Generator, L, W, bracket
from .catalog import (BasisIndex, LayerWindow, ModuleSpec, ModuleVector, build_module,
                      default_catalog)
from .errors import BadParams, SpecFileError, VerificationFailed, WeightAbsent, ZeroDenominator
from .report import VerificationReport
from .scalar import INFINITY, Scalar, as_scalar, is_zero, parse_scalar, sym
from .verifier import (BasisMap, check_isomorphic, check_module_window, check_w_square_zero,
                       dualize, perturb, twist_eta)

__all__ = [
    "AlgebraElement", "AlgebraParams", "Generator", "L", "W", "bracket",
    "BasisIndex", "LayerWindow", "ModuleSpec", "ModuleVector", "build_module", "default_catalog",
    "BadParams", "SpecFileError", "VerificationFailed", "WeightAbsent", "ZeroDenominator",
    "VerificationReport", "INFINITY", "Scalar", "as_scalar", "is_zero", "parse_scalar", "sym",
    "BasisMap", "check_isomorphic", "check_module_window", "check_w_square_zero", "dualize",
    "perturb", "twist_eta",
]
