"""Finite-dimensional weak Hopf algebras on structure-constant tensors."""
from .core import WeakHopfAlgebra, check_axioms, dual, twist
from .document import emit, parse
from .errors import WhaError
from .linear_core import Field

__all__ = ["Field", "WeakHopfAlgebra", "WhaError", "check_axioms", "dual", "emit", "parse",
           "twist"]
__version__ = "0.1.0"
