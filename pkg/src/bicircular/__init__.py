"""Deciding bicircularity of small matroids, with an MS0 formula toolkit."""

from .errors import (DefectError, FormulaSyntaxError, MatroidError, ParseError,
                     PreconditionError, UnboundVariableError)
from .matroid import Matroid, SetSystem, check_matroid, uniform
from .graphs import Multigraph, bicircular

__all__ = [
    "DefectError", "FormulaSyntaxError", "MatroidError", "ParseError",
    "PreconditionError", "UnboundVariableError", "Matroid", "SetSystem",
    "check_matroid", "uniform", "Multigraph", "bicircular",
]
