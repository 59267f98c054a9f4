"""Extended persistence of PL functions over Z2, with duality checks for sphere decompositions."""

from .persistence import Dot, Pass, PersistenceDiagram, Subdiagram, compute_diagram
from .simplicial import Decomposition, SimplicialComplex

__version__ = "0.1.0"

__all__ = [
    "Decomposition", "Dot", "Pass", "PersistenceDiagram", "SimplicialComplex", "Subdiagram",
    "compute_diagram",
]
