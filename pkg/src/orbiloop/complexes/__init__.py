"""Finite simplicial complexes and exact rational linear algebra on their cochains."""
from .linalg import CohomologyBasis, SimplicialCohomology, betti_numbers, simplicial_cohomology
from .simplicial import Simplex, SimplicialComplex
