"""Group cohomology with ℤ, ℚ and ℚ/ℤ coefficients."""
from .bar import BarCochain, cohomologous, cohomology, is_coboundary
from .bockstein import Character, bockstein, characters, inverse_bockstein_cyclic
from .qmodz import Coefficients, QmodZ, format_rational, parse_rational
from .smith import FinAbPresentation, sparse_invariant_factors, sparse_rank
from .zxgamma import ZxGamma, ZxGammaCochain, cross_with_identity, integrate
