"""holonorm: asymptotic normality analysis for coefficient triangles of
polynomial sequences satisfying linear recurrences with polynomial
coefficients."""

from .polys import (
    Poly,
    RatFunc,
    RootEnclosure,
    isolate_root,
    poly_arith,
    poly_gcd,
    real_root_count_with_multiplicity,
    squarefree_decomposition,
    squarefree_part,
    sturm_count,
)
from .linalg import nullspace_ff
from .bivar import BiFrac, BiPoly
from .ore import (
    OrePoly,
    Recurrence,
    derivative_closure,
    lclm,
    operator_text,
    ore_apply,
    ore_mul,
    parse_operator_text,
)

__version__ = "0.1.0"
