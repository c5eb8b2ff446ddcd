"""Exact-arithmetic engine for finitely presented noncommutative algebras.

Subpackages by theme: ``scalars`` (exact fields), ``freealg`` (words and
noncommutative polynomials), ``rewrite`` (presentations, normal forms,
confluence, presets), ``quaternion`` (generalized quaternions, the
division/split decision, the rotation engine), ``rep`` (representations:
verification, irreducibility, equivalence, classification), ``hopf``
(bialgebra/Hopf checks and actions), ``parsing`` and ``cli``.
"""

from .errors import NcalgError
from .freealg import Alphabet, NcPoly, alphabet, evaluate_on_matrices
from .linalg import Matrix
from .rewrite import (
    Presentation,
    RewriteSystem,
    basis_up_to_degree,
    check_local_confluence,
    ideal_preserved_by_linear_map,
    normal_form,
    orient,
    preset,
)
from .scalars import (
    QQ,
    Qq,
    RR,
    QNumberContext,
    Scalar,
    cyclotomic_field,
    cyclotomic_reduce,
    q_number,
)

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "Matrix",
    "NcPoly",
    "NcalgError",
    "Presentation",
    "QNumberContext",
    "QQ",
    "Qq",
    "RR",
    "RewriteSystem",
    "Scalar",
    "alphabet",
    "basis_up_to_degree",
    "check_local_confluence",
    "cyclotomic_field",
    "cyclotomic_reduce",
    "evaluate_on_matrices",
    "ideal_preserved_by_linear_map",
    "normal_form",
    "orient",
    "preset",
    "q_number",
    "__version__",
]
