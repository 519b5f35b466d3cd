"""Exact toolkit for the homological monodromy of plane polynomial maps.

From the braid monodromy of the discriminant curve and the sheet monodromy
of the projection to the x-line, compute vanishing cycles, Picard-Lefschetz
operators, intersection and monodromy matrices, and test whether two sets
of monodromy matrices can be simultaneously conjugate.
"""

from .braids import (
    BraidWord,
    FreeWord,
    Permutation,
    alpha_braid,
    artin_image,
    braid_permutation,
    braids_equal,
    centralizer_gens,
    conjugated_braid,
    free_reduce,
    hurwitz_act,
    invert,
    normalize_conjugator,
)
from .engine import (
    MorseData,
    block_check,
    compose_cluster,
    intersection_matrix,
    intersection_number,
    load_bundled,
    monodromy_at_infinity,
    pl_image,
    pl_matrix,
    stabilizer_shortcut,
    validate,
    vanishing_cycle,
)
from .fiber import ChainClass, SheetMonodromy, lift, word_permutation
from .obstruction import RatMatrix, conjugation_space, equivalence_verdict, parametric_det
from .poly import MPoly, sylvester_resultant
from .quadext import QuadExt

__version__ = "0.1.0"
