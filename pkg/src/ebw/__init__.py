"""Steiner 2-designs, pairwise balanced designs and the one-ebit quantum LDPC codes they define."""

__version__ = "0.1.0"

from .designs import (
    Design,
    PbdReport,
    construct_ag_lines,
    construct_pg_lines,
    construct_projective_plane,
    construct_sts,
    incidence_matrix,
    pbd_necessary_conditions,
    verify_pbd,
)
from .eaqecc import (
    BoundsReport,
    EaqeccParams,
    audit_bounds,
    characterize,
    dimension_bounds,
    one_ebit_structure_check,
    pbd_equivalence_check,
    quantum_min_distance,
    regular_admissibility,
)
from .errors import AdmissibilityError, InfeasibleError, ParseError, StructuralError
from .evenfree import EvenFreenessReport, classical_min_distance, count_pasch, min_even_configuration
from .gf2 import BinaryMatrix, gram, nullspace_basis, rank
from .tanner import CycleReport, count_six_cycles, girth, has_four_cycle, predicted_six_cycles
