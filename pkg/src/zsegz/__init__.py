"""Exact zero-sum combinatorics over finite abelian groups.

Counts zero-sum subsequences exactly, generates and verifies extremal
constructions, checks count congruences mod p, and computes zero-sum
constants at desk scale by symmetry-reduced exhaustive search.
"""

from ._core import IMPL as core_impl
from .constants import (
    BoundsRecord,
    ConstantResult,
    InconclusiveSearchError,
    LengthSpec,
    MissingCeilingError,
    NoTheoremError,
    SearchOutcome,
    UnsoundCeilingError,
    compute_constant,
    default_symmetry,
    find_counterexample,
    greedy_extract,
    theorem_table,
)
from .constructions import (
    ConstructionSpec,
    VerificationReport,
    build_construction,
    construction_names,
    egz_lower_construction,
    lower_gcd_construction,
    p3_construction,
    rect_lower_construction,
    verify_construction,
)
from .counting import (
    CountTable,
    Witness,
    brute_force_count,
    count_fixed_length,
    count_mod,
    count_table,
    find_zero_sum_subsequence,
    has_zero_sum_in,
)
from .groups import (
    Group,
    make_group,
    smallest_coprime_k,
    smallest_ell,
    smallest_ell_pair,
    split_factor,
)
from .sequences import (
    Seq,
    SequenceParseError,
    SymmetryMode,
    canonical_form,
    format_seq,
    from_elements,
    from_mult_vector,
    from_pairs,
    is_zero_sum,
    parse_entries,
    parse_group,
    parse_seq,
    project,
    subtract,
    translate,
)

__version__ = "0.1.0"
