"""Binary matroid toolkit: membership, decomposition, and census for
triangle free point sets of PG(n-1, 2) with no induced independent 4-set.

Points are nonzero ints under XOR; point sets are bitmasks with bit p set
iff p is an element.  See the README for the file formats and the CLI.
"""

from .errors import FormatError, TheoremViolation
from .gf2 import Flat, LinearMap, closure, functional_kernel, rank, rref
from .matroid import (
    Matroid,
    apply_map,
    canonical_form,
    complement,
    from_points,
    induced_restriction,
    is_affine,
    parse_bmat,
    restrict_to_closure,
    serialize_bmat,
    stabilizer_flat,
    sumset,
    xor_translate,
)
from .construct import (
    Certificate,
    ag,
    alpha0,
    alpha1,
    beta0,
    beta1,
    certificate_from_json,
    circuit,
    double,
    expand0,
    expand1,
    pg,
    sag,
    units,
)
from .detect import (
    Witness,
    affine_witness,
    critical_number,
    find_ai4_violation,
    find_doubling_element,
    find_induced_is,
    find_induced_odd_circuit,
    find_triangle,
    i4tf_witness,
    recognize_affine_geometry,
    recognize_sag,
)
from .decompose import (
    AffineChain,
    DecompositionResult,
    DoubledSag,
    NotMember,
    decompose_affine_step,
    decompose_ai4,
    decompose_i4tf,
    find_special_hyperplane,
    strip_doublings,
)
from .census import (
    CensusReport,
    CrosscheckReport,
    enumerate_generated,
    exhaustive_crosscheck,
    normal_form_certificate,
    random_members,
)
from .selftest import CheckResult, SelftestReport, run_selftest

__version__ = "0.1.0"

__all__ = [
    "FormatError",
    "TheoremViolation",
    "Flat",
    "LinearMap",
    "closure",
    "functional_kernel",
    "rank",
    "rref",
    "Matroid",
    "apply_map",
    "canonical_form",
    "complement",
    "from_points",
    "induced_restriction",
    "is_affine",
    "parse_bmat",
    "restrict_to_closure",
    "serialize_bmat",
    "stabilizer_flat",
    "sumset",
    "xor_translate",
    "Certificate",
    "ag",
    "alpha0",
    "alpha1",
    "beta0",
    "beta1",
    "certificate_from_json",
    "circuit",
    "double",
    "expand0",
    "expand1",
    "pg",
    "sag",
    "units",
    "Witness",
    "affine_witness",
    "critical_number",
    "find_ai4_violation",
    "find_doubling_element",
    "find_induced_is",
    "find_induced_odd_circuit",
    "find_triangle",
    "i4tf_witness",
    "recognize_affine_geometry",
    "recognize_sag",
    "AffineChain",
    "DecompositionResult",
    "DoubledSag",
    "NotMember",
    "decompose_affine_step",
    "decompose_ai4",
    "decompose_i4tf",
    "find_special_hyperplane",
    "strip_doublings",
    "CensusReport",
    "CrosscheckReport",
    "enumerate_generated",
    "exhaustive_crosscheck",
    "normal_form_certificate",
    "random_members",
    "CheckResult",
    "SelftestReport",
    "run_selftest",
]
