"""Exact engine for homological truncation of chain complexes and the
comonoid, comodule, and coring-comodule structures it carries along."""

from .fields import GF, QQ, Field
from .matrices import (
    LinAlgError,
    Matrix,
    image_basis,
    in_column_space,
    kernel_basis,
    quotient_coordinates,
    rank,
    rref,
    solve,
)
from .graded import (
    GradedMap,
    GradedModule,
    compose,
    direct_sum,
    quotient,
    reassociator,
    reassociator_inv,
    tensor_maps,
    tensor_modules,
)
from .complexes import (
    ChainComplex,
    ChainMap,
    Homology,
    NotAChainMap,
    NotAComplex,
    Witness,
    direct_sum_complexes,
    homology,
    homology_map,
    is_local,
    is_local_equivalence,
    tensor_complexes,
    truncate,
    validate_complex,
)
from .structures import (
    AxiomReport,
    Comodule,
    Comonoid,
    Coring,
    CoringComodule,
    LeftModule,
    Monoid,
    RightModule,
    Verdict,
    check_comodule,
    check_comonoid,
    check_coring,
    check_coring_comodule,
    check_left_module,
    check_monoid,
    check_right_module,
    cofree_comodule,
    relative_tensor,
    transport_comodule,
    transport_comonoid,
    transport_coring_comodule,
    transport_monoid,
    transport_right_module,
)
from .transfer import (
    BaseStructureInvalid,
    PreservationReport,
    SearchConfig,
    SearchHit,
    induce_comodule,
    induce_comonoid,
    induce_coring_comodule,
    preservation_report,
    search_counterexample,
)
from .workspace import (
    ParseError,
    SchemaError,
    ValidationError,
    Workspace,
    emit_report,
    emit_workspace,
    parse_report,
    parse_workspace,
)

__all__ = [name for name in dir() if not name.startswith("_")]
