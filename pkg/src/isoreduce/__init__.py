"""Isospectral reduction, expansion and comparison of weighted digraphs."""

__version__ = "0.1.0"

from . import errors
from .document import emit_document, emit_dot, graph_to_document, parse_graph
from .equivalence import (
    BUILTIN_RULES,
    SelectionRule,
    apply_rule,
    register_rule,
    spectrally_equivalent,
    weighted_isomorphic,
)
from .graph import WeightedDigraph, build
from .ratfun import (
    Polynomial,
    RationalFunction,
    arith,
    format_weight,
    normalize,
    parse_weight,
    poly_roots,
)
from .reduction import (
    ReductionResult,
    eliminate_vertex,
    path_weight,
    reduce_structural,
    reduce_subset,
    schur_oracle,
)
from .spectrum import (
    CharEquation,
    CorrectionSet,
    SpectrumMultiset,
    char_equation,
    correction_set,
    correction_values,
    spectra_match,
    spectrum,
)
from .structural import (
    PathBundle,
    SPath,
    StructuralSet,
    enumerate_bundle,
    is_structural,
    strip_loops,
    structural_set,
)
from .transform import (
    ClosureVerdict,
    ExpansionReport,
    ReweightedPath,
    expand,
    fixed_weight_reduce,
    reweighted_bundle,
    sparsifiable,
    weight_set_closure_check,
)

__all__ = [
    "__version__",
    "errors",
    "Polynomial", "RationalFunction", "arith", "normalize", "parse_weight",
    "format_weight", "poly_roots",
    "WeightedDigraph", "build",
    "SPath", "PathBundle", "StructuralSet", "strip_loops", "is_structural",
    "structural_set", "enumerate_bundle",
    "ReductionResult", "path_weight", "reduce_structural", "eliminate_vertex",
    "reduce_subset", "schur_oracle",
    "CharEquation", "SpectrumMultiset", "CorrectionSet", "char_equation",
    "spectrum", "correction_set", "spectra_match",
    "ExpansionReport", "ReweightedPath", "ClosureVerdict", "reweighted_bundle",
    "fixed_weight_reduce", "weight_set_closure_check", "expand", "sparsifiable",
    "SelectionRule", "BUILTIN_RULES", "register_rule", "apply_rule",
    "weighted_isomorphic", "spectrally_equivalent",
    "parse_graph", "graph_to_document", "emit_document", "emit_dot",
]
