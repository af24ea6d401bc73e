"""Service handlers: pydantic request in, pydantic response out.

These are plain functions so the CLI can call them in-process; the FastAPI
app mounts the same functions as routes.  Library errors propagate and are
translated at the boundary (HTTP error body or CLI exit code).
"""

from __future__ import annotations

import os

from ..document import document_to_graph, emit_dot, graph_to_document
from ..equivalence import apply_rule, get_rule, spectrally_equivalent
from ..graph import WeightedDigraph
from ..reduction import ReductionResult, reduce_structural, reduce_subset
from ..spectrum import (
    DEFAULT_MATCH_TOL,
    SpectrumMultiset,
    correction_values,
    spectra_match,
    spectrum,
)
from ..structural import is_structural
from ..transform import expand, fixed_weight_reduce, sparsifiable, weight_set_closure_check
from .models import (
    ComplexValue,
    DotRequest,
    DotResponse,
    EquivRequest,
    EquivResponse,
    FixedReduceRequest,
    FixedReduceResponse,
    GraphDocumentModel,
    ReduceRequest,
    ReductionReportModel,
    SparsifyRequest,
    SparsifyResponse,
    SpectrumEntryModel,
    SpectrumRequest,
    SpectrumResponse,
    ValidateRequest,
    ValidateResponse,
)

TOL_ENV_VAR = "ISOREDUCE_TOL"


def default_tol() -> float:
    raw = os.environ.get(TOL_ENV_VAR)
    if raw:
        try:
            return float(raw)
        except ValueError:
            pass
    return DEFAULT_MATCH_TOL


def _graph(doc: GraphDocumentModel) -> WeightedDigraph:
    return document_to_graph(doc.model_dump(by_alias=True))


def _doc(g: WeightedDigraph) -> GraphDocumentModel:
    return GraphDocumentModel.model_validate(graph_to_document(g))


def _complex(z: complex) -> ComplexValue:
    return ComplexValue(re=z.real, im=z.imag)


def _entries(s: SpectrumMultiset) -> list[SpectrumEntryModel]:
    return [SpectrumEntryModel(value=_complex(v), multiplicity=m)
            for v, m in s.entries]


def handle_validate(req: ValidateRequest) -> ValidateResponse:
    g = _graph(req.graph)
    verdict = is_structural(g, req.subset)
    return ValidateResponse(
        structural=verdict.ok,
        cycle_witness=list(verdict.cycle_witness) if verdict.cycle_witness else None,
        lambda_loop_witness=verdict.lambda_loop_witness,
    )


def handle_reduce(req: ReduceRequest) -> ReductionReportModel:
    g = _graph(req.graph)
    tol = req.tol if req.tol is not None else default_tol()
    result: ReductionResult
    if req.structural_only:
        result = reduce_structural(g, req.keep)
    else:
        result = reduce_subset(g, req.keep)
    spec_in = spectrum(g, tol)
    spec_out = spectrum(result.reduced, tol)
    # the loop weights recorded at each removal explain the spectral loss even
    # when the subset was reached by sequential elimination; for a single-step
    # structural reduction they are exactly the original complement loops
    corr = correction_values(result.correction)
    verdict = spectra_match(spec_in, spec_out, corr, tol)
    return ReductionReportModel(
        input_vertices=len(g.vertices),
        input_edges=len(g.edges),
        subset=[v for v in g.vertices if v in set(req.keep)],
        provenance=[list(s) for s in result.provenance],
        reduced=_doc(result.reduced),
        spectrum_input=_entries(spec_in),
        spectrum_reduced=_entries(spec_out),
        correction=[_complex(z) for z in corr.entries],
        match=verdict.match,
        unexplained=[_complex(z) for z in verdict.unexplained],
        tol=tol,
    )


def handle_spectrum(req: SpectrumRequest) -> SpectrumResponse:
    g = _graph(req.graph)
    tol = req.tol if req.tol is not None else default_tol()
    return SpectrumResponse(entries=_entries(spectrum(g, tol)), tol=tol)


def handle_equiv(req: EquivRequest) -> EquivResponse:
    ga = _graph(req.graph_a)
    gb = _graph(req.graph_b)
    rule = get_rule(req.rule)
    verdict = spectrally_equivalent(ga, gb, rule)
    return EquivResponse(
        equivalent=verdict.equivalent,
        witness=verdict.witness,
        left_subset=list(apply_rule(rule, ga)),
        right_subset=list(apply_rule(rule, gb)),
        left_reduced=_doc(verdict.left_reduced),
        right_reduced=_doc(verdict.right_reduced),
    )


def handle_fixed_reduce(req: FixedReduceRequest) -> FixedReduceResponse:
    g = _graph(req.graph)
    reduced = fixed_weight_reduce(g, req.subset)
    closure = weight_set_closure_check(g, reduced)
    return FixedReduceResponse(
        reduced=_doc(reduced),
        closure_ok=closure.ok,
        closure_violations=list(closure.violations),
        vertex_reduced=closure.vertex_reduced,
    )


def handle_sparsify(req: SparsifyRequest) -> SparsifyResponse:
    g = _graph(req.graph)
    report = expand(g, req.subset)
    return SparsifyResponse(
        expanded=_doc(report.expanded),
        delta=[_complex(z) for z in report.delta],
        added_vertices=len(report.expanded.vertices) - len(g.vertices),
        sparsifiable_input=sparsifiable(g),
    )


def handle_dot(req: DotRequest) -> DotResponse:
    return DotResponse(dot=emit_dot(_graph(req.graph)))
