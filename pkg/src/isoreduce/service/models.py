"""Request/response models for the HTTP service and the thin CLI client."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field


class EdgeModel(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    from_: str = Field(alias="from")
    to: str
    weight: str


class GraphDocumentModel(BaseModel):
    version: int = 1
    vertices: list[str]
    edges: list[EdgeModel] = []


class ComplexValue(BaseModel):
    re: float
    im: float = 0.0


class SpectrumEntryModel(BaseModel):
    value: ComplexValue
    multiplicity: int


class ValidateRequest(BaseModel):
    graph: GraphDocumentModel
    subset: list[str]


class ValidateResponse(BaseModel):
    structural: bool
    cycle_witness: list[str] | None = None
    lambda_loop_witness: str | None = None


class ReduceRequest(BaseModel):
    graph: GraphDocumentModel
    keep: list[str]
    structural_only: bool = False
    tol: float | None = None


class ReductionReportModel(BaseModel):
    """Self-contained record of one reduction: both spectra and the correction
    multiset are included, so the verdict can be re-checked from the report
    alone."""

    input_vertices: int
    input_edges: int
    subset: list[str]
    provenance: list[list[str]]
    reduced: GraphDocumentModel
    spectrum_input: list[SpectrumEntryModel]
    spectrum_reduced: list[SpectrumEntryModel]
    correction: list[ComplexValue]
    match: bool
    unexplained: list[ComplexValue]
    tol: float


class SpectrumRequest(BaseModel):
    graph: GraphDocumentModel
    tol: float | None = None


class SpectrumResponse(BaseModel):
    entries: list[SpectrumEntryModel]
    tol: float


class EquivRequest(BaseModel):
    graph_a: GraphDocumentModel
    graph_b: GraphDocumentModel
    rule: str = "min-out-degree"


class EquivResponse(BaseModel):
    equivalent: bool
    witness: dict[str, str] | None = None
    left_subset: list[str]
    right_subset: list[str]
    left_reduced: GraphDocumentModel
    right_reduced: GraphDocumentModel


class FixedReduceRequest(BaseModel):
    graph: GraphDocumentModel
    subset: list[str]


class FixedReduceResponse(BaseModel):
    reduced: GraphDocumentModel
    closure_ok: bool
    closure_violations: list[str]
    vertex_reduced: bool


class SparsifyRequest(BaseModel):
    graph: GraphDocumentModel
    subset: list[str]


class SparsifyResponse(BaseModel):
    expanded: GraphDocumentModel
    delta: list[ComplexValue]
    added_vertices: int
    sparsifiable_input: bool


class DotRequest(BaseModel):
    graph: GraphDocumentModel


class DotResponse(BaseModel):
    dot: str


class ErrorBody(BaseModel):
    error: str
    message: str
    detail: dict = {}
