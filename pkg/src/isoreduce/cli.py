"""Command-line front end.

The CLI is a thin client over the service request/response models: by default
each subcommand calls the service handlers in-process, and ``--server URL``
routes the same requests over HTTP instead.  Every library error maps to a
distinct exit code (see errors.py); `validate` exits 2 on a non-structural
set and `equiv` exits 3 on non-equivalent inputs.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import (
    EXIT_NOT_EQUIVALENT,
    EXIT_NOT_STRUCTURAL,
    InputOutputError,
    IsoreduceError,
    ServerError,
    error_from_name,
)
from .service import handlers
from .service.models import (
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
    SpectrumRequest,
    SpectrumResponse,
    ValidateRequest,
    ValidateResponse,
)

_ENDPOINTS = {
    "validate": ("/validate", handlers.handle_validate, ValidateResponse),
    "reduce": ("/reduce", handlers.handle_reduce, ReductionReportModel),
    "spectrum": ("/spectrum", handlers.handle_spectrum, SpectrumResponse),
    "equiv": ("/equiv", handlers.handle_equiv, EquivResponse),
    "fixed-reduce": ("/fixed-reduce", handlers.handle_fixed_reduce, FixedReduceResponse),
    "sparsify": ("/sparsify", handlers.handle_sparsify, SparsifyResponse),
    "dot": ("/dot", handlers.handle_dot, DotResponse),
}


def _call(op: str, request, server: str | None):
    path, handler, response_model = _ENDPOINTS[op]
    if server is None:
        return handler(request)
    import httpx

    try:
        resp = httpx.post(server.rstrip("/") + path,
                          json=request.model_dump(by_alias=True), timeout=300.0)
    except httpx.HTTPError as exc:
        raise ServerError(f"request to {server} failed: {exc}") from None
    if resp.status_code == 422 and resp.headers.get("content-type", "").startswith("application/json"):
        body = resp.json()
        if "error" in body:
            raise error_from_name(body["error"], body.get("message", ""))
    if resp.status_code != 200:
        raise ServerError(f"server returned status {resp.status_code}: {resp.text[:200]}")
    return response_model.model_validate(resp.json())


def _load_document(path: str) -> GraphDocumentModel:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputOutputError(f"cannot read {path}: {exc.strerror}") from None
    # parse through the document module for precise diagnostics, then wrap
    from .document import parse_document

    return GraphDocumentModel.model_validate(parse_document(text))


def _subset(raw: str) -> list[str]:
    return [part for part in (s.strip() for s in raw.split(",")) if part]


def format_complex(z: complex | ComplexValue) -> str:
    if isinstance(z, ComplexValue):
        z = complex(z.re, z.im)
    re = round(z.real, 10) + 0.0
    im = round(z.imag, 10) + 0.0
    if im == 0:
        return f"{re:.10g}"
    sign = "+" if im > 0 else "-"
    return f"{re:.10g}{sign}{abs(im):.10g}i"


def _print_json(model) -> None:
    print(json.dumps(model.model_dump(by_alias=True), indent=2))


def cmd_validate(args) -> int:
    req = ValidateRequest(graph=_load_document(args.file), subset=_subset(args.set))
    resp = _call("validate", req, args.server)
    if resp.structural:
        print("ok")
        return 0
    if resp.cycle_witness:
        print(f"not structural: complement cycle {' -> '.join(resp.cycle_witness)}")
    else:
        print(f"not structural: spectral-variable loop at {resp.lambda_loop_witness}")
    return EXIT_NOT_STRUCTURAL


def cmd_reduce(args) -> int:
    req = ReduceRequest(graph=_load_document(args.file), keep=_subset(args.keep),
                        structural_only=args.structural_only, tol=args.tol)
    resp = _call("reduce", req, args.server)
    payload = json.dumps(resp.model_dump(by_alias=True), indent=2)
    if args.report:
        try:
            with open(args.report, "w", encoding="utf-8") as fh:
                fh.write(payload + "\n")
        except OSError as exc:
            raise InputOutputError(f"cannot write {args.report}: {exc.strerror}") from None
    print(payload)
    return 0


def cmd_spectrum(args) -> int:
    req = SpectrumRequest(graph=_load_document(args.file), tol=args.tol)
    resp = _call("spectrum", req, args.server)
    for entry in resp.entries:
        print(f"{format_complex(entry.value)} {entry.multiplicity}")
    return 0


def cmd_equiv(args) -> int:
    req = EquivRequest(graph_a=_load_document(args.file_a),
                       graph_b=_load_document(args.file_b), rule=args.rule)
    resp = _call("equiv", req, args.server)
    if not resp.equivalent:
        print("not equivalent")
        return EXIT_NOT_EQUIVALENT
    print("equivalent")
    for src, dst in (resp.witness or {}).items():
        print(f"{src} -> {dst}")
    return 0


def cmd_fixed_reduce(args) -> int:
    req = FixedReduceRequest(graph=_load_document(args.file), subset=_subset(args.set))
    resp = _call("fixed-reduce", req, args.server)
    _print_json(resp)
    return 0


def cmd_sparsify(args) -> int:
    req = SparsifyRequest(graph=_load_document(args.file), subset=_subset(args.set))
    resp = _call("sparsify", req, args.server)
    _print_json(resp)
    return 0


def cmd_dot(args) -> int:
    req = DotRequest(graph=_load_document(args.file))
    resp = _call("dot", req, args.server)
    sys.stdout.write(resp.dot)
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="isoreduce",
        description="Isospectral reduction, expansion and comparison of weighted digraphs.")
    parser.add_argument("--server", default=None,
                        help="base URL of a running isoreduce service; default is in-process")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check whether a vertex set is structural")
    p.add_argument("file")
    p.add_argument("--set", required=True, help="comma-separated vertex labels")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("reduce", help="reduce a graph onto a vertex subset")
    p.add_argument("file")
    p.add_argument("--keep", required=True, help="comma-separated vertex labels to keep")
    p.add_argument("--structural-only", action="store_true",
                   help="require the set to be structural (single-step reduction)")
    p.add_argument("--report", default=None, help="also write the report to this file")
    p.add_argument("--tol", type=float, default=None)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("spectrum", help="print eigenvalues with multiplicities")
    p.add_argument("file")
    p.add_argument("--tol", type=float, default=None)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("equiv", help="test spectral equivalence under a selection rule")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--rule", default="min-out-degree")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("fixed-reduce", help="reduce while keeping the original weight set")
    p.add_argument("file")
    p.add_argument("--set", required=True)
    p.set_defaults(func=cmd_fixed_reduce)

    p = sub.add_parser("sparsify", help="expand so bundle paths become independent")
    p.add_argument("file")
    p.add_argument("--set", required=True)
    p.set_defaults(func=cmd_sparsify)

    p = sub.add_parser("dot", help="emit the graph in DOT format")
    p.add_argument("file")
    p.set_defaults(func=cmd_dot)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except IsoreduceError as exc:
        print(f"error: {exc.name}: {exc}", file=sys.stderr)
        return exc.exit_code


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
