"""
File formats.

Digraph JSON:  {"arcs": [[u, v], ...], "n": N}       (canonical: arcs sorted, keys sorted)
Spec JSON:     {"S": [...], "T": [...], "k": K, "kind": "<cover kind>"}
Cover JSON:    {"paths": [[...], ...]}
DOT output is write-only.
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Type, TypeVar, Union

from pydantic import BaseModel, Field, ValidationError

from app.digraph import Digraph
from app.errors import DigraphError, GraphFormatError
from app.schemas import CoverKind, CoverSpec, CoverTag, PathCover
from harness.models import VerificationReport

Model = TypeVar("Model", bound=BaseModel)


class GraphPayload(BaseModel):
    n: int = Field(ge=0)
    arcs: List[Tuple[int, int]] = Field(default_factory=list)


class SpecPayload(BaseModel):
    kind: CoverTag
    k: int = Field(ge=1)
    S: List[int] = Field(min_length=1)
    T: List[int] = Field(min_length=1)


class CoverPayload(BaseModel):
    paths: List[List[int]]


def _load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise GraphFormatError(e.msg, e.lineno, e.colno) from e


def _validate(model: Type[Model], data: Any) -> Model:
    try:
        return model.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first["loc"]) or "<root>"
        raise GraphFormatError(f"{location}: {first['msg']}") from e


def _dumps(data: Dict) -> str:
    return json.dumps(data, sort_keys=True) + "\n"


def digraph_from_dict(data: Any) -> Digraph:
    payload = _validate(GraphPayload, data)
    seen = set()
    for index, (u, v) in enumerate(payload.arcs):
        if u == v:
            raise GraphFormatError(f"arcs.{index}: loop at vertex {u}")
        if not (0 <= u < payload.n and 0 <= v < payload.n):
            raise GraphFormatError(f"arcs.{index}: arc ({u}, {v}) leaves 0..{payload.n - 1}")
        if (u, v) in seen:
            raise GraphFormatError(f"arcs.{index}: parallel arc ({u}, {v})")
        seen.add((u, v))

    try:
        return Digraph(payload.n, frozenset(seen))
    except DigraphError as e:
        raise GraphFormatError(str(e)) from e


def parse_digraph(text: str) -> Digraph:
    return digraph_from_dict(_load_json(text))


def emit_digraph(digraph: Digraph) -> str:
    return _dumps(digraph.to_dict())


def spec_from_dict(data: Any) -> CoverSpec:
    payload = _validate(SpecPayload, data)
    return CoverSpec(CoverKind(payload.kind, payload.k), tuple(payload.S), tuple(payload.T))


def parse_spec(text: str) -> CoverSpec:
    return spec_from_dict(_load_json(text))


def emit_spec(spec: CoverSpec) -> str:
    return _dumps(spec.to_dict())


def cover_from_dict(data: Any) -> PathCover:
    return PathCover(_validate(CoverPayload, data).paths)


def parse_cover(text: str) -> PathCover:
    return cover_from_dict(_load_json(text))


def emit_cover(cover: PathCover) -> str:
    return _dumps(cover.to_dict())


def emit_dot(digraph: Digraph, spec: Optional[CoverSpec] = None, cover: Optional[PathCover] = None) -> str:
    """Graphviz source; sources are drawn as boxes, sinks as double circles, cover arcs in bold."""
    sources = set(spec.sources) if spec else set()
    sinks = set(spec.sinks) if spec else set()
    cover_arcs = set()
    if cover is not None:
        for path in cover.paths:
            cover_arcs.update(zip(path, path[1:]))

    lines = ["digraph {"]
    for v in digraph.vertices():
        attributes = []
        if v in sources:
            attributes.append("shape=box")
        elif v in sinks:
            attributes.append("shape=doublecircle")
        lines.append(f"  {v}" + (f" [{', '.join(attributes)}]" if attributes else "") + ";")
    for u, v in digraph.sorted_arcs():
        lines.append(f"  {u} -> {v}" + (" [style=bold]" if (u, v) in cover_arcs else "") + ";")
    lines.append("}")
    return "\n".join(lines) + "\n"


def read_text(path: Union[str, Path]) -> str:
    return Path(path).read_text(encoding="utf-8")


def load_digraph(path: Union[str, Path]) -> Digraph:
    return parse_digraph(read_text(path))


def load_spec(path: Union[str, Path]) -> CoverSpec:
    return parse_spec(read_text(path))


def load_cover(path: Union[str, Path]) -> PathCover:
    return parse_cover(read_text(path))


def emit_report(report: VerificationReport) -> str:
    return report.model_dump_json(indent=2) + "\n"


def write_report(report: VerificationReport, path: Union[str, Path]) -> None:
    Path(path).write_text(emit_report(report), encoding="utf-8")


def read_report(path: Union[str, Path]) -> VerificationReport:
    return _validate(VerificationReport, _load_json(read_text(path)))
