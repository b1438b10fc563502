from pydantic import BaseModel, Field
from typing import Dict, List, Optional, Tuple, Union

from app.schemas import CoverTag


class GraphModel(BaseModel):
    n: int = Field(..., ge=0, le=64, description="Vertex count; vertices are 0..n-1")
    arcs: List[Tuple[int, int]] = Field(
        default_factory=list,
        description="Ordered pairs (u, v), no loops or repeats",
        examples=[[[0, 1], [1, 0], [1, 2], [2, 1], [0, 2], [2, 0]]]
    )


class SpecModel(BaseModel):
    kind: CoverTag = Field(..., description="Cover kind")
    k: int = Field(..., ge=1, description="Number of paths")
    S: List[int] = Field(..., min_length=1, description="Sources (one vertex for one-to-many and one-to-one)")
    T: List[int] = Field(..., min_length=1, description="Sinks (one vertex for one-to-one)")


class SolveRequest(BaseModel):
    graph: GraphModel
    kind: CoverTag
    S: List[int] = Field(..., min_length=1)
    T: List[int] = Field(..., min_length=1)
    k: Optional[int] = Field(
        default=None,
        ge=1,
        description="Path count; required for one-to-one, otherwise read from S or T"
    )
    method: str = Field(
        default="constructive",
        pattern="^(exact|constructive)$",
        description="constructive follows the proofs, exact runs the search oracle"
    )


class SolveResponse(BaseModel):
    cover: Optional[List[List[int]]] = Field(description="The paths, or null when none exists")
    accepted: bool = Field(description="Whether verify_cover accepted the cover")
    method: str
    latency_ms: Optional[float] = Field(default=None, description="Solver time in milliseconds")


class VerifyRequest(BaseModel):
    graph: GraphModel
    spec: SpecModel
    paths: List[List[int]]


class VerifyResponse(BaseModel):
    accepted: bool
    reason: Optional[str] = Field(default=None, description="BadArc, BadEndpoint, Overlap, Uncovered or WrongCount")
    detail: Optional[str] = None


class DegreesResponse(BaseModel):
    out_degrees: List[int]
    in_degrees: List[int]
    delta0: int = Field(description="Minimum semi-degree")
    ore_min: Union[int, str] = Field(description="Minimum d+(x) + d-(y) over non-arcs, or 'inf'")


class ExtremalResponse(BaseModel):
    family: str
    graph: Dict
    spec: Dict
    claimed_delta0: int
    claimed_ore_min: Optional[int] = None
    notes: List[str] = Field(default_factory=list)
    dot: str


class HealthResponse(BaseModel):
    status: str = Field(description="Service health status")
    version: str
    oracle_cap: int = Field(description="Admissible (S,T) choices enumerated before sampling")
    oracle_max_order: int = Field(description="Largest order the exact oracle is run at")
