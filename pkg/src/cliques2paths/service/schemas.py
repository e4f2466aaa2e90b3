"""Pydantic request/response models for the HTTP surface.

Artifacts travel as text in their native file formats; the service parses
and re-serializes at the boundary so clients never deal with internal ids.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field

Algorithm = Literal["exact", "2sat", "1plane", "auto"]


class SolveRequest(BaseModel):
    instance: str = Field(description="instance file content (c2p format)")
    algorithm: Algorithm = "auto"


class SolveResponse(BaseModel):
    status: Literal["feasible", "infeasible"]
    algorithm: Literal["exact", "2sat", "1plane"]
    solution: str | None = None
    warnings: list[str] = []


class VerifyRequest(BaseModel):
    instance: str
    solution: str


class ViolationModel(BaseModel):
    kind: str
    part: int | None = None
    edges: tuple[int, int] | None = None


class VerifyResponse(BaseModel):
    valid: bool
    violations: list[ViolationModel] = []


class InstanceStats(BaseModel):
    n: int
    edges: int
    crossings: int
    parts: int
    h: int
    max_crossings_per_edge: int
    part_sizes: list[int]
    link_link_crossing: bool


class StatsRequest(BaseModel):
    instance: str


class ReduceRequest(BaseModel):
    formula: str
    chain_len: int = 1


class ReduceResponse(BaseModel):
    instance: str
    witness: str
    stats: InstanceStats


class ExtractRequest(BaseModel):
    instance: str
    witness: str
    solution: str


class ExtractResponse(BaseModel):
    assignment: list[bool]  # index i holds variable i+1


class OracleRequest(BaseModel):
    formula: str


class OracleResponse(BaseModel):
    satisfiable: bool
    assignment: list[bool] | None = None


class GenInstanceRequest(BaseModel):
    seed: int = 0
    parts: int = 4
    size_min: int = 2
    size_max: int = 4
    density: float = 0.3
    cap: int = 3
    links: int = 0
    realizable: bool = False


class GenInstanceResponse(BaseModel):
    instance: str


class GenFormulaRequest(BaseModel):
    seed: int = 0
    nvars: int = 3
    nclauses: int = 1


class GenFormulaResponse(BaseModel):
    formula: str


class ErrorBody(BaseModel):
    kind: str
    message: str
