"""Pydantic request/response models for the /v1 API.

Connection records carry the same snake_case fields as the decision-graph
file, so clients can consume either interchangeably.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field, model_validator


class CreateSessionRequest(BaseModel):
    points: Optional[list[list[float]]] = None
    points_csv: Optional[str] = None
    matrix: Optional[list[list[float]]] = None
    matrix_csv: Optional[str] = None
    metric: Literal["euclidean", "cosine", "precomputed"] = "euclidean"
    linkage: Literal["single", "complete", "average", "centroid",
                     "mean_representative"] = "single"
    approx: bool = False
    label_col: Optional[int] = None

    @model_validator(mode="after")
    def _one_input(self):
        supplied = [v is not None
                    for v in (self.points, self.points_csv, self.matrix, self.matrix_csv)]
        if sum(supplied) != 1:
            raise ValueError(
                "exactly one of points, points_csv, matrix, matrix_csv is required")
        return self

    @property
    def has_matrix_input(self) -> bool:
        return self.matrix is not None or self.matrix_csv is not None


class ConnectionRecord(BaseModel):
    id: int
    round: int
    from_cluster: int
    to_cluster: int
    from_mass: int
    to_mass: int
    distance: float
    mass_product: int
    square_distance: float
    torque: float
    redundant: bool
    sample_a: int
    sample_b: int


class SessionSummary(BaseModel):
    session_id: str
    n: int
    d: Optional[int] = None  # None for precomputed-only sessions
    k: int
    removed: list[int]
    rounds: list[int]
    version: int
    projection_available: bool


class GraphResponse(BaseModel):
    connections: list[ConnectionRecord]
    removed: list[int]
    rounds: list[int]
    version: int


class CutRequest(BaseModel):
    mode: Literal["auto", "topk", "toggle", "set"]
    k: Optional[int] = Field(default=None, ge=1)
    id: Optional[int] = None
    ids: Optional[list[int]] = None

    @model_validator(mode="after")
    def _mode_args(self):
        if self.mode == "topk" and self.k is None:
            raise ValueError("topk cut requires k")
        if self.mode == "toggle" and self.id is None:
            raise ValueError("toggle requires a connection id")
        if self.mode == "set" and self.ids is None:
            raise ValueError("set requires a list of connection ids")
        return self


class PartitionResponse(BaseModel):
    k: int
    cluster_sizes: list[int]
    labels: Optional[list[int]] = None
    labels_path: Optional[str] = None
    removed: list[int]
    version: int
    warnings: list[str] = []


class ProjectionResponse(BaseModel):
    points: list[list[float]]  # n rows of [x, y]


class GammaRankEntry(BaseModel):
    rank: int
    id: int
    torque: float
    redundant: bool


class GammaResponse(BaseModel):
    ranking: list[GammaRankEntry]


class ErrorBody(BaseModel):
    code: str
    message: str
