"""FastAPI application exposing loaded runs to the decision-graph explorer."""

from __future__ import annotations

import tempfile
from pathlib import Path

import numpy as np
from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .. import engine
from ..cuts import apply_cut, auto_cut, gamma_ranking, manual_cut, topk_cut
from ..exceptions import InputError, StateError, UnsupportedModeError
from ..io import connection_record, parse_distance_csv, parse_points_csv, write_labels
from ..linkage import Linkage, Metric
from ..model import Dataset, DistanceMatrix
from ..projection import project_2d
from .schemas import (
    CreateSessionRequest,
    CutRequest,
    GammaResponse,
    GraphResponse,
    PartitionResponse,
    ProjectionResponse,
    SessionSummary,
)
from .sessions import Session, SessionStore, snapshot, toggle_removed, update_removed

INLINE_LABELS_MAX = 100_000


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"code": code, "message": message})


def create_app(inline_labels_max: int = INLINE_LABELS_MAX,
               labels_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="torquecluster", version="0.1.0")
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])
    store = SessionStore()
    app.state.store = store
    app.state.inline_labels_max = inline_labels_max
    app.state.labels_dir = labels_dir

    @app.exception_handler(InputError)
    async def _input_error(request: Request, exc: InputError):
        return _error(400, "invalid_input", str(exc))

    @app.exception_handler(UnsupportedModeError)
    async def _unsupported(request: Request, exc: UnsupportedModeError):
        return _error(409, "unsupported_mode", str(exc))

    @app.exception_handler(StateError)
    async def _state_error(request: Request, exc: StateError):
        return _error(409, "invalid_state", str(exc))

    @app.exception_handler(RequestValidationError)
    async def _validation(request: Request, exc: RequestValidationError):
        first = exc.errors()[0]
        where = ".".join(str(p) for p in first.get("loc", ()))
        return _error(422, "validation_error", f"{where}: {first.get('msg', 'invalid')}")

    def summary(session: Session) -> SessionSummary:
        removed, version = snapshot(session)
        partition = apply_cut(session.result, removed)
        return SessionSummary(
            session_id=session.id,
            n=session.result.sample_count,
            d=session.data.d if session.data is not None else None,
            k=partition.k,
            removed=sorted(removed),
            rounds=list(session.result.rounds),
            version=version,
            projection_available=session.projection_available,
        )

    def partition_response(session: Session, removed: frozenset[int], version: int,
                           warnings: list[str]) -> PartitionResponse:
        partition = apply_cut(session.result, removed)
        labels = partition.labels.tolist()
        labels_path = None
        if partition.n > app.state.inline_labels_max:
            directory = app.state.labels_dir or tempfile.gettempdir()
            path = Path(directory) / f"torquecluster-{session.id}-v{version}.labels"
            write_labels(path, labels)
            labels, labels_path = None, str(path)
        return PartitionResponse(
            k=partition.k,
            cluster_sizes=partition.cluster_sizes(),
            labels=labels,
            labels_path=labels_path,
            removed=sorted(removed),
            version=version,
            warnings=warnings,
        )

    @app.post("/v1/sessions", response_model=SessionSummary, status_code=201)
    def create_session(request: CreateSessionRequest):
        data = None
        matrix = None
        if request.points is not None:
            data = Dataset(np.array(request.points, dtype=np.float64))
        elif request.points_csv is not None:
            data, _ = parse_points_csv(request.points_csv, request.label_col)
        elif request.matrix is not None:
            matrix = DistanceMatrix(np.array(request.matrix, dtype=np.float64))
        else:
            matrix = parse_distance_csv(request.matrix_csv)
        metric = Metric.PRECOMPUTED if request.has_matrix_input else Metric(request.metric)
        linkage = Linkage.MEAN_REPRESENTATIVE if request.approx else Linkage(request.linkage)
        result = engine.run(data=data, matrix=matrix, metric=metric, linkage=linkage)
        session = store.create(result, data)
        return summary(session)

    @app.get("/v1/sessions", response_model=list[SessionSummary])
    def list_sessions():
        return [summary(s) for s in store.list()]

    @app.get("/v1/sessions/{session_id}", response_model=SessionSummary)
    def get_summary(session_id: str):
        session = fetch(session_id)
        if session is None:
            return _error(404, "not_found", f"unknown session {session_id}")
        return summary(session)

    def fetch(session_id: str):
        try:
            return store.get(session_id)
        except KeyError:
            return None

    @app.get("/v1/sessions/{session_id}/graph", response_model=GraphResponse)
    def get_graph(session_id: str):
        session = fetch(session_id)
        if session is None:
            return _error(404, "not_found", f"unknown session {session_id}")
        removed, version = snapshot(session)
        return GraphResponse(
            connections=[connection_record(c) for c in session.result.connections],
            removed=sorted(removed),
            rounds=list(session.result.rounds),
            version=version,
        )

    @app.post("/v1/sessions/{session_id}/cut", response_model=PartitionResponse)
    def post_cut(session_id: str, cut: CutRequest):
        session = fetch(session_id)
        if session is None:
            return _error(404, "not_found", f"unknown session {session_id}")
        connections = session.result.connections
        warnings: list[str] = []
        if cut.mode == "toggle":
            connection = session.result.connection_by_id(cut.id)
            removed, version, now_removed = toggle_removed(session, connection.id)
            if now_removed and connection.redundant:
                warnings.append(
                    f"connection {connection.id} is redundant; removing it "
                    f"cannot change the partition")
            return partition_response(session, removed, version, warnings)
        if cut.mode == "auto":
            target = auto_cut(connections)
        elif cut.mode == "topk":
            target = topk_cut(connections, cut.k)
        else:  # set
            target, warnings = manual_cut(connections, cut.ids)
        removed, version = update_removed(session, target)
        return partition_response(session, removed, version, warnings)

    @app.get("/v1/sessions/{session_id}/partition", response_model=PartitionResponse)
    def get_partition(session_id: str):
        session = fetch(session_id)
        if session is None:
            return _error(404, "not_found", f"unknown session {session_id}")
        removed, version = snapshot(session)
        return partition_response(session, removed, version, [])

    @app.get("/v1/sessions/{session_id}/projection", response_model=ProjectionResponse)
    def get_projection(session_id: str):
        session = fetch(session_id)
        if session is None:
            return _error(404, "not_found", f"unknown session {session_id}")
        if session.data is None:
            raise UnsupportedModeError(
                "projection requires raw feature vectors; this session was "
                "created from a precomputed matrix")
        coords = project_2d(session.data)
        return ProjectionResponse(points=[[float(x), float(y)] for x, y in coords])

    @app.get("/v1/sessions/{session_id}/gamma", response_model=GammaResponse)
    def get_gamma(session_id: str):
        session = fetch(session_id)
        if session is None:
            return _error(404, "not_found", f"unknown session {session_id}")
        ranking = gamma_ranking(session.result.connections)
        return GammaResponse(ranking=[r._asdict() for r in ranking])

    return app


app = create_app()
