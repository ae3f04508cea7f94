"""CSV ingestion and artifact files (labels, decision graph, hierarchy, ranking).

The decision-graph JSON document uses the same snake_case record schema as
the HTTP API, so one schema serves both file and wire. Floats are rendered
with Python's shortest round-trip representation, which re-reads to the
identical bit pattern.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .exceptions import InputError, ParseError
from .model import Connection, Dataset, DistanceMatrix, TorqueResult

DECISION_GRAPH_FORMAT = "torque-decision-graph/1"


def _split_rows(text: str) -> list[tuple[int, list[str]]]:
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        rows.append((lineno, [field.strip() for field in line.split(",")]))
    return rows


def _looks_like_header(fields: list[str]) -> bool:
    for field in fields:
        try:
            float(field)
        except ValueError:
            return True
    return False


def _parse_numeric_rows(text: str) -> tuple[list[list[float]], list[int]]:
    rows = _split_rows(text)
    if rows and _looks_like_header(rows[0][1]):
        rows = rows[1:]
    if not rows:
        raise InputError("no data rows found")
    width = len(rows[0][1])
    values: list[list[float]] = []
    linenos: list[int] = []
    for lineno, fields in rows:
        if len(fields) != width:
            raise ParseError(
                f"expected {width} fields, found {len(fields)}", line=lineno)
        try:
            row = [float(field) for field in fields]
        except ValueError as exc:
            raise ParseError(str(exc), line=lineno) from None
        for v in row:
            if not np.isfinite(v):
                raise ParseError(f"non-finite value {v!r}", line=lineno)
        values.append(row)
        linenos.append(lineno)
    return values, linenos


def parse_points_csv(text: str, label_col: int | None = None
                     ) -> tuple[Dataset, np.ndarray | None]:
    """Rows of comma-separated reals; a non-numeric first row is skipped as a
    header; label_col selects one column as integer labels."""
    values, linenos = _parse_numeric_rows(text)
    width = len(values[0])
    labels = None
    if label_col is not None:
        col = label_col if label_col >= 0 else width + label_col
        if not (0 <= col < width):
            raise InputError(f"label column {label_col} out of range for width {width}")
        labels = np.array([int(row[col]) for row in values], dtype=np.intp)
        values = [row[:col] + row[col + 1:] for row in values]
        if not values[0]:
            raise InputError("no feature columns left after removing the label column")
    return Dataset(np.array(values, dtype=np.float64)), labels


def load_points_csv(path, label_col: int | None = None
                    ) -> tuple[Dataset, np.ndarray | None]:
    return parse_points_csv(Path(path).read_text(encoding="utf-8"), label_col)


def parse_distance_csv(text: str) -> DistanceMatrix:
    values, _ = _parse_numeric_rows(text)
    matrix = np.array(values, dtype=np.float64)
    if matrix.shape[0] != matrix.shape[1]:
        raise InputError(
            f"distance matrix must be square, got {matrix.shape[0]}x{matrix.shape[1]}")
    return DistanceMatrix(matrix)


def load_distance_csv(path) -> DistanceMatrix:
    return parse_distance_csv(Path(path).read_text(encoding="utf-8"))


def load_labels(path) -> np.ndarray:
    labels = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(),
                                  start=1):
        line = line.strip()
        if not line:
            continue
        try:
            labels.append(int(line))
        except ValueError:
            raise ParseError(f"expected an integer label, found {line!r}",
                             line=lineno) from None
    if not labels:
        raise InputError("label file contains no labels")
    return np.array(labels, dtype=np.intp)


def write_labels(path, labels) -> None:
    Path(path).write_text(
        "".join(f"{int(v)}\n" for v in labels), encoding="utf-8")


def load_manual_ids(path) -> frozenset[int]:
    ids = set()
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(),
                                  start=1):
        line = line.strip()
        if not line:
            continue
        try:
            ids.add(int(line))
        except ValueError:
            raise ParseError(f"expected a connection id, found {line!r}",
                             line=lineno) from None
    return frozenset(ids)


def connection_record(c: Connection) -> dict:
    return {
        "id": int(c.id),
        "round": int(c.round),
        "from_cluster": int(c.from_cluster),
        "to_cluster": int(c.to_cluster),
        "from_mass": int(c.from_mass),
        "to_mass": int(c.to_mass),
        "distance": float(c.distance),
        "mass_product": int(c.mass_product),
        "square_distance": float(c.square_distance),
        "torque": float(c.torque),
        "redundant": bool(c.redundant),
        "sample_a": int(c.sample_a),
        "sample_b": int(c.sample_b),
    }


def decision_graph_document(result: TorqueResult) -> dict:
    return {
        "format": DECISION_GRAPH_FORMAT,
        "n": result.sample_count,
        "rounds": list(result.rounds),
        "final_cluster_count": result.final_cluster_count,
        "connections": [connection_record(c) for c in result.connections],
    }


def write_decision_graph(path, result: TorqueResult) -> None:
    Path(path).write_text(
        json.dumps(decision_graph_document(result)) + "\n", encoding="utf-8")


def write_hierarchy(path, result: TorqueResult) -> None:
    Path(path).write_text(
        "".join(f"{count}\n" for count in result.rounds), encoding="utf-8")


def write_gamma_ranking(path, ranking) -> None:
    lines = ["rank,id,torque,redundant\n"]
    lines += [f"{r.rank},{r.id},{r.torque!r},{str(r.redundant).lower()}\n"
              for r in ranking]
    Path(path).write_text("".join(lines), encoding="utf-8")
