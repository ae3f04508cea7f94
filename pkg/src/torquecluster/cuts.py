"""Turn a merge history into a final partition by removing connections.

Three strategies: the automatic mean threshold (remove every connection whose
mass product and squared distance both sit at or above their respective means
over the whole log), top-K by torque for a known cluster count, and an
explicit manual id set. All of them are pure functions over the immutable
log, so interactive what-if cuts never recompute distances.

Arithmetic is duck-typed: feed exact rationals and the thresholds, rankings
and cut sets come out exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .exceptions import InputError
from .model import Connection, Partition, TorqueResult, partition_from_components


def auto_cut(connections: Sequence[Connection]) -> set[int]:
    """Connections whose mass product and squared distance both reach their
    means over all logged connections, redundant ones included."""
    if not connections:
        return set()
    mean_mass = sum(c.mass_product for c in connections) / len(connections)
    mean_sq = sum(c.square_distance for c in connections) / len(connections)
    return {c.id for c in connections
            if c.mass_product >= mean_mass and c.square_distance >= mean_sq}


def _non_redundant_by_torque(connections: Sequence[Connection]) -> list[Connection]:
    return sorted((c for c in connections if not c.redundant),
                  key=lambda c: (-c.torque, c.id))


def topk_cut(connections: Sequence[Connection], k: int) -> set[int]:
    """Remove the largest-torque connections until exactly k components remain.

    Redundant connections are skipped: they close cycles, so removing them
    can never split a component. Every non-redundant connection bridges the
    spanning forest, so the answer is the top k-1 of them by descending
    torque (ties to the smaller id).
    """
    ranked = _non_redundant_by_torque(connections)
    max_k = len(ranked) + 1
    if k < 1 or k > max_k:
        raise InputError(f"target cluster count {k} outside valid range 1..{max_k}")
    return {c.id for c in ranked[:k - 1]}


def manual_cut(connections: Sequence[Connection],
               ids: Iterable[int]) -> tuple[set[int], list[str]]:
    """Validate an explicit removal set; warn about redundant selections."""
    known = {c.id: c for c in connections}
    removed = set()
    warnings = []
    for connection_id in sorted(set(int(i) for i in ids)):
        if connection_id not in known:
            raise InputError(f"unknown connection id {connection_id}")
        removed.add(connection_id)
        if known[connection_id].redundant:
            warnings.append(
                f"connection {connection_id} is redundant; removing it cannot "
                f"change the partition")
    return removed, warnings


class GammaRank(NamedTuple):
    rank: int  # 1-based
    id: int
    torque: float
    redundant: bool


def gamma_ranking(connections: Sequence[Connection]) -> list[GammaRank]:
    """All connections ordered by descending torque (ties to the smaller id)."""
    ordered = sorted(connections, key=lambda c: (-c.torque, c.id))
    return [GammaRank(rank, c.id, c.torque, c.redundant)
            for rank, c in enumerate(ordered, start=1)]


def apply_cut(result: TorqueResult, removed: Iterable[int]) -> Partition:
    """Partition = components of the non-redundant connections minus removed,
    realized through each connection's logged sample pair."""
    removed = set(int(i) for i in removed)
    for connection_id in removed:
        result.connection_by_id(connection_id)  # raises on unknown ids
    kept = [(c.sample_a, c.sample_b) for c in result.connections
            if not c.redundant and c.id not in removed]
    return partition_from_components(result.sample_count, kept)


@dataclass(frozen=True)
class CutSpec:
    """One of: auto, topk (k >= 1), manual (explicit connection ids)."""

    mode: str
    k: int | None = None
    ids: frozenset[int] | None = None

    def __post_init__(self):
        if self.mode not in ("auto", "topk", "manual"):
            raise InputError(f"unknown cut mode {self.mode!r}")
        if self.mode == "topk" and (self.k is None or self.k < 1):
            raise InputError("topk cut requires a target cluster count >= 1")
        if self.mode == "manual" and self.ids is None:
            raise InputError("manual cut requires a set of connection ids")


def execute_cut(result: TorqueResult, spec: CutSpec) -> tuple[set[int], list[str]]:
    """Resolve a cut spec against a result; returns (removed ids, warnings)."""
    if spec.mode == "auto":
        return auto_cut(result.connections), []
    if spec.mode == "topk":
        return topk_cut(result.connections, spec.k), []
    return manual_cut(result.connections, spec.ids)
