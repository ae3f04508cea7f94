"""The merge loop: mass-conditional connections, components, repeat to one.

Every round performs four steps against the clusters as they existed at the
start of the round: find each cluster's 1-nearest cluster, emit a directed
connection wherever the source mass does not exceed the target mass, collapse
mutual edges and flag cycle-closing ones as redundant, then merge connected
components into fresh clusters whose mass is the sum of their parts.

The round graphs are forests whenever ties resolve by cluster id (a directed
nearest-neighbour cycle of length >= 3 would need all its hops equidistant,
which the id tie rule then breaks). Cycles can still reach the classifier
through the approximate backend's probe-limited tie handling, so redundancy
is detected rather than assumed away.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np

from .exceptions import InputError, StateError, UnsupportedModeError
from .linkage import (
    Linkage,
    Metric,
    cluster_means,
    grouped_min_merge,
    linkage_matrix,
    min_distance_pair_matrix,
    min_distance_pair_points,
    nearest_means,
    nearest_rows,
    pairwise_distances,
)
from .model import Cluster, Connection, Dataset, DistanceMatrix, TorqueResult, UnionFind


class DirectedConnection(NamedTuple):
    from_cluster: int
    to_cluster: int
    distance: float


def connection_properties(from_mass, to_mass, distance):
    """Mass product, squared distance and their product (the torque).

    Pure arithmetic over whatever numeric type the caller supplies; with
    exact rationals in, exact rationals come out.
    """
    if from_mass < 1 or to_mass < 1:
        raise InputError("cluster masses must be at least 1")
    if distance < 0:
        raise InputError("distance must be nonnegative")
    mass_product = from_mass * to_mass
    square_distance = distance * distance
    return mass_product, square_distance, mass_product * square_distance


def form_connections(clusters: list[Cluster],
                     nearest: dict[int, tuple[int, float]]) -> list[DirectedConnection]:
    """Directed edges from each cluster to its nearest when mass allows.

    A cluster connects exactly when its mass is less than or equal to the
    target's, so a globally minimum-mass cluster always emits and every round
    makes progress.
    """
    mass_by_id = {c.id: c.mass for c in clusters}
    out = []
    for cluster in clusters:
        try:
            target_id, distance = nearest[cluster.id]
        except KeyError:
            raise InputError(f"nearest map missing cluster {cluster.id}") from None
        if cluster.mass <= mass_by_id[target_id]:
            out.append(DirectedConnection(cluster.id, target_id, distance))
    return out


@dataclass
class EngineState:
    """Mutable run state; cluster list stays sorted by ascending id."""

    clusters: list[Cluster]
    union: UnionFind
    round_index: int = 0
    log: list[Connection] = field(default_factory=list)
    counts: list[int] = field(default_factory=list)
    next_cluster_id: int = 0
    next_connection_id: int = 0

    @classmethod
    def initial(cls, n: int) -> "EngineState":
        clusters = [Cluster(i, np.array([i], dtype=np.intp)) for i in range(n)]
        state = cls(clusters=clusters, union=UnionFind(n), next_cluster_id=n)
        state.counts.append(n)
        return state

    def clusters_by_id(self) -> dict[int, Cluster]:
        return {c.id: c for c in self.clusters}


def _first_member(cluster: Cluster) -> int:
    return int(cluster.members[0])


def dedupe_and_classify(directed: list[DirectedConnection], state: EngineState,
                        pair_resolver: Callable[[Cluster, Cluster], tuple[int, int]] | None = None,
                        ) -> list[Connection]:
    """Collapse mutual edges, order deterministically, flag cycle closers.

    Edges are processed in ascending (smaller endpoint id, larger endpoint id)
    order; an edge whose endpoints are already connected in the sample-level
    union is redundant (it can never split a partition) but still receives
    full torque properties for the decision graph. Non-redundant edges are
    unioned into state as a side effect, and connection ids are drawn from
    the state's counter.
    """
    if pair_resolver is None:
        pair_resolver = lambda a, b: (_first_member(a), _first_member(b))
    by_id = state.clusters_by_id()
    by_key: dict[tuple[int, int], DirectedConnection] = {}
    for edge in directed:
        key = (min(edge.from_cluster, edge.to_cluster),
               max(edge.from_cluster, edge.to_cluster))
        kept = by_key.get(key)
        # mutual pair: keep the direction whose source has the smaller id
        if kept is None or edge.from_cluster < kept.from_cluster:
            by_key[key] = edge
    records = []
    for key in sorted(by_key):
        edge = by_key[key]
        try:
            src = by_id[edge.from_cluster]
            dst = by_id[edge.to_cluster]
        except KeyError as exc:
            raise InputError(f"unknown cluster id {exc.args[0]}") from None
        mass_product, square_distance, torque = connection_properties(
            src.mass, dst.mass, edge.distance)
        rep_a, rep_b = _first_member(src), _first_member(dst)
        redundant = state.union.connected(rep_a, rep_b)
        if not redundant:
            state.union.union(rep_a, rep_b)
        sample_a, sample_b = pair_resolver(src, dst)
        records.append(Connection(
            id=state.next_connection_id,
            round=state.round_index,
            from_cluster=edge.from_cluster,
            to_cluster=edge.to_cluster,
            from_mass=src.mass,
            to_mass=dst.mass,
            distance=edge.distance,
            mass_product=mass_product,
            square_distance=square_distance,
            torque=torque,
            redundant=redundant,
            sample_a=sample_a,
            sample_b=sample_b,
        ))
        state.next_connection_id += 1
    return records


class _ExactBackend:
    """Matrix-based nearest queries; single linkage keeps an inter-cluster
    distance cache updated by the min-merge identity, other linkages rescan."""

    def __init__(self, matrix: DistanceMatrix, linkage: Linkage,
                 data: Dataset | None):
        self.entries = matrix.entries
        self.linkage = linkage
        self.points = data.points if data is not None else None
        if linkage in (Linkage.CENTROID, Linkage.MEAN_REPRESENTATIVE) and self.points is None:
            raise UnsupportedModeError(
                f"{linkage.value} linkage requires raw feature vectors")
        self.cache: np.ndarray | None = None
        if linkage is Linkage.SINGLE:
            cache = self.entries.copy()
            np.fill_diagonal(cache, np.inf)
            self.cache = cache

    def round_nearest(self, member_lists: list[np.ndarray]) -> tuple[np.ndarray, np.ndarray]:
        if self.cache is not None:
            return nearest_rows(self.cache)
        dist = linkage_matrix(self.entries, member_lists, self.linkage, self.points)
        return nearest_rows(dist)

    def realizing_pair(self, src: Cluster, dst: Cluster) -> tuple[int, int]:
        return min_distance_pair_matrix(self.entries, src.members, dst.members)

    def apply_merge(self, groups: list[np.ndarray]) -> None:
        if self.cache is not None:
            self.cache = grouped_min_merge(self.cache, groups)


class _ApproxBackend:
    """Mean-representative nearest queries through a k-d tree; the pairwise
    matrix is never materialized."""

    def __init__(self, data: Dataset):
        self.points = data.points

    def round_nearest(self, member_lists: list[np.ndarray]) -> tuple[np.ndarray, np.ndarray]:
        means = cluster_means(self.points, member_lists)
        return nearest_means(means)

    def realizing_pair(self, src: Cluster, dst: Cluster) -> tuple[int, int]:
        return min_distance_pair_points(self.points, src.members, dst.members)

    def apply_merge(self, groups: list[np.ndarray]) -> None:
        pass


def merge_round(state: EngineState, backend) -> EngineState:
    """Run one merge round in place and return the state."""
    clusters = state.clusters
    if len(clusters) < 2:
        raise StateError("merge_round requires at least 2 clusters")
    member_lists = [c.members for c in clusters]
    nn_pos, nn_dist = backend.round_nearest(member_lists)
    nearest = {c.id: (clusters[int(p)].id, float(d))
               for c, p, d in zip(clusters, nn_pos, nn_dist)}
    directed = form_connections(clusters, nearest)
    records = dedupe_and_classify(directed, state, backend.realizing_pair)
    state.log.extend(records)

    # components over this round's edges, in first-seen (= smallest id) order
    groups: dict[int, list[int]] = {}
    for pos, cluster in enumerate(clusters):
        root = state.union.find(_first_member(cluster))
        groups.setdefault(root, []).append(pos)

    new_clusters = []
    group_positions = []
    for positions in groups.values():
        group_positions.append(np.array(positions, dtype=np.intp))
        if len(positions) == 1:
            new_clusters.append(clusters[positions[0]])
        else:
            members = np.sort(np.concatenate([clusters[p].members for p in positions]))
            new_clusters.append(Cluster(state.next_cluster_id, members))
            state.next_cluster_id += 1

    order = np.argsort([c.id for c in new_clusters], kind="stable")
    state.clusters = [new_clusters[int(i)] for i in order]
    backend.apply_merge([group_positions[int(i)] for i in order])
    state.round_index += 1
    state.counts.append(len(state.clusters))
    return state


def make_backend(data: Dataset | None = None, matrix: DistanceMatrix | None = None,
                 metric: Metric = Metric.EUCLIDEAN,
                 linkage: Linkage = Linkage.SINGLE):
    """Resolve inputs and mode into a query backend (and implied exactness)."""
    metric = Metric(metric)
    linkage = Linkage(linkage)
    if linkage is Linkage.MEAN_REPRESENTATIVE:
        if data is None:
            raise UnsupportedModeError(
                "approximate mode requires raw feature vectors, not a matrix")
        if metric is not Metric.EUCLIDEAN:
            raise UnsupportedModeError(
                "approximate mode supports only the euclidean metric")
        return _ApproxBackend(data)
    if metric is Metric.PRECOMPUTED:
        if matrix is None:
            raise InputError("precomputed metric requires a distance matrix")
    else:
        if data is None:
            raise InputError("euclidean/cosine metrics require a dataset")
        matrix = pairwise_distances(data, metric)
    return _ExactBackend(matrix, linkage, data)


def run(data: Dataset | None = None, matrix: DistanceMatrix | None = None,
        metric: Metric = Metric.EUCLIDEAN,
        linkage: Linkage = Linkage.SINGLE) -> TorqueResult:
    """Cluster from n singletons down to one cluster and log every connection.

    Returns the full hierarchy: all connections of all rounds (exactly n - 1
    of them non-redundant), and the cluster count after every round.
    """
    if data is None and matrix is None:
        raise InputError("either a dataset or a distance matrix is required")
    n = data.n if data is not None else matrix.n
    if data is not None and matrix is not None and matrix.n != n:
        raise InputError("dataset and matrix sample counts differ")
    state = EngineState.initial(n)
    if n == 1:
        return TorqueResult(1, (), (1,))
    backend = make_backend(data, matrix, metric, linkage)
    while len(state.clusters) > 1:
        merge_round(state, backend)
    return TorqueResult(n, tuple(state.log), tuple(state.counts))
