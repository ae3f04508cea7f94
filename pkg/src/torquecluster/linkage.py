"""Pairwise metrics, inter-cluster distances and nearest-cluster queries.

Two query modes exist. Exact mode reduces blocks of the full pairwise
distance matrix under the chosen linkage. Approximate mode represents every
cluster by its feature mean and finds the nearest mean through a k-d tree,
which never materializes the n-by-n matrix.

Determinism contract: all reductions run in fixed index order, distances are
compared exactly (no epsilon), and equidistant candidates resolve to the
smallest cluster id.
"""

from __future__ import annotations

from enum import Enum

import numpy as np
from scipy.spatial import cKDTree
from scipy.spatial.distance import cdist

from .exceptions import InputError, StateError, UnsupportedModeError
from .model import Cluster, Dataset, DistanceMatrix

# Above this block size the min-distance member pair search switches from a
# dense cdist scan to a k-d tree on the larger member set.
_BRUTE_PAIR_LIMIT = 262_144

# Probe width for nearest-mean queries; exact ties beyond this many
# equidistant neighbours resolve in index order rather than by smallest id.
_MEAN_PROBE = 8


class Metric(str, Enum):
    EUCLIDEAN = "euclidean"
    COSINE = "cosine"
    PRECOMPUTED = "precomputed"


class Linkage(str, Enum):
    SINGLE = "single"
    COMPLETE = "complete"
    AVERAGE = "average"
    CENTROID = "centroid"
    MEAN_REPRESENTATIVE = "mean_representative"


def pairwise_distances(data: Dataset, metric: Metric = Metric.EUCLIDEAN) -> DistanceMatrix:
    """Dense pairwise distances under the euclidean or cosine metric."""
    metric = Metric(metric)
    if metric is Metric.PRECOMPUTED:
        raise UnsupportedModeError("precomputed metric requires a user-supplied matrix")
    pts = data.points
    if metric is Metric.COSINE:
        norms = np.sqrt((pts * pts).sum(axis=1))
        zero = np.nonzero(norms == 0.0)[0]
        if zero.size:
            raise InputError(f"cosine metric undefined for zero-norm row {int(zero[0])}")
        entries = cdist(pts, pts, "cosine")
        np.maximum(entries, 0.0, out=entries)  # clip -1ulp artifacts
    else:
        entries = cdist(pts, pts)
    np.fill_diagonal(entries, 0.0)
    return DistanceMatrix(entries)


def cluster_means(points: np.ndarray, member_lists: list[np.ndarray]) -> np.ndarray:
    """Feature mean of every cluster, one row per cluster.

    Grouped reduction in member-index order, so the result is identical no
    matter how the clusters were assembled.
    """
    sizes = np.array([m.size for m in member_lists], dtype=np.float64)
    perm = np.concatenate(member_lists)
    starts = np.cumsum([0] + [m.size for m in member_lists[:-1]])
    sums = np.add.reduceat(points[perm], starts, axis=0)
    return sums / sizes[:, None]


def linkage_block(sub: np.ndarray, linkage: Linkage):
    if linkage is Linkage.SINGLE:
        return sub.min()
    if linkage is Linkage.COMPLETE:
        return sub.max()
    if linkage is Linkage.AVERAGE:
        return sub.sum() / sub.size
    raise UnsupportedModeError(f"linkage {linkage.value} is not matrix-reducible")


def cluster_distance(a: Cluster, b: Cluster, matrix: DistanceMatrix | None,
                     linkage: Linkage = Linkage.SINGLE,
                     data: Dataset | None = None) -> float:
    """Inter-cluster distance between two disjoint, nonempty clusters."""
    linkage = Linkage(linkage)
    if a.mass == 0 or b.mass == 0:
        raise InputError("clusters must be nonempty")
    if linkage in (Linkage.CENTROID, Linkage.MEAN_REPRESENTATIVE):
        if data is None:
            raise UnsupportedModeError(
                f"{linkage.value} linkage requires raw feature vectors")
        ma = data.points[a.members].sum(axis=0) / a.mass
        mb = data.points[b.members].sum(axis=0) / b.mass
        return float(np.sqrt(((ma - mb) ** 2).sum()))
    if matrix is None:
        raise UnsupportedModeError(f"{linkage.value} linkage requires a distance matrix")
    sub = matrix.entries[np.ix_(a.members, b.members)]
    return float(linkage_block(sub, linkage))


def linkage_matrix(entries: np.ndarray, member_lists: list[np.ndarray],
                   linkage: Linkage, points: np.ndarray | None = None) -> np.ndarray:
    """All inter-cluster distances as an L-by-L matrix (diagonal = +inf)."""
    if linkage in (Linkage.CENTROID, Linkage.MEAN_REPRESENTATIVE):
        if points is None:
            raise UnsupportedModeError(
                f"{linkage.value} linkage requires raw feature vectors")
        means = cluster_means(points, member_lists)
        out = cdist(means, means)
    else:
        perm = np.concatenate(member_lists)
        starts = np.cumsum([0] + [m.size for m in member_lists[:-1]])
        if linkage is Linkage.SINGLE:
            out = np.minimum.reduceat(
                np.minimum.reduceat(entries[perm], starts, axis=0)[:, perm],
                starts, axis=1)
        elif linkage is Linkage.COMPLETE:
            out = np.maximum.reduceat(
                np.maximum.reduceat(entries[perm], starts, axis=0)[:, perm],
                starts, axis=1)
        elif linkage is Linkage.AVERAGE:
            sums = np.add.reduceat(
                np.add.reduceat(entries[perm], starts, axis=0)[:, perm],
                starts, axis=1)
            sizes = np.array([m.size for m in member_lists], dtype=np.float64)
            out = sums / np.outer(sizes, sizes)
        else:
            raise UnsupportedModeError(f"unknown linkage {linkage!r}")
    np.fill_diagonal(out, np.inf)
    return out


def grouped_min_merge(matrix: np.ndarray, groups: list[np.ndarray]) -> np.ndarray:
    """Collapse a single-linkage distance matrix along merge groups.

    Exploits d(A|B, C) = min(d(A,C), d(B,C)), so merged rounds never rescan
    member pairs.
    """
    perm = np.concatenate(groups)
    starts = np.cumsum([0] + [g.size for g in groups[:-1]])
    out = np.minimum.reduceat(
        np.minimum.reduceat(matrix[perm], starts, axis=0)[:, perm],
        starts, axis=1)
    np.fill_diagonal(out, np.inf)
    return out


def nearest_rows(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-row argmin and value; first occurrence wins, so with rows ordered
    by ascending cluster id ties resolve to the smallest id."""
    pos = matrix.argmin(axis=1)
    return pos, matrix[np.arange(matrix.shape[0]), pos]


def _sorted_by_id(clusters: list[Cluster]) -> list[Cluster]:
    ids = [c.id for c in clusters]
    if len(set(ids)) != len(ids):
        raise InputError("cluster ids must be unique")
    return sorted(clusters, key=lambda c: c.id)


def nearest_clusters_exact(clusters: list[Cluster], matrix: DistanceMatrix,
                           linkage: Linkage = Linkage.SINGLE,
                           data: Dataset | None = None) -> dict[int, tuple[int, float]]:
    """1-nearest cluster and distance for every cluster, keyed by cluster id."""
    if len(clusters) < 2:
        raise StateError("nearest-cluster query needs at least 2 clusters")
    ordered = _sorted_by_id(clusters)
    members = [c.members for c in ordered]
    entries = matrix.entries if matrix is not None else None
    points = data.points if data is not None else None
    dist = linkage_matrix(entries, members, Linkage(linkage), points)
    pos, val = nearest_rows(dist)
    return {c.id: (ordered[int(p)].id, float(v))
            for c, p, v in zip(ordered, pos, val)}


def nearest_means(means: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Nearest other row for every row of a means matrix, via a k-d tree.

    Returns (neighbour position, distance); distances are recomputed from the
    means with a fixed formula so results do not depend on index internals.
    """
    count = means.shape[0]
    probe = min(count, _MEAN_PROBE)
    tree = cKDTree(means)
    _, idx = tree.query(means, k=probe)
    if probe == 1:
        idx = idx[:, None]
    nn = np.empty(count, dtype=np.intp)
    nn_dist = np.empty(count)
    for i in range(count):
        candidates = np.unique(idx[i][idx[i] != i])
        d = np.sqrt(((means[candidates] - means[i]) ** 2).sum(axis=1))
        best = d.min()
        nn[i] = candidates[d == best].min()  # smallest position among exact ties
        nn_dist[i] = best
    return nn, nn_dist


def nearest_clusters_approx(clusters: list[Cluster],
                            data: Dataset | None) -> dict[int, tuple[int, float]]:
    """Nearest cluster by mean representative under the euclidean metric."""
    if data is None:
        raise UnsupportedModeError("approximate mode requires raw feature vectors")
    if len(clusters) < 2:
        raise StateError("nearest-cluster query needs at least 2 clusters")
    ordered = _sorted_by_id(clusters)
    means = cluster_means(data.points, [c.members for c in ordered])
    nn, nn_dist = nearest_means(means)
    return {c.id: (ordered[int(p)].id, float(v))
            for c, p, v in zip(ordered, nn, nn_dist)}


def min_distance_pair_matrix(entries: np.ndarray, members_a: np.ndarray,
                             members_b: np.ndarray) -> tuple[int, int]:
    """Minimum-distance member pair between two clusters, from the matrix."""
    sub = entries[np.ix_(members_a, members_b)]
    flat = int(sub.argmin())
    return int(members_a[flat // members_b.size]), int(members_b[flat % members_b.size])


def min_distance_pair_points(points: np.ndarray, members_a: np.ndarray,
                             members_b: np.ndarray) -> tuple[int, int]:
    """Minimum-distance member pair between two clusters, from raw points."""
    if members_a.size == 1 and members_b.size == 1:
        return int(members_a[0]), int(members_b[0])
    if members_a.size * members_b.size <= _BRUTE_PAIR_LIMIT:
        sub = cdist(points[members_a], points[members_b])
        flat = int(sub.argmin())
        return (int(members_a[flat // members_b.size]),
                int(members_b[flat % members_b.size]))
    # query the smaller side against a tree on the larger side
    if members_a.size <= members_b.size:
        tree = cKDTree(points[members_b])
        d, j = tree.query(points[members_a])
        i = int(d.argmin())
        return int(members_a[i]), int(members_b[int(j[i])])
    b, a = min_distance_pair_points(points, members_b, members_a)
    return a, b
