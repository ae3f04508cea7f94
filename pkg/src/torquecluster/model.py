"""Domain types and the sample-level partition bookkeeping.

Everything here is a plain value type: once constructed, instances are never
mutated, so they can be shared freely across threads and service requests.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import InputError

SYMMETRY_TOL = 1e-9


@dataclass(frozen=True)
class Dataset:
    """n samples by d real-valued features."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim != 2:
            raise InputError(f"points must be a 2-d array, got shape {pts.shape}")
        if pts.shape[0] < 1:
            raise InputError("dataset must contain at least one sample")
        if not np.all(np.isfinite(pts)):
            raise InputError("dataset contains non-finite values")
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]


@dataclass(frozen=True)
class MatrixViolation:
    """First constraint violation found in a candidate distance matrix."""

    kind: str  # "symmetry" | "diagonal" | "negative" | "non_finite"
    index: tuple[int, int]
    message: str


def validate_distance_matrix(entries: np.ndarray) -> MatrixViolation | None:
    """Check symmetry (tolerance 1e-9), zero diagonal and nonnegativity.

    Returns None when the matrix is acceptable, otherwise a report naming the
    first violating index. Non-square input is an InputError, not a report.
    """
    m = np.asarray(entries, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InputError(f"distance matrix must be square, got shape {m.shape}")
    bad = ~np.isfinite(m)
    if bad.any():
        i, j = np.argwhere(bad)[0]
        return MatrixViolation("non_finite", (int(i), int(j)),
                               f"non-finite entry at ({i}, {j})")
    diag = np.diagonal(m)
    nz = np.nonzero(diag)[0]
    if nz.size:
        i = int(nz[0])
        return MatrixViolation("diagonal", (i, i),
                               f"diagonal entry at ({i}, {i}) is {diag[i]!r}, expected 0")
    neg = np.argwhere(m < 0)
    if neg.size:
        i, j = neg[0]
        return MatrixViolation("negative", (int(i), int(j)),
                               f"negative entry {m[i, j]!r} at ({i}, {j})")
    asym = np.argwhere(np.abs(m - m.T) > SYMMETRY_TOL)
    if asym.size:
        i, j = asym[0]
        return MatrixViolation("symmetry", (int(i), int(j)),
                               f"entries ({i}, {j}) and ({j}, {i}) differ: "
                               f"{m[i, j]!r} vs {m[j, i]!r}")
    return None


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric nonnegative n-by-n pairwise distances with zero diagonal.

    Construction validates and then mirrors the upper triangle onto the lower
    so downstream reductions see an exactly symmetric array regardless of
    round-trip formatting noise within the 1e-9 tolerance.
    """

    entries: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=np.float64)
        violation = validate_distance_matrix(m)
        if violation is not None:
            raise InputError(f"invalid distance matrix: {violation.message}")
        upper = np.triu(m)
        object.__setattr__(self, "entries", upper + np.triu(m, 1).T)

    @property
    def n(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class Cluster:
    """A set of samples; mass is the member count (one unit per sample)."""

    id: int
    members: np.ndarray  # sorted sample indices

    def __post_init__(self):
        members = np.asarray(self.members, dtype=np.intp)
        object.__setattr__(self, "members", members)

    @property
    def mass(self) -> int:
        return int(self.members.size)


@dataclass(frozen=True)
class Connection:
    """One recorded merge edge between two coexisting clusters.

    mass_product, square_distance and torque are stored exactly as computed
    (mass_product = from_mass * to_mass, square_distance = distance**2,
    torque = mass_product * square_distance). sample_a/sample_b is the
    minimum-distance member pair between the two clusters at merge time; it
    realizes the edge at sample level so cuts never recompute distances.
    """

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

    def __post_init__(self):
        if self.from_cluster == self.to_cluster:
            raise InputError("connection endpoints must differ")
        if self.from_mass < 1 or self.to_mass < 1:
            raise InputError("cluster masses must be positive")


@dataclass(frozen=True)
class Partition:
    """Cluster assignment for every sample; labels are canonical 0..k-1."""

    labels: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "labels", np.asarray(self.labels, dtype=np.intp))

    @property
    def n(self) -> int:
        return int(self.labels.size)

    @property
    def k(self) -> int:
        return int(np.unique(self.labels).size)

    def cluster_sizes(self) -> list[int]:
        return np.bincount(self.labels, minlength=self.k).tolist()


@dataclass(frozen=True)
class TorqueResult:
    """Complete merge history: every connection of every round.

    rounds[0] is the sample count and each later entry the cluster count after
    one more merge round, ending at 1. Exactly n - 1 connections carry
    redundant=False; together they span the samples, so any cut is a pure
    graph operation over the logged sample pairs.
    """

    sample_count: int
    connections: tuple[Connection, ...]
    rounds: tuple[int, ...]

    def __post_init__(self):
        rounds = tuple(int(r) for r in self.rounds)
        if not rounds or rounds[0] != self.sample_count or rounds[-1] != 1:
            raise InputError("rounds must start at the sample count and end at 1")
        if any(a <= b for a, b in zip(rounds, rounds[1:])):
            raise InputError("per-round cluster counts must strictly decrease")
        spanning = sum(1 for c in self.connections if not c.redundant)
        if spanning != self.sample_count - 1:
            raise InputError(
                f"expected {self.sample_count - 1} non-redundant connections, "
                f"found {spanning}")
        object.__setattr__(self, "rounds", rounds)
        object.__setattr__(self, "connections", tuple(self.connections))

    @property
    def final_cluster_count(self) -> int:
        return self.rounds[-1]

    @property
    def merge_round_count(self) -> int:
        return len(self.rounds) - 1

    def connection_by_id(self, connection_id: int) -> Connection:
        try:
            return self._by_id[connection_id]
        except KeyError:
            raise InputError(f"unknown connection id {connection_id}") from None

    @property
    def _by_id(self) -> dict[int, Connection]:
        by_id = getattr(self, "_by_id_cache", None)
        if by_id is None:
            by_id = {c.id: c for c in self.connections}
            object.__setattr__(self, "_by_id_cache", by_id)
        return by_id


class UnionFind:
    """Array-backed disjoint sets with path halving and union by size."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]  # path halving
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True

    def connected(self, a: int, b: int) -> bool:
        return self.find(a) == self.find(b)


def partition_from_components(n: int, kept_edges) -> Partition:
    """Connected-component labels over an undirected sample-level edge list.

    Component ids are renumbered 0..k-1 in order of each component's smallest
    member index, so the labelling is independent of edge order.
    """
    if n < 1:
        raise InputError("n must be at least 1")
    uf = UnionFind(n)
    for a, b in kept_edges:
        a, b = int(a), int(b)
        if not (0 <= a < n and 0 <= b < n):
            raise InputError(f"edge endpoint ({a}, {b}) out of range for n={n}")
        uf.union(a, b)
    labels = np.empty(n, dtype=np.intp)
    relabel: dict[int, int] = {}
    for i in range(n):
        root = uf.find(i)
        labels[i] = relabel.setdefault(root, len(relabel))
    return Partition(labels)
