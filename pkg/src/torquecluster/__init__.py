"""Parameter-free hierarchical clustering via mass-and-distance torque balance.

Typical use::

    from torquecluster import Dataset, run, auto_cut, apply_cut

    result = run(Dataset(points))
    partition = apply_cut(result, auto_cut(result.connections))
"""

from .cuts import (
    CutSpec,
    apply_cut,
    auto_cut,
    execute_cut,
    gamma_ranking,
    manual_cut,
    topk_cut,
)
from .engine import (
    EngineState,
    connection_properties,
    dedupe_and_classify,
    form_connections,
    merge_round,
    run,
)
from .exceptions import (
    InputError,
    ParseError,
    StateError,
    TorqueClusteringError,
    UnsupportedModeError,
)
from .linkage import (
    Linkage,
    Metric,
    cluster_distance,
    nearest_clusters_approx,
    nearest_clusters_exact,
    pairwise_distances,
)
from .metrics import acc, ami, contingency_table, nmi
from .model import (
    Cluster,
    Connection,
    Dataset,
    DistanceMatrix,
    Partition,
    TorqueResult,
    partition_from_components,
    validate_distance_matrix,
)
from .projection import project_2d

__version__ = "0.1.0"

__all__ = [
    "CutSpec", "apply_cut", "auto_cut", "execute_cut", "gamma_ranking",
    "manual_cut", "topk_cut",
    "EngineState", "connection_properties", "dedupe_and_classify",
    "form_connections", "merge_round", "run",
    "InputError", "ParseError", "StateError", "TorqueClusteringError",
    "UnsupportedModeError",
    "Linkage", "Metric", "cluster_distance", "nearest_clusters_approx",
    "nearest_clusters_exact", "pairwise_distances",
    "acc", "ami", "contingency_table", "nmi",
    "Cluster", "Connection", "Dataset", "DistanceMatrix", "Partition",
    "TorqueResult", "partition_from_components", "validate_distance_matrix",
    "project_2d",
    "__version__",
]
