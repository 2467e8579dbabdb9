"""kNN-DBSCAN clustering with an exact k-nearest-neighbor graph builder."""

from ._core import (
    BORDER,
    CORE,
    NOISE,
    NOISE_POINT,
    InternalError,
    InvalidData,
    ProtocolError,
    blobs,
    cluster,
    cluster_count,
    knn_graph,
    nmi,
    same_partition,
    saturation_eps,
    sphere,
    two_spheres,
)

__all__ = [
    "BORDER", "CORE", "NOISE", "NOISE_POINT", "InternalError", "InvalidData", "ProtocolError",
    "blobs", "cluster", "cluster_count", "knn_graph", "nmi", "same_partition", "saturation_eps",
    "sphere", "two_spheres",
]
