"""Split a spectrum into clusters of close eigenvalues.

Two eigenvalues share a cluster when they are joined by a chain of steps
shorter than ``delta``.  Clusters are therefore the connected components of
the graph with an edge between every pair closer than ``delta``; eigenvalues
from different clusters are automatically at least ``delta`` apart.

Indices are 0-based throughout.
"""
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import PartitionMismatch

DEFAULT_DELTA = 0.01
DEFAULT_GAMMA = 5


@dataclass(frozen=True)
class Cluster:
    """One cluster of the reordered spectrum.

    ``start``/``size`` locate the cluster inside the cluster-contiguous order;
    ``members`` are the positions of its eigenvalues in the input order.
    ``degree_slack`` is the extra Taylor degree: the local model has degree
    ``size + degree_slack``.
    """

    start: int
    size: int
    center: complex
    members: tuple
    degree_slack: int = DEFAULT_GAMMA

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("cluster size must be >= 1")
        if self.degree_slack < -1:
            raise ValueError("degree_slack must be >= -1")

    @property
    def indices(self):
        return range(self.start, self.start + self.size)

    @property
    def stop(self):
        return self.start + self.size

    @property
    def taylor_degree(self):
        return self.size + self.degree_slack


@dataclass(frozen=True)
class ClusterPartition:
    clusters: tuple
    delta: float

    @property
    def n(self):
        return sum(c.size for c in self.clusters)

    @property
    def sizes(self):
        return [c.size for c in self.clusters]

    def cluster_of(self, index):
        """The cluster whose contiguous range contains ``index``."""
        for c in self.clusters:
            if c.start <= index < c.stop:
                return c
        raise IndexError(f"index {index} outside spectrum of size {self.n}")

    def with_slack(self, gamma):
        """Copy with a new degree slack, either one int or one per cluster."""
        if isinstance(gamma, (int, np.integer)):
            gammas = [int(gamma)] * len(self.clusters)
        else:
            gammas = [int(g) for g in gamma]
            if len(gammas) != len(self.clusters):
                raise ValueError("need one gamma per cluster")
        return replace(
            self,
            clusters=tuple(replace(c, degree_slack=g) for c, g in zip(self.clusters, gammas)),
        )


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues in cluster-contiguous order.

    ``permutation[i]`` is the input position of ``values[i]``.
    """

    values: np.ndarray
    permutation: tuple

    def __len__(self):
        return len(self.values)


def cluster_center(members):
    if len(members) == 0:
        raise ValueError("cluster_center of an empty cluster")
    return complex(np.mean(np.asarray(members, dtype=complex)))


def split_clusters(eigenvalues: Sequence[complex], delta: float = DEFAULT_DELTA,
                   gamma: int = DEFAULT_GAMMA) -> ClusterPartition:
    """Partition ``eigenvalues`` into delta-chain clusters.

    Clusters are numbered by the first occurrence of one of their members in
    the input, and get contiguous ranges in that order.
    """
    mu = np.asarray(eigenvalues, dtype=complex).ravel()
    if mu.size == 0:
        raise ValueError("split_clusters needs at least one eigenvalue")
    if not delta > 0:
        raise ValueError("delta must be positive")
    close = np.abs(mu[:, None] - mu[None, :]) < delta
    _, labels = connected_components(csr_matrix(close), directed=False)

    order = []
    members = {}
    for i, lab in enumerate(labels):
        if lab not in members:
            order.append(lab)
            members[lab] = []
        members[lab].append(i)

    clusters = []
    start = 0
    for lab in order:
        idx = tuple(members[lab])
        clusters.append(Cluster(start=start, size=len(idx), center=cluster_center(mu[list(idx)]),
                                members=idx, degree_slack=gamma))
        start += len(idx)
    return ClusterPartition(clusters=tuple(clusters), delta=float(delta))


def reorder_spectrum(eigenvalues, partition: ClusterPartition) -> Spectrum:
    mu = np.asarray(eigenvalues, dtype=complex).ravel()
    perm = [i for c in partition.clusters for i in c.members]
    if len(perm) != mu.size or sorted(perm) != list(range(mu.size)):
        raise PartitionMismatch(
            f"partition covers {len(perm)} indices, spectrum has {mu.size}")
    for c in partition.clusters:
        if len(c.members) != c.size:
            raise PartitionMismatch("cluster size disagrees with its member list")
    return Spectrum(values=mu[perm], permutation=tuple(perm))


def partition_from_sizes(values, sizes, delta=DEFAULT_DELTA, gamma=DEFAULT_GAMMA):
    """Partition of an already cluster-contiguous list with known block sizes."""
    mu = np.asarray(values, dtype=complex).ravel()
    if sum(sizes) != mu.size:
        raise PartitionMismatch("cluster sizes do not add up to the spectrum length")
    clusters, start = [], 0
    for k in sizes:
        idx = tuple(range(start, start + k))
        clusters.append(Cluster(start=start, size=k, center=cluster_center(mu[list(idx)]),
                                members=idx, degree_slack=gamma))
        start += k
    return ClusterPartition(clusters=tuple(clusters), delta=float(delta))
