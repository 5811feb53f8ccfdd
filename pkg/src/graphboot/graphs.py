"""Graph data types and random generators (BIRG, SBM, MMSBM).

All sampled graphs are binary, symmetric, simple (zero diagonal).  Adjacency
matrices are stored dense below ``DENSE_NODE_LIMIT`` nodes and in CSR form
above it; probability matrices are always dense.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import sparse

from .rng import as_rng, derive_rng

__all__ = [
    "DENSE_NODE_LIMIT",
    "AdjacencyMatrix",
    "ProbabilityMatrix",
    "SbmSpec",
    "MmsbmSpec",
    "sample_birg",
    "sbm_probability_matrix",
    "sample_sbm",
    "sample_mmsbm",
]

# Above this node count adjacency matrices switch to CSR storage.
DENSE_NODE_LIMIT = 2048


def _validate_binary_symmetric(mat: np.ndarray) -> None:
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"adjacency must be square, got shape {mat.shape}")
    if not np.isin(mat, (0, 1)).all():
        raise ValueError("adjacency entries must be 0 or 1")
    if np.diag(mat).any():
        raise ValueError("adjacency diagonal must be zero (no self-loops)")
    if not np.array_equal(mat, mat.T):
        raise ValueError("adjacency must be symmetric")


@dataclass(frozen=True)
class AdjacencyMatrix:
    """Symmetric binary graph with zero diagonal, sparse- or dense-backed.

    ``node_labels``, when present, are unique string identifiers of length n.
    Instances are immutable; use the ``from_*`` constructors, which validate
    the invariants and pick the storage layout.
    """

    matrix: np.ndarray | sparse.csr_array
    node_labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        n = self.matrix.shape[0]
        if self.node_labels is not None:
            if len(self.node_labels) != n:
                raise ValueError(f"expected {n} node labels, got {len(self.node_labels)}")
            if len(set(self.node_labels)) != n:
                raise ValueError("node labels must be unique")

    @classmethod
    def from_dense(
        cls, mat: np.ndarray, node_labels: tuple[str, ...] | None = None
    ) -> "AdjacencyMatrix":
        mat = np.asarray(mat)
        _validate_binary_symmetric(mat)
        mat = mat.astype(np.uint8)
        if mat.shape[0] >= DENSE_NODE_LIMIT:
            return cls(sparse.csr_array(mat), node_labels)
        mat.setflags(write=False)
        return cls(mat, node_labels)

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: np.ndarray,
        node_labels: tuple[str, ...] | None = None,
    ) -> "AdjacencyMatrix":
        """Build from an (m, 2) array of node-index pairs.

        Edges are symmetrized, duplicates collapsed, self-loops dropped.
        """
        edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if len(edges) and (edges.min() < 0 or edges.max() >= n):
            raise ValueError(f"edge endpoints must lie in [0, {n})")
        edges = edges[edges[:, 0] != edges[:, 1]]
        lo = np.minimum(edges[:, 0], edges[:, 1])
        hi = np.maximum(edges[:, 0], edges[:, 1])
        pairs = np.unique(np.column_stack([lo, hi]), axis=0) if len(edges) else edges
        if n >= DENSE_NODE_LIMIT:
            i = np.concatenate([pairs[:, 0], pairs[:, 1]])
            j = np.concatenate([pairs[:, 1], pairs[:, 0]])
            mat = sparse.csr_array(
                (np.ones(len(i), dtype=np.uint8), (i, j)), shape=(n, n)
            )
            return cls(mat, node_labels)
        mat = np.zeros((n, n), dtype=np.uint8)
        if len(pairs):
            mat[pairs[:, 0], pairs[:, 1]] = 1
            mat[pairs[:, 1], pairs[:, 0]] = 1
        mat.setflags(write=False)
        return cls(mat, node_labels)

    @classmethod
    def empty(cls, n: int, node_labels: tuple[str, ...] | None = None) -> "AdjacencyMatrix":
        return cls.from_edges(n, np.empty((0, 2), dtype=np.int64), node_labels)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def is_sparse(self) -> bool:
        return sparse.issparse(self.matrix)

    def dense(self, dtype=np.float64) -> np.ndarray:
        if self.is_sparse:
            return self.matrix.toarray().astype(dtype)
        return self.matrix.astype(dtype)

    def sparse_csr(self, dtype=np.float64) -> sparse.csr_array:
        if self.is_sparse:
            return self.matrix.astype(dtype)
        return sparse.csr_array(self.matrix.astype(dtype))

    def edge_list(self) -> np.ndarray:
        """Unordered edges as an (m, 2) int array with i < j, sorted."""
        if self.is_sparse:
            coo = self.matrix.tocoo()
            keep = coo.row < coo.col
            pairs = np.column_stack([coo.row[keep], coo.col[keep]])
            order = np.lexsort((pairs[:, 1], pairs[:, 0]))
            return pairs[order].astype(np.int64)
        i, j = np.nonzero(np.triu(self.matrix, 1))
        return np.column_stack([i, j]).astype(np.int64)

    @property
    def num_edges(self) -> int:
        if self.is_sparse:
            return int(self.matrix.nnz // 2)
        return int(np.triu(self.matrix, 1).sum())

    def density(self) -> float:
        """Edge density over the n(n-1)/2 unordered pairs (diagonal excluded)."""
        n = self.n
        if n < 2:
            return 0.0
        return self.num_edges / (n * (n - 1) / 2)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AdjacencyMatrix):
            return NotImplemented
        if self.n != other.n or self.node_labels != other.node_labels:
            return False
        if self.is_sparse or other.is_sparse:
            return (self.sparse_csr() != other.sparse_csr()).nnz == 0
        return np.array_equal(self.matrix, other.matrix)


@dataclass(frozen=True)
class ProbabilityMatrix:
    """Dense n-by-n matrix of pairwise edge probabilities in [0, 1]."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        mat = np.asarray(self.matrix, dtype=np.float64)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError(f"probability matrix must be square, got shape {mat.shape}")
        if not np.isfinite(mat).all():
            raise ValueError("probability matrix entries must be finite")
        if mat.min() < 0.0 or mat.max() > 1.0:
            raise ValueError("probability matrix entries must lie in [0, 1]")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def mean_offdiag(self) -> float:
        """Mean upper-triangle probability (diagonal never sampled)."""
        n = self.n
        iu = np.triu_indices(n, 1)
        return float(self.matrix[iu].mean()) if n > 1 else 0.0


def _validate_block_matrix(block_matrix: np.ndarray) -> np.ndarray:
    B = np.asarray(block_matrix, dtype=np.float64)
    if B.ndim != 2 or B.shape[0] != B.shape[1]:
        raise ValueError(f"block matrix must be square, got shape {B.shape}")
    if not np.allclose(B, B.T):
        raise ValueError("block matrix must be symmetric")
    if not np.isfinite(B).all() or B.min() < 0.0 or B.max() > 1.0:
        raise ValueError("block matrix entries must lie in [0, 1]")
    return B


@dataclass(frozen=True)
class SbmSpec:
    """Stochastic block model: C-by-C symmetric block matrix plus community
    assignment.  Communities are 0-based; ``community_assignment=None`` means
    nodes are assigned uniformly at random at sampling time.
    """

    n: int
    block_matrix: np.ndarray
    community_assignment: np.ndarray | None = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be positive")
        B = _validate_block_matrix(self.block_matrix)
        object.__setattr__(self, "block_matrix", B)
        if self.community_assignment is not None:
            tau = np.asarray(self.community_assignment, dtype=np.int64)
            if tau.shape != (self.n,):
                raise ValueError(f"community assignment must have length {self.n}")
            if tau.min() < 0 or tau.max() >= self.num_communities:
                raise ValueError(
                    f"community indices must lie in [0, {self.num_communities})"
                )
            object.__setattr__(self, "community_assignment", tau)

    @property
    def num_communities(self) -> int:
        return self.block_matrix.shape[0]


@dataclass(frozen=True)
class MmsbmSpec:
    """Mixed-membership SBM: per-node Dirichlet(alpha) community weights and
    per-pair multinomial indicator draws entering a bilinear block probability.
    """

    n: int
    alpha: np.ndarray
    block_matrix: np.ndarray

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be positive")
        alpha = np.asarray(self.alpha, dtype=np.float64)
        if alpha.ndim != 1 or len(alpha) < 1:
            raise ValueError("alpha must be a non-empty vector")
        if not np.isfinite(alpha).all() or (alpha <= 0).any():
            raise ValueError("alpha entries must be positive")
        B = _validate_block_matrix(self.block_matrix)
        if B.shape[0] != len(alpha):
            raise ValueError("block matrix size must match len(alpha)")
        alpha.setflags(write=False)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "block_matrix", B)

    @property
    def num_communities(self) -> int:
        return len(self.alpha)


def sample_birg(
    P: ProbabilityMatrix, seed: int | np.random.Generator | np.random.SeedSequence
) -> AdjacencyMatrix:
    """Draw a binary inhomogeneous random graph: Aij ~ Bernoulli(Pij) for i<j,
    mirrored to the lower triangle, zero diagonal.

    Draws travel the upper triangle row-major, so a given seed is
    bit-reproducible regardless of worker count.
    """
    rng = as_rng(seed)
    n = P.n
    mat = P.matrix
    rows = []
    cols = []
    for i in range(n - 1):
        u = rng.random(n - 1 - i)
        hits = np.nonzero(u < mat[i, i + 1 :])[0]
        if len(hits):
            rows.append(np.full(len(hits), i, dtype=np.int64))
            cols.append(hits + i + 1)
    if rows:
        edges = np.column_stack([np.concatenate(rows), np.concatenate(cols)])
    else:
        edges = np.empty((0, 2), dtype=np.int64)
    return AdjacencyMatrix.from_edges(n, edges)


def sbm_probability_matrix(spec: SbmSpec) -> ProbabilityMatrix:
    """Pij = B[tau_i, tau_j].  Diagonal entries are retained in P but the
    samplers never draw self-loops.  Requires an explicit assignment.
    """
    if spec.community_assignment is None:
        raise ValueError("spec has no community assignment; use sample_sbm to draw one")
    tau = spec.community_assignment
    return ProbabilityMatrix(spec.block_matrix[np.ix_(tau, tau)])


def sample_sbm(
    spec: SbmSpec, seed: int
) -> tuple[AdjacencyMatrix, ProbabilityMatrix, np.ndarray]:
    """Sample an SBM graph; returns (A, P, tau).

    When the spec carries no assignment, tau is drawn uniformly over
    communities from a stream derived from ``seed``.
    """
    if spec.community_assignment is None:
        tau = derive_rng(seed, "sbm-communities").integers(
            0, spec.num_communities, size=spec.n
        )
        spec = SbmSpec(spec.n, spec.block_matrix, tau)
    P = sbm_probability_matrix(spec)
    A = sample_birg(P, derive_rng(seed, "sbm-edges"))
    return A, P, spec.community_assignment


def sample_mmsbm(spec: MmsbmSpec, seed: int) -> tuple[AdjacencyMatrix, ProbabilityMatrix]:
    """Sample a mixed-membership SBM graph; returns (A, realized P).

    Per node, pi_i ~ Dirichlet(alpha).  For each unordered pair i<j a single
    pair of indicator draws z_(i->j) ~ Multinomial(pi_i), z_(j->i) ~
    Multinomial(pi_j) selects the block entry Pij = B[z_(i->j), z_(j->i)];
    Aij ~ Bernoulli(Pij) is mirrored to the lower triangle.  The realized
    pairwise P is returned (diagonal zero; it is never sampled) so true
    resamples can later be drawn from the same P.
    """
    n, C = spec.n, spec.num_communities
    rng = derive_rng(seed, "mmsbm-memberships")
    pis = rng.dirichlet(spec.alpha, size=n)
    # Z[i, j]: community indicated by node i toward node j.
    cum = np.cumsum(pis, axis=1)
    cum[:, -1] = 1.0
    u = rng.random((n, n))
    Z = (u[:, :, None] > cum[:, None, :]).sum(axis=2)
    iu = np.triu_indices(n, 1)
    P = np.zeros((n, n))
    P[iu] = spec.block_matrix[Z[iu], Z.T[iu]]
    P = P + P.T
    prob = ProbabilityMatrix(P)
    A = sample_birg(prob, derive_rng(seed, "mmsbm-edges"))
    return A, prob
