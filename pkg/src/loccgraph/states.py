"""Bipartite product-state sets and their overlap graphs.

A set of n product states a_i (x) b_i is stored as two stacked arrays of
local vectors. The overlap graph on either side joins i and j when the
local inner product is nonzero; for a mutually orthogonal product set every
pair must be orthogonal on at least one side, so the two overlap graphs
never share an edge.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import DimensionMismatch, InvalidInput, NotMutuallyOrthogonal, ZeroVector
from .graphs import Graph, complement
from .linalg import DEFAULT_TOL, Tolerance, frame, gram, hermitize

RESERVED_LABEL = "inconclusive"


@dataclass(frozen=True)
class StateGraphs:
    """Overlap graphs: an edge means the local parts are NOT orthogonal."""

    alice: Graph
    bob: Graph

    def bob_orthogonality(self) -> Graph:
        """Pairs whose Bob parts are orthogonal; admissible outcome supports
        are exactly the cliques of this graph."""
        return complement(self.bob)


@dataclass(frozen=True)
class OrthonormalityReport:
    ok: bool
    unit_deviations: tuple[tuple[str, float], ...]
    nonorthogonal_pairs: tuple[tuple[str, str, float], ...]


@dataclass(frozen=True, eq=False)
class ProductStateSet:
    alice: np.ndarray
    bob: np.ndarray
    labels: tuple[str, ...]

    def __post_init__(self):
        a = np.atleast_2d(np.asarray(self.alice, dtype=complex))
        b = np.atleast_2d(np.asarray(self.bob, dtype=complex))
        if a.ndim != 2 or b.ndim != 2:
            raise DimensionMismatch("state arrays must be two-dimensional")
        if a.shape[0] != b.shape[0]:
            raise DimensionMismatch(
                f"{a.shape[0]} Alice rows vs {b.shape[0]} Bob rows"
            )
        if a.shape[0] < 1:
            raise InvalidInput("need at least one state")
        labels = tuple(str(x) for x in self.labels)
        if len(labels) != a.shape[0]:
            raise InvalidInput(f"{len(labels)} labels for {a.shape[0]} states")
        if len(set(labels)) != len(labels):
            raise InvalidInput("state labels must be unique")
        if RESERVED_LABEL in labels:
            raise InvalidInput(f"label {RESERVED_LABEL!r} is reserved")
        for k, row in enumerate(a):
            if np.linalg.norm(row) == 0.0:
                raise ZeroVector(f"Alice part of state {labels[k]} is zero")
        for k, row in enumerate(b):
            if np.linalg.norm(row) == 0.0:
                raise ZeroVector(f"Bob part of state {labels[k]} is zero")
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "alice", a)
        object.__setattr__(self, "bob", b)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_vectors(
        cls,
        alice: Iterable[Sequence[complex]],
        bob: Iterable[Sequence[complex]],
        labels: Optional[Iterable[str]] = None,
        normalize: bool = True,
    ) -> "ProductStateSet":
        a = np.array([np.asarray(v, dtype=complex) for v in alice])
        b = np.array([np.asarray(v, dtype=complex) for v in bob])
        if normalize and a.size and b.size:
            na = np.linalg.norm(a, axis=1, keepdims=True)
            nb = np.linalg.norm(b, axis=1, keepdims=True)
            if (na == 0).any() or (nb == 0).any():
                raise ZeroVector("cannot normalize a zero local vector")
            a, b = a / na, b / nb
        if labels is None:
            labels = tuple(str(i) for i in range(1, a.shape[0] + 1))
        return cls(a, b, tuple(labels))

    @property
    def n(self) -> int:
        return self.alice.shape[0]

    @property
    def d_alice(self) -> int:
        return self.alice.shape[1]

    @property
    def d_bob(self) -> int:
        return self.bob.shape[1]

    def index_of(self, label: str) -> int:
        """1-based index of a label."""
        try:
            return self.labels.index(label) + 1
        except ValueError:
            raise InvalidInput(f"no state labeled {label!r}") from None

    def alice_frame(self) -> np.ndarray:
        return frame(list(self.alice))

    def bob_frame(self) -> np.ndarray:
        return frame(list(self.bob))

    def alice_gram(self) -> np.ndarray:
        return gram(list(self.alice))

    def bob_gram(self) -> np.ndarray:
        return gram(list(self.bob))

    def product_gram(self) -> np.ndarray:
        return hermitize(self.alice_gram() * self.bob_gram())

    def build_graphs(self, tol: Tolerance = DEFAULT_TOL) -> StateGraphs:
        ga = gram(list(self.alice))
        gb = gram(list(self.bob))
        edges_a = []
        edges_b = []
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if abs(ga[i, j]) > tol.zero_tol:
                    edges_a.append((i + 1, j + 1))
                if abs(gb[i, j]) > tol.zero_tol:
                    edges_b.append((i + 1, j + 1))
        return StateGraphs(
            Graph.from_edges(self.n, edges_a), Graph.from_edges(self.n, edges_b)
        )

    def validate_orthonormal(self, tol: Tolerance = DEFAULT_TOL) -> OrthonormalityReport:
        g = self.product_gram()
        units = tuple(
            (self.labels[i], float(abs(g[i, i] - 1.0)))
            for i in range(self.n)
            if abs(g[i, i] - 1.0) > 10 * tol.zero_tol
        )
        pairs = tuple(
            (self.labels[i], self.labels[j], float(abs(g[i, j])))
            for i in range(self.n)
            for j in range(i + 1, self.n)
            if abs(g[i, j]) > tol.zero_tol
        )
        return OrthonormalityReport(not units and not pairs, units, pairs)

    def require_orthonormal(self, tol: Tolerance = DEFAULT_TOL) -> None:
        report = self.validate_orthonormal(tol)
        if report.unit_deviations:
            worst = max(report.unit_deviations, key=lambda t: t[1])
            raise InvalidInput(
                f"state {worst[0]} is not a unit product vector (off by {worst[1]:.3g})"
            )
        if report.nonorthogonal_pairs:
            raise NotMutuallyOrthogonal(report.nonorthogonal_pairs)

    def swapped(self) -> "ProductStateSet":
        return ProductStateSet(self.bob, self.alice, self.labels)

    def subset(self, labels: Iterable[str]) -> "ProductStateSet":
        idx = [self.index_of(l) - 1 for l in labels]
        return ProductStateSet(
            self.alice[idx, :], self.bob[idx, :], tuple(self.labels[i] for i in idx)
        )
