"""Instance factories for tests, benchmarks, and the CLI.

All families are deterministic under their seed.  ``random_dag`` draws a
random vertex permutation and flips one coin per forward pair, so it is
acyclic by construction; ``density`` is the target average out-degree and is
translated into the matching edge probability.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph_core import Digraph, WeightedDigraph

FAMILIES = (
    "random_dag",
    "random_digraph",
    "path",
    "layered",
    "grid_dag",
    "weighted_random",
)

_NEEDS_PROB = ("random_dag", "random_digraph", "layered", "weighted_random")


@dataclass(frozen=True)
class GenSpec:
    family: str
    n: int
    p: float | None = None
    density: float | None = None
    W: int | None = None
    seed: int = 0


def _edge_prob(spec: GenSpec, pair_count_per_vertex: float) -> float:
    if (spec.p is None) == (spec.density is None):
        raise ValueError("exactly one of p and density must be set for this family")
    if spec.p is not None:
        if not 0.0 <= spec.p <= 1.0:
            raise ValueError(f"edge probability {spec.p} outside [0, 1]")
        return spec.p
    if spec.density < 0:
        raise ValueError(f"density {spec.density} must be >= 0")
    if pair_count_per_vertex <= 0:
        return 0.0
    return min(1.0, spec.density / pair_count_per_vertex)


def generate(spec: GenSpec) -> Digraph | WeightedDigraph:
    if spec.family not in FAMILIES:
        raise ValueError(f"unknown family {spec.family!r}")
    if spec.n < 1:
        raise ValueError(f"n must be >= 1, got {spec.n}")
    if spec.family in _NEEDS_PROB:
        pass  # probability validated below, per family pair count
    elif spec.p is not None or spec.density is not None:
        raise ValueError(f"family {spec.family!r} takes no edge probability")
    if spec.family == "weighted_random":
        if spec.W is None or spec.W < 1:
            raise ValueError("weighted_random needs W >= 1")
    elif spec.W is not None:
        raise ValueError(f"family {spec.family!r} takes no weight bound")

    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(spec.seed)))
    n = spec.n

    if spec.family == "path":
        return Digraph(n, ((i, i + 1) for i in range(n - 1)))

    if spec.family == "grid_dag":
        rows = int(np.sqrt(n))
        while rows > 1 and n % rows:
            rows -= 1
        cols = n // rows
        edges = []
        for i in range(rows):
            for j in range(cols):
                v = i * cols + j
                if j + 1 < cols:
                    edges.append((v, v + 1))
                if i + 1 < rows:
                    edges.append((v, v + cols))
        return Digraph(n, edges)

    if spec.family == "random_dag":
        p = _edge_prob(spec, (n - 1) / 2)
        perm = rng.permutation(n)
        idx = np.triu_indices(n, k=1)
        mask = rng.random(len(idx[0])) < p
        edges = (
            (int(perm[a]), int(perm[b]))
            for a, b in zip(idx[0][mask], idx[1][mask])
        )
        return Digraph(n, edges)

    if spec.family == "layered":
        p = _edge_prob(spec, max(1.0, n / max(1, int(np.ceil(np.sqrt(n))))))
        layer_count = int(np.ceil(np.sqrt(n)))
        bounds = np.linspace(0, n, layer_count + 1).astype(int)
        edges = []
        for k in range(layer_count - 1):
            left = range(bounds[k], bounds[k + 1])
            right = range(bounds[k + 1], bounds[k + 2])
            for u in left:
                hits = rng.random(len(right)) < p
                edges.extend((u, bounds[k + 1] + int(t)) for t in np.flatnonzero(hits))
        return Digraph(n, edges)

    # random_digraph and weighted_random share the all-ordered-pairs model.
    p = _edge_prob(spec, float(n - 1))
    src, tgt = np.where(~np.eye(n, dtype=bool))
    mask = rng.random(len(src)) < p
    pairs = list(zip(map(int, src[mask]), map(int, tgt[mask])))
    if spec.family == "random_digraph":
        return Digraph(n, pairs)
    weights = rng.integers(1, spec.W + 1, size=len(pairs))
    return WeightedDigraph(n, ((u, v, int(w)) for (u, v), w in zip(pairs, weights)))


def subdivide(g: Digraph, k: int) -> tuple[Digraph, dict[int, tuple[int, int]]]:
    """Replace each vertex by a directed path of k edges.

    Copy j of vertex v gets id v*(k+1)+j; each original edge (u, v) becomes
    an edge from u's last copy to v's first.  Returns the new graph and the
    map original vertex -> (head copy, tail copy).
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    stride = k + 1
    edges = []
    placement: dict[int, tuple[int, int]] = {}
    for v in range(g.n):
        head = v * stride
        placement[v] = (head, head + k)
        edges.extend((head + j, head + j + 1) for j in range(k))
    edges.extend((placement[u][1], placement[v][0]) for u, v in g.edges)
    return Digraph(g.n * stride, edges), placement
