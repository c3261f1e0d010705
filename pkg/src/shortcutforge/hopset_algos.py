"""Bounded-hop distance-preserving edge sets for weighted digraphs.

Every emitted edge carries the exact source-graph distance of its endpoints,
so added edges can never undercut a true distance; the hop budget beta and
the stretch knob eps only govern the upper side of the contract.  Stretch
comparisons are exact: eps is a rational p/q and every threshold test is an
integer cross-multiplication.

The small-hop construction extracts a collection of hop-bounded shortest
paths (the "nice" collection), fully interconnects each path's vertex set at
exact distances, cuts paths into short subpaths, and attaches sampled
vertices to sampled subpaths through geometric distance ladders.  The
large-hop construction subsamples, keeps sampled pairs whose distance is
achieved within a bounded hop radius, and recurses with the small-hop
construction on that graph.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import accumulate
from typing import Iterable, Sequence

import numpy as np

from ._intmath import ceil_root, floor_root
from ._seeds import SITE_GROUP_SAMPLE, SITE_VERTEX_SAMPLE, child_seed, site_rng
from .graph_core import (
    DistanceMatrix,
    WeightedDigraph,
    apsp,
    hop_limited_dist,
)

HOPSET_TAGS = ("induced_closure", "geometric_ladder", "recursive")

MIN_HOPBOUND = 12


def as_eps(eps: Fraction | str) -> Fraction:
    """Normalize the stretch knob to an exact Fraction in (0, 1)."""
    if isinstance(eps, float):
        raise TypeError("eps must be an exact rational (Fraction or 'p/q' string)")
    frac = Fraction(eps)
    if not 0 < frac < 1:
        raise ValueError(f"eps must lie in (0, 1), got {frac}")
    return frac


@dataclass(frozen=True)
class HopsetParams:
    beta: int
    eps: Fraction
    const: float
    seed: int


@dataclass(frozen=True)
class HopsetEdges:
    """Tagged weighted edges; deduplicated by pair, first tag wins."""

    n: int
    tagged: tuple[tuple[int, int, int, str], ...]
    params: HopsetParams

    def __init__(
        self,
        n: int,
        tagged: Iterable[tuple[int, int, int, str]],
        params: HopsetParams,
    ) -> None:
        kept: dict[tuple[int, int], tuple[int, str]] = {}
        for u, v, w, tag in tagged:
            u, v, w = int(u), int(v), int(w)
            if tag not in HOPSET_TAGS:
                raise ValueError(f"unknown provenance tag {tag!r}")
            if u == v or not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"bad hopset edge ({u}, {v}) for n={n}")
            if w < 1:
                raise ValueError(f"hopset edge ({u}, {v}) has weight {w} < 1")
            kept.setdefault((u, v), (w, tag))
        rows = tuple(sorted((u, v, w, t) for (u, v), (w, t) in kept.items()))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "tagged", rows)
        object.__setattr__(self, "params", params)

    @cached_property
    def edges(self) -> frozenset[tuple[int, int, int]]:
        return frozenset((u, v, w) for u, v, w, _ in self.tagged)

    @property
    def tag_counts(self) -> dict[str, int]:
        counts = {tag: 0 for tag in HOPSET_TAGS}
        for _, _, _, tag in self.tagged:
            counts[tag] += 1
        return counts

    def __len__(self) -> int:
        return len(self.tagged)


@dataclass(frozen=True)
class NicePathCollection:
    """Vertex-disjoint hop-bounded shortest paths, in extraction order.

    Each path has exactly beta // 12 hops; edge weights are exact distances
    between consecutive vertices and lengths are the exact endpoint
    distances.
    """

    paths: tuple[tuple[int, ...], ...]
    edge_weights: tuple[tuple[int, ...], ...]
    lengths: tuple[int, ...]
    beta: int

    def __init__(
        self,
        paths: Iterable[Sequence[int]],
        edge_weights: Iterable[Sequence[int]],
        beta: int,
    ) -> None:
        if beta < MIN_HOPBOUND:
            raise ValueError(f"hop budget must be >= {MIN_HOPBOUND}, got {beta}")
        ps = tuple(tuple(int(v) for v in p) for p in paths)
        ws = tuple(tuple(int(w) for w in w_) for w_ in edge_weights)
        if len(ps) != len(ws):
            raise ValueError("paths and edge_weights must align")
        for p, w in zip(ps, ws):
            if len(w) != len(p) - 1:
                raise ValueError(f"path {p} needs {len(p) - 1} edge weights, got {len(w)}")
        object.__setattr__(self, "paths", ps)
        object.__setattr__(self, "edge_weights", ws)
        object.__setattr__(self, "lengths", tuple(sum(w) for w in ws))
        object.__setattr__(self, "beta", beta)

    @property
    def hops(self) -> int:
        return self.beta // MIN_HOPBOUND

    @property
    def endpoints(self) -> tuple[tuple[int, int], ...]:
        return tuple((p[0], p[-1]) for p in self.paths)

    def __len__(self) -> int:
        return len(self.paths)


@dataclass(frozen=True)
class SubpathPartition:
    """Per source path, contiguous subpaths covering its vertices."""

    pieces: tuple[tuple[tuple[int, ...], ...], ...]
    eps: Fraction

    def flat(self) -> tuple[tuple[int, ...], ...]:
        return tuple(piece for per_path in self.pieces for piece in per_path)


def _min_plus(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.empty_like(a)
    step = max(1, 4_000_000 // max(1, a.shape[1] ** 2))
    for lo in range(0, a.shape[0], step):
        out[lo : lo + step] = (a[lo : lo + step, :, None] + b[None, :, :]).min(axis=1)
    return out


def _extract_nice_paths(
    dist: DistanceMatrix, beta: int
) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    h = beta // MIN_HOPBOUND
    base = dist.dist.copy()
    np.fill_diagonal(base, np.inf)

    alive = np.ones(dist.n, dtype=bool)
    paths: list[tuple[int, ...]] = []
    weights: list[tuple[int, ...]] = []
    while True:
        ids = np.flatnonzero(alive)
        if ids.size < h + 1:
            break
        sub = base[np.ix_(ids, ids)]
        powers = [sub]
        for _ in range(h - 1):
            powers.append(_min_plus(powers[-1], sub))
        # A pair qualifies when some shortest path between it has exactly h
        # hops, i.e. the h-hop minimum meets the distance itself.
        cand = np.isfinite(sub) & (powers[-1] == sub)
        if not cand.any():
            break
        scores = np.where(cand, sub, np.inf)
        flat = int(np.argmin(scores))  # first minimum = lexicographic (i, j)
        i, j = divmod(flat, ids.size)

        seq = [i]
        cur = i
        for level in range(h, 1, -1):
            targets = sub[cur] + powers[level - 2][:, j]
            wanted = powers[level - 1][cur, j]
            nxt = int(np.flatnonzero(targets == wanted)[0])
            seq.append(nxt)
            cur = nxt
        seq.append(j)
        assert len(set(seq)) == h + 1, "shortest-path walk revisited a vertex"

        verts = tuple(int(ids[s]) for s in seq)
        paths.append(verts)
        weights.append(tuple(int(sub[a, b]) for a, b in zip(seq, seq[1:])))
        alive[list(verts)] = False
    return paths, weights


def nice_collection(g: WeightedDigraph, beta: int) -> NicePathCollection:
    """Greedily extract minimum-length hop-exact shortest paths.

    Works on the weighted closure (edge (u,v) weighs dist(u,v)); extraction
    deletes path vertices, and remaining closure edges keep their weights
    since each is a direct edge.  Stops when no residual pair has a shortest
    path of exactly beta // 12 hops, which (by the prefix argument) means no
    residual shortest path has that many hops at all.
    """
    if beta < MIN_HOPBOUND:
        raise ValueError(f"hop budget must be >= {MIN_HOPBOUND}, got {beta}")
    paths, weights = _extract_nice_paths(apsp(g), beta)
    return NicePathCollection(paths, weights, beta)


def partition_subpaths(q: NicePathCollection, eps: Fraction | str) -> SubpathPartition:
    """Greedy prefix cuts: longest prefix of weight <= eps * len, bridge dropped."""
    frac = as_eps(eps)
    num, den = frac.numerator, frac.denominator
    per_path: list[tuple[tuple[int, ...], ...]] = []
    for verts, ws, total in zip(q.paths, q.edge_weights, q.lengths):
        csum = [0, *accumulate(ws)]
        pieces: list[tuple[int, ...]] = []
        s = 0
        while s < len(verts):
            t = s
            while t + 1 < len(verts) and (csum[t + 1] - csum[s]) * den <= num * total:
                t += 1
            pieces.append(verts[s : t + 1])
            s = t + 1
        per_path.append(tuple(pieces))
    return SubpathPartition(tuple(per_path), frac)


def geometric_ladder(
    dist: DistanceMatrix, v: int, p: Sequence[int], eps: Fraction | str
) -> tuple[tuple[int, int, int], ...]:
    """Edges from v into p: the first reachable vertex, then each (1+eps) drop."""
    frac = as_eps(eps)
    num, den = frac.numerator, frac.denominator
    out: list[tuple[int, int, int]] = []
    cur: int | None = None
    for u in p:
        u = int(u)
        if u == v:
            continue
        d = dist.dist[v, u]
        if not np.isfinite(d):
            continue
        d = int(d)
        if cur is None or (den + num) * d < den * cur:
            out.append((v, u, d))
            cur = d
    return tuple(out)


def ladder_size_limit(n: int, max_weight: int, eps: Fraction) -> int:
    """ceil(log_{1+eps}(n*W)) + 1, computed with exact integer powers."""
    target = max(2, n * max_weight)
    num, den = eps.numerator, eps.denominator
    k = 0
    hi, lo = 1, 1  # (1+eps)^k as hi/lo
    while hi < target * lo:
        hi *= den + num
        lo *= den
        k += 1
    return k + 1


def hopset_small_hop(
    g: WeightedDigraph,
    beta: int,
    eps: Fraction | str,
    c: float = 3.0,
    *,
    seed: int,
) -> HopsetEdges:
    """Nice-path construction for hop budgets up to n^(1/4).

    Runs with eps' = eps/2 internally: the per-path induced closures are
    exact, the ladders lose (1+eps') twice along a detour, and the halved
    knob keeps the end-to-end stretch within (1+eps).
    """
    frac = as_eps(eps)
    if beta < MIN_HOPBOUND:
        raise ValueError(f"hop budget must be >= {MIN_HOPBOUND}, got {beta}")
    params = HopsetParams(beta, frac, c, seed)
    n = g.n
    if n <= 1:
        return HopsetEdges(n, (), params)

    half = frac / 2
    dist = apsp(g)
    paths, weights = _extract_nice_paths(dist, beta)
    q = NicePathCollection(paths, weights, beta)

    rows: list[tuple[int, int, int, str]] = []
    for verts in q.paths:
        for a in verts:
            for b in verts:
                if a != b and np.isfinite(dist.dist[a, b]):
                    rows.append((a, b, int(dist.dist[a, b]), "induced_closure"))

    subpaths = partition_subpaths(q, half).flat()
    p_samp = min(1.0, c * math.log(n) / beta)
    v_mask = site_rng(seed, SITE_VERTEX_SAMPLE).random(n) < p_samp
    s_mask = (
        site_rng(seed, SITE_GROUP_SAMPLE).random(len(subpaths)) < p_samp
        if subpaths
        else np.zeros(0, dtype=bool)
    )
    picked = [sp for sp, hit in zip(subpaths, s_mask) if hit]
    for v in map(int, np.flatnonzero(v_mask)):
        for sp in picked:
            for src, tgt, wt in geometric_ladder(dist, v, sp, half):
                rows.append((src, tgt, wt, "geometric_ladder"))
    return HopsetEdges(n, rows, params)


def hopset_large_hop(
    g: WeightedDigraph,
    beta: int,
    eps: Fraction | str,
    c: float = 3.0,
    *,
    seed: int,
) -> HopsetEdges:
    """Sampling construction for hop budgets of at least n^(1/4).

    Samples ceil(c*(n/beta)^(4/3)*ln n) vertices, keeps sampled pairs whose
    true distance is already achieved within hop radius r (least r with
    r^3*n >= beta^4), and recurses with the small-hop construction; returned
    edges are re-expressed with exact distances of the original graph.
    """
    frac = as_eps(eps)
    if beta < MIN_HOPBOUND or beta < floor_root(g.n, 4):
        raise ValueError(
            f"hop budget {beta} below max({MIN_HOPBOUND}, floor(n^(1/4)))"
        )
    params = HopsetParams(beta, frac, c, seed)
    n = g.n
    if n <= 1:
        return HopsetEdges(n, (), params)

    size = min(n, math.ceil(c * (n / beta) ** (4.0 / 3.0) * math.log(n)))
    rng = site_rng(seed, SITE_VERTEX_SAMPLE)
    sampled = np.sort(rng.choice(n, size=size, replace=False))
    if len(sampled) <= 1:
        return HopsetEdges(n, (), params)

    r = max(1, floor_root(beta**4 // n, 3))
    while r**3 * n < beta**4:
        r += 1
    full = apsp(g).dist
    capped = hop_limited_dist(g, r).dist
    ix = np.ix_(sampled, sampled)
    keep = np.isfinite(full[ix]) & (capped[ix] == full[ix])
    np.fill_diagonal(keep, False)
    sub_edges = (
        (int(a), int(b), int(full[sampled[a], sampled[b]]))
        for a, b in np.argwhere(keep)
    )
    sub = WeightedDigraph(len(sampled), sub_edges)

    beta_sub = max(MIN_HOPBOUND, int(len(sampled) ** 0.25 / math.log(n)))
    inner = hopset_small_hop(sub, beta_sub, frac, c, seed=child_seed(seed))
    rows = (
        (
            int(sampled[a]),
            int(sampled[b]),
            int(full[sampled[a], sampled[b]]),
            "recursive",
        )
        for a, b, _, _ in inner.tagged
    )
    return HopsetEdges(n, rows, params)


def build_hopset(
    g: WeightedDigraph,
    beta: int,
    eps: Fraction | str,
    c: float = 3.0,
    *,
    seed: int,
) -> HopsetEdges:
    """Dispatch on beta vs n^(1/4) between the two constructions."""
    if beta < MIN_HOPBOUND:
        raise ValueError(f"hop budget must be >= {MIN_HOPBOUND}, got {beta}")
    if beta <= ceil_root(g.n, 4):
        return hopset_small_hop(g, beta, eps, c, seed=seed)
    return hopset_large_hop(g, beta, eps, c, seed=seed)
