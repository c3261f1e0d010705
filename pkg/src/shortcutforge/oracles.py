"""Ground-truth checkers, kept algorithm-free.

Everything here is BFS, shortest-path relaxation, or exhaustive enumeration
over the instance itself; nothing is shared with the construction modules,
so agreement between the two sides is meaningful evidence.  Inputs are duck
typed (anything with an ``edges`` attribute or a plain iterable of edges)
for the same reason.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse import csgraph

from .graph_core import Digraph, WeightedDigraph, apsp, hop_limited_dist

ENUMERATION_VERTEX_CAP = 60


@dataclass(frozen=True)
class Check:
    name: str
    status: str  # "pass" | "fail" | "skip"
    witness: tuple | None = None
    detail: str = ""

    def __post_init__(self) -> None:
        if self.status not in ("pass", "fail", "skip"):
            raise ValueError(f"bad status {self.status!r}")
        if self.status == "fail" and self.witness is None:
            raise ValueError(f"failing check {self.name!r} must carry a witness")


@dataclass(frozen=True)
class VerificationReport:
    instance: str
    checks: tuple[Check, ...] = field(default_factory=tuple)
    achieved_diameter: int | None = None
    achieved_stretch: Fraction | None = None
    achieved_hops: int | None = None

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def failures(self) -> tuple[Check, ...]:
        return tuple(c for c in self.checks if c.status == "fail")

    def to_dict(self) -> dict:
        return {
            "instance": self.instance,
            "ok": self.ok,
            "checks": [
                {
                    "name": c.name,
                    "status": c.status,
                    "witness": list(c.witness) if c.witness is not None else None,
                    "detail": c.detail,
                }
                for c in self.checks
            ],
            "achieved_diameter": self.achieved_diameter,
            "achieved_stretch": (
                str(self.achieved_stretch) if self.achieved_stretch is not None else None
            ),
            "achieved_hops": self.achieved_hops,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _edge_pairs(h) -> list[tuple[int, int]]:
    items = getattr(h, "edges", h)
    return sorted((int(u), int(v)) for u, v in items)


def _edge_triples(h) -> list[tuple[int, int, int]]:
    items = getattr(h, "edges", h)
    return sorted((int(u), int(v), int(w)) for u, v, w in items)


def _bfs_hops(n: int, edges: Iterable[tuple[int, int]]) -> np.ndarray:
    rows = sorted(set(edges))
    if n == 0 or not rows:
        out = np.full((n, n), np.inf)
        if n:
            np.fill_diagonal(out, 0.0)
        return out
    arr = np.array(rows, dtype=np.intp)
    mat = csr_matrix(
        (np.ones(len(rows)), (arr[:, 0], arr[:, 1])), shape=(n, n)
    )
    return csgraph.shortest_path(mat, method="D", unweighted=True)


def verify_shortcut(g: Digraph, h, d: int, instance: str = "") -> VerificationReport:
    """Closure membership, closure preservation, and hop diameter vs d."""
    edges = _edge_pairs(h)
    base = _bfs_hops(g.n, g.edges)
    reach = np.isfinite(base)
    checks: list[Check] = []

    bad = next(
        (
            e
            for e in edges
            if e[0] == e[1]
            or not (0 <= e[0] < g.n and 0 <= e[1] < g.n)
            or not reach[e]
        ),
        None,
    )
    checks.append(
        Check("closure_membership", "fail" if bad else "pass", witness=bad)
    )

    in_range = [e for e in edges if 0 <= e[0] < g.n and 0 <= e[1] < g.n]
    union = _bfs_hops(g.n, list(g.edges) + in_range)
    diff = np.argwhere(np.isfinite(union) != reach)
    checks.append(
        Check(
            "closure_preserved",
            "fail" if len(diff) else "pass",
            witness=tuple(map(int, diff[0])) if len(diff) else None,
        )
    )

    mask = reach.copy()
    np.fill_diagonal(mask, False)
    if mask.any():
        vals = np.where(mask, union, -np.inf)
        flat = int(np.argmax(vals))
        pair = (flat // g.n, flat % g.n)
        achieved = int(vals[pair])
    else:
        pair = None
        achieved = 0
    checks.append(
        Check(
            "diameter_at_most_target",
            "pass" if achieved <= d else "fail",
            witness=pair if achieved > d else None,
            detail=f"achieved {achieved} vs target {d}",
        )
    )
    return VerificationReport(instance, tuple(checks), achieved_diameter=achieved)


def _as_fraction(eps) -> Fraction:
    if isinstance(eps, float):
        raise TypeError("eps must be an exact rational")
    frac = Fraction(eps)
    if not 0 < frac < 1:
        raise ValueError(f"eps must lie in (0, 1), got {frac}")
    return frac


def verify_hopset(
    g: WeightedDigraph, h, beta: int, eps, instance: str = ""
) -> VerificationReport:
    """Weight exactness plus both sides of the (beta, eps) sandwich."""
    frac = _as_fraction(eps)
    num, den = frac.numerator, frac.denominator
    triples = _edge_triples(h)
    dg = apsp(g).dist
    checks: list[Check] = []

    bad = next(
        (
            t
            for t in triples
            if t[0] == t[1]
            or not (0 <= t[0] < g.n and 0 <= t[1] < g.n)
            or not np.isfinite(dg[t[0], t[1]])
            or t[2] != int(dg[t[0], t[1]])
        ),
        None,
    )
    checks.append(Check("weight_exactness", "fail" if bad else "pass", witness=bad))

    usable = [
        t
        for t in triples
        if 0 <= t[0] < g.n and 0 <= t[1] < g.n and t[0] != t[1] and t[2] >= 1
    ]
    union = g.union_min(usable)
    dh = hop_limited_dist(union, beta).dist

    lower_bad = np.argwhere(dh < dg)
    checks.append(
        Check(
            "lower_side_exact",
            "fail" if len(lower_bad) else "pass",
            witness=tuple(map(int, lower_bad[0])) if len(lower_bad) else None,
        )
    )

    finite = np.isfinite(dg)
    np.fill_diagonal(finite, False)
    upper_bad = finite & (~np.isfinite(dh) | (den * dh > (den + num) * dg))
    viol = np.argwhere(upper_bad)
    checks.append(
        Check(
            "upper_side_within_stretch",
            "fail" if len(viol) else "pass",
            witness=tuple(map(int, viol[0])) if len(viol) else None,
            detail=f"hop budget {beta}, stretch bound 1+{frac}",
        )
    )

    stretch: Fraction | None = None
    both = finite & np.isfinite(dh)
    if both.any():
        ratios = np.divide(
            dh, np.maximum(dg, 1), out=np.zeros_like(dh), where=both
        )
        flat = int(np.argmax(ratios))
        u, v = flat // g.n, flat % g.n
        stretch = Fraction(int(dh[u, v]), int(dg[u, v]))
    return VerificationReport(
        instance,
        tuple(checks),
        achieved_stretch=stretch,
        achieved_hops=beta,
    )


def _hop_exact_pairs(
    dist: np.ndarray, ids: Sequence[int], hops: int
) -> dict[tuple[int, int], int]:
    """Enumerate pairs joined by an exactly-``hops``-hop shortest closure path.

    Pure DFS over vertex tuples; exponential, callers guard the size.
    """
    found: dict[tuple[int, int], int] = {}
    idlist = [int(v) for v in ids]

    def extend(prefix: list[int], cost: int) -> None:
        if len(prefix) == hops + 1:
            a, b = prefix[0], prefix[-1]
            if cost == dist[a, b]:
                key = (a, b)
                if key not in found or cost < found[key]:
                    found[key] = cost
            return
        last = prefix[-1]
        for nxt in idlist:
            if nxt in prefix:
                continue
            step = dist[last, nxt]
            # A prefix that is not itself shortest can never complete into a
            # shortest path, so prune on the running cost.
            if np.isfinite(step) and cost + int(step) == dist[prefix[0], nxt]:
                extend(prefix + [nxt], cost + int(step))

    for start in idlist:
        extend([start], 0)
    return found


def verify_nice(g: WeightedDigraph, q, instance: str = "") -> VerificationReport:
    """Re-check the nice-path collection properties N1 through N6."""
    beta = int(q.beta)
    hops = beta // 12
    paths = [tuple(int(v) for v in p) for p in q.paths]
    weights = [tuple(int(w) for w in ws) for ws in q.edge_weights]
    lengths = [int(x) for x in q.lengths]
    dg = apsp(g).dist
    checks: list[Check] = []

    seen: set[int] = set()
    overlap = None
    for p in paths:
        for v in p:
            if v in seen:
                overlap = (v,)
            seen.add(v)
    closure_bad = next(
        (
            (p[i], p[i + 1])
            for p, ws in zip(paths, weights)
            for i in range(len(p) - 1)
            if not np.isfinite(dg[p[i], p[i + 1]])
            or ws[i] != int(dg[p[i], p[i + 1]])
        ),
        None,
    )
    n1 = overlap or closure_bad
    checks.append(Check("n1_disjoint_closure_paths", "fail" if n1 else "pass", witness=n1))

    n2 = next(
        (tuple(p) for p in paths if len(p) != hops + 1 or len(set(p)) != len(p)), None
    )
    checks.append(Check("n2_exact_hop_count", "fail" if n2 else "pass", witness=n2))

    n3 = next(
        (
            (p[0], p[-1])
            for p, total in zip(paths, lengths)
            if not np.isfinite(dg[p[0], p[-1]]) or total != int(dg[p[0], p[-1]])
        ),
        None,
    )
    checks.append(Check("n3_length_is_distance", "fail" if n3 else "pass", witness=n3))

    n4 = next(
        (
            (i, lengths[i], lengths[i + 1])
            for i in range(len(lengths) - 1)
            if lengths[i] > lengths[i + 1]
        ),
        None,
    )
    checks.append(Check("n4_lengths_nondecreasing", "fail" if n4 else "pass", witness=n4))

    if g.n > ENUMERATION_VERTEX_CAP:
        checks.append(Check("n5_locally_minimal", "skip", detail="enumeration cap"))
        checks.append(Check("n6_no_long_residual_path", "skip", detail="enumeration cap"))
        return VerificationReport(instance, tuple(checks))

    alive = set(range(g.n))
    n5 = None
    for p, total in zip(paths, lengths):
        candidates = _hop_exact_pairs(dg, sorted(alive), hops)
        best = min(candidates.values(), default=None)
        if best is None or total != best:
            n5 = (p[0], p[-1], total, best)
            break
        alive -= set(p)
    checks.append(Check("n5_locally_minimal", "fail" if n5 else "pass", witness=n5))

    if n5 is None:
        alive = set(range(g.n)) - seen
        leftover = _hop_exact_pairs(dg, sorted(alive), hops)
        n6 = min(leftover.items(), key=lambda kv: kv[1])[0] if leftover else None
        checks.append(
            Check("n6_no_long_residual_path", "fail" if n6 else "pass", witness=n6)
        )
    else:
        checks.append(Check("n6_no_long_residual_path", "skip", detail="n5 failed"))
    return VerificationReport(instance, tuple(checks))


def _kahn_order(g: Digraph) -> list[int]:
    """Vertices peelable by repeated in-degree-0 deletion; complete iff acyclic."""
    indeg = [0] * g.n
    adj: list[list[int]] = [[] for _ in range(g.n)]
    for u, v in sorted(g.edges):
        adj[u].append(v)
        indeg[v] += 1
    queue = sorted(v for v in range(g.n) if indeg[v] == 0)
    order: list[int] = []
    while queue:
        v = queue.pop(0)
        order.append(v)
        for w in adj[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return order


def check_lb_properties(
    g: Digraph,
    paths: Sequence[Sequence[int]],
    max_degree: int | None = None,
    min_path_length: int | None = None,
    instance: str = "",
) -> VerificationReport:
    """Structural properties of a path family over a bounded-degree DAG."""
    paths = [tuple(int(v) for v in p) for p in paths]
    checks: list[Check] = []

    peel = _kahn_order(g)
    order = peel if len(peel) == g.n else None
    if order is None:
        stuck = tuple(sorted(set(range(g.n)) - set(peel)))[:4]
        checks.append(Check("acyclic", "fail", witness=stuck))
    else:
        checks.append(Check("acyclic", "pass"))

    indeg = np.zeros(g.n, dtype=np.int64)
    outdeg = np.zeros(g.n, dtype=np.int64)
    for u, v in g.edges:
        outdeg[u] += 1
        indeg[v] += 1
    d_in = int(indeg.max()) if g.n else 0
    d_out = int(outdeg.max()) if g.n else 0
    if max_degree is None:
        checks.append(Check("degree_bound", "pass", detail=f"in {d_in}, out {d_out}"))
    else:
        over = max(d_in, d_out) > max_degree
        checks.append(
            Check(
                "degree_bound",
                "fail" if over else "pass",
                witness=(d_in, d_out) if over else None,
                detail=f"threshold {max_degree}",
            )
        )

    bad_edge = next(
        (
            (p[i], p[i + 1])
            for p in paths
            for i in range(len(p) - 1)
            if (p[i], p[i + 1]) not in g.edges
        ),
        None,
    )
    checks.append(Check("paths_in_graph", "fail" if bad_edge else "pass", witness=bad_edge))

    if min_path_length is not None:
        short = next((tuple(p) for p in paths if len(p) - 1 < min_path_length), None)
        checks.append(
            Check(
                "path_length_at_least",
                "fail" if short else "pass",
                witness=short,
                detail=f"threshold {min_path_length}",
            )
        )

    if order is not None:
        adj: dict[int, list[int]] = {v: [] for v in range(g.n)}
        for u, v in g.edges:
            adj[u].append(v)
        nonunique = None
        for p in paths:
            s, t = p[0], p[-1]
            count = {s: 1}
            for v in order:
                cv = count.get(v, 0)
                if cv:
                    for w in adj[v]:
                        count[w] = count.get(w, 0) + cv
            if count.get(t, 0) != 1:
                nonunique = (s, t, count.get(t, 0))
                break
        checks.append(
            Check("unique_path", "fail" if nonunique else "pass", witness=nonunique)
        )
    else:
        checks.append(Check("unique_path", "skip", detail="input cyclic"))

    crossing = None
    for i in range(len(paths)):
        for j in range(i + 1, len(paths)):
            shared = set(paths[i]) & set(paths[j])
            if len(shared) > 1:
                crossing = (i, j, tuple(sorted(shared)))
                break
        if crossing:
            break
    checks.append(
        Check("pairwise_intersection_le_1", "fail" if crossing else "pass", witness=crossing)
    )

    load = np.zeros(g.n, dtype=np.int64)
    for p in paths:
        for v in set(p):
            load[v] += 1
    cap = max(d_in, d_out)
    overload = None
    if g.n and paths:
        worst = int(load.argmax())
        if load[worst] > cap:
            overload = (worst, int(load[worst]), cap)
    checks.append(
        Check("vertex_load_bounded", "fail" if overload else "pass", witness=overload)
    )
    return VerificationReport(instance, tuple(checks))
