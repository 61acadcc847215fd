"""Immutable simple graphs with dense integer ids, plus BFS-level primitives.

Vertices are 0..n-1.  Adjacency is stored sorted, so any traversal that walks
neighbors in storage order is deterministic.  Deletion returns a fresh graph
with re-densified ids; the original ids survive in the label table.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import GraphInputError


class Graph:
    __slots__ = ("n", "adj", "labels", "_adj_set", "_masks")

    def __init__(self, n: int, edges, labels=None):
        if n < 0:
            raise GraphInputError(f"vertex count must be >= 0, got {n}")
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != n:
                raise GraphInputError(f"{len(labels)} labels for {n} vertices")
        nbrs = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphInputError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise GraphInputError(f"self-loop at vertex {u}")
            if v in nbrs[u]:
                raise GraphInputError(f"duplicate edge ({u},{v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.n = n
        self.adj = tuple(tuple(sorted(s)) for s in nbrs)
        self.labels = labels
        self._adj_set = tuple(frozenset(s) for s in nbrs)
        self._masks = None

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def vertices(self) -> range:
        return range(self.n)

    def edges(self):
        for u in range(self.n):
            for v in self.adj[u]:
                if u < v:
                    yield (u, v)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj_set[u]

    def label_of(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def adjacency_masks(self) -> tuple[int, ...]:
        """Neighbor sets as bitmasks; cached, for subset-heavy searches."""
        if self._masks is None:
            masks = []
            for u in range(self.n):
                m = 0
                for v in self.adj[u]:
                    m |= 1 << v
                masks.append(m)
            self._masks = tuple(masks)
        return self._masks

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class DistanceProfile:
    source: int
    radius: int | None
    dist: dict  # vertex -> hop distance, only vertices within radius


def bfs_distances(g: Graph, sources, radius=None, active=None) -> dict:
    """Hop distances from a set of sources, optionally capped and restricted
    to an `active` vertex set (sources outside it are ignored)."""
    dist = {}
    q = deque()
    for s in sources:
        if active is not None and s not in active:
            continue
        if s not in dist:
            dist[s] = 0
            q.append(s)
    while q:
        u = q.popleft()
        d = dist[u]
        if radius is not None and d == radius:
            continue
        for w in g.adj[u]:
            if w not in dist and (active is None or w in active):
                dist[w] = d + 1
                q.append(w)
    return dist


def distance_profile(g: Graph, v: int, radius=None) -> DistanceProfile:
    _check_vertex(g, v)
    return DistanceProfile(v, radius, bfs_distances(g, (v,), radius))


def ball(g: Graph, v: int, r: int, active=None) -> frozenset:
    """Closed r-neighborhood of v (always contains v)."""
    _check_vertex(g, v)
    if r < 0:
        raise GraphInputError(f"radius must be >= 0, got {r}")
    return frozenset(bfs_distances(g, (v,), r, active))


def multi_source_ball(g: Graph, sources, r: int, active=None) -> frozenset:
    for s in sources:
        _check_vertex(g, s)
    if r < 0:
        raise GraphInputError(f"radius must be >= 0, got {r}")
    return frozenset(bfs_distances(g, sources, r, active))


def components(g: Graph, active=None) -> list[frozenset]:
    """Connected components, ordered by smallest member."""
    todo = sorted(active) if active is not None else range(g.n)
    seen = set()
    out = []
    for v in todo:
        if v not in seen:
            comp = frozenset(bfs_distances(g, (v,), None, active))
            seen |= comp
            out.append(comp)
    return out


def is_connected(g: Graph) -> bool:
    return g.n == 0 or len(bfs_distances(g, (0,))) == g.n


def induced_subgraph(g: Graph, keep) -> tuple[Graph, tuple[int, ...]]:
    """Subgraph on `keep`, re-densified.  Returns (graph, old_ids) where
    old_ids[new_id] is the vertex's id in g; labels carry over."""
    old_ids = tuple(sorted(set(keep)))
    for v in old_ids:
        _check_vertex(g, v)
    new_id = {v: i for i, v in enumerate(old_ids)}
    edges = [
        (new_id[u], new_id[v])
        for u in old_ids
        for v in g.adj[u]
        if u < v and v in new_id
    ]
    labels = tuple(g.label_of(v) for v in old_ids)
    return Graph(len(old_ids), edges, labels), old_ids


def delete_vertices(g: Graph, s) -> Graph:
    """New graph without `s`; original ids preserved in the label table."""
    s = set(s)
    for v in s:
        _check_vertex(g, v)
    sub, _ = induced_subgraph(g, set(range(g.n)) - s)
    return sub


def power_graph(g: Graph, r: int) -> Graph:
    """Same vertices; edge uv iff 1 <= dist_g(u, v) <= r."""
    if r < 0:
        raise GraphInputError(f"radius must be >= 0, got {r}")
    edges = []
    for u in range(g.n):
        for v, d in bfs_distances(g, (u,), r).items():
            if u < v and d >= 1:
                edges.append((u, v))
    return Graph(g.n, edges, g.labels)


def eccentricity(g: Graph, v: int, active=None) -> int:
    dist = bfs_distances(g, (v,), None, active)
    want = len(active) if active is not None else g.n
    if len(dist) != want:
        raise GraphInputError("eccentricity undefined: graph is disconnected")
    return max(dist.values())


def set_radius(g: Graph, vs) -> int:
    """Radius of the subgraph induced on `vs` (distances measured inside the
    set); -1 if it is disconnected."""
    best = None
    for c in vs:
        dist = bfs_distances(g, (c,), None, vs)
        if len(dist) != len(vs):
            return -1
        ecc = max(dist.values())
        if best is None or ecc < best:
            best = ecc
    return best


def radius_of(g: Graph) -> tuple[int, int]:
    """(radius, center) of a connected nonempty graph; ties by smallest id."""
    if g.n == 0:
        raise GraphInputError("radius undefined for the empty graph")
    if not is_connected(g):
        raise GraphInputError("radius undefined: graph is disconnected")
    best = (g.n, -1)
    for v in range(g.n):
        ecc = eccentricity(g, v)
        if ecc < best[0]:
            best = (ecc, v)
    return best


def _check_vertex(g: Graph, v: int) -> None:
    if not (isinstance(v, int) and 0 <= v < g.n):
        raise GraphInputError(f"vertex {v!r} not in range(0, {g.n})")
