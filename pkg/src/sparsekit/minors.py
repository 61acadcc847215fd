"""Shallow (bounded-depth) minors.

A depth-r model of H in G assigns each H-vertex a branch set: the sets are
disjoint, each induces a connected subgraph of radius at most r, and every
H-edge has a witnessing G-edge between the two branch sets.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import CapabilityError, GraphInputError
from .graph import Graph, bfs_distances, set_radius
from .rng import Rng


@dataclass(frozen=True)
class MinorModel:
    depth: int
    branch_sets: dict  # h vertex -> frozenset of g vertices
    edge_witness: dict  # (hu, hv) with hu < hv -> (gu, gv), gu in branch(hu)

    def to_json(self):
        return {
            "depth": self.depth,
            "branch_sets": {str(h): sorted(s) for h, s in self.branch_sets.items()},
            "edge_witness": {
                f"{hu},{hv}": list(w) for (hu, hv), w in sorted(self.edge_witness.items())
            },
        }

    @classmethod
    def from_json(cls, d):
        branch = {int(h): frozenset(s) for h, s in d["branch_sets"].items()}
        witness = {}
        for key, w in d["edge_witness"].items():
            hu, hv = (int(t) for t in key.split(","))
            witness[(hu, hv)] = tuple(w)
        return cls(d["depth"], branch, witness)


def verify_minor_model(g: Graph, h: Graph, model: MinorModel) -> list:
    """Independent validator; returns human-readable violations (empty = ok)."""
    out = []
    if set(model.branch_sets) != set(range(h.n)):
        return [f"branch sets keyed by {sorted(model.branch_sets)}, want range({h.n})"]
    seen = {}
    for hv, vs in sorted(model.branch_sets.items()):
        if not vs:
            out.append(f"branch set of {hv} is empty")
            continue
        for v in vs:
            if not (0 <= v < g.n):
                out.append(f"branch set of {hv} contains foreign vertex {v}")
            elif v in seen:
                out.append(f"vertex {v} in branch sets of both {seen[v]} and {hv}")
            seen[v] = hv
        rad = set_radius(g, vs)
        if rad < 0:
            out.append(f"branch set of {hv} is disconnected")
        elif rad > model.depth:
            out.append(f"branch set of {hv} has radius {rad} > depth {model.depth}")
    for hu, hv in h.edges():
        w = model.edge_witness.get((hu, hv))
        if w is None:
            out.append(f"missing witness for h-edge ({hu},{hv})")
            continue
        a, b = w
        if a not in model.branch_sets.get(hu, ()) or b not in model.branch_sets.get(hv, ()):
            out.append(f"witness {w} for ({hu},{hv}) not in the right branch sets")
        elif not g.has_edge(a, b):
            out.append(f"witness {w} for ({hu},{hv}) is not an edge of g")
    return out


def find_depth_r_minor(
    g: Graph, h: Graph, r: int, max_h: int = 5, max_g: int = 20
) -> MinorModel | None:
    """Exhaustive search for a depth-r model of h in g.

    Enumerates injective root choices (pruned by pairwise distance), then
    satisfies h-edges one at a time by growing both branch sets along paths of
    length <= r from their roots.  Any model shrinks to a union of such root
    paths, so the search is complete within the caps.
    """
    if h.n > max_h:
        raise CapabilityError(f"pattern capped at {max_h} vertices", "max_h", max_h)
    if g.n > max_g:
        raise CapabilityError(f"host capped at {max_g} vertices", "max_g", max_g)
    if r < 0:
        raise GraphInputError(f"depth must be >= 0, got {r}")
    if h.n == 0:
        return MinorModel(r, {}, {})
    if h.n > g.n:
        return None

    dist = [bfs_distances(g, (v,)) for v in range(g.n)]
    h_edges = sorted(h.edges())
    # roots of adjacent pattern vertices must lie within 2r+1 of each other
    limit = 2 * r + 1
    h_is_clique = all(
        h.has_edge(i, j) for i in range(h.n) for j in range(i + 1, h.n)
    )
    # choose roots for high-degree pattern vertices first
    h_order = sorted(range(h.n), key=lambda v: (-h.degree(v), v))
    owner = [-1] * g.n
    roots = {}

    def paths_from(root: int, target: int, hv: int):
        """Ways to pull `target` into the branch set of hv: each is the free
        part of a simple root->target path of length <= r through vertices
        that are free or already owned by hv."""
        if owner[target] == hv:
            yield []  # already in the set, and within radius by construction
            return
        stack = [(root, [root])]
        while stack:
            x, path = stack.pop()
            if x == target:
                yield [v for v in path if owner[v] == -1]
                continue
            if len(path) > r:
                continue
            for w in g.adj[x]:
                if w not in path and owner[w] in (-1, hv):
                    stack.append((w, path + [w]))

    def satisfy(edge_idx: int, witness: dict) -> bool:
        if edge_idx == len(h_edges):
            return True
        hu, hv = h_edges[edge_idx]
        for a in sorted(range(g.n), key=lambda v: dist[roots[hu]].get(v, g.n)):
            if owner[a] not in (-1, hu) or dist[roots[hu]].get(a, g.n + 1) > r:
                continue
            for b in g.adj[a]:
                if owner[b] not in (-1, hv) or dist[roots[hv]].get(b, g.n + 1) > r:
                    continue
                for claim_a in paths_from(roots[hu], a, hu):
                    for v in claim_a:
                        owner[v] = hu
                    for claim_b in paths_from(roots[hv], b, hv):
                        for v in claim_b:
                            owner[v] = hv
                        witness[(hu, hv)] = (a, b)
                        if satisfy(edge_idx + 1, witness):
                            return True
                        del witness[(hu, hv)]
                        for v in claim_b:
                            owner[v] = -1
                    for v in claim_a:
                        owner[v] = -1
        return False

    def choose_roots(idx: int) -> MinorModel | None:
        if idx == h.n:
            witness = {}
            if satisfy(0, witness):
                branch = {hv: frozenset(v for v in range(g.n) if owner[v] == hv)
                          for hv in range(h.n)}
                return MinorModel(r, branch, dict(witness))
            return None
        hv = h_order[idx]
        for c in range(g.n):
            if owner[c] != -1:
                continue
            if h_is_clique and idx > 0 and c < roots[h_order[idx - 1]]:
                continue  # interchangeable branch sets: force increasing roots
            ok = True
            for prev in h_order[:idx]:
                if h.has_edge(hv, prev) and dist[c].get(roots[prev], g.n + 1) > limit:
                    ok = False
                    break
            if not ok:
                continue
            owner[c] = hv
            roots[hv] = c
            got = choose_roots(idx + 1)
            if got is not None:
                return got
            owner[c] = -1
            del roots[hv]
        return None

    model = choose_roots(0)
    if model is not None:
        bad = verify_minor_model(g, h, model)
        assert not bad, f"search produced an invalid model: {bad}"
    return model


def has_shallow_clique(g: Graph, r: int, k: int, max_g: int = 20) -> bool:
    from .graphio import complete_graph

    return find_depth_r_minor(g, complete_graph(k), r, max_h=k, max_g=max_g) is not None


# ------------------------------------------------------------ density report

@dataclass(frozen=True)
class DensityReport:
    """Best edge density |E(H)|/|V(H)| over the depth-r minors the search
    visited.  This is a lower bound on the true maximum, nothing more."""

    depth: int
    density: float
    minor_n: int
    minor_m: int
    model: MinorModel
    attempts: int
    lower_bound: bool = field(default=True)

    def to_json(self):
        return {
            "depth": self.depth,
            "density": self.density,
            "minor_n": self.minor_n,
            "minor_m": self.minor_m,
            "attempts": self.attempts,
            "lower_bound": self.lower_bound,
            "model": self.model.to_json(),
        }


def _voronoi_quotient(g: Graph, centers: list, r: int):
    """Claim each vertex for its nearest center within distance r (ties to
    the earliest center); BFS-tree paths stay inside a cell, so every cell
    has radius <= r around its center."""
    from collections import deque

    owner = {}
    dist = {}
    q = deque()
    for i, c in enumerate(centers):
        if c not in owner:
            owner[c] = i
            dist[c] = 0
            q.append(c)
    while q:
        u = q.popleft()
        if dist[u] == r:
            continue
        for w in g.adj[u]:
            if w not in owner:
                owner[w] = owner[u]
                dist[w] = dist[u] + 1
                q.append(w)
    cells = {}
    for v, i in owner.items():
        cells.setdefault(i, set()).add(v)
    quotient_edges = {}
    for u, v in g.edges():
        if u in owner and v in owner and owner[u] != owner[v]:
            key = (min(owner[u], owner[v]), max(owner[u], owner[v]))
            quotient_edges.setdefault(key, (u, v) if owner[u] < owner[v] else (v, u))
    return cells, quotient_edges


def density_report(g: Graph, r: int, budget: int = 200, seed: int = 0) -> DensityReport:
    """Randomized greedy search over center sets: contract the radius-r
    Voronoi cells of a candidate center set and keep whatever maximizes edge
    density.  Deterministic for a fixed seed."""
    if g.n == 0:
        raise GraphInputError("density undefined for the empty graph")
    rng = Rng(seed)
    by_degree = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    attempts = 0
    best = None  # (density, cells, edges, centers)

    def consider(centers: list):
        nonlocal best, attempts
        centers = sorted(set(centers))
        if not centers:
            return
        attempts += 1
        cells, qedges = _voronoi_quotient(g, centers, r)
        dens = len(qedges) / len(cells)
        if best is None or dens > best[0]:
            best = (dens, cells, qedges, centers)

    consider(list(range(g.n)))
    for k in range(1, g.n + 1):
        consider(by_degree[:k])
    for _ in range(budget):
        k = 1 + rng.randint(g.n)
        pool = list(range(g.n))
        rng.shuffle(pool)
        consider(pool[:k])
        if best is not None and len(best[3]) > 1:
            # local move: drop one random center from the incumbent
            drop = rng.choice(best[3])
            consider([c for c in best[3] if c != drop])

    dens, cells, qedges, _ = best
    idx = {cell_id: i for i, cell_id in enumerate(sorted(cells))}
    branch = {idx[cid]: frozenset(vs) for cid, vs in cells.items()}
    witness = {
        (idx[a], idx[b]): w for (a, b), w in qedges.items()
    }
    model = MinorModel(r, branch, witness)
    minor = Graph(len(branch), list(witness))
    bad = verify_minor_model(g, minor, model)
    assert not bad, f"density search produced an invalid model: {bad}"
    return DensityReport(r, dens, minor.n, minor.m, model, attempts)
