"""Vertex orders, weak reachability, coloring numbers, treedepth.

A vertex u is weakly r-reachable from v under an order when u comes no later
than v and some path of length at most r joins them whose internal vertices
all come strictly after u.  Every vertex is weakly reachable from itself via
the empty path, so wreach sets are never empty.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import CapabilityError, GraphInputError, PreconditionError
from .graph import Graph


class VertexOrder:
    __slots__ = ("perm", "rank")

    def __init__(self, perm):
        perm = tuple(perm)
        n = len(perm)
        rank = [-1] * n
        for i, v in enumerate(perm):
            if not (isinstance(v, int) and 0 <= v < n) or rank[v] != -1:
                raise GraphInputError(f"not a permutation of range({n}): {perm}")
            rank[v] = i
        self.perm = perm
        self.rank = tuple(rank)

    def __len__(self):
        return len(self.perm)

    def __eq__(self, other):
        return isinstance(other, VertexOrder) and self.perm == other.perm

    def __hash__(self):
        return hash(self.perm)

    def __repr__(self):
        return f"VertexOrder({list(self.perm)})"

    def to_json(self):
        return {"order": list(self.perm)}

    @classmethod
    def from_json(cls, d):
        return cls(d["order"])


def identity_order(n: int) -> VertexOrder:
    return VertexOrder(range(n))


def _check_order(g: Graph, order: VertexOrder) -> None:
    if len(order) != g.n:
        raise GraphInputError(f"order on {len(order)} vertices, graph has {g.n}")


def wreach_sets(g: Graph, order: VertexOrder, r: int, active=None) -> dict:
    """Weak-r-reachability sets for every (active) vertex.

    Computed backwards: a BFS from u that only moves through vertices ranked
    strictly above u finds exactly the vertices whose wreach set contains u.
    """
    _check_order(g, order)
    if r < 0:
        raise GraphInputError(f"radius must be >= 0, got {r}")
    rank = order.rank
    verts = range(g.n) if active is None else sorted(active)
    allowed = None if active is None else set(active)
    sets = {v: {v} for v in verts}
    for u in verts:
        ru = rank[u]
        seen = {u}
        frontier = [u]
        for _ in range(r):
            nxt = []
            for x in frontier:
                for w in g.adj[x]:
                    if w in seen or rank[w] <= ru:
                        continue
                    if allowed is not None and w not in allowed:
                        continue
                    seen.add(w)
                    sets[w].add(u)
                    nxt.append(w)
            if not nxt:
                break
            frontier = nxt
    return {v: frozenset(s) for v, s in sets.items()}


def wcol_of_order(g: Graph, order: VertexOrder, r: int, active=None) -> int:
    sets = wreach_sets(g, order, r, active)
    return max((len(s) for s in sets.values()), default=0)


# ------------------------------------------------------------ greedy orders

def degeneracy_order(g: Graph) -> VertexOrder:
    """Repeatedly remove a minimum-degree vertex (ties by id); the removal
    sequence reversed is the order.  Its wcol_1 equals the coloring number."""
    deg = [g.degree(v) for v in range(g.n)]
    alive = set(range(g.n))
    removed = []
    for _ in range(g.n):
        v = min(alive, key=lambda x: (deg[x], x))
        alive.discard(v)
        removed.append(v)
        for w in g.adj[v]:
            if w in alive:
                deg[w] -= 1
    return VertexOrder(reversed(removed))


def coloring_number(g: Graph) -> tuple[int, VertexOrder]:
    order = degeneracy_order(g)
    return wcol_of_order(g, order, 1), order


def greedy_wreach_order(g: Graph, r: int) -> VertexOrder:
    """Fill positions right to left; each step places the vertex that keeps
    the worst already-determined wreach size smallest (ties by id).

    Placing x below the current suffix finalizes exactly the pairs where x is
    weakly reached through suffix vertices, so the partial maximum is exact.
    """
    placed = set()
    counts = {}
    suffix = []  # placement sequence, last position first
    cur_max = 0
    remaining = set(range(g.n))
    while remaining:
        best = None
        for x in sorted(remaining):
            reached = _reach_through(g, x, placed, r)
            new_max = max(cur_max, 1, max((counts[w] + 1 for w in reached), default=0))
            if best is None or new_max < best[0]:
                best = (new_max, x, reached)
        cur_max, x, reached = best
        for w in reached:
            counts[w] += 1
        counts[x] = 1
        placed.add(x)
        remaining.discard(x)
        suffix.append(x)
    return VertexOrder(reversed(suffix))


def _reach_through(g: Graph, x: int, allowed: set, r: int) -> list:
    seen = {x}
    frontier = [x]
    out = []
    for _ in range(r):
        nxt = []
        for y in frontier:
            for w in g.adj[y]:
                if w in allowed and w not in seen:
                    seen.add(w)
                    out.append(w)
                    nxt.append(w)
        if not nxt:
            break
        frontier = nxt
    return out


_STRATEGIES = ("degeneracy", "greedy_wreach")


def wcol_heuristic(g: Graph, r: int, strategy: str = "degeneracy") -> tuple[int, VertexOrder]:
    """Heuristic order; the returned value is always recomputed exactly."""
    if strategy == "degeneracy":
        order = degeneracy_order(g)
    elif strategy == "greedy_wreach":
        order = greedy_wreach_order(g, r)
    else:
        raise GraphInputError(f"unknown strategy {strategy!r}, want one of {_STRATEGIES}")
    return wcol_of_order(g, order, r), order


# ------------------------------------------------------------- exact search

def _iter_bits(mask: int):
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


def wcol_exact(g: Graph, r: int, cap: int = 10) -> tuple[int, VertexOrder]:
    """Minimum wcol_r over all orders, by branch and bound over prefixes.

    Placing u next fixes which vertices u is weakly reached by (everything
    still unplaced is ranked above u), so per-vertex wreach counts only grow
    along a branch and the running maximum prunes.
    """
    if g.n > cap:
        raise CapabilityError(
            f"wcol_exact capped at {cap} vertices, graph has {g.n}", "wcol_exact", cap
        )
    if g.n == 0:
        return 0, VertexOrder(())
    best_val, best_order = g.n + 1, None
    for strategy in _STRATEGIES:
        val, order = wcol_heuristic(g, r, strategy)
        if val < best_val:
            best_val, best_order = val, order
    masks = g.adjacency_masks()
    counts = [0] * g.n
    prefix = []

    def cluster(u: int, rest: int) -> int:
        seen = 1 << u
        frontier = 1 << u
        out = 0
        for _ in range(r):
            nxt = 0
            f = frontier
            while f:
                b = f & -f
                f ^= b
                nxt |= masks[b.bit_length() - 1]
            nxt &= rest & ~seen
            if not nxt:
                break
            seen |= nxt
            frontier = nxt
            out |= nxt
        return out

    def dfs(unplaced: int, cur_max: int) -> None:
        nonlocal best_val, best_order
        if cur_max >= best_val:
            return
        if not unplaced:
            best_val = cur_max
            best_order = VertexOrder(tuple(prefix))
            return
        cands = sorted(_iter_bits(unplaced), key=lambda w: (-counts[w], w))
        if counts[cands[0]] + 1 >= best_val:
            return  # some unplaced vertex is already at the limit
        for u in cands:
            rest = unplaced ^ (1 << u)
            reached = cluster(u, rest)
            counts[u] += 1
            touched = list(_iter_bits(reached))
            for w in touched:
                counts[w] += 1
            prefix.append(u)
            dfs(rest, max(cur_max, counts[u]))
            prefix.pop()
            for w in touched:
                counts[w] -= 1
            counts[u] -= 1

    dfs((1 << g.n) - 1, 0)
    check = wcol_of_order(g, best_order, r)
    assert check == best_val, f"witness order disagrees: {check} != {best_val}"
    return best_val, best_order


# ---------------------------------------------------------------- treedepth

@dataclass(frozen=True)
class EliminationForest:
    """Rooted forest on the graph's vertices; parent[v] == -1 at roots."""

    parent: tuple

    def depth_of(self, v: int) -> int:
        d = 0
        while v != -1:
            d += 1
            v = self.parent[v]
        return d

    @property
    def depth(self) -> int:
        return max((self.depth_of(v) for v in range(len(self.parent))), default=0)

    def to_json(self):
        return {"parent": list(self.parent)}

    @classmethod
    def from_json(cls, d):
        return cls(tuple(d["parent"]))


def validate_elimination_forest(g: Graph, forest: EliminationForest, claimed=None) -> list:
    """Independent checks: acyclic parent map, every edge within an
    ancestor chain, and (optionally) the claimed depth.  Returns violations."""
    out = []
    if len(forest.parent) != g.n:
        return [f"forest covers {len(forest.parent)} vertices, graph has {g.n}"]
    ancestors = {}
    for v in range(g.n):
        chain = []
        x = v
        while x != -1:
            if x in chain or len(chain) > g.n:
                out.append(f"parent cycle reached from {v}")
                return out
            chain.append(x)
            x = forest.parent[x]
        ancestors[v] = set(chain)
    for u, v in g.edges():
        if u not in ancestors[v] and v not in ancestors[u]:
            out.append(f"edge ({u},{v}) joins unrelated branches")
    if claimed is not None and forest.depth != claimed:
        out.append(f"claimed depth {claimed}, forest depth {forest.depth}")
    return out


def treedepth_exact(g: Graph, cap: int = 15) -> tuple[int, EliminationForest]:
    """Memoized recursion: td of a connected graph is 1 + the best td over
    single-vertex deletions; disconnected parts are independent."""
    if g.n > cap:
        raise CapabilityError(
            f"treedepth_exact capped at {cap} vertices, graph has {g.n}",
            "treedepth_exact",
            cap,
        )
    masks = g.adjacency_masks()
    memo = {}

    def comps_of(mask: int) -> list:
        out = []
        rest = mask
        while rest:
            seed = rest & -rest
            comp = seed
            frontier = seed
            while frontier:
                nxt = 0
                f = frontier
                while f:
                    b = f & -f
                    f ^= b
                    nxt |= masks[b.bit_length() - 1]
                nxt &= mask & ~comp
                comp |= nxt
                frontier = nxt
            out.append(comp)
            rest &= ~comp
        return out

    def is_clique(vs: list) -> bool:
        return all(masks[u] & (1 << v) for i, u in enumerate(vs) for v in vs[i + 1:])

    def ecc_lower_bound(mask: int, vs: list) -> int:
        # any shortest path is a path subgraph: td >= ceil(log2(len+2))
        start = vs[0]
        dist = {start: 0}
        frontier = [start]
        while frontier:
            nxt = []
            for x in frontier:
                for w in _iter_bits(masks[x] & mask):
                    if w not in dist:
                        dist[w] = dist[x] + 1
                        nxt.append(w)
            frontier = nxt
        return math.ceil(math.log2(max(dist.values()) + 2))

    def td(mask: int) -> int:
        if mask == 0:
            return 0
        got = memo.get(mask)
        if got is not None:
            return got[0]
        cs = comps_of(mask)
        if len(cs) > 1:
            d = max(td(c) for c in cs)
            memo[mask] = (d, None)
            return d
        vs = list(_iter_bits(mask))
        k = len(vs)
        if k == 1:
            memo[mask] = (1, vs[0])
            return 1
        if is_clique(vs):
            memo[mask] = (k, vs[0])
            return k
        lb = ecc_lower_bound(mask, vs)
        by_degree = sorted(vs, key=lambda v: (-(masks[v] & mask).bit_count(), v))
        best, best_root = k + 1, vs[0]
        for v in by_degree:
            d = 1 + td(mask ^ (1 << v))
            if d < best:
                best, best_root = d, v
            if best <= lb:
                break
        memo[mask] = (best, best_root)
        return best

    value = td((1 << g.n) - 1) if g.n else 0
    parent = [-1] * g.n

    def build(mask: int, up: int) -> None:
        for comp in comps_of(mask):
            td(comp)
            _, root = memo[comp]
            parent[root] = up
            build(comp ^ (1 << root), root)

    if g.n:
        build((1 << g.n) - 1, -1)
    forest = EliminationForest(tuple(parent))
    bad = validate_elimination_forest(g, forest, value)
    assert not bad, f"witness forest invalid: {bad}"
    return value, forest


# ------------------------------------------------------------- path lemma

def check_separation(g: Graph, order: VertexOrder, r: int, u: int, v: int) -> bool:
    """Every u-v path of length <= r must meet the intersection of the two
    wreach_r sets (checked by enumerating all such paths).  Requires that the
    earlier endpoint is not weakly r-reachable from the later one."""
    if u == v:
        raise PreconditionError("endpoints must be distinct")
    if order.rank[u] > order.rank[v]:
        u, v = v, u
    sets = wreach_sets(g, order, r)
    if u in sets[v]:
        raise PreconditionError(
            f"vertex {u} is weakly {r}-reachable from {v}; lemma does not apply"
        )
    common = sets[u] & sets[v]
    stack = [(u, [u])]
    while stack:
        x, path = stack.pop()
        if x == v:
            if not common.intersection(path):
                return False
            continue
        if len(path) > r:
            continue
        for w in g.adj[x]:
            if w not in path:
                stack.append((w, path + [w]))
    return True
