"""Quasi-wideness extraction, balanced neighborhood separators, and sparse
neighborhood covers.

Everything here returns a certificate object carrying the sets it claims and
a `verified` flag; the flag is set exclusively by the definition-level
validators at the bottom of the module, which share no code with the
constructions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import AlgorithmStallError, CapabilityError, PreconditionError
from .graph import Graph, ball, bfs_distances, components, set_radius
from .orders import VertexOrder, wcol_of_order, wreach_sets


# ------------------------------------------------------------ certificates

@dataclass
class UqwCertificate:
    r: int
    m: int
    A: frozenset
    S: frozenset
    B: frozenset
    wcol_bound: int           # c = wcol_of_order for the order used
    guarantee_applies: bool   # |A| >= 4*(2cm)^c held on input
    verified: bool = False

    def to_json(self):
        return {
            "kind": "uqw",
            "r": self.r,
            "m": self.m,
            "A": sorted(self.A),
            "S": sorted(self.S),
            "B": sorted(self.B),
            "wcol_bound": self.wcol_bound,
            "guarantee_applies": self.guarantee_applies,
            "verified": self.verified,
        }

    @classmethod
    def from_json(cls, d):
        return cls(d["r"], d["m"], frozenset(d["A"]), frozenset(d["S"]),
                   frozenset(d["B"]), d["wcol_bound"], d["guarantee_applies"],
                   d.get("verified", False))


@dataclass
class SeparatorCertificate:
    r: int
    eps: float
    A: frozenset
    S: frozenset
    worst_ball_count: int
    iterations: int
    verified: bool = False

    @property
    def worst_ball_fraction(self) -> float:
        return self.worst_ball_count / len(self.A) if self.A else 0.0

    def to_json(self):
        return {
            "kind": "separator",
            "r": self.r,
            "eps": self.eps,
            "A": sorted(self.A),
            "S": sorted(self.S),
            "worst_ball_count": self.worst_ball_count,
            "worst_ball_fraction": self.worst_ball_fraction,
            "iterations": self.iterations,
            "verified": self.verified,
        }

    @classmethod
    def from_json(cls, d):
        return cls(d["r"], d["eps"], frozenset(d["A"]), frozenset(d["S"]),
                   d["worst_ball_count"], d.get("iterations", 0),
                   d.get("verified", False))


@dataclass
class Cover:
    r: int
    clusters: dict            # center -> frozenset of vertices
    radius_bound: int
    max_degree: int
    verified: bool = False

    def to_json(self):
        return {
            "kind": "cover",
            "r": self.r,
            "clusters": {str(c): sorted(vs) for c, vs in sorted(self.clusters.items())},
            "radius_bound": self.radius_bound,
            "max_degree": self.max_degree,
            "verified": self.verified,
        }

    @classmethod
    def from_json(cls, d):
        clusters = {int(c): frozenset(vs) for c, vs in d["clusters"].items()}
        return cls(d["r"], clusters, d["radius_bound"], d["max_degree"],
                   d.get("verified", False))


@dataclass
class PartitionCover:
    r: int
    parts: list               # list of frozensets of vertices
    verified: bool = False

    @property
    def n_parts(self) -> int:
        return len(self.parts)

    def to_json(self):
        return {
            "kind": "partition",
            "r": self.r,
            "parts": [sorted(p) for p in self.parts],
            "n_parts": self.n_parts,
            "verified": self.verified,
        }

    @classmethod
    def from_json(cls, d):
        return cls(d["r"], [frozenset(p) for p in d["parts"]],
                   d.get("verified", False))


# ----------------------------------------------------------- uqw extraction

def uqw_extract(g: Graph, A, r: int, m: int, pi: VertexOrder) -> UqwCertificate:
    """Delete few vertices so that many elements of A become pairwise far.

    Removal loop: while some vertex u is weakly r-reachable (under pi, in the
    current G-S) from more than |A|/(2m) current members of A (and from at
    least two, so a vertex never evicts A on its own account), delete the
    most frequent such u and shrink A to u's witnesses.  Each surviving
    member then weakly reaches every deleted vertex, so the loop fires fewer
    than c = wcol_of_order(g, pi, r) times and |S| < c always.

    B is then picked greedily from A-S with pairwise disjoint weak-r-reach
    sets in G-S, which forces pairwise distance > r there.  The greedy scans
    the surviving shrunken A first: at termination no vertex is weakly
    reachable from more than max(1, |A_final|/(2m)) survivors, so each pick
    blocks at most c times that many survivors and the prefix alone yields
    |B| >= 2m/c whenever |A_final| >= 2m; under the input guarantee
    |A| >= 4*(2cm)^c that is |B| >= m for c <= 2.  The rest of A-S can only
    add to B.
    """
    A = frozenset(A)
    if not A:
        raise PreconditionError("A must be nonempty")
    if r < 1:
        raise PreconditionError("r must be >= 1")
    c = wcol_of_order(g, pi, r)
    guarantee = len(A) >= 4 * (2 * c * m) ** c

    S = []
    current = set(A)
    while True:
        active = frozenset(range(g.n)) - set(S)
        sets = wreach_sets(g, pi, r, active)
        freq = {}
        for a in current:
            for u in sets[a]:
                freq[u] = freq.get(u, 0) + 1
        cands = [u for u, f in freq.items()
                 if f > len(current) / (2 * m) and f >= 2]
        if not cands:
            break
        u = min(cands, key=lambda x: (-freq[x], x))
        S.append(u)
        current = {a for a in current if u in sets[a]} - {u}
        assert len(S) <= c, "removal loop exceeded its structural bound"

    active = frozenset(range(g.n)) - set(S)
    sets = wreach_sets(g, pi, r, active)
    B = set()
    used = set()
    for a in sorted(current) + sorted(A - set(S) - current):
        if not (sets[a] & used):
            B.add(a)
            used |= sets[a]

    cert = UqwCertificate(r, m, A, frozenset(S), frozenset(B), c, guarantee)
    bad = validate_uqw(g, cert)
    assert not bad, f"construction produced an invalid certificate: {bad}"
    return cert


def _max_independent_lex(masks, cand: int, lowbits) -> list:
    """Lexicographically least maximum independent set in the graph given by
    bit masks, restricted to the candidate mask."""

    memo = {}

    def best(cand):
        if cand == 0:
            return 0
        got = memo.get(cand)
        if got is not None:
            return got
        v = lowbits[cand & -cand]
        take = 1 + best(cand & ~masks[v] & ~(1 << v))
        skip = best(cand & ~(1 << v))
        memo[cand] = out = max(take, skip)
        return out

    out = []
    want = best(cand)
    while want:
        v = lowbits[cand & -cand]
        if 1 + best(cand & ~masks[v] & ~(1 << v)) == want:
            out.append(v)
            cand &= ~masks[v] & ~(1 << v)
            want -= 1
        else:
            cand &= ~(1 << v)
    return out


def uqw_brute(g: Graph, A, r: int, m: int, s_max: int,
              n_cap: int = 18, s_cap: int = 3):
    """Exhaustive ground truth: try every deletion set of size <= s_max and
    take a maximum distance-r independent subset of A (exact, via maximum
    independent set in the r-th power restricted to A).  Returns the best
    certificate or None when no S achieves |B| >= m."""
    from itertools import combinations

    A = frozenset(A)
    if g.n > n_cap:
        raise CapabilityError(f"uqw_brute capped at {n_cap} vertices, got {g.n}",
                              "uqw_brute_n", n_cap)
    if s_max > s_cap:
        raise CapabilityError(f"uqw_brute capped at deletion sets of {s_cap}",
                              "uqw_brute_s", s_cap)
    lowbits = {1 << v: v for v in range(g.n)}
    best = None
    for size in range(s_max + 1):
        for S in combinations(range(g.n), size):
            active = frozenset(range(g.n)) - set(S)
            pool = sorted(A & active)
            masks = [0] * g.n
            for a in pool:
                dist = bfs_distances(g, (a,), r, active)
                for w, d in dist.items():
                    if w != a and w in A and d <= r:
                        masks[a] |= 1 << w
            cand = 0
            for a in pool:
                cand |= 1 << a
            B = _max_independent_lex(masks, cand, lowbits)
            if best is None or len(B) > len(best[1]):
                best = (frozenset(S), B)
    if best is None or len(best[1]) < m:
        return None
    S, B = best
    cert = UqwCertificate(r, m, A, S, frozenset(B), -1, False)
    bad = validate_uqw(g, cert)
    assert not bad, f"oracle produced an invalid certificate: {bad}"
    return cert


# ------------------------------------------------------- balanced separator

def balanced_separator(g: Graph, A, r: int, eps: float,
                       pi: VertexOrder) -> SeparatorCertificate:
    """Exchange algorithm: maintain X such that every vertex outside X has a
    sparse r-ball (at most eps*|A| members of A in G-X).  Each step extracts
    a far-apart subset X' of X at radius 4r, keeps the part X'' whose
    2r-balls are already sparse in G-Y, and trades X'' for the deletion set
    Y.  Stops when a step no longer shrinks X; theory says that cannot
    happen while |X| exceeds 4*(2cm)^c, so a stall up there is an error."""
    A = frozenset(A)
    if not A:
        raise PreconditionError("A must be nonempty")
    if not 0 < eps <= 1:
        raise PreconditionError("eps must be in (0, 1]")
    if r < 1:
        raise PreconditionError("r must be >= 1")

    c = wcol_of_order(g, pi, 4 * r)
    m = int(1 / eps) + c + 1
    n_theory = 4 * (2 * c * m) ** c
    budget = eps * len(A)

    X = frozenset(range(g.n))
    iterations = 0
    while X:
        outside = frozenset(range(g.n)) - X
        for v in outside:
            hit = sum(1 for w in bfs_distances(g, (v,), r, outside) if w in A)
            assert hit <= budget, \
                f"exchange loop broke its invariant at vertex {v}"
        uqw = uqw_extract(g, X, 4 * r, m, pi)
        Y = set(uqw.S)
        keep = frozenset(range(g.n)) - Y
        X2 = set()
        for v in sorted(uqw.B):
            hit = sum(1 for w in bfs_distances(g, (v,), 2 * r, keep) if w in A)
            if hit <= budget:
                X2.add(v)
        if len(X2) <= len(Y):
            if len(X) > n_theory:
                raise AlgorithmStallError(
                    "exchange step failed to shrink X above the theory bound",
                    state={"X": sorted(X), "Y": sorted(Y), "X2": sorted(X2),
                           "n_theory": n_theory, "iterations": iterations})
            break
        X = (X - X2) | Y
        iterations += 1

    S = X
    worst = 0
    keep = frozenset(range(g.n)) - S
    for v in keep:
        hit = sum(1 for w in bfs_distances(g, (v,), r, keep) if w in A)
        worst = max(worst, hit)
    cert = SeparatorCertificate(r, eps, A, S, worst, iterations)
    bad = validate_separator(g, cert)
    assert not bad, f"construction produced an invalid certificate: {bad}"
    return cert


# ------------------------------------------------------------------- covers

def wreach_clusters(g: Graph, pi: VertexOrder, r: int) -> dict:
    """cluster(u) = the vertices u is weakly r-reachable from (u included).
    Each cluster is connected with radius <= r around u, since weak-reach
    paths stay inside the cluster."""
    out = {v: set() for v in range(g.n)}
    sets = wreach_sets(g, pi, r)
    for w in range(g.n):
        for u in sets[w]:
            out[u].add(w)
    return {u: frozenset(vs) for u, vs in out.items()}


def neighborhood_cover(g: Graph, r: int, pi: VertexOrder) -> Cover:
    """Clusters are the weak-2r-reach clusters of the order-minimum m(v) of
    each r-ball; the ball around v then sits inside the cluster of m(v), and
    a vertex belongs to at most wcol_of_order(g, pi, 2r) clusters."""
    all_clusters = wreach_clusters(g, pi, 2 * r)
    centers = set()
    for v in range(g.n):
        centers.add(min(ball(g, v, r), key=lambda u: pi.rank[u]))
    clusters = {u: all_clusters[u] for u in sorted(centers)}
    degree = [0] * g.n
    for vs in clusters.values():
        for v in vs:
            degree[v] += 1
    cover = Cover(r, clusters, 2 * r, max(degree) if degree else 0)
    bad = validate_cover(g, cover)
    assert not bad, f"construction produced an invalid cover: {bad}"
    return cover


def partition_cover(g: Graph, r: int, pi: VertexOrder) -> PartitionCover:
    """Color vertices greedily along the order so that no vertex shares a
    color with anything in its weak-(4r+1)-reach set; collect the
    weak-2r-reach clusters of each color class into one part.  Same-colored
    clusters are disjoint and non-adjacent, so every component of a part is
    a single cluster of radius <= 2r, and every r-ball lands in the part
    colored like the ball's order-minimum."""
    sets = wreach_sets(g, pi, 4 * r + 1)
    color = {}
    for v in pi.perm:
        seen = {color[u] for u in sets[v] if u != v}
        k = 0
        while k in seen:
            k += 1
        color[v] = k
    n_colors = 1 + max(color.values()) if color else 0

    clusters = wreach_clusters(g, pi, 2 * r)
    parts = []
    for i in range(n_colors):
        vs = set()
        for u in range(g.n):
            if color[u] == i:
                vs |= clusters[u]
        parts.append(frozenset(vs))
    pc = PartitionCover(r, parts)
    bad = validate_partition(g, pc)
    assert not bad, f"construction produced an invalid partition cover: {bad}"
    return pc


# --------------------------------------------------------------- validators

def validate_uqw(g: Graph, cert: UqwCertificate) -> list:
    """Definition-level check by plain BFS; sets cert.verified."""
    out = []
    if cert.S & cert.B:
        out.append(f"S and B overlap: {sorted(cert.S & cert.B)}")
    if not cert.B <= cert.A - cert.S:
        out.append("B is not contained in A minus S")
    active = frozenset(range(g.n)) - cert.S
    listed = sorted(cert.B)
    for i, b in enumerate(listed):
        dist = bfs_distances(g, (b,), cert.r, active)
        for other in listed[i + 1:]:
            if other in dist:
                out.append(f"{b} and {other} are only {dist[other]} apart in G-S")
    if cert.guarantee_applies:
        if len(cert.S) > cert.wcol_bound:
            out.append(f"|S| = {len(cert.S)} exceeds the bound {cert.wcol_bound}")
        if len(cert.B) < cert.m:
            out.append(f"|B| = {len(cert.B)} below the target {cert.m}")
    cert.verified = not out
    return out


def validate_separator(g: Graph, cert: SeparatorCertificate) -> list:
    out = []
    keep = frozenset(range(g.n)) - cert.S
    worst = 0
    for v in keep:
        hit = sum(1 for w in bfs_distances(g, (v,), cert.r, keep) if w in cert.A)
        worst = max(worst, hit)
    if worst != cert.worst_ball_count:
        out.append(f"recorded worst ball {cert.worst_ball_count}, measured {worst}")
    if worst > cert.eps * len(cert.A):
        out.append(f"worst ball holds {worst} of {len(cert.A)}, above eps={cert.eps}")
    cert.verified = not out
    return out


def validate_cover(g: Graph, cover: Cover) -> list:
    out = []
    for u, vs in cover.clusters.items():
        if u not in vs:
            out.append(f"center {u} outside its cluster")
            continue
        rad = set_radius(g, vs)
        if rad < 0:
            out.append(f"cluster of {u} is disconnected")
        elif rad > cover.radius_bound:
            out.append(f"cluster of {u} has radius {rad} > {cover.radius_bound}")
    for v in range(g.n):
        b = ball(g, v, cover.r)
        if not any(b <= vs for vs in cover.clusters.values()):
            out.append(f"ball of {v} fits in no cluster")
    degree = [0] * g.n
    for vs in cover.clusters.values():
        for v in vs:
            degree[v] += 1
    measured = max(degree) if degree else 0
    if measured != cover.max_degree:
        out.append(f"recorded degree {cover.max_degree}, measured {measured}")
    cover.verified = not out
    return out


def validate_partition(g: Graph, pc: PartitionCover) -> list:
    out = []
    for v in range(g.n):
        b = ball(g, v, pc.r)
        if not any(b <= p for p in pc.parts):
            out.append(f"ball of {v} fits in no part")
    for i, p in enumerate(pc.parts):
        for comp in components(g, p):
            rad = set_radius(g, comp)
            if rad > 2 * pc.r:
                out.append(f"part {i} has a component of radius {rad} > {2 * pc.r}")
    pc.verified = not out
    return out
