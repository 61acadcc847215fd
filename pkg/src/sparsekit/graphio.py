"""Reading, generating, and serializing graphs.

Edge-list format: one edge per line as two whitespace-separated names,
'#' starts a comment, blank lines are skipped.  Vertex ids are assigned by
first appearance and the original names are kept as labels.

Generator specs are plain dicts, e.g. {"family": "path", "n": 5} or
{"family": "subdivision", "base": {"family": "complete", "n": 4}, "r": 1}.
Randomized families (random_tree, gnd) require an explicit "seed"; streams
come from the documented 64-bit generator in rng.py.
"""

from __future__ import annotations

import json

from .errors import EdgeListParseError, GraphInputError
from .graph import Graph
from .rng import ALGORITHM_ID, Rng


def parse_edge_list(text: str, strict: bool = True) -> Graph:
    rows = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise EdgeListParseError(
                f"expected 2 tokens, got {len(tokens)}: {line!r}", line_no
            )
        rows.append((line_no, tokens[0], tokens[1]))
    # all-numeric tokens are vertex ids and survive a write/read round trip;
    # anything else is a label, numbered by first appearance
    numeric = all(a.isdigit() and b.isdigit() for _, a, b in rows)
    ids: dict[str, int] = {}
    top = -1

    def vid(tok):
        nonlocal top
        v = int(tok) if numeric else ids.setdefault(tok, len(ids))
        top = max(top, v)
        return v

    edges = []
    seen = set()
    for line_no, a, b in rows:
        u, v = vid(a), vid(b)
        if u == v:
            if strict:
                raise EdgeListParseError(f"self-loop at {a!r}", line_no)
            continue
        key = (min(u, v), max(u, v))
        if key in seen:
            if strict:
                raise EdgeListParseError(f"duplicate edge {a!r} {b!r}", line_no)
            continue
        seen.add(key)
        edges.append(key)
    if numeric:
        return Graph(top + 1, edges)
    labels = [None] * len(ids)
    for name, i in ids.items():
        labels[i] = name
    return Graph(len(ids), edges, labels)


def read_dimacs(text: str, strict: bool = True) -> Graph:
    n = None
    declared_m = None
    edges = []
    seen = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tokens = line.split()
        if tokens[0] == "p":
            if n is not None:
                raise EdgeListParseError("second 'p' header", line_no)
            if len(tokens) != 4 or tokens[1] != "edge":
                raise EdgeListParseError(f"bad header {line!r}", line_no)
            n, declared_m = int(tokens[2]), int(tokens[3])
        elif tokens[0] == "e":
            if n is None:
                raise EdgeListParseError("edge before 'p' header", line_no)
            if len(tokens) != 3:
                raise EdgeListParseError(f"bad edge line {line!r}", line_no)
            u, v = int(tokens[1]) - 1, int(tokens[2]) - 1
            if not (0 <= u < n and 0 <= v < n):
                raise EdgeListParseError(f"vertex out of range in {line!r}", line_no)
            if u == v:
                if strict:
                    raise EdgeListParseError(f"self-loop in {line!r}", line_no)
                continue
            key = (min(u, v), max(u, v))
            if key in seen:
                if strict:
                    raise EdgeListParseError(f"duplicate edge in {line!r}", line_no)
                continue
            seen.add(key)
            edges.append(key)
        else:
            raise EdgeListParseError(f"unknown line type {line!r}", line_no)
    if n is None:
        raise EdgeListParseError("missing 'p edge n m' header", 1)
    if strict and declared_m != len(edges):
        raise EdgeListParseError(
            f"header declares {declared_m} edges, found {len(edges)}", 1
        )
    return Graph(n, edges, [str(i + 1) for i in range(n)])


def write_edge_list(g: Graph) -> str:
    lines = [f"{g.label_of(u)} {g.label_of(v)}" for u, v in g.edges()]
    return "\n".join(lines) + ("\n" if lines else "")


# ---------------------------------------------------------------- generators

def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphInputError(f"cycle needs n >= 3, got {n}")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def grid_graph(rows: int, cols: int) -> Graph:
    if rows < 1 or cols < 1:
        raise GraphInputError("grid needs rows, cols >= 1")
    edges = []
    for i in range(rows):
        for j in range(cols):
            v = i * cols + j
            if j + 1 < cols:
                edges.append((v, v + 1))
            if i + 1 < rows:
                edges.append((v, v + cols))
    return Graph(rows * cols, edges)


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(n: int) -> Graph:
    """n vertices total: center 0 plus n-1 leaves."""
    if n < 1:
        raise GraphInputError(f"star needs n >= 1, got {n}")
    return Graph(n, [(0, i) for i in range(1, n)])


def random_tree(n: int, seed: int) -> Graph:
    """Uniform labeled tree via a random Pruefer sequence."""
    if n < 1:
        raise GraphInputError(f"random_tree needs n >= 1, got {n}")
    if n == 1:
        return Graph(1, [])
    if n == 2:
        return Graph(2, [(0, 1)])
    rng = Rng(seed)
    seq = [rng.randint(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    # classic decode: repeatedly join the smallest remaining leaf to the
    # next sequence entry
    import heapq

    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    edges.append((u, v))
    return Graph(n, edges)


def gnd_graph(n: int, d: float, seed: int) -> Graph:
    """G(n, d/n): each pair i<j kept independently with probability d/n.
    Pairs are scanned with i ascending, then j ascending."""
    if n < 0:
        raise GraphInputError(f"gnd needs n >= 0, got {n}")
    p = d / n if n > 0 else 0.0
    rng = Rng(seed)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.next_float() < p:
                edges.append((i, j))
    return Graph(n, edges)


def subdivide(g: Graph, r: int) -> Graph:
    """Replace every edge by a path with r inner vertices.  Original vertices
    keep their ids; inner vertices are appended in sorted-edge order."""
    if r < 0:
        raise GraphInputError(f"subdivision depth must be >= 0, got {r}")
    if r == 0:
        return Graph(g.n, g.edges(), g.labels)
    edges = []
    labels = list(g.labels) if g.labels is not None else None
    nxt = g.n
    for u, v in g.edges():
        chain = [u] + list(range(nxt, nxt + r)) + [v]
        nxt += r
        if labels is not None:
            labels += [f"s{u}-{v}.{i}" for i in range(r)]
        edges += list(zip(chain, chain[1:]))
    return Graph(nxt, edges, labels)


def apex_graph(g: Graph) -> Graph:
    """Add one vertex adjacent to everything; it gets the largest id."""
    edges = list(g.edges()) + [(v, g.n) for v in range(g.n)]
    labels = None
    if g.labels is not None:
        labels = list(g.labels) + ["apex"]
    return Graph(g.n + 1, edges, labels)


_RANDOM_FAMILIES = {"random_tree", "gnd"}


def generate(spec: dict) -> Graph:
    """Build a graph from a generator-spec dict.  See the module docstring."""
    if not isinstance(spec, dict) or "family" not in spec:
        raise GraphInputError(f"generator spec needs a 'family' key: {spec!r}")
    family = spec["family"]
    if family in _RANDOM_FAMILIES and "seed" not in spec:
        raise GraphInputError(f"family {family!r} requires an explicit seed")
    try:
        if family == "path":
            return path_graph(spec["n"])
        if family == "cycle":
            return cycle_graph(spec["n"])
        if family == "grid":
            return grid_graph(spec["rows"], spec["cols"])
        if family == "complete":
            return complete_graph(spec["n"])
        if family == "star":
            return star_graph(spec["n"])
        if family == "random_tree":
            return random_tree(spec["n"], spec["seed"])
        if family == "gnd":
            return gnd_graph(spec["n"], spec["d"], spec["seed"])
        if family == "subdivision":
            return subdivide(generate(spec["base"]), spec["r"])
        if family == "apex":
            return apex_graph(generate(spec["base"]))
    except KeyError as e:
        raise GraphInputError(f"generator spec missing parameter {e} for {family!r}")
    raise GraphInputError(f"unknown generator family {family!r}")


def generator_metadata(spec: dict) -> dict:
    meta = dict(spec)
    if spec.get("family") in _RANDOM_FAMILIES or "seed" in spec:
        meta["rng"] = ALGORITHM_ID
    return meta


# ------------------------------------------------------------- serialization

def to_jsonable(obj):
    """Recursively convert toolkit values into plain JSON data with
    deterministic ordering (sets are sorted, dict keys stringified)."""
    if obj is None or isinstance(obj, (bool, int, float, str)):
        return obj
    if isinstance(obj, Graph):
        d = {"n": obj.n, "edges": [list(e) for e in obj.edges()]}
        if obj.labels is not None:
            d["labels"] = list(obj.labels)
        return d
    if isinstance(obj, (set, frozenset)):
        return sorted(to_jsonable(x) for x in obj)
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if hasattr(obj, "to_json"):
        return to_jsonable(obj.to_json())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def emit_json(obj) -> str:
    """Canonical JSON: sorted keys, 2-space indent, trailing newline."""
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2) + "\n"


def graph_from_json(d: dict) -> Graph:
    return Graph(d["n"], [tuple(e) for e in d["edges"]], d.get("labels"))
