"""First-order mini-language over graphs with distance atoms.

Concrete syntax (ASCII):

    exists x [within d of y] . F      forall x [within d of y] . F
    E(x,y)    x = y    dist(x,y) <= d    dist(x,y) > d    P(x)
    true    false    !F    F & G    F | G    (F)

`&` binds tighter than `|`, `!` tighter than both, and a quantifier body
extends as far right as possible.  `dist(x,y) > d` is sugar for the negated
distance atom.  `P(x)` is a single unary predicate whose extension (a vertex
set) is supplied at evaluation time.

A sentence in Gaifman basic-local shape asserts k witnesses, pairwise at
distance greater than 2r, each satisfying an r-local one-variable property;
locality is a syntactic check: every quantifier is relativized and the
cumulative radii stay within r of the free variable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (CapabilityError, FormulaParseError, FormulaScopeError,
                     LocalityError, PreconditionError)
from .graph import Graph, ball, bfs_distances, induced_subgraph


# ----------------------------------------------------------------- AST

@dataclass(frozen=True)
class Lit:
    value: bool


@dataclass(frozen=True)
class Eq:
    a: str
    b: str


@dataclass(frozen=True)
class Edge:
    a: str
    b: str


@dataclass(frozen=True)
class DistLe:
    a: str
    b: str
    d: int


@dataclass(frozen=True)
class Pred:
    a: str


@dataclass(frozen=True)
class Not:
    body: object


@dataclass(frozen=True)
class And:
    left: object
    right: object


@dataclass(frozen=True)
class Or:
    left: object
    right: object


@dataclass(frozen=True)
class Quant:
    kind: str       # "exists" | "forall"
    var: str
    anchor: object  # variable name, or None when unrelativized
    d: object       # radius, or None
    body: object


_KEYWORDS = {"exists", "forall", "within", "of", "dist", "E", "P", "true", "false"}


# --------------------------------------------------------------- parsing

def _tokens(text: str):
    out = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            out.append((text[i:j], i))
            i = j
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            out.append((text[i:j], i))
            i = j
        elif text.startswith("<=", i):
            out.append(("<=", i))
            i += 2
        elif ch in "()=&|!.,>":
            out.append((ch, i))
            i += 1
        else:
            raise FormulaParseError(f"unexpected character {ch!r}", i)
    out.append((None, n))
    return out


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i][0]

    def next(self):
        tok, pos = self.toks[self.i]
        self.i += 1
        return tok, pos

    def expect(self, want):
        tok, pos = self.next()
        if tok != want:
            raise FormulaParseError(f"expected {want!r}, got {tok!r}", pos)
        return pos

    def name(self):
        tok, pos = self.next()
        if tok is None or not (tok[0].isalpha() or tok[0] == "_"):
            raise FormulaParseError(f"expected a variable name, got {tok!r}", pos)
        if tok in _KEYWORDS:
            raise FormulaParseError(f"{tok!r} is a reserved word", pos)
        return tok

    def number(self):
        tok, pos = self.next()
        if tok is None or not tok.isdigit():
            raise FormulaParseError(f"expected a number, got {tok!r}", pos)
        return int(tok)

    def formula(self):
        out = self.and_expr()
        while self.peek() == "|":
            self.next()
            out = Or(out, self.and_expr())
        return out

    def and_expr(self):
        out = self.unary()
        while self.peek() == "&":
            self.next()
            out = And(out, self.unary())
        return out

    def unary(self):
        tok = self.peek()
        if tok == "!":
            self.next()
            return Not(self.unary())
        if tok in ("exists", "forall"):
            self.next()
            var = self.name()
            anchor = d = None
            if self.peek() == "within":
                self.next()
                d = self.number()
                self.expect("of")
                anchor = self.name()
            self.expect(".")
            return Quant(tok, var, anchor, d, self.formula())
        return self.primary()

    def primary(self):
        tok, pos = self.next()
        if tok == "(":
            out = self.formula()
            self.expect(")")
            return out
        if tok == "true":
            return Lit(True)
        if tok == "false":
            return Lit(False)
        if tok == "E":
            self.expect("(")
            a = self.name()
            self.expect(",")
            b = self.name()
            self.expect(")")
            return Edge(a, b)
        if tok == "P":
            self.expect("(")
            a = self.name()
            self.expect(")")
            return Pred(a)
        if tok == "dist":
            self.expect("(")
            a = self.name()
            self.expect(",")
            b = self.name()
            self.expect(")")
            op, oppos = self.next()
            d = self.number()
            if op == "<=":
                return DistLe(a, b, d)
            if op == ">":
                return Not(DistLe(a, b, d))
            raise FormulaParseError(f"expected <= or >, got {op!r}", oppos)
        if tok is not None and (tok[0].isalpha() or tok[0] == "_") and tok not in _KEYWORDS:
            self.expect("=")
            return Eq(tok, self.name())
        raise FormulaParseError(f"unexpected token {tok!r}", pos)


def _check_scope(f, in_scope: frozenset):
    if isinstance(f, Lit):
        return
    if isinstance(f, (Eq, Edge, DistLe)):
        for v in (f.a, f.b):
            if v not in in_scope:
                raise FormulaScopeError(f"variable {v!r} is not in scope")
        return
    if isinstance(f, Pred):
        if f.a not in in_scope:
            raise FormulaScopeError(f"variable {f.a!r} is not in scope")
        return
    if isinstance(f, Not):
        _check_scope(f.body, in_scope)
        return
    if isinstance(f, (And, Or)):
        _check_scope(f.left, in_scope)
        _check_scope(f.right, in_scope)
        return
    if isinstance(f, Quant):
        if f.anchor is not None and f.anchor not in in_scope:
            raise FormulaScopeError(f"anchor {f.anchor!r} is not in scope")
        _check_scope(f.body, in_scope | {f.var})
        return
    raise TypeError(f"not a formula node: {f!r}")


def parse_formula(text: str, free=()) -> object:
    """Parse; `free` names the variables allowed to occur unbound (none by
    default, so the text must be a sentence).  free=None allows any."""
    p = _Parser(text)
    out = p.formula()
    tok, pos = p.toks[p.i]
    if tok is not None:
        raise FormulaParseError(f"trailing input {tok!r}", pos)
    if free is None:
        free = free_vars(out)
    _check_scope(out, frozenset(free))
    return out


# ------------------------------------------------------------- rendering

def to_text(f) -> str:
    """Concrete syntax; parse_formula(to_text(f), free=None) == f."""

    def paren(child, tight):
        s = render(child)
        return f"({s})" if tight(child) else s

    def render(f):
        if isinstance(f, Lit):
            return "true" if f.value else "false"
        if isinstance(f, Eq):
            return f"{f.a} = {f.b}"
        if isinstance(f, Edge):
            return f"E({f.a},{f.b})"
        if isinstance(f, DistLe):
            return f"dist({f.a},{f.b}) <= {f.d}"
        if isinstance(f, Pred):
            return f"P({f.a})"
        if isinstance(f, Not):
            if isinstance(f.body, DistLe):
                b = f.body
                return f"dist({b.a},{b.b}) > {b.d}"
            return "!" + paren(f.body, lambda c: isinstance(c, (And, Or, Quant)))
        if isinstance(f, And):
            left = paren(f.left, lambda c: isinstance(c, (Or, Quant)))
            right = paren(f.right, lambda c: isinstance(c, (Or, And, Quant)))
            return f"{left} & {right}"
        if isinstance(f, Or):
            left = paren(f.left, lambda c: isinstance(c, Quant))
            right = paren(f.right, lambda c: isinstance(c, (Or, Quant)))
            return f"{left} | {right}"
        if isinstance(f, Quant):
            rel = f" within {f.d} of {f.anchor}" if f.anchor is not None else ""
            return f"{f.kind} {f.var}{rel} . {render(f.body)}"
        raise TypeError(f"not a formula node: {f!r}")

    return render(f)


def free_vars(f) -> frozenset:
    if isinstance(f, Lit):
        return frozenset()
    if isinstance(f, (Eq, Edge, DistLe)):
        return frozenset({f.a, f.b})
    if isinstance(f, Pred):
        return frozenset({f.a})
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, (And, Or)):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, Quant):
        out = free_vars(f.body) - {f.var}
        if f.anchor is not None:
            out |= {f.anchor}
        return out
    raise TypeError(f"not a formula node: {f!r}")


# -------------------------------------------------------------- locality

def locality_violations(chi, var: str, r: int) -> list:
    """Syntactic r-locality around the free variable: every quantifier is
    relativized, nesting depths stay within r, and a distance atom's radius
    fits inside r from its shallower endpoint (so the atom means the same
    thing inside the induced r-ball as in the full graph)."""
    out = []

    def walk(f, depth):
        if isinstance(f, (Lit, Eq, Edge, Pred)):
            return
        if isinstance(f, DistLe):
            lo = min(depth.get(f.a, 0), depth.get(f.b, 0))
            if lo + f.d > r:
                out.append(
                    f"dist({f.a},{f.b}) <= {f.d} can leave the {r}-ball "
                    f"(depth {lo} + {f.d} > {r})")
            return
        if isinstance(f, Not):
            walk(f.body, depth)
            return
        if isinstance(f, (And, Or)):
            walk(f.left, depth)
            walk(f.right, depth)
            return
        if isinstance(f, Quant):
            if f.anchor is None:
                out.append(f"quantifier over {f.var} is not relativized")
                walk(f.body, {**depth, f.var: 0})
                return
            d = depth.get(f.anchor, 0) + f.d
            if d > r:
                out.append(
                    f"{f.var} ranges {d} deep, beyond the {r}-ball")
            walk(f.body, {**depth, f.var: d})
            return
        raise TypeError(f"not a formula node: {f!r}")

    walk(chi, {var: 0})
    return out


@dataclass(frozen=True)
class BasicLocalSentence:
    """Exists k vertices, pairwise at distance > 2r, each satisfying the
    r-local property chi (one free variable)."""
    k: int
    r: int
    chi: object
    var: str

    def __post_init__(self):
        if self.k < 1 or self.r < 1:
            raise PreconditionError("need k >= 1 and r >= 1")
        if free_vars(self.chi) - {self.var}:
            raise FormulaScopeError(
                f"chi must have only {self.var!r} free, has "
                f"{sorted(free_vars(self.chi))}")
        bad = locality_violations(self.chi, self.var, self.r)
        if bad:
            raise LocalityError("; ".join(bad))

    def to_json(self):
        return {"k": self.k, "r": self.r, "chi": to_text(self.chi)}

    @classmethod
    def from_json(cls, d):
        chi = parse_formula(d["chi"], free=None)
        fv = sorted(free_vars(chi))
        if len(fv) > 1:
            raise FormulaScopeError(f"chi has several free variables: {fv}")
        var = fv[0] if fv else "x"
        return cls(d["k"], d["r"], chi, var)


# ------------------------------------------------------------ evaluation

class _DistCache:
    def __init__(self, g: Graph):
        self.g = g
        self._from = {}

    def dist(self, u: int) -> dict:
        got = self._from.get(u)
        if got is None:
            got = self._from[u] = bfs_distances(self.g, (u,))
        return got

    def within(self, u: int, d: int) -> list:
        return sorted(w for w, dw in self.dist(u).items() if dw <= d)


def eval_naive(g: Graph, f, env: dict, marked=frozenset()) -> bool:
    """Plain recursive FO semantics; distance atoms by cached BFS; a
    relativized quantifier ranges over the ball around its anchor."""
    want = free_vars(f)
    if set(env) != want:
        raise PreconditionError(
            f"assignment covers {sorted(env)}, free variables are {sorted(want)}")
    for v in env.values():
        if not 0 <= v < g.n:
            raise PreconditionError(f"vertex {v} not in the graph")
    cache = _DistCache(g)
    marked = frozenset(marked)

    def ev(f, env):
        if isinstance(f, Lit):
            return f.value
        if isinstance(f, Eq):
            return env[f.a] == env[f.b]
        if isinstance(f, Edge):
            return g.has_edge(env[f.a], env[f.b])
        if isinstance(f, DistLe):
            d = cache.dist(env[f.a]).get(env[f.b])
            return d is not None and d <= f.d
        if isinstance(f, Pred):
            return env[f.a] in marked
        if isinstance(f, Not):
            return not ev(f.body, env)
        if isinstance(f, And):
            return ev(f.left, env) and ev(f.right, env)
        if isinstance(f, Or):
            return ev(f.left, env) or ev(f.right, env)
        if isinstance(f, Quant):
            domain = (cache.within(env[f.anchor], f.d)
                      if f.anchor is not None else range(g.n))
            hits = (ev(f.body, {**env, f.var: v}) for v in domain)
            return any(hits) if f.kind == "exists" else all(hits)
        raise TypeError(f"not a formula node: {f!r}")

    return ev(f, env)


def satisfying_set(g: Graph, s: BasicLocalSentence, marked=frozenset()) -> frozenset:
    """T = the vertices whose induced r-ball satisfies chi.  By locality this
    equals evaluating chi directly on g."""
    out = set()
    needs_var = s.var in free_vars(s.chi)
    for v in range(g.n):
        sub, old_ids = induced_subgraph(g, ball(g, v, s.r))
        sub_marked = {i for i, o in enumerate(old_ids) if o in marked}
        env = {s.var: old_ids.index(v)} if needs_var else {}
        if eval_naive(sub, s.chi, env, sub_marked):
            out.add(v)
    return frozenset(out)


def eval_basic_local(g: Graph, s: BasicLocalSentence, marked=frozenset()):
    """(holds, witnesses): locality pipeline: compute the satisfying set by
    local evaluation, then look for k members pairwise at distance > 2r."""
    T = satisfying_set(g, s, marked)
    sol = distance_independent_set(g, 2 * s.r, s.k, T)
    return (True, tuple(sorted(sol))) if sol is not None else (False, None)


def _fresh(base: str, used: set) -> str:
    if base not in used:
        used.add(base)
        return base
    i = 2
    while f"{base}{i}" in used:
        i += 1
    used.add(f"{base}{i}")
    return f"{base}{i}"


def expand_basic_local(s: BasicLocalSentence):
    """The equivalent plain-FO sentence: exists x_1 .. x_k, pairwise
    dist > 2r, each satisfying chi with relativized quantifiers desugared
    into distance atoms.  Bound variables are renamed apart."""
    used = set()

    def collect(f):
        if isinstance(f, Quant):
            used.add(f.var)
            collect(f.body)
        elif isinstance(f, Not):
            collect(f.body)
        elif isinstance(f, (And, Or)):
            collect(f.left)
            collect(f.right)

    collect(s.chi)
    used |= {s.var}
    witnesses = [_fresh(f"x{i + 1}", used) for i in range(s.k)]

    def desugar(f, ren):
        if isinstance(f, Lit):
            return f
        if isinstance(f, Eq):
            return Eq(ren[f.a], ren[f.b])
        if isinstance(f, Edge):
            return Edge(ren[f.a], ren[f.b])
        if isinstance(f, DistLe):
            return DistLe(ren[f.a], ren[f.b], f.d)
        if isinstance(f, Pred):
            return Pred(ren[f.a])
        if isinstance(f, Not):
            return Not(desugar(f.body, ren))
        if isinstance(f, And):
            return And(desugar(f.left, ren), desugar(f.right, ren))
        if isinstance(f, Or):
            return Or(desugar(f.left, ren), desugar(f.right, ren))
        if isinstance(f, Quant):
            nv = _fresh(f.var, used)
            body = desugar(f.body, {**ren, f.var: nv})
            near = DistLe(nv, ren[f.anchor], f.d)
            if f.kind == "exists":
                return Quant("exists", nv, None, None, And(near, body))
            return Quant("forall", nv, None, None, Or(Not(near), body))
        raise TypeError(f"not a formula node: {f!r}")

    parts = []
    for i in range(s.k):
        for j in range(i + 1, s.k):
            parts.append(Not(DistLe(witnesses[i], witnesses[j], 2 * s.r)))
    for w in witnesses:
        parts.append(desugar(s.chi, {s.var: w}))
    body = parts[0]
    for p in parts[1:]:
        body = And(body, p)
    for w in reversed(witnesses):
        body = Quant("exists", w, None, None, body)
    return body


# ---------------------------------------------------------- exact solvers

def _power_masks(g: Graph, r: int, cands: list) -> list:
    """masks[i] = candidates within distance r of cands[i], excluding i."""
    idx = {c: i for i, c in enumerate(cands)}
    masks = [0] * len(cands)
    for i, c in enumerate(cands):
        for w, d in bfs_distances(g, (c,), r).items():
            j = idx.get(w)
            if j is not None and j != i:
                masks[i] |= 1 << j
    return masks


def distance_independent_set(g: Graph, r: int, k: int, candidates,
                             pi=None):
    """The lexicographically least k candidates pairwise at distance > r, or
    None.  Exact search branches on the highest-degree candidate of the
    r-th power graph (ties by id).  With an order supplied, a quasi-wideness
    extraction may certify feasibility up front; it counts only when it
    deletes nothing (far apart in G-S means nothing in G otherwise), and the
    answer set is built by the same loop either way, so results never differ
    between the two paths."""
    cands = sorted(candidates)
    if k <= 0:
        return frozenset()
    if len(cands) < k:
        return None
    feasible_known = False
    if pi is not None and r >= 1:
        from .wideness import uqw_extract
        cert = uqw_extract(g, frozenset(cands), r, k, pi)
        feasible_known = not cert.S and len(cert.B) >= k
    masks = _power_masks(g, r, cands)

    def feasible(cand_mask, need):
        if need <= 0:
            return True
        pool = cand_mask
        count = bin(cand_mask).count("1")
        if count < need:
            return False
        best_i, best_deg = -1, -1
        m = pool
        while m:
            low = m & -m
            i = low.bit_length() - 1
            deg = bin(masks[i] & cand_mask).count("1")
            if deg == 0:
                # isolated candidates are free picks
                return feasible(cand_mask & ~low, need - 1)
            if deg > best_deg:
                best_i, best_deg = i, deg
            m &= ~low
        take = feasible(cand_mask & ~masks[best_i] & ~(1 << best_i), need - 1)
        if take:
            return True
        return feasible(cand_mask & ~(1 << best_i), need)

    all_mask = (1 << len(cands)) - 1
    if not feasible_known and not feasible(all_mask, k):
        return None
    chosen = []
    cand_mask = all_mask
    for i in range(len(cands)):
        if len(chosen) == k:
            break
        bit = 1 << i
        if not (cand_mask & bit):
            continue
        rest = cand_mask & ~masks[i] & ~bit
        if feasible(rest, k - len(chosen) - 1):
            chosen.append(cands[i])
            cand_mask = rest
        else:
            cand_mask &= ~bit
    assert len(chosen) == k
    return frozenset(chosen)


def distance_dominating_set(g: Graph, r: int, mode: str = "exact",
                            cap: int = 25) -> frozenset:
    """Minimum (exact) or greedy set D with every vertex within r of D."""
    if mode not in ("exact", "greedy"):
        raise PreconditionError(f"unknown mode {mode!r}")
    if g.n == 0:
        return frozenset()
    balls = [0] * g.n
    for v in range(g.n):
        for w in ball(g, v, r):
            balls[v] |= 1 << w
    full = (1 << g.n) - 1

    def greedy():
        covered, out = 0, []
        while covered != full:
            v = max(range(g.n),
                    key=lambda x: (bin(balls[x] & ~covered).count("1"), -x))
            if not (balls[v] & ~covered):
                raise AssertionError("uncoverable vertex")  # unreachable
            out.append(v)
            covered |= balls[v]
        return out

    if mode == "greedy":
        return frozenset(greedy())
    if g.n > cap:
        raise CapabilityError(
            f"exact dominating set capped at {cap} vertices, got {g.n}",
            "dominating_cap", cap)

    best = greedy()

    def search(chosen, covered):
        nonlocal best
        if covered == full:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        uncovered = full & ~covered
        max_gain = max(bin(balls[v] & ~covered).count("1") for v in range(g.n))
        need = -(-bin(uncovered).count("1") // max_gain)
        if len(chosen) + need >= len(best):
            return
        # first-fail: branch on the vertex with the fewest coverers
        u, u_opts = -1, None
        m = uncovered
        while m:
            low = m & -m
            v = low.bit_length() - 1
            opts = [w for w in range(g.n) if balls[w] & low]
            if u_opts is None or len(opts) < len(u_opts):
                u, u_opts = v, opts
            m &= ~low
        for w in sorted(u_opts,
                        key=lambda x: (-bin(balls[x] & ~covered).count("1"), x)):
            search(chosen + [w], covered | balls[w])

    search([], 0)
    return frozenset(best)


def dominating_formula(k: int, r: int = 1):
    """Sentence: some k vertices r-dominate the graph."""
    if k < 1 or r < 1:
        raise PreconditionError("need k >= 1 and r >= 1")
    xs = [f"x{i + 1}" for i in range(k)]
    parts = [Eq("y", x) for x in xs]
    if r == 1:
        parts += [Edge("y", x) for x in xs]
    else:
        parts += [DistLe("y", x, r) for x in xs]
    body = parts[0]
    for p in parts[1:]:
        body = Or(body, p)
    out = Quant("forall", "y", None, None, body)
    for x in reversed(xs):
        out = Quant("exists", x, None, None, out)
    return out
