"""Vertex-deletion pursuit games.

Two kinds share one engine.  In the treedepth game the connector picks a
connected component of the residual and the splitter deletes one vertex of
it; the component replaces the residual.  In the radius-r game the connector
picks any subgraph of radius at most r (certified by a center: every chosen
vertex lies within r of it inside the chosen set) and the splitter deletes a
batch of up to batch_limit vertices of it.  The splitter wins when the
residual empties within round_cap rounds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import CapabilityError, GraphInputError, PreconditionError, StrategyBugError
from .graph import Graph, bfs_distances, components
from .orders import VertexOrder
from .rng import Rng


@dataclass(frozen=True)
class GameConfig:
    kind: str  # "treedepth" | "splitter"
    radius: int = 0
    round_cap: int = 64
    batch_limit: int = 1

    def __post_init__(self):
        if self.kind not in ("treedepth", "splitter"):
            raise GraphInputError(f"unknown game kind {self.kind!r}")
        if self.kind == "splitter" and self.radius < 1:
            raise GraphInputError("radius-r game needs radius >= 1")
        if self.round_cap < 1 or self.batch_limit < 1:
            raise GraphInputError("round_cap and batch_limit must be >= 1")

    def to_json(self):
        return {
            "kind": self.kind,
            "radius": self.radius,
            "round_cap": self.round_cap,
            "batch_limit": self.batch_limit,
        }

    @classmethod
    def from_json(cls, d):
        return cls(d["kind"], d["radius"], d["round_cap"], d["batch_limit"])


@dataclass(frozen=True)
class ConnectorMove:
    center: int
    vertices: frozenset


@dataclass(frozen=True)
class GameRound:
    connector: ConnectorMove
    splitter: frozenset
    residual: frozenset


@dataclass
class GameTranscript:
    config: GameConfig
    rounds: list
    winner: str
    connector_tag: str = ""
    splitter_tag: str = ""

    @property
    def residual_sizes(self):
        return [len(rd.residual) for rd in self.rounds]

    def to_json(self):
        return {
            "config": self.config.to_json(),
            "rounds": [
                {
                    "center": rd.connector.center,
                    "connector": sorted(rd.connector.vertices),
                    "splitter": sorted(rd.splitter),
                    "residual": sorted(rd.residual),
                }
                for rd in self.rounds
            ],
            "winner": self.winner,
            "residual_sizes": self.residual_sizes,
            "connector_tag": self.connector_tag,
            "splitter_tag": self.splitter_tag,
        }

    @classmethod
    def from_json(cls, d):
        rounds = [
            GameRound(
                ConnectorMove(rd["center"], frozenset(rd["connector"])),
                frozenset(rd["splitter"]),
                frozenset(rd["residual"]),
            )
            for rd in d["rounds"]
        ]
        return cls(
            GameConfig.from_json(d["config"]),
            rounds,
            d["winner"],
            d.get("connector_tag", ""),
            d.get("splitter_tag", ""),
        )


# -------------------------------------------------------------- legality

def connector_move_violations(g: Graph, cfg: GameConfig, residual: frozenset,
                              move: ConnectorMove) -> list:
    out = []
    if move.center not in move.vertices:
        out.append(f"center {move.center} outside its own move")
    if not move.vertices:
        out.append("empty move")
    if not move.vertices <= residual:
        out.append(f"move leaves the residual: {sorted(move.vertices - residual)}")
    if out:
        return out
    if cfg.kind == "treedepth":
        comp = frozenset(bfs_distances(g, (move.center,), None, residual))
        if move.vertices != comp:
            out.append("move is not the full component of its center")
    else:
        dist = bfs_distances(g, (move.center,), cfg.radius, move.vertices)
        missing = move.vertices - set(dist)
        if missing:
            out.append(
                f"vertices beyond radius {cfg.radius} of center {move.center} "
                f"inside the move: {sorted(missing)}"
            )
    return out


def splitter_move_violations(cfg: GameConfig, move: ConnectorMove, batch: frozenset) -> list:
    out = []
    if not batch:
        out.append("splitter deleted nothing")
    if not batch <= move.vertices:
        out.append(f"deleted vertices outside the move: {sorted(batch - move.vertices)}")
    if len(batch) > cfg.batch_limit:
        out.append(f"batch of {len(batch)} exceeds limit {cfg.batch_limit}")
    return out


def validate_transcript(g: Graph, transcript: GameTranscript) -> list:
    """Replay every round from scratch and re-check each rule."""
    cfg = transcript.config
    out = []
    residual = frozenset(range(g.n))
    for i, rd in enumerate(transcript.rounds, start=1):
        for v in connector_move_violations(g, cfg, residual, rd.connector):
            out.append(f"round {i} connector: {v}")
        for v in splitter_move_violations(cfg, rd.connector, rd.splitter):
            out.append(f"round {i} splitter: {v}")
        expect = rd.connector.vertices - rd.splitter
        if rd.residual != expect:
            out.append(f"round {i}: recorded residual differs from move minus batch")
        residual = rd.residual
    if len(transcript.rounds) > cfg.round_cap:
        out.append(f"{len(transcript.rounds)} rounds exceed cap {cfg.round_cap}")
    if transcript.winner == "splitter":
        if residual:
            out.append("winner says splitter but the residual is nonempty")
    elif transcript.winner == "connector":
        if not residual:
            out.append("winner says connector but the residual is empty")
        if len(transcript.rounds) != cfg.round_cap:
            out.append("connector can only win by surviving the full round cap")
    else:
        out.append(f"unknown winner {transcript.winner!r}")
    return out


# -------------------------------------------------------------- strategies

class ConnectorStrategy:
    tag = "connector"

    def start(self, g: Graph, cfg: GameConfig) -> None:
        self.g, self.cfg = g, cfg

    def pick(self, residual: frozenset) -> ConnectorMove:
        raise NotImplementedError


class SplitterStrategy:
    tag = "splitter"

    def start(self, g: Graph, cfg: GameConfig) -> None:
        self.g, self.cfg = g, cfg

    def pick(self, residual: frozenset, move: ConnectorMove, round_no: int) -> frozenset:
        raise NotImplementedError


def _component_move(g: Graph, residual: frozenset, comp: frozenset) -> ConnectorMove:
    return ConnectorMove(min(comp), comp)


class GreedyBallConnector(ConnectorStrategy):
    """Largest radius-r ball of the residual (largest component in the
    treedepth game); ties broken by smallest center."""

    tag = "greedy_largest_ball"

    def pick(self, residual):
        if self.cfg.kind == "treedepth":
            comps = components(self.g, residual)
            comp = max(comps, key=lambda c: (len(c), -min(c)))
            return _component_move(self.g, residual, comp)
        best = None
        for c in sorted(residual):
            b = frozenset(bfs_distances(self.g, (c,), self.cfg.radius, residual))
            if best is None or len(b) > len(best.vertices):
                best = ConnectorMove(c, b)
        return best


class RandomConnector(ConnectorStrategy):
    """Ball around a uniformly random center (random component for the
    treedepth game)."""

    def __init__(self, seed: int):
        self.seed = seed
        self.tag = f"random(seed={seed})"

    def start(self, g, cfg):
        super().start(g, cfg)
        self._rng = Rng(self.seed)

    def pick(self, residual):
        pool = sorted(residual)
        c = pool[self._rng.randint(len(pool))]
        if self.cfg.kind == "treedepth":
            comp = frozenset(bfs_distances(self.g, (c,), None, residual))
            return _component_move(self.g, residual, comp)
        return ConnectorMove(c, frozenset(bfs_distances(self.g, (c,), self.cfg.radius, residual)))


class ExhaustiveConnector(ConnectorStrategy):
    """Optimal (game-value maximizing) play; capped."""

    tag = "exhaustive"

    def __init__(self, cap: int = 10):
        self.cap = cap

    def start(self, g, cfg):
        super().start(g, cfg)
        self._engine = _Engine(g, cfg, self.cap)

    def pick(self, residual):
        move, _ = self._engine.best_connector_move(residual)
        return move


class WcolSplitter(SplitterStrategy):
    """Delete the order-minimum of the connector's move.  Every deleted
    vertex is weakly 2r-reachable (under the order) from all later residual
    vertices, so the game ends within wcol_2r of the order."""

    tag = "wcol_min"

    def __init__(self, order: VertexOrder, r: int):
        self.order = order
        self.r = r

    def start(self, g, cfg):
        super().start(g, cfg)
        if len(self.order.perm) != g.n:
            raise PreconditionError("order does not cover the game graph")

    def pick(self, residual, move, round_no):
        return frozenset({min(move.vertices, key=lambda v: self.order.rank[v])})


class UqwBatchSplitter(SplitterStrategy):
    """Quasi-wideness batch strategy: delete, in round i+1, the residual part
    of one short path from each earlier center to the current one (the whole
    center in round 1).  Batch i+1 therefore has at most i*(r+1) vertices,
    so the config must allow batches of round_cap*(r+1)."""

    tag = "uqw_paths"

    def __init__(self, r: int, uqw_params=None):
        self.r = r
        self.uqw_params = dict(uqw_params) if uqw_params else {}

    def start(self, g, cfg):
        super().start(g, cfg)
        if cfg.kind != "splitter":
            raise GraphInputError("uqw_paths plays the radius-r game only")
        if cfg.radius != self.r:
            raise PreconditionError(
                f"strategy built for radius {self.r}, game uses {cfg.radius}")
        need = cfg.round_cap * (self.r + 1)
        if cfg.batch_limit < need:
            raise PreconditionError(
                f"batch_limit {cfg.batch_limit} below round_cap*(r+1) = {need}")
        self._history = []  # (center_j, move_j vertices)

    def pick(self, residual, move, round_no):
        v_new = move.center
        batch = {v_new} if not self._history else set()
        for (v_old, set_old) in self._history:
            dist = bfs_distances(self.g, (v_old,), None, set_old)
            if v_new not in dist:
                raise StrategyBugError(
                    f"center {v_new} not inside earlier move of {v_old}",
                    round_no, "splitter")
            # walk one shortest path back to v_old inside that old move
            path = [v_new]
            x = v_new
            while x != v_old:
                x = min(w for w in self.g.adj[x] if w in dist and dist[w] == dist[x] - 1)
                path.append(x)
            batch |= set(path) & move.vertices
        limit = max(1, (round_no - 1) * (self.cfg.radius + 1))
        assert len(batch) <= limit, f"batch {len(batch)} breaks the {limit} bound"
        self._history.append((v_new, move.vertices))
        return frozenset(batch)


class ExhaustiveSplitter(SplitterStrategy):
    """Optimal (game-value minimizing) batches; capped."""

    tag = "exhaustive"

    def __init__(self, cap: int = 10):
        self.cap = cap

    def start(self, g, cfg):
        super().start(g, cfg)
        self._engine = _Engine(g, cfg, self.cap)

    def pick(self, residual, move, round_no):
        batch, _ = self._engine.best_splitter_batch(move)
        return batch


# ------------------------------------------------------------------ engine

class _Engine:
    """Minimax over residual vertex sets, memoized.  The connector only ever
    needs inclusion-maximal legal moves (a bigger subgraph never hurts it),
    which are exactly the residual balls / components."""

    def __init__(self, g: Graph, cfg: GameConfig, cap: int):
        if g.n > cap:
            raise CapabilityError(
                f"game search capped at {cap} vertices, graph has {g.n}",
                "game_cap", cap)
        self.g, self.cfg = g, cfg
        self._memo = {}

    def moves(self, residual: frozenset) -> list:
        g, cfg = self.g, self.cfg
        if cfg.kind == "treedepth":
            return [_component_move(g, residual, c) for c in components(g, residual)]
        balls = {}
        for c in sorted(residual):
            b = frozenset(bfs_distances(g, (c,), cfg.radius, residual))
            if b not in balls:
                balls[b] = c
        maximal = [
            ConnectorMove(c, b)
            for b, c in balls.items()
            if not any(b < other for other in balls)
        ]
        return sorted(maximal, key=lambda m: (-len(m.vertices), m.center))

    def batches(self, move: ConnectorMove):
        verts = sorted(move.vertices)
        top = min(self.cfg.batch_limit, len(verts))
        for size in range(1, top + 1):
            for combo in combinations(verts, size):
                yield frozenset(combo)

    def value(self, residual: frozenset) -> int:
        """Rounds the splitter needs under optimal play on both sides."""
        if not residual:
            return 0
        got = self._memo.get(residual)
        if got is not None:
            return got
        best = 0
        for move in self.moves(residual):
            resp = min(1 + self.value(move.vertices - b) for b in self.batches(move))
            best = max(best, resp)
        self._memo[residual] = best
        return best

    def best_connector_move(self, residual: frozenset):
        best = None
        for move in self.moves(residual):
            resp = min(1 + self.value(move.vertices - b) for b in self.batches(move))
            if best is None or resp > best[1]:
                best = (move, resp)
        return best

    def best_splitter_batch(self, move: ConnectorMove):
        best = None
        for b in self.batches(move):
            val = 1 + self.value(move.vertices - b)
            if best is None or val < best[1]:
                best = (b, val)
        return best


def game_value(g: Graph, cfg: GameConfig, cap: int = 10) -> int:
    """Optimal number of rounds, ignoring the round cap.  Equals treedepth
    for the treedepth game."""
    return _Engine(g, cfg, cap).value(frozenset(range(g.n)))


# -------------------------------------------------------------------- play

def play(g: Graph, cfg: GameConfig, sp: SplitterStrategy,
         co: ConnectorStrategy) -> GameTranscript:
    """Run one game; every move from either strategy is re-validated before
    it is applied."""
    co.start(g, cfg)
    sp.start(g, cfg)
    residual = frozenset(range(g.n))
    rounds = []
    for round_no in range(1, cfg.round_cap + 1):
        if not residual:
            break
        move = co.pick(residual)
        bad = connector_move_violations(g, cfg, residual, move)
        if bad:
            raise StrategyBugError("; ".join(bad), round_no, f"connector {co.tag}")
        batch = sp.pick(residual, move, round_no)
        bad = splitter_move_violations(cfg, move, batch)
        if bad:
            raise StrategyBugError("; ".join(bad), round_no, f"splitter {sp.tag}")
        residual = move.vertices - batch
        rounds.append(GameRound(move, batch, residual))
    winner = "splitter" if not residual else "connector"
    transcript = GameTranscript(cfg, rounds, winner, co.tag, sp.tag)
    bad = validate_transcript(g, transcript)
    assert not bad, f"engine produced an invalid transcript: {bad}"
    return transcript


def wcol_splitter_strategy(pi: VertexOrder, r: int) -> WcolSplitter:
    """Strategy winning the radius-r game within wcol_of_order(g, pi, 2r)
    rounds (and the treedepth game within the order's induced forest depth)."""
    return WcolSplitter(pi, r)


def uqw_splitter_strategy(r: int, uqw_params=None) -> UqwBatchSplitter:
    return UqwBatchSplitter(r, uqw_params)
