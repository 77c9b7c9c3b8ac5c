"""Regular trees with a fixed end and Diestel-Leader graphs, in the ball model.

A vertex of the tree T_n at level k is the ball c + pi^k R of a local field
with residue field of size n; c is recorded by its digits at positions < k.
Levels increase away from the fixed end: the parent of a vertex is the
enclosing ball one level up (level - 1).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product

from lattcert.errors import MemoryBudgetExceeded, ParseError
from lattcert.fileio import atomic_write, csv_text

DEFAULT_VERTEX_CAP = 5_000_000
DEFAULT_WINDOW = 12


@dataclass(frozen=True, order=True)
class TreeVertex:
    level: int
    digits: tuple = ()  # sorted (position, digit) pairs, digit != 0, position < level
    branching: int = 2

    def __post_init__(self):
        if self.branching < 2:
            raise ValueError("branching must be at least 2")
        ds = tuple(sorted((int(j), int(a) % self.branching) for j, a in self.digits))
        ds = tuple((j, a) for j, a in ds if a)
        if any(j >= self.level for j, _ in ds):
            raise ValueError(f"digit positions must lie below level {self.level}")
        if len({j for j, _ in ds}) != len(ds):
            raise ValueError("repeated digit position")
        object.__setattr__(self, "digits", ds)

    @classmethod
    def root(cls, branching: int) -> "TreeVertex":
        return cls(0, (), branching)

    def digit(self, j: int) -> int:
        return dict(self.digits).get(j, 0)

    def digit_map(self) -> dict:
        return dict(self.digits)

    def serialize(self) -> str:
        body = ",".join(f"{j}={a}" for j, a in self.digits)
        return f"{self.level}:{body}"

    @classmethod
    def parse(cls, text: str, branching: int) -> "TreeVertex":
        try:
            level, _, body = text.partition(":")
            pairs = [tuple(map(int, item.split("="))) for item in body.split(",") if item]
            return cls(int(level), tuple(pairs), branching)
        except ValueError as exc:
            raise ParseError(f"bad tree vertex {text!r}") from exc


def tree_parent(v: TreeVertex) -> TreeVertex:
    k = v.level - 1
    return TreeVertex(k, tuple((j, a) for j, a in v.digits if j < k), v.branching)


def tree_children(v: TreeVertex) -> list[TreeVertex]:
    return [TreeVertex(v.level + 1, v.digits + ((v.level, a),), v.branching) for a in range(v.branching)]


def tree_distance(u: TreeVertex, v: TreeVertex) -> int:
    """Path length in T_n: climb both vertices to their common ancestor."""
    a, b, steps = u, v, 0
    while a.level > b.level:
        a, steps = tree_parent(a), steps + 1
    while b.level > a.level:
        b, steps = tree_parent(b), steps + 1
    while a != b:
        a, b, steps = tree_parent(a), tree_parent(b), steps + 2
    return steps


@dataclass(frozen=True, order=True)
class DLVertex:
    coords: tuple

    def __post_init__(self):
        coords = tuple(self.coords)
        if len(coords) < 2:
            raise ValueError("a DL vertex needs at least two coordinates")
        if sum(c.level for c in coords) != 0:
            raise ValueError(f"levels {[c.level for c in coords]} do not sum to zero")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def base(cls, branchings) -> "DLVertex":
        return cls(tuple(TreeVertex.root(n) for n in branchings))

    @property
    def d(self) -> int:
        return len(self.coords)

    @property
    def levels(self) -> tuple:
        return tuple(c.level for c in self.coords)

    @property
    def branchings(self) -> tuple:
        return tuple(c.branching for c in self.coords)

    def serialize(self) -> str:
        return "|".join(c.serialize() for c in self.coords)

    @classmethod
    def parse(cls, text: str, branchings) -> "DLVertex":
        parts = text.split("|")
        if len(parts) != len(branchings):
            raise ParseError(f"expected {len(branchings)} coordinates in {text!r}")
        return cls(tuple(TreeVertex.parse(s, n) for s, n in zip(parts, branchings)))


def dl_neighbors(v: DLVertex) -> list[DLVertex]:
    """Move coordinate i down to a child and coordinate j != i up to its parent."""
    out = []
    parents = [tree_parent(c) for c in v.coords]
    for i, j in product(range(v.d), repeat=2):
        if i == j:
            continue
        for child in tree_children(v.coords[i]):
            coords = list(v.coords)
            coords[i] = child
            coords[j] = parents[j]
            out.append(DLVertex(tuple(coords)))
    return out


def dl_degree(branchings) -> int:
    return (len(branchings) - 1) * sum(branchings)


def dl_ball(origin: DLVertex, r: int, cap: int = DEFAULT_VERTEX_CAP):
    """Vertices within distance r of `origin` and the sphere sizes 0..r."""
    if r < 0:
        raise ValueError("radius must be nonnegative")
    seen = {origin}
    frontier = [origin]
    growth = [1]
    for _ in range(r):
        nxt = []
        for v in frontier:
            for w in dl_neighbors(v):
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
                    if len(seen) > cap:
                        raise MemoryBudgetExceeded(f"ball exceeds {cap} vertices")
        growth.append(len(nxt))
        frontier = nxt
    return seen, growth


def ball_distances(origin: DLVertex, r: int, cap: int = DEFAULT_VERTEX_CAP) -> dict:
    dist = {origin: 0}
    queue = deque([origin])
    while queue:
        v = queue.popleft()
        if dist[v] == r:
            continue
        for w in dl_neighbors(v):
            if w not in dist:
                dist[w] = dist[v] + 1
                if len(dist) > cap:
                    raise MemoryBudgetExceeded(f"ball exceeds {cap} vertices")
                queue.append(w)
    return dist


def ball_edges(vertices) -> list[tuple]:
    """Undirected edges with both ends in `vertices`, each listed once."""
    vs = set(vertices)
    edges = set()
    for v in vs:
        for w in dl_neighbors(v):
            if w in vs:
                edges.add((v, w) if v.serialize() < w.serialize() else (w, v))
    return sorted(edges, key=lambda e: (e[0].serialize(), e[1].serialize()))


def write_edge_csv(path, edges):
    atomic_write(path, csv_text(["source_id", "target_id"], [(a.serialize(), b.serialize()) for a, b in edges]))
