"""Orbits of a base vertex under word balls of affine generators."""
from __future__ import annotations

from dataclasses import dataclass, field

from lattcert.dl.affine import AffineMap, affine_act, inverse
from lattcert.dl.tree import DEFAULT_VERTEX_CAP, DLVertex, ball_distances
from lattcert.errors import MemoryBudgetExceeded


@dataclass
class SchreierBall:
    base: DLVertex
    radius: int
    first_reached: dict = field(default_factory=dict)  # vertex -> word length

    @property
    def vertices(self) -> set:
        return set(self.first_reached)

    def within(self, r: int) -> set:
        return {v for v, k in self.first_reached.items() if k <= r}

    def sphere_sizes(self) -> list[int]:
        out = [0] * (self.radius + 1)
        for k in self.first_reached.values():
            out[k] += 1
        return out


def orbit_bfs(generators: list[AffineMap], base: DLVertex, r: int,
              symmetric: bool = True, cap: int = DEFAULT_VERTEX_CAP) -> SchreierBall:
    """Vertices w(base) for words w of length <= r in the generators (and inverses)."""
    gens = list(generators)
    if symmetric:
        gens += [inverse(g) for g in generators]
    ball = SchreierBall(base, r, {base: 0})
    frontier = [base]
    for k in range(1, r + 1):
        nxt = []
        for v in frontier:
            for g in gens:
                w = affine_act(g, v)
                if w not in ball.first_reached:
                    ball.first_reached[w] = k
                    nxt.append(w)
                    if len(ball.first_reached) > cap:
                        raise MemoryBudgetExceeded(f"orbit exceeds {cap} vertices")
        frontier = nxt
    return ball


def coverage_constant(orbit: SchreierBall, cap: int = DEFAULT_VERTEX_CAP):
    """Smallest C with graph ball(r - C) inside the orbit ball(r) for every r <= radius.

    Also reports whether every orbit point reached at word length k lies
    in the graph ball of radius k (the generators move by at most one step).
    """
    dist = ball_distances(orbit.base, orbit.radius, cap)
    C = 0
    for r in range(orbit.radius + 1):
        reached = orbit.within(r)
        missing = [v for v, k in dist.items() if v not in reached]
        if missing:
            C = max(C, r - min(dist[v] for v in missing) + 1)
    contained = all(v in dist and dist[v] <= k for v, k in orbit.first_reached.items())
    return C, contained
