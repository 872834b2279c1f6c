"""Cross-level quasi-distance and its shortest-path metrization.

Points live on the disjoint union of the family's sectors (levels plus the
limit).  The quasi-distance between points at nested levels is

    first term   d(lower point, projection of the upper point)
    sup term     max over a capped pool of the contraction defect
                 d_hi(a, b) - d_lo(P a, P b)
    volume term  V_hi - V_lo

evaluated exactly; the sup term is a finite-sample lower bound of the
corresponding supremum over the full capped set, and pools are drawn from
one shared generator so projection composition is exact.  The chained
distance is the shortest path in the complete graph over the queried
points, found with a standard nonnegative-weights search.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

from ._rational import ZERO
from .errors import LevelsNotOrdered, PreconditionViolated
from .families import ModelFamily, SampledFamily, member_cap
from .grid_convex import GridPLConvex, model_project, pl_equal
from .metric import dist
from .report import Report


@dataclass(frozen=True)
class BigPoint:
    """A potential at one level, with its least admitting cap.

    rep_index points into the shared generator at the member realizing the
    cap; None with an infinite cap means no sampled member projects here.
    """

    level: int
    potential: GridPLConvex
    rep_index: object
    cap: float


@dataclass(frozen=True)
class ChainResult:
    value: object
    path: tuple
    points: tuple
    edge_parts: tuple


@dataclass(frozen=True)
class BigSpace:
    """A family with a shared generator and every cache the queries need.

    Level indices run over the family levels, with one extra index for the
    limit envelope.
    """

    family: ModelFamily
    generator: SampledFamily

    def __post_init__(self):
        envs = tuple(self.family.levels) + (self.family.limit,)
        ctxs = tuple(self.family.contexts) + (self.family.limit_context,)
        caps = tuple(member_cap(g, self.family.reference) for g in self.generator.members)
        object.__setattr__(self, "envs", envs)
        object.__setattr__(self, "ctxs", ctxs)
        object.__setattr__(self, "caps", caps)
        object.__setattr__(self, "_proj", {})
        object.__setattr__(self, "_pair", {})
        object.__setattr__(self, "_sup", {})
        object.__setattr__(self, "_edge", {})
        object.__setattr__(self, "_points", {})

    @property
    def level_count(self) -> int:
        return len(self.envs)

    @property
    def limit_level(self) -> int:
        return len(self.envs) - 1

    def projection(self, level: int, i: int) -> GridPLConvex:
        key = (level, i)
        if key not in self._proj:
            self._proj[key] = model_project(self.envs[level], self.generator.members[i])
        return self._proj[key]

    def make_point(self, level: int, potential: GridPLConvex) -> BigPoint:
        if potential.dual_domain() != self.envs[level].Q:
            raise PreconditionViolated("potential does not span the level's interval")
        best_cap, best_i = math.inf, None
        for k in range(len(self.generator.members)):
            if self.caps[k] < best_cap and pl_equal(self.projection(level, k), potential):
                best_cap, best_i = self.caps[k], k
        return BigPoint(level, potential, best_i, best_cap)

    def point_from_member(self, level: int, i: int) -> BigPoint:
        key = (level, i)
        if key not in self._points:
            self._points[key] = self.make_point(level, self.projection(level, i))
        return self._points[key]

    def pair_dist(self, level: int, i: int, j: int):
        if i > j:
            i, j = j, i
        key = (level, i, j)
        if key not in self._pair:
            self._pair[key] = dist(
                self.ctxs[level], self.projection(level, i), self.projection(level, j)
            )
        return self._pair[key]

    def _sup_term(self, hi_level: int, lo_level: int, cap_limit: float):
        key = (hi_level, lo_level, cap_limit)
        if key not in self._sup:
            pool = [k for k, c in enumerate(self.caps) if c <= cap_limit]
            best = ZERO
            for a in range(len(pool)):
                for b in range(a + 1, len(pool)):
                    i, j = pool[a], pool[b]
                    gap = self.pair_dist(hi_level, i, j) - self.pair_dist(lo_level, i, j)
                    if gap > best:
                        best = gap
            self._sup[key] = best
        return self._sup[key]

    def _ordered(self, p: BigPoint, q: BigPoint):
        qp, qq = self.envs[p.level].Q, self.envs[q.level].Q
        if qp[0] <= qq[0] and qq[1] <= qp[1]:
            return p, q
        if qq[0] <= qp[0] and qp[1] <= qq[1]:
            return q, p
        raise LevelsNotOrdered("levels are not nested, the family is not totally ordered")

    def quasi_parts(self, p: BigPoint, q: BigPoint):
        hi, lo = self._ordered(p, q)
        lo_env, lo_ctx = self.envs[lo.level], self.ctxs[lo.level]
        first = dist(lo_ctx, lo.potential, model_project(lo_env, hi.potential))
        sup_term = self._sup_term(hi.level, lo.level, max(p.cap, q.cap))
        dv = self.envs[hi.level].mass - lo_env.mass
        return first, sup_term, dv

    def quasi(self, p: BigPoint, q: BigPoint):
        """The quasi-distance, exact; equals plain dist on a shared level."""
        key = (p, q)
        if key not in self._edge:
            value = sum(self.quasi_parts(p, q), ZERO)
            self._edge[key] = value
            self._edge[(q, p)] = value
        return self._edge[key]

    def volume_gap(self, p: BigPoint, q: BigPoint):
        return abs(self.envs[p.level].mass - self.envs[q.level].mass)

    def chain(self, p: BigPoint, q: BigPoint, nodes=()) -> ChainResult:
        """Cheapest chain through the node pool; single edge bounds it above."""
        pts = [p, *nodes, q]
        target = len(pts) - 1
        best = {0: ZERO}
        prev = {}
        heap = [(ZERO, 0)]
        done = set()
        while heap:
            d0, i = heapq.heappop(heap)
            if i in done:
                continue
            done.add(i)
            if i == target:
                break
            for j in range(len(pts)):
                if j in done or j == i:
                    continue
                nd = d0 + self.quasi(pts[i], pts[j])
                if j not in best or nd < best[j]:
                    best[j] = nd
                    prev[j] = i
                    heapq.heappush(heap, (nd, j))
        path = [target]
        while path[-1] != 0:
            path.append(prev[path[-1]])
        path.reverse()
        parts = tuple(
            self.quasi_parts(pts[a], pts[b]) for a, b in zip(path, path[1:])
        )
        return ChainResult(
            value=best[target],
            path=tuple(path),
            points=tuple(pts[i] for i in path),
            edge_parts=parts,
        )


def quasi_dist(space: BigSpace, p: BigPoint, q: BigPoint):
    return space.quasi(p, q)


def chain_dist(space: BigSpace, p: BigPoint, q: BigPoint, nodes=()) -> ChainResult:
    return space.chain(p, q, nodes)


def default_node_pools(space: BigSpace, level: int):
    """One pool per other level, plus their union: the adversarial menu."""
    members = range(len(space.generator.members))
    per_level = [
        [space.point_from_member(k, i) for i in members]
        for k in range(space.level_count)
        if k != level
    ]
    if len(per_level) > 1:
        union = [pt for pool in per_level for pt in pool]
        return per_level + [union]
    return per_level


def level_restriction_check(space: BigSpace, level: int, member_indices, pools=None) -> Report:
    """Chained distance must reproduce the level distance exactly.

    The single-edge chain already equals it, so the defect measures whether
    any multi-level detour undercuts; it must be exactly zero.
    """
    pts = [space.point_from_member(level, i) for i in member_indices]
    if pools is None:
        pools = default_node_pools(space, level)
    worst = ZERO
    worst_case = None
    negative = False
    checked = 0
    for a in range(len(pts)):
        for b in range(a + 1, len(pts)):
            exact = dist(space.ctxs[level], pts[a].potential, pts[b].potential)
            for pi, pool in enumerate(pools):
                res = space.chain(pts[a], pts[b], pool)
                defect = exact - res.value
                checked += 1
                if defect < 0:
                    negative = True
                if abs(defect) > worst:
                    worst = abs(defect)
                    worst_case = {"pair": (a, b), "pool": pi, "chain": res.path}
    return Report(
        name="level_restriction",
        passed=(worst == 0) and not negative,
        lhs=worst,
        rhs=ZERO,
        witnesses={"checked": checked, "worst_case": worst_case, "chain_exceeded": negative},
    )
