"""Finite metric spaces, correspondences, and the two limit experiments.

Distances are exact rationals, so distortion tables, the nested-schedule
convergence rows, and the direct-limit identities are all computed and
compared without tolerances; the only float in sight is the convergence
threshold a caller may impose on the last row.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._rational import ZERO, rat
from .errors import NotTotal, ScheduleInvalid, TooLarge, ValidationError
from .families import (
    ModelFamily,
    SampledFamily,
    density_approximant,
    entropy_cap_filter,
    project_family,
)
from .grid_convex import model_project, pl_equal
from .metric import dist
from .report import Report

GH_EXACT_CAP = 5


@dataclass(frozen=True)
class FiniteMetricSpace:
    """Labelled pseudometric space given by its exact distance matrix.

    Distinct points at distance zero are allowed (projections collapse);
    zero diagonal, symmetry, and the triangle inequality are enforced.
    """

    labels: tuple
    matrix: tuple
    basepoint: int = 0

    def __post_init__(self):
        labels = tuple(self.labels)
        matrix = tuple(tuple(rat(v) for v in row) for row in self.matrix)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "matrix", matrix)
        n = len(labels)
        if len(matrix) != n or any(len(row) != n for row in matrix):
            raise ValidationError("distance matrix shape does not match labels")
        if not 0 <= self.basepoint < n:
            raise ValidationError("basepoint index out of range")
        for i in range(n):
            if matrix[i][i] != 0:
                raise ValidationError("nonzero diagonal at %d" % i)
            for j in range(i + 1, n):
                if matrix[i][j] != matrix[j][i]:
                    raise ValidationError("asymmetry at (%d, %d)" % (i, j))
                if matrix[i][j] < 0:
                    raise ValidationError("negative distance at (%d, %d)" % (i, j))
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if matrix[i][j] > matrix[i][k] + matrix[k][j]:
                        raise ValidationError(
                            "triangle inequality fails at (%d, %d, %d)" % (i, j, k)
                        )

    @property
    def size(self) -> int:
        return len(self.labels)

    def d(self, i: int, j: int):
        return self.matrix[i][j]


def space_from_potentials(ctx, potentials, labels=None, basepoint: int = 0) -> FiniteMetricSpace:
    pots = list(potentials)
    if labels is None:
        labels = tuple(str(i) for i in range(len(pots)))
    matrix = [[ZERO] * len(pots) for _ in pots]
    for i in range(len(pots)):
        for j in range(i + 1, len(pots)):
            matrix[i][j] = matrix[j][i] = dist(ctx, pots[i], pots[j])
    return FiniteMetricSpace(tuple(labels), tuple(tuple(r) for r in matrix), basepoint)


@dataclass(frozen=True)
class Correspondence:
    """Relation between two spaces, total on both sides."""

    x: FiniteMetricSpace
    y: FiniteMetricSpace
    pairs: tuple

    def __post_init__(self):
        pairs = tuple(sorted(set((int(a), int(b)) for a, b in self.pairs)))
        object.__setattr__(self, "pairs", pairs)
        for a, b in pairs:
            if not (0 <= a < self.x.size and 0 <= b < self.y.size):
                raise ValidationError("relation pair (%d, %d) out of range" % (a, b))
        left = {a for a, _ in pairs}
        right = {b for _, b in pairs}
        if len(left) != self.x.size or len(right) != self.y.size:
            raise NotTotal("relation must cover both spaces")


def identity_correspondence(x: FiniteMetricSpace, y: FiniteMetricSpace) -> Correspondence:
    if x.size != y.size:
        raise NotTotal("pointwise matching needs equal sizes")
    return Correspondence(x, y, tuple((i, i) for i in range(x.size)))


def distortion(rel: Correspondence):
    """max |d_x - d_y| over related pairs of pairs, exact."""
    worst = ZERO
    pairs = rel.pairs
    for a in range(len(pairs)):
        i, j = pairs[a]
        for b in range(a, len(pairs)):
            k, l = pairs[b]
            gap = abs(rel.x.d(i, k) - rel.y.d(j, l))
            if gap > worst:
                worst = gap
    return worst


def gh_upper(rel: Correspondence):
    return distortion(rel) / 2


def gh_exact_witness(x: FiniteMetricSpace, y: FiniteMetricSpace):
    """Minimal distortion over all correspondences, by branch and bound.

    Minimal total relations are unions of a map each way, so the search
    assigns a partner to every point of both spaces, pruning on the
    running maximum defect.  Exponential; capped at GH_EXACT_CAP points.
    """
    if x.size > GH_EXACT_CAP or y.size > GH_EXACT_CAP:
        raise TooLarge("exhaustive search is capped at %d points" % GH_EXACT_CAP)
    nx, ny = x.size, y.size
    seed = tuple((i, min(i, ny - 1)) for i in range(nx)) + tuple(
        (min(j, nx - 1), j) for j in range(ny)
    )
    best_pairs = tuple(sorted(set(seed)))
    best = distortion(Correspondence(x, y, best_pairs))
    assigned = []

    def grow(slot, cur):
        nonlocal best, best_pairs
        if cur >= best:
            return
        if slot == nx + ny:
            best, best_pairs = cur, tuple(sorted(set(assigned)))
            return
        options = (
            [(slot, j) for j in range(ny)]
            if slot < nx
            else [(i, slot - nx) for i in range(nx)]
        )
        for pair in options:
            new = cur
            feasible = True
            for other in assigned:
                gap = abs(x.d(pair[0], other[0]) - y.d(pair[1], other[1]))
                if gap > new:
                    new = gap
                    if new >= best:
                        feasible = False
                        break
            if feasible:
                assigned.append(pair)
                grow(slot + 1, new)
                assigned.pop()

    grow(0, ZERO)
    return best / 2, Correspondence(x, y, best_pairs)


def gh_exact(x: FiniteMetricSpace, y: FiniteMetricSpace):
    return gh_exact_witness(x, y)[0]


def nested_family_distortions(family: ModelFamily, candidates, caps, tolerance: float):
    """Distortion table of the canonical correspondences along the schedule.

    For each cap, filter the candidates, project the kept members to every
    level and to the limit, and record the distortion of the match-by-index
    correspondence.  Returns (rows, report); rows carry exact rationals.
    The reference is always included, so each level's own envelope point is
    a member and the basepoint condition holds by construction.
    """
    if family.direction != "decreasing":
        raise ScheduleInvalid("the convergence experiment needs a decreasing schedule")
    reference = family.reference
    rows = []
    monotone = True
    finals = []
    for cap in caps:
        kept = entropy_cap_filter([reference] + list(candidates), cap, cap, reference)
        if not kept.members:
            raise ScheduleInvalid("cap %s keeps no candidates" % cap)
        limit_proj = project_family(family.limit, kept)
        limit_space = space_from_potentials(family.limit_context, limit_proj.members)
        previous = None
        for k, env in enumerate(family.levels):
            level_proj = project_family(env, kept)
            level_space = space_from_potentials(family.contexts[k], level_proj.members)
            rel = identity_correspondence(level_space, limit_space)
            value = distortion(rel)
            rows.append({"cap": cap, "level": k, "distortion": value, "members": len(kept)})
            if previous is not None and value > previous:
                monotone = False
            previous = value
        finals.append(previous)
    passed = monotone and all(float(v) < tolerance for v in finals)
    report = Report(
        name="nested_family_distortions",
        passed=passed,
        lhs=max(finals),
        rhs=rat(0),
        witnesses={
            "monotone": monotone,
            "finals": finals,
            "tolerance": tolerance,
            "rows": len(rows),
        },
    )
    return rows, report


def direct_limit_check(family: ModelFamily, generator: SampledFamily, schedule=(1, 2, 4, 8, 16)) -> Report:
    """The three target laws of the limit construction, on one generator.

    (a) all connecting projections are 1-Lipschitz, exactly;
    (b) projecting to a deeper level then to the limit equals projecting
        straight to the limit, as PL data;
    (c) for each limit-level point, the clipped approximants converge to
        it with exactly stabilizing distances.
    """
    if family.direction != "decreasing":
        raise ScheduleInvalid("the limit experiment needs a decreasing schedule")
    envs = list(family.levels) + [family.limit]
    ctxs = list(family.contexts) + [family.limit_context]
    projections = [list(project_family(env, generator).members) for env in envs]
    lipschitz_ok = True
    for k in range(len(envs)):
        for j in range(k + 1, len(envs)):
            for a in range(len(generator.members)):
                for b in range(a + 1, len(generator.members)):
                    upper = dist(ctxs[k], projections[k][a], projections[k][b])
                    lower = dist(ctxs[j], projections[j][a], projections[j][b])
                    if lower > upper:
                        lipschitz_ok = False
    compose_ok = True
    for k in range(len(envs) - 1):
        for a, u in enumerate(projections[k]):
            via = model_project(family.limit, u)
            if not pl_equal(via, projections[-1][a]):
                compose_ok = False
    density_rows = []
    density_ok = True
    for a, u in enumerate(projections[-1]):
        gaps = []
        for j in schedule:
            v = density_approximant(family.limit, u, j)
            gaps.append(dist(family.limit_context, u, v))
        if any(x < y for x, y in zip(gaps, gaps[1:])) or gaps[-1] != 0:
            density_ok = False
        density_rows.append(gaps)
    return Report(
        name="direct_limit",
        passed=lipschitz_ok and compose_ok and density_ok,
        lhs=ZERO,
        rhs=ZERO,
        witnesses={
            "lipschitz": lipschitz_ok,
            "composition": compose_ok,
            "density": density_ok,
            "density_rows": density_rows,
            "members": len(generator.members),
            "levels": len(envs),
        },
    )
