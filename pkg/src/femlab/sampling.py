"""Seeded generators of random PL convex potentials, all exact rationals.

Slopes are drawn as sorted lattice fractions of the target interval, so a
generated potential has dual domain exactly equal to that interval and
every derived quantity stays in exact arithmetic.  Generators take a
`random.Random` instance; identical seeds give identical output.
"""

from __future__ import annotations

from ._rational import rat
from .grid_convex import Grid, GridPLConvex, make_pl, pointwise_max, sup_diff


def nondegenerate_reference(grid: Grid) -> GridPLConvex:
    """Reference with a strictly positive slope jump at every node.

    Chord slopes interpolate the polytope linearly in the piece midpoints,
    so entropy against this reference is finite for every full potential.
    """
    a, b = grid.polytope
    x0, xm = grid.nodes[0], grid.nodes[-1]
    values = [rat(0)]
    for lo, hi in zip(grid.nodes, grid.nodes[1:]):
        s = a + (b - a) * (lo + hi - 2 * x0) / (2 * (xm - x0))
        values.append(values[-1] + s * (hi - lo))
    return make_pl(grid, values, a, b)


def random_sector_potential(rng, grid: Grid, interval, *, den: int = 8, shift: int = 2) -> GridPLConvex:
    """Random potential with dual domain exactly `interval`.

    Chord slopes are lo + span * k/den with k drawn sorted, end slopes are
    the interval ends; values integrate the chords from a random base
    height in [-shift, shift].
    """
    lo, hi = rat(interval[0]), rat(interval[1])
    span = hi - lo
    pieces = len(grid.nodes) - 1
    ks = sorted(rng.randint(0, den) for _ in range(pieces))
    chords = [lo + span * rat(k, den) for k in ks]
    base = rat(rng.randint(-shift * den, shift * den), den)
    values = [base]
    for s, x0, x1 in zip(chords, grid.nodes, grid.nodes[1:]):
        values.append(values[-1] + s * (x1 - x0))
    return make_pl(grid, values, lo, hi)


def random_full_potential(rng, grid: Grid, *, den: int = 8, shift: int = 2) -> GridPLConvex:
    """Random potential spanning the whole moment polytope."""
    return random_sector_potential(rng, grid, grid.polytope, den=den, shift=shift)


def random_normalized_potential(rng, grid: Grid, reference: GridPLConvex, *, den: int = 8) -> GridPLConvex:
    """Full-polytope potential shifted so sup(u - reference) == 0."""
    u = random_full_potential(rng, grid, den=den)
    return u.shift(-sup_diff(u, reference))


def random_ordered_pair(rng, grid: Grid, interval, *, den: int = 8, shift: int = 2):
    """(hi, lo) with hi >= lo pointwise, both with dual domain `interval`."""
    lo_pot = random_sector_potential(rng, grid, interval, den=den, shift=shift)
    other = random_sector_potential(rng, grid, interval, den=den, shift=shift)
    return pointwise_max(lo_pot, other), lo_pot


def random_candidates(rng, grid: Grid, reference: GridPLConvex, count: int, *, den: int = 8):
    """List of normalized full-polytope potentials, the raw family material."""
    return [random_normalized_potential(rng, grid, reference, den=den) for _ in range(count)]


def random_subinterval(rng, polytope, *, den: int = 8):
    """Random non-degenerate rational subinterval of the polytope."""
    lo, hi = rat(polytope[0]), rat(polytope[1])
    span = hi - lo
    while True:
        a, b = sorted(rng.randint(0, den) for _ in range(2))
        if a < b:
            return (lo + span * rat(a, den), lo + span * rat(b, den))
