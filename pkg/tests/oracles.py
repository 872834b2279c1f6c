"""Slow independent oracles the fast library code is checked against.

Each oracle recomputes a quantity from first principles by a different
route than the library (pointwise enumeration, minimax over candidate
slopes, exhaustive search), so agreement is evidence rather than
tautology.
"""

from __future__ import annotations

import itertools

from femlab import rat


def conjugate_by_enumeration(u, p):
    """sup_x (p*x - u(x)) for p inside u's dual domain: attained at a node."""
    return max(rat(p) * x - v for x, v in zip(u.grid.nodes, u.values))


def ray_value(u, x):
    """Evaluate u at any point, extending by its end slopes beyond the grid."""
    x = rat(x)
    nodes, values = u.grid.nodes, u.values
    if x <= nodes[0]:
        return values[0] + u.slope_left * (x - nodes[0])
    if x >= nodes[-1]:
        return values[-1] + u.slope_right * (x - nodes[-1])
    for a, b, va, vb in zip(nodes, nodes[1:], values, values[1:]):
        if a <= x <= b:
            return va + (vb - va) * (x - a) / (b - a)
    raise AssertionError("unreachable")


def biconjugate_by_minimax(nodes, values, s_lo, s_hi, query):
    """sup over s in [s_lo, s_hi] of (s*query - max_i(s*x_i - f_i)).

    The inner max is the conjugate of the node data; the outer objective is
    concave piecewise linear in s, so the sup is attained at an endpoint or
    where two inner lines cross, and those crossings are exactly the chord
    slopes of the data.  Enumerating all of them makes this exact.
    """
    s_lo, s_hi, query = rat(s_lo), rat(s_hi), rat(query)
    candidates = {s_lo, s_hi}
    for (xi, fi), (xj, fj) in itertools.combinations(zip(nodes, values), 2):
        if xi != xj:
            s = (fi - fj) / (xi - xj)
            if s_lo <= s <= s_hi:
                candidates.add(s)
    best = None
    for s in candidates:
        value = s * query - max(s * x - f for x, f in zip(nodes, values))
        if best is None or value > best:
            best = value
    return best


def envelope_by_minimax(potentials, s_lo, s_hi):
    """Node values of the biconjugate of min(potentials) on [s_lo, s_hi].

    The conjugate of a pointwise min is the max of conjugates, finite only
    where every conjugate is finite; on each segment the min of affine
    pieces is concave, so its conjugate only sees node values, which is
    what makes the minimax formula above applicable.
    """
    grid = potentials[0].grid
    mins = tuple(min(u.values[i] for u in potentials) for i in range(len(grid.nodes)))
    return tuple(
        biconjugate_by_minimax(grid.nodes, mins, s_lo, s_hi, x) for x in grid.nodes
    )


def rooftop_by_minimax(*potentials):
    """Independent rooftop: envelope of the min on the dual intersection."""
    s_lo = max(u.slope_left for u in potentials)
    s_hi = min(u.slope_right for u in potentials)
    if s_lo > s_hi:
        return None
    return envelope_by_minimax(potentials, s_lo, s_hi)


def project_by_minimax(psi, u):
    """Independent model projection: u's data on Q intersected with Q(u)."""
    s_lo = max(u.slope_left, psi.Q[0])
    s_hi = min(u.slope_right, psi.Q[1])
    if s_lo > s_hi:
        return None
    return tuple(
        biconjugate_by_minimax(u.grid.nodes, u.values, s_lo, s_hi, x)
        for x in u.grid.nodes
    )


TINY = rat(1, 10**6)


def slope_jump_by_sampling(u, x):
    """Derivative jump of u at x from two-sided finite differences."""
    x = rat(x)
    right = (ray_value(u, x + TINY) - ray_value(u, x)) / TINY
    left = (ray_value(u, x) - ray_value(u, x - TINY)) / TINY
    return right - left


def ma_atoms_by_sampling(u):
    """Monge-Ampere atoms recomputed from derivative jumps at the nodes."""
    return tuple(slope_jump_by_sampling(u, x) for x in u.grid.nodes)


def gh_by_enumeration(x, y):
    """Exact GH distance by exhausting all map pairs f: X->Y, g: Y->X.

    Every correspondence contains the graph relation of some (f, g) pair
    and enlarging a correspondence cannot shrink distortion, so the min
    over pairs equals the min over correspondences.
    """
    nx, ny = x.size, y.size
    best = None
    for f in itertools.product(range(ny), repeat=nx):
        for g in itertools.product(range(nx), repeat=ny):
            pairs = {(i, f[i]) for i in range(nx)} | {(g[j], j) for j in range(ny)}
            dis = max(
                abs(x.d(i1, i2) - y.d(j1, j2))
                for (i1, j1) in pairs
                for (i2, j2) in pairs
            )
            if best is None or dis < best:
                best = dis
    return best / 2


def energy_by_path_integration(ctx, u, pieces=8):
    """Energy recomputed as the exact path integral of the mass pairing.

    The derivative of the energy along the straight path from the envelope
    to u is the pairing of (u - envelope) with the path point's mass.  The
    oracle integrates that derivative by exact trapezoids on a refinement,
    at two different refinements; agreement between refinements proves the
    integrand is affine piecewise, so the value is the exact integral.
    """
    from femlab import affine_combine, monge_ampere

    psi = ctx.psi.potential
    diffs = tuple(a - b for a, b in zip(u.values, psi.values))

    def pairing_at(t):
        mu = monge_ampere(affine_combine(t, psi, u))
        return sum((d * m for d, m in zip(diffs, mu.masses)), rat(0))

    def trapezoid(n):
        total = rat(0)
        for k in range(n):
            a, b = rat(k, n), rat(k + 1, n)
            total += (pairing_at(a) + pairing_at(b)) / (2 * n)
        return total

    coarse, fine = trapezoid(pieces), trapezoid(2 * pieces)
    assert coarse == fine, "path pairing is not piecewise affine"
    return fine
