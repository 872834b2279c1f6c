"""The distance d, the comparison functional rho, and its chain sums.

d(u, v) = E(u) + E(v) - 2 E(rooftop(u, v)) on a fixed sector.  All values
are exact rationals, so the metric axioms, the Pythagorean decomposition,
and the chain-sum convergence rate can be asserted with ==, not tolerances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ._rational import ONE, ZERO, rat
from .errors import BadExponent, EmptyFamily, NotComparable
from .energy import EnergyContext, energy
from .grid_convex import (
    GridPLConvex,
    ModelEnvelope,
    affine_combine,
    align,
    is_leq,
    rooftop,
    sup_diff,
)
from .measures import monge_ampere
from .report import Report


def double_inequality_constant(n: int):
    """1 / (3 * 2^(n+2) * (n+1)); equals 1/48 in the line model n=1."""
    if not isinstance(n, int) or n < 1:
        raise BadExponent("dimension must be a positive integer")
    return rat(1, 3 * 2 ** (n + 2) * (n + 1))


@dataclass(frozen=True)
class MetricContext:
    """Energy context plus the cached constants of the distance estimates.

    A degenerate sector (zero mass) is representable; on it the distance
    vanishes identically, which callers can detect via `degenerate`.
    """

    energy_ctx: EnergyContext
    n: int = 1
    lower_constant: object = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "lower_constant", double_inequality_constant(self.n))

    @property
    def psi(self) -> ModelEnvelope:
        return self.energy_ctx.psi

    @property
    def mass(self):
        return self.energy_ctx.mass

    @property
    def degenerate(self) -> bool:
        return self.energy_ctx.degenerate

    def require_in_sector(self, u: GridPLConvex):
        self.energy_ctx.require_in_sector(u)


def metric_context(psi: ModelEnvelope) -> MetricContext:
    return MetricContext(EnergyContext(psi))


def dist(ctx: MetricContext, u: GridPLConvex, v: GridPLConvex):
    """d(u, v), exact and non-negative; zero iff u == v when the mass is positive."""
    ctx.require_in_sector(u)
    ctx.require_in_sector(v)
    p = rooftop(u, v)
    e = ctx.energy_ctx
    return energy(e, u) + energy(e, v) - 2 * energy(e, p)


def rho(u: GridPLConvex, v: GridPLConvex):
    """integral (hi - lo) dMA(lo) for a comparable pair, symmetrized.

    Dominates d on a common sector and contracts under envelope projection.
    """
    if is_leq(v, u):
        hi, lo = u, v
    elif is_leq(u, v):
        hi, lo = v, u
    else:
        raise NotComparable("rho needs a pointwise-ordered pair")
    a, b = align(hi, lo)
    mu = monge_ampere(b)
    acc = ZERO
    for x, y, m in zip(a.values, b.values, mu.masses):
        if m != 0:
            acc += (x - y) * m
    return acc


def chain_rho(ctx: MetricContext, u: GridPLConvex, v: GridPLConvex, big_n: int):
    """Sum of rho along the affine chain w_j = (j/N) u + ((N-j)/N) v.

    Exact; always >= dist(ctx, u, v) with defect O(1/N).
    """
    if not isinstance(big_n, int) or big_n < 1:
        raise ValueError("chain length must be a positive integer")
    ctx.require_in_sector(u)
    ctx.require_in_sector(v)
    if not (is_leq(v, u) or is_leq(u, v)):
        raise NotComparable("chain_rho needs a pointwise-ordered pair")
    links = [affine_combine(rat(j, big_n), u, v) for j in range(big_n + 1)]
    acc = ZERO
    for w0, w1 in zip(links, links[1:]):
        acc += rho(w0, w1)
    return acc


def abs_diff_pairing(u: GridPLConvex, v: GridPLConvex):
    """integral |u - v| d(MA(u) + MA(v)); the two-sided comparison quantity."""
    a, b = align(u, v)
    mu = monge_ampere(a)
    mv = monge_ampere(b)
    acc = ZERO
    for x, y, m0, m1 in zip(a.values, b.values, mu.masses, mv.masses):
        w = m0 + m1
        if w != 0:
            acc += abs(x - y) * w
    return acc


def double_inequality_report(ctx: MetricContext, u: GridPLConvex, v: GridPLConvex) -> Report:
    """c_n * integral |u-v| d(MA(u)+MA(v)) <= d(u,v) <= that integral, exactly."""
    d = dist(ctx, u, v)
    pairing = abs_diff_pairing(u, v)
    lower = ctx.lower_constant * pairing
    return Report(
        name="double_inequality",
        passed=lower <= d <= pairing,
        lhs=d,
        rhs=pairing,
        witnesses={"lower": lower, "constant": ctx.lower_constant},
    )


def darboux_sum(n: int, s: int, big_n: int):
    """(1/N) * sum_{j<N} (j/N)^s ((N-j)/N)^(n-s), as one exact fraction."""
    if not isinstance(n, int) or not isinstance(s, int) or n < 1 or s < 0 or s > n:
        raise BadExponent("need integers n >= 1 and 0 <= s <= n")
    if not isinstance(big_n, int) or big_n < 1:
        raise ValueError("partition size must be a positive integer")
    num = sum(j**s * (big_n - j) ** (n - s) for j in range(big_n))
    return rat(num, big_n ** (n + 1))


def darboux_limit(n: int, s: int):
    """The N -> infinity value 1 / (binom(n, s) * (n + 1))."""
    if not isinstance(n, int) or not isinstance(s, int) or n < 1 or s < 0 or s > n:
        raise BadExponent("need integers n >= 1 and 0 <= s <= n")
    return rat(1, math.comb(n, s) * (n + 1))


def estimate_sup_bound_constants(ctx: MetricContext, family):
    """Fit the smallest constants in V * sup(u - psi) <= A d(psi, u) + B.

    B is forced by the members at distance zero, then A is the exact sweep
    maximum of the remaining slopes (floored at 1).  This is an empirical
    fit over the given family, not a universal constant.  Also verifies the
    companion lower bound -d(psi, u) <= V * sup(u - psi) on every member.
    Returns (A, B, report); the report names the binding member.
    """
    members = list(family)
    if not members:
        raise EmptyFamily("no potentials to fit constants against")
    psi_pot = ctx.psi.potential
    vol = ctx.mass
    rows = []
    for i, u in enumerate(members):
        ctx.require_in_sector(u)
        s = sup_diff(u, psi_pot)
        rows.append((i, vol * s, dist(ctx, psi_pot, u)))
    b = ZERO
    b_binding = None
    for i, vs, d in rows:
        if d == 0 and vs > b:
            b, b_binding = vs, i
    a = ONE
    a_binding = None
    for i, vs, d in rows:
        if d > 0:
            cand = (vs - b) / d
            if cand > a:
                a, a_binding = cand, i
    upper_ok = all(vs <= a * d + b for _, vs, d in rows)
    lower_ok = all(-d <= vs for _, vs, d in rows)
    report = Report(
        name="sup_bound_constants",
        passed=upper_ok and lower_ok,
        lhs=a,
        rhs=b,
        witnesses={
            "binding_for_A": a_binding,
            "binding_for_B": b_binding,
            "family_size": len(rows),
            "lower_bound_ok": lower_ok,
        },
    )
    return a, b, report
