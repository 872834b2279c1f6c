"""Monge-Ampere energy relative to a singularity level.

For a level psi and a potential u with the same dual domain,

    E(u) = 1/2 [ integral (u - psi) dMA(u) + integral (u - psi) dMA(psi) ]

which is the dimension-one trapezoid of the mixed-measure sum.  Everything
here is an exact rational; identities that the energy satisfies (difference
form, sandwich bounds) are emitted as reports with both sides included.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ._rational import HALF, ZERO, rat
from .errors import PreconditionViolated, SingularityMismatch
from .grid_convex import (
    GridPLConvex,
    ModelEnvelope,
    SingularityOrder,
    align,
    compare_singularity,
    is_leq,
    pointwise_max,
)
from .measures import integrate, monge_ampere
from .report import Report


@dataclass(frozen=True)
class EnergyContext:
    """A level psi with its measure cached; the sector is its dual domain."""

    psi: ModelEnvelope
    psi_measure: object = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "psi_measure", monge_ampere(self.psi.potential))

    @property
    def mass(self):
        return self.psi.mass

    @property
    def degenerate(self) -> bool:
        return self.psi.degenerate

    def require_in_sector(self, u: GridPLConvex):
        if u.dual_domain() != self.psi.Q:
            got = u.dual_domain()
            raise SingularityMismatch(
                "potential spans [%s, %s], sector needs [%s, %s]"
                % (got[0], got[1], self.psi.Q[0], self.psi.Q[1])
            )


def energy_context(psi: ModelEnvelope) -> EnergyContext:
    return EnergyContext(psi)


def _pairing(diff_values, measure):
    acc = ZERO
    for d, m in zip(diff_values, measure.masses):
        if m != 0:
            acc += d * m
    return acc


def energy(ctx: EnergyContext, u: GridPLConvex):
    """E(u) relative to the context level, exact.

    The potential must lie in the sector (same dual domain as psi); grids
    may differ by refinement and are aligned losslessly.
    """
    ctx.require_in_sector(u)
    u2, psi2 = align(u, ctx.psi.potential)
    diff = tuple(a - b for a, b in zip(u2.values, psi2.values))
    mu = monge_ampere(u2)
    mpsi = monge_ampere(psi2)
    return HALF * (_pairing(diff, mu) + _pairing(diff, mpsi))


def energy_diff_report(ctx: EnergyContext, u: GridPLConvex, v: GridPLConvex) -> Report:
    """Difference identity plus the sandwich bounds, all exact.

    identity:  E(u) - E(v) == 1/2 [ I(u) + I(v) ]   with I(w) = int (u-v) dMA(w)
    sandwich:  I(u) <= E(u) - E(v) <= I(v)
    refined (only when u <= v):  E(u) - E(v) <= 1/2 I(u)
    """
    ctx.require_in_sector(u)
    ctx.require_in_sector(v)
    eu, ev = energy(ctx, u), energy(ctx, v)
    u2, v2 = align(u, v)
    diff = tuple(a - b for a, b in zip(u2.values, v2.values))
    iu = _pairing(diff, monge_ampere(u2))
    iv = _pairing(diff, monge_ampere(v2))
    lhs = eu - ev
    identity_ok = lhs == HALF * (iu + iv)
    sandwich_ok = iu <= lhs <= iv
    refined_applies = is_leq(u, v)
    refined_ok = (not refined_applies) or lhs <= HALF * iu
    return Report(
        name="energy_difference",
        passed=identity_ok and sandwich_ok and refined_ok,
        lhs=lhs,
        rhs=HALF * (iu + iv),
        witnesses={
            "int_against_ma_u": iu,
            "int_against_ma_v": iv,
            "identity": identity_ok,
            "sandwich": sandwich_ok,
            "refined_applies": refined_applies,
            "refined": refined_ok,
        },
    )


def canonical_approximant(ctx: EnergyContext, u: GridPLConvex, j) -> GridPLConvex:
    """max(u, psi - j): the bounded approximant of a more singular u.

    Crossing abscissas become new grid nodes so the result is the exact
    pointwise max; its dual domain is the full sector, so its energy is
    defined and decreases to E(u) as j grows (stabilizing at finite j when
    u is itself in the sector).
    """
    j = rat(j)
    if j <= 0:
        raise ValueError("approximation parameter must be positive")
    order = compare_singularity(u, ctx.psi.potential)
    if order not in (SingularityOrder.MORE_SINGULAR, SingularityOrder.EQUIVALENT):
        raise PreconditionViolated("approximant needs u at least as singular as psi")
    return pointwise_max(u, ctx.psi.potential.shift(-j))
