"""
Fiber data of the two resolutions over a stratum Delta_q of Delta_p.

pi_p has fibers F_pq, iterated Grassmannian bundles built from the nested
intersections V n F_zeta; xi_p has fibers G_pq, built from the spans
V + F_zeta. Both Poincare polynomials are products of Gaussian binomials.

All functions take q in the base's essential coordinates and assume it is
p-admissible. Notation: iota = I_bar + p_bar, zeta = J_bar, eps = q - p_bar,
with iota_0 = 0 and lambda at row iota_{nu+1} taken to be 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, prod
from typing import Sequence

from .lattice import PosetContext, Vector, is_admissible, leq
from .polynomial import ONE, IntPoly, gauss_poincare
from .schubert import SchubertDatum, area, lambda_of

__all__ = [
    "FiberReport", "a_poly", "dim_f", "g_fiber_poly", "dim_g", "b_form",
    "codim_between", "codim_in_context", "zelevinsky_codim", "fiber_report",
    "a_euler_oracle",
]


@dataclass(frozen=True)
class FiberReport:
    a: IntPoly
    dim_f: int
    h_g: IntPoly
    dim_g: int
    m: int
    b_form: int
    epsilon: Vector

    def to_json(self) -> dict:
        return {
            "a": self.a.to_json(), "dim_f": self.dim_f,
            "h_g": self.h_g.to_json(), "dim_g": self.dim_g,
            "m": self.m, "b_form": self.b_form, "epsilon": list(self.epsilon),
        }


def _setup(ctx: PosetContext, q: Sequence[int]):
    assert is_admissible(ctx, q), f"{tuple(q)} is not p-admissible"
    iota = ctx.base.incidence
    eps = tuple(a - b for a, b in zip(q, ctx.p))
    return iota, eps


def a_poly(ctx: PosetContext, q: Sequence[int]) -> IntPoly:
    """Poincare polynomial of F_pq (Leray-Hirsch product of Grassmannians)."""
    iota, _ = _setup(ctx, q)
    out = ONE
    prev = 0
    for i_bar, io, x in zip(ctx.base.I_bar, iota, q):
        out = out * gauss_poincare(io - prev, i_bar + x - prev)
        prev = io
    return out


def dim_f(ctx: PosetContext, q: Sequence[int]) -> int:
    iota, eps = _setup(ctx, q)
    prev = 0
    total = 0
    for io, e in zip(iota, eps):
        total += e * (io - prev)
        prev = io
    return total


def _lam_rows(ctx: PosetContext, iota) -> list[int]:
    """lambda^p at rows iota_1, ..., iota_nu, then 0 for the sentinel row."""
    lam = ctx.lam(ctx.p)
    return [lam[r - 1] for r in iota] + [0]


def g_fiber_poly(ctx: PosetContext, q: Sequence[int]) -> IntPoly:
    """Poincare polynomial of G_pq."""
    iota, eps = _setup(ctx, q)
    k, l = ctx.k, ctx.l
    zeta = ctx.base.J_bar
    nu = ctx.nu
    if nu == 0:
        return ONE
    out = gauss_poincare(eps[-1], l - k - zeta[-1] + iota[-1] + eps[-1])
    for a in range(nu - 1):
        gap = zeta[a + 1] - iota[a + 1] - zeta[a] + iota[a]
        out = out * gauss_poincare(eps[a], gap + eps[a])
    return out


def dim_g(ctx: PosetContext, q: Sequence[int]) -> int:
    iota, eps = _setup(ctx, q)
    rows = _lam_rows(ctx, iota)
    return sum(e * (rows[a] - rows[a + 1]) for a, e in enumerate(eps))


def b_form(epsilon: Sequence[int]) -> int:
    """The positive definite quadratic form of the codimension identity."""
    assert len(epsilon) >= 1
    e = list(epsilon)
    return e[-1] ** 2 + sum(e[a] ** 2 - e[a] * e[a + 1] for a in range(len(e) - 1))


def codim_between(datum: SchubertDatum, p: Sequence[int], q: Sequence[int]) -> int:
    """Codimension of Delta_q in Delta_p: the area between the two diagrams."""
    if not leq(datum, p, q):
        raise ValueError(f"{tuple(p)} and {tuple(q)} are not comparable")
    return area(lambda_of(datum, q)) - area(lambda_of(datum, p))


def codim_in_context(ctx: PosetContext, q: Sequence[int]) -> int:
    return area(ctx.lam(q)) - area(ctx.lam(ctx.p))


def zelevinsky_codim(ctx: PosetContext, q: Sequence[int]) -> int:
    """The codimension expanded as sum eps_a (vertical + horizontal step) + B(eps)."""
    iota, eps = _setup(ctx, q)
    if not eps:
        return 0
    rows = _lam_rows(ctx, iota)
    prev = 0
    total = 0
    for a, (io, e) in enumerate(zip(iota, eps)):
        total += e * (io - prev + rows[a] - rows[a + 1])
        prev = io
    return total + b_form(eps)


def fiber_report(ctx: PosetContext, q: Sequence[int]) -> FiberReport:
    eps = tuple(a - b for a, b in zip(q, ctx.p))
    return FiberReport(
        a=a_poly(ctx, q), dim_f=dim_f(ctx, q),
        h_g=g_fiber_poly(ctx, q), dim_g=dim_g(ctx, q),
        m=codim_in_context(ctx, q),
        b_form=b_form(eps) if eps else 0,
        epsilon=eps,
    )


def a_euler_oracle(ctx: PosetContext, q: Sequence[int]) -> int:
    """
    Euler characteristic of F_pq counted directly: the fiber is a tower of
    Grassmannians G_{iota_a - iota_{a-1}}(C^{c_a - iota_{a-1}}), so its number
    of torus-fixed points is a product of ordinary binomials.
    """
    iota = ctx.base.incidence
    prev = 0
    factors = []
    for i_bar, io, x in zip(ctx.base.I_bar, iota, q):
        factors.append(comb(i_bar + x - prev, io - prev))
        prev = io
    return prod(factors)
