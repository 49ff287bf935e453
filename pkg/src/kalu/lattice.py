"""
The poset of S-varieties seen from a base variety Delta_p.

Everything here works in the base's essential coordinates: a vector is a
nu-tuple of offsets added to I_bar (the datum's incidences at the retained
positions) on the subflag J_bar. The datum restricted to those positions
is kept as `ctx.sub`, so base vectors are ordinary offset vectors of `sub`.

On a fixed flag, weak-condition presentations are unique, so inclusion of
varieties is componentwise order of offset vectors.

>>> ctx = PosetContext.at(SchubertDatum(3, 8, (1, 2), (4, 6)))
>>> interval(ctx, (1, 1))
[(0, 0), (0, 1), (1, 0), (1, 1)]
>>> is_admissible(ctx, (3, 0))
False
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .schubert import (
    EssentialPair, InvalidDatum, Partition, SchubertDatum,
    check_offset, contains, essentialize, lambda_of, represent_on_flag,
    weak_violations,
)

__all__ = [
    "Vector", "PosetContext", "is_admissible", "adapt", "adapt_within",
    "essential_positions", "leq", "distance", "interval",
    "enumerate_admissible", "to_datum_coords",
]

Vector = tuple[int, ...]


@dataclass(frozen=True)
class PosetContext:
    datum: SchubertDatum
    base: EssentialPair

    @classmethod
    def at(cls, datum: SchubertDatum, p: Sequence[int] | None = None) -> PosetContext:
        """Context of Delta_p, with p given over the datum's own flag."""
        p = tuple(p) if p is not None else datum.zero
        check_offset(datum, p)
        return cls(datum, essentialize(datum, p))

    @property
    def sub(self) -> SchubertDatum:
        d, b = self.datum, self.base
        return SchubertDatum(d.k, d.l, b.I_bar, b.J_bar)

    @property
    def k(self) -> int:
        return self.datum.k

    @property
    def l(self) -> int:
        return self.datum.l

    @property
    def nu(self) -> int:
        return self.base.nu

    @property
    def p(self) -> Vector:
        return self.base.p_bar

    @property
    def top(self) -> Vector:
        """The largest admissible vector: every incidence pushed up to k."""
        return tuple(self.k - i for i in self.base.I_bar)

    def lam(self, q: Sequence[int]) -> Partition:
        if not self.nu:
            return (0,) * self.k
        return lambda_of(self.sub, q)


def is_admissible(ctx: PosetContext, q: Sequence[int]) -> bool:
    """Delta_q (q in base coordinates) is a Delta_p-variety."""
    if len(q) != ctx.nu:
        raise ValueError(f"arity mismatch: got {len(q)}, base has {ctx.nu}")
    if any(a < b for a, b in zip(q, ctx.p)):
        return False
    inc = tuple(i + x for i, x in zip(ctx.base.I_bar, q))
    return not weak_violations(ctx.k, ctx.l, inc, ctx.base.J_bar)


def essential_positions(ctx: PosetContext, q: Sequence[int]) -> tuple[int, ...]:
    """Positions (into the base flag) of the essential conditions of Delta_q."""
    return essentialize(ctx.sub, q).positions


def adapt_within(ctx: PosetContext, tau: Sequence[int], sigma: Sequence[int]) -> Vector:
    """
    sigma^tau, re-expressed in base coordinates: keep sigma only at tau's
    essential positions and present the resulting variety on the base flag.
    Equals sigma exactly when sigma is tau-admissible.
    """
    pos = essential_positions(ctx, tau)
    k, l = ctx.k, ctx.l
    restricted = SchubertDatum(k, l, tuple(ctx.base.I_bar[a] for a in pos),
                               tuple(ctx.base.J_bar[a] for a in pos))
    if pos:
        lam = lambda_of(restricted, tuple(sigma[a] for a in pos))
    else:
        lam = (0,) * k
    inc = represent_on_flag(lam, k, l, ctx.base.J_bar)
    return tuple(x - i for x, i in zip(inc, ctx.base.I_bar))


def adapt(ctx: PosetContext, q: Sequence[int]) -> Vector:
    """q^p: the entries of a datum-flag vector q at the base's positions."""
    d = ctx.datum
    check_offset(d, q)
    if not contains(lambda_of(d, q), ctx.lam(ctx.p)):
        raise ValueError(f"Delta_{tuple(q)} is not contained in the base variety")
    return tuple(q[a] for a in ctx.base.positions)


def leq(datum: SchubertDatum, p: Sequence[int], q: Sequence[int]) -> bool:
    """p <= q, i.e. Delta_q is contained in Delta_p (diagram containment)."""
    return contains(lambda_of(datum, q), lambda_of(datum, p))


def distance(p: Sequence[int], q: Sequence[int]) -> int:
    if len(p) != len(q) or any(a > b for a, b in zip(p, q)):
        raise ValueError(f"{tuple(p)} and {tuple(q)} are not comparable")
    return sum(b - a for a, b in zip(p, q))


def _sort_key(base: Sequence[int]):
    return lambda v: (sum(v) - sum(base), v)


def interval(ctx: PosetContext, q: Sequence[int]) -> list[Vector]:
    """Admissible tau with p_bar <= tau <= q, by distance then lexicographically."""
    q = tuple(q)
    if not is_admissible(ctx, q):
        raise ValueError(f"{q} is not admissible for the base")
    ranges = [range(a, b + 1) for a, b in zip(ctx.p, q)]
    out = [v for v in product(*ranges) if is_admissible(ctx, v)]
    out.sort(key=_sort_key(ctx.p))
    return out


def enumerate_admissible(datum: SchubertDatum) -> list[Vector]:
    """All admissible vectors of S = Delta_0, in its essential coordinates."""
    ctx = PosetContext.at(datum)
    return interval(ctx, ctx.top)


def to_datum_coords(ctx: PosetContext, q: Sequence[int]) -> Vector:
    """Present the base-coordinate vector q on the datum's full flag."""
    d = ctx.datum
    inc = represent_on_flag(ctx.lam(q), d.k, d.l, d.J)
    out = tuple(x - i for x, i in zip(inc, d.I))
    if any(x < 0 for x in out):
        raise InvalidDatum([f"cannot present {tuple(q)} over the datum flag"])
    return out
