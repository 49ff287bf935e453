"""
The KaLu recursion: Kazhdan-Lusztig polynomials b and decomposition
multiplicity polynomials g for Schubert varieties in a Grassmannian.

For a base Delta_p and every pair tau < sigma of Delta_p-varieties, the
fiber polynomial of pi_tau over Delta_sigma splits as

    a = b + g + sum_{tau < eta < sigma, eta tau-admissible} g_{tau eta} b_{eta sigma}

where b has degree < m (codimension) and g is palindromic about degree m.
Pairs are filled in order of increasing distance, so R = a - sum is known
when (tau, sigma) is reached; g keeps the part of R of degree >= m, mirrored.
When sigma is not tau-admissible the cell shares a and b with (tau, sigma^tau).

>>> s = SchubertDatum(3, 8, (1, 2), (4, 6))
>>> b, table = kalu(s, (0, 0), (1, 0))
>>> b, table.g((0, 0), (1, 0))
(IntPoly('1 + t^2'), IntPoly('0'))
"""

from __future__ import annotations

import json
import logging
import os
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .fibers import a_poly, codim_in_context, dim_f, g_fiber_poly
from .lattice import (
    PosetContext, Vector, adapt, adapt_within, essential_positions,
    interval, is_admissible, to_datum_coords,
)
from .polynomial import ONE, ZERO, IntPoly, shift, u_tilde
from .schubert import (
    SchubertDatum, area, check, check_offset, dim_variety, lambda_of,
    represent_on_flag,
)

__all__ = [
    "KaLuInvariantError", "Cell", "KaLuTable", "build_table", "kalu",
    "full_table", "DecompositionReport", "decompose", "SmallnessReport",
    "smallness", "ScanEntry", "scan_relevant", "VerifyReport",
    "verify_identities", "TableCache", "CACHE_ENV", "lookup_b", "VERIFY_MODES",
]

log = logging.getLogger(__name__)

CACHE_ENV = "KALU_CACHE_DIR"

Key = tuple[Vector, Vector]


class KaLuInvariantError(AssertionError):
    """A computed cell contradicts a property the theory guarantees."""


@dataclass
class Cell:
    a: IntPoly
    b: IntPoly
    m: int
    r: IntPoly | None = None
    g: IntPoly | None = None
    # set on cells whose sigma is not tau-admissible: a and b are shared
    # (same objects) with this cell
    alias: Key | None = None


def _vkey(v: Sequence[int]) -> str:
    return ",".join(map(str, v))


def _parse_vkey(s: str) -> Vector:
    return tuple(int(x) for x in s.split(",")) if s else ()


def _key_str(key: Key) -> str:
    return f"{_vkey(key[0])}|{_vkey(key[1])}"


def _parse_key(s: str) -> Key:
    a, b = s.split("|")
    return _parse_vkey(a), _parse_vkey(b)


def _leq(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


@dataclass
class KaLuTable:
    ctx: PosetContext
    target: Vector
    order: list[Vector]
    cells: dict[Key, Cell] = field(default_factory=dict)

    def cell(self, tau: Sequence[int], sigma: Sequence[int]) -> Cell:
        return self.cells[(tuple(tau), tuple(sigma))]

    def b(self, tau, sigma) -> IntPoly:
        return self.cell(tau, sigma).b

    def g(self, tau, sigma) -> IntPoly | None:
        return self.cell(tau, sigma).g

    @property
    def result(self) -> IntPoly:
        """b for the (base, target) pair the table was built for."""
        return self.b(self.ctx.p, self.target)

    def admissible_cells(self) -> Iterable[tuple[Key, Cell]]:
        for key, c in self.cells.items():
            if c.alias is None and key[0] != key[1]:
                yield key, c

    def to_json(self) -> dict:
        cells = {}
        for key, c in self.cells.items():
            cells[_key_str(key)] = {
                "a": c.a.to_json(),
                "r": c.r.to_json() if c.r is not None else None,
                "g": c.g.to_json() if c.g is not None else None,
                "b": c.b.to_json(),
                "m": c.m,
                "alias": _key_str(c.alias) if c.alias is not None else None,
            }
        base = self.ctx.base
        return {
            "datum": self.ctx.datum.to_json(),
            "base": {"positions": list(base.positions), "p_bar": list(base.p_bar)},
            "target": list(self.target),
            "order": [list(v) for v in self.order],
            "cells": cells,
        }

    @classmethod
    def from_json(cls, data: dict) -> KaLuTable:
        datum = SchubertDatum.from_json(data["datum"])
        pos = data["base"]["positions"]
        p_full = [0] * datum.omega
        for a, x in zip(pos, data["base"]["p_bar"]):
            p_full[a] = x
        ctx = PosetContext.at(datum, p_full)
        assert list(ctx.base.positions) == pos, "cached base does not match datum"
        cells: dict[Key, Cell] = {}
        # dumps list cells in build order, so alias targets always come first
        for s, c in data["cells"].items():
            if c["alias"] is None:
                cells[_parse_key(s)] = Cell(
                    a=IntPoly.from_json(c["a"]), b=IntPoly.from_json(c["b"]), m=c["m"],
                    r=IntPoly.from_json(c["r"]), g=IntPoly.from_json(c["g"]))
            else:
                tgt = _parse_key(c["alias"])
                t = cells[tgt]
                cells[_parse_key(s)] = Cell(a=t.a, b=t.b, m=c["m"], alias=tgt)
        return cls(ctx, tuple(data["target"]), [tuple(v) for v in data["order"]], cells)


def _check_cell(key: Key, c: Cell, fiber_dim: int) -> None:
    b, g, m = c.b, c.g, c.m
    problems = []
    if b.coeff(0) != 1:
        problems.append(f"b has constant term {b.coeff(0)}")
    if not b.has_nonnegative_coeffs():
        problems.append("b has a negative coefficient")
    if not (b.has_even_exponents() and b.has_nonnegative_exponents()):
        problems.append("b has odd or negative exponents")
    if b.degree >= m:
        problems.append(f"deg b = {b.degree} >= m = {m}")
    if not g.has_nonnegative_coeffs():
        problems.append("g has a negative coefficient")
    if not g.has_even_exponents():
        problems.append("g has odd exponents")
    if not g.is_palindromic(m):
        problems.append(f"g is not palindromic about {m}")
    if g and (g.low_degree < 2 * (m - fiber_dim) or g.degree > 2 * fiber_dim):
        problems.append(f"g support outside [{2 * (m - fiber_dim)}, {2 * fiber_dim}]")
    if problems:
        raise KaLuInvariantError(
            f"cell {key}: " + "; ".join(problems) + f" (b = {b}, g = {g})")


def build_table(datum: SchubertDatum, p: Sequence[int] | None = None,
                q: Sequence[int] | None = None, *, check_cells: bool = True,
                rng: random.Random | None = None) -> KaLuTable:
    """
    Run the recursion from Delta_p down to Delta_q (both over the datum's
    flag). Without q, run to the smallest admissible variety, which fills
    every cell of the poset. `rng` shuffles the order inside each distance
    class; the results must not depend on it.
    """
    check(datum)
    ctx = PosetContext.at(datum, p)
    target = ctx.top if q is None else adapt(ctx, q)
    order = interval(ctx, target)
    sub = ctx.sub

    dist = {v: sum(v) for v in order}
    areas = {v: area(ctx.lam(v)) for v in order}
    ess = {v: frozenset(essential_positions(ctx, v)) for v in order}
    sub_ctx = {v: PosetContext.at(sub, v) for v in order}

    cells: dict[Key, Cell] = {}
    for v in order:
        cells[(v, v)] = Cell(a=ONE, b=ONE, m=0, r=ONE, g=ONE)

    pairs: dict[int, list[Key]] = {}
    above: dict[Vector, list[Vector]] = {v: [] for v in order}
    for tau in order:
        for sigma in order:
            if sigma != tau and _leq(tau, sigma):
                pairs.setdefault(dist[sigma] - dist[tau], []).append((tau, sigma))
                if ess[sigma] <= ess[tau]:
                    above[tau].append(sigma)

    for mu in sorted(pairs):
        batch = sorted(pairs[mu])
        if rng is not None:
            rng.shuffle(batch)
        for tau, sigma in batch:
            m = areas[sigma] - areas[tau]
            if ess[sigma] <= ess[tau]:
                tctx = sub_ctx[tau]
                sig_t = tuple(sigma[a] for a in tctx.base.positions)
                a = a_poly(tctx, sig_t)
                r = a
                for eta in above[tau]:
                    if eta != sigma and _leq(eta, sigma):
                        g_te = cells[(tau, eta)].g
                        if g_te:
                            r = r - g_te * cells[(eta, sigma)].b
                g = u_tilde(r, m)
                cell = Cell(a=a, b=r - g, m=m, r=r, g=g)
                if check_cells:
                    _check_cell((tau, sigma), cell, dim_f(tctx, sig_t))
            else:
                tgt = (tau, adapt_within(ctx, tau, sigma))
                t = cells[tgt]
                assert t.alias is None, f"alias chain at {tgt}"
                cell = Cell(a=t.a, b=t.b, m=m, alias=tgt)
            cells[(tau, sigma)] = cell
    log.debug("filled %d cells over %d varieties", len(cells), len(order))
    return KaLuTable(ctx, target, order, cells)


def kalu(datum: SchubertDatum, p: Sequence[int], q: Sequence[int],
         **kw) -> tuple[IntPoly, KaLuTable]:
    """b_pq for p <= q over the datum's flag, with the filled table."""
    table = build_table(datum, p, q, **kw)
    return table.result, table


class TableCache:
    """One JSON table dump per datum, holding the full run from p = 0."""

    def __init__(self, directory: str | os.PathLike):
        self.dir = Path(directory)

    @classmethod
    def from_env(cls, directory: str | None = None) -> TableCache | None:
        directory = directory or os.environ.get(CACHE_ENV)
        return cls(directory) if directory else None

    def path(self, datum: SchubertDatum) -> Path:
        return self.dir / f"{datum.key()}.json"

    def load(self, datum: SchubertDatum) -> KaLuTable | None:
        path = self.path(datum)
        if not path.exists():
            return None
        with open(path) as f:
            return KaLuTable.from_json(json.load(f))

    def store(self, table: KaLuTable) -> None:
        self.dir.mkdir(parents=True, exist_ok=True)
        path = self.path(table.ctx.datum)
        tmp = path.with_suffix(".tmp")
        with open(tmp, "w") as f:
            json.dump(table.to_json(), f)
        tmp.replace(path)


def full_table(datum: SchubertDatum, cache: TableCache | None = None) -> KaLuTable:
    if cache is not None:
        table = cache.load(datum)
        if table is not None:
            return table
    table = build_table(datum)
    if cache is not None:
        cache.store(table)
    return table


# --- decomposition reports ---

@dataclass
class DecompositionEntry:
    q: Vector
    g: IntPoly
    # (shift, count): IC of Delta_q shifted by `shift` appears `count` times
    multiplicities: list[tuple[int, int]]

    def to_json(self) -> dict:
        return {"q": list(self.q), "g": self.g.to_json(),
                "multiplicities": [list(x) for x in self.multiplicities]}


@dataclass
class DecompositionReport:
    datum: SchubertDatum
    entries: list[DecompositionEntry]

    def to_json(self) -> dict:
        return {"datum": self.datum.to_json(),
                "entries": [e.to_json() for e in self.entries]}


def decompose(datum: SchubertDatum, table: KaLuTable | None = None) -> DecompositionReport:
    """Supports of the pushforward under pi_0 with their multiplicity polynomials."""
    table = table or full_table(datum)
    ctx = table.ctx
    base = ctx.p
    dim_s = dim_variety(datum, datum.zero)
    entries = []
    for q in table.order:
        g = table.g(base, q)
        if not g:
            continue
        d = codim_in_context(ctx, q) - dim_f(ctx, q)
        f = shift(g, -2 * d)
        assert f.has_nonnegative_exponents(), f"f_0q has negative exponents at {q}"
        mult = [(dim_s + e, c) for e, c in f.items()]
        entries.append(DecompositionEntry(to_datum_coords(ctx, q), g, mult))
    return DecompositionReport(datum, entries)


@dataclass
class SmallnessReport:
    pi_small: bool
    xi_small: bool
    # 1-based indices alpha (into the base's essential conditions) where
    # each inequality fails
    pi_failing: list[int]
    xi_failing: list[int]

    def to_json(self) -> dict:
        return {"pi_small": self.pi_small, "xi_small": self.xi_small,
                "pi_failing": self.pi_failing, "xi_failing": self.xi_failing}


def smallness(datum: SchubertDatum, p: Sequence[int] | None = None) -> SmallnessReport:
    """
    Compare each vertical step iota_a - iota_{a-1} of the diagram of Delta_p
    with the horizontal step lambda(iota_a) - lambda(iota_{a+1}):
    pi_p is small iff vertical <= horizontal everywhere, xi_p iff >=.
    A condition already at i = k cannot be strengthened and is skipped.
    """
    check(datum)
    ctx = PosetContext.at(datum, p)
    iota = ctx.base.incidence
    lam = ctx.lam(ctx.p)
    rows = [lam[r - 1] for r in iota] + [0]
    pi_bad, xi_bad = [], []
    prev = 0
    for a in range(ctx.nu):
        unit = tuple(x + (b == a) for b, x in enumerate(ctx.p))
        vert = iota[a] - prev
        horiz = rows[a] - rows[a + 1]
        prev = iota[a]
        if not is_admissible(ctx, unit):
            continue
        if vert > horiz:
            pi_bad.append(a + 1)
        if vert < horiz:
            xi_bad.append(a + 1)
    return SmallnessReport(not pi_bad, not xi_bad, pi_bad, xi_bad)


@dataclass
class ScanEntry:
    q: Vector
    m: int
    dim_f: int
    relevant: bool
    g: IntPoly
    silent: bool

    def to_json(self) -> dict:
        return {"q": list(self.q), "m": self.m, "dim_f": self.dim_f,
                "relevant": self.relevant, "g": self.g.to_json(), "silent": self.silent}


def scan_relevant(datum: SchubertDatum, table: KaLuTable | None = None) -> list[ScanEntry]:
    """Every proper S-variety with its relevance and whether it is silent (g = 0)."""
    table = table or full_table(datum)
    ctx = table.ctx
    out = []
    for q in table.order:
        if q == ctx.p:
            continue
        m = codim_in_context(ctx, q)
        df = dim_f(ctx, q)
        relevant = m <= 2 * df
        g = table.g(ctx.p, q)
        out.append(ScanEntry(to_datum_coords(ctx, q), m, df, relevant, g,
                             relevant and not g))
    return out


# --- identity checks ---

VERIFY_MODES = ("pi-oracle", "xi-oracle", "reconstruction", "zelevinsky")


@dataclass
class VerifyReport:
    mode: str
    checked: int
    failures: list[str]

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"mode": self.mode, "passed": self.passed, "checked": self.checked,
                "failures": self.failures}


def verify_identities(datum: SchubertDatum, mode: str,
                      table: KaLuTable | None = None) -> VerifyReport:
    """
    pi-oracle / xi-oracle: when the resolution is small, b_0q must equal the
    fiber polynomial. reconstruction: re-expand every admissible cell from
    scratch. zelevinsky: codimension = dim F + dim G + B(eps) on all pairs.
    """
    from .fibers import b_form, zelevinsky_codim

    if mode not in VERIFY_MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {VERIFY_MODES}")
    sm = smallness(datum)
    if mode == "pi-oracle" and not sm.pi_small:
        raise ValueError("pi-oracle needs pi_0 small")
    if mode == "xi-oracle" and not sm.xi_small:
        raise ValueError("xi-oracle needs xi_0 small")

    table = table or full_table(datum)
    ctx = table.ctx
    failures: list[str] = []
    checked = 0
    if mode in ("pi-oracle", "xi-oracle"):
        oracle = a_poly if mode == "pi-oracle" else g_fiber_poly
        for q in table.order:
            checked += 1
            want = oracle(ctx, q)
            got = table.b(ctx.p, q)
            if got != want:
                failures.append(f"q={q}: b = {got}, fiber polynomial = {want}")
    elif mode == "reconstruction":
        for (tau, sigma), c in table.admissible_cells():
            checked += 1
            tctx = PosetContext.at(ctx.sub, tau)
            a = a_poly(tctx, tuple(sigma[x] for x in tctx.base.positions))
            total = c.b + c.g
            for eta in table.order:
                if (eta != tau and eta != sigma and _leq(tau, eta) and _leq(eta, sigma)
                        and adapt_within(ctx, tau, eta) == eta):
                    total = total + table.g(tau, eta) * table.b(eta, sigma)
            if total != a:
                failures.append(f"({tau}, {sigma}): a = {a}, expansion = {total}")
    else:
        for tau in table.order:
            tctx = PosetContext.at(ctx.sub, tau)
            for sigma in table.order:
                if not _leq(tau, sigma) or adapt_within(ctx, tau, sigma) != sigma:
                    continue
                checked += 1
                st = tuple(sigma[x] for x in tctx.base.positions)
                eps = tuple(x - y for x, y in zip(st, tctx.p))
                m = codim_in_context(tctx, st)
                rhs = dim_f(tctx, st) + dim_g_safe(tctx, st) + (b_form(eps) if eps else 0)
                if m != rhs or m != zelevinsky_codim(tctx, st):
                    failures.append(f"({tau}, {sigma}): m = {m}, dim F + dim G + B = {rhs}")
    return VerifyReport(mode, checked, failures)


def dim_g_safe(ctx: PosetContext, q: Sequence[int]) -> int:
    from .fibers import dim_g
    return dim_g(ctx, q) if ctx.nu else 0


def lookup_b(table: KaLuTable, p: Sequence[int], q: Sequence[int]) -> IntPoly | None:
    """
    b_pq read from an existing table, with p and q over the datum's flag.
    Returns None when either variety is not presented exactly in the table.
    """
    ctx = table.ctx
    keys = []
    for v in (p, q):
        lam = lambda_of(ctx.datum, v)
        inc = represent_on_flag(lam, ctx.k, ctx.l, ctx.base.J_bar)
        w = tuple(x - i for x, i in zip(inc, ctx.base.I_bar))
        if not is_admissible(ctx, w) or ctx.lam(w) != lam:
            return None
        keys.append(w)
    tau, sigma = keys
    if not _leq(tau, sigma):
        raise ValueError(f"{tuple(q)} does not name a subvariety of {tuple(p)}")
    c = table.cells.get((tau, sigma))
    return c.b if c is not None else None
