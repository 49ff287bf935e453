import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from kalu.engine import (
    Cell, KaLuInvariantError, KaLuTable, TableCache, _check_cell, build_table,
    decompose, full_table, kalu, lookup_b, scan_relevant, smallness,
    verify_identities,
)
from kalu.fibers import a_poly, dim_f, g_fiber_poly
from kalu.lattice import PosetContext, adapt_within, to_datum_coords
from kalu.polynomial import ONE, ZERO, IntPoly
from kalu.schubert import InvalidDatum, SchubertDatum, essential_data, lambda_of
from oracles import grassmannian_kl
from strategies import admissible_pair, essential_datum, table_of

SMALL = SchubertDatum(3, 8, (1, 2), (4, 6))
ROW2 = SchubertDatum(5, 11, (3, 4), (6, 8))
ROW3 = SchubertDatum(6, 13, (3, 4, 5), (7, 9, 11))


def silent(d):
    return {e.q for e in scan_relevant(d) if e.silent}


class TestKalu:
    def test_diagonal(self):
        b, table = kalu(SMALL, (1, 1), (1, 1))
        assert b == ONE
        c = table.cell((1, 1), (1, 1))
        assert c.a == c.g == c.b == ONE

    def test_first_step(self):
        b, table = kalu(SMALL, (0, 0), (1, 0))
        assert b == IntPoly({0: 1, 2: 1})
        assert table.g((0, 0), (1, 0)) == ZERO

    def test_silent_relevant_variety(self):
        b, table = kalu(ROW2, (0, 0), (2, 1))
        assert table.g((0, 0), (2, 1)) == ZERO
        codim = table.cell((0, 0), (2, 1)).m
        assert 0 < codim <= 2 * dim_f(table.ctx, (2, 1))

    def test_rejects_bad_inputs(self):
        with pytest.raises(InvalidDatum):
            kalu(SchubertDatum(2, 5, (3,), (4,)), (0,), (0,))
        with pytest.raises(ValueError):
            kalu(SchubertDatum(7, 20, (1, 3, 5), (8, 12, 17)), (1, 3, 1), (3, 1, 1))

    def test_non_essential_base(self):
        d = SchubertDatum(5, 15, (1, 2, 3, 4), (5, 7, 9, 11))
        b, table = kalu(d, (1, 2, 1, 1), (2, 3, 2, 1))
        assert table.ctx.base.positions == (1, 3)
        assert b.coeff(0) == 1


class TestOracle:
    """b against Kazhdan-Lusztig polynomials of the symmetric group."""

    @pytest.mark.parametrize("d", list(essential_data(3, 6)), ids=lambda d: d.key())
    def test_every_cell_small_ambient(self, d):
        t = build_table(d)
        for (tau, sigma), c in t.cells.items():
            want = grassmannian_kl(d.k, d.l, t.ctx.lam(tau), t.ctx.lam(sigma))
            assert dict(c.b.items()) == want, (tau, sigma)

    @pytest.mark.slow
    def test_every_cell_seven_dimensional_ambient(self):
        nontrivial = 0
        for d in essential_data(3, 7, min_l=7):
            t = build_table(d)
            for (tau, sigma), c in t.cells.items():
                want = grassmannian_kl(d.k, d.l, t.ctx.lam(tau), t.ctx.lam(sigma))
                assert dict(c.b.items()) == want, (d, tau, sigma)
                nontrivial += want != {0: 1}
        assert nontrivial > 0

    def test_non_essential_presentation(self):
        # the same variety with a redundant condition added on the flag
        d = SchubertDatum(3, 7, (1, 1, 2), (3, 4, 5))
        t = build_table(d)
        assert t.ctx.base.positions == (0, 2)
        for (tau, sigma), c in t.cells.items():
            want = grassmannian_kl(3, 7, t.ctx.lam(tau), t.ctx.lam(sigma))
            assert dict(c.b.items()) == want


class TestStructure:
    @given(admissible_pair())
    def test_cell_invariants(self, case):
        d, t, tau, sigma = case
        c = t.cell(tau, sigma)
        assert c.b.coeff(0) == 1
        assert c.b.has_even_exponents() and c.b.has_nonnegative_coeffs()
        assert tau == sigma or c.b.degree < c.m
        if c.alias is None:
            assert c.g.is_palindromic(c.m) and c.g.has_nonnegative_coeffs()
        else:
            target = t.cells[c.alias]
            assert c.b is target.b and c.a is target.a

    @given(admissible_pair())
    def test_intrinsic(self, case):
        d, t, tau, sigma = case
        b, fresh = kalu(d, tau, sigma)
        assert b == t.b(tau, sigma)

    @given(essential_datum, st.integers(0, 2 ** 32))
    @settings(max_examples=25)
    def test_order_independence(self, d, seed):
        shuffled = build_table(d, rng=random.Random(seed))
        base = table_of(d)
        assert shuffled.cells.keys() == base.cells.keys()
        for key, c in base.cells.items():
            o = shuffled.cells[key]
            assert (o.a, o.b, o.g, o.m, o.alias) == (c.a, c.b, c.g, c.m, c.alias)

    @given(essential_datum)
    def test_alias_targets_are_adapted_vectors(self, d):
        t = table_of(d)
        for (tau, sigma), c in t.cells.items():
            if c.alias is not None:
                assert c.alias == (tau, adapt_within(t.ctx, tau, sigma))
                assert c.alias[1] != sigma

    @given(essential_datum)
    def test_small_resolution_means_no_correction(self, d):
        sm = smallness(d)
        t = table_of(d)
        base = t.ctx.p
        for q in t.order:
            if sm.pi_small:
                assert q == base or not t.g(base, q)
                assert t.b(base, q) == a_poly(t.ctx, q)
            if sm.xi_small:
                assert t.b(base, q) == g_fiber_poly(t.ctx, q)

    def test_invariant_violation_is_reported(self):
        bad = Cell(a=ONE, b=IntPoly({0: 1, 4: 1}), m=2, r=ONE, g=ZERO)
        with pytest.raises(KaLuInvariantError, match="deg b"):
            _check_cell(((0,), (1,)), bad, 1)
        neg = Cell(a=ONE, b=IntPoly({0: 1, 2: -1}), m=3, r=ONE, g=IntPoly({2: 1}))
        with pytest.raises(KaLuInvariantError, match="negative"):
            _check_cell(((0,), (1,)), neg, 2)


class TestReports:
    def test_silent_sets_of_reference_data(self):
        assert silent(ROW2) == {(2, 1)}
        assert silent(ROW3) == {(1, 0, 1), (1, 2, 1), (3, 2, 1)}

    def test_scan_fields(self):
        entries = scan_relevant(ROW2)
        assert (0, 0) not in {e.q for e in entries}
        for e in entries:
            assert e.relevant == (e.m <= 2 * e.dim_f)
            assert not e.silent or (e.relevant and not e.g)

    def test_silent_set_does_not_depend_on_presentation(self):
        # an extra condition implied by the others
        d = SchubertDatum(5, 11, (3, 4, 4), (6, 8, 9))
        t = build_table(d)
        assert t.ctx.base.positions == (0, 1)
        lam = {lambda_of(d, e.q) for e in scan_relevant(d, t) if e.silent}
        assert lam == {lambda_of(ROW2, (2, 1))}

    def test_decompose(self):
        rep = decompose(ROW2)
        qs = [e.q for e in rep.entries]
        assert qs[0] == (0, 0) and rep.entries[0].g == ONE
        assert (2, 1) not in qs
        assert rep.entries[0].multiplicities == [(19, 1)]

    def test_decompose_small_resolution(self):
        rep = decompose(SMALL)
        assert [(e.q, e.g) for e in rep.entries] == [((0, 0), ONE)]

    @given(essential_datum)
    def test_decompose_lists_exactly_nonzero_g(self, d):
        t = table_of(d)
        rep = decompose(d, t)
        nz = [to_datum_coords(t.ctx, q) for q in t.order if t.g(t.ctx.p, q)]
        assert [e.q for e in rep.entries] == nz
        for e in rep.entries:
            assert sum(n for _, n in e.multiplicities) == e.g(1)

    def test_smallness_examples(self):
        cases = {
            (3, 9, (1, 2), (4, 6)): (True, False),
            (4, 10, (1, 3), (5, 8)): (False, True),
            (3, 8, (1, 2), (4, 6)): (True, True),
            (4, 10, (2, 3), (5, 7)): (False, False),
        }
        for args, want in cases.items():
            r = smallness(SchubertDatum(*args))
            assert (r.pi_small, r.xi_small) == want
        r = smallness(SchubertDatum(4, 10, (2, 3), (5, 7)))
        assert r.pi_failing == [1] and r.xi_failing == [2]

    def test_verify_modes(self):
        for mode in ("pi-oracle", "xi-oracle", "reconstruction", "zelevinsky"):
            rep = verify_identities(SMALL, mode)
            assert rep.passed and rep.checked > 0
        with pytest.raises(ValueError):
            verify_identities(SchubertDatum(4, 10, (2, 3), (5, 7)), "pi-oracle")
        with pytest.raises(ValueError):
            verify_identities(SMALL, "nonsense")

    def test_oracles_agree_when_both_small(self):
        t = build_table(SMALL)
        for q in t.order:
            assert a_poly(t.ctx, q) == g_fiber_poly(t.ctx, q) == t.b(t.ctx.p, q)

    def test_zelevinsky_on_worked_example(self):
        d = SchubertDatum(7, 20, (1, 3, 5), (8, 12, 17))
        assert verify_identities(d, "zelevinsky").passed


class TestPersistence:
    def test_json_round_trip(self):
        t = build_table(ROW3)
        data = json.loads(json.dumps(t.to_json()))
        back = KaLuTable.from_json(data)
        assert back.cells.keys() == t.cells.keys()
        for key, c in t.cells.items():
            o = back.cells[key]
            assert (o.a, o.b, o.g, o.m, o.alias) == (c.a, c.b, c.g, c.m, c.alias)
            if o.alias is not None:
                assert o.b is back.cells[o.alias].b
        assert json.dumps(back.to_json()) == json.dumps(t.to_json())

    def test_cell_keys_format(self):
        keys = build_table(ROW2).to_json()["cells"]
        assert "0,0|2,1" in keys
        assert set(keys["0,0|2,1"]) >= {"a", "r", "g", "b", "m"}

    def test_cache(self, tmp_path, monkeypatch):
        cache = TableCache(tmp_path)
        t = full_table(ROW2, cache)
        assert cache.path(ROW2).exists()
        again = full_table(ROW2, cache)
        assert again.to_json() == t.to_json()
        monkeypatch.setenv("KALU_CACHE_DIR", str(tmp_path / "env"))
        assert TableCache.from_env().dir == tmp_path / "env"
        assert TableCache.from_env(str(tmp_path / "flag")).dir == tmp_path / "flag"
        monkeypatch.delenv("KALU_CACHE_DIR")
        assert TableCache.from_env() is None

    def test_lookup_matches_fresh_run(self):
        t = full_table(ROW3)
        for p in t.order:
            for q in t.order:
                if all(a <= b for a, b in zip(p, q)):
                    assert lookup_b(t, p, q) == kalu(ROW3, p, q)[0]

    def test_lookup_declines_foreign_presentations(self):
        d = SchubertDatum(10, 22, (2, 4, 6), (11, 14, 17))
        t = build_table(d, (1, 2, 0))
        assert lookup_b(t, (1, 2, 0), (4, 3, 1)) is None
