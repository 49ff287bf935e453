"""
Sweep the polynomial identities over every essential datum in a range.

For each datum: b against the fibre polynomial of whichever resolution is
small, the expansion a = b + g + sum g b on every admissible pair, and the
codimension identity m = dim F + dim G + B(eps) on every admissible pair.

    python3 scripts/identity_sweeps.py --max-omega 3 --max-l 14 --jobs 4
"""

from __future__ import annotations

import argparse
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from kalu.engine import build_table, smallness, verify_identities
from kalu.schubert import SchubertDatum, essential_data


@dataclass
class SweepConfig:
    max_omega: int = 3
    max_l: int = 14
    min_l: int = 2
    jobs: int = 1


@dataclass
class DatumResult:
    datum: SchubertDatum
    pi_small: bool
    xi_small: bool
    pairs: int
    failures: list[str]


def check_datum(d: SchubertDatum) -> DatumResult:
    sm = smallness(d)
    table = build_table(d)
    modes = ["reconstruction", "zelevinsky"]
    if sm.pi_small:
        modes.append("pi-oracle")
    if sm.xi_small:
        modes.append("xi-oracle")
    failures, pairs = [], 0
    for mode in modes:
        rep = verify_identities(d, mode, table)
        pairs += rep.checked
        failures += [f"{mode}: {f}" for f in rep.failures]
    return DatumResult(d, sm.pi_small, sm.xi_small, pairs, failures)


def sweep(cfg: SweepConfig):
    data = list(essential_data(cfg.max_omega, cfg.max_l, cfg.min_l))
    if cfg.jobs > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            yield from pool.map(check_datum, data, chunksize=16)
    else:
        yield from map(check_datum, data)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.strip().splitlines()[0])
    ap.add_argument("--max-omega", type=int, default=3)
    ap.add_argument("--max-l", type=int, default=14)
    ap.add_argument("--min-l", type=int, default=2)
    ap.add_argument("--jobs", type=int, default=1)
    cfg = SweepConfig(**{k: v for k, v in vars(ap.parse_args()).items()})

    t0 = time.perf_counter()
    n = npi = nxi = pairs = 0
    bad = []
    for r in sweep(cfg):
        n += 1
        npi += r.pi_small
        nxi += r.xi_small
        pairs += r.pairs
        if r.failures:
            bad.append(r)
            print(f"FAIL {r.datum.key()}: {r.failures[0]}")
    dt = time.perf_counter() - t0
    print(f"{n} essential data (omega <= {cfg.max_omega}, l <= {cfg.max_l}); "
          f"{npi} with small pi_0, {nxi} with small xi_0; {pairs} checks in {dt:.1f}s")
    print("all identities hold" if not bad else f"{len(bad)} data with failures")
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
