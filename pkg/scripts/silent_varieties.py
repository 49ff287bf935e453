"""
Relevant varieties with vanishing multiplicity polynomial for the three
reference data of increasing length.

    python3 scripts/silent_varieties.py [--json] [--cache-dir DIR]
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import dataclass, field

from kalu.engine import TableCache, full_table, scan_relevant
from kalu.schubert import SchubertDatum


@dataclass
class SilentConfig:
    data: list[SchubertDatum] = field(default_factory=lambda: [
        SchubertDatum(5, 11, (3, 4), (6, 8)),
        SchubertDatum(6, 13, (3, 4, 5), (7, 9, 11)),
        SchubertDatum(7, 16, (3, 4, 5, 6), (8, 10, 12, 14)),
    ])
    cache_dir: str | None = None
    as_json: bool = False


def run(cfg: SilentConfig) -> list[dict]:
    cache = TableCache.from_env(cfg.cache_dir)
    rows = []
    for d in cfg.data:
        t0 = time.perf_counter()
        table = full_table(d, cache)
        entries = scan_relevant(d, table)
        rows.append({
            "datum": d.to_json(),
            "omega": d.omega,
            "varieties": len(table.order),
            "relevant": sum(e.relevant for e in entries),
            "silent": [list(e.q) for e in entries if e.silent],
            "seconds": round(time.perf_counter() - t0, 3),
        })
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.strip().splitlines()[0])
    ap.add_argument("--json", action="store_true")
    ap.add_argument("--cache-dir")
    args = ap.parse_args()
    rows = run(SilentConfig(cache_dir=args.cache_dir, as_json=args.json))
    if args.json:
        print(json.dumps(rows, indent=1))
        return
    for r in rows:
        d = r["datum"]
        print(f"omega={r['omega']}  k={d['k']} l={d['l']} I={d['I']} J={d['J']}  "
              f"({r['varieties']} varieties, {r['relevant']} relevant, {r['seconds']}s)")
        for q in r["silent"]:
            print("    [" + ", ".join(map(str, q)) + "]")


if __name__ == "__main__":
    main()
