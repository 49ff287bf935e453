"""
Command-line front end for Kazhdan-Lusztig computations on Grassmannian
Schubert varieties.

    kalu kl --k 3 --l 8 --I 1,2 --J 4,6 --p 0,0 --q 1,0
    kalu scan-relevant --k 5 --l 11 --I 3,4 --J 6,8 --json
    kalu batch < jobs.jsonl

Exit codes: 0 success, 1 invalid input, 2 internal invariant failure,
64 malformed command line. `batch` reads JSON lines, one job per line, and
writes one JSON object per line in input order.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .engine import (
    VERIFY_MODES, KaLuInvariantError, TableCache, decompose, full_table, kalu,
    lookup_b, scan_relevant, smallness, verify_identities,
)
from .schubert import (
    InvalidDatum, SchubertDatum, check, check_offset, dim_variety, essentialize,
    lambda_of, render_ferrers,
)

COMMANDS = ("kl", "decompose", "smallness", "scan-relevant", "essential", "verify")

HELP = {
    "kl": "Kazhdan-Lusztig polynomial b_pq and correction g_pq of one pair",
    "decompose": "IC summands of the pushforward from the base variety",
    "smallness": "whether the two resolutions of the variety are small",
    "scan-relevant": "relevant subvarieties and which of them are silent",
    "essential": "essential form and Ferrers diagram of a variety",
    "verify": "check polynomial identities on every pair of the table",
}

EXIT_OK, EXIT_INVALID, EXIT_INTERNAL, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


@dataclass
class JobSpec:
    command: str
    datum: SchubertDatum
    p: tuple[int, ...] | None = None
    q: tuple[int, ...] | None = None
    mode: str | None = None
    output: str = "text"
    cache_dir: str | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.command == "kl" and (self.p is None or self.q is None):
            raise UsageError("kl needs both --p and --q")
        if self.command == "verify" and self.mode not in VERIFY_MODES:
            raise UsageError(f"verify needs --mode, one of {', '.join(VERIFY_MODES)}")
        if self.output not in ("text", "json"):
            raise UsageError(f"output must be text or json, not {self.output!r}")

    @classmethod
    def from_json(cls, obj: dict, cache_dir: str | None = None) -> JobSpec:
        if not isinstance(obj, dict):
            raise UsageError("job must be a JSON object")
        try:
            d = obj.get("datum", obj)
            datum = SchubertDatum(int(d["k"]), int(d["l"]), tuple(d["I"]), tuple(d["J"]))
        except (KeyError, TypeError, ValueError) as e:
            raise UsageError(f"bad datum: {e}") from None
        vec = lambda v: None if v is None else tuple(int(x) for x in v)
        return cls(obj.get("command", ""), datum, vec(obj.get("p")), vec(obj.get("q")),
                   obj.get("mode"), obj.get("output", "json"), cache_dir)


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, no whitespace, so re-emission is byte-stable."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _vec(v: Sequence[int]) -> str:
    return ",".join(map(str, v))


def _execute(job: JobSpec) -> tuple[dict, str]:
    """Dispatch a job; returns (json payload, text rendering)."""
    datum = job.datum
    check(datum)
    cache = TableCache.from_env(job.cache_dir)

    if job.command == "kl":
        check_offset(datum, job.p)
        check_offset(datum, job.q)
        b = None
        if cache is not None:
            b = lookup_b(full_table(datum, cache), job.p, job.q)
        if b is None:
            b, table = kalu(datum, job.p, job.q)
            g = table.g(table.ctx.p, table.target)
        else:
            g = None
        payload = {"b": b.to_json(), "p": list(job.p), "q": list(job.q)}
        text = f"b = {b}"
        if g is not None:
            payload["g"] = g.to_json()
            text += f"\ng = {g}"
        return payload, text

    if job.command == "essential":
        p = job.p if job.p is not None else datum.zero
        check_offset(datum, p)
        e = essentialize(datum, p)
        lam = lambda_of(datum, p)
        payload = {
            "positions": list(e.positions), "I_bar": list(e.I_bar),
            "J_bar": list(e.J_bar), "p_bar": list(e.p_bar),
            "full_grassmannian": e.is_full_grassmannian,
            "lambda": list(lam), "codim": sum(lam), "dim": dim_variety(datum, p),
        }
        text = "\n".join([
            f"positions: {_vec(e.positions) or '-'}  (0-based)",
            f"I_bar: {_vec(e.I_bar) or '-'}  J_bar: {_vec(e.J_bar) or '-'}  "
            f"p_bar: {_vec(e.p_bar) or '-'}",
            f"lambda = ({_vec(lam)})  codim = {sum(lam)}  dim = {payload['dim']}",
            render_ferrers(lam, (datum.k, datum.l)),
        ])
        return payload, text

    if job.command == "smallness":
        rep = smallness(datum, job.p)
        word = lambda ok: "small" if ok else "not small"
        text = f"pi: {word(rep.pi_small)}, xi: {word(rep.xi_small)}"
        if rep.pi_failing:
            text += f"\npi fails at alpha = {_vec(rep.pi_failing)}"
        if rep.xi_failing:
            text += f"\nxi fails at alpha = {_vec(rep.xi_failing)}"
        return rep.to_json(), text

    table = full_table(datum, cache)

    if job.command == "decompose":
        rep = decompose(datum, table)
        lines = []
        for e in rep.entries:
            mult = ", ".join(f"{n} x IC[{s}]" for s, n in e.multiplicities)
            lines.append(f"q = {_vec(e.q)}: g = {e.g}  ({mult})")
        return rep.to_json(), "\n".join(lines)

    if job.command == "scan-relevant":
        entries = scan_relevant(datum, table)
        silent = [e.q for e in entries if e.silent]
        payload = {"entries": [e.to_json() for e in entries],
                   "silent": [list(q) for q in silent]}
        lines = [f"q = {_vec(e.q)}: m = {e.m}, dim F = {e.dim_f}, g = {e.g}"
                 + ("  [silent]" if e.silent else "")
                 for e in entries if e.relevant]
        lines.append("silent: " + ("; ".join(_vec(q) for q in silent) or "none"))
        return payload, "\n".join(lines)

    rep = verify_identities(datum, job.mode, table)
    if not rep.passed:
        raise KaLuInvariantError(f"{job.mode} failed: " + "; ".join(rep.failures[:5]))
    return rep.to_json(), f"{job.mode}: pass ({rep.checked} checks)"


def run(job: JobSpec) -> tuple[int, str]:
    """Run one job; returns (exit code, rendered output)."""
    try:
        payload, text = _execute(job)
    except InvalidDatum as e:
        return EXIT_INVALID, _error(job, "invalid", str(e), e.violations)
    except (KaLuInvariantError, AssertionError, ArithmeticError) as e:
        return EXIT_INTERNAL, _error(job, "internal", str(e))
    except ValueError as e:
        return EXIT_INVALID, _error(job, "invalid", str(e))
    if job.output == "json":
        return EXIT_OK, dumps({"command": job.command, "result": payload})
    return EXIT_OK, text


def _error(job: JobSpec, kind: str, msg: str, details: list[str] | None = None) -> str:
    if job.output == "json":
        obj = {"command": job.command, "error": msg, "kind": kind}
        if details:
            obj["violations"] = details
        return dumps(obj)
    return f"error ({kind}): {msg}"


def _batch_line(args: tuple[int, str, str | None]) -> str:
    n, line, cache_dir = args
    try:
        job = JobSpec.from_json(json.loads(line), cache_dir)
        job.output = "json"
    except (UsageError, json.JSONDecodeError) as e:
        return dumps({"line": n, "error": str(e), "kind": "usage"})
    code, out = run(job)
    obj = json.loads(out)
    obj["line"] = n
    obj["exit"] = code
    return dumps(obj)


def batch(lines, cache_dir: str | None = None, jobs: int = 1):
    """Yield one JSON line per non-blank input line, in input order."""
    work = [(n, line, cache_dir) for n, line in enumerate(lines, 1) if line.strip()]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            yield from pool.map(_batch_line, work)
    else:
        yield from map(_batch_line, work)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _int_list(s: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in s.split(",")) if s.strip() else ()
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {s!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kalu", description=" ".join(__doc__.split("\n\n")[0].split()))
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sp = sub.add_parser(name, help=HELP[name])
        sp.add_argument("--k", type=int, required=True)
        sp.add_argument("--l", type=int, required=True)
        sp.add_argument("--I", type=_int_list, required=True)
        sp.add_argument("--J", type=_int_list, required=True)
        sp.add_argument("--p", type=_int_list)
        sp.add_argument("--q", type=_int_list)
        sp.add_argument("--mode", choices=VERIFY_MODES)
        sp.add_argument("--json", action="store_true", help="emit JSON")
        sp.add_argument("--cache-dir", help="table cache directory (overrides $KALU_CACHE_DIR)")
    bp = sub.add_parser("batch", help="run JSON-lines jobs from stdin or a file")
    bp.add_argument("input", nargs="?", help="input file (default: stdin)")
    bp.add_argument("--jobs", type=int, default=1)
    bp.add_argument("--cache-dir")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "batch":
        src = open(args.input) if args.input else sys.stdin
        try:
            for out in batch(src, args.cache_dir, args.jobs):
                print(out, flush=True)
        finally:
            if args.input:
                src.close()
        return EXIT_OK

    try:
        job = JobSpec(args.command, SchubertDatum(args.k, args.l, args.I, args.J),
                      args.p, args.q, args.mode, "json" if args.json else "text",
                      args.cache_dir)
    except UsageError as e:
        parser.error(str(e))
    code, out = run(job)
    print(out, file=sys.stdout if code == EXIT_OK else sys.stderr)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
