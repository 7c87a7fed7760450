"""Command-line frontend.

Subcommands:

* ``search``   — report all positions where the pattern ends in an EDS file;
* ``generate`` — write triangle-detection or matrix-product test instances
  together with a JSON ground-truth sidecar;
* ``verify``   — re-solve a generated instance with both the fast engine and
  the brute-force oracle and compare against the sidecar;
* ``bench``    — CSV timing sweep across instance sizes and algorithms.

Exit codes: 0 success (search: at least one match), 1 search found no
match, 2 usage/parse/runtime error, 3 verification disagreement.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
import time
from pathlib import Path

from .ap_engine import APInstance, solve_ap
from .boolean_linalg import BoolMatrix
from .eds_core import (
    EDSParseError,
    EDString,
    Segment,
    iter_parse_eds,
    parse_eds,
    parse_pattern_text,
    serialize_eds,
    serialize_string,
)
from .edsm_engine import EDSMEngine
from .oracles import BudgetExceededError, brute_ap, brute_edsm, brute_triangle
from .reductions import TDInstance, bmm_to_ap, reconstruct_bmm, td_to_edsm

__all__ = ["main"]

# Fixed 6x6 matrix-product demo instance (--paper-example), whose
# per-block vectors appear verbatim in the test suite.
_DEMO_A = [
    [0, 1, 0, 0, 1, 0],
    [1, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 0, 1],
    [1, 0, 0, 0, 1, 0],
    [0, 0, 0, 1, 0, 0],
    [0, 1, 0, 0, 0, 0],
]
_DEMO_B = [
    [0, 0, 0, 0, 0, 1],
    [1, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 1, 0],
    [0, 1, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0],
    [1, 0, 0, 0, 1, 0],
]


def _path(prefix: str, ext: str) -> Path:
    return Path(str(prefix) + ext)


def _read_pattern(arg: str):
    if arg.startswith("@"):
        text = Path(arg[1:]).read_text(encoding="utf-8")
        if text.endswith("\n"):
            text = text[:-1]
    else:
        text = arg
    return parse_pattern_text(text)


def _random_matrix(rng: random.Random, n: int, density: float) -> BoolMatrix:
    return BoolMatrix.from_rows(
        [[1 if rng.random() < density else 0 for _ in range(n)] for _ in range(n)]
    )


def cmd_search(args: argparse.Namespace) -> int:
    try:
        pattern = _read_pattern(args.pattern)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        with open(args.text, "r", encoding="utf-8") as fh:
            if args.algo == "naive-oracle":
                text = EDString(tuple(iter_parse_eds(fh)))
                positions = tuple(brute_edsm(pattern, text, window_cap=text.n))
                n, total = text.n, text.N
            else:
                engine = EDSMEngine(pattern, ap_mode="fast")
                report = engine.search(iter_parse_eds(fh))
                positions, n, total = report.positions, report.n, report.N
    except EDSParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError, BudgetExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(
            json.dumps(
                {
                    "pattern_length": pattern.m,
                    "segments": n,
                    "size": total,
                    "matches": list(positions),
                },
                sort_keys=True,
            )
        )
    else:
        for pos in positions:
            print(pos)
    return 0 if positions else 1


def _write_td(args: argparse.Namespace) -> int:
    if args.n is None:
        print("error: --n is required for td", file=sys.stderr)
        return 2
    rng = random.Random(args.seed)
    n, s = args.n, args.s
    ra, rb, rc = (
        _random_matrix(rng, n, args.density).to_lists() for _ in range(3)
    )
    if args.plant:
        i, j, k = (rng.randrange(n) + 1 for _ in range(3))
        ra[i - 1][j - 1] = rb[j - 1][k - 1] = rc[k - 1][i - 1] = 1
    a, b, c = (BoolMatrix.from_rows(r) for r in (ra, rb, rc))
    try:
        inst = TDInstance(a, b, c, s)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    pattern, text = td_to_edsm(inst)
    _path(args.out, ".pattern.txt").write_text(
        serialize_string(pattern.letters) + "\n", encoding="utf-8"
    )
    _path(args.out, ".eds").write_text(serialize_eds(text) + "\n", encoding="utf-8")
    sidecar = {
        "kind": "td",
        "n": n,
        "s": s,
        "seed": args.seed,
        "a": a.to_lists(),
        "b": b.to_lists(),
        "c": c.to_lists(),
        "triangle": brute_triangle(a, b, c),
    }
    _path(args.out, ".json").write_text(
        json.dumps(sidecar, sort_keys=True, indent=1) + "\n", encoding="utf-8"
    )
    print(f"wrote {_path(args.out, '.pattern.txt')}, {_path(args.out, '.eds')}, "
          f"{_path(args.out, '.json')}")
    return 0


def _write_bmm(args: argparse.Namespace) -> int:
    if args.paper_example:
        a, b = BoolMatrix.from_rows(_DEMO_A), BoolMatrix.from_rows(_DEMO_B)
        n, l = 6, 3
        if (args.n, args.l) not in ((None, None), (6, 3)):
            print("error: the demo instance is fixed at --n 6 --l 3", file=sys.stderr)
            return 2
    else:
        if args.n is None or args.l is None:
            print("error: --n and --l are required without --paper-example",
                  file=sys.stderr)
            return 2
        n, l = args.n, args.l
        rng = random.Random(args.seed)
        a = _random_matrix(rng, n, args.density)
        b = _random_matrix(rng, n, args.density)
    try:
        blocks = bmm_to_ap(a, b, l)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    expected = [
        [
            1 if any(a.get(i, k) and b.get(k, j) for k in range(1, n + 1)) else 0
            for j in range(1, n + 1)
        ]
        for i in range(1, n + 1)
    ]
    instance = {
        "kind": "bmm",
        "n": n,
        "l": l,
        "blocks": [
            {
                "k": blk.k,
                "j": blk.j,
                "pattern": serialize_string(blk.pattern.letters),
                "u": blk.u.to01(),
                "strings": [serialize_string(t) for t in blk.strings],
            }
            for blk in blocks
        ],
    }
    _path(args.out, ".ap.json").write_text(
        json.dumps(instance, sort_keys=True, indent=1) + "\n", encoding="utf-8"
    )
    sidecar = {
        "kind": "bmm",
        "n": n,
        "l": l,
        "seed": args.seed,
        "a": a.to_lists(),
        "b": b.to_lists(),
        "expected_c": expected,
    }
    _path(args.out, ".json").write_text(
        json.dumps(sidecar, sort_keys=True, indent=1) + "\n", encoding="utf-8"
    )
    print(f"wrote {_path(args.out, '.ap.json')}, {_path(args.out, '.json')}")
    return 0


def cmd_generate(args: argparse.Namespace) -> int:
    if args.flavor == "td":
        return _write_td(args)
    return _write_bmm(args)


def _verify_td(out: str, sidecar: dict) -> int:
    pattern = parse_pattern_text(
        _path(out, ".pattern.txt").read_text(encoding="utf-8").rstrip("\n")
    )
    text = parse_eds(_path(out, ".eds").read_text(encoding="utf-8"))
    a, b, c = (BoolMatrix.from_rows(sidecar[key]) for key in ("a", "b", "c"))
    want = bool(sidecar["triangle"])
    if brute_triangle(a, b, c) != want:
        print("disagreement: sidecar triangle flag does not match its matrices",
              file=sys.stderr)
        return 3
    engine = EDSMEngine(pattern, ap_mode="fast")
    fast = bool(engine.search(text.segments).positions)
    oracle = bool(brute_edsm(pattern, text, window_cap=text.n))
    for name, got in (("fast engine", fast), ("oracle", oracle)):
        if got != want:
            print(
                f"disagreement: {name} says occurrence={got}, sidecar says {want} "
                f"(n={sidecar['n']}, s={sidecar['s']}, seed={sidecar.get('seed')})",
                file=sys.stderr,
            )
            return 3
    print("ok: fast engine, oracle and sidecar agree")
    return 0


def _verify_bmm(out: str, sidecar: dict) -> int:
    instance = json.loads(_path(out, ".ap.json").read_text(encoding="utf-8"))
    a = BoolMatrix.from_rows(sidecar["a"])
    b = BoolMatrix.from_rows(sidecar["b"])
    expected = sidecar["expected_c"]
    blocks = bmm_to_ap(a, b, int(sidecar["l"]))
    stored = {(blk["k"], blk["j"]): blk for blk in instance["blocks"]}
    for blk in blocks:
        rec = stored.get((blk.k, blk.j))
        if rec is None or rec["u"] != blk.u.to01() or [
            serialize_string(t) for t in blk.strings
        ] != rec["strings"]:
            print(f"disagreement: stored block ({blk.k},{blk.j}) differs from "
                  "its regeneration", file=sys.stderr)
            return 3
        fast = solve_ap(APInstance(blk.pattern, blk.u, blk.strings))
        slow = brute_ap(blk.pattern, blk.u, blk.strings)
        if fast != slow:
            print(f"disagreement: block ({blk.k},{blk.j}) fast={fast.to01()} "
                  f"oracle={slow.to01()}", file=sys.stderr)
            return 3
        blk.v = fast
    got = reconstruct_bmm(blocks).to_lists()
    if got != expected:
        print(f"disagreement: reconstructed product {got} != sidecar {expected}",
              file=sys.stderr)
        return 3
    print("ok: fast solver, oracle and sidecar agree on all blocks")
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    out = args.instance
    try:
        sidecar = json.loads(_path(out, ".json").read_text(encoding="utf-8"))
        kind = sidecar["kind"]
        if kind == "td":
            return _verify_td(out, sidecar)
        if kind == "bmm":
            return _verify_bmm(out, sidecar)
        print(f"disagreement: unknown instance kind {kind!r}", file=sys.stderr)
        return 3
    except (OSError, ValueError, KeyError, TypeError, EDSParseError) as exc:
        print(f"disagreement: corrupt instance or sidecar ({exc})", file=sys.stderr)
        return 3
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _random_eds(rng: random.Random, target: int) -> tuple[str, EDString]:
    """A random pattern/text pair of roughly the requested total size."""
    pattern = "".join(rng.choice("ab") for _ in range(32))
    segments = []
    total = 0
    while total < target:
        alts = set()
        for _ in range(rng.randint(1, 3)):
            length = rng.randint(1, 24)
            alts.add("".join(rng.choice("ab") for _ in range(length)))
        if rng.random() < 0.2:
            alts.add("")
        seg = Segment(frozenset(alts))
        segments.append(seg)
        total += seg.size
    return pattern, EDString(tuple(segments))


def _bench_edsm(args: argparse.Namespace, writer) -> None:
    for size in args.sizes:
        rng = random.Random(args.seed * 1_000_003 + size)
        pattern, text = _random_eds(rng, size)
        for algo in args.algos:
            if algo == "naive-oracle":
                start = time.perf_counter()
                try:
                    brute_edsm(pattern, text, window_cap=text.n)
                except BudgetExceededError:
                    writer.writerow([len(pattern), text.n, text.N, algo, "skipped"])
                    continue
                elapsed = time.perf_counter() - start
            else:
                engine = EDSMEngine(pattern, ap_mode="fast")
                start = time.perf_counter()
                engine.search(text.segments)
                elapsed = time.perf_counter() - start
            writer.writerow([len(pattern), text.n, text.N, algo, f"{elapsed:.6f}"])


def _random_ap(rng: random.Random, m: int, target: int) -> APInstance:
    from .eds_core import BitVector, Pattern

    letters = "".join(rng.choice("ab") for _ in range(m))
    u = BitVector(m, rng.getrandbits(m) | 1)
    strings = set()
    total = 0
    while total < target:
        length = rng.randint(64, 128)
        start = rng.randrange(m - length) if rng.random() < 0.5 and length < m else None
        if start is not None:
            s = letters[start : start + length]
        else:
            s = "".join(rng.choice("ab") for _ in range(length))
        if s not in strings:
            strings.add(s)
            total += len(s)
    return APInstance(Pattern(letters), u, tuple(sorted(strings)))


def _bench_ap(args: argparse.Namespace, writer) -> None:
    for size in args.sizes:
        rng = random.Random(args.seed * 1_000_003 + size)
        inst = _random_ap(rng, args.m, size)
        n_size = sum(len(s) for s in inst.strings)
        for algo in args.algos:
            start = time.perf_counter()
            try:
                if algo == "naive-oracle":
                    brute_ap(inst.pattern, inst.u, inst.strings)
                else:
                    solve_ap(inst)
            except BudgetExceededError:
                writer.writerow([inst.pattern.m, 1, n_size, algo, "skipped"])
                continue
            elapsed = time.perf_counter() - start
            writer.writerow([inst.pattern.m, 1, n_size, algo, f"{elapsed:.6f}"])


def cmd_bench(args: argparse.Namespace) -> int:
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        writer = csv.writer(out)
        writer.writerow(["m", "n", "N", "algo", "seconds"])
        if args.mode == "edsm":
            _bench_edsm(args, writer)
        else:
            _bench_ap(args, writer)
    finally:
        if args.out:
            out.close()
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="edsm", description="Elastic-degenerate string matching toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_search = sub.add_parser("search", help="find pattern occurrence ends in an EDS file")
    p_search.add_argument("-p", "--pattern", required=True,
                          help="pattern text, or @file to read it from a file")
    p_search.add_argument("-t", "--text", required=True, help="EDS file")
    p_search.add_argument("--algo", choices=["auto", "naive-oracle", "ap-fast"],
                          default="auto")
    p_search.add_argument("--json", action="store_true", help="JSON report")
    p_search.set_defaults(func=cmd_search)

    p_gen = sub.add_parser("generate", help="write a test instance plus ground truth")
    p_gen.add_argument("flavor", choices=["td", "bmm"])
    p_gen.add_argument("--n", type=int, default=None, help="matrix size")
    p_gen.add_argument("--s", type=int, default=2, help="block parameter (td)")
    p_gen.add_argument("--l", type=int, default=None, help="block size (bmm)")
    p_gen.add_argument("--density", type=float, default=0.2)
    p_gen.add_argument("--plant", action="store_true",
                       help="plant a triangle (td only)")
    p_gen.add_argument("--paper-example", action="store_true",
                       help="emit the fixed 6x6 demo product instance (bmm only)")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out", required=True, help="output path prefix")
    p_gen.set_defaults(func=cmd_generate)

    p_verify = sub.add_parser("verify", help="re-solve an instance and check the sidecar")
    p_verify.add_argument("--instance", required=True, help="path prefix used by generate")
    p_verify.set_defaults(func=cmd_verify)

    p_bench = sub.add_parser("bench", help="CSV timing sweep")
    p_bench.add_argument("--mode", choices=["edsm", "ap"], default="edsm")
    p_bench.add_argument("--sizes", type=lambda s: [int(x) for x in s.split(",")],
                         default=[1000, 2000, 4000], help="comma-separated sizes N")
    p_bench.add_argument("--algos", type=lambda s: s.split(","),
                         default=["ap-fast", "naive-oracle"])
    p_bench.add_argument("--m", type=int, default=1024, help="pattern length (ap mode)")
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--out", default=None, help="CSV output file (default stdout)")
    p_bench.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
