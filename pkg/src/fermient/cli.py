"""Command-line interface: ``fermient {analyze,decompose,random,check}``.

Exit status is 0 when every emitted report passes.  A failed check or
eigensolver cross-check gives 1; input that cannot be read or validated
gives 2.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Sequence

from . import __version__
from .checks import CHECK_TOL, RECONSTRUCTION_TOL, Tolerances, build_report, run_checks
from .decomposition import RANK_TOL
from .errors import ConsistencyFailure, FermiError, OutOfRange, ParseError
from .linalg import make_rng
from .measures import checked_eta, eta
from .sampling import random_rank1_state, random_state, random_state_with_eta
from .state import NORMALIZATION_TOL
from .stateio import REPRESENTATIONS, StateFile, digest, dumps, loads_state, write_state_file

__all__ = ["main", "build_parser", "EXIT_OK", "EXIT_FAILED", "EXIT_INPUT"]

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2


def _alpha_list(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values or any(v < 2 for v in values):
        raise argparse.ArgumentTypeError("Renyi orders must be integers >= 2")
    return values


def _positive_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return v


def _add_tolerances(p: argparse.ArgumentParser) -> None:
    p.add_argument("--validation-tol", type=_positive_float, default=NORMALIZATION_TOL,
                   help="normalization tolerance for input states (default %(default)g)")
    p.add_argument("--reconstruction-tol", type=_positive_float, default=RECONSTRUCTION_TOL,
                   help="canonical-form residual bound (default %(default)g)")
    p.add_argument("--rank-tol", type=_positive_float, default=RANK_TOL,
                   help="r2 threshold for Slater rank 1 (default %(default)g)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fermient", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="entanglement report for one state file")
    p.add_argument("file", type=Path)
    p.add_argument("--alpha", type=_alpha_list, default=(2,), help="Renyi orders, e.g. 2,3")
    p.add_argument("--json", action="store_true", help="emit one JSON report")
    _add_tolerances(p)

    p = sub.add_parser("decompose", help="real canonical form of one state file")
    p.add_argument("file", type=Path)
    p.add_argument("--json", action="store_true")
    _add_tolerances(p)

    p = sub.add_parser("random", help="write seeded random state files")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--eta", type=float, help="fixed eta in [0, 1]")
    mode.add_argument("--rank1", action="store_true", help="separable states only")
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--representation", choices=REPRESENTATIONS, default="pluecker")

    p = sub.add_parser("check", help="run the invariant suite on a file or directory")
    p.add_argument("path", type=Path)
    p.add_argument("--tol", type=_positive_float, default=CHECK_TOL,
                   help="bound for the invariant checks (default %(default)g)")
    p.add_argument("--jobs", type=int, default=1, help="files processed concurrently")
    p.add_argument("--json", action="store_true")
    _add_tolerances(p)
    return parser


def _tolerances(args, check: float = CHECK_TOL) -> Tolerances:
    return Tolerances(args.validation_tol, args.reconstruction_tol, args.rank_tol, check)


def _load(path: Path, tol: float):
    try:
        data = path.read_bytes()
        sf = loads_state(data.decode("utf-8"))
    except (OSError, UnicodeDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return sf, sf.state(tol), digest(data)


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, float):
        return f"{v:.10g}"
    return str(v)


def _print_table(rows: list[tuple[str, object]], out) -> None:
    width = max(len(k) for k, _ in rows)
    for k, v in rows:
        print(f"{k:<{width}}  {_fmt(v)}", file=out)


def _print_checks(checks: list[dict], out) -> None:
    print(f"{'check':<18}{'status':<8}{'value':>14}{'tol':>10}", file=out)
    for c in checks:
        status = "pass" if c["passed"] else "FAIL"
        print(f"{c['name']:<18}{status:<8}{c['value']:>14.3e}{c['tol']:>10.1e}", file=out)


def _cmd_report(args, out, *, include_analysis: bool) -> int:
    tolerances = _tolerances(args)
    sf, s, dig = _load(args.file, tolerances.validation)
    alphas = args.alpha if include_analysis else (2,)
    doc = build_report(
        s,
        alphas=alphas,
        tolerances=tolerances,
        input_name=str(args.file),
        input_digest=dig,
        include_analysis=include_analysis,
        metadata=sf.metadata,
    )
    if args.json:
        out.write(dumps(doc))
    else:
        rows: list[tuple[str, object]] = [("input", str(args.file))]
        if include_analysis:
            a = doc["analysis"]
            rows += [
                ("eta", a["eta"]),
                ("lambda_plus", a["lambda_plus"]),
                ("lambda_minus", a["lambda_minus"]),
                ("von_neumann", a["von_neumann"]),
            ]
            rows += [(f"renyi_{k}", v) for k, v in a["renyi"].items()]
            rows += [
                ("geodesic", a["geodesic"]),
                ("slater_rank", a["slater_rank"]),
                ("on_quadric", a["on_quadric"]),
            ]
        cf = doc["canonical_form"]
        rows += [("r1", cf["r1"]), ("r2", cf["r2"]), ("residual", cf["residual"])]
        if not include_analysis:
            for i, row in enumerate(cf["V"]):
                cells = " ".join(f"{complex(*z):>22.12g}" for z in row)
                rows.append((f"V[{i}]", cells))
        _print_table(rows, out)
        _print_checks(doc["checks"], out)
        print("status  " + ("pass" if doc["passed"] else "FAIL"), file=out)
    return EXIT_OK if doc["passed"] else EXIT_FAILED


def _cmd_random(args, out) -> int:
    if args.count < 1:
        raise OutOfRange("--count must be at least 1")
    if args.eta is not None:
        if not 0.0 <= args.eta <= 1.0:
            raise OutOfRange(f"--eta must lie in [0, 1], got {args.eta!r}")
        target = checked_eta(args.eta)
        mode = "fixed-eta"
    else:
        mode = "rank1" if args.rank1 else "generic"
    rng = make_rng(args.seed)
    args.out.mkdir(parents=True, exist_ok=True)
    digits = max(4, len(str(args.count - 1)))
    for k in range(args.count):
        if mode == "fixed-eta":
            s = random_state_with_eta(target, rng)
            recorded = target
        else:
            s = random_rank1_state(rng) if mode == "rank1" else random_state(rng)
            recorded = eta(s)
        meta = {"mode": mode, "seed": args.seed, "index": k, "eta": recorded}
        write_state_file(args.out / f"state-{k:0{digits}d}.json",
                         StateFile.from_state(s, args.representation, meta))
    print(f"wrote {args.count} {mode} state(s) to {args.out}", file=out)
    return EXIT_OK


def _check_one(path: Path, tolerances: Tolerances) -> dict:
    try:
        sf, s, _ = _load(path, tolerances.validation)
        checks = [c.as_dict() for c in run_checks(s, tolerances, sf.metadata)]
    except (FermiError, OSError) as exc:
        return {"input": str(path), "passed": False, "error": f"{type(exc).__name__}: {exc}", "checks": []}
    passed = all(c["passed"] for c in checks)
    failed = [c["name"] for c in checks if not c["passed"]]
    return {"input": str(path), "passed": passed, "error": ", ".join(failed) if failed else None, "checks": checks}


def _cmd_check(args, out) -> int:
    if args.path.is_dir():
        paths = sorted(args.path.glob("*.json"))
    elif args.path.exists():
        paths = [args.path]
    else:
        print(f"error: {args.path} does not exist", file=sys.stderr)
        return EXIT_INPUT
    if not paths:
        print(f"error: no state files under {args.path}", file=sys.stderr)
        return EXIT_INPUT
    tolerances = _tolerances(args, args.tol)
    jobs = max(1, args.jobs)
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(lambda p: _check_one(p, tolerances), paths))
    n_pass = sum(r["passed"] for r in results)
    if args.json:
        out.write(dumps({
            "tool_version": __version__,
            "tolerances": tolerances.as_dict(),
            "results": results,
            "passed": n_pass == len(results),
        }))
    else:
        width = max(len(r["input"]) for r in results)
        for r in results:
            status = "pass" if r["passed"] else "FAIL"
            note = f"  {r['error']}" if r["error"] else ""
            print(f"{r['input']:<{width}}  {status}{note}", file=out)
        print(f"{n_pass}/{len(results)} passed", file=out)
    return EXIT_OK if n_pass == len(results) else EXIT_FAILED


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        if args.command == "analyze":
            return _cmd_report(args, out, include_analysis=True)
        if args.command == "decompose":
            return _cmd_report(args, out, include_analysis=False)
        if args.command == "random":
            return _cmd_random(args, out)
        return _cmd_check(args, out)
    except ConsistencyFailure as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except (FermiError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
