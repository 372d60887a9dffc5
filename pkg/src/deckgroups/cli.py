"""Command line front end.

    deckgroups classify --normal-form 1,-1,1,i --degree 4 --k-max 3
    deckgroups deck     --normal-form 1,-1,1,1 --degree 2 --k-max 3
    deckgroups verify   --normal-form 1,-1,1,1 --degree 2 --k-max 3
    deckgroups suite    --degrees 3,5 --count 100 --seed 7

Exit status: 0 on success, 1 on bad input, 2 on a theorem violation or an
oracle mismatch. ``DECK_EPS`` in the environment overrides the default
tolerance; ``--eps`` overrides both.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import bicritical as bc
from . import oracle, serialize
from .classify import report_from_chain
from .deck import deck_chain
from .errors import DeckError, GroupTooLarge, OracleTooLarge
from .sphere import EPS, IDENTITY, Tolerance
from .suite import run_suite

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION = 0, 1, 2


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Usage errors are input errors: exit 1, not argparse's default 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    mode: str
    f: bc.BicriticalMap | None = None
    k_max: int = 4
    tol: Tolerance = field(default_factory=Tolerance)
    fmt: str = "json"
    count: int = 100
    degrees: list[int] = field(default_factory=lambda: [2, 3, 4, 5, 6, 7])
    seed: int = 0
    coalescing: bool = False
    oracle: bool = False
    workers: int = 1


def _parse_coefficients(text: str) -> list[complex]:
    text = text.strip()
    if text.startswith("["):
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"--normal-form: {exc.msg} at line {exc.lineno} column {exc.colno}")
        if not isinstance(raw, list):
            raise InputError("--normal-form: expected a JSON list of four coefficients")
        parts = raw
    else:
        parts = text.split(",")
    if len(parts) != 4:
        raise InputError(f"--normal-form: expected 4 coefficients alpha,beta,gamma,delta, got {len(parts)}")
    out = []
    for name, value in zip(("alpha", "beta", "gamma", "delta"), parts):
        try:
            out.append(serialize.complex_from_json(value))
        except (ValueError, TypeError) as exc:
            raise InputError(f"--normal-form field {name}: {exc}")
    return out


def _load_json(text: str, what: str):
    source = text
    if not text.lstrip().startswith(("{", "[")):
        path = Path(text)
        if not path.exists():
            raise InputError(f"{what}: {text!r} is neither inline JSON nor an existing file")
        source = path.read_text()
        what = f"{what} ({path})"
    try:
        return json.loads(source)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what}: {exc.msg} at line {exc.lineno} column {exc.colno}")


def _moebius_arg(text: str | None, what: str):
    if text is None:
        return IDENTITY
    try:
        return serialize.moebius_from_json(_load_json(text, what))
    except (ValueError, TypeError, KeyError, DeckError) as exc:
        raise InputError(f"{what}: {exc}")


def _map_from_args(args) -> bc.BicriticalMap:
    try:
        if args.input is not None:
            return serialize.map_from_json(_load_json(args.input, "--input"))
        if args.degree is None:
            raise InputError("--degree is required unless the map comes from --input")
        if args.normal_form is not None:
            if args.pre is not None or args.post is not None:
                raise InputError("--normal-form cannot be combined with --pre/--post")
            return bc.from_normal_form(*_parse_coefficients(args.normal_form), args.degree)
        if args.pre is None and args.post is None:
            raise InputError("give the map with --normal-form, --pre/--post or --input")
        return bc.BicriticalMap(_moebius_arg(args.pre, "--pre"), args.degree,
                                _moebius_arg(args.post, "--post"))
    except InputError:
        raise
    except (ValueError, TypeError, KeyError, DeckError) as exc:
        raise InputError(str(exc))


def _tolerance(args) -> Tolerance:
    eps = args.eps
    if eps is None:
        env = os.environ.get("DECK_EPS")
        try:
            eps = float(env) if env else EPS
        except ValueError:
            raise InputError(f"DECK_EPS: cannot parse {env!r} as a number")
    try:
        return Tolerance(eps=eps, rng_seed=args.seed)
    except ValueError as exc:
        raise InputError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="deckgroups",
        description="Deck groups of iterates of bicritical rational maps.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k-max", type=int, default=4, help="highest iterate (default 4)")
    common.add_argument("--eps", type=float, default=None, help="comparison tolerance")
    common.add_argument("--seed", type=int, default=0, help="seed for every random draw")
    common.add_argument("--format", choices=("json", "table"), default="json")

    mapargs = argparse.ArgumentParser(add_help=False)
    mapargs.add_argument("--normal-form", metavar="A,B,C,D",
                         help="coefficients of (A z^d + B) / (C z^d + D); i is the imaginary unit")
    mapargs.add_argument("--degree", type=int)
    mapargs.add_argument("--pre", help="Moebius map JSON (inline or file) applied before z^d")
    mapargs.add_argument("--post", help="Moebius map JSON (inline or file) applied after z^d")
    mapargs.add_argument("--input", help="bicritical map JSON, inline or a file path")

    sub = parser.add_subparsers(dest="mode", required=True)
    sub.add_parser("classify", parents=[common, mapargs], help="identify Deck(f^k) and check the theorems")
    sub.add_parser("deck", parents=[common, mapargs], help="list the elements of Deck(f^k)")
    sub.add_parser("verify", parents=[common, mapargs],
                   help="recompute Deck(f^k) by brute force over a fiber and compare")
    s = sub.add_parser("suite", parents=[common], help="randomized property suite")
    s.add_argument("--degrees", default="2,3,4,5,6,7")
    s.add_argument("--count", type=int, default=100)
    s.add_argument("--coalescing", action="store_true",
                   help="mix in critically coalescing and shared-point families")
    s.add_argument("--oracle", action="store_true", help="also run the brute-force oracle where d^k <= 64")
    s.add_argument("--workers", type=int, default=1)
    return parser


def config_from_args(args) -> RunConfig:
    if args.k_max < 1:
        raise InputError(f"--k-max must be >= 1, got {args.k_max}")
    cfg = RunConfig(args.mode, k_max=args.k_max, tol=_tolerance(args), fmt=args.format, seed=args.seed)
    if args.mode == "suite":
        if args.count < 1:
            raise InputError(f"--count must be >= 1, got {args.count}")
        if args.workers < 1:
            raise InputError(f"--workers must be >= 1, got {args.workers}")
        try:
            cfg.degrees = [int(x) for x in args.degrees.split(",") if x.strip()]
        except ValueError:
            raise InputError(f"--degrees: expected comma separated integers, got {args.degrees!r}")
        if not cfg.degrees or any(d < 2 for d in cfg.degrees):
            raise InputError(f"--degrees: every degree must be >= 2, got {args.degrees!r}")
        cfg.count, cfg.coalescing = args.count, args.coalescing
        cfg.oracle, cfg.workers = args.oracle, args.workers
    else:
        cfg.f = _map_from_args(args)
    return cfg


def _table(headers: list[str], rows: list[list]) -> str:
    cells = [headers] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _emit(obj, fmt: str, table: str, out) -> None:
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(obj, indent=2) + "\n")
    else:
        out.write(table + "\n")


def run_classify(cfg: RunConfig, out=None) -> int:
    chain = deck_chain(cfg.f, cfg.k_max, cfg.tol)
    report = report_from_chain(chain, cfg.tol)
    table = _table(["k", "order", "type"], [[lv.k, lv.order, lv.group_type] for lv in report.levels])
    table += (f"\npower map: {report.power_map}   critically coalescing: "
              f"{report.critically_coalescing}\nverdict: {report.verdict}")
    _emit(serialize.report_to_json(report), cfg.fmt, table, out)
    return EXIT_OK if report.consistent else EXIT_VIOLATION


def run_deck(cfg: RunConfig, out=None) -> int:
    chain = deck_chain(cfg.f, cfg.k_max, cfg.tol)
    obj = {"map": serialize.map_to_json(cfg.f), "power_map": chain.power_map_flag,
           "stabilized_at": chain.stabilized_at,
           "groups": [serialize.deck_group_to_json(g) for g in chain.groups]}
    table = _table(["k", "order", "type", "new"],
                   [[g.k, g.order, g.group_type, len(g.new_elements)] for g in chain.groups])
    _emit(obj, cfg.fmt, table, out)
    return EXIT_OK


def run_verify(cfg: RunConfig, out=None) -> int:
    results = oracle.run_verify(cfg.f, cfg.k_max, cfg.tol)
    ok = all(r.match for r in results)
    obj = {"levels": [{"k": r.k, "oracle_order": len(r.oracle_elements),
                       "engine_order": len(r.engine_elements), "match": r.match} for r in results],
           "match": ok}
    table = _table(["k", "oracle", "engine", "match"],
                   [[r.k, len(r.oracle_elements), len(r.engine_elements), r.match] for r in results])
    _emit(obj, cfg.fmt, table, out)
    return EXIT_OK if ok else EXIT_VIOLATION


def run_random_suite(cfg: RunConfig, out=None) -> int:
    result = run_suite(cfg.seed, cfg.count, cfg.degrees, cfg.k_max, cfg.coalescing,
                       cfg.tol, cfg.oracle, cfg.workers)
    rows = [[d, seq, n] for d, c in result.type_counts().items() for seq, n in c.items()]
    table = _table(["d", "types k=1..", "maps"], rows)
    table += f"\npassed {result.passed} / {len(result.outcomes)}"
    for o in result.outcomes:
        for msg in o.failures:
            table += f"\nmap {o.index} (d={o.degree}, {o.family}): {msg}"
    _emit(result.to_json(), cfg.fmt, table, out)
    return EXIT_OK if result.ok else EXIT_VIOLATION


RUNNERS = {"classify": run_classify, "deck": run_deck, "verify": run_verify, "suite": run_random_suite}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        return RUNNERS[cfg.mode](cfg)
    except (InputError, OracleTooLarge, GroupTooLarge) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DeckError as exc:
        print(f"computation failed: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
