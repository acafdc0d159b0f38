"""Command-line front end.

Exit codes: 0 success, 2 invalid input, 3 resource limit, 4 non-convergence
or indeterminate result.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from dataclasses import dataclass, fields, replace
from pathlib import Path

from . import automorphisms as auto
from . import counting, family, graph_maps, small_cancellation as sc, words
from .errors import (IndeterminateError, InvalidInputError, NonConvergenceError,
                     ResourceLimitError)

log = logging.getLogger("outcount")

EXIT_OK, EXIT_INVALID, EXIT_RESOURCE, EXIT_NONCONVERGENCE = 0, 2, 3, 4
DEFAULT_SEED = 0


@dataclass(frozen=True)
class Config:
    pf_tolerance: float = graph_maps.DEFAULT_PF_TOLERANCE
    stretch_tolerance: float = auto.DEFAULT_STRETCH_TOLERANCE
    max_word_length: int = auto.DEFAULT_MAX_TOTAL_LENGTH
    enumeration_cap: int = words.DEFAULT_ENUMERATION_CAP
    master_seed: int | None = None
    output_format: str = "csv"

    def __post_init__(self):
        if self.pf_tolerance <= 0 or self.stretch_tolerance <= 0:
            raise InvalidInputError("tolerances must be positive")
        if self.max_word_length < 1 or self.enumeration_cap < 1:
            raise InvalidInputError("caps must be at least 1")
        if self.output_format not in ("csv", "json"):
            raise InvalidInputError(f"unknown output format {self.output_format!r}")

    @classmethod
    def load(cls, path: str) -> "Config":
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise InvalidInputError(f"cannot read config {path}: {exc}") from None
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise InvalidInputError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    def seed(self) -> int:
        if self.master_seed is None:
            log.warning("no seed given; using default seed %d", DEFAULT_SEED)
            return DEFAULT_SEED
        return self.master_seed


def _round(obj):
    """Fix floats at 10 significant digits so output is byte-stable."""
    if isinstance(obj, float):
        return None if not math.isfinite(obj) else float(f"{obj:.10g}")
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    return obj


def _dump(obj) -> str:
    return json.dumps(_round(obj), indent=2) + "\n"


class _Inputs:
    def __init__(self, in_path: str | None):
        self.in_path = in_path

    def text(self, arg: str) -> str:
        """A literal, a file path, or '-' for --in / stdin."""
        if arg == "-":
            return Path(self.in_path).read_text() if self.in_path else sys.stdin.read()
        if arg.lstrip().startswith(("{", "[")):
            return arg
        p = Path(arg)
        if p.is_file():
            return p.read_text()
        return arg

    def json(self, arg: str) -> dict:
        try:
            return json.loads(self.text(arg))
        except json.JSONDecodeError as exc:
            raise InvalidInputError(f"invalid JSON input: {exc}") from None


def _ints(text: str) -> list[int]:
    try:
        return [int(float(x)) if "e" in x.lower() else int(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _word(text: str, rank: int | None) -> words.Word:
    return words.Word.parse(text.strip(), rank)


def _common_rank(texts, rank):
    if rank is not None:
        return rank
    return max(words.parse_codes(t)[1] for t in texts)


# command handlers -----------------------------------------------------------

def cmd_count_classes(args, cfg, inp):
    table = counting.growth_report(args.rank, args.max_n)
    if args.cross_check:
        for n in range(1, min(args.max_n, counting.DIRECT_COUNT_CAP) + 1):
            counting.count_conjugacy_classes(args.rank, n, cross_check=True)
    return table.to_csv() if cfg.output_format == "csv" else _dump(table.to_dict())


def cmd_count_ball(args, cfg, inp):
    value = counting.classes_in_ball(args.rank, args.radius)
    if cfg.output_format == "json":
        return _dump({"rank": args.rank, "radius": args.radius, "classes": value})
    return f"rank,radius,classes\n{args.rank},{args.radius},{value}\n"


def cmd_word_reduce(args, cfg, inp):
    return f"{_word(args.word, args.rank)}\n"


def cmd_word_cyclic(args, cfg, inp):
    w = _word(args.word, args.rank)
    core, conj = words.cyclic_reduce(w)
    return _dump({"core": str(core), "conjugator": str(conj),
                  "translation_length": len(core)})


def cmd_word_conjugate(args, cfg, inp):
    rank = _common_rank([args.u, args.v], args.rank)
    u, v = _word(args.u, rank), _word(args.v, rank)
    return f"{str(words.is_conjugate(u, v)).lower()}\n"


def cmd_word_enumerate(args, cfg, inp):
    stream = words.enumerate_cyclically_reduced(args.rank, args.length, cfg.enumeration_cap)
    return "".join(f"{w}\n" for w in stream)


def cmd_auto_apply(args, cfg, inp):
    e = auto.Endomorphism.from_dict(inp.json(args.endo))
    return f"{auto.apply(e, _word(args.word, e.rank))}\n"


def cmd_auto_compose(args, cfg, inp):
    e1 = auto.Endomorphism.from_dict(inp.json(args.first))
    e2 = auto.Endomorphism.from_dict(inp.json(args.second))
    return _dump(auto.compose(e1, e2).to_dict())


def cmd_auto_verify_inverse(args, cfg, inp):
    e1 = auto.Endomorphism.from_dict(inp.json(args.first))
    e2 = auto.Endomorphism.from_dict(inp.json(args.second))
    return f"{str(auto.verify_inverse(e1, e2)).lower()}\n"


def cmd_auto_phi_inverse(args, cfg, inp):
    return _dump(auto.phi_w_inverse(args.w).to_dict())


def cmd_auto_stretch(args, cfg, inp):
    e = auto.Endomorphism.from_dict(inp.json(args.endo))
    est = auto.stretch_estimate(e, _word(args.seed_word, e.rank), cfg.max_word_length,
                                cfg.stretch_tolerance)
    out = {"lambda_estimate": est.lambda_estimate, "root_estimate": est.root_estimate,
           "iterations_used": est.iterations_used, "final_length": est.final_length,
           "converged": est.converged, "ratios": list(est.ratios)}
    return _dump(out)


def cmd_map_analyze(args, cfg, inp):
    f = graph_maps.RoseMap.from_dict(inp.json(args.map))
    report = graph_maps.analyze(f, cfg.pf_tolerance, args.power_cap)
    if args.strict and report["train_track"] == "indeterminate":
        raise IndeterminateError("train-track closure did not stabilize")
    return _dump(report)


def cmd_sc_check(args, cfg, inp):
    rels = [sc.Relator.parse(inp.text(r).strip()) for r in args.relators]
    verdict = sc.c_prime_verdict(rels, args.lam)
    if cfg.output_format == "json":
        return _dump({"holds": verdict.holds, "lambda": str(verdict.lam),
                      "inequality": verdict.inequality(),
                      "max_piece": sc.max_piece(rels).to_dict()})
    return f"C'({verdict.lam}): {str(verdict.holds).lower()}\n{verdict.inequality()}\n"


def cmd_sc_pieces(args, cfg, inp):
    rels = [sc.Relator.parse(inp.text(r).strip()) for r in args.relators]
    return _dump(sc.max_piece(rels).to_dict())


def cmd_sc_gw(args, cfg, inp):
    return f"{sc.gw_one_relator(args.w)}\n"


def cmd_sc_conditions(args, cfg, inp):
    return _dump(sc.check_remark_conditions(args.w).to_dict())


def cmd_family_certify(args, cfg, inp):
    cert = family.certify(args.w, cfg.pf_tolerance, gw_check=args.gw)
    return _dump(cert.to_dict())


def cmd_family_census(args, cfg, inp):
    exhaustive = False if args.no_exhaustive else None
    seed = cfg.seed()
    rows = family.census(args.lengths, args.samples, seed, args.workers, exhaustive,
                         cfg.pf_tolerance)
    for r in rows:
        log.info("L=%d: family size ~ %s", r.L, r.family_size())
    if cfg.output_format == "json":
        return _dump([r.__dict__ for r in rows])
    return family.census_csv(rows)


def cmd_family_growth(args, cfg, inp):
    points = family.growth_experiment(args.lengths, args.samples, cfg.seed(), cfg.pf_tolerance)
    if cfg.output_format == "json":
        return _dump([p.__dict__ for p in points])
    return family.growth_csv(points)


# parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="outcount",
                                description="Conjugacy counting, train tracks and the "
                                            "phi_w family of automorphisms of F_3.")
    p.add_argument("--config", help="JSON file with Config fields")
    p.add_argument("--pf-tol", type=float, dest="pf_tolerance")
    p.add_argument("--stretch-tol", type=float, dest="stretch_tolerance")
    p.add_argument("--max-word-length", type=int, dest="max_word_length")
    p.add_argument("--enum-cap", type=int, dest="enumeration_cap")
    p.add_argument("--seed", type=int, dest="master_seed")
    p.add_argument("--format", choices=("csv", "json"), dest="output_format")
    p.add_argument("--in", dest="in_path", help="file read wherever an argument is '-'")
    p.add_argument("--out", dest="out_path", help="write output here instead of stdout")
    p.add_argument("-v", "--verbose", action="store_true")
    top = p.add_subparsers(dest="group", required=True)

    count = top.add_parser("count").add_subparsers(dest="cmd", required=True)
    c = count.add_parser("classes")
    c.add_argument("--rank", type=int, default=2)
    c.add_argument("--max-n", type=int, required=True)
    c.add_argument("--cross-check", action="store_true")
    c.set_defaults(func=cmd_count_classes)
    c = count.add_parser("ball")
    c.add_argument("--rank", type=int, default=2)
    c.add_argument("--radius", type=int, required=True)
    c.set_defaults(func=cmd_count_ball)

    word = top.add_parser("word").add_subparsers(dest="cmd", required=True)
    for name, func in (("reduce", cmd_word_reduce), ("cyclic", cmd_word_cyclic)):
        c = word.add_parser(name)
        c.add_argument("word")
        c.add_argument("--rank", type=int)
        c.set_defaults(func=func)
    c = word.add_parser("conjugate")
    c.add_argument("u")
    c.add_argument("v")
    c.add_argument("--rank", type=int)
    c.set_defaults(func=cmd_word_conjugate)
    c = word.add_parser("enumerate")
    c.add_argument("--rank", type=int, default=2)
    c.add_argument("--length", type=int, required=True)
    c.set_defaults(func=cmd_word_enumerate)

    a = top.add_parser("auto").add_subparsers(dest="cmd", required=True)
    c = a.add_parser("apply")
    c.add_argument("endo")
    c.add_argument("word")
    c.set_defaults(func=cmd_auto_apply)
    for name, func in (("compose", cmd_auto_compose),
                       ("verify-inverse", cmd_auto_verify_inverse)):
        c = a.add_parser(name)
        c.add_argument("first")
        c.add_argument("second")
        c.set_defaults(func=func)
    c = a.add_parser("stretch")
    c.add_argument("endo")
    c.add_argument("--word", dest="seed_word", default="a")
    c.set_defaults(func=cmd_auto_stretch)
    c = a.add_parser("phi-inverse")
    c.add_argument("w")
    c.set_defaults(func=cmd_auto_phi_inverse)

    m = top.add_parser("map").add_subparsers(dest="cmd", required=True)
    c = m.add_parser("analyze")
    c.add_argument("map")
    c.add_argument("--power-cap", type=int)
    c.add_argument("--strict", action="store_true",
                   help="exit 4 when the train-track check is indeterminate")
    c.set_defaults(func=cmd_map_analyze)

    s = top.add_parser("sc").add_subparsers(dest="cmd", required=True)
    c = s.add_parser("check")
    c.add_argument("--lambda", dest="lam", required=True, help="rational p/q")
    c.add_argument("relators", nargs="+")
    c.set_defaults(func=cmd_sc_check)
    c = s.add_parser("pieces")
    c.add_argument("relators", nargs="+")
    c.set_defaults(func=cmd_sc_pieces)
    for name, func in (("gw", cmd_sc_gw), ("conditions", cmd_sc_conditions)):
        c = s.add_parser(name)
        c.add_argument("w")
        c.set_defaults(func=func)

    f = top.add_parser("family").add_subparsers(dest="cmd", required=True)
    c = f.add_parser("certify")
    c.add_argument("w")
    c.add_argument("--gw", action="store_true",
                   help="also test C'(1/6) for the one-relator presentation")
    c.set_defaults(func=cmd_family_certify)
    for name, func in (("census", cmd_family_census), ("growth", cmd_family_growth)):
        c = f.add_parser(name)
        c.add_argument("--lengths", type=_ints, required=True)
        c.add_argument("--samples", type=int, default=100)
        if name == "census":
            c.add_argument("--workers", type=int, default=1)
            c.add_argument("--no-exhaustive", action="store_true")
        c.set_defaults(func=func)
    return p


def _config(args) -> Config:
    cfg = Config.load(args.config) if args.config else Config()
    overrides = {f.name: getattr(args, f.name) for f in fields(Config)
                 if getattr(args, f.name, None) is not None}
    return replace(cfg, **overrides)


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        cfg = _config(args)
        output = args.func(args, cfg, _Inputs(args.in_path))
        if args.out_path:
            Path(args.out_path).write_text(output)
        else:
            sys.stdout.write(output)
        return EXIT_OK
    except (InvalidInputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (NonConvergenceError, IndeterminateError) as exc:
        print(f"not converged: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
