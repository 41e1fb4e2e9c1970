"""Batch command-line surface.

Subcommands: validate, simulate, war, boot, pythag.  Every command is
deterministic given its flags; outputs carry the run configuration as a
leading comment (CSV) or a config key (JSON).  Exit codes: 0 success,
1 validation failure, 2 configuration error, 3 internal numeric failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .events import parse_season, serialize_season
from .pipeline import run_pipeline
from .simulate import generate_synthetic_season
from .uncertainty import BootstrapConfig, bootstrap_war, comparison_json
from .valuation import runs_per_win, valuation_csv, valuation_json

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_CONFIG = 2
EXIT_NUMERIC = 3


def _default_seed():
    env = os.environ.get("OPENWAR_SEED")
    return int(env) if env else 0


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="openwar",
        description="Conservation-of-runs player valuation for play-by-play "
                    "baseball data.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a season CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--strict", dest="strict", action="store_true", default=True)
    p.add_argument("--lenient", dest="strict", action="store_false")

    p = sub.add_parser("simulate", help="generate a synthetic season CSV")
    p.add_argument("--games", type=int, default=50)
    p.add_argument("--teams", type=int, default=4)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", required=True, help="output CSV path")

    for name in ("war", "boot"):
        p = sub.add_parser(name, help=f"run the {name} pipeline")
        p.add_argument("--input", required=True)
        p.add_argument("--out", required=True, help="output directory")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--cutoff-pos", type=int, default=390)
        p.add_argument("--cutoff-pitch", type=int, default=360)
        p.add_argument("--runs-per-win", type=float, default=10.0)
        p.add_argument("--pythag-p", type=float, default=None)
        p.add_argument("--pythag-r", type=float, default=None)
        p.add_argument("--bandwidth-x", type=float, default=None)
        p.add_argument("--bandwidth-y", type=float, default=None)
        p.add_argument("--strict", dest="strict", action="store_true", default=True)
        p.add_argument("--lenient", dest="strict", action="store_false")
        p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
        if name == "boot":
            p.add_argument("--replicates", type=int, default=3500)
            p.add_argument("--compare", nargs=2, action="append", default=[],
                           metavar=("PLAYER_A", "PLAYER_B"))

    p = sub.add_parser("pythag", help="runs-per-win from the Pythagorean gradient")
    p.add_argument("--pythag-p", type=float, required=True)
    p.add_argument("--pythag-r", type=float, required=True)
    return parser


def _config_echo(args):
    skip = {"command"}
    cfg = {k: v for k, v in sorted(vars(args).items()) if k not in skip}
    return json.dumps(cfg, sort_keys=True)


def _write(path, text, config_line=None):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if config_line is not None and path.suffix == ".csv":
        text = f"# config: {config_line}\n" + text
    path.write_text(text, encoding="utf-8")


def _resolve_rpw(args):
    if args.pythag_p is not None and args.pythag_r is not None:
        return runs_per_win(args.pythag_p, args.pythag_r)
    return args.runs_per_win


def _bandwidth(args):
    if args.bandwidth_x is not None and args.bandwidth_y is not None:
        return (args.bandwidth_x, args.bandwidth_y)
    return None


def _load(args):
    with open(args.input, encoding="utf-8") as fh:
        return parse_season(fh, "strict" if args.strict else "lenient")


def cmd_validate(args):
    dataset, report = _load(args)
    print(f"records: {len(dataset)}")
    print(f"dropped: {report.dropped}")
    for w in report.warnings:
        print(f"warning: {w}")
    if report.dropped or report.errors:
        return EXIT_VALIDATION
    print("ok")
    return EXIT_OK


def cmd_simulate(args):
    seed = args.seed if args.seed is not None else _default_seed()
    data = generate_synthetic_season(args.games, seed, teams=args.teams)
    _write(args.out, serialize_season(data), _config_echo(args))
    print(f"wrote {len(data)} plate appearances to {args.out}")
    return EXIT_OK


def _run(args):
    dataset, _ = _load(args)
    return run_pipeline(
        dataset, bandwidth=_bandwidth(args), cutoff_pos=args.cutoff_pos,
        cutoff_pitch=args.cutoff_pitch, rpw=_resolve_rpw(args))


def cmd_war(args):
    result = _run(args)
    cfg = _config_echo(args)
    out = Path(args.out)
    _write(out / "valuation.csv", valuation_csv(result.valuations), cfg)
    payload = json.loads(valuation_json(result.valuations))
    _write(out / "valuation.json",
           json.dumps({"config": json.loads(cfg), "players": payload},
                      indent=2, sort_keys=True) + "\n")
    _write(out / "run_expectancy.csv", result.ledger.matrix.to_csv(), cfg)
    _write(out / "fielding_surface.csv", result.ledger.surface_grid_csv(), cfg)
    _write(out / "fielding_models.csv", result.ledger.fielding_models_csv(), cfg)
    print(f"wrote valuation for {len(result.valuations)} players to {out}")
    return EXIT_OK


def cmd_boot(args):
    result = _run(args)
    seed = args.seed if args.seed is not None else _default_seed()
    config = BootstrapConfig(replicates=args.replicates, master_seed=seed)
    dist = bootstrap_war(result.ledger, result.valuations, result.pool,
                         config, rpw=_resolve_rpw(args))
    cfg = _config_echo(args)
    out = Path(args.out)
    _write(out / "war_quantiles.csv", dist.quantile_csv(), cfg)
    if args.compare:
        _write(out / "comparisons.json", comparison_json(dist, args.compare))
    print(f"wrote {args.replicates}-replicate quantiles to {out}")
    return EXIT_OK


def cmd_pythag(args):
    value = runs_per_win(args.pythag_p, args.pythag_r)
    print(repr(value))
    return EXIT_OK


_COMMANDS = {
    "validate": cmd_validate,
    "simulate": cmd_simulate,
    "war": cmd_war,
    "boot": cmd_boot,
    "pythag": cmd_pythag,
}


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad flags, which matches our config-error code
        return int(exc.code or 0) and EXIT_CONFIG
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, KeyError, OSError) as exc:
        kind = "validation" if isinstance(exc, ValueError) else "config"
        print(json.dumps({"error": str(exc), "kind": kind}), file=sys.stderr)
        return EXIT_VALIDATION if kind == "validation" else EXIT_CONFIG
    except ArithmeticError as exc:
        print(json.dumps({"error": str(exc), "kind": "numeric"}), file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
