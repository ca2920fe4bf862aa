"""Command line: ``weakkam analyze | verify | oracle``.

Exit codes: 0 success, 1 invalid certificate or oracle mismatch, 2 config or
model validation error, 3 a re-checked inequality failed, 4 instance too large
for the oracle.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import oracle
from ._numeric import fmt
from .config import load_config
from .errors import ConfigError, Falsified, TooLarge, WeakKamError
from .maxplus import check_certificate, finite_horizon_bound, max_cycle_mean, minimal_subaction
from .pipeline import analyze, read_subaction, render, subaction_graph
from .truncation import level_graph

EXIT_OK, EXIT_MISMATCH, EXIT_INVALID, EXIT_FALSIFIED, EXIT_TOO_LARGE = 0, 1, 2, 3, 4
ORACLE_HORIZON = 6


def _overrides(args: argparse.Namespace) -> dict:
    keys = ("plateau_window", "mode", "eta", "horizon")
    return {k: getattr(args, k) for k in keys if getattr(args, k, None) is not None}


def _write_csv(directory: Path, report: dict) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    with open(directory / "beta_by_I.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["I", "beta"])
        for I, b in sorted(report["truncation"]["beta_by_I"].items(), key=lambda kv: int(kv[0])):
            w.writerow([I, b])
    with open(directory / "finite_horizon.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["k", "bound"])
        for k, v in sorted(report["finite_horizon"].items(), key=lambda kv: int(kv[0])):
            w.writerow([k, v])


def cmd_analyze(args: argparse.Namespace) -> int:
    cfg = load_config(args.config, _overrides(args))
    report = analyze(cfg)
    text = render(report)
    if args.emit:
        Path(args.emit).write_text(text)
    else:
        sys.stdout.write(text)
    if args.csv:
        _write_csv(Path(args.csv), report)
    failed = [c["name"] for c in report["checks"] if not c["ok"]]
    if failed:
        print(f"FALSIFIED: {', '.join(failed)}", file=sys.stderr)
        return EXIT_FALSIFIED
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    try:
        obj = json.loads(Path(args.subaction).read_text())
    except OSError as exc:
        raise ConfigError(f"{args.subaction}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{args.subaction}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    if not isinstance(obj, dict):
        raise ConfigError(f"{args.subaction}: expected an object")
    u, level = read_subaction(obj, cfg.exact)
    wg = subaction_graph(cfg, u, level)
    rep = check_certificate(wg, u)
    print(json.dumps(rep.to_json(), sort_keys=True))
    print(rep.verdict)
    return EXIT_OK if rep.verdict == "VALID" else EXIT_MISMATCH


def _compare(rows: list, label: str, fast, brute) -> bool:
    same = fast == brute
    rows.append((label, fmt(fast), fmt(brute), "ok" if same else "MISMATCH"))
    return same


def cmd_oracle(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    level = cfg.model.i_max if cfg.model.is_finite else (cfg.I_hat or cfg.model.i_max)
    wg = level_graph(cfg.model, level)
    rows: list = []
    ok = True
    instances = [("config", wg)] + [(f"seed {s}", oracle.random_instance(s)) for s in range(1, args.seeds + 1)]
    for _, g in instances:
        oracle.ensure_feasible(g, ORACLE_HORIZON)
    for name, g in instances:
        beta = max_cycle_mean(g)
        ok &= _compare(rows, f"{name} beta", beta, oracle.brute_beta(g))
        fast_u = minimal_subaction(g, beta).u
        brute_u = oracle.brute_minimal_subaction(g, beta, 2 * len(g.vertices))
        for v in g.vertices:
            ok &= _compare(rows, f"{name} u_A{list(v)}", fast_u[v], brute_u[v])
        for k in range(1, ORACLE_HORIZON + 1):
            ok &= _compare(rows, f"{name} fh({k})", finite_horizon_bound(g, k), oracle.brute_finite_horizon(g, k))
    width = max(len(r[0]) for r in rows)
    print(f"{'quantity':<{width}}  fast  brute  status")
    for r in rows:
        print(f"{r[0]:<{width}}  {r[1]}  {r[2]}  {r[3]}")
    return EXIT_OK if ok else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="weakkam", description="Maximizing measures and sub-actions on Markov shifts.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="run the full pipeline and emit the audited report")
    a.add_argument("config")
    a.add_argument("--emit", metavar="PATH", help="write the report here instead of stdout")
    a.add_argument("--csv", metavar="DIR", help="write beta_by_I.csv and finite_horizon.csv")
    a.add_argument("--plateau-window", dest="plateau_window", type=int)
    a.add_argument("--mode", choices=("exact", "float"))
    a.add_argument("--eta", metavar="P/Q")
    a.add_argument("--horizon", type=int, metavar="K")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="audit an external sub-action certificate")
    v.add_argument("config")
    v.add_argument("subaction")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", help="compare fast routines against brute force")
    o.add_argument("config")
    o.add_argument("--seeds", type=int, default=0)
    o.set_defaults(func=cmd_oracle)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except TooLarge as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except Falsified as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_FALSIFIED
    except WeakKamError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
