"""Command-line entry point: ``matgalois <command> [options]``.

Exit status: 0 when every check passed, 1 on a failed check (including
falsification reports), 2 on usage or configuration errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from ..census.engine import CheckpointError
from ..census.spec import CensusGuardError
from .commands import RUNNERS, Interrupted, run_resume
from .config import (
    COMMANDS,
    ConfigError,
    ExperimentConfig,
    coerce_params,
    default_workers,
    parse_key_values,
)
from .manifest import RunManifest, now

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _add_common(p: argparse.ArgumentParser) -> None:
    S = argparse.SUPPRESS
    p.add_argument("--config", default=S, help="key=value file; command-line flags take precedence")
    p.add_argument("--seed", type=int, default=S, help="random seed")
    p.add_argument("--out", default=S, help="CSV output path (JSON lines and manifest are written alongside)")
    p.add_argument("--checkpoint", default=S, help="checkpoint file (census, resume)")
    p.add_argument("--workers", type=int, default=S, help="worker processes (default: $MATGALOIS_WORKERS or 1)")


def _add_params(p: argparse.ArgumentParser, command: str) -> None:
    for prm in COMMANDS[command]:
        flag = "--" + prm.name.replace("_", "-")
        extra = f" (default {prm.default})" if prm.default is not None else ""
        p.add_argument(flag, dest=prm.name, type=prm.type, default=argparse.SUPPRESS,
                       choices=prm.choices, help=prm.help + extra)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="matgalois", description="Galois statistics of integer matrices")
    sub = parser.add_subparsers(dest="cmd", required=True)
    for name in ("census", "fit", "galois", "resume"):
        p = sub.add_parser(name)
        _add_common(p)
        _add_params(p, name)
    verify = sub.add_parser("verify", help="finite verification suites")
    vsub = verify.add_subparsers(dest="suite", required=True)
    for suite in ("reiner", "dft", "dd", "pinch", "index"):
        p = vsub.add_parser(suite)
        _add_common(p)
        _add_params(p, f"verify {suite}")
    return parser


def config_from_args(ns: argparse.Namespace, env=os.environ) -> ExperimentConfig:
    command = ns.cmd if ns.cmd != "verify" else f"verify {ns.suite}"
    given = {k: v for k, v in vars(ns).items() if k not in ("cmd", "suite", "config")}
    merged: dict = {}
    if getattr(ns, "config", None):
        try:
            with open(ns.config) as fh:
                merged = parse_key_values(fh.read())
        except OSError as exc:
            raise ConfigError(f"config: cannot read {ns.config}: {exc.strerror}") from None
        file_cmd = merged.pop("command", command)
        if file_cmd != command:
            raise ConfigError(f"command: config file is for {file_cmd!r}, not {command!r}")
        merged.pop("params", None)
    merged.update(given)
    top = {k: merged.pop(k, None) for k in ("seed", "out", "checkpoint", "workers")}
    params = coerce_params(command, merged)
    workers = top["workers"] if top["workers"] is not None else default_workers(env)
    if workers < 1:
        raise ConfigError("workers: must be >= 1")
    seed = None if top["seed"] is None else int(top["seed"])
    return ExperimentConfig(command, params, seed, top["out"], top["checkpoint"], int(workers))


def _write(path: str, text: str) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(text)


def emit(cfg: ExperimentConfig, outcome, started: str, status: int, err=None, out=None) -> RunManifest:
    err = sys.stderr if err is None else err
    out = sys.stdout if out is None else out
    for line in outcome.report:
        print(line, file=err)
    for name, ok in outcome.criteria.items():
        print(f"{'PASS' if ok else 'FAIL'}  {name}", file=err)
    artifacts = []
    if cfg.out:
        _write(cfg.out, outcome.csv_text)
        _write(cfg.json_path(), "".join(json.dumps(r, sort_keys=True) + "\n" for r in outcome.json_records))
        artifacts = [cfg.out, cfg.json_path()]
    else:
        out.write(outcome.csv_text)
    manifest = RunManifest.build(cfg.to_dict(), started, now(), outcome.criteria, artifacts, status)
    if cfg.manifest_path():
        manifest.write(cfg.manifest_path())
    return manifest


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(message)s")
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    started = now()
    try:
        cfg = config_from_args(ns)
        if cfg.command == "resume":
            outcome, cfg = run_resume(cfg, cfg.params)
        else:
            outcome = RUNNERS[cfg.command](cfg, cfg.params)
    except (ConfigError, CensusGuardError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CheckpointError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Interrupted as exc:
        print(f"interrupted: {exc}", file=sys.stderr)
        return EXIT_FAIL
    status = EXIT_OK if outcome.passed else EXIT_FAIL
    emit(cfg, outcome, started, status)
    return status


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
