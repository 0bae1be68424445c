"""Experiment configuration: typed parameters, key=value text form, merging."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Callable

from ..census.engine import WORKERS_ENV


class ConfigError(ValueError):
    """Invalid configuration; the message names the offending field."""


@dataclass(frozen=True)
class Param:
    name: str
    type: Callable = str
    default: Any = None
    help: str = ""
    required: bool = False
    choices: tuple | None = None


CENSUS_PARAMS = (
    Param("n", int, required=True, help="matrix dimension"),
    Param("t", int, required=True, help="entry bound T (infinity norm)"),
    Param("mode", str, "exhaustive", "exhaustive or montecarlo", choices=("exhaustive", "montecarlo")),
    Param("stats", str, "inteig", "comma list: nonsn, reducible, inteig, singular, factordeg:k, fiber:[..]"),
    Param("samples", int, None, "Monte Carlo sample count"),
    Param("chunk_size", int, 10**6, "matrices per chunk"),
    Param("prime_budget", int, 100, "primes scanned for S_n certification"),
    Param("max_chunks", int, None, "stop after this many new chunks (resume later)"),
)

COMMANDS: dict[str, tuple] = {
    "census": CENSUS_PARAMS,
    "fit": (
        Param("input", str, None, "census CSV to fit"),
        Param("points", str, None, "inline points 'T:value,T:value,...'"),
        Param("statistic", str, "inteig", "statistic to select from the CSV"),
        Param("density", int, 0, "fit count/samples instead of the raw count (0 or 1)"),
        Param("a_range", str, None, "assert the fitted exponent lies in 'lo,hi'"),
        Param("slope_range", str, None, "assert the plain log-log slope lies in 'lo,hi'"),
    ),
    "galois": (
        Param("poly", str, None, "coefficient list, constant term first, e.g. [-1,-1,0,0,0,1]"),
        Param("matrix", str, None, "row-major matrix, e.g. [[0,1],[1,0]]"),
        Param("prime_budget", int, 100, "primes scanned for S_n certification"),
    ),
    "verify reiner": (
        Param("n", int, 2, "matrix dimension"),
        Param("q", int, 3, "prime field size"),
    ),
    "verify dft": (
        Param("p", int, 3, "prime"),
        Param("n", int, 2, "matrix dimension"),
        Param("k", int, 1, "subspace dimension"),
        Param("g", str, None, "squarefree monic g of degree k mod p (default: first one found)"),
    ),
    "verify dd": (
        Param("n", int, 3, "matrix dimension"),
        Param("trials", int, 100, "random trials"),
        Param("t", int, 3, "entry bound of random matrices"),
    ),
    "verify pinch": (
        Param("example", str, "n6k3", "built-in lattice example", choices=("n6k3",)),
        Param("t", int, 100, "scale parameter T"),
        Param("c", int, None, "pinch constant (default 2^k)"),
    ),
    "verify index": (
        Param("primes", str, "2,3,5,7,11,13", "comma list of primes"),
        Param("n", int, 4, "largest degree"),
    ),
    "resume": (),
}

TOP_LEVEL = ("command", "seed", "out", "checkpoint", "workers")


@dataclass
class ExperimentConfig:
    """Everything needed to rerun one experiment.

    ``out`` is the CSV path; JSON lines and the manifest go next to it
    (``.jsonl`` and ``.manifest.json``). ``workers`` defaults to the
    MATGALOIS_WORKERS environment variable, then 1.
    """

    command: str
    params: dict = field(default_factory=dict)
    seed: int | None = None
    out: str | None = None
    checkpoint: str | None = None
    workers: int | None = None

    def to_dict(self) -> dict:
        d = {k: getattr(self, k) for k in TOP_LEVEL}
        d["params"] = dict(sorted(self.params.items()))
        return d

    @classmethod
    def from_dict(cls, d: dict) -> ExperimentConfig:
        return cls(d["command"], dict(d.get("params", {})), d.get("seed"), d.get("out"), d.get("checkpoint"), d.get("workers"))

    def dumps(self) -> str:
        lines = [f"{k}={json.dumps(getattr(self, k))}" for k in TOP_LEVEL]
        lines += [f"{k}={json.dumps(v)}" for k, v in sorted(self.params.items())]
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> ExperimentConfig:
        raw = parse_key_values(text)
        if "command" not in raw:
            raise ConfigError("config text has no 'command' field")
        top = {k: raw.pop(k) for k in TOP_LEVEL if k in raw}
        return cls(top["command"], raw, top.get("seed"), top.get("out"), top.get("checkpoint"), top.get("workers"))

    def json_path(self) -> str | None:
        return None if self.out is None else _sibling(self.out, ".jsonl")

    def manifest_path(self) -> str | None:
        return None if self.out is None else _sibling(self.out, ".manifest.json")


def _sibling(path: str, suffix: str) -> str:
    return (path[:-4] if path.endswith(".csv") else path) + suffix


def parse_key_values(text: str) -> dict:
    """key=value lines; lines starting with '#' are comments; values are JSON or bare strings."""
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value, got {line!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        try:
            out[key] = json.loads(value)
        except json.JSONDecodeError:
            out[key] = value
    return out


def coerce_params(command: str, params: dict) -> dict:
    """Validate and type the parameters of a command, filling defaults."""
    if command not in COMMANDS:
        raise ConfigError(f"command: unknown command {command!r}")
    table = {p.name: p for p in COMMANDS[command]}
    unknown = sorted(set(params) - set(table))
    if unknown:
        raise ConfigError(f"{unknown[0]}: unknown parameter for {command!r}")
    out = {}
    for name, p in table.items():
        value = params.get(name, p.default)
        if value is None:
            if p.required:
                raise ConfigError(f"{name}: required for {command!r}")
            out[name] = None
            continue
        try:
            value = p.type(value)
        except (TypeError, ValueError):
            raise ConfigError(f"{name}: expected {p.type.__name__}, got {value!r}") from None
        if p.choices and value not in p.choices:
            raise ConfigError(f"{name}: must be one of {', '.join(p.choices)}")
        out[name] = value
    return out


def default_workers(env) -> int:
    raw = env.get(WORKERS_ENV)
    if raw is None:
        return 1
    try:
        w = int(raw)
    except ValueError:
        raise ConfigError(f"workers: {WORKERS_ENV}={raw!r} is not an integer") from None
    if w < 1:
        raise ConfigError(f"workers: {WORKERS_ENV} must be >= 1")
    return w
