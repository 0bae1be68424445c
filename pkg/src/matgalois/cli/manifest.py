"""Run manifests: what ran, with which settings, what passed, what was written."""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone

from .. import __version__


def now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def sha256_file(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 16), b""):
            h.update(block)
    return h.hexdigest()


@dataclass
class RunManifest:
    config: dict
    version: str
    started: str
    finished: str
    criteria: dict = field(default_factory=dict)
    artifacts: dict = field(default_factory=dict)
    exit_status: int = 0

    @classmethod
    def build(cls, config, started, finished, criteria, paths, exit_status=0) -> RunManifest:
        return cls(
            config=config,
            version=__version__,
            started=started,
            finished=finished,
            criteria={k: bool(v) for k, v in criteria.items()},
            artifacts={p: sha256_file(p) for p in paths},
            exit_status=exit_status,
        )

    @property
    def passed(self) -> bool:
        return all(self.criteria.values())

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True) + "\n"

    def write(self, path: str) -> None:
        with open(path, "w") as fh:
            fh.write(self.to_json())
