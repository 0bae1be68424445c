"""Census results: per-statistic counts, Wilson intervals, CSV/JSON output."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from math import sqrt
from statistics import NormalDist

from .spec import EXHAUSTIVE, CensusSpec

CSV_HEADER = ("n", "T", "statistic", "mode", "count_or_hits", "samples", "ci_low", "ci_high", "seed")
Z95 = NormalDist().inv_cdf(0.975)
DENSITY_DIGITS = 10


def wilson_interval(hits: int, samples: int, z: float = Z95) -> tuple[float, float]:
    if samples <= 0:
        raise ValueError("samples must be positive")
    phat = hits / samples
    denom = 1 + z * z / samples
    center = (phat + z * z / (2 * samples)) / denom
    half = z / denom * sqrt(phat * (1 - phat) / samples + z * z / (4 * samples * samples))
    lo = 0.0 if hits == 0 else max(0.0, center - half)
    hi = 1.0 if hits == samples else min(1.0, center + half)
    return lo, hi


@dataclass
class StatResult:
    statistic: str
    count: int
    samples: int
    ci_low: float | None = None
    ci_high: float | None = None

    @property
    def density(self) -> float:
        return self.count / self.samples


@dataclass
class CensusRecord:
    spec: CensusSpec
    results: list[StatResult]
    uncertified: int | None = None
    wall_time: float = 0.0
    chunks: int = 0
    extra: dict = field(default_factory=dict)

    def __getitem__(self, statistic: str) -> StatResult:
        for r in self.results:
            if r.statistic == statistic:
                return r
        raise KeyError(statistic)

    def count(self, statistic: str) -> int:
        return self[statistic].count

    @property
    def total(self) -> int:
        return self.spec.total

    def csv_rows(self) -> list[tuple]:
        spec = self.spec
        rows = []
        for r in self.results:
            if spec.mode == EXHAUSTIVE:
                lo = hi = seed = ""
            else:
                lo = f"{r.ci_low:.{DENSITY_DIGITS}f}"
                hi = f"{r.ci_high:.{DENSITY_DIGITS}f}"
                seed = str(spec.seed)
            rows.append((spec.n, spec.T, r.statistic, spec.mode, r.count, r.samples, lo, hi, seed))
        return rows

    def to_csv(self, header: bool = True) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if header:
            w.writerow(CSV_HEADER)
        w.writerows(self.csv_rows())
        return buf.getvalue()

    def json_lines(self) -> list[dict]:
        out = []
        for row, r in zip(self.csv_rows(), self.results):
            rec = dict(zip(CSV_HEADER, row))
            rec["count_or_hits"] = r.count
            rec["samples"] = r.samples
            if self.spec.mode != EXHAUSTIVE:
                rec["density"] = round(r.density, DENSITY_DIGITS)
                rec["seed"] = self.spec.seed
            out.append(rec)
        return out

    def to_json(self) -> dict:
        return {
            "spec": self.spec.to_dict(),
            "rows": self.json_lines(),
            "uncertified": self.uncertified,
            "wall_time": self.wall_time,
            "chunks": self.chunks,
        }


def build_record(spec: CensusSpec, counts: dict, wall_time: float = 0.0, chunks: int = 0) -> CensusRecord:
    total = counts["total"]
    assert total == spec.total, f"merged {total} matrices, expected {spec.total}"
    names = list(spec.statistics)
    if "nonsn" in names:
        names.append("uncertified")
    results = []
    for s in names:
        c = counts.get(s, 0)
        if spec.mode == EXHAUSTIVE:
            results.append(StatResult(s, c, total))
        else:
            lo, hi = wilson_interval(c, total)
            results.append(StatResult(s, c, total, lo, hi))
    rec = CensusRecord(spec, results, counts.get("uncertified") if "nonsn" in spec.statistics else None,
                       wall_time, chunks)
    _check_containment(rec)
    return rec


def _check_containment(rec: CensusRecord) -> None:
    have = {r.statistic: r.count for r in rec.results}
    for name, c in have.items():
        assert 0 <= c <= rec.total, f"{name} count {c} out of range"
    if "nonsn" in have and "reducible" in have:
        assert have["nonsn"] >= have["reducible"]
    if "reducible" in have and "inteig" in have and rec.spec.n >= 2:
        assert have["reducible"] >= have["inteig"]
    if "factordeg:1" in have and "inteig" in have:
        assert have["factordeg:1"] == have["inteig"]


def dumps_json_lines(records) -> str:
    return "".join(json.dumps(r, sort_keys=True) + "\n" for rec in records for r in rec.json_lines())
