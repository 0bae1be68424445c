"""Census configuration and statistic names."""

from __future__ import annotations

from dataclasses import asdict, dataclass

from ..exactalg.intpoly import IntPoly
from ..galois import DEFAULT_PRIME_BUDGET

EXHAUSTIVE = "exhaustive"
MONTECARLO = "montecarlo"
EXHAUSTIVE_LIMIT = 10**9

# statistic keywords; "factordeg:k" and "fiber:[c0,...,1]" carry a parameter
SIMPLE_STATS = ("nonsn", "reducible", "inteig", "singular")
STAT_ALIASES = {
    "nonsn": "nonsn",
    "non_sn": "nonsn",
    "reducible": "reducible",
    "inteig": "inteig",
    "integer_eigenvalue": "inteig",
    "singular": "singular",
}


class CensusGuardError(ValueError):
    pass


def parse_stat(text: str) -> str:
    text = text.strip()
    low = text.lower()
    if low in STAT_ALIASES:
        return STAT_ALIASES[low]
    if low.startswith("factordeg:") or low.startswith("factordeg"):
        k = int(low.split(":", 1)[1] if ":" in low else low[len("factordeg"):])
        return f"factordeg:{k}"
    if low.startswith("fiber:"):
        return "fiber:" + IntPoly.parse(text.split(":", 1)[1]).dumps()
    raise ValueError(f"unknown statistic {text!r}")


def split_stats(text: str) -> list[str]:
    """Split a comma list, keeping fiber coefficient brackets intact."""
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "," and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    if cur.strip():
        out.append(cur)
    return [parse_stat(s) for s in out]


@dataclass(frozen=True)
class CensusSpec:
    n: int
    T: int
    mode: str = EXHAUSTIVE
    statistics: tuple = ("inteig",)
    samples: int | None = None
    seed: int | None = None
    prime_budget: int = DEFAULT_PRIME_BUDGET
    chunk_size: int = 10**6

    def __post_init__(self):
        object.__setattr__(self, "statistics", tuple(parse_stat(s) for s in self.statistics))
        self.validate()

    @property
    def box_size(self) -> int:
        return (2 * self.T + 1) ** (self.n * self.n)

    @property
    def total(self) -> int:
        return self.box_size if self.mode == EXHAUSTIVE else self.samples

    @property
    def n_chunks(self) -> int:
        return -(-self.total // self.chunk_size)

    def validate(self) -> None:
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not isinstance(self.T, int) or self.T < 0:
            raise ValueError("T must be a non-negative integer")
        if self.chunk_size < 1:
            raise ValueError("chunk_size must be >= 1")
        if self.mode == EXHAUSTIVE:
            if self.box_size > EXHAUSTIVE_LIMIT:
                raise CensusGuardError(
                    f"exhaustive census of (2T+1)^(n^2) = {self.box_size} matrices exceeds "
                    f"{EXHAUSTIVE_LIMIT}; use --mode montecarlo --samples N --seed S"
                )
        elif self.mode == MONTECARLO:
            if self.samples is None or self.samples < 1:
                raise ValueError("Monte Carlo mode needs samples >= 1")
            if self.seed is None:
                raise ValueError("Monte Carlo mode needs a seed")
        else:
            raise ValueError(f"unknown mode {self.mode!r}")
        for s in self.statistics:
            if s.startswith("factordeg:"):
                k = int(s.split(":")[1])
                if not 1 <= k <= self.n // 2:
                    raise ValueError(f"factor degree k={k} outside 1..n/2 for n={self.n}")
            if s.startswith("fiber:"):
                f = IntPoly.parse(s.split(":", 1)[1])
                if not f.is_monic() or f.degree != self.n:
                    raise ValueError(f"fiber polynomial must be monic of degree {self.n}")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["statistics"] = list(self.statistics)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> CensusSpec:
        d = dict(d)
        d["statistics"] = tuple(d["statistics"])
        return cls(**d)
