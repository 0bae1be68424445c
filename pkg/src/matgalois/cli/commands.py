"""One runner per subcommand. Each returns an Outcome; main.py does the I/O."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .. import ddsieve, fpcensus, galois, latticelab
from ..census import CensusSpec, fit_power_log, log_slope, run_census, split_stats
from ..census.engine import CensusInterrupted, read_checkpoint
from ..exactalg import FpPoly, IntMatrix, IntPoly
from ..exactalg.primes import is_prime
from ..fpcensus.selectors import FpSubspace, SelectorSpec, selector_g_rank_support, selector_report
from .config import ConfigError, ExperimentConfig


@dataclass
class Outcome:
    csv_text: str
    json_records: list = field(default_factory=list)
    criteria: dict = field(default_factory=dict)
    report: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(self.criteria.values())


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _range(text: str, name: str) -> tuple[float, float]:
    try:
        lo, hi = (float(v) for v in text.split(","))
    except ValueError:
        raise ConfigError(f"{name}: expected 'lo,hi', got {text!r}") from None
    return lo, hi


# -- census ------------------------------------------------------------------

def census_spec(cfg: ExperimentConfig, p: dict) -> CensusSpec:
    try:
        return CensusSpec(
            n=p["n"],
            T=p["t"],
            mode=p["mode"],
            statistics=tuple(split_stats(p["stats"])),
            samples=p["samples"],
            seed=cfg.seed,
            prime_budget=p["prime_budget"],
            chunk_size=p["chunk_size"],
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def run_census_command(cfg: ExperimentConfig, p: dict) -> Outcome:
    spec = census_spec(cfg, p)
    try:
        rec = run_census(
            spec,
            workers=cfg.workers,
            checkpoint=cfg.checkpoint,
            max_chunks=p["max_chunks"],
            config=cfg.to_dict(),
        )
    except AssertionError as exc:
        return Outcome("", criteria={"census invariants": False}, report=[f"assertion failed: {exc}"])
    except CensusInterrupted as exc:
        raise Interrupted(f"{exc}; continue with: matgalois resume --checkpoint {cfg.checkpoint}") from None
    lines = [f"{r.statistic}: {r.count} / {r.samples}" for r in rec.results]
    return Outcome(rec.to_csv(), rec.json_lines(), {"census invariants": True}, lines)


class Interrupted(RuntimeError):
    pass


def run_resume(cfg: ExperimentConfig, p: dict) -> tuple[Outcome, ExperimentConfig]:
    if not cfg.checkpoint:
        raise ConfigError("checkpoint: resume needs --checkpoint PATH")
    header, _ = read_checkpoint(cfg.checkpoint)
    stored = ExperimentConfig.from_dict(header.get("config") or {"command": "census"})
    stored.checkpoint = cfg.checkpoint
    if cfg.out is not None:
        stored.out = cfg.out
    if cfg.workers is not None:
        stored.workers = cfg.workers
    spec = CensusSpec.from_dict(header["spec"])
    rec = run_census(spec, workers=stored.workers, checkpoint=cfg.checkpoint, config=header.get("config"))
    lines = [f"{r.statistic}: {r.count} / {r.samples}" for r in rec.results]
    return Outcome(rec.to_csv(), rec.json_lines(), {"census invariants": True}, lines), stored


# -- fit -----------------------------------------------------------------------

def _points_from_csv(path: str, statistic: str, density: bool):
    pts = []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            if row["statistic"] != statistic:
                continue
            c, s = int(row["count_or_hits"]), int(row["samples"])
            pts.append((int(row["T"]), c / s if density else c))
    return sorted(pts)


def run_fit(cfg: ExperimentConfig, p: dict) -> Outcome:
    if p["points"]:
        try:
            pts = [(int(a), float(b)) for a, b in (item.split(":") for item in p["points"].split(","))]
        except ValueError:
            raise ConfigError(f"points: expected 'T:value,...', got {p['points']!r}") from None
    elif p["input"]:
        pts = _points_from_csv(p["input"], p["statistic"], bool(p["density"]))
    else:
        raise ConfigError("input: fit needs --input CSV or --points")
    try:
        res = fit_power_log(pts)
    except ValueError as exc:
        raise ConfigError(f"points: {exc}") from None
    slope = log_slope(pts)
    crit = {}
    if p["a_range"]:
        lo, hi = _range(p["a_range"], "a_range")
        crit[f"exponent a in [{lo}, {hi}]"] = lo <= res.a <= hi
    if p["slope_range"]:
        lo, hi = _range(p["slope_range"], "slope_range")
        crit[f"log-log slope in [{lo}, {hi}]"] = lo <= slope <= hi
    header = ("statistic", "a", "b", "c", "residual", "points_used", "loglog_slope")
    row = (p["statistic"], f"{res.a:.6f}", res.b, f"{res.c:.6g}", f"{res.residual:.3e}", res.points_used, f"{slope:.6f}")
    rec = dict(zip(header, (p["statistic"], res.a, res.b, res.c, res.residual, res.points_used, slope)))
    rec["points"] = pts
    return Outcome(_csv(header, [row]), [rec], crit, [f"a = {res.a:.4f}, b = {res.b}, slope = {slope:.4f}"])


# -- galois ----------------------------------------------------------------------

def run_galois(cfg: ExperimentConfig, p: dict) -> Outcome:
    if bool(p["poly"]) == bool(p["matrix"]):
        raise ConfigError("poly: give exactly one of --poly or --matrix")
    try:
        if p["poly"]:
            f = IntPoly.parse(p["poly"])
            label = galois.classify_poly(f, p["prime_budget"])
            source = f.dumps()
        else:
            A = IntMatrix.parse(p["matrix"])
            label = galois.classify_charpoly(A, p["prime_budget"])
            source = A.dumps()
    except ValueError as exc:
        raise ConfigError(f"{'poly' if p['poly'] else 'matrix'}: {exc}") from None
    header = ("input", "verdict", "group", "degrees", "reason")
    degs = "" if label.degrees is None else " ".join(map(str, label.degrees))
    row = (source, label.verdict, label.group or "", degs, label.reason or "")
    rec = {"input": source, **label.to_record()}
    return Outcome(_csv(header, [row]), [rec], {}, [f"{source}: {label.verdict} {label.group or ''}".rstrip()])


# -- verify -----------------------------------------------------------------------

def _need_prime(value: int, name: str) -> None:
    if not is_prime(value):
        raise ConfigError(f"{name}: {value} is not prime")


def run_verify_reiner(cfg: ExperimentConfig, p: dict) -> Outcome:
    n, q = p["n"], p["q"]
    _need_prime(q, "q")
    try:
        table = fpcensus.charpoly_fiber_table(n, q)
    except fpcensus.GuardError as exc:
        raise ConfigError(f"q: {exc}; lower n or q") from None
    devs = fpcensus.reiner_deviations(n, q)
    worst = max(abs(d) for d in devs.values())
    rows = [(q, n, IntPoly(f).dumps(), table[f], _frac(devs[f])) for f in sorted(table)]
    crit = {"fiber counts sum to q^(n^2)": sum(table.values()) == q ** (n * n)}
    if n == 2:
        crit["max deviation equals 1/q"] = worst == Fraction(1, q)
    else:
        crit["max deviation at most 3/q"] = worst <= Fraction(3, q)
    recs = [dict(zip(("q", "n", "f", "count", "deviation"), r)) for r in rows]
    return Outcome(
        _csv(("q", "n", "f", "count", "deviation"), rows),
        recs,
        crit,
        [f"max |count/q^(n^2-n) - 1| = {_frac(worst)}"],
    )


def _default_g(p: int, k: int) -> FpPoly:
    if k == 1:
        return FpPoly([-1, 1], p)
    for low in product(range(p), repeat=k):
        g = FpPoly(list(low) + [1], p)
        if g.is_squarefree():
            return g
    raise ConfigError("g: no squarefree polynomial found")


def _companion_mod_p(g: FpPoly) -> tuple:
    k = g.degree
    rows = [[0] * k for _ in range(k)]
    for i in range(1, k):
        rows[i][i - 1] = 1
    for i in range(k):
        rows[i][k - 1] = -g.coeffs[i] % g.p
    return tuple(map(tuple, rows))


def run_verify_dft(cfg: ExperimentConfig, p: dict) -> Outcome:
    pr, n, k = p["p"], p["n"], p["k"]
    _need_prime(pr, "p")
    if not 1 <= k <= n:
        raise ConfigError("k: need 1 <= k <= n")
    if pr ** (n * n) > 10**6:
        raise ConfigError(f"p: p^(n^2) = {pr ** (n * n)} exceeds the dense transform limit 10^6")
    if p["g"]:
        g = FpPoly(IntPoly.parse(p["g"]).coeffs, pr)
        if g.degree != k or not g.is_monic() or not g.is_squarefree():
            raise ConfigError("g: must be monic squarefree of degree k mod p")
    else:
        g = _default_g(pr, k)
    sub = FpSubspace(pr, tuple(tuple(int(i == j) for j in range(n)) for i in range(k)))
    spec = SelectorSpec(sub, _companion_mod_p(g))
    sel = selector_report(spec)
    rk = selector_g_rank_support(g, n)
    crit = {
        "selector transform at 0 equals p^(-kn)": sel.zero_value == Fraction(1, pr ** (k * n))
        and abs(sel.zero_value_float - float(sel.zero_value)) < 1e-12,
        "support is {B : col(B) in subspace}": sel.column_orientation_match,
        "support dimension equals kn": sel.support_dimension == k * n,
        "Parseval within 1e-12": sel.parseval_error <= 1e-12,
        "inverse transform reproduces selector": sel.inversion_error <= 1e-9,
        "Psi_g transform vanishes for rank > k": rk.vanishes_above_k,
        "Psi_g >= 1 where g divides char poly": rk.min_psi_on_divisible >= 1,
        "pair count matches orbit-stabilizer": rk.pairs == rk.expected_pairs,
    }
    header = ("p", "n", "k", "rank", "matrices", "max_abs_coefficient")
    rows = [(pr, n, k, r, rk.count_by_rank[r], f"{rk.max_by_rank[r]:.6e}") for r in sorted(rk.count_by_rank)]
    report = [
        f"g = {IntPoly(g.coeffs).dumps()} mod {pr}",
        f"selector transform at 0: {_frac(sel.zero_value)} (float {sel.zero_value_float:.15g})",
        f"support size {sel.support_size}, dimension {sel.support_dimension}; "
        f"column orientation {'matches' if sel.column_orientation_match else 'differs'}, "
        f"row orientation {'matches' if sel.row_orientation_match else 'differs'}",
        f"Parseval error {sel.parseval_error:.2e}; (subspace, C) pairs {rk.pairs} (expected {rk.expected_pairs})",
    ]
    recs = [dict(zip(header, r)) for r in rows]
    recs.append({"selector": {k2: (str(v) if isinstance(v, Fraction) else v) for k2, v in vars(sel).items()}})
    return Outcome(_csv(header, rows), recs, crit, report)


def run_verify_dd(cfg: ExperimentConfig, p: dict) -> Outcome:
    n = p["n"]
    if not 2 <= n <= 6:
        raise ConfigError("n: need 2 <= n <= 6")
    seed = 0 if cfg.seed is None else cfg.seed
    rep = ddsieve.dd_suite(n, p["trials"], seed, T=p["t"])
    crit = {
        "invariance under A -> A + mS": not rep.invariance_failures,
        "leading coefficient equals disc chi_S": not rep.leading_failures,
        "specialization matches disc of char poly": not rep.specialization_failures,
        "canonical representative mod ZS": not rep.canonical_failures,
        "index >= 2 implies p | DD": not rep.violations,
    }
    rows = [
        ("invariance", len(rep.invariance_failures)),
        ("leading_term", len(rep.leading_failures)),
        ("specialization", len(rep.specialization_failures)),
        ("canonical_rep", len(rep.canonical_failures)),
        ("divisibility_violated", rep.divisibility[ddsieve.VIOLATED]),
        ("divisibility_holds", rep.divisibility[ddsieve.HOLDS]),
        ("divisibility_vacuous", rep.divisibility[ddsieve.VACUOUS]),
    ]
    report = [f"{n}x{n}, {p['trials']} trials, seed {seed}"]
    for A, m in rep.invariance_failures:
        report.append(f"invariance counterexample m={m}: {A.dumps()}")
    for A in rep.leading_failures + rep.canonical_failures:
        report.append(f"counterexample: {A.dumps()}")
    for A, t in rep.specialization_failures:
        report.append(f"specialization counterexample t={t}: {A.dumps()}")
    for B, pr in rep.violations:
        report.append(f"FALSIFICATION: index >= 2 mod {pr} but {pr} does not divide DD for {B.dumps()}")
    header = ("check", "count")
    return Outcome(_csv(header, rows), [dict(zip(header, r)) for r in rows], crit, report)


def run_verify_pinch(cfg: ExperimentConfig, p: dict) -> Outcome:
    T = p["t"]
    if T < 2:
        raise ConfigError("t: need T >= 2")
    vecs, A = latticelab.example_n6k3(T)
    n, k = 6, 3
    L = latticelab.PrimLattice(n, vecs)
    rb = latticelab.reduce_basis(L)
    c = p["c"] if p["c"] is not None else 2**k
    rep = latticelab.pinch_points(rb.sq_lengths, T, c, n=n)
    bound = latticelab.g_count_bound(n, k, rep)
    dim = latticelab.invariant_space_dim(L)
    G = latticelab.restriction_matrix(A, rb)
    ratios_ok = rb.sq_lengths[0] == 1 and T * T <= rb.sq_lengths[1] <= 2 * T * T and T**4 <= rb.sq_lengths[2] <= 2 * T**4
    crit = {
        "A preserves the lattice": L.is_invariant(A),
        "reduced lengths have profile (1, T, T^2)": ratios_ok,
        "pinch set is {(3,1)}": rep.pinches == frozenset({(3, 1)}),
        "exponent bound is 10": bound == 10,
        "exponent at most kn - n + 1 = 13": bound <= k * n - n + 1,
        "invariant space dimension 27": dim == 27,
        "char poly splits over lattice and complement": latticelab.check_charpoly_split(A, L),
    }
    header = ("i", "vector", "sq_length")
    rows = [(i + 1, json.dumps(list(v)).replace(" ", ""), rb.sq_lengths[i]) for i, v in enumerate(rb.vectors)]
    report = [
        f"T = {T}, c = {c}",
        f"pinch set {sorted(rep.pinches)}, row counts {list(rep.row_counts)}, exponent {bound}",
        f"restriction G = {G.dumps()}",
        f"invariant space dimension {dim}",
    ]
    recs = [dict(zip(header, r)) for r in rows]
    recs.append({"pinches": sorted(rep.pinches), "exponent": bound, "c": c, "invariant_dim": dim})
    return Outcome(_csv(header, rows), recs, crit, report)


def run_verify_index(cfg: ExperimentConfig, p: dict) -> Outcome:
    try:
        primes = [int(x) for x in p["primes"].split(",")]
    except ValueError:
        raise ConfigError(f"primes: expected a comma list of integers, got {p['primes']!r}") from None
    for q in primes:
        _need_prime(q, "primes")
    rows, bound_ok, exact_ok = [], True, True
    for q in primes:
        for n in range(1, p["n"] + 1):
            for k in range(1, n):
                frac = fpcensus.index_tail_fraction(q, n, k)
                ok = frac <= Fraction(3, q**k)
                bound_ok &= ok
                rows.append((q, n, k, _frac(frac), _frac(Fraction(3, q**k)), int(ok)))
        if q > 2 and p["n"] >= 2:
            exact_ok &= fpcensus.index_tail_fraction(q, 2, 1) == Fraction(1, q)
    crit = {"tail fraction at most 3 p^-k": bound_ok, "n=2, k=1 tail equals 1/p for odd p": exact_ok}
    header = ("p", "n", "k", "fraction", "bound", "ok")
    return Outcome(_csv(header, rows), [dict(zip(header, r)) for r in rows], crit, [f"{len(rows)} cases checked"])


RUNNERS = {
    "census": run_census_command,
    "fit": run_fit,
    "galois": run_galois,
    "verify reiner": run_verify_reiner,
    "verify dft": run_verify_dft,
    "verify dd": run_verify_dd,
    "verify pinch": run_verify_pinch,
    "verify index": run_verify_index,
}

