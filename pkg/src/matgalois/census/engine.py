"""Chunked census over the box ||A|| <= T, with checkpoint/resume.

A chunk is a contiguous range of matrix indices (odometer order for the
exhaustive box, sample indices for Monte Carlo). Chunk results are plain
dicts of integer counts, merged by addition, so the final record does not
depend on chunk size, worker count or completion order.
"""

from __future__ import annotations

import json
import logging
import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from .. import __version__
from . import kernels
from .records import CensusRecord, build_record
from .rng import box_entries, sample_entries
from .spec import EXHAUSTIVE, CensusSpec

log = logging.getLogger(__name__)

CHECKPOINT_FORMAT = 1
WORKERS_ENV = "MATGALOIS_WORKERS"


class CheckpointError(RuntimeError):
    pass


class CensusInterrupted(RuntimeError):
    """Raised when a run stops early on purpose (``max_chunks``)."""


def default_workers() -> int:
    return int(os.environ.get(WORKERS_ENV, "1"))


# -- per-chunk evaluation ---------------------------------------------------

def chunk_matrices(spec: CensusSpec, chunk_id: int) -> np.ndarray:
    start = chunk_id * spec.chunk_size
    stop = min(spec.total, start + spec.chunk_size)
    if spec.mode == EXHAUSTIVE:
        mats = box_entries(start, stop, spec.n, spec.T)
    else:
        mats = sample_entries(spec.seed, start, stop, spec.n, spec.T)
    if not kernels.fits_int64(spec.n, spec.T):
        mats = mats.astype(object)
    return mats


def _profiles(uniq, root, spec: CensusSpec, need_degrees: bool):
    """Per distinct polynomial: nonsn, uncertified, reducible, degree sets."""
    m = len(uniq)
    n = spec.n
    nonsn = np.zeros(m, dtype=bool)
    uncert = np.zeros(m, dtype=bool)
    reducible = np.zeros(m, dtype=bool)
    degsets = [None] * m
    if n == 1:
        return nonsn, uncert, reducible, [frozenset({1})] * m
    if n <= 3:
        # without an integer root a quadratic or cubic is irreducible
        reducible[:] = root
        if n == 2:
            nonsn[:] = root
        else:
            sq = kernels.is_perfect_square(kernels.cubic_disc(uniq))
            nonsn[:] = root | sq
        degsets = None
        return nonsn, uncert, reducible, degsets
    for i in range(m):
        if root[i] and not need_degrees:
            nonsn[i] = reducible[i] = True
            continue
        prof = kernels.poly_profile(tuple(int(c) for c in uniq[i]), spec.prime_budget)
        nonsn[i], uncert[i], reducible[i], degsets[i] = prof
    return nonsn, uncert, reducible, degsets


def evaluate_chunk(spec: CensusSpec, chunk_id: int) -> dict:
    mats = chunk_matrices(spec, chunk_id)
    n, T = spec.n, spec.T
    coeffs = kernels.char_polys(mats)
    kernels.check_coeff_bound(coeffs, n, T)
    uniq, inverse, mult = kernels.unique_rows(coeffs)
    counts = {"total": int(len(mats))}

    stats = spec.statistics
    needs_root = any(s in ("inteig", "nonsn", "reducible") or s.startswith("factordeg") for s in stats)
    root = kernels.has_integer_root(uniq, n, T) if needs_root else None
    need_profile = any(s in ("nonsn", "reducible") or s.startswith("factordeg") for s in stats)
    need_degrees = any(s.startswith("factordeg:") and s != "factordeg:1" for s in stats)
    if need_profile:
        nonsn, uncert, reducible, degsets = _profiles(uniq, root, spec, need_degrees)

    def total(mask) -> int:
        return int(mult[np.asarray(mask, dtype=bool)].sum())

    for s in stats:
        if s == "singular":
            counts[s] = total(uniq[:, 0] == 0)
        elif s == "inteig":
            counts[s] = total(root)
        elif s == "reducible":
            counts[s] = total(reducible)
        elif s == "nonsn":
            counts[s] = total(nonsn)
            counts["uncertified"] = total(uncert)
        elif s.startswith("factordeg:"):
            k = int(s.split(":")[1])
            if k == 1:
                counts[s] = total(root)
            else:
                counts[s] = total([k in d for d in degsets])
        elif s.startswith("fiber:"):
            target = json.loads(s.split(":", 1)[1])
            mask = np.ones(len(uniq), dtype=bool)
            for i, c in enumerate(target):
                mask &= uniq[:, i] == c
            counts[s] = total(mask)
    return counts


def _evaluate(args):
    spec, chunk_id = args
    return chunk_id, evaluate_chunk(spec, chunk_id)


def merge_counts(parts) -> dict:
    acc = Counter()
    for part in parts:
        acc.update(part)
    return dict(acc)


# -- checkpoint files -------------------------------------------------------

def _header(spec: CensusSpec, config: dict | None) -> dict:
    return {
        "kind": "header",
        "format": CHECKPOINT_FORMAT,
        "version": __version__,
        "spec": spec.to_dict(),
        "n_chunks": spec.n_chunks,
        "config": config or {},
    }


def read_checkpoint(path) -> tuple[dict, dict]:
    """Return (header, {chunk_id: counts}); refuses incompatible or corrupt files."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise CheckpointError(f"cannot read checkpoint {path}: {exc}") from exc
    lines = text.split("\n")
    if lines and lines[-1] != "":
        # an interrupted write leaves an unterminated final line; drop it
        log.warning("dropping unterminated final checkpoint line in %s", path)
    lines = lines[:-1]
    if not lines:
        raise CheckpointError(f"checkpoint {path} has no header")
    records = []
    for lineno, line in enumerate(lines, 1):
        try:
            records.append(json.loads(line))
        except json.JSONDecodeError as exc:
            raise CheckpointError(f"corrupt checkpoint {path}, line {lineno}: {exc.msg}") from exc
    header = records[0]
    if not isinstance(header, dict) or header.get("kind") != "header":
        raise CheckpointError(f"checkpoint {path}: first record is not a header")
    if header.get("format") != CHECKPOINT_FORMAT or header.get("version") != __version__:
        raise CheckpointError(
            f"checkpoint {path} written by version {header.get('version')} "
            f"(format {header.get('format')}); this is {__version__} (format {CHECKPOINT_FORMAT})"
        )
    done: dict[int, dict] = {}
    n_chunks = header["n_chunks"]
    for lineno, rec in enumerate(records[1:], 2):
        try:
            cid = int(rec["chunk_id"])
            counts = {str(k): int(v) for k, v in rec["counts"].items()}
        except (KeyError, TypeError, ValueError) as exc:
            raise CheckpointError(f"corrupt checkpoint {path}, line {lineno}: bad chunk record") from exc
        if not 0 <= cid < n_chunks:
            raise CheckpointError(f"corrupt checkpoint {path}, line {lineno}: chunk id {cid} out of range")
        if cid in done and done[cid] != counts:
            raise CheckpointError(f"corrupt checkpoint {path}: conflicting records for chunk {cid}")
        done[cid] = counts
    return header, done


# -- driver -----------------------------------------------------------------

def run_census(
    spec: CensusSpec,
    workers: int | None = None,
    checkpoint: str | os.PathLike | None = None,
    max_chunks: int | None = None,
    config: dict | None = None,
) -> CensusRecord:
    """Run (or continue) a census.

    With ``checkpoint`` set, completed chunks are appended as JSON lines
    and an existing file with a matching spec is resumed. ``max_chunks``
    stops after that many new chunks by raising ``CensusInterrupted``.
    """
    workers = default_workers() if workers is None else workers
    t0 = time.perf_counter()
    done: dict[int, dict] = {}
    fh = None
    if checkpoint is not None:
        path = Path(checkpoint)
        if path.exists() and path.stat().st_size > 0:
            header, done = read_checkpoint(path)
            if CensusSpec.from_dict(header["spec"]) != spec:
                raise CheckpointError(f"checkpoint {path} belongs to a different census spec")
            _truncate_partial_line(path)
            fh = path.open("a")
        else:
            fh = path.open("w")
            fh.write(json.dumps(_header(spec, config), sort_keys=True) + "\n")
            fh.flush()

    pending = [c for c in range(spec.n_chunks) if c not in done]
    results = dict(done)
    processed = 0
    try:
        for cid, counts in _iterate(spec, pending, workers):
            results[cid] = counts
            if fh is not None:
                fh.write(json.dumps({"chunk_id": cid, "counts": counts}, sort_keys=True) + "\n")
                fh.flush()
            processed += 1
            if max_chunks is not None and processed >= max_chunks and len(results) < spec.n_chunks:
                raise CensusInterrupted(f"stopped after {processed} chunks")
    finally:
        if fh is not None:
            fh.close()
    merged = merge_counts(results[c] for c in sorted(results))
    return build_record(spec, merged, time.perf_counter() - t0, spec.n_chunks)


def _iterate(spec, pending, workers):
    if workers <= 1 or len(pending) <= 1:
        for cid in pending:
            yield cid, evaluate_chunk(spec, cid)
        return
    batch = max(1, min(64, len(pending) // (4 * workers)))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(_evaluate, [(spec, c) for c in pending], chunksize=batch)


def _truncate_partial_line(path: Path) -> None:
    data = path.read_bytes()
    if data and not data.endswith(b"\n"):
        path.write_bytes(data[: data.rfind(b"\n") + 1])


def resume_census(checkpoint, workers: int | None = None) -> tuple[CensusRecord, dict]:
    """Finish the run recorded in ``checkpoint``; returns (record, stored config)."""
    header, _ = read_checkpoint(checkpoint)
    spec = CensusSpec.from_dict(header["spec"])
    return run_census(spec, workers=workers, checkpoint=checkpoint), header.get("config", {})


# -- convenience wrappers ---------------------------------------------------

def _spec(n, T, stats, mode, samples, seed, **kw) -> CensusSpec:
    return CensusSpec(n=n, T=T, mode=mode, statistics=tuple(stats), samples=samples, seed=seed, **kw)


def count_integer_eigenvalue(n, T, mode=EXHAUSTIVE, samples=None, seed=None, **kw) -> CensusRecord:
    workers = kw.pop("workers", None)
    return run_census(_spec(n, T, ["inteig"], mode, samples, seed, **kw), workers=workers)


def count_singular(n, T, mode=EXHAUSTIVE, samples=None, seed=None, **kw) -> CensusRecord:
    workers = kw.pop("workers", None)
    return run_census(_spec(n, T, ["singular"], mode, samples, seed, **kw), workers=workers)


def count_factor_degree(n, k, T, mode=EXHAUSTIVE, samples=None, seed=None, **kw) -> CensusRecord:
    if not 1 <= k <= n // 2:
        raise ValueError(f"k={k} must satisfy 1 <= k <= n/2")
    workers = kw.pop("workers", None)
    return run_census(_spec(n, T, [f"factordeg:{k}"], mode, samples, seed, **kw), workers=workers)
