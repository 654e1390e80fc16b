"""Exhaustive scan of small chord diagrams for torsion in independence complexes.

Records are appended to a line-delimited JSON checkpoint keyed by the
canonical word, so an interrupted scan resumes where it stopped.  Parallel
runs split the word space by prefix; each worker appends to its own shard
file and the shards are folded into the checkpoint in sorted order.
"""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

from khadequacy import _kernels
from khadequacy.chordgraph import ChordDiagram, enumerate_words, interlacement, is_bipartite
from khadequacy.homology import reduced_homology, wedge_profile
from khadequacy.simplicial import independence_complex

MAX_CHORDS = 8
PREFIX_LENGTH = 4


class ScanError(ValueError):
    pass


class CheckpointError(ScanError):
    pass


def enumerate_chord_diagrams(n: int) -> Iterator[ChordDiagram]:
    """Each chord diagram with n chords once, as its canonical word."""
    if not 1 <= n <= MAX_CHORDS:
        raise ScanError(f"chord count must be in 1..{MAX_CHORDS}, got {n}")
    yield from enumerate_words(n)


@dataclass(frozen=True)
class ScanRecord:
    word: str
    chords: int
    bipartite: bool
    homology: dict[str, str]
    torsion: bool
    wedge_profile: list[int] | None
    euler_ok: bool
    wall_time: float = 0.0

    def payload(self) -> dict:
        """Everything except wall time; this is what determinism compares."""
        return {
            "word": self.word,
            "chords": self.chords,
            "bipartite": self.bipartite,
            "homology": self.homology,
            "torsion": self.torsion,
            "wedge_profile": self.wedge_profile,
            "euler_ok": self.euler_ok,
        }

    def to_line(self) -> str:
        body = {**self.payload(), "wall_time": round(self.wall_time, 6)}
        text = _canonical_json(body)
        digest = hashlib.sha256(text.encode()).hexdigest()
        return _canonical_json({"record": body, "sha256": digest}) + "\n"

    @classmethod
    def from_line(cls, line: str) -> ScanRecord:
        data = json.loads(line)
        body = data["record"]
        if hashlib.sha256(_canonical_json(body).encode()).hexdigest() != data["sha256"]:
            raise CheckpointError(f"record hash mismatch for {body.get('word')!r}")
        return cls(**body)


def _canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def scan_word(word: ChordDiagram) -> ScanRecord:
    start = time.perf_counter()
    g = interlacement(word)
    x = independence_complex(g)
    h = reduced_homology(x)
    profile = wedge_profile(h)
    return ScanRecord(
        word=str(word),
        chords=len(word),
        bipartite=is_bipartite(g),
        homology={str(k): s for k, s in h.to_strings().items()},
        torsion=h.has_torsion,
        wedge_profile=None if profile is None else list(profile),
        euler_ok=h.euler_characteristic() == x.reduced_euler_characteristic(),
        wall_time=time.perf_counter() - start,
    )


# ---------------------------------------------------------------------------
# Checkpoint files
# ---------------------------------------------------------------------------

def read_checkpoint(path: str | Path, repair: bool = True) -> dict[str, ScanRecord]:
    """Load records keyed by word.

    A damaged final line (an interrupted write) is dropped and, with
    ``repair``, cut from the file.  Damage anywhere else raises.
    """
    path = Path(path)
    if not path.exists():
        return {}
    raw = path.read_bytes()
    lines = raw.split(b"\n")
    records: dict[str, ScanRecord] = {}
    good_bytes = 0
    for k, line in enumerate(lines):
        last = k == len(lines) - 1
        if not line:
            if not last:
                raise CheckpointError(f"{path}: blank line {k + 1}")
            continue
        try:
            if last:
                raise ValueError("unterminated line")
            rec = ScanRecord.from_line(line.decode())
        except (ValueError, KeyError, TypeError) as exc:
            if last:
                if repair:
                    with open(path, "r+b") as fh:
                        fh.truncate(good_bytes)
                break
            if isinstance(exc, CheckpointError):
                raise CheckpointError(f"{path}: line {k + 1}: {exc}") from None
            raise CheckpointError(f"{path}: line {k + 1} is corrupt") from None
        if rec.word in records and records[rec.word].payload() != rec.payload():
            raise CheckpointError(f"{path}: conflicting records for {rec.word!r}")
        records[rec.word] = rec
        good_bytes += len(line) + 1
    return records


def _append(path: Path, records: list[ScanRecord]) -> None:
    with open(path, "a", encoding="utf-8") as fh:
        for rec in records:
            fh.write(rec.to_line())
        fh.flush()
        os.fsync(fh.fileno())


def _shards(checkpoint: Path) -> list[Path]:
    return sorted(checkpoint.parent.glob(checkpoint.name + ".shard*"))


def merge_shards(checkpoint: Path) -> dict[str, ScanRecord]:
    """Fold shard files into the checkpoint in (chords, word) order."""
    done = read_checkpoint(checkpoint)
    new: dict[str, ScanRecord] = {}
    shards = _shards(checkpoint)
    for shard in shards:
        for word, rec in read_checkpoint(shard).items():
            if word not in done:
                new[word] = rec
    _append(checkpoint, sorted(new.values(), key=lambda r: (r.chords, r.word)))
    for shard in shards:
        shard.unlink()
    done.update(new)
    return done


# ---------------------------------------------------------------------------
# Scanning
# ---------------------------------------------------------------------------

def word_prefixes(n: int, length: int = PREFIX_LENGTH) -> list[tuple[int, ...]]:
    """First-occurrence-normal prefixes partitioning the n-chord word space."""
    length = min(length, 2 * n)
    out: list[tuple[int, ...]] = []

    def rec(prefix: tuple[int, ...]) -> None:
        if len(prefix) == length:
            out.append(prefix)
            return
        for x in range(n):
            nxt = prefix + (x,)
            if _kernels.python_kernels._prefix_state(n, nxt) is not None:
                rec(nxt)

    rec(())
    return out


def _scan_partition(n: int, prefixes: list[tuple[int, ...]], bipartite_only: bool,
                    shard: str, skip: frozenset[str], stop_after: int | None) -> int:
    done = set(skip) | set(read_checkpoint(shard))
    count = 0
    for prefix in prefixes:
        for code in _kernels.canonical_words(n, prefix):
            if stop_after is not None and count >= stop_after:
                return count
            word = ChordDiagram(tuple(str(x) for x in code))
            key = str(word)
            if key in done:
                continue
            if bipartite_only and not is_bipartite(interlacement(word)):
                continue
            _append(Path(shard), [scan_word(word)])
            done.add(key)
            count += 1
    return count


def torsion_scan(n_max: int, bipartite_only: bool = False,
                 checkpoint: str | Path | None = None, jobs: int = 1,
                 stop_after: int | None = None) -> dict:
    """Scan every chord diagram with 1..n_max chords; return the summary.

    ``stop_after`` caps the number of new records per worker, which is how
    an interruption is simulated.
    """
    if not 1 <= n_max <= MAX_CHORDS:
        raise ScanError(f"n_max must be in 1..{MAX_CHORDS}, got {n_max}")
    if jobs < 1:
        raise ScanError("jobs must be >= 1")
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(checkpoint) if checkpoint is not None else Path(tmp) / "scan.jsonl"
        path.parent.mkdir(parents=True, exist_ok=True)
        path.touch()
        done = merge_shards(path)
        skip = frozenset(done)
        tasks = []
        for n in range(1, n_max + 1):
            prefixes = word_prefixes(n)
            for k in range(jobs):
                part = prefixes[k::jobs]
                if part:
                    tasks.append((n, part, bipartite_only, f"{path}.shard{k:03d}",
                                  skip, stop_after))
        if jobs == 1:
            for t in tasks:
                _scan_partition(*t)
        else:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                for f in [pool.submit(_scan_partition, *t) for t in tasks]:
                    f.result()
        records = merge_shards(path)
        return summarize(records, n_max, bipartite_only)


def summarize(records: dict[str, ScanRecord], n_max: int, bipartite_only: bool) -> dict:
    per_n = {}
    for n in range(1, n_max + 1):
        recs = [r for r in records.values() if r.chords == n]
        scanned = [r for r in recs if r.bipartite or not bipartite_only]
        per_n[str(n)] = {
            "classes": len(_kernels.canonical_words(n)),
            "bipartite": sum(r.bipartite for r in recs) if not bipartite_only else len(scanned),
            "scanned": len(scanned),
            "torsion_hits": sum(r.torsion for r in scanned),
        }
    considered = sorted((r for r in records.values() if r.chords <= n_max
                         and (r.bipartite or not bipartite_only)),
                        key=lambda r: (r.chords, r.word))
    return {
        "schema": 1,
        "n_max": n_max,
        "bipartite_only": bipartite_only,
        "per_n": per_n,
        "findings": [r.payload() for r in considered if r.torsion],
        "euler_failures": [r.word for r in considered if not r.euler_ok],
        "non_wedge": [r.word for r in considered if r.wedge_profile is None],
    }


def record_set(path: str | Path) -> list[str]:
    """Sorted canonical payloads of a checkpoint, for determinism checks."""
    return sorted(_canonical_json(r.payload()) for r in read_checkpoint(path).values())
