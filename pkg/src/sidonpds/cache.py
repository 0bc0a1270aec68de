"""On-disk cache of Singer perfect difference sets plus JSONL scan records.

Layout under a data root (flag, SIDONPDS_DATA_ROOT, or ./data):

    pds_cache/pds_q{q}.json         one entry per prime power q
    size{k}_N{N}_qmax{Q}_fast.jsonl one line per enumerated Sidon set

Cache entries are written with a fixed key order and sorted residues so a
rebuild produces byte-identical files.  Every load re-verifies the perfect
difference property; a file that fails verification raises instead of being
silently skipped, since a scan with gaps would weaken non-extension claims.
Writes go through a temp file and rename, so a crash never leaves a torn
entry behind.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

from .fields import is_prime_power
from .sidon import Pds, verify_pds
from .singer import singer_pds_trace

DATA_ROOT_ENV = "SIDONPDS_DATA_ROOT"


class CacheIntegrityError(Exception):
    """A cache file exists but its contents fail validation."""


@dataclass(frozen=True)
class PdsCacheEntry:
    q: int
    v: int
    elems: tuple[int, ...]
    method: str

    def as_pds(self) -> Pds:
        return Pds(self.v, self.elems)


@dataclass(frozen=True)
class EnumerationRecord:
    """Classification of one enumerated Sidon set up to the scan bound q_max."""

    elems: tuple[int, ...]
    extends: bool
    q_witness: int | None
    q_max: int


def resolve_data_root(data_root=None) -> Path:
    if data_root is not None:
        return Path(data_root)
    env = os.environ.get(DATA_ROOT_ENV)
    if env:
        return Path(env)
    return Path("data")


def pds_path(q: int, data_root=None) -> Path:
    return resolve_data_root(data_root) / "pds_cache" / f"pds_q{q}.json"


def enumeration_path(n_max: int, size: int, q_max: int, data_root=None) -> Path:
    return resolve_data_root(data_root) / f"size{size}_N{n_max}_qmax{q_max}_fast.jsonl"


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _entry_bytes(entry: PdsCacheEntry) -> str:
    obj = {"q": entry.q, "v": entry.v, "method": entry.method, "B": list(entry.elems)}
    return json.dumps(obj) + "\n"


def write_pds(entry: PdsCacheEntry, data_root=None) -> Path:
    path = pds_path(entry.q, data_root)
    _atomic_write(path, _entry_bytes(entry))
    return path


def load_pds(q: int, data_root=None) -> PdsCacheEntry | None:
    """Load and re-verify the cached entry for q; None if absent.

    Corrupt or inconsistent files raise CacheIntegrityError; a missing file
    is the only silent outcome.
    """
    path = pds_path(q, data_root)
    if not path.exists():
        return None
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise CacheIntegrityError(f"{path}: not valid JSON ({exc})") from exc
    try:
        entry = PdsCacheEntry(
            q=int(data["q"]),
            v=int(data["v"]),
            elems=tuple(int(x) for x in data["B"]),
            method=str(data.get("method", "")),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise CacheIntegrityError(f"{path}: malformed entry ({exc})") from exc
    if entry.q != q:
        raise CacheIntegrityError(f"{path}: entry is for q={entry.q}, expected {q}")
    if entry.v != q * q + q + 1:
        raise CacheIntegrityError(f"{path}: v={entry.v} != q^2+q+1")
    if list(entry.elems) != sorted(set(entry.elems)):
        raise CacheIntegrityError(f"{path}: residues not sorted and distinct")
    if not verify_pds(entry.elems, entry.v):
        raise CacheIntegrityError(f"{path}: residues are not a perfect difference set mod {entry.v}")
    return entry


def build_pds_cache(q_max: int, data_root=None, *, progress=None) -> int:
    """Ensure a cache entry exists for every prime power q <= q_max.

    Existing valid entries are left untouched; invalid ones are rebuilt.
    Returns the number of entries newly written.
    """
    if q_max < 2:
        raise ValueError(f"q_max must be >= 2, got {q_max}")
    built = 0
    for q in range(2, q_max + 1):
        if is_prime_power(q) is None:
            continue
        try:
            if load_pds(q, data_root) is not None:
                continue
        except CacheIntegrityError:
            pass  # rebuild over the bad file
        spds = singer_pds_trace(q)
        write_pds(PdsCacheEntry(spds.q, spds.v, spds.elems, spds.method), data_root)
        built += 1
        if progress is not None:
            progress(q, spds.v)
    return built


def write_enumeration(records, path) -> None:
    """Write records as JSONL, one self-contained object per line."""
    lines = []
    for rec in records:
        obj = {
            "set": list(rec.elems),
            "extends": rec.extends,
            "q_witness": rec.q_witness,
            "q_max": rec.q_max,
        }
        lines.append(json.dumps(obj))
    text = "".join(line + "\n" for line in lines)
    _atomic_write(Path(path), text)


def read_enumeration(path) -> list[EnumerationRecord]:
    out = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
                rec = EnumerationRecord(
                    elems=tuple(int(x) for x in obj["set"]),
                    extends=bool(obj["extends"]),
                    q_witness=None if obj["q_witness"] is None else int(obj["q_witness"]),
                    q_max=int(obj["q_max"]),
                )
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                raise ValueError(f"{path}: line {lineno}: {exc}") from exc
            out.append(rec)
    return out
