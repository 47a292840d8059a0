"""Durable, append-only, level-partitioned record store.

Layout of a store directory:

    level_<n>.psv        sealed records, one per line, sorted by uid
    level_<n>.manifest   JSON: n, record_count, sealed, sha256 of the .psv
    level_<n>.psv.wal    write-ahead file for the level currently being built
    meta                 JSON: format_version, max_sealed

Record line format (ASCII, bit-exact, diffable):

    uid|n|degrees|coeffs|unimodal|log_concave|symmetric|fibonacci|argmax

with lists comma-separated and booleans as 0/1. The empty tree is the
single level-0 record with an empty uid and coefficients "1".

Sealing a level is the durability point: the WAL records are sorted by uid,
written to a temp file, fsynced, and renamed into place. A crash before the
seal simply discards the WAL and the level restarts; everything sealed
earlier is never rewritten.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

from . import poly
from .counts import UNLABELED_TREE_COUNTS
from .errors import (
    CountMismatchError,
    RecordInvariantError,
    SealedLevelError,
    StoreCorruptionError,
)

FORMAT_VERSION = 1


@dataclass(frozen=True)
class TreeRecord:
    uid: str
    n: int
    degrees: tuple[int, ...]
    coeffs: tuple[int, ...]
    unimodal: bool
    log_concave: bool
    symmetric: bool
    fibonacci: bool
    argmax: int

    @classmethod
    def create(cls, uid: str, n: int, degrees, coeffs) -> "TreeRecord":
        """Build a record, deriving the predicate flags from the coefficients."""
        coeffs = tuple(int(c) for c in coeffs)
        return cls(
            uid=uid,
            n=n,
            degrees=tuple(int(d) for d in degrees),
            coeffs=coeffs,
            unimodal=poly.is_unimodal(coeffs),
            log_concave=poly.is_log_concave(coeffs),
            symmetric=poly.is_symmetric(coeffs),
            fibonacci=poly.is_fibonacci(coeffs),
            argmax=poly.argmax_lowest(coeffs),
        )

    def validate(self) -> None:
        if self.n == 0:
            if self.uid != "" or self.coeffs != (1,) or self.degrees != ():
                raise RecordInvariantError("malformed empty-tree record")
        else:
            if len(self.uid) != 2 * self.n:
                raise RecordInvariantError(
                    f"uid length {len(self.uid)} != 2n for n={self.n}"
                )
            if not self.coeffs or self.coeffs[0] != 1:
                raise RecordInvariantError("coeffs[0] must be 1")
            if len(self.coeffs) < 2 or self.coeffs[1] != self.n:
                raise RecordInvariantError(
                    f"coeffs[1]={self.coeffs[1] if len(self.coeffs) > 1 else None} "
                    f"must equal vertex count {self.n}"
                )
            if self.coeffs[-1] < 1:
                raise RecordInvariantError("trailing coefficient must be >= 1")
            if len(self.degrees) != self.n or sum(self.degrees) != 2 * (self.n - 1):
                raise RecordInvariantError("degree sequence inconsistent with n")
            if list(self.degrees) != sorted(self.degrees, reverse=True):
                raise RecordInvariantError("degree sequence not sorted descending")
        expect = (
            poly.is_unimodal(self.coeffs),
            poly.is_log_concave(self.coeffs),
            poly.is_symmetric(self.coeffs),
            poly.is_fibonacci(self.coeffs),
            poly.argmax_lowest(self.coeffs),
        )
        got = (self.unimodal, self.log_concave, self.symmetric, self.fibonacci, self.argmax)
        if got != expect:
            raise RecordInvariantError(f"stored flags {got} disagree with coefficients")

    def to_line(self) -> str:
        return "|".join(
            (
                self.uid,
                str(self.n),
                ",".join(str(d) for d in self.degrees),
                poly.serialize(self.coeffs),
                "1" if self.unimodal else "0",
                "1" if self.log_concave else "0",
                "1" if self.symmetric else "0",
                "1" if self.fibonacci else "0",
                str(self.argmax),
            )
        )

    @classmethod
    def from_line(cls, line: str) -> "TreeRecord":
        fields = line.rstrip("\n").split("|")
        if len(fields) != 9:
            raise StoreCorruptionError(f"bad record line: {line!r}")
        uid, n, degrees, coeffs, uni, lc, sym, fib, amax = fields
        return cls(
            uid=uid,
            n=int(n),
            degrees=tuple(int(d) for d in degrees.split(",")) if degrees else (),
            coeffs=poly.deserialize(coeffs),
            unimodal=uni == "1",
            log_concave=lc == "1",
            symmetric=sym == "1",
            fibonacci=fib == "1",
            argmax=int(amax),
        )


@dataclass
class LevelManifest:
    n: int
    record_count: int
    sealed: bool
    sha256: str

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "record_count": self.record_count,
                "sealed": self.sealed,
                "sha256": self.sha256,
            },
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> "LevelManifest":
        d = json.loads(text)
        return cls(d["n"], d["record_count"], d["sealed"], d["sha256"])


class Store:
    """Single-writer file-backed record store with insert-if-absent by uid."""

    def __init__(self, path: str | os.PathLike, create: bool = True):
        self.path = Path(path)
        if create:
            self.path.mkdir(parents=True, exist_ok=True)
        elif not self.path.is_dir():
            raise StoreCorruptionError(f"store directory {self.path} does not exist")
        self._manifests: dict[int, LevelManifest] = {}
        self._open_uids: dict[int, set[str]] = {}
        self._open_records: dict[int, list[TreeRecord]] = {}
        self._poly_cache: dict[int, dict[str, tuple[int, ...]]] = {}
        self._verified: set[int] = set()
        self._load_manifests()

    # -- paths ---------------------------------------------------------

    def _level_file(self, n: int) -> Path:
        return self.path / f"level_{n}.psv"

    def _manifest_file(self, n: int) -> Path:
        return self.path / f"level_{n}.manifest"

    def _wal_file(self, n: int) -> Path:
        return self.path / f"level_{n}.psv.wal"

    def _meta_file(self) -> Path:
        return self.path / "meta"

    # -- startup -------------------------------------------------------

    def _load_manifests(self) -> None:
        for mf in sorted(self.path.glob("level_*.manifest")):
            try:
                n = int(mf.stem.split("_")[1])
            except (IndexError, ValueError):
                raise StoreCorruptionError(f"unrecognized manifest name {mf.name}")
            manifest = LevelManifest.from_json(mf.read_text())
            if manifest.n != n:
                raise StoreCorruptionError(f"manifest {mf.name} claims n={manifest.n}")
            if manifest.sealed and not self._level_file(n).exists():
                raise StoreCorruptionError(f"level {n} sealed but level file missing")
            self._manifests[n] = manifest
        meta = self._meta_file()
        if meta.exists():
            d = json.loads(meta.read_text())
            if d.get("format_version") != FORMAT_VERSION:
                raise StoreCorruptionError(
                    f"unsupported store format version {d.get('format_version')}"
                )

    def _write_meta(self) -> None:
        payload = json.dumps(
            {"format_version": FORMAT_VERSION, "max_sealed": self.max_sealed()},
            sort_keys=True,
        )
        self._meta_file().write_text(payload + "\n")

    # -- introspection --------------------------------------------------

    def level_sealed(self, n: int) -> bool:
        m = self._manifests.get(n)
        return m is not None and m.sealed

    def max_sealed(self) -> int:
        """Largest m such that levels 0..m are all sealed; -1 if none."""
        m = -1
        while self.level_sealed(m + 1):
            m += 1
        return m

    def manifest(self, n: int) -> LevelManifest | None:
        return self._manifests.get(n)

    def _check_seal_integrity(self, n: int) -> None:
        """Verify the level file checksum against its manifest, once per open."""
        if n in self._verified:
            return
        m = self._manifests[n]
        digest = hashlib.sha256(self._level_file(n).read_bytes()).hexdigest()
        if digest != m.sha256:
            raise StoreCorruptionError(
                f"level {n} checksum mismatch: file {digest[:12]}.. manifest {m.sha256[:12]}.."
            )
        self._verified.add(n)

    # -- writing ---------------------------------------------------------

    def open_level(self, n: int) -> None:
        """Begin (or restart) the write-ahead file for an unsealed level."""
        if self.level_sealed(n):
            raise SealedLevelError(f"level {n} is already sealed")
        self._wal_file(n).write_text("")
        self._open_uids[n] = set()
        self._open_records[n] = []

    def insert_if_absent(self, rec: TreeRecord) -> bool:
        """Append a record unless its uid is already present; True if inserted."""
        rec.validate()
        n = rec.n
        if self.level_sealed(n):
            raise SealedLevelError(f"level {n} is already sealed")
        if n not in self._open_uids:
            self.open_level(n)
        if rec.uid in self._open_uids[n]:
            return False
        self._open_uids[n].add(rec.uid)
        self._open_records[n].append(rec)
        with self._wal_file(n).open("a", encoding="ascii") as fh:
            fh.write(rec.to_line() + "\n")
        return True

    def seal_level(self, n: int, expected_count: int | None = None) -> LevelManifest:
        """Sort, persist, and checksum the level; the single durability point."""
        if self.level_sealed(n):
            raise SealedLevelError(f"level {n} is already sealed")
        records = sorted(self._open_records.get(n, []), key=lambda r: r.uid)
        count = len(records)
        builtin = UNLABELED_TREE_COUNTS.get(n)
        for expect in (expected_count, builtin):
            if expect is not None and count != expect:
                raise CountMismatchError(
                    f"level {n} holds {count} records, expected {expect}"
                )
        payload = "".join(r.to_line() + "\n" for r in records).encode("ascii")
        tmp = self._level_file(n).with_suffix(".psv.tmp")
        with tmp.open("wb") as fh:
            fh.write(payload)
            fh.flush()
            os.fsync(fh.fileno())
        tmp.replace(self._level_file(n))
        manifest = LevelManifest(
            n=n,
            record_count=count,
            sealed=True,
            sha256=hashlib.sha256(payload).hexdigest(),
        )
        self._manifest_file(n).write_text(manifest.to_json() + "\n")
        self._manifests[n] = manifest
        self._wal_file(n).unlink(missing_ok=True)
        self._open_uids.pop(n, None)
        self._open_records.pop(n, None)
        self._verified.add(n)
        self._write_meta()
        return manifest

    def discard_unsealed(self) -> None:
        """Drop write-ahead files; resume granularity is a whole level."""
        for wal in self.path.glob("level_*.psv.wal"):
            wal.unlink()
        self._open_uids.clear()
        self._open_records.clear()

    # -- reading ---------------------------------------------------------

    def fetch_level(self, n: int) -> Iterator[TreeRecord]:
        """All records at level n; uid-sorted when the level is sealed."""
        if self.level_sealed(n):
            self._check_seal_integrity(n)
            with self._level_file(n).open("r", encoding="ascii") as fh:
                for line in fh:
                    yield TreeRecord.from_line(line)
        elif n in self._open_records:
            yield from list(self._open_records[n])

    def level_codes(self, n: int) -> list[str]:
        return [rec.uid for rec in self.fetch_level(n)]

    def fetch_polynomial(self, uid: str) -> tuple[int, ...] | None:
        """Stored coefficients for a uid, or None when absent."""
        n = len(uid) // 2
        if self.level_sealed(n):
            cache = self._poly_cache.get(n)
            if cache is None:
                cache = {rec.uid: rec.coeffs for rec in self.fetch_level(n)}
                self._poly_cache[n] = cache
            return cache.get(uid)
        if n in self._open_records:
            for rec in self._open_records[n]:
                if rec.uid == uid:
                    return rec.coeffs
        return None
