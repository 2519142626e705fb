"""Table of known small values and intervals of R([s,2],[t,2]) and R([s,2],[t,1])."""
from __future__ import annotations

import json
import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

SEEDS_ENV = "DROPCLIQUE_SEEDS"

Key = tuple[tuple[int, int], ...]


class SeedTableError(ValueError):
    pass


def canonical_key(patterns: Iterable[Sequence[int]]) -> Key:
    return tuple(sorted((int(k), int(t)) for k, t in patterns))


def key_str(key: Key) -> str:
    return ";".join(f"{k},{t}" for k, t in key)


@dataclass(frozen=True)
class SeedEntry:
    lower: int | None
    upper: int | None
    source: str

    @property
    def exact(self) -> bool:
        return self.lower is not None and self.lower == self.upper


class SeedTable:
    """Canonical pattern key -> (lower, upper, source).

    Entries listed under several orderings of the same patterns (mirror cells
    of the value grid) must agree.
    """

    def __init__(self, entries: dict[Key, SeedEntry] | None = None, raw: list[dict] | None = None):
        self.entries: dict[Key, SeedEntry] = dict(entries or {})
        self.raw = list(raw or [])
        self._dp_cache: dict = {}

    @classmethod
    def empty(cls) -> "SeedTable":
        return cls()

    @classmethod
    def from_records(cls, records: list[dict]) -> "SeedTable":
        entries: dict[Key, SeedEntry] = {}
        for idx, rec in enumerate(records):
            try:
                key = canonical_key(rec["patterns"])
                source = rec["source"]
            except (KeyError, TypeError, ValueError) as exc:
                raise SeedTableError(f"seed record {idx}: malformed ({exc})") from None
            lo, hi = rec.get("lower"), rec.get("upper")
            if lo is None and hi is None:
                raise SeedTableError(f"seed record {idx}: needs lower or upper")
            if not source:
                raise SeedTableError(f"seed record {idx}: empty source tag")
            if lo is not None and hi is not None and lo > hi:
                raise SeedTableError(f"seed record {idx} ({key_str(key)}): lower {lo} > upper {hi}")
            entry = SeedEntry(lo, hi, source)
            prev = entries.get(key)
            if prev is not None and (prev.lower, prev.upper) != (lo, hi):
                raise SeedTableError(
                    f"seed record {idx} ({key_str(key)}): [{lo},{hi}] disagrees with "
                    f"[{prev.lower},{prev.upper}] listed under another ordering"
                )
            entries[key] = entry
        return cls(entries, records)

    @classmethod
    def load(cls, path: str | os.PathLike) -> "SeedTable":
        with open(path) as fh:
            records = json.load(fh)
        if not isinstance(records, list):
            raise SeedTableError(f"{path}: expected a JSON list of seed records")
        return cls.from_records(records)

    @classmethod
    def shipped(cls) -> "SeedTable":
        """The bundled table, or the file named by ``$DROPCLIQUE_SEEDS``."""
        override = os.environ.get(SEEDS_ENV)
        if override:
            return cls.load(override)
        return _shipped()

    def dump(self, path: str | os.PathLike) -> None:
        records = self.raw or [
            {"patterns": [list(p) for p in key], "lower": e.lower, "upper": e.upper, "source": e.source}
            for key, e in sorted(self.entries.items())
        ]
        Path(path).write_text(json.dumps(records, indent=1))

    def with_entry(self, patterns, lower: int | None = None, upper: int | None = None, source: str = "user") -> "SeedTable":
        entries = dict(self.entries)
        entries[canonical_key(patterns)] = SeedEntry(lower, upper, source)
        return SeedTable(entries)

    def get(self, patterns) -> SeedEntry | None:
        return self.entries.get(canonical_key(patterns))

    def upper(self, key: Key) -> int | None:
        e = self.entries.get(key)
        return None if e is None else e.upper

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, patterns) -> bool:
        return canonical_key(patterns) in self.entries


_SHIPPED: SeedTable | None = None


def _shipped() -> SeedTable:
    global _SHIPPED
    if _SHIPPED is None:
        text = resources.files("dropclique").joinpath("data/table1.json").read_text()
        _SHIPPED = SeedTable.from_records(json.loads(text))
    return _SHIPPED


def shipped_path() -> Path:
    return Path(str(resources.files("dropclique").joinpath("data/table1.json")))
