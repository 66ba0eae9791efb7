"""Append-only JSON-lines cache of height reports."""

from __future__ import annotations

import json
import sys
from dataclasses import asdict, dataclass
from typing import Optional

from . import __version__
from .cyclotomic import HeightReport

_FIELDS = ("n", "p", "q", "r", "A", "Amax", "Amin", "k_first", "span", "optimal", "engine_version")


@dataclass(frozen=True)
class CacheEntry:
    n: int
    p: Optional[int]
    q: Optional[int]
    r: Optional[int]
    A: int
    Amax: int
    Amin: int
    k_first: int
    span: int
    optimal: Optional[bool]
    engine_version: str

    @classmethod
    def from_report(cls, rep: HeightReport) -> "CacheEntry":
        p = q = r = None
        if rep.optimal is not None:  # ternary
            (p, _), (q, _), (r, _) = rep.factorization
        return cls(
            n=rep.n,
            p=p,
            q=q,
            r=r,
            A=rep.A,
            Amax=rep.Amax,
            Amin=rep.Amin,
            k_first=rep.k_first,
            span=rep.span,
            optimal=rep.optimal,
            engine_version=__version__,
        )


class HeightCache:
    """Entries are immutable once written; lookups scan the file by exact n."""

    def __init__(self, path):
        self.path = path

    def lookup(self, n: int) -> Optional[CacheEntry]:
        try:
            fh = open(self.path)
        except OSError:
            return None
        with fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line:
                    continue
                try:
                    rec = json.loads(line)
                    if rec["n"] == n:
                        return CacheEntry(**{k: rec[k] for k in _FIELDS})
                except (ValueError, KeyError, TypeError):
                    print(
                        f"warning: skipping corrupt cache line {lineno} in {self.path}",
                        file=sys.stderr,
                    )
        return None

    def store(self, entry: CacheEntry) -> None:
        rec = asdict(entry)
        with open(self.path, "a") as fh:
            fh.write(json.dumps({k: rec[k] for k in _FIELDS}) + "\n")
