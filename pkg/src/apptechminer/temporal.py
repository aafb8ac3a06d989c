"""Year-bucketed popularity of areas and of techniques within an area."""

from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass, field

from .errors import ConfigError, UnknownArea
from .kb import KnowledgeBase, area_technique_contributions
from .textproc import tokenize

PAPERS = "papers"
CITATIONS = "citations"


@dataclass
class TemporalBucket:
    start_year: int
    end_year: int
    payload: dict = field(default_factory=dict)

    def label(self) -> str:
        return f"{self.start_year}-{self.end_year}"


def year_buckets(window_years: int, year_range: tuple[int, int]) -> list[tuple[int, int]]:
    """Inclusive windows tiling ``year_range``; the last one may be short."""
    if window_years < 1:
        raise ConfigError("window_years must be >= 1")
    start, end = year_range
    if end < start:
        raise ConfigError(f"empty year range {start}-{end}")
    return [(y, min(y + window_years - 1, end)) for y in range(start, end + 1, window_years)]


def _corpus_year_range(corpus) -> tuple[int, int]:
    years = [p.year for p in corpus.papers.values()]
    return (min(years), max(years)) if years else (0, 0)


def temporal_area_popularity(kb: KnowledgeBase, corpus, window_years: int = 5,
                             year_range: tuple[int, int] | None = None,
                             popularity: str = PAPERS) -> list[TemporalBucket]:
    """Per bucket, each area's share of the bucket's papers (or of their citations).

    Buckets without papers (or without citations) get an empty payload.
    """
    if popularity not in (PAPERS, CITATIONS):
        raise ConfigError(f"unknown popularity measure {popularity!r}")
    year_range = year_range or _corpus_year_range(corpus)
    out = []
    for lo, hi in year_buckets(window_years, year_range):
        papers = [p for p in corpus.papers.values() if lo <= p.year <= hi]
        weight = {p.id: (1 if popularity == PAPERS else corpus.citation_count.get(p.id, 0))
                  for p in papers}
        total = sum(weight.values())
        payload: dict[str, float] = {}
        if total:
            per_area: Counter = Counter()
            for pid in sorted(weight):
                a = kb.paper_area.get(pid)
                if a is not None and a.area is not None:
                    per_area[a.area] += weight[pid]
            payload = {a: c / total for a, c in sorted(per_area.items()) if c}
        out.append(TemporalBucket(lo, hi, payload))
    return out


def temporal_techniques_in_area(kb: KnowledgeBase, corpus, area: str, window_years: int = 5,
                                top_k: int = 10, year_range: tuple[int, int] | None = None
                                ) -> list[TemporalBucket]:
    """Per bucket, the area's most frequent techniques as ``{technique: count}``.

    Counting follows the area -> technique map, restricted to the area's
    papers published inside the bucket.
    """
    key = " ".join(tokenize(area))
    if key not in kb.areas() and key not in kb.area_techniques:
        raise UnknownArea(area)
    year_range = year_range or _corpus_year_range(corpus)
    contributions = [(corpus.papers[pid].year, techs) for pid, a, techs in
                     area_technique_contributions(corpus, kb.paper_area, kb.paper_techniques,
                                                  kb.method_papers) if a == key]
    out = []
    for lo, hi in year_buckets(window_years, year_range):
        counts: Counter = Counter()
        for year, techs in contributions:
            if lo <= year <= hi:
                counts.update(techs)
        ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))[:top_k]
        out.append(TemporalBucket(lo, hi, dict(ranked)))
    return out


def buckets_to_csv(buckets: list[TemporalBucket]) -> str:
    """Rows ``bucket_start,bucket_end,label,value``; ranked payloads keep their order."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["bucket_start", "bucket_end", "label", "value"])
    for b in buckets:
        for label, value in b.payload.items():
            w.writerow([b.start_year, b.end_year, label,
                        f"{value:.6f}" if isinstance(value, float) else value])
    return buf.getvalue()
