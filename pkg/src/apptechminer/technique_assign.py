"""Ranking the techniques a cited paper is used for."""

from __future__ import annotations

import csv
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .errors import ConfigError, DimensionMismatch
from .techniques import GlobalTechniqueVector, context_phrase_counts
from .textproc import PosLexicon

PRODUCT = "product"
LOCAL = "local"
GLOBAL = "global"
RANK_KEYS = (PRODUCT, LOCAL, GLOBAL)


@dataclass(frozen=True)
class LocalTechniqueVector:
    paper_id: str
    counts: tuple[int, ...]

    def nonzero(self) -> int:
        return sum(1 for c in self.counts if c)


@dataclass(frozen=True)
class TechniqueAssignment:
    paper_id: str
    techniques: tuple[tuple[str, int], ...]

    def phrases(self) -> list[str]:
        return [p for p, _ in self.techniques]


def build_local_vector(paper_id: str, corpus, global_vec: GlobalTechniqueVector,
                       lexicon: PosLexicon | None = None) -> LocalTechniqueVector:
    """Counts of global-vocabulary phrases in the contexts citing ``paper_id``."""
    counts = context_phrase_counts(corpus.inbound_index.get(paper_id, ()), lexicon)
    return LocalTechniqueVector(paper_id, tuple(counts.get(p, 0) for p in global_vec.phrases()))


def assign_techniques(paper_id: str, local: LocalTechniqueVector,
                      global_vec: GlobalTechniqueVector, k: int = 5,
                      rank_key: str = PRODUCT) -> TechniqueAssignment:
    """Top-``k`` techniques by component-wise local x global weight.

    ``rank_key`` selects the weight: ``product`` (default), ``local`` count or
    ``global`` count; only components with a nonzero local count qualify.
    """
    if k < 1:
        raise ConfigError("K must be >= 1")
    if rank_key not in RANK_KEYS:
        raise ConfigError(f"unknown rank key {rank_key!r}")
    if len(local.counts) != len(global_vec):
        raise DimensionMismatch(f"local vector has {len(local.counts)} components, "
                                f"global vector {len(global_vec)}")
    scored = []
    for (phrase, g), l in zip(global_vec.entries, local.counts):
        if l <= 0:
            continue
        score = l * g if rank_key == PRODUCT else (l if rank_key == LOCAL else g)
        scored.append((-score, phrase))
    scored.sort()
    return TechniqueAssignment(paper_id, tuple((p, -s) for s, p in scored[:k]))


def assign_all_techniques(corpus, global_vec: GlobalTechniqueVector,
                          lexicon: PosLexicon | None = None, k: int = 5,
                          rank_key: str = PRODUCT, threads: int = 1,
                          paper_ids=None) -> dict[str, TechniqueAssignment]:
    """Assignments for every cited corpus paper (or ``paper_ids``); empty ones omitted."""
    if paper_ids is None:
        paper_ids = [pid for pid in sorted(corpus.papers) if corpus.inbound_index.get(pid)]

    def work(pid):
        local = build_local_vector(pid, corpus, global_vec, lexicon)
        return assign_techniques(pid, local, global_vec, k, rank_key)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(work, paper_ids))
    else:
        results = [work(pid) for pid in paper_ids]
    return {a.paper_id: a for a in results if a.techniques}


def technique_assignments_to_csv(assignments) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["paper_id", "rank", "technique", "score"])
    for a in sorted(assignments, key=lambda a: a.paper_id):
        for i, (phrase, score) in enumerate(a.techniques, 1):
            w.writerow([a.paper_id, i, phrase, score])
    return buf.getvalue()
