"""Method-paper detection and the global technique vector."""

from __future__ import annotations

import csv
import io
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .errors import ConfigError
from .textproc import PosLexicon, chunk_noun_phrases, default_lexicon


@dataclass(frozen=True)
class MethodPaperCriteria:
    k1: int = 15
    k2: float = 0.5

    def __post_init__(self):
        if self.k1 < 0:
            raise ConfigError("k1 must be >= 0")
        if not 0.0 <= self.k2 <= 1.0:
            raise ConfigError("k2 must lie in [0, 1]")


@dataclass(frozen=True)
class MethodPaper:
    paper_id: str
    citation_count: int
    method_citation_fraction: float


@dataclass
class GlobalTechniqueVector:
    """Noun-phrase counts in lexicographic phrase order."""

    entries: list[tuple[str, int]] = field(default_factory=list)
    index: dict[str, int] = field(default_factory=dict)

    @classmethod
    def from_counts(cls, counts) -> "GlobalTechniqueVector":
        entries = sorted((p, int(c)) for p, c in counts.items() if c > 0)
        return cls(entries, {p: i for i, (p, _) in enumerate(entries)})

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, phrase: str) -> bool:
        return phrase in self.index

    def count(self, phrase: str) -> int:
        i = self.index.get(phrase)
        return 0 if i is None else self.entries[i][1]

    def phrases(self) -> list[str]:
        return [p for p, _ in self.entries]

    def counts(self) -> list[int]:
        return [c for _, c in self.entries]


def detect_method_papers(corpus, criteria: MethodPaperCriteria | None = None
                         ) -> list[MethodPaper]:
    """Papers with >= k1 distinct citers and >= k2 of their contexts in methodology sections."""
    criteria = criteria or MethodPaperCriteria()
    out = []
    for pid in sorted(corpus.papers):
        ctxs = corpus.inbound_index.get(pid, ())
        if not ctxs:
            continue
        count = corpus.citation_count.get(pid, 0)
        frac = sum(1 for c in ctxs if c.in_methodology) / len(ctxs)
        if count >= criteria.k1 and frac >= criteria.k2:
            out.append(MethodPaper(pid, count, frac))
    return out


def context_phrase_counts(contexts, lexicon: PosLexicon | None = None,
                          threads: int = 1) -> Counter:
    lexicon = lexicon or default_lexicon()
    sentences = [c.sentence for c in contexts]

    def work(s):
        return [ch.text for ch in chunk_noun_phrases(s, lexicon)]

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            chunks = list(ex.map(work, sentences))
    else:
        chunks = [work(s) for s in sentences]
    counts: Counter = Counter()
    for phrases in chunks:
        counts.update(phrases)
    return counts


def build_global_vector(corpus, method_papers, lexicon: PosLexicon | None = None,
                        threads: int = 1) -> GlobalTechniqueVector:
    ids = sorted({m.paper_id if isinstance(m, MethodPaper) else m for m in method_papers})
    contexts = [c for pid in ids for c in corpus.inbound_index.get(pid, ())]
    return GlobalTechniqueVector.from_counts(context_phrase_counts(contexts, lexicon, threads))


@dataclass(frozen=True)
class RankedTechnique:
    phrase: str
    count: int
    rank: int


def rank_techniques(vec: GlobalTechniqueVector, top_k: int | None = None
                    ) -> list[RankedTechnique]:
    if top_k is not None and top_k < 1:
        raise ConfigError("top_k must be >= 1")
    ordered = sorted(vec.entries, key=lambda e: (-e[1], e[0]))
    if top_k is not None:
        ordered = ordered[:top_k]
    return [RankedTechnique(p, c, i) for i, (p, c) in enumerate(ordered, 1)]


def techniques_to_csv(ranked: list[RankedTechnique]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["rank", "phrase", "count"])
    for r in ranked:
        w.writerow([r.rank, r.phrase, r.count])
    return buf.getvalue()
