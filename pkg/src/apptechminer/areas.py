"""Harvesting and ranking candidate application-area phrases from titles."""

from __future__ import annotations

import csv
import io
import re
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .errors import ConfigError, FileUnreadable, MissingThreshold
from .textproc import (DEFAULT_STOPWORDS, OTHER, PosLexicon, default_lexicon, ngrams,
                       tokenize, trim_stopwords)

AFTER = "after"    # the area phrase follows the keyword ("X for Y")
BEFORE = "before"  # the area phrase precedes the keyword ("Y using X")
BOTH = "both"
SIDES = (AFTER, BEFORE, BOTH)

SEED = "seed"
BOOTSTRAPPED = "bootstrapped"

S1, S2, S3 = "S1", "S2", "S3"
POOLED = "pooled"
PER_ORDER = "per_order"

DEFAULT_SEEDS = (("for", AFTER), ("via", AFTER), ("using", BEFORE), ("with", BEFORE),
                 ("in", AFTER), ("to", AFTER), ("of", AFTER))

# Function words that never act as area delimiters.
NON_DELIMITERS = frozenset("""
a an the and or but nor this that these those it its we our they their he she his her i you
is are was were be been being has have had do does did not no
""".split())

_SEGMENT_RE = re.compile(r"[:;!?]|\.(?=\s|$)")


@dataclass(frozen=True)
class Keyword:
    word: str
    side: str
    provenance: str = SEED

    @property
    def after(self) -> bool:
        return self.side in (AFTER, BOTH)

    @property
    def before(self) -> bool:
        return self.side in (BEFORE, BOTH)


@dataclass
class FunctionalKeywordSet:
    keywords: dict[str, Keyword] = field(default_factory=dict)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, str]], provenance: str = SEED):
        ks = cls()
        for word, side in pairs:
            ks.add(word, side, provenance)
        return ks

    @classmethod
    def default(cls) -> "FunctionalKeywordSet":
        return cls.from_pairs(DEFAULT_SEEDS)

    def add(self, word: str, side: str, provenance: str = SEED) -> bool:
        """Add or widen a keyword; returns True if the set changed."""
        word = word.casefold()
        side = side.casefold()
        if side not in SIDES:
            raise ConfigError(f"unknown keyword side {side!r}")
        old = self.keywords.get(word)
        if old is None:
            self.keywords[word] = Keyword(word, side, provenance)
            return True
        if old.side == side or old.side == BOTH:
            return False
        self.keywords[word] = Keyword(word, BOTH, old.provenance)
        return True

    def has(self, word: str, side: str) -> bool:
        kw = self.keywords.get(word)
        return kw is not None and (kw.side == BOTH or kw.side == side)

    def pairs(self) -> list[tuple[str, str]]:
        return sorted((k.word, k.side) for k in self.keywords.values())

    def copy(self) -> "FunctionalKeywordSet":
        return FunctionalKeywordSet(dict(self.keywords))

    def __len__(self) -> int:
        return len(self.keywords)

    def __contains__(self, word: str) -> bool:
        return word in self.keywords

    def dumps(self) -> str:
        return "".join(f"{k.word}\t{k.side}\n" for k in sorted(self.keywords.values(),
                                                               key=lambda k: k.word))


def load_keywords(path) -> FunctionalKeywordSet:
    """Read ``word<TAB>side`` lines."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FileUnreadable(path, str(exc)) from exc
    pairs = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t") if "\t" in line else line.split()
        if len(parts) != 2:
            raise ConfigError(f"{path}:{lineno}: expected word<TAB>side")
        pairs.append((parts[0].strip(), parts[1].strip()))
    if not pairs:
        raise ConfigError(f"{path}: empty keyword set")
    return FunctionalKeywordSet.from_pairs(pairs)


@dataclass(frozen=True)
class CandidatePhrase:
    text: str
    source_paper: str
    delimiter: str

    @property
    def tokens(self) -> tuple[str, ...]:
        return tuple(self.text.split())


def title_segments(title: str) -> list[list[str]]:
    """Tokenized pieces of a title split at colons and sentence ends."""
    return [t for t in (tokenize(s) for s in _SEGMENT_RE.split(title)) if t]


def harvest_title(title: str, keys: FunctionalKeywordSet,
                  stopwords=DEFAULT_STOPWORDS) -> list[tuple[str, str]]:
    """(phrase, delimiter) pairs from one title, distinct phrases only."""
    found: dict[str, str] = {}
    for seg in title_segments(title):
        kw_pos = [i for i, t in enumerate(seg) if t in keys]
        for j, i in enumerate(kw_pos):
            kw = keys.keywords[seg[i]]
            spans = []
            if kw.after:
                end = kw_pos[j + 1] if j + 1 < len(kw_pos) else len(seg)
                spans.append(seg[i + 1:end])
            if kw.before:
                start = kw_pos[j - 1] + 1 if j > 0 else 0
                spans.append(seg[start:i])
            for span in spans:
                toks = trim_stopwords(span, stopwords)
                if toks:
                    found.setdefault(" ".join(toks), kw.word)
    return list(found.items())


def harvest_phrases(corpus, keys: FunctionalKeywordSet,
                    stopwords=DEFAULT_STOPWORDS) -> list[CandidatePhrase]:
    """Candidate area phrases from every title, in paper-id order."""
    out = []
    for pid in sorted(corpus.papers):
        for text, delim in harvest_title(corpus.papers[pid].title, keys, stopwords):
            out.append(CandidatePhrase(text, pid, delim))
    return out


@dataclass(frozen=True)
class RankedArea:
    phrase: str
    n: int
    count: int
    score: float
    rank: int


@dataclass
class SchemeParams:
    scheme: str = S3
    thresholds: dict[int, float] = field(default_factory=dict)
    n_max: int = 4
    border_test: str = PER_ORDER

    def validate(self) -> None:
        if self.scheme not in (S1, S2, S3):
            raise ConfigError(f"unknown scheme {self.scheme!r}")
        if self.border_test not in (POOLED, PER_ORDER):
            raise ConfigError(f"unknown border test {self.border_test!r}")
        if self.n_max < 1:
            raise ConfigError("n_max must be >= 1")
        if self.scheme == S3:
            missing = [n for n in range(1, self.n_max + 1) if n not in self.thresholds]
            if missing:
                raise MissingThreshold(f"scheme S3 needs thresholds for n={missing}")


def count_ngrams(cands: Iterable[CandidatePhrase], n_max: int = 4,
                 stopwords=DEFAULT_STOPWORDS) -> Counter:
    """Occurrences of every n-gram (1..n_max) not starting or ending in a stopword."""
    counts: Counter = Counter()
    for c in cands:
        counts.update(g for g in ngrams(c.tokens, 1, n_max)
                      if g[0] not in stopwords and g[-1] not in stopwords)
    return counts


def score_ngrams(counts: Counter, normalization: str = POOLED) -> dict[tuple, float]:
    """Relative frequency of each n-gram.

    ``pooled`` divides by the total over all orders, so all scores sum to 1.
    ``per_order`` divides by the total of n-grams of the same order, so
    scores sum to 1 within each order.
    """
    if normalization == POOLED:
        total = sum(counts.values())
        return {g: c / total for g, c in counts.items()}
    totals: Counter = Counter()
    for g, c in counts.items():
        totals[len(g)] += c
    return {g: c / totals[len(g)] for g, c in counts.items()}


def prune_borders(scores: dict[tuple, float]) -> set[tuple]:
    """N-grams removed by border dominance.

    An n-gram whose score strictly exceeds the scores of both of its
    (n-1)-gram borders (token-wise prefix and suffix) removes both. All
    comparisons use the unpruned scores.
    """
    removed: set[tuple] = set()
    for g, s in scores.items():
        if len(g) < 2:
            continue
        left, right = g[:-1], g[1:]
        if s > scores.get(left, float("inf")) and s > scores.get(right, float("inf")):
            removed.add(left)
            removed.add(right)
    return removed


def rank_areas(cands: Iterable[CandidatePhrase], params: SchemeParams | None = None,
               stopwords=DEFAULT_STOPWORDS) -> list[RankedArea]:
    """Rank n-grams of the candidate phrases under Scheme 1, 2 or 3.

    Scores are pooled relative frequencies. Scheme 2 drops border
    (n-1)-grams of dominating n-grams, comparing relative frequencies per
    ``params.border_test``; Scheme 3 also drops entries scoring below the
    threshold of their order.
    """
    params = params or SchemeParams()
    params.validate()
    counts = count_ngrams(cands, params.n_max, stopwords)
    if not counts:
        return []
    scores = score_ngrams(counts, POOLED)
    keep = set(scores)
    if params.scheme in (S2, S3):
        keep -= prune_borders(score_ngrams(counts, params.border_test))
    if params.scheme == S3:
        keep = {g for g in keep if scores[g] >= params.thresholds[len(g)]}
    ordered = sorted(keep, key=lambda g: (-scores[g], " ".join(g)))
    return [RankedArea(" ".join(g), len(g), counts[g], scores[g], i)
            for i, g in enumerate(ordered, 1)]


def _phrase_occurrences(seg: list[str], phrase: tuple[str, ...]):
    n = len(phrase)
    for i in range(len(seg) - n + 1):
        if tuple(seg[i:i + n]) == phrase:
            yield i


def bootstrap_keywords(corpus, seeds: FunctionalKeywordSet, max_rounds: int = 3,
                       top_m: int = 50, min_support: int = 5, n_max: int = 4,
                       lexicon: PosLexicon | None = None,
                       stopwords=DEFAULT_STOPWORDS) -> FunctionalKeywordSet:
    """Grow the keyword set from words that recur next to trusted areas.

    Each round ranks harvested phrases under Scheme 1, trusts the top
    ``top_m``, and admits a neighbouring word (with the side implied by its
    position) once it borders trusted areas in at least ``min_support``
    distinct titles. Only function words are eligible.
    """
    if not len(seeds):
        raise ConfigError("seed keyword set is empty")
    if max_rounds < 1:
        raise ConfigError("max_rounds must be >= 1")
    lexicon = lexicon or default_lexicon()
    keys = seeds.copy()
    segments = {pid: title_segments(corpus.papers[pid].title) for pid in sorted(corpus.papers)}
    params = SchemeParams(S1, n_max=n_max)
    for _ in range(max_rounds):
        ranked = rank_areas(harvest_phrases(corpus, keys, stopwords), params, stopwords)
        trusted = [tuple(r.phrase.split()) for r in ranked[:top_m]]
        support: dict[tuple[str, str], set[str]] = defaultdict(set)
        for pid, segs in segments.items():
            for seg in segs:
                for phrase in trusted:
                    for i in _phrase_occurrences(seg, phrase):
                        if i > 0:
                            support[(seg[i - 1], AFTER)].add(pid)
                        j = i + len(phrase)
                        if j < len(seg):
                            support[(seg[j], BEFORE)].add(pid)
        changed = False
        for (word, side), pids in sorted(support.items()):
            if len(pids) < min_support or keys.has(word, side):
                continue
            if lexicon.tag(word) != OTHER or word in NON_DELIMITERS or not word.isalpha():
                continue
            changed |= keys.add(word, side, BOOTSTRAPPED)
        if not changed:
            break
    return keys


def areas_to_csv(ranked: list[RankedArea]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["rank", "phrase", "n", "count", "score"])
    for r in ranked:
        w.writerow([r.rank, r.phrase, r.n, r.count, f"{r.score:.6f}"])
    return buf.getvalue()


def read_areas_csv(path) -> list[RankedArea]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FileUnreadable(path, str(exc)) from exc
    rows = list(csv.DictReader(io.StringIO(text)))
    if rows and "phrase" not in rows[0]:
        raise ConfigError(f"{path}: expected header rank,phrase,n,count,score")
    return [RankedArea(r["phrase"], int(r["n"]), int(r["count"]), float(r["score"]),
                       int(r["rank"])) for r in rows]
