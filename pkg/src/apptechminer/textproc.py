"""Tokenization, n-gram enumeration and rule-based noun-phrase chunking."""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from . import _wordlists
from .errors import FileUnreadable, InvalidRange

NOUN = "NOUN"
PROPN = "PROPN"
ADJ = "ADJ"
OTHER = "OTHER"
TAGS = (NOUN, PROPN, ADJ, OTHER)

# Sentence boundary sentinel accepted by ngrams(); tokenize() never emits it.
BOUNDARY = "</s>"

MARKER_RE = re.compile(r"\[\[([^\[\]]+)\]\]")
_WORD_RE = re.compile(r"[^\W_]+(?:-[^\W_]+)*")
# Chunker view of text: markers, words, or any single punctuation char.
_CHUNK_TOKEN_RE = re.compile(r"\[\[[^\[\]]+\]\]|[^\W_]+(?:-[^\W_]+)*|[^\w\s]|_")

DEFAULT_STOPWORDS = _wordlists.STOPWORDS


def tokenize(text: str) -> list[str]:
    """Case-folded word tokens; punctuation dropped, internal hyphens kept.

    Citation markers (``[[id]]``) are removed before tokenizing.
    """
    if not text:
        return []
    text = MARKER_RE.sub(" ", text).replace("'", "").replace("’", "")
    return [m.group(0).casefold() for m in _WORD_RE.finditer(text)]


def tokenize_sentences(sentences: Iterable[str]) -> list[str]:
    """Tokenize several sentences into one sequence joined by BOUNDARY."""
    out: list[str] = []
    for s in sentences:
        toks = tokenize(s)
        if not toks:
            continue
        if out:
            out.append(BOUNDARY)
        out.extend(toks)
    return out


def ngrams(seq: Sequence[str], n_min: int = 1, n_max: int = 4) -> list[tuple[str, ...]]:
    """All contiguous windows of order n_min..n_max in document order.

    Windows never span a BOUNDARY token. For each start position, shorter
    windows come first.
    """
    if n_min < 1 or n_max < n_min:
        raise InvalidRange(f"invalid n-gram range {n_min}..{n_max}")
    out = []
    for segment in _segments(seq):
        L = len(segment)
        for i in range(L):
            for n in range(n_min, n_max + 1):
                if i + n > L:
                    break
                out.append(tuple(segment[i:i + n]))
    return out


def _segments(seq: Sequence[str]) -> list[list[str]]:
    segs: list[list[str]] = [[]]
    for tok in seq:
        if tok == BOUNDARY:
            segs.append([])
        else:
            segs[-1].append(tok)
    return [s for s in segs if s]


def trim_stopwords(tokens: Sequence[str], stopwords=DEFAULT_STOPWORDS) -> list[str]:
    lo, hi = 0, len(tokens)
    while lo < hi and tokens[lo] in stopwords:
        lo += 1
    while hi > lo and tokens[hi - 1] in stopwords:
        hi -= 1
    return list(tokens[lo:hi])


@dataclass(frozen=True)
class NounPhrase:
    text: str
    tokens: tuple[str, ...]


class PosLexicon:
    """Word -> coarse tag lookup with a total fallback rule.

    Out-of-lexicon words: digits-only -> OTHER, capitalized -> PROPN,
    anything else -> NOUN.
    """

    def __init__(self, entries: dict[str, str] | None = None):
        self.entries: dict[str, str] = {}
        for word, tag in (entries or {}).items():
            self.add(word, tag)

    def add(self, word: str, tag: str) -> None:
        tag = tag.strip().upper()
        if tag not in TAGS:
            raise ValueError(f"unknown tag {tag!r} for {word!r}")
        self.entries[word.casefold()] = tag

    def tag(self, word: str) -> str:
        hit = self.entries.get(word.casefold())
        if hit is not None:
            return hit
        if word.isdigit():
            return OTHER
        if word[:1].isupper():
            return PROPN
        return NOUN

    def __contains__(self, word: str) -> bool:
        return word.casefold() in self.entries

    @classmethod
    def default(cls) -> "PosLexicon":
        lex = cls()
        for w in _wordlists.NOUNS:
            lex.entries[w] = NOUN
        for w in _wordlists.ADJECTIVES:
            lex.entries[w] = ADJ
        for w in _wordlists.VERBS_ADVERBS | _wordlists.STOPWORDS:
            lex.entries[w] = OTHER
        return lex

    @classmethod
    def from_file(cls, path, base: "PosLexicon | None" = None) -> "PosLexicon":
        """Load ``word<TAB>TAG`` lines; entries override ``base`` when given."""
        lex = cls(dict(base.entries)) if base is not None else cls()
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise FileUnreadable(path, str(exc)) from exc
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected word<TAB>TAG")
            lex.add(parts[0].strip(), parts[1])
        return lex


def load_stopwords(path) -> frozenset[str]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FileUnreadable(path, str(exc)) from exc
    return frozenset(w.strip().casefold() for w in text.splitlines() if w.strip())


_DEFAULT_LEXICON: PosLexicon | None = None


def default_lexicon() -> PosLexicon:
    global _DEFAULT_LEXICON
    if _DEFAULT_LEXICON is None:
        _DEFAULT_LEXICON = PosLexicon.default()
    return _DEFAULT_LEXICON


def chunk_noun_phrases(text: str, lexicon: PosLexicon | None = None,
                       stopwords=DEFAULT_STOPWORDS) -> list[NounPhrase]:
    """Greedy left-to-right chunks matching (ADJ|NOUN|PROPN)* (NOUN|PROPN).

    Punctuation and citation markers break runs. A maximal run of content
    tags yields its longest prefix ending in NOUN/PROPN; trailing adjectives
    are left unchunked.
    """
    lexicon = lexicon or default_lexicon()
    out: list[NounPhrase] = []
    run: list[tuple[str, str]] = []

    def flush():
        end = len(run)
        while end and run[end - 1][1] == ADJ:
            end -= 1
        if end:
            toks = tuple(tokenize(" ".join(w for w, _ in run[:end])))
            if toks and not all(t in stopwords for t in toks):
                out.append(NounPhrase(" ".join(toks), toks))
        run.clear()

    for m in _CHUNK_TOKEN_RE.finditer(text.replace("'", "").replace("’", "")):
        tok = m.group(0)
        if _WORD_RE.fullmatch(tok):
            tag = lexicon.tag(tok)
            if tag != OTHER:
                run.append((tok, tag))
                continue
        flush()
    flush()
    return out
