"""Paper records, corpus loading and citation-context extraction."""

from __future__ import annotations

import json
import re
import sys
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .errors import DuplicateId, FileUnreadable, MalformedRecord
from .textproc import MARKER_RE

METHODOLOGY = "Methodology"
OTHER_SECTION = "Other"

DEFAULT_METHODOLOGY_VOCAB = ("method", "methodology", "approach", "model", "algorithm",
                             "system description")

ABBREVIATIONS = frozenset({
    "e.g", "i.e", "al", "etc", "fig", "figs", "eq", "eqs", "sec", "vs", "cf", "no", "vol",
    "pp", "dr", "mr", "mrs", "ms", "prof", "st", "approx", "resp", "tab",
})


@dataclass(frozen=True)
class Section:
    heading: str
    body: str


@dataclass(frozen=True)
class Paper:
    id: str
    title: str
    year: int
    venue: str = ""
    abstract: str | None = None
    sections: tuple[Section, ...] = ()
    references: tuple[str, ...] = ()

    def to_record(self) -> dict:
        rec = {
            "id": self.id,
            "title": self.title,
            "year": self.year,
            "venue": self.venue,
            "sections": [{"heading": s.heading, "body": s.body} for s in self.sections],
            "references": list(self.references),
        }
        if self.abstract is not None:
            rec["abstract"] = self.abstract
        return rec


@dataclass(frozen=True)
class CitationContext:
    citing_id: str
    cited_id: str
    sentence: str
    section_heading: str
    section_kind: str

    @property
    def in_methodology(self) -> bool:
        return self.section_kind == METHODOLOGY


@dataclass
class CorpusConfig:
    lenient: bool = False
    year_min: int = 1900
    year_max: int = 2100
    methodology_vocab: tuple[str, ...] = DEFAULT_METHODOLOGY_VOCAB
    threads: int = 1


@dataclass
class Diagnostic:
    line: int
    code: str
    detail: str

    def __str__(self) -> str:
        return f"LINE {self.line}: {self.code}: {self.detail}"


@dataclass
class Corpus:
    papers: dict[str, Paper]
    contexts: list[CitationContext]
    inbound_index: dict[str, list[CitationContext]]
    citation_count: dict[str, int]
    unresolved_refs: dict[str, list[str]] = field(default_factory=dict)
    diagnostics: list[Diagnostic] = field(default_factory=list)
    unresolved_markers: int = 0

    def __len__(self) -> int:
        return len(self.papers)

    def ids(self) -> list[str]:
        return sorted(self.papers)

    def citing_papers(self, cited_id: str) -> set[str]:
        return {c.citing_id for c in self.inbound_index.get(cited_id, ())}


def classify_section(heading: str, vocab: Iterable[str] = DEFAULT_METHODOLOGY_VOCAB) -> str:
    """Methodology iff the case-folded, number-stripped heading contains a vocabulary term."""
    h = re.sub(r"[\d.)(:\-]+", " ", heading or "").casefold()
    h = " ".join(h.split())
    if not h:
        return OTHER_SECTION
    return METHODOLOGY if any(term in h for term in vocab) else OTHER_SECTION


_BREAK_RE = re.compile(r"[.!?](?=\s+(?:[A-Z0-9]|\[\[))")


def split_sentences(text: str) -> list[str]:
    """Split at . ! ? followed by whitespace and an uppercase letter, digit or marker."""
    sentences = []
    start = 0
    for m in _BREAK_RE.finditer(text):
        pos = m.start()
        if text[pos] == ".":
            word = re.search(r"([\w.]+)$", text[start:pos])
            if word and word.group(1).casefold().rstrip(".") in ABBREVIATIONS:
                continue
        s = text[start:pos + 1].strip()
        if s:
            sentences.append(s)
        start = pos + 1
    tail = text[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences


def extract_citation_contexts(paper: Paper, resolver: dict[str, str] | None = None,
                              vocab: Iterable[str] = DEFAULT_METHODOLOGY_VOCAB,
                              tally: dict | None = None) -> list[CitationContext]:
    """One context per (sentence, resolved marker) pair.

    ``resolver`` defaults to the paper's own reference list. Markers it
    cannot resolve are skipped and counted in ``tally['unresolved']``.
    """
    if resolver is None:
        resolver = {r: r for r in paper.references}
    vocab = tuple(vocab)
    out = []
    for sec in paper.sections:
        kind = classify_section(sec.heading, vocab)
        for sentence in split_sentences(sec.body):
            for m in MARKER_RE.finditer(sentence):
                cited = resolver.get(m.group(1).strip())
                if cited is None:
                    if tally is not None:
                        tally["unresolved"] = tally.get("unresolved", 0) + 1
                    continue
                out.append(CitationContext(paper.id, cited, sentence, sec.heading, kind))
    return out


def _parse_record(obj, lineno: int, config: CorpusConfig) -> Paper:
    if not isinstance(obj, dict):
        raise MalformedRecord(lineno, "record is not an object")
    for key, typ in (("id", str), ("title", str), ("year", int), ("venue", str)):
        if key not in obj:
            raise MalformedRecord(lineno, f"missing field {key!r}")
        if not isinstance(obj[key], typ) or isinstance(obj[key], bool):
            raise MalformedRecord(lineno, f"field {key!r} must be {typ.__name__}")
    if not obj["id"]:
        raise MalformedRecord(lineno, "empty id")
    if not config.year_min <= obj["year"] <= config.year_max:
        raise MalformedRecord(lineno, f"year {obj['year']} outside {config.year_min}-{config.year_max}")
    abstract = obj.get("abstract")
    if abstract is not None and not isinstance(abstract, str):
        raise MalformedRecord(lineno, "field 'abstract' must be string")
    sections = obj.get("sections", [])
    if not isinstance(sections, list):
        raise MalformedRecord(lineno, "field 'sections' must be array")
    secs = []
    for s in sections:
        if not (isinstance(s, dict) and isinstance(s.get("heading"), str)
                and isinstance(s.get("body"), str)):
            raise MalformedRecord(lineno, "section must have string heading and body")
        secs.append(Section(s["heading"], s["body"]))
    refs = obj.get("references", [])
    if not (isinstance(refs, list) and all(isinstance(r, str) for r in refs)):
        raise MalformedRecord(lineno, "field 'references' must be array of strings")
    return Paper(obj["id"], obj["title"], obj["year"], obj["venue"], abstract, tuple(secs),
                 tuple(refs))


def read_papers(lines: Iterable[str], config: CorpusConfig | None = None,
                diagnostics: list[Diagnostic] | None = None) -> list[Paper]:
    config = config or CorpusConfig()
    diagnostics = diagnostics if diagnostics is not None else []
    papers: list[Paper] = []
    seen: dict[str, int] = {}
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise MalformedRecord(lineno, f"invalid record: {exc.msg}") from exc
            paper = _parse_record(obj, lineno, config)
            if paper.id in seen:
                raise DuplicateId(paper.id, lineno)
        except MalformedRecord as exc:
            diagnostics.append(Diagnostic(lineno, "MALFORMED", exc.detail))
            if not config.lenient:
                raise
            continue
        except DuplicateId as exc:
            diagnostics.append(Diagnostic(lineno, "DUPLICATE_ID", exc.paper_id))
            if not config.lenient:
                raise
            continue
        seen[paper.id] = lineno
        papers.append(paper)
    return papers


def build_corpus(papers: Iterable[Paper], config: CorpusConfig | None = None,
                 diagnostics: list[Diagnostic] | None = None) -> Corpus:
    """Index papers: citation contexts, inbound index, distinct-citer counts."""
    config = config or CorpusConfig()
    by_id: dict[str, Paper] = {}
    for p in papers:
        if p.id in by_id:
            raise DuplicateId(p.id)
        by_id[p.id] = p
    ids = sorted(by_id)

    unresolved_refs = {}
    citation_count: dict[str, int] = defaultdict(int)
    for pid in ids:
        refs = set(by_id[pid].references)
        missing = sorted(r for r in refs if r not in by_id)
        if missing:
            unresolved_refs[pid] = missing
        for r in refs:
            if r in by_id:
                citation_count[r] += 1

    vocab = tuple(config.methodology_vocab)

    def work(pid):
        tally: dict = {}
        return extract_citation_contexts(by_id[pid], vocab=vocab, tally=tally), tally

    if config.threads > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as ex:
            results = list(ex.map(work, ids))
    else:
        results = [work(pid) for pid in ids]

    contexts: list[CitationContext] = []
    inbound: dict[str, list[CitationContext]] = defaultdict(list)
    unresolved_markers = 0
    for ctxs, tally in results:
        contexts.extend(ctxs)
        unresolved_markers += tally.get("unresolved", 0)
        for c in ctxs:
            inbound[c.cited_id].append(c)
    return Corpus(by_id, contexts, dict(inbound), dict(citation_count), unresolved_refs,
                  list(diagnostics or []), unresolved_markers)


def load_corpus(path, config: CorpusConfig | None = None, report=None) -> Corpus:
    """Load a line-delimited corpus file; ``path`` may be ``'-'`` for stdin.

    Per-record problems go to ``report`` (default stderr) as
    ``LINE <n>: <code>: <detail>``. Unless ``config.lenient`` the first
    problem is raised.
    """
    config = config or CorpusConfig()
    report = sys.stderr if report is None else report
    try:
        if str(path) == "-":
            lines = sys.stdin.read().splitlines()
        else:
            lines = Path(path).read_text(encoding="utf-8").splitlines()
    except (OSError, UnicodeDecodeError) as exc:
        raise FileUnreadable(path, str(exc)) from exc
    diagnostics: list[Diagnostic] = []
    try:
        papers = read_papers(lines, config, diagnostics)
    finally:
        for d in diagnostics:
            print(d, file=report)
    corpus = build_corpus(papers, config, diagnostics)
    return corpus


def dumps_corpus(papers: Iterable[Paper]) -> str:
    lines = [json.dumps(p.to_record(), ensure_ascii=False, sort_keys=True)
             for p in sorted(papers, key=lambda p: p.id)]
    return "".join(line + "\n" for line in lines)


def save_corpus(corpus_or_papers, path) -> None:
    papers = corpus_or_papers.papers.values() if isinstance(corpus_or_papers, Corpus) \
        else corpus_or_papers
    text = dumps_corpus(papers)
    if str(path) == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")
