"""The knowledge base: phase outputs, the area -> technique map, queries, persistence."""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path

from .area_assign import AreaAssignment
from .areas import RankedArea
from .errors import FileUnreadable, SchemaVersionMismatch, UnknownArea, UnknownTechnique
from .technique_assign import TechniqueAssignment
from .techniques import GlobalTechniqueVector, RankedTechnique
from .textproc import tokenize

SCHEMA_VERSION = 1


@dataclass
class KnowledgeBase:
    ranked_areas: list[RankedArea]
    paper_area: dict[str, AreaAssignment]
    ranked_techniques: list[RankedTechnique]
    paper_techniques: dict[str, TechniqueAssignment]
    area_techniques: dict[str, dict[str, int]]
    build_meta: dict = field(default_factory=dict)

    @property
    def method_papers(self) -> list[str]:
        return list(self.build_meta.get("method_papers", []))

    def global_vector(self) -> GlobalTechniqueVector:
        return GlobalTechniqueVector.from_counts({r.phrase: r.count
                                                  for r in self.ranked_techniques})

    def areas(self) -> set[str]:
        known = {r.phrase for r in self.ranked_areas}
        known |= {a.area for a in self.paper_area.values() if a.area}
        return known

    def to_document(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "build_meta": self.build_meta,
            "ranked_areas": [
                {"rank": r.rank, "phrase": r.phrase, "n": r.n, "count": r.count, "score": r.score}
                for r in self.ranked_areas],
            "paper_area": {
                pid: {"area": a.area, "method": a.method, "log_score": a.log_score}
                for pid, a in self.paper_area.items()},
            "ranked_techniques": [
                {"rank": r.rank, "phrase": r.phrase, "count": r.count}
                for r in self.ranked_techniques],
            "paper_techniques": {
                pid: [[p, s] for p, s in a.techniques]
                for pid, a in self.paper_techniques.items()},
            "area_techniques": self.area_techniques,
        }

    @classmethod
    def from_document(cls, doc: dict) -> "KnowledgeBase":
        version = doc.get("schema_version")
        if version != SCHEMA_VERSION:
            raise SchemaVersionMismatch(f"expected schema_version {SCHEMA_VERSION}, got {version!r}")
        ranked_areas = sorted(
            (RankedArea(r["phrase"], r["n"], r["count"], r["score"], r["rank"])
             for r in doc["ranked_areas"]), key=lambda r: r.rank)
        paper_area = {pid: AreaAssignment(pid, a["area"], a["method"], a["log_score"])
                      for pid, a in doc["paper_area"].items()}
        ranked_techniques = sorted(
            (RankedTechnique(r["phrase"], r["count"], r["rank"]) for r in doc["ranked_techniques"]),
            key=lambda r: r.rank)
        paper_techniques = {pid: TechniqueAssignment(pid, tuple((p, s) for p, s in techs))
                            for pid, techs in doc["paper_techniques"].items()}
        area_techniques = {a: dict(t) for a, t in doc["area_techniques"].items()}
        return cls(ranked_areas, paper_area, ranked_techniques, paper_techniques,
                   area_techniques, doc.get("build_meta", {}))


def area_technique_contributions(corpus, paper_area, paper_techniques, method_ids):
    """Yield (paper_id, area, techniques) per assigned paper.

    ``techniques`` is the union of the assigned techniques of every method
    paper the paper cites from a methodology section.
    """
    method_ids = set(method_ids)
    by_citer = defaultdict(set)
    for c in corpus.contexts:
        if c.in_methodology and c.cited_id in method_ids:
            by_citer[c.citing_id].add(c.cited_id)
    for pid in sorted(corpus.papers):
        a = paper_area.get(pid)
        if a is None or a.area is None:
            continue
        techs: set[str] = set()
        for m in by_citer.get(pid, ()):
            ta = paper_techniques.get(m)
            if ta is not None:
                techs.update(ta.phrases())
        if techs:
            yield pid, a.area, techs


def build_area_technique_map(corpus, paper_area, paper_techniques, method_ids
                             ) -> dict[str, dict[str, int]]:
    """Count, per area, the papers whose cited method papers bring each technique."""
    counts: dict[str, dict[str, int]] = {}
    for _, area, techs in area_technique_contributions(corpus, paper_area, paper_techniques,
                                                       method_ids):
        row = counts.setdefault(area, {})
        for t in techs:
            row[t] = row.get(t, 0) + 1
    return {a: dict(sorted(row.items())) for a, row in sorted(counts.items())}


def _normalize(phrase: str) -> str:
    return " ".join(tokenize(phrase))


def _ranked(items, top_k):
    ordered = sorted(items, key=lambda kv: (-kv[1], kv[0]))
    return ordered[:top_k] if top_k is not None else ordered


def query_techniques(kb: KnowledgeBase, area: str, top_k: int | None = 10
                     ) -> list[tuple[str, int]]:
    key = _normalize(area)
    if key not in kb.area_techniques and key not in kb.areas():
        raise UnknownArea(area)
    return _ranked(kb.area_techniques.get(key, {}).items(), top_k)


def query_areas_for_technique(kb: KnowledgeBase, technique: str, top_k: int | None = 10
                              ) -> list[tuple[str, int]]:
    key = _normalize(technique)
    if key not in {r.phrase for r in kb.ranked_techniques}:
        raise UnknownTechnique(technique)
    hits = [(a, row[key]) for a, row in kb.area_techniques.items() if row.get(key)]
    return _ranked(hits, top_k)


def dumps_kb(kb: KnowledgeBase) -> str:
    return json.dumps(kb.to_document(), sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def save_kb(kb: KnowledgeBase, path) -> None:
    Path(path).write_text(dumps_kb(kb), encoding="utf-8")


def load_kb(path) -> KnowledgeBase:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise FileUnreadable(path, str(exc)) from exc
    if not isinstance(doc, dict):
        raise SchemaVersionMismatch("knowledge base document is not an object")
    return KnowledgeBase.from_document(doc)
