"""Assigning each paper to one area: direct string match, then smoothed LMs."""

from __future__ import annotations

import csv
import io
import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable

from .errors import InvalidLambda, NoModels
from .textproc import tokenize

DIRECT_TITLE = "DirectMatchTitle"
DIRECT_ABSTRACT = "DirectMatchAbstract"
LANGUAGE_MODEL = "LanguageModel"
UNASSIGNED = "Unassigned"

DEFAULT_LAMBDA = 0.7


@dataclass(frozen=True)
class AreaAssignment:
    paper_id: str
    area: str | None
    method: str
    log_score: float | None = None


@dataclass
class AreaLanguageModel:
    area: str
    token_counts: Counter = field(default_factory=Counter)
    total_tokens: int = 0
    prior_count: int = 0


@dataclass
class CollectionModel:
    token_counts: Counter = field(default_factory=Counter)
    total_tokens: int = 0


def _contains(seq: list[str], phrase: tuple[str, ...]) -> bool:
    n = len(phrase)
    return any(tuple(seq[i:i + n]) == phrase for i in range(len(seq) - n + 1))


def match_areas(tokens: list[str], areas: Iterable[str]) -> set[str]:
    return {a for a in areas if a.split() and _contains(tokens, tuple(a.split()))}


def direct_match(paper, areas: Iterable[str]) -> tuple[set[str], str | None]:
    """Areas occurring token-contiguously in the title, else in the abstract.

    Returns the matched set and which field produced it (DirectMatchTitle,
    DirectMatchAbstract, or None when nothing matched).
    """
    areas = list(areas)
    hits = match_areas(tokenize(paper.title), areas)
    if hits:
        return hits, DIRECT_TITLE
    if paper.abstract:
        hits = match_areas(tokenize(paper.abstract), areas)
        if hits:
            return hits, DIRECT_ABSTRACT
    return set(), None


def query_tokens(paper) -> list[str]:
    return tokenize(paper.title) + tokenize(paper.abstract or "")


def build_language_models(corpus, single_match: Iterable[AreaAssignment]
                          ) -> tuple[dict[str, AreaLanguageModel], CollectionModel]:
    models: dict[str, AreaLanguageModel] = {}
    coll = CollectionModel()
    for a in sorted(single_match, key=lambda a: a.paper_id):
        if a.area is None:
            continue
        m = models.setdefault(a.area, AreaLanguageModel(a.area))
        toks = query_tokens(corpus.papers[a.paper_id])
        m.token_counts.update(toks)
        m.total_tokens += len(toks)
        m.prior_count += 1
        coll.token_counts.update(toks)
        coll.total_tokens += len(toks)
    return models, coll


def _check_lambda(lam: float) -> None:
    if not 0.0 < lam < 1.0:
        raise InvalidLambda(f"lambda must lie in (0, 1), got {lam}")


def jm_probability(token: str, model: AreaLanguageModel, coll: CollectionModel,
                   lam: float = DEFAULT_LAMBDA) -> float:
    """(1 - lam) * P_ml(token | area) + lam * P_ml(token | collection)."""
    _check_lambda(lam)
    if coll.total_tokens <= 0:
        raise NoModels("collection model is empty")
    p_area = model.token_counts.get(token, 0) / model.total_tokens if model.total_tokens else 0.0
    p_coll = coll.token_counts.get(token, 0) / coll.total_tokens
    return (1.0 - lam) * p_area + lam * p_coll


def log_score(tokens: list[str], model: AreaLanguageModel, coll: CollectionModel,
              lam: float = DEFAULT_LAMBDA) -> float:
    s = math.log(model.prior_count)
    for t in tokens:
        if coll.token_counts.get(t, 0) == 0:
            continue
        s += math.log(jm_probability(t, model, coll, lam))
    return s


def classify(paper, models: dict[str, AreaLanguageModel], coll: CollectionModel,
             lam: float = DEFAULT_LAMBDA, candidate_filter: set[str] | None = None
             ) -> AreaAssignment:
    """Area maximizing log P(a) + sum log P(token | a) over title+abstract tokens.

    Tokens unseen in the collection are skipped. Ties go to the larger prior,
    then the lexicographically smaller area.
    """
    _check_lambda(lam)
    if not models:
        raise NoModels("no area language models")
    names = sorted(models) if candidate_filter is None else \
        sorted(a for a in candidate_filter if a in models)
    if not names:
        return AreaAssignment(paper.id, None, UNASSIGNED)
    toks = query_tokens(paper)
    best = min(((-log_score(toks, models[a], coll, lam), -models[a].prior_count, a)
                for a in names))
    return AreaAssignment(paper.id, best[2], LANGUAGE_MODEL, -best[0])


def assign_all(corpus, areas: Iterable[str], lam: float = DEFAULT_LAMBDA,
               threads: int = 1) -> list[AreaAssignment]:
    """Direct match pass, model building from single matches, LM pass for the rest."""
    _check_lambda(lam)
    areas = sorted({" ".join(tokenize(a)) for a in areas} - {""})
    ids = sorted(corpus.papers)
    matches = {pid: direct_match(corpus.papers[pid], areas) for pid in ids}
    direct = {}
    for pid, (hits, how) in matches.items():
        if len(hits) == 1:
            direct[pid] = AreaAssignment(pid, next(iter(hits)), how)
    models, coll = build_language_models(corpus, direct.values())

    def resolve(pid):
        if pid in direct:
            return direct[pid]
        if not models:
            return AreaAssignment(pid, None, UNASSIGNED)
        hits, _ = matches[pid]
        return classify(corpus.papers[pid], models, coll, lam, hits or None)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            return list(ex.map(resolve, ids))
    return [resolve(pid) for pid in ids]


def assignments_to_csv(assignments: Iterable[AreaAssignment]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["paper_id", "area", "method", "log_score"])
    for a in assignments:
        w.writerow([a.paper_id, a.area or "", a.method,
                    "" if a.log_score is None else repr(a.log_score)])
    return buf.getvalue()


def read_assignments_csv(text: str) -> list[AreaAssignment]:
    out = []
    for r in csv.DictReader(io.StringIO(text)):
        score = r.get("log_score") or ""
        out.append(AreaAssignment(r["paper_id"], r["area"] or None, r["method"],
                                  float(score) if score else None))
    return out
