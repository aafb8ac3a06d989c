"""End-to-end orchestration of the four extraction phases into a knowledge base."""

from __future__ import annotations

import hashlib
import logging
from dataclasses import dataclass

from . import areas as area_mod
from .area_assign import AreaAssignment, assign_all
from .config import PipelineConfig
from .corpus import Corpus, dumps_corpus
from .kb import SCHEMA_VERSION, KnowledgeBase, build_area_technique_map
from .technique_assign import TechniqueAssignment, assign_all_techniques
from .techniques import (GlobalTechniqueVector, MethodPaper, MethodPaperCriteria,
                         build_global_vector, detect_method_papers, rank_techniques)
from .textproc import DEFAULT_STOPWORDS, PosLexicon, default_lexicon, load_stopwords

log = logging.getLogger(__name__)


@dataclass
class Resources:
    lexicon: PosLexicon
    stopwords: frozenset


def resources(cfg: PipelineConfig) -> Resources:
    lexicon = default_lexicon()
    if cfg.lexicon_file:
        lexicon = PosLexicon.from_file(cfg.lexicon_file, base=lexicon)
    stopwords = load_stopwords(cfg.stopwords_file) if cfg.stopwords_file else DEFAULT_STOPWORDS
    return Resources(lexicon, stopwords)


def corpus_fingerprint(corpus: Corpus) -> str:
    return hashlib.sha256(dumps_corpus(corpus.papers.values()).encode("utf-8")).hexdigest()


def scheme_params(cfg: PipelineConfig) -> area_mod.SchemeParams:
    return area_mod.SchemeParams(cfg.scheme, dict(cfg.thresholds), cfg.n_max, cfg.border_test)


def extract_areas(corpus: Corpus, cfg: PipelineConfig, res: Resources | None = None):
    """Phase 1: bootstrap keywords, harvest title phrases, rank them."""
    res = res or resources(cfg)
    keys = area_mod.bootstrap_keywords(
        corpus, cfg.keyword_set(), cfg.bootstrap_rounds, cfg.bootstrap_top_m,
        cfg.bootstrap_min_support, cfg.n_max, res.lexicon, res.stopwords)
    cands = area_mod.harvest_phrases(corpus, keys, res.stopwords)
    ranked = area_mod.rank_areas(cands, scheme_params(cfg), res.stopwords)
    log.info("phase 1: %d keywords, %d candidates, %d ranked areas",
             len(keys), len(cands), len(ranked))
    return keys, ranked


def assignment_areas(ranked, cfg: PipelineConfig) -> list[str]:
    chosen = ranked[:cfg.area_top_n] if cfg.area_top_n else ranked
    return [r.phrase for r in chosen]


def assign_areas(corpus: Corpus, ranked, cfg: PipelineConfig) -> list[AreaAssignment]:
    """Phase 2."""
    return assign_all(corpus, assignment_areas(ranked, cfg), cfg.jm_lambda, cfg.threads)


def extract_techniques(corpus: Corpus, cfg: PipelineConfig, res: Resources | None = None
                       ) -> tuple[list[MethodPaper], GlobalTechniqueVector]:
    """Phase 3."""
    res = res or resources(cfg)
    methods = detect_method_papers(corpus, MethodPaperCriteria(cfg.k1, cfg.k2))
    vec = build_global_vector(corpus, methods, res.lexicon, cfg.threads)
    log.info("phase 3: %d method papers, %d technique phrases", len(methods), len(vec))
    return methods, vec


def assign_techniques(corpus: Corpus, vec: GlobalTechniqueVector, cfg: PipelineConfig,
                      res: Resources | None = None, paper_ids=None
                      ) -> dict[str, TechniqueAssignment]:
    """Phase 4."""
    res = res or resources(cfg)
    return assign_all_techniques(corpus, vec, res.lexicon, cfg.top_k, cfg.rank_key,
                                 cfg.threads, paper_ids)


def build_kb(corpus: Corpus, cfg: PipelineConfig) -> KnowledgeBase:
    cfg.validate()
    res = resources(cfg)
    keys, ranked = extract_areas(corpus, cfg, res)
    paper_area = {a.paper_id: a for a in assign_areas(corpus, ranked, cfg)}
    methods, vec = extract_techniques(corpus, cfg, res)
    paper_techniques = assign_techniques(corpus, vec, cfg, res)
    method_ids = [m.paper_id for m in methods]
    area_techniques = build_area_technique_map(corpus, paper_area, paper_techniques, method_ids)
    meta = {
        "schema_version": SCHEMA_VERSION,
        "config": cfg.snapshot(),
        "corpus_fingerprint": corpus_fingerprint(corpus),
        "corpus_papers": len(corpus),
        "keywords": [[w, s] for w, s in keys.pairs()],
        "method_papers": method_ids,
    }
    return KnowledgeBase(ranked, paper_area, rank_techniques(vec), paper_techniques,
                         area_techniques, meta)
