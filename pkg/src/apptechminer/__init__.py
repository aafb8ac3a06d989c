"""Mine application areas and problem-solving techniques from a corpus of papers.

The pipeline has four phases: rank area phrases harvested from titles,
assign each paper one area, rank techniques from the citation contexts of
method papers, and assign techniques to cited papers. The results are
bundled into a :class:`~apptechminer.kb.KnowledgeBase`.
"""

__version__ = "0.1.0"

from .config import PipelineConfig, load_config
from .corpus import Corpus, CorpusConfig, Paper, Section, load_corpus
from .kb import KnowledgeBase, load_kb, query_areas_for_technique, query_techniques, save_kb
from .pipeline import build_kb

__all__ = [
    "Corpus", "CorpusConfig", "KnowledgeBase", "Paper", "PipelineConfig", "Section",
    "build_kb", "load_config", "load_corpus", "load_kb", "query_areas_for_technique",
    "query_techniques", "save_kb",
]
