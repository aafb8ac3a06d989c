"""Deterministic synthetic corpora with planted areas, techniques and citations."""

from __future__ import annotations

import csv
import io
import math
import random
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import Corpus, CorpusConfig, Paper, Section, build_corpus
from .errors import InfeasibleConfig

# (area phrase, area-specific abstract vocabulary); token sets are pairwise disjoint.
AREA_VOCAB = (
    ("machine translation", ("bilingual", "parallel", "decoding", "reordering", "phrase-tables",
                             "target-language", "fluency", "adequacy")),
    ("dependency parsing", ("heads", "arcs", "projective", "treebanks", "transition-based",
                            "attachment", "dependents", "graph-based")),
    ("word sense disambiguation", ("senses", "glosses", "polysemous", "lexical-sample",
                                   "sense-inventory", "homonyms", "synsets", "all-words")),
    ("speech recognition", ("acoustic", "phonemes", "utterances", "spoken", "audio",
                            "pronunciation", "transcripts", "microphones")),
    ("sentiment analysis", ("polarity", "opinions", "reviews", "positive", "negative",
                            "subjectivity", "emotions", "ratings")),
    ("question answering", ("questions", "answers", "passages", "factoid", "retrieval",
                            "answer-extraction", "trivia", "comprehension")),
    ("coreference resolution", ("mentions", "antecedents", "pronouns", "anaphora",
                                "entity-mentions", "anaphoric", "salience", "chains")),
    ("text summarization", ("summaries", "extractive", "abstractive", "redundancy", "salient",
                            "condensation", "headlines", "digests")),
    ("semantic role labeling", ("predicates", "arguments", "frames", "propbank-style",
                                "thematic", "agents", "patients", "frame-elements")),
    ("relation extraction", ("relations", "triples", "entity-pairs", "distant",
                             "knowledge-bases", "slot-filling", "pairs", "relational")),
    ("spelling correction", ("misspellings", "typos", "edit-distance", "orthographic", "errors",
                             "keyboard", "spellers", "non-words")),
    ("language identification", ("dialects", "scripts", "code-switching", "tweets",
                                 "orthographies", "character-ngrams", "varieties",
                                 "closely-related")),
)

TECHNIQUES = (
    "Bleu Score", "Penn Treebank", "Collins Parser", "Malt Parser", "Moses Toolkit",
    "Giza Aligner", "Rouge Metric", "Mead Summarizer", "Brill Tagger", "Tnt Tagger",
    "Charniak Parser", "Berkeley Parser", "Mst Parser", "Kneser Ney Smoothing", "Lesk Algorithm",
    "Wordnet Database", "Semcor Corpus", "Propbank Corpus", "Perceptron Algorithm",
    "Maximum Entropy Classifier", "Conditional Random Fields", "Hidden Markov Model",
    "Support Vector Machine", "Latent Dirichlet Allocation", "Stanford Tagger", "Ibm Model",
    "Framenet Lexicon", "Freebase Graph", "Hunspell Checker", "Langid Classifier",
)

NOISE_NPS = (
    "beam search", "development data", "lexical features", "random restarts", "greedy decoding",
    "baseline system", "held-out data", "gold annotations", "cross validation", "grid search",
    "dropout regularization", "early stopping", "batch normalization", "learning rate",
    "error analysis", "bootstrap sampling", "stop lists", "tokenization rules", "length penalty",
    "word clusters", "character embeddings", "pretrained vectors", "oracle features",
    "unigram counts",
)

NOISE_WORDS = (
    "graph", "kernels", "lattices", "embeddings", "constraints", "hypergraphs", "automata",
    "templates", "heuristics", "clusters", "patterns", "priors", "sketches", "mixtures",
    "ensembles", "filters", "grammars", "cascades", "matrices", "tensors",
)

FILLERS = (
    "A Novel Approach", "Efficient Models", "Robust Methods", "Simple Techniques",
    "Learning Strategies", "Improved Features", "Exploring Representations", "Scalable Inference",
    "Empirical Methods", "Unsupervised Learning", "Joint Models", "Fast Algorithms",
)

MEANS = (
    "Graded Constraints", "Latent Variables", "Discriminative Training", "Rich Features",
    "Bayesian Inference", "Weak Supervision", "Tree Kernels", "Structured Prediction",
)

VENUES = ("ACL", "COLING", "EMNLP", "NAACL", "EACL")

METHOD_HEADINGS = ("3 Approach", "3 Method", "3 Our Approach", "3 Methodology", "3 Model")

METHOD_TEMPLATES = (
    "We use the {tech} of {cite}.",
    "Following {cite}, we apply the {tech} here.",
    "The {tech} {cite} is used throughout.",
    "We rely on the {tech} described in {cite}.",
    "As in {cite}, we adopt the {tech}.",
)

RELATED_TEMPLATES = (
    "It was also shown that the {tech} {cite} can be helpful.",
    "The {tech} was introduced by {cite}.",
)


@dataclass
class SynthConfig:
    rng_seed: int = 1
    n_areas: int = 5
    papers_per_area: int = 20
    n_method_papers: int = 10
    techniques_per_method_paper: int = 1
    year_range: tuple[int, int] = (1990, 2013)
    noise_rate: float = 0.0
    min_citers: int = 15
    method_fraction: float = 0.5

    def validate(self) -> None:
        for name in ("n_areas", "papers_per_area", "n_method_papers",
                     "techniques_per_method_paper"):
            if getattr(self, name) < 1:
                raise InfeasibleConfig(f"{name} must be >= 1")
        if not 0.0 <= self.noise_rate < 0.5:
            raise InfeasibleConfig("noise_rate must lie in [0, 0.5)")
        if self.n_areas > len(AREA_VOCAB):
            raise InfeasibleConfig(f"at most {len(AREA_VOCAB)} areas available")
        if self.n_method_papers * self.techniques_per_method_paper > len(TECHNIQUES):
            raise InfeasibleConfig(f"at most {len(TECHNIQUES)} planted techniques available")
        if self.n_areas * self.papers_per_area < self.min_citers:
            raise InfeasibleConfig(
                f"{self.n_areas * self.papers_per_area} citing papers cannot give each method "
                f"paper {self.min_citers} citers")
        if not 0.0 < self.method_fraction <= 1.0:
            raise InfeasibleConfig("method_fraction must lie in (0, 1]")
        lo, hi = self.year_range
        if lo > hi:
            raise InfeasibleConfig("empty year range")


@dataclass
class GroundTruth:
    planted_areas: set[str] = field(default_factory=set)
    paper_area: dict[str, str] = field(default_factory=dict)
    method_techniques: dict[str, tuple[str, ...]] = field(default_factory=dict)
    paper_techniques: dict[str, tuple[str, ...]] = field(default_factory=dict)


def _abstract(rng, words, area_title=None):
    w = rng.sample(words, 5)
    text = (f"We study {w[0]} and {w[1]}. Our method handles {w[2]} with {w[3]}. "
            f"Results on {w[4]} are encouraging.")
    if area_title:
        text = f"This work addresses {area_title}. " + text
    return text


def generate_papers(config: SynthConfig) -> tuple[list[Paper], GroundTruth]:
    config.validate()
    rng = random.Random(config.rng_seed)
    y0, y1 = config.year_range
    area_entries = rng.sample(AREA_VOCAB, config.n_areas)
    areas = [a for a, _ in area_entries]
    words = dict(area_entries)
    tpm = config.techniques_per_method_paper
    techniques = rng.sample(TECHNIQUES, config.n_method_papers * tpm)
    truth = GroundTruth(planted_areas=set(areas))

    # method papers, spread round-robin over areas
    methods = []
    for i in range(config.n_method_papers):
        mid = f"m{i + 1:03d}"
        area = areas[i % len(areas)]
        techs = tuple(techniques[i * tpm:(i + 1) * tpm])
        methods.append((mid, area, techs))
        truth.paper_area[mid] = area
        truth.method_techniques[mid] = tuple(t.lower() for t in techs)
        truth.paper_techniques[mid] = truth.method_techniques[mid]

    # regular papers: (id, area, noise kind)
    regular = []
    for ai, area in enumerate(areas):
        for j in range(config.papers_per_area):
            pid = f"p{ai + 1:02d}{j + 1:03d}"
            kind = "clean"
            if rng.random() < config.noise_rate:
                kind = rng.choice(("generic", "double", "abstract"))
            regular.append((pid, area, kind))
            truth.paper_area[pid] = area

    # methodology citers: every in-area paper, topped up from other areas
    method_citers: dict[str, list[str]] = {}
    regular_ids = [pid for pid, _, _ in regular]
    for k, (mid, area, _) in enumerate(methods):
        citers = [pid for pid, a, _ in regular if a == area]
        if len(citers) < config.min_citers:
            others = [pid for pid in regular_ids if pid not in citers]
            shift = (k * 7) % len(others) if others else 0
            others = others[shift:] + others[:shift]
            citers += others[:config.min_citers - len(citers)]
        method_citers[mid] = citers
    cites_in_method: dict[str, list[str]] = {pid: [] for pid in regular_ids}
    for mid, citers in method_citers.items():
        for pid in citers:
            cites_in_method[pid].append(mid)

    # related-work citations, capped so methodology fraction stays >= method_fraction
    related_cap = {mid: math.floor(len(c) * (1 - config.method_fraction)
                                   / config.method_fraction + 1e-9)
                   for mid, c in method_citers.items()}
    related_used = {mid: 0 for mid in related_cap}
    cites_in_related: dict[str, list[str]] = {pid: [] for pid in regular_ids}
    for pid, area, _ in regular:
        if rng.random() < 0.5:
            pool = [m for m, a, _ in methods if a != area and m not in cites_in_method[pid]
                    and related_used[m] < related_cap[m]]
            if pool:
                m = rng.choice(pool)
                related_used[m] += 1
                cites_in_related[pid].append(m)

    tech_of = {mid: techs for mid, _, techs in methods}
    papers = []
    for mid, area, techs in methods:
        papers.append(Paper(
            id=mid,
            title=f"{techs[0]}: A Toolkit for {area.title()}",
            year=rng.randint(y0, y0 + (y1 - y0) // 2),
            venue=rng.choice(VENUES),
            abstract=_abstract(rng, words[area], area),
            sections=(Section("1 Introduction", "We describe a reusable toolkit."),
                      Section("2 System Description", "The toolkit is released freely.")),
            references=(),
        ))

    for pid, area, kind in regular:
        other = rng.choice([a for a in areas if a != area]) if len(areas) > 1 else area
        filler, means = rng.choice(FILLERS), rng.choice(MEANS)
        if kind == "clean":
            form = rng.randrange(3)
            if form == 0:
                title = f"{filler} for {area.title()}"
            elif form == 1:
                title = f"{area.title()} using {means}"
            else:
                title = f"{filler} for {area.title()} using {means}"
            abstract = _abstract(rng, words[area], area)
        elif kind == "generic":
            noise = " ".join(w.title() for w in rng.sample(NOISE_WORDS, 2))
            title = f"{filler} for {noise}"
            abstract = _abstract(rng, words[area])
        elif kind == "double":
            title = f"{filler} for {area.title()} and {other.title()}"
            abstract = _abstract(rng, words[area])
        else:
            title = f"{filler}: {means}"
            abstract = _abstract(rng, words[area], area)

        method_sents = []
        for mid in cites_in_method[pid]:
            tech = rng.choice(tech_of[mid])
            s = rng.choice(METHOD_TEMPLATES).format(tech=tech, cite=f"[[{mid}]]")
            if rng.random() < config.noise_rate:
                s = s[:-1] + f" together with the {rng.choice(NOISE_NPS)}."
            method_sents.append(s)
        related_sents = ["Prior studies are discussed here."]
        for mid in cites_in_related[pid]:
            tech = rng.choice(tech_of[mid])
            related_sents.append(rng.choice(RELATED_TEMPLATES).format(tech=tech,
                                                                      cite=f"[[{mid}]]"))
        refs = list(cites_in_method[pid]) + list(cites_in_related[pid])
        if rng.random() < config.noise_rate:
            refs.append(f"ext{rng.randrange(10000):04d}")
        papers.append(Paper(
            id=pid,
            title=title,
            year=rng.randint(y0, y1),
            venue=rng.choice(VENUES),
            abstract=abstract,
            sections=(
                Section("1 Introduction", "We address a long-standing problem."),
                Section("2 Related Work", " ".join(related_sents)),
                Section(rng.choice(METHOD_HEADINGS), " ".join(method_sents)
                        or "We describe our setup."),
                Section("4 Experiments", "We report results on several benchmarks."),
            ),
            references=tuple(sorted(set(refs))),
        ))
    papers.sort(key=lambda p: p.id)
    return papers, truth


def generate(config: SynthConfig | None = None,
             corpus_config: CorpusConfig | None = None) -> tuple[Corpus, GroundTruth]:
    papers, truth = generate_papers(config or SynthConfig())
    return build_corpus(papers, corpus_config), truth


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def write_ground_truth(truth: GroundTruth, directory) -> list[Path]:
    """Write areas.csv, paper_area.csv, paper_techniques.csv into ``directory``."""
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    files = {
        "areas.csv": _csv(["phrase"], [[a] for a in sorted(truth.planted_areas)]),
        "paper_area.csv": _csv(["paper_id", "label"], sorted(truth.paper_area.items())),
        "paper_techniques.csv": _csv(["paper_id", "label"],
                                     [[p, t] for p, ts in sorted(truth.paper_techniques.items())
                                      for t in ts]),
    }
    out = []
    for name, text in files.items():
        (d / name).write_text(text, encoding="utf-8")
        out.append(d / name)
    return out
