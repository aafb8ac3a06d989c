"""Pipeline configuration: defaults, ``key = value`` files, validation."""

from __future__ import annotations

import os
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

from .areas import DEFAULT_SEEDS, PER_ORDER, POOLED, S1, S2, S3, SIDES, FunctionalKeywordSet
from .corpus import DEFAULT_METHODOLOGY_VOCAB, CorpusConfig
from .errors import ConfigError, FileUnreadable
from .technique_assign import RANK_KEYS
from .temporal import CITATIONS, PAPERS

ENV_VAR = "APPTECHMINER_CONFIG"

# Per-order score floors for Scheme 3, calibrated on synthetic corpora.
DEFAULT_THRESHOLDS = {1: 0.01, 2: 0.005, 3: 0.005, 4: 0.005}


@dataclass
class PipelineConfig:
    seed_keywords: tuple[tuple[str, str], ...] = DEFAULT_SEEDS
    keywords_file: str | None = None
    bootstrap_rounds: int = 3
    bootstrap_top_m: int = 50
    bootstrap_min_support: int = 5
    scheme: str = S3
    n_max: int = 4
    thresholds: dict[int, float] = field(default_factory=lambda: dict(DEFAULT_THRESHOLDS))
    border_test: str = PER_ORDER
    area_top_n: int = 0
    jm_lambda: float = 0.7
    k1: int = 15
    k2: float = 0.5
    top_k: int = 5
    rank_key: str = "product"
    methodology_vocab: tuple[str, ...] = DEFAULT_METHODOLOGY_VOCAB
    window_years: int = 5
    popularity: str = PAPERS
    year_min: int = 1900
    year_max: int = 2100
    lenient: bool = False
    lexicon_file: str | None = None
    stopwords_file: str | None = None
    threads: int = 1

    def validate(self) -> "PipelineConfig":
        if not self.seed_keywords and not self.keywords_file:
            raise ConfigError("seed_keywords is empty")
        for word, side in self.seed_keywords:
            if side not in SIDES:
                raise ConfigError(f"seed keyword {word!r} has unknown side {side!r}")
        if self.scheme not in (S1, S2, S3):
            raise ConfigError(f"scheme must be S1, S2 or S3, got {self.scheme!r}")
        if self.border_test not in (POOLED, PER_ORDER):
            raise ConfigError("border_test must be pooled or per_order")
        if self.n_max < 1:
            raise ConfigError("n_max must be >= 1")
        if self.scheme == S3:
            missing = [n for n in range(1, self.n_max + 1) if n not in self.thresholds]
            if missing:
                raise ConfigError(f"thresholds missing for n={missing}")
        if not 0.0 < self.jm_lambda < 1.0:
            raise ConfigError("jm_lambda must lie in (0, 1)")
        if self.k1 < 0 or not 0.0 <= self.k2 <= 1.0:
            raise ConfigError("need k1 >= 0 and 0 <= k2 <= 1")
        for name in ("top_k", "window_years", "threads", "bootstrap_rounds",
                     "bootstrap_top_m", "bootstrap_min_support"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be >= 1")
        if self.area_top_n < 0:
            raise ConfigError("area_top_n must be >= 0")
        if self.rank_key not in RANK_KEYS:
            raise ConfigError(f"rank_key must be one of {RANK_KEYS}")
        if self.popularity not in (PAPERS, CITATIONS):
            raise ConfigError("popularity must be papers or citations")
        if self.year_min > self.year_max:
            raise ConfigError("year_min > year_max")
        return self

    def corpus_config(self) -> CorpusConfig:
        return CorpusConfig(self.lenient, self.year_min, self.year_max,
                            tuple(self.methodology_vocab), self.threads)

    def keyword_set(self) -> FunctionalKeywordSet:
        if self.keywords_file:
            from .areas import load_keywords
            return load_keywords(self.keywords_file)
        return FunctionalKeywordSet.from_pairs(self.seed_keywords)

    def snapshot(self) -> dict:
        """Result-affecting settings as plain data (thread count excluded)."""
        out = {}
        for f in fields(self):
            if f.name == "threads":
                continue
            out[f.name] = format_value(f.name, getattr(self, f.name))
        return out

    def with_overrides(self, overrides: dict) -> "PipelineConfig":
        return replace(self, **overrides)


# key -> (help text, note on where the default comes from)
CONFIG_DOCS = {
    "seed_keywords": ("functional keywords as word:side pairs (side: after, before, both)",
                      "four keywords of the original method plus three local picks"),
    "keywords_file": ("keyword file (word<TAB>side lines) replacing seed_keywords", "unset"),
    "bootstrap_rounds": ("maximum keyword bootstrapping rounds", "local choice"),
    "bootstrap_top_m": ("phrases trusted as areas in each bootstrapping round", "local choice"),
    "bootstrap_min_support": ("distinct titles needed to admit a new keyword", "local choice"),
    "scheme": ("area ranking scheme: S1 counts, S2 border pruning, S3 per-order thresholds",
               "S3, the best-performing scheme"),
    "n_max": ("longest area n-gram", "local choice covering 1-4 token areas"),
    "thresholds": ("S3 minimum score per n-gram order, as n:score pairs",
                   "calibrated on synthetic corpora"),
    "border_test": ("relative frequency compared in S2 border pruning: per_order or pooled",
                    "per_order; pooled scores never let an n-gram beat its own borders"),
    "area_top_n": ("use only the top N ranked areas for assignment (0 = all)", "local choice"),
    "jm_lambda": ("Jelinek-Mercer collection weight", "original method setting 0.7"),
    "k1": ("minimum distinct citing papers for a method paper", "original method setting 15"),
    "k2": ("minimum fraction of citation contexts in methodology sections",
           "original method setting 0.5"),
    "top_k": ("techniques kept per paper (K)", "local choice"),
    "rank_key": ("technique ranking weight: product, local or global", "product"),
    "methodology_vocab": ("comma-separated heading terms marking methodology sections",
                          "local choice"),
    "window_years": ("temporal bucket width in years", "5-year windows"),
    "popularity": ("area popularity measure: papers or citations", "papers"),
    "year_min": ("earliest valid publication year", "local choice"),
    "year_max": ("latest valid publication year", "local choice"),
    "lenient": ("skip malformed corpus records instead of failing", "false"),
    "lexicon_file": ("POS lexicon overrides (word<TAB>TAG lines)", "unset"),
    "stopwords_file": ("stopword list replacing the bundled one", "unset"),
    "threads": ("worker threads; results do not depend on it", "1"),
}


def format_value(key: str, value) -> str | int | float | bool | None:
    if key == "seed_keywords":
        return ",".join(f"{w}:{s}" for w, s in value)
    if key == "thresholds":
        return ",".join(f"{n}:{t}" for n, t in sorted(value.items()))
    if key == "methodology_vocab":
        return ",".join(value)
    return value


def parse_value(key: str, raw: str):
    raw = raw.strip()
    defaults = PipelineConfig()
    if not hasattr(defaults, key):
        raise ConfigError(f"unknown config key {key!r}")
    try:
        if key == "seed_keywords":
            pairs = []
            for item in filter(None, (p.strip() for p in raw.split(","))):
                word, _, side = item.partition(":")
                pairs.append((word.strip().casefold(), side.strip().casefold() or "after"))
            return tuple(pairs)
        if key == "thresholds":
            out = {}
            for item in filter(None, (p.strip() for p in raw.split(","))):
                n, _, t = item.partition(":")
                out[int(n)] = float(t)
            return out
        if key == "methodology_vocab":
            return tuple(t.strip().casefold() for t in raw.split(",") if t.strip())
        current = getattr(defaults, key)
        if isinstance(current, bool):
            if raw.casefold() in ("1", "true", "yes", "on"):
                return True
            if raw.casefold() in ("0", "false", "no", "off"):
                return False
            raise ValueError(raw)
        if isinstance(current, int):
            return int(raw)
        if isinstance(current, float):
            return float(raw)
        return raw or None
    except ValueError as exc:
        raise ConfigError(f"bad value for {key}: {raw!r}") from exc


def read_config_file(path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FileUnreadable(path, str(exc)) from exc
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigError(f"{path}:{lineno}: expected key = value")
        key = key.strip()
        out[key] = parse_value(key, value)
    return out


def load_config(path=None, overrides: dict | None = None) -> PipelineConfig:
    """Defaults, then the config file (``path`` or $APPTECHMINER_CONFIG), then overrides."""
    cfg = PipelineConfig()
    path = path or os.environ.get(ENV_VAR)
    if path:
        cfg = cfg.with_overrides(read_config_file(path))
    if overrides:
        cfg = cfg.with_overrides({k: v for k, v in overrides.items() if v is not None})
    return cfg.validate()


def describe_keys() -> str:
    defaults = PipelineConfig()
    lines = ["configuration keys (key = value file; flags override file, file overrides defaults):"]
    for f in fields(PipelineConfig):
        help_text, origin = CONFIG_DOCS[f.name]
        default = format_value(f.name, getattr(defaults, f.name))
        lines.append(f"  {f.name} = {default}")
        lines.append(f"      {help_text} [default: {origin}]")
    return "\n".join(lines)
