"""Evaluation metrics: precision@K, list recall, assignment accuracy, Cohen's kappa."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path

from .errors import (ConfigError, DegenerateChanceAgreement, EmptyGold, EmptyRanking,
                     FileUnreadable, NoOverlap)


@dataclass(frozen=True)
class AgreementMatrix:
    """2x2 counts; first annotator on rows, second on columns."""

    yes_yes: int
    yes_no: int
    no_yes: int
    no_no: int

    def __post_init__(self):
        cells = (self.yes_yes, self.yes_no, self.no_yes, self.no_no)
        if any(c < 0 for c in cells):
            raise ConfigError("agreement counts must be non-negative")
        if sum(cells) == 0:
            raise ConfigError("agreement matrix is empty")

    @property
    def total(self) -> int:
        return self.yes_yes + self.yes_no + self.no_yes + self.no_no

    def transpose(self) -> "AgreementMatrix":
        return AgreementMatrix(self.yes_yes, self.no_yes, self.yes_no, self.no_no)

    @classmethod
    def parse(cls, text: str) -> "AgreementMatrix":
        """From ``yy,yn,ny,nn``."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 4:
            raise ConfigError(f"expected four integers yy,yn,ny,nn, got {text!r}")
        try:
            return cls(*(int(p) for p in parts))
        except ValueError as exc:
            raise ConfigError(f"expected four integers yy,yn,ny,nn, got {text!r}") from exc


def precision_at_k(ranked, gold, k: int) -> float:
    if k < 1:
        raise ConfigError("K must be >= 1")
    ranked = list(ranked)
    if not ranked:
        raise EmptyRanking("ranked list is empty")
    top = ranked[:k]
    gold = set(gold)
    return sum(1 for r in top if r in gold) / min(k, len(ranked))


def recall_of_list(extracted, gold) -> float:
    gold = set(gold)
    if not gold:
        raise EmptyGold("gold set is empty")
    return len(set(extracted) & gold) / len(gold)


def accuracy(pred: dict, gold: dict) -> float:
    """Fraction of gold papers, among those also predicted, whose labels agree."""
    common = [pid for pid in gold if pid in pred]
    if not common:
        raise NoOverlap("prediction and gold share no papers")
    return sum(1 for pid in common if pred[pid] == gold[pid]) / len(common)


def cohens_kappa(m: AgreementMatrix) -> float:
    n = m.total
    p_o = (m.yes_yes + m.no_no) / n
    row_yes, row_no = m.yes_yes + m.yes_no, m.no_yes + m.no_no
    col_yes, col_no = m.yes_yes + m.no_yes, m.yes_no + m.no_no
    p_e = (row_yes * col_yes + row_no * col_no) / (n * n)
    if p_e == 1.0:
        if p_o == 1.0:
            return 1.0
        raise DegenerateChanceAgreement("chance agreement is 1 with observed disagreement")
    return (p_o - p_e) / (1.0 - p_e)


def _read_rows(path) -> list[list[str]]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FileUnreadable(path, str(exc)) from exc
    return [row for row in csv.reader(io.StringIO(text)) if row and any(c.strip() for c in row)]


def read_phrase_list(path) -> list[str]:
    """Phrases from a CSV, in file order.

    Takes the ``phrase`` column when a header names one, otherwise the first
    column; a lone ``phrase`` header line is skipped.
    """
    rows = _read_rows(path)
    if not rows:
        return []
    header = [c.strip().casefold() for c in rows[0]]
    if "phrase" in header:
        col = header.index("phrase")
        return [r[col].strip() for r in rows[1:] if len(r) > col]
    return [r[0].strip() for r in rows]


def read_label_map(path) -> dict[str, str]:
    """``paper_id,label`` rows (an assignment CSV's first two columns also work)."""
    rows = _read_rows(path)
    if rows and rows[0][0].strip().casefold() == "paper_id":
        rows = rows[1:]
    out = {}
    for r in rows:
        if len(r) < 2:
            raise ConfigError(f"{path}: expected paper_id,label rows")
        out[r[0].strip()] = r[1].strip()
    return out
