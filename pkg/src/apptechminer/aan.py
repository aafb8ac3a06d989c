"""Converter stub for ACL Anthology Network release files.

Reads ``acl-metadata.txt`` (blocks of ``key = {value}`` lines) and the
citation network (``A ==> B`` lines) and yields corpus records. Raw full
text carries no resolved citation markers, so converted papers have no
sections; citation contexts have to be added by other tooling.
"""

from __future__ import annotations

import re
from collections import defaultdict
from pathlib import Path

from .corpus import Paper
from .errors import FileUnreadable, MalformedRecord

_FIELD_RE = re.compile(r"^\s*(\w+)\s*=\s*\{(.*)\}\s*$")
_EDGE_RE = re.compile(r"^\s*(\S+)\s*==>\s*(\S+)\s*$")


def _read(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8", errors="replace")
    except OSError as exc:
        raise FileUnreadable(path, str(exc)) from exc


def parse_metadata(text: str) -> list[dict]:
    records, current = [], {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            if current:
                records.append(current)
                current = {}
            continue
        m = _FIELD_RE.match(line)
        if not m:
            raise MalformedRecord(lineno, f"expected key = {{value}}, got {line.strip()[:40]!r}")
        current[m.group(1).casefold()] = m.group(2).strip()
    if current:
        records.append(current)
    return records


def parse_network(text: str) -> dict[str, list[str]]:
    refs: dict[str, list[str]] = defaultdict(list)
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        m = _EDGE_RE.match(line)
        if not m:
            raise MalformedRecord(lineno, "expected 'A ==> B'")
        if m.group(2) not in refs[m.group(1)]:
            refs[m.group(1)].append(m.group(2))
    return refs


def convert(metadata_path, network_path=None) -> list[Paper]:
    network = parse_network(_read(network_path)) if network_path else {}
    papers: dict[str, Paper] = {}
    for rec in parse_metadata(_read(metadata_path)):
        try:
            year = int(rec.get("year", ""))
        except ValueError:
            continue
        if not rec.get("id") or not rec.get("title") or rec["id"] in papers:
            continue
        papers[rec["id"]] = Paper(rec["id"], rec["title"], year, rec.get("venue", ""),
                                  references=tuple(network.get(rec["id"], ())))
    return [papers[k] for k in sorted(papers)]
