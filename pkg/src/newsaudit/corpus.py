"""Article ingestion and sentence segmentation.

Articles arrive as UTF-8 JSONL with four required fields (id, source,
published_at, title, body) plus outlet metadata from a JSON source
config.  Bodies are segmented into sentences with stable character
offsets so every downstream span can be traced back to the raw text.
"""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass
from datetime import datetime
from enum import Enum
from pathlib import Path
from typing import Iterator

log = logging.getLogger(__name__)

#: Curly double quotes are folded to straight quotes at ingestion so the
#: extraction patterns only ever see one quote character.
_CURLY_QUOTES = {"“": '"', "”": '"'}


def normalize_quotes(text: str) -> str:
    for curly, straight in _CURLY_QUOTES.items():
        text = text.replace(curly, straight)
    return text


class Ideology(str, Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class Outlet:
    """One configured news source."""

    key: str
    display_name: str
    ideology: Ideology
    self_org_names: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.key:
            raise ValueError("outlet key must be non-empty")
        if not self.self_org_names:
            raise ValueError(f"outlet {self.key!r} needs at least one self_org_name")


@dataclass(frozen=True)
class SourceConfig:
    """Outlet metadata keyed by the Article.source value."""

    outlets: dict

    def get(self, key: str) -> Outlet | None:
        return self.outlets.get(key)

    def __contains__(self, key: str) -> bool:
        return key in self.outlets

    def __iter__(self) -> Iterator[Outlet]:
        return iter(self.outlets.values())


def load_source_config(path: "str | Path") -> SourceConfig:
    """Read the outlet config JSON: key -> display_name/ideology/self_org_names."""
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    outlets = {}
    for key, entry in raw.items():
        try:
            ideology = Ideology(entry["ideology"])
        except ValueError:
            raise ValueError(
                f"outlet {key!r}: ideology must be 'left' or 'right', got {entry['ideology']!r}"
            ) from None
        outlets[key] = Outlet(
            key=key,
            display_name=entry["display_name"],
            ideology=ideology,
            self_org_names=tuple(entry["self_org_names"]),
        )
    return SourceConfig(outlets=outlets)


@dataclass(frozen=True)
class Article:
    id: str
    source: str
    published_at: datetime
    title: str
    body: str


@dataclass
class IngestStats:
    """Counters accumulated while reading a corpus file."""

    total_lines: int = 0
    articles: int = 0
    skipped_malformed: int = 0
    skipped_missing_fields: int = 0
    skipped_duplicate_id: int = 0


_REQUIRED_FIELDS = ("id", "source", "published_at", "title", "body")


def _parse_timestamp(value: str) -> datetime:
    # ISO 8601; a trailing Z is accepted as UTC.
    return datetime.fromisoformat(value.replace("Z", "+00:00"))


def parse_article_stream(
    path: "str | Path", stats: IngestStats | None = None
) -> Iterator[Article]:
    """Yield Articles from a JSONL file, lazily.

    Malformed lines, records missing required fields, and records whose
    id was already seen are skipped with a warning; pass an IngestStats
    to observe the counts.  An unreadable file raises at once.  Curly
    double quotes in title and body are normalized to straight quotes.
    """
    p = Path(path)
    if not p.exists():
        raise FileNotFoundError(p)
    if stats is None:
        stats = IngestStats()
    seen_ids: set[str] = set()
    with p.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            stats.total_lines += 1
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                log.warning("%s:%d: skipping malformed line (%s)", p, lineno, exc.msg)
                stats.skipped_malformed += 1
                continue
            if not isinstance(record, dict):
                log.warning("%s:%d: skipping non-object line", p, lineno)
                stats.skipped_malformed += 1
                continue
            missing = [f for f in _REQUIRED_FIELDS if f not in record]
            if missing:
                log.warning("%s:%d: skipping record missing %s", p, lineno, missing)
                stats.skipped_missing_fields += 1
                continue
            try:
                article = Article(
                    id=str(record["id"]),
                    source=str(record["source"]),
                    published_at=_parse_timestamp(record["published_at"]),
                    title=normalize_quotes(str(record["title"])),
                    body=normalize_quotes(str(record["body"])),
                )
            except (TypeError, ValueError, AttributeError) as exc:
                log.warning("%s:%d: skipping unparsable record (%s)", p, lineno, exc)
                stats.skipped_malformed += 1
                continue
            if not article.id:
                log.warning("%s:%d: skipping record with empty id", p, lineno)
                stats.skipped_missing_fields += 1
                continue
            if article.id in seen_ids:
                log.warning("%s:%d: skipping duplicate article id %r", p, lineno, article.id)
                stats.skipped_duplicate_id += 1
                continue
            seen_ids.add(article.id)
            stats.articles += 1
            yield article


@dataclass(frozen=True)
class Sentence:
    """One sentence of an article body, with [start, end) offsets."""

    article_ref: str
    index: int
    span: tuple[int, int]
    text: str


# Trailing-period strings that never end a sentence.  Matched literally
# (case-sensitive) and only when preceded by a non-word character or the
# start of the body, so "Gov." is protected but "Kosygrov." is not.
ABBREVIATIONS = (
    "Dr.", "Mr.", "Ms.", "Mrs.", "Gov.", "Gen.", "Sen.", "Rep.",
    "St.", "U.S.", "Inc.", "No.",
)

_WORD_CHAR = re.compile(r"[A-Za-z0-9]")
_TERMINATOR = re.compile(r"[.!?]")


def _is_abbreviation_period(body: str, i: int) -> bool:
    for abbr in ABBREVIATIONS:
        start = i + 1 - len(abbr)
        if start < 0 or body[start:i + 1] != abbr:
            continue
        if start == 0 or not _WORD_CHAR.match(body[start - 1]):
            return True
    # A lone capital ("Gustave F. Perna") is an initial, not a terminator.
    if i >= 1 and "A" <= body[i - 1] <= "Z":
        if i == 1 or not _WORD_CHAR.match(body[i - 2]):
            return True
    return False


def _quote_regions(body: str) -> list[tuple[int, int]]:
    # Straight double quotes are paired in order of appearance; with an
    # odd count the final quote stays unpaired and protects nothing.
    positions = [m.start() for m in re.finditer('"', body)]
    return [
        (positions[k], positions[k + 1]) for k in range(0, len(positions) - 1, 2)
    ]


def segment_sentences(body: str, article_ref: str = "") -> list[Sentence]:
    """Split a body into sentences with stable character offsets.

    A terminator (. ! ?) ends a sentence when followed by whitespace and
    then a capital letter or an opening quote.  Periods closing a listed
    abbreviation or a single-capital initial never split.  Terminators
    inside a balanced double-quoted
    region never split either, except immediately before the closing
    quote, where the boundary moves past the quote character.  Spans are
    trimmed to non-whitespace text; concatenating the texts with the
    original gaps reproduces the body.
    """
    n = len(body)
    if not body.strip():
        return []
    regions = _quote_regions(body)

    def enclosing(i: int) -> tuple[int, int] | None:
        for open_, close in regions:
            if open_ < i < close:
                return (open_, close)
        return None

    boundaries: list[int] = []
    for m in _TERMINATOR.finditer(body):
        i = m.start()
        if body[i] == "." and _is_abbreviation_period(body, i):
            continue
        end = i + 1
        region = enclosing(i)
        if region is not None:
            if i + 1 != region[1]:
                continue
            end = region[1] + 1
        j = end
        while j < n and body[j].isspace():
            j += 1
        if j == end or j >= n:
            continue
        if body[j].isupper() or body[j] == '"':
            boundaries.append(end)

    sentences: list[Sentence] = []
    start = 0
    for end in boundaries + [n]:
        lo, hi = start, end
        while lo < hi and body[lo].isspace():
            lo += 1
        while hi > lo and body[hi - 1].isspace():
            hi -= 1
        if lo < hi:
            sentences.append(
                Sentence(
                    article_ref=article_ref,
                    index=len(sentences),
                    span=(lo, hi),
                    text=body[lo:hi],
                )
            )
        start = end
    return sentences
