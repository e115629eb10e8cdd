"""Link organization mentions to curated gazetteers of institutions.

Three gazetteers are supported: ranked academic institutions, federal
agencies, and think tanks.  Matching uses a token-set similarity score on
top of Levenshtein distance, so word order and extra qualifiers ("The
University of Maryland - College Park" vs. "The University of Maryland")
do not defeat the match, while short abbreviations ("CDC") stay below the
linking threshold by design.
"""

from __future__ import annotations

import csv
import logging
import re
from collections import Counter
from dataclasses import dataclass, replace
from enum import Enum
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Sequence

log = logging.getLogger(__name__)

#: Scores at or above this value count as a match, both for linking and
#: for deduplication elsewhere in the pipeline.
MATCH_THRESHOLD = 90

#: Mentions this short (after trimming) are noise ("'s", "AP") and are
#: never linked.
MIN_MENTION_CHARS = 3


class OrgType(str, Enum):
    ACADEMIC = "academic"
    FEDERAL = "federal"
    THINK_TANK = "think_tank"


# Tie-break priority when two records score the same.
_TYPE_PRIORITY = {OrgType.ACADEMIC: 0, OrgType.FEDERAL: 1, OrgType.THINK_TANK: 2}


@dataclass(frozen=True)
class OrgRecord:
    """One gazetteer entry.

    ``world_rank`` and ``public_health_rank`` are only meaningful for
    academic records; ``world_rank`` follows the source ranking (1 is the
    most prestigious institution).
    """

    name: str
    org_type: OrgType
    world_rank: int | None = None
    public_health_rank: int | None = None

    def __post_init__(self) -> None:
        if not self.name.strip():
            raise ValueError("gazetteer record needs a non-empty name")
        if self.org_type is not OrgType.ACADEMIC:
            if self.world_rank is not None or self.public_health_rank is not None:
                raise ValueError("ranks are only valid on academic records")
        if self.world_rank is not None and self.world_rank < 1:
            raise ValueError("world_rank starts at 1")
        if self.public_health_rank is not None and self.public_health_rank < 1:
            raise ValueError("public_health_rank starts at 1")


@dataclass(frozen=True)
class OrgLink:
    """A resolved link from a mention string to a gazetteer record."""

    mention_text: str
    record: OrgRecord
    score: int

    def __post_init__(self) -> None:
        if self.score < MATCH_THRESHOLD:
            raise ValueError(f"link score {self.score} below threshold {MATCH_THRESHOLD}")


def levenshtein(a: str, b: str) -> int:
    """Classic edit distance (insert/delete/substitute, all cost 1)."""
    if a == b:
        return 0
    if not a:
        return len(b)
    if not b:
        return len(a)
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        cur = [i]
        for j, cb in enumerate(b, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


_TOKEN_RE = re.compile(r"[a-z0-9]+")


def _token_set(s: str) -> set[str]:
    return set(_TOKEN_RE.findall(s.casefold()))


@lru_cache(maxsize=8192)
def _token_set_cached(s: str) -> frozenset[str]:
    return frozenset(_TOKEN_RE.findall(s.casefold()))


def _ratio(x: str, y: str) -> float:
    return 100.0 * (1.0 - levenshtein(x, y) / max(len(x), len(y), 1))


def _ratio_upper_bound(x: str, y: str, floor: float = -1.0) -> float:
    # Cheap upper bounds that avoid the O(n*m) distance when a pair
    # cannot win: the distance is at least the length difference, and at
    # least the number of characters of the longer string not covered by
    # the character multiset of the other.  If the length bound alone is
    # already at or below ``floor`` it is returned without building the
    # multisets (still a valid upper bound).
    lx, ly = len(x), len(y)
    m = max(lx, ly, 1)
    len_bound = 100.0 * (1.0 - abs(lx - ly) / m)
    if len_bound <= floor:
        return len_bound
    overlap = sum((Counter(x) & Counter(y)).values())
    lower = max(abs(lx - ly), m - overlap)
    return 100.0 * (1.0 - lower / m)


def _pair_strings(ta: frozenset | set, tb: frozenset | set) -> tuple[str, str, str]:
    inter = sorted(ta & tb)
    s_i = " ".join(inter)
    s_a = " ".join(inter + sorted(ta - tb))
    s_b = " ".join(inter + sorted(tb - ta))
    return s_i, s_a, s_b


def _score_pairs(s_i: str, s_a: str, s_b: str) -> int:
    best = 0.0
    # (A, B) first: it usually carries the maximum, so the later pairs
    # tend to be eliminated by their bounds.
    for x, y in ((s_a, s_b), (s_i, s_a), (s_i, s_b)):
        if x == y:
            best = 100.0
            break
        if _ratio_upper_bound(x, y, best) <= best:
            continue
        r = _ratio(x, y)
        if r > best:
            best = r
    return int(round(best))


def token_set_similarity(a: str, b: str) -> int:
    """Similarity in [0, 100] between two names, robust to word order.

    Both strings are case-folded and tokenized on non-alphanumerics.  With
    I the sorted shared tokens, A = I plus the tokens only in ``a`` and
    B = I plus the tokens only in ``b`` (each joined by single spaces),
    the score is the best plain Levenshtein ratio among the pairs (I, A),
    (I, B) and (A, B), rounded to an integer.

    Consequences worth knowing: equal strings score 100, and whenever one
    token set contains the other the score is also 100.
    """
    s_i, s_a, s_b = _pair_strings(_token_set(a), _token_set(b))
    return _score_pairs(s_i, s_a, s_b)


def link_org(
    mention: "str | object",
    gazetteers: Sequence[OrgRecord],
    threshold: int = MATCH_THRESHOLD,
) -> OrgLink | None:
    """Best-scoring gazetteer record for a mention, or None.

    Accepts an OrgMention-like object (anything with a ``text`` attribute)
    or a plain string.  Returns None for mentions with fewer than three
    alphanumeric characters ("''s" counts one, so punctuation fragments
    never reach the subset rule) and for best scores below the threshold.
    Ties are broken by org type (academic, then federal, then think tank)
    and then by the lexicographically smallest record name, so the result
    does not depend on gazetteer order.
    """
    text = getattr(mention, "text", mention)
    if not isinstance(text, str):
        raise TypeError("mention must be a string or have a .text attribute")
    text = text.strip()
    if sum(c.isalnum() for c in text) < MIN_MENTION_CHARS:
        return None
    ta = _token_set_cached(text)
    best_key: tuple[int, int, str] | None = None
    best_rec: OrgRecord | None = None
    best_score = -1
    for rec in gazetteers:
        s_i, s_a, s_b = _pair_strings(ta, _token_set_cached(rec.name))
        if s_i != s_a and s_i != s_b and s_a != s_b:
            # A record that provably cannot reach the threshold or tie
            # the current best can be dropped on its upper bound alone;
            # rounding is monotone, so no exact score is lost.
            cutoff = max(threshold, best_score)
            ub = max(
                _ratio_upper_bound(s_a, s_b, cutoff - 1),
                _ratio_upper_bound(s_i, s_a, cutoff - 1),
                _ratio_upper_bound(s_i, s_b, cutoff - 1),
            )
            if int(round(ub)) < cutoff:
                continue
        s = _score_pairs(s_i, s_a, s_b)
        key = (-s, _TYPE_PRIORITY[rec.org_type], rec.name)
        if best_key is None or key < best_key:
            best_key, best_rec, best_score = key, rec, s
    if best_rec is None or best_score < threshold:
        return None
    return OrgLink(mention_text=text, record=best_rec, score=best_score)


def default_gazetteer_dir() -> Path:
    """Directory of the gazetteer files shipped with the package."""
    return Path(__file__).parent / "data" / "gazetteers"


def _data_rows(path: Path) -> Iterable[list[str]]:
    """CSV rows of a gazetteer file, skipping comments and the header."""
    with path.open(newline="", encoding="utf-8") as fh:
        rows = [r for r in csv.reader(fh) if r and not r[0].lstrip().startswith("#")]
    return rows[1:]  # header row


def _text_lines(path: Path) -> list[str]:
    out = []
    for line in path.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            out.append(line)
    return out


def load_gazetteers(gazetteer_dir: "str | Path") -> list[OrgRecord]:
    """Load all gazetteer files from a directory into OrgRecords.

    Expects ``universities.csv`` (rank,name), ``public_health.csv``
    (rank,name), ``federal.txt`` (one agency per line) and
    ``thinktanks.csv`` (name with an optional region column).  Lines
    starting with '#' are comments in every file.  A missing file is
    fatal; duplicate names within a file are logged and the first
    occurrence kept.

    Public-health rows are joined onto the academic records by token-set
    similarity at the match threshold; rows that match no university are
    kept as academic records carrying only a public-health rank, with a
    warning.
    """
    d = Path(gazetteer_dir)
    for required in ("universities.csv", "public_health.csv", "federal.txt", "thinktanks.csv"):
        if not (d / required).exists():
            raise FileNotFoundError(f"missing gazetteer file: {d / required}")

    academics: list[OrgRecord] = []
    seen: set[str] = set()
    for row in _data_rows(d / "universities.csv"):
        rank, name = int(row[0]), row[1].strip()
        key = name.casefold()
        if key in seen:
            log.warning("duplicate university %r ignored", name)
            continue
        seen.add(key)
        academics.append(OrgRecord(name, OrgType.ACADEMIC, world_rank=rank))

    for row in _data_rows(d / "public_health.csv"):
        ph_rank, name = int(row[0]), row[1].strip()
        best_i, best_key = None, None
        for i, rec in enumerate(academics):
            s = token_set_similarity(name, rec.name)
            if s < MATCH_THRESHOLD:
                continue
            key = (-s, rec.name)
            if best_key is None or key < best_key:
                best_i, best_key = i, key
        if best_i is None:
            log.info("public-health school %r matches no ranked university; kept standalone", name)
            if name.casefold() in seen:
                log.warning("duplicate public-health school %r ignored", name)
                continue
            seen.add(name.casefold())
            academics.append(OrgRecord(name, OrgType.ACADEMIC, public_health_rank=ph_rank))
        elif academics[best_i].public_health_rank is not None:
            log.warning("university %r already has a public-health rank; %r ignored",
                        academics[best_i].name, name)
        else:
            academics[best_i] = replace(academics[best_i], public_health_rank=ph_rank)

    records = list(academics)
    seen = set()
    for name in _text_lines(d / "federal.txt"):
        if name.casefold() in seen:
            log.warning("duplicate federal agency %r ignored", name)
            continue
        seen.add(name.casefold())
        records.append(OrgRecord(name, OrgType.FEDERAL))

    seen = set()
    for row in _data_rows(d / "thinktanks.csv"):
        name = row[0].strip()
        if not name:
            continue
        if name.casefold() in seen:
            log.warning("duplicate think tank %r ignored", name)
            continue
        seen.add(name.casefold())
        records.append(OrgRecord(name, OrgType.THINK_TANK))

    return records
