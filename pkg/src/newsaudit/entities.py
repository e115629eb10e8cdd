"""PERSON and ORG mention finding, gender classification, expert identity.

Mentions are found with capitalized-run heuristics driven by shipped word
lists (honorifics, first names, function-word stoplist, institutional cue
tokens) plus fuzzy matching against the organization gazetteers.  Gender
comes from a first-name dictionary with a manual-override layer keyed on
the exact surface string.  Experts are deduplicated across the corpus by
fuzzy full-name matching against previously founded identities.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from pathlib import Path
from typing import Mapping, Sequence

from .orglink import (
    MATCH_THRESHOLD,
    _pair_strings,
    _ratio_upper_bound,
    _score_pairs,
    _token_set_cached,
    token_set_similarity,
)

# Word tokens keep internal apostrophes and hyphens ("O'Brien", "Inter-American").
_TOKEN_RE = re.compile(r"[A-Za-z0-9]+(?:['’-][A-Za-z0-9]+)*")

#: Lowercase tokens allowed in the middle of an organization name run.
ORG_CONNECTORS = frozenset(
    {"of", "for", "and", "the", "at", "in", "on", "a", "de", "la", "van", "von", "der"}
)

#: A capitalized run is an organization candidate when it carries one of
#: these tokens (a trailing plural "s" is tolerated) or fuzzy-matches a
#: gazetteer name.
ORG_CUES = (
    "University", "Institute", "Institution", "College", "Department",
    "Centers", "Center", "Agency", "Administration", "Hospital", "School",
)

#: Head nouns that mark a capitalized run as institutional rather than a
#: person name.  Founder-named organizations ("Russell Sage Foundation")
#: start with dictionary first names, so the person finder rejects any
#: run carrying one of these.  Superset of the org cue tokens.
_EXTRA_ORG_HEADS = (
    "Foundation", "Fund", "Council", "Society", "Association", "Committee",
    "Commission", "Academy", "Endowment", "Corporation", "Laboratory",
    "Bureau", "Office", "Organization", "Organisation", "Trust",
)

_ORG_HEAD_TOKENS = frozenset(
    [w for c in ORG_CUES + _EXTRA_ORG_HEADS for w in (c, c + "s")]
)

#: Longest capitalized run accepted as a person name.
MAX_NAME_TOKENS = 4

_PERSON_GAP = re.compile(r"^\.?\s*$")
_ORG_GAP = re.compile(r"^[.\-]?\s*$")


@dataclass(frozen=True)
class _Token:
    text: str
    start: int
    end: int


def _tokens(text: str) -> list[_Token]:
    return [_Token(m.group(), m.start(), m.end()) for m in _TOKEN_RE.finditer(text)]


def _is_cap(token: str) -> bool:
    return token[:1].isupper()


@dataclass(frozen=True)
class PersonMention:
    """A capitalized-run person name; the honorific is not part of text."""

    text: str
    span: tuple[int, int]
    first_token: str


@dataclass(frozen=True)
class OrgMention:
    text: str
    span: tuple[int, int]

    def __post_init__(self) -> None:
        if len(self.text.strip()) < 3:
            raise ValueError("organization mentions under three characters are noise")


class RawGender(str, Enum):
    MALE = "male"
    FEMALE = "female"
    ANDY = "andy"
    UNKNOWN = "unknown"


class MergedGender(str, Enum):
    MAN = "Man"
    WOMAN = "Woman"
    UNKNOWN = "Unknown"


_MERGE = {
    RawGender.MALE: MergedGender.MAN,
    RawGender.FEMALE: MergedGender.WOMAN,
    RawGender.ANDY: MergedGender.UNKNOWN,
    RawGender.UNKNOWN: MergedGender.UNKNOWN,
}


@dataclass(frozen=True)
class GenderLabel:
    raw: RawGender
    merged: MergedGender

    @classmethod
    def from_raw(cls, raw: RawGender) -> "GenderLabel":
        return cls(raw=raw, merged=_MERGE[raw])

    def __post_init__(self) -> None:
        if _MERGE[self.raw] is not self.merged:
            raise ValueError(f"merged label {self.merged} inconsistent with raw {self.raw}")


# ---------------------------------------------------------------------------
# resource loading


def _default_data(name: str) -> Path:
    return Path(__file__).parent / "data" / name


def load_gender_dict(path: "str | Path | None" = None) -> dict[str, RawGender]:
    """first_name<TAB>label rows; keys are casefolded first names."""
    p = Path(path) if path is not None else _default_data("names_gender.tsv")
    out: dict[str, RawGender] = {}
    for lineno, line in enumerate(p.read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        name, _, label = line.partition("\t")
        if not label:
            raise ValueError(f"{p}:{lineno}: expected name<TAB>label")
        out[name.strip().casefold()] = RawGender(label.strip())
    return out


def load_overrides(path: "str | Path | None" = None) -> dict[str, RawGender]:
    """full_name<TAB>label rows; keys are exact, case-sensitive strings."""
    p = Path(path) if path is not None else _default_data("manual_overrides.tsv")
    out: dict[str, RawGender] = {}
    for lineno, line in enumerate(p.read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        name, _, label = line.partition("\t")
        if not label:
            raise ValueError(f"{p}:{lineno}: expected full_name<TAB>label")
        out[name.strip()] = RawGender(label.strip())
    return out


def _load_lines(path: Path) -> list[str]:
    out = []
    for line in path.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            out.append(line)
    return out


def load_honorifics(path: "str | Path | None" = None) -> frozenset[str]:
    """Title tokens that trigger a following name ("Dr.", "President").

    A single trailing period is stripped so entries compare against bare
    word tokens; matching is case-sensitive.
    """
    p = Path(path) if path is not None else _default_data("honorifics.txt")
    return frozenset(e[:-1] if e.endswith(".") else e for e in _load_lines(p))


def load_stoplist(path: "str | Path | None" = None) -> frozenset[str]:
    """Casefolded function words that never start a sentence-initial name."""
    p = Path(path) if path is not None else _default_data("stoplist.txt")
    return frozenset(e.casefold() for e in _load_lines(p))


# ---------------------------------------------------------------------------
# person mentions


def find_person_mentions(
    sentence,
    first_name_dict: Mapping[str, RawGender],
    stoplist: frozenset[str],
    honorifics: frozenset[str],
) -> list[PersonMention]:
    """Capitalized token runs of length 1..4 that look like person names.

    A run starts at a capitalized token that either follows an honorific
    or whose casefolded text is in the first-name dictionary.  Runs grow
    over capitalized tokens separated by a space or a single period
    (middle initials), stop at honorifics, and are rejected outright when
    longer than four tokens or when they contain an institutional cue
    token ("Russell Sage Foundation" is an organization even though
    Russell is a first name).  A sentence-initial token on the stoplist
    never starts a mention.
    """
    text = getattr(sentence, "text", sentence)
    toks = _tokens(text)
    mentions: list[PersonMention] = []
    i = 0
    while i < len(toks):
        tok = toks[i]
        if tok.text in honorifics or not _is_cap(tok.text):
            i += 1
            continue
        trigger = False
        if i > 0 and toks[i - 1].text in honorifics and _gap(text, toks[i - 1], tok, _PERSON_GAP):
            trigger = True
        elif tok.text.casefold() in first_name_dict:
            trigger = True
        if i == 0 and tok.text.casefold() in stoplist:
            trigger = False
        if not trigger:
            i += 1
            continue
        j = i
        while (
            j + 1 < len(toks)
            and _is_cap(toks[j + 1].text)
            and toks[j + 1].text not in honorifics
            and _gap(text, toks[j], toks[j + 1], _PERSON_GAP)
        ):
            j += 1
        run_has_head = any(toks[k].text in _ORG_HEAD_TOKENS for k in range(i, j + 1))
        if j - i + 1 <= MAX_NAME_TOKENS and not run_has_head:
            mentions.append(
                PersonMention(
                    text=text[toks[i].start:toks[j].end],
                    span=(toks[i].start, toks[j].end),
                    first_token=toks[i].text,
                )
            )
        i = j + 1
    return mentions


def person_exclusion_spans(
    sentence,
    mentions: Sequence[PersonMention],
    honorifics: frozenset[str],
) -> list[tuple[int, int]]:
    """Mention spans widened over an immediately preceding honorific.

    Passing these to :func:`find_org_mentions` lets "Dr. Jane Doe of the
    Food and Drug Administration" trim down to the agency name; the bare
    mention span would leave "Dr" stranded at the head of the run.
    """
    text = getattr(sentence, "text", sentence)
    toks = _tokens(text)
    spans: list[tuple[int, int]] = []
    for m in mentions:
        start, end = m.span
        prev = None
        for tok in toks:
            if tok.end > start:
                break
            prev = tok
        if (
            prev is not None
            and prev.text in honorifics
            and _PERSON_GAP.match(text[prev.end:start])
        ):
            start = prev.start
        spans.append((start, end))
    return spans


def _gap(text: str, left: _Token, right: _Token, pattern: re.Pattern) -> bool:
    return bool(pattern.match(text[left.end:right.start]))


# ---------------------------------------------------------------------------
# org mentions


def _cue_tokens() -> frozenset[str]:
    base = set(ORG_CUES)
    base.update(c + "s" for c in ORG_CUES)
    return frozenset(base)


_CUES_WITH_PLURALS = _cue_tokens()


@lru_cache(maxsize=65536)
def _matches_any_name(
    text: str, names: tuple[str, ...], threshold: int = MATCH_THRESHOLD
) -> bool:
    ta = _token_set_cached(text)
    for name in names:
        s_i, s_a, s_b = _pair_strings(ta, _token_set_cached(name))
        if s_i == s_a or s_i == s_b or s_a == s_b:
            return True
        ub = max(
            _ratio_upper_bound(s_a, s_b, threshold - 1),
            _ratio_upper_bound(s_i, s_a, threshold - 1),
            _ratio_upper_bound(s_i, s_b, threshold - 1),
        )
        if int(round(ub)) < threshold:
            continue
        if _score_pairs(s_i, s_a, s_b) >= threshold:
            return True
    return False


def find_org_mentions(
    sentence,
    gazetteer_names: Sequence[str],
    exclude_spans: Sequence[tuple[int, int]] = (),
    cues: Sequence[str] = ORG_CUES,
) -> list[OrgMention]:
    """Capitalized runs that look like organization names.

    Runs may contain lowercase connector tokens ("of", "for", "and", ...)
    and grow over gaps of space, hyphen, or a single period, but never
    across commas.  ``exclude_spans`` (person mentions) trim a run's
    prefix, so "John Marsh of Yale University" reduces to the
    institution; spans in the middle of a run never split it, because a
    name token that doubles as a first name ("University of Virginia")
    must not punch a hole in the organization name.  A trimmed run
    qualifies if it contains an institutional cue token (plural "s"
    tolerated) or fuzzy-matches one of ``gazetteer_names`` at the shared
    threshold.  Mentions of fewer than three characters are dropped.
    """
    text = getattr(sentence, "text", sentence)
    cue_set = _CUES_WITH_PLURALS if tuple(cues) == ORG_CUES else frozenset(
        list(cues) + [c + "s" for c in cues]
    )
    names_t = tuple(gazetteer_names)
    toks = _tokens(text)
    mentions: list[OrgMention] = []
    run: list[_Token] = []

    def _covered(tok: _Token) -> bool:
        return any(tok.start < hi and lo < tok.end for lo, hi in exclude_spans)

    def flush() -> None:
        nonlocal run
        items = list(run)
        run = []
        while True:
            before = len(items)
            while items and _covered(items[0]):
                items.pop(0)
            while items and items[0].text.casefold() in ORG_CONNECTORS:
                items.pop(0)
            if len(items) == before:
                break
        while items and items[-1].text.casefold() in ORG_CONNECTORS:
            items.pop()
        if not items:
            return
        if not (_is_cap(items[0].text) and _is_cap(items[-1].text)):
            return
        mention_text = text[items[0].start:items[-1].end]
        if len(mention_text.strip()) < 3:
            return
        if not (
            any(t.text in cue_set for t in items)
            or _matches_any_name(mention_text, names_t)
        ):
            return
        mentions.append(
            OrgMention(text=mention_text, span=(items[0].start, items[-1].end))
        )

    for tok in toks:
        joins = _is_cap(tok.text) or tok.text in ORG_CONNECTORS
        if run:
            if joins and _gap(text, run[-1], tok, _ORG_GAP):
                run.append(tok)
                continue
            flush()
        if _is_cap(tok.text):
            run.append(tok)
    flush()
    return mentions


# ---------------------------------------------------------------------------
# gender


def classify_gender(
    name: str,
    first_name_dict: Mapping[str, RawGender],
    overrides: Mapping[str, RawGender] | None = None,
) -> GenderLabel:
    """Label a speaker name.

    The exact full string is checked against the manual overrides first
    (case-sensitive); otherwise the first whitespace-separated token is
    looked up, casefolded, in the first-name dictionary.  Absent names
    are Unknown.
    """
    if not name or not name.strip():
        raise ValueError("cannot classify an empty name")
    if overrides and name in overrides:
        return GenderLabel.from_raw(overrides[name])
    first = name.split()[0].casefold()
    return GenderLabel.from_raw(first_name_dict.get(first, RawGender.UNKNOWN))


# ---------------------------------------------------------------------------
# unique experts


@dataclass
class UniqueExpert:
    """One deduplicated speaker identity."""

    canonical_name: str
    mention_count: int
    gender: GenderLabel
    aliases: list[str] = field(default_factory=list)
    _labels: list[GenderLabel] = field(default_factory=list, repr=False)


_UNKNOWN_LABEL = GenderLabel.from_raw(RawGender.UNKNOWN)


def resolve_unique_experts(
    names: Sequence[str],
    labels: Sequence[GenderLabel] | None = None,
    threshold: int = MATCH_THRESHOLD,
    gender_mode: str = "first",
) -> list[UniqueExpert]:
    """Fold corpus-ordered speaker names into unique expert identities.

    Each name joins the first earlier expert whose canonical name it
    matches at ``threshold`` (token-set similarity), else founds a new
    expert whose canonical name is this first-seen form.  ``labels``, if
    given, must parallel ``names``; an expert's gender is its founding
    mention's label, or the majority merged label (ties to the founder)
    with ``gender_mode="majority"``.
    """
    if labels is not None and len(labels) != len(names):
        raise ValueError("labels must parallel names")
    if gender_mode not in ("first", "majority"):
        raise ValueError("gender_mode must be 'first' or 'majority'")
    experts: list[UniqueExpert] = []
    exact: dict[str, int] = {}
    for pos, name in enumerate(names):
        label = labels[pos] if labels is not None else _UNKNOWN_LABEL
        idx = exact.get(name)
        if idx is None:
            for k, expert in enumerate(experts):
                if token_set_similarity(name, expert.canonical_name) >= threshold:
                    idx = k
                    break
        if idx is None:
            experts.append(
                UniqueExpert(canonical_name=name, mention_count=0, gender=label)
            )
            idx = len(experts) - 1
        exact[name] = idx
        expert = experts[idx]
        expert.mention_count += 1
        expert._labels.append(label)
        if name != expert.canonical_name and name not in expert.aliases:
            expert.aliases.append(name)
    if gender_mode == "majority":
        for expert in experts:
            counts: dict[MergedGender, int] = {}
            for lab in expert._labels:
                counts[lab.merged] = counts.get(lab.merged, 0) + 1
            best = max(counts.values())
            top = [g for g, c in counts.items() if c == best]
            if len(top) == 1:
                for lab in expert._labels:
                    if lab.merged is top[0]:
                        expert.gender = lab
                        break
    return experts
