"""Synthetic corpus generator with planted, known biases.

The generator plants exact quantities rather than sampling them: the
man:woman split and the per-institution mention counts are quota
allocations (largest-remainder rounding of the target weights), and only
the order in which they appear is randomized.  That makes the ground
truth written to ``truth.json`` exact, so an end-to-end audit of the
generated corpus can be checked against it with tight tolerances.
"""

from __future__ import annotations

import json
import math
import random
from pathlib import Path

from .orglink import OrgType, default_gazetteer_dir, load_gazetteers
from .stats import gini, spearman

#: First names drawn from the shipped gender dictionary, disjoint pools.
MALE_FIRST_NAMES = (
    "Anthony", "Robert", "David", "William", "Thomas", "Joseph",
    "Peter", "Paul", "Scott", "Samuel", "Nathan", "Donald",
)
FEMALE_FIRST_NAMES = (
    "Emily", "Deborah", "Janet", "Helen", "Sarah", "Rachel",
    "Megan", "Celine", "Rochelle", "Patty", "April", "Linsey",
)
#: Surnames chosen to stay out of the gender dictionary and the
#: gazetteers, so they never perturb entity detection.
LAST_NAMES = (
    "Holloway", "Pemberton", "Castellanos", "Okabe", "Lindqvist",
    "Marchetti", "Ostrowski", "Fenwick", "Delacroix", "Nakatani",
    "Whitfield", "Grimaldi", "Ashcombe", "Torvald",
)

QUOTE_PHRASES = (
    "Cases are rising across the region",
    "Vaccination capacity will expand next month",
    "Masks sharply cut transmission indoors",
    "Testing is the fastest path to reopening",
    "Distancing still matters in crowded spaces",
    "Immunity estimates carry wide error bars",
    "Ventilation upgrades are worth the cost",
    "Contact tracing works when caseloads are low",
)

#: Filler sentences built around verbs absent from the reporting lexicon.
FILLER_SENTENCES = (
    "The outbreak reached the valley by nightfall.",
    "Commuter traffic remained light downtown.",
    "The city reopened two parks for the weekend.",
    "Grocery shelves stayed full through the week.",
    "Volunteers delivered meals across three neighborhoods.",
    "The night market drew smaller crowds than usual.",
)

OUTLETS = {
    "ledger": ("The Daily Ledger", "left", ("The Daily Ledger", "Daily Ledger")),
    "signal": ("The Morning Signal", "left", ("The Morning Signal", "Morning Signal")),
    "chronicle": ("The Evening Chronicle", "left", ("The Evening Chronicle", "Evening Chronicle")),
    "tribune": ("The Valley Tribune", "right", ("The Valley Tribune", "Valley Tribune")),
    "herald": ("The Harbor Herald", "right", ("The Harbor Herald", "Harbor Herald")),
    "dispatch": ("The Plains Dispatch", "right", ("The Plains Dispatch", "Plains Dispatch")),
}

QUOTES_PER_ARTICLE = 2


def _quota_counts(weights: "list[float]", total: int) -> "list[int]":
    """Largest-remainder allocation of ``total`` units over ``weights``."""
    scale = total / sum(weights)
    raw = [w * scale for w in weights]
    counts = [math.floor(v) for v in raw]
    shortfall = total - sum(counts)
    by_remainder = sorted(
        range(len(raw)), key=lambda i: (raw[i] - counts[i], -i), reverse=True
    )
    for i in by_remainder[:shortfall]:
        counts[i] += 1
    return counts


def make_planted_corpus(
    out_dir: "str | Path",
    n_articles: int = 1000,
    seed: int = 0,
    p_man: float = 0.75,
    zipf_s: float = 1.0,
    gazetteer_dir: "str | Path | None" = None,
) -> "dict":
    """Write corpus.jsonl, sources.json, and truth.json; returns the truth dict.

    Every article holds two direct-pattern expert quotes and one filler
    sentence.  Mention genders follow an exact ``p_man`` quota; each
    quote's institution is drawn from the shipped ranked universities
    under an exact Zipf(``zipf_s``) quota over world rank.
    """
    if n_articles < 1:
        raise ValueError("n_articles must be >= 1")
    if not 0.0 < p_man < 1.0:
        raise ValueError("p_man must be in (0, 1)")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(seed)

    records = load_gazetteers(gazetteer_dir or default_gazetteer_dir())
    ranked = sorted(
        (r for r in records if r.org_type is OrgType.ACADEMIC and r.world_rank is not None),
        key=lambda r: r.world_rank,
    )
    name_by_rank = {r.world_rank: r.name for r in ranked}
    ranks = sorted(name_by_rank)

    n_quotes = n_articles * QUOTES_PER_ARTICLE
    n_men = round(p_man * n_quotes)
    genders = ["m"] * n_men + ["f"] * (n_quotes - n_men)
    rng.shuffle(genders)

    weights = [1.0 / r**zipf_s for r in ranks]
    counts = _quota_counts(weights, n_quotes)
    institution_ranks = [r for r, c in zip(ranks, counts) for _ in range(c)]
    rng.shuffle(institution_ranks)

    outlet_keys = list(OUTLETS)
    corpus_path = out / "corpus.jsonl"
    q = 0
    with corpus_path.open("w", encoding="utf-8") as fh:
        for i in range(n_articles):
            sentences = []
            for _ in range(QUOTES_PER_ARTICLE):
                first = rng.choice(
                    MALE_FIRST_NAMES if genders[q] == "m" else FEMALE_FIRST_NAMES
                )
                last = rng.choice(LAST_NAMES)
                univ = name_by_rank[institution_ranks[q]]
                phrase = rng.choice(QUOTE_PHRASES)
                sentences.append(f'"{phrase}," said {first} {last} of {univ}.')
                q += 1
            sentences.insert(rng.randrange(3), rng.choice(FILLER_SENTENCES))
            minute = i % 60
            hour = (i // 60) % 24
            day = i // 1440 + 1
            fh.write(
                json.dumps(
                    {
                        "id": f"p{i:05d}",
                        "source": outlet_keys[i % len(outlet_keys)],
                        "published_at": f"2020-03-{day:02d}T{hour:02d}:{minute:02d}:00Z",
                        "title": f"Regional briefing {i}",
                        "body": " ".join(sentences),
                    }
                )
                + "\n"
            )

    sources = {
        key: {"display_name": display, "ideology": ideology, "self_org_names": list(names)}
        for key, (display, ideology, names) in OUTLETS.items()
    }
    (out / "sources.json").write_text(
        json.dumps(sources, indent=2) + "\n", encoding="utf-8"
    )

    truth = {
        "seed": seed,
        "n_articles": n_articles,
        "n_quote_sentences": n_quotes,
        "p_man": p_man,
        "planted_men": n_men,
        "planted_women": n_quotes - n_men,
        "planted_ratio": (n_quotes - n_men) / n_men,
        "zipf_s": zipf_s,
        "n_institutions": len(ranks),
        "planted_counts_by_rank": {str(r): c for r, c in zip(ranks, counts)},
        "planted_gini": gini(counts),
        "weight_gini": gini(weights),
        "planted_spearman": spearman(ranks, counts),
    }
    (out / "truth.json").write_text(
        json.dumps(truth, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    return truth
