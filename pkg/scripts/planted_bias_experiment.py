#!/usr/bin/env python3
"""Generate a planted-bias corpus, audit it, and compare against the truth.

Prints one line per planted quantity showing the recovered value, so a
regression in any pipeline stage is visible as a drifting number.
"""

import argparse
import json
import time
from pathlib import Path

from newsaudit.report import AuditConfig, run_audit
from newsaudit.synth import make_planted_corpus


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", required=True, help="working directory")
    parser.add_argument("--articles", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    out = Path(args.out)
    truth = make_planted_corpus(out, n_articles=args.articles, seed=args.seed)
    t0 = time.time()
    report = run_audit(
        out / "corpus.jsonl",
        out / "sources.json",
        config=AuditConfig(seed=args.seed),
        out_dir=out / "audit",
    )
    elapsed = time.time() - t0
    d = report.data

    planted_ratio = truth["planted_ratio"]
    wm = d["totals"]["women_men"]
    overall = d["rank_attention"]["overall"]
    rows = [
        ("mentions", truth["n_quote_sentences"], d["totals"]["mentions"]),
        ("women:men ratio", planted_ratio, wm["ratio"]),
        ("gini", truth["planted_gini"], overall["gini"]),
        ("spearman", truth["planted_spearman"], overall["spearman"]),
    ]
    for label, want, got in rows:
        print(f"{label:>16}: planted={want:.4f} recovered={got:.4f}")
    ci = wm["bootstrap"]
    print(
        f"{'ratio 95% CI':>16}: [{ci['ci_low']:.4f}, {ci['ci_high']:.4f}] "
        f"covers planted: {ci['ci_low'] <= planted_ratio <= ci['ci_high']}"
    )
    print(f"{'audit seconds':>16}: {elapsed:.1f}")
    print(json.dumps({"elapsed_s": elapsed, "empty": report.empty}))


if __name__ == "__main__":
    main()
