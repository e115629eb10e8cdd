#!/usr/bin/env python3
"""Generate a synthetic corpus with planted gender and prestige bias."""

import argparse
import json

from newsaudit.synth import make_planted_corpus


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", required=True, help="output directory")
    parser.add_argument("--articles", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--p-man", type=float, default=0.75, help="planted male share")
    parser.add_argument("--zipf-s", type=float, default=1.0, help="Zipf exponent over rank")
    args = parser.parse_args()
    truth = make_planted_corpus(
        args.out,
        n_articles=args.articles,
        seed=args.seed,
        p_man=args.p_man,
        zipf_s=args.zipf_s,
    )
    print(json.dumps(truth, indent=2, sort_keys=True))


if __name__ == "__main__":
    main()
