#!/usr/bin/env python3
"""Reproduce the difficulty taxonomy from the shipped score file.

Prints one row per (language, task) score triple with its scatter
coordinates and category, then the aggregate label per language.

Usage:
    python scripts/categorize_scores.py [--tau 0.0] [--scores FILE.tsv]
"""

import argparse
from collections import defaultdict

from unseenlang.taxonomy import (
    categorize_language,
    categorize_point,
    load_score_points,
    paper_score_points,
    points_tsv,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--tau", type=float, default=0.0, help="category threshold")
    ap.add_argument("--scores", help="score TSV; defaults to the shipped file")
    args = ap.parse_args()

    if args.scores:
        with open(args.scores, encoding="utf-8") as fh:
            points = load_score_points(fh.read())
    else:
        points = paper_score_points()

    categorized = [categorize_point(p, tau=args.tau) for p in points]
    print(points_tsv(categorized), end="")

    by_lang = defaultdict(list)
    for cp in categorized:
        by_lang[cp.language].append(cp)
    print()
    print("language\tlabel")
    for lang, pts in by_lang.items():
        print(f"{lang}\t{categorize_language(pts).value}")


if __name__ == "__main__":
    main()
