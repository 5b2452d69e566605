#!/usr/bin/env python3
"""End-to-end data preparation demo on a raw text corpus.

Deduplicates the input, transliterates it with a chosen ruleset, prints
the script distribution before and after, and writes the fold manifests
that the training protocol expects.

Usage:
    python scripts/run_pipeline.py --in corpus.txt --rules cyrillic_latin --out-dir prepared/
"""

import argparse
import sys
from pathlib import Path

from unseenlang.corpus import dedup_lines
from unseenlang.scripts import script_distribution
from unseenlang.splits import cv_runs, make_folds, plan_splits, Strategy
from unseenlang.translit import load_builtin, parse_ruleset, transliterate, validate_ruleset


def load_rules(spec):
    if "/" in spec or spec.endswith(".rules"):
        rs = parse_ruleset(Path(spec).read_text(encoding="utf-8"))
        report = validate_ruleset(rs)
        if not report.ok:
            sys.exit(report.describe())
        return rs
    return load_builtin(spec)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--in", dest="infile", required=True)
    ap.add_argument("--rules", default="cyrillic_latin")
    ap.add_argument("--out-dir", default="prepared")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rs = load_rules(args.rules)

    raw = Path(args.infile).read_text(encoding="utf-8").splitlines()
    lines = dedup_lines(raw)
    print(f"dedup: kept {len(lines)} of {len(raw)} lines", file=sys.stderr)

    latin = [transliterate(line, rs) for line in lines]
    (out / "dedup.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")
    (out / "latin.txt").write_text("\n".join(latin) + "\n", encoding="utf-8")

    for tag, corpus in (("before", lines), ("after", latin)):
        dist = script_distribution(tok for line in corpus for tok in line.split())
        print(f"--- script distribution {tag} ---", file=sys.stderr)
        print(dist.to_tsv(), file=sys.stderr, end="")

    plan = plan_splits(len(lines), has_dev=False, seed=args.seed)
    with open(out / "plan.tsv", "w", encoding="utf-8") as fh:
        fh.write(f"strategy\t{plan.strategy.value}\n")
        fh.write(f"n\t{len(lines)}\nk\t{plan.k}\nseed\t{plan.seed}\n")
    if plan.strategy is Strategy.CROSS_VALIDATION and len(lines) >= plan.k:
        assignment = make_folds(len(lines), plan.k, plan.seed)
        with open(out / "folds.tsv", "w", encoding="utf-8") as fh:
            for i, fold in enumerate(assignment.folds):
                fh.write(f"{i}\t{fold}\n")
        with open(out / "runs.tsv", "w", encoding="utf-8") as fh:
            for r, (_, test, dev) in enumerate(cv_runs(plan, assignment)):
                for fold in range(plan.k):
                    role = "test" if fold == test else "dev" if fold == dev else "train"
                    fh.write(f"{r}\t{role}\t{fold}\n")
    print(f"wrote manifests to {out}/", file=sys.stderr)


if __name__ == "__main__":
    main()
