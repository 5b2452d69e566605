"""Dataset-split protocol: standard splits when training data suffices,
8-fold cross-validation otherwise, with deterministic fold assignment.

Datasets with fewer than 500 training sentences switch to cross-validation
over the concatenated train+test pool; a provided dev set is used for
model selection when available, otherwise one fold is held out for it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum

__all__ = [
    "Strategy",
    "DevSource",
    "SplitPlan",
    "FoldAssignment",
    "plan_splits",
    "make_folds",
    "materialize_run",
    "cv_runs",
]

CV_THRESHOLD = 500
DEFAULT_K = 8
# With a held-out dev fold the dev fold stays fixed across runs while the
# test fold rotates over the remaining folds.
DEV_FOLD = 0


class Strategy(Enum):
    STANDARD = "standard"
    CROSS_VALIDATION = "cross_validation"


class DevSource(Enum):
    PROVIDED = "provided"
    HELD_OUT_FOLD = "held_out_fold"


@dataclass(frozen=True)
class SplitPlan:
    strategy: Strategy
    k: int = DEFAULT_K
    dev_source: DevSource = DevSource.PROVIDED
    seed: int = 0

    def __post_init__(self):
        if self.strategy is Strategy.CROSS_VALIDATION and self.k < 2:
            raise ValueError("cross-validation requires k >= 2")
        if (
            self.dev_source is DevSource.HELD_OUT_FOLD
            and self.strategy is not Strategy.CROSS_VALIDATION
        ):
            raise ValueError("held-out dev fold only makes sense under cross-validation")


@dataclass(frozen=True)
class FoldAssignment:
    n: int
    k: int
    seed: int
    folds: tuple[int, ...]  # fold index per sentence, values in 0..k-1

    def fold_members(self, fold: int) -> tuple[int, ...]:
        return tuple(i for i, f in enumerate(self.folds) if f == fold)


def plan_splits(n_train: int, has_dev: bool, k: int = DEFAULT_K, seed: int = 0) -> SplitPlan:
    """Decide the split strategy for a dataset with ``n_train`` training
    sentences. Below 500 the plan is k-fold CV over train+test."""
    if n_train < 0:
        raise ValueError("n_train must be >= 0")
    if n_train >= CV_THRESHOLD:
        return SplitPlan(Strategy.STANDARD, k=k, dev_source=DevSource.PROVIDED, seed=seed)
    dev = DevSource.PROVIDED if has_dev else DevSource.HELD_OUT_FOLD
    return SplitPlan(Strategy.CROSS_VALIDATION, k=k, dev_source=dev, seed=seed)


def make_folds(n: int, k: int, seed: int) -> FoldAssignment:
    """Assign ``n`` sentences to ``k`` folds: deterministic shuffle by
    ``seed`` (Mersenne Twister via ``random.Random``), then round-robin.
    Fold sizes differ by at most one; same (n, k, seed) gives the same
    assignment."""
    if k < 2:
        raise ValueError("k must be >= 2")
    if n < k:
        raise ValueError(f"cannot make {k} folds out of {n} sentences")
    order = list(range(n))
    random.Random(seed).shuffle(order)
    folds = [0] * n
    for pos, idx in enumerate(order):
        folds[idx] = pos % k
    return FoldAssignment(n=n, k=k, seed=seed, folds=tuple(folds))


def materialize_run(
    assignment: FoldAssignment, test_fold: int, dev_fold: int | None = None
) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    """Produce (train ids, dev ids, test ids) for one CV run.

    ``dev_fold=None`` means the dev set is provided externally; the dev id
    tuple is then empty and all non-test folds train.
    """
    k = assignment.k
    if not 0 <= test_fold < k:
        raise ValueError(f"test fold {test_fold} out of range 0..{k - 1}")
    if dev_fold is not None and not 0 <= dev_fold < k:
        raise ValueError(f"dev fold {dev_fold} out of range 0..{k - 1}")
    if dev_fold == test_fold:
        raise ValueError("test and dev folds must differ")
    test = assignment.fold_members(test_fold)
    dev = assignment.fold_members(dev_fold) if dev_fold is not None else ()
    excluded = {test_fold} | ({dev_fold} if dev_fold is not None else set())
    train = tuple(i for i, f in enumerate(assignment.folds) if f not in excluded)
    return train, dev, test


def cv_runs(plan: SplitPlan, assignment: FoldAssignment):
    """Yield (run_index, test_fold, dev_fold) for every run of the plan.

    Test scores are averaged over these runs. With a held-out dev fold the
    dev fold is fixed and the test fold rotates over the others; with a
    provided dev set every fold serves as test once.
    """
    if plan.strategy is not Strategy.CROSS_VALIDATION:
        raise ValueError("cv_runs requires a cross-validation plan")
    if plan.dev_source is DevSource.HELD_OUT_FOLD:
        test_folds = [f for f in range(assignment.k) if f != DEV_FOLD]
        for run, test_fold in enumerate(test_folds):
            yield run, test_fold, DEV_FOLD
    else:
        for run in range(assignment.k):
            yield run, run, None
