"""Acceptance gate: one test (or test class) per release criterion.

Run with ``pytest tests/test_acceptance.py -v`` to get one pass/fail line
per criterion.
"""

import itertools
import math
import string
import time

import pytest
from hypothesis import given, settings, strategies as st

from unseenlang.cli import run
from unseenlang.conllu import ConlluSentence, ConlluToken, parse_conllu, write_conllu
from unseenlang.corpus import dedup_lines
from unseenlang.metrics import eval_dep, eval_ner, eval_pos
from unseenlang.ner import NerSentence, Span, extract_spans
from unseenlang.scripts import ScriptClass, script_distribution
from unseenlang.splits import Strategy, make_folds, plan_splits
from unseenlang.taxonomy import (
    Category,
    categorize_language,
    categorize_point,
    paper_score_points,
    relative_delta,
)
from unseenlang.translit import (
    load_builtin,
    transliterate,
    transliterate_tokens,
)


# --- criterion 1: shared mapping ---------------------------------------------


def test_criterion_1_shared_sh_mapping():
    start = time.perf_counter()
    assert transliterate("ش", load_builtin("uyghur_latin")) == "ş"
    assert transliterate("ش", load_builtin("sorani_latin")) == "ş"
    assert time.perf_counter() - start < 1.0


# --- criterion 2: golden taxonomy reproduction -------------------------------

# Overall label per language; grouped (language, task) pairs in the golden
# list carry the language-level label produced by categorize_language.
EXPECTED_LANGUAGE_LABELS = {
    "fao": Category.EASY,          # POS/DEP/NER
    "gsw": Category.EASY,          # POS/DEP
    "mlt": Category.INTERMEDIATE,  # POS/DEP/NER
    "nrz": Category.INTERMEDIATE,  # POS/DEP
    "wo": Category.INTERMEDIATE,   # POS/DEP
    "bm": Category.HARD,           # POS Intermediate + DEP Hard, tie to harder
    "olo": Category.INTERMEDIATE,  # POS/DEP
    "myv": Category.INTERMEDIATE,  # POS/DEP
    "ug": Category.HARD,           # POS/DEP/NER
    "ckb": Category.HARD,          # NER
}


def test_criterion_2_golden_taxonomy():
    start = time.perf_counter()
    by_lang = {}
    by_pair = {}
    for point in paper_score_points():
        cp = categorize_point(point)
        by_lang.setdefault(cp.language, []).append(cp)
        by_pair[(cp.language, cp.task)] = cp.category
    for lang, expected in EXPECTED_LANGUAGE_LABELS.items():
        assert categorize_language(by_lang[lang]) is expected, lang
    # the Bambara caveat is per-task: POS Intermediate, DEP Hard
    assert by_pair[("bm", "POS")] is Category.INTERMEDIATE
    assert by_pair[("bm", "DEP")] is Category.HARD
    # Hard pairs are Hard even per-task
    for pair in (("ug", "POS"), ("ug", "DEP"), ("ug", "NER"), ("ckb", "NER")):
        assert by_pair[pair] is Category.HARD
    for task in ("POS", "DEP", "NER"):
        assert by_pair[("fao", task)] is Category.EASY
    assert time.perf_counter() - start < 1.0


# --- criterion 3: scatter coordinates ----------------------------------------


def test_criterion_3_coordinates():
    assert math.isclose(relative_delta(76.98, 89.97), -0.1444, abs_tol=5e-4)
    assert math.isclose(relative_delta(96.31, 95.36), 0.0100, abs_tol=5e-4)


# --- criterion 4: script distribution ----------------------------------------


def _distinct(alphabet, count, length=4):
    out = list(itertools.islice(
        ("".join(p) for p in itertools.product(alphabet, repeat=length)), count
    ))
    assert len(out) == count
    return out


def test_criterion_4_synthetic_vocabulary():
    vocab = (
        _distinct(string.ascii_lowercase, 770)
        + _distinct("абвгдежзик", 115)
        + _distinct("ابتثجحخد", 40)
        + _distinct("აბგდევზთ", 9)
        + _distinct("0123456789!?.,;:", 66)
    )
    assert len(vocab) == 1000
    dist = script_distribution(vocab)
    assert dist.total == 1000
    assert dist.counts[ScriptClass.LATIN] == 770
    assert dist.counts[ScriptClass.CYRILLIC] == 115
    assert dist.counts[ScriptClass.ARABIC] == 40
    assert dist.counts[ScriptClass.GEORGIAN] == 9
    assert dist.counts[ScriptClass.COMMON] == 66
    assert dist.counts[ScriptClass.OTHER] == 0


@pytest.mark.skipif(True, reason="supply a real mBERT vocabulary to enable")
def test_criterion_4_real_mbert_vocabulary():
    # Point this at a real multilingual-BERT vocab file (one token per
    # line) to reproduce the reported shares: Latin > 0.77, Georgian < 0.01.
    path = "tests/data/mbert_vocab.txt"
    with open(path, encoding="utf-8") as fh:
        tokens = [line.rstrip("\n") for line in fh if line.strip()]
    dist = script_distribution(tokens, subword_prefix="##")
    assert dist.share(ScriptClass.LATIN) > 0.77
    assert dist.share(ScriptClass.GEORGIAN) < 0.01


# --- criterion 5: property suites --------------------------------------------

SOURCE_TEXT = {
    "cyrillic_latin": st.text(alphabet="абвгдеёжзиклмнопрстуфхцчшщъыьэюяШЩЯ ,.7ab", max_size=24),
    "georgian_latin": st.text(alphabet="აბგდევზთიკლმნოპჟრსტუფქღყშჩცძწჭხჯჰ .ab", max_size=24),
    "uyghur_latin": st.text(alphabet="ئابپتجچخدرزژسشغفقكگڭلمنھوۇۆۈۋېىيە ‌،.ab", max_size=24),
    "sorani_latin": st.text(alphabet="ئابپتجچحخدرڕزژسشعغفڤقکگلڵمنھهەوۆیێ ‌،.ab", max_size=24),
}


class TestCriterion5Transliteration:
    @pytest.mark.parametrize("name", sorted(SOURCE_TEXT))
    def test_idempotent_and_deterministic(self, name):
        rs = load_builtin(name)

        @settings(max_examples=250, deadline=None)
        @given(SOURCE_TEXT[name])
        def check(text):
            once = transliterate(text, rs)
            assert transliterate(text, rs) == once
            assert transliterate(once, rs) == once

        check()

    @settings(max_examples=250, deadline=None)
    @given(st.lists(SOURCE_TEXT["cyrillic_latin"], max_size=10))
    def test_token_count_preserved(self, tokens):
        out = transliterate_tokens(tokens, load_builtin("cyrillic_latin"))
        assert len(out) == len(tokens)

    @settings(max_examples=250, deadline=None)
    @given(st.data())
    def test_annotation_preserved(self, data):
        sents = data.draw(st.lists(random_sentence(), max_size=3))
        from unseenlang.conllu import transliterate_conllu

        out = transliterate_conllu(sents, load_builtin("cyrillic_latin"))
        assert len(out) == len(sents)
        for before, after in zip(sents, out):
            assert len(after.tokens) == len(before.tokens)
            assert [t.upos for t in after.tokens] == [t.upos for t in before.tokens]
            assert [t.head for t in after.tokens] == [t.head for t in before.tokens]
            assert [t.deprel for t in after.tokens] == [t.deprel for t in before.tokens]


@st.composite
def random_sentence(draw):
    n = draw(st.integers(min_value=1, max_value=5))
    forms = st.text(alphabet="abxшуг", min_size=1, max_size=5)
    tokens = [
        ConlluToken(
            id=i,
            form=draw(forms),
            lemma=draw(forms),
            upos=draw(st.sampled_from(["NOUN", "VERB", "ADJ", "X"])),
            xpos="_",
            feats="_",
            head=draw(st.integers(min_value=0, max_value=n)),
            deprel=draw(st.sampled_from(["root", "dep", "nsubj", "obl:arg"])),
            deps="_",
            misc="_",
        )
        for i in range(1, n + 1)
    ]
    return ConlluSentence(tokens=tokens)


CANONICAL_FILE = (
    "# sent_id = ud-1\n"
    "# text = пример\n"
    "1-2\tпримера\t_\t_\t_\t_\t_\t_\t_\t_\n"
    "1\tпример\tпример\tNOUN\t_\t_\t0\troot\t_\t_\n"
    "2\tа\tа\tPART\t_\t_\t1\tdep\t_\t_\n"
    "\n"
    "1\tраз\tраз\tNOUN\t_\t_\t0\troot\t_\tSpaceAfter=No\n"
)


class TestCriterion5Conllu:
    @settings(max_examples=1000, deadline=None)
    @given(st.lists(random_sentence(), max_size=3))
    def test_parse_write_identity(self, sents):
        assert parse_conllu(write_conllu(sents)) == sents

    def test_canonical_byte_round_trip(self):
        assert write_conllu(parse_conllu(CANONICAL_FILE)) == CANONICAL_FILE

    @settings(max_examples=250, deadline=None)
    @given(st.lists(random_sentence(), max_size=3))
    def test_write_is_stable(self, sents):
        text = write_conllu(sents)
        assert write_conllu(parse_conllu(text)) == text


class TestCriterion5Splits:
    @settings(max_examples=1000, deadline=None)
    @given(
        st.integers(min_value=2, max_value=10).flatmap(
            lambda k: st.tuples(st.just(k), st.integers(min_value=k, max_value=300))
        ),
        st.integers(min_value=0, max_value=2**31 - 1),
    )
    def test_partition_and_determinism(self, kn, seed):
        k, n = kn
        a = make_folds(n, k, seed)
        assert a == make_folds(n, k, seed)
        flat = sorted(i for f in range(k) for i in a.fold_members(f))
        assert flat == list(range(n))
        sizes = [len(a.fold_members(f)) for f in range(k)]
        assert max(sizes) - min(sizes) <= 1

    @settings(max_examples=1000, deadline=None)
    @given(st.integers(min_value=0, max_value=2000), st.booleans())
    def test_plan_threshold_at_500(self, n, has_dev):
        plan = plan_splits(n, has_dev)
        expected = Strategy.STANDARD if n >= 500 else Strategy.CROSS_VALIDATION
        assert plan.strategy is expected


def oracle_spans(labels):
    """Brute-force span enumeration (independent of the scorer)."""
    n = len(labels)
    types = {l[2:] for l in labels if l != "O"}
    found = set()
    for start, end, t in itertools.product(range(n), range(n), types):
        if end < start:
            continue
        if labels[start] != f"B-{t}":
            continue
        if any(labels[i] != f"I-{t}" for i in range(start + 1, end + 1)):
            continue
        if end + 1 < n and labels[end + 1] == f"I-{t}":
            continue
        found.add(Span(start, end, t))
    return found


@st.composite
def iob2_labels(draw, max_len=10):
    n = draw(st.integers(min_value=1, max_value=max_len))
    labels = []
    while len(labels) < n:
        if draw(st.booleans()):
            labels.append("O")
        else:
            t = draw(st.sampled_from(["PER", "LOC", "ORG"]))
            length = draw(st.integers(min_value=1, max_value=min(3, n - len(labels))))
            labels.append(f"B-{t}")
            labels.extend(f"I-{t}" for _ in range(length - 1))
    return labels[:n]


@st.composite
def aligned_dep_pair(draw):
    gold = draw(st.lists(random_sentence(), min_size=1, max_size=3))
    pred = []
    for sent in gold:
        n = len(sent.tokens)
        pred_tokens = [
            ConlluToken(
                id=t.id, form=t.form, lemma=t.lemma,
                upos=draw(st.sampled_from(["NOUN", "VERB", "ADJ", "X"])),
                xpos="_", feats="_",
                head=draw(st.integers(min_value=0, max_value=n)),
                deprel=draw(st.sampled_from(["root", "dep", "nsubj", "obl:arg"])),
                deps="_", misc="_",
            )
            for t in sent.tokens
        ]
        pred.append(ConlluSentence(tokens=pred_tokens))
    return gold, pred


class TestCriterion5Metrics:
    @settings(max_examples=500, deadline=None)
    @given(aligned_dep_pair())
    def test_las_never_exceeds_uas(self, pair):
        gold, pred = pair
        score = eval_dep(gold, pred)
        assert score.las <= score.uas

    @settings(max_examples=1000, deadline=None)
    @given(iob2_labels(), iob2_labels())
    def test_ner_scorer_equals_brute_force(self, gold_labels, pred_labels):
        n = min(len(gold_labels), len(pred_labels))
        gold_labels, pred_labels = gold_labels[:n], pred_labels[:n]
        tokens = tuple(str(i) for i in range(n))
        score = eval_ner(
            [NerSentence(tokens, tuple(gold_labels))],
            [NerSentence(tokens, tuple(pred_labels))],
        )
        g, p = oracle_spans(gold_labels), oracle_spans(pred_labels)
        assert (score.tp, score.fp, score.fn) == (len(g & p), len(p - g), len(g - p))

    @settings(max_examples=250, deadline=None)
    @given(st.lists(random_sentence(), min_size=1, max_size=3), iob2_labels())
    def test_self_evaluation_is_maximal(self, sents, labels):
        assert eval_pos(sents, sents).accuracy == 100.0
        dep = eval_dep(sents, sents)
        assert dep.uas == 100.0 and dep.las == 100.0
        ner_sents = [NerSentence(tuple(str(i) for i in range(len(labels))), tuple(labels))]
        score = eval_ner(ner_sents, ner_sents)
        assert score.fp == 0 and score.fn == 0


class TestCriterion5Taxonomy:
    @settings(max_examples=1000, deadline=None)
    @given(
        st.floats(min_value=1, max_value=100),
        st.floats(min_value=1, max_value=100),
        st.floats(min_value=0.001, max_value=1000),
    )
    def test_relative_delta_scale_invariant(self, score, baseline, c):
        assert math.isclose(
            relative_delta(score, baseline),
            relative_delta(c * score, c * baseline),
            rel_tol=1e-9,
            abs_tol=1e-12,
        )


# --- criterion 6: end-to-end pipeline ----------------------------------------


def _pipeline(tmp_path, tag):
    workdir = tmp_path / tag
    workdir.mkdir()
    raw = tmp_path / "raw.txt"
    deduped = workdir / "dedup.txt"
    latin = workdir / "latin.txt"
    plan = workdir / "plan.tsv"
    folds = workdir / "folds.tsv"
    runs = workdir / "runs.tsv"
    assert run(["dedup", "--in", str(raw), "--out", str(deduped)]) == 0
    assert run(["translit", "--rules", "cyrillic_latin", "--in", str(deduped), "--out", str(latin)]) == 0
    n = len(deduped.read_text(encoding="utf-8").splitlines())
    assert run(
        [
            "split", "--n", str(min(n, 300)), "--no-dev", "--seed", "13",
            "--out", str(plan), "--folds-out", str(folds), "--runs-out", str(runs),
        ]
    ) == 0
    return {p.name: p.read_bytes() for p in (deduped, latin, plan, folds, runs)}


def test_criterion_6_pipeline_smoke(tmp_path):
    words = ["шар", "мон", "вирь", "кудо", "паро", "чи", "ваз", "модa"]
    lines = []
    for i in range(10_000):
        lines.append(" ".join(words[(i + j) % len(words)] for j in range(3 + i % 4)))
    # force duplicates
    lines = [lines[i % 7000] for i in range(10_000)]
    (tmp_path / "raw.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")

    start = time.perf_counter()
    first = _pipeline(tmp_path, "run1")
    second = _pipeline(tmp_path, "run2")
    elapsed = time.perf_counter() - start

    assert first == second  # reruns are byte-identical
    assert b"cross_validation" in first["plan.tsv"]
    assert len(first["dedup.txt"].splitlines()) < 10_000
    assert "ш".encode() not in first["latin.txt"]
    assert elapsed < 10.0
