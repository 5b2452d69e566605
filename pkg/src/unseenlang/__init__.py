"""Toolkit for preparing, transliterating, splitting and scoring corpora
of languages unseen by large multilingual language models."""

__version__ = "0.1.0"

from .scripts import ScriptClass, ScriptDistribution, classify_script, script_distribution, segment_graphemes
from .translit import RuleSet, Rule, load_builtin, parse_ruleset, transliterate, transliterate_tokens, validate_ruleset
from .conllu import ConlluSentence, ConlluToken, parse_conllu, transliterate_conllu, write_conllu
from .ner import NerSentence, parse_ner, transliterate_ner, write_ner
from .corpus import dedup_lines, language_table, lookup
from .splits import SplitPlan, make_folds, materialize_run, plan_splits
from .metrics import aggregate_runs, eval_dep, eval_ner, eval_pos
from .taxonomy import Category, ScorePoint, categorize, categorize_language, relative_delta
