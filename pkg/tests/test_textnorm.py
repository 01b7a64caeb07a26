import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lexgraph.textnorm import (
    SuffixTable,
    concat_variants,
    damerau_levenshtein,
    default_suffix_table,
    fold,
    fold_text,
    split_sentences,
    stem,
    word_match,
)

hungarian_text = st.text(
    alphabet="abcdefghijklmnopqrstuvwxyzáéíóöőúüű ABCDEFGHIJKLMNOPQRSTUVWXYZÁÉÍÓÖŐÚÜŰ.-",
    max_size=80,
)


# --- fold -----------------------------------------------------------------------


def test_fold_examples():
    assert fold("bíróság").folded == "birosag"
    assert fold("EURÓPAI").folded == "europai"
    assert fold("").folded == ""


@given(hungarian_text)
def test_fold_preserves_length_and_positions(s):
    f = fold(s)
    assert len(f.folded) == len(f.origin_map) == len(s)
    # restoring any folded span via the origin map reproduces the source span
    for start, end in [(0, len(s)), (len(s) // 3, 2 * len(s) // 3)]:
        if start < end:
            ostart, oend = f.origin_span(start, end)
            assert s[ostart:oend] == s[start:end]


@given(hungarian_text)
def test_fold_is_idempotent(s):
    once = fold(s).folded
    assert fold(once).folded == once


# --- word_match -----------------------------------------------------------------


def test_word_match_accent_folding_only():
    assert word_match("Kovacs Janos", "Kovács János")


def test_word_match_one_transposition():
    assert word_match("Kovcas Janos", "Kovács János")


def test_word_match_rejects_two_edits_in_one_word():
    assert not word_match("Kovvacss Janos", "Kovács János")


def test_word_match_rejects_word_count_mismatch():
    assert not word_match("Kovács", "Kovács János")


def _brute_force_distance_leq1(a, b):
    # independent oracle: enumerate every single-edit variant of a
    if a == b:
        return True
    alphabet = sorted(set(a + b))
    variants = set()
    for i in range(len(a)):
        variants.add(a[:i] + a[i + 1 :])  # deletion
        for c in alphabet:
            variants.add(a[:i] + c + a[i + 1 :])  # substitution
    for i in range(len(a) + 1):
        for c in alphabet:
            variants.add(a[:i] + c + a[i:])  # insertion
    for i in range(len(a) - 1):
        variants.add(a[:i] + a[i + 1] + a[i] + a[i + 2 :])  # transposition
    return b in variants


def test_damerau_levenshtein_leq1_matches_enumeration_oracle():
    rng = random.Random(42)
    words = ["".join(rng.choice("abc") for _ in range(rng.randint(0, 5))) for _ in range(300)]
    for a in words[:150]:
        for b in words[150:]:
            assert (damerau_levenshtein(a, b) <= 1) == _brute_force_distance_leq1(a, b), (a, b)


@given(hungarian_text, hungarian_text)
def test_word_match_is_symmetric(a, b):
    assert word_match(a, b) == word_match(b, a)


@given(st.text(alphabet="abcdeáéí", min_size=1, max_size=20))
def test_word_match_reflexive_on_folded_equal(w):
    if w.strip():
        assert word_match(w, fold_text(w))


# --- concat_variants --------------------------------------------------------------


def test_concat_variants_hyphenated():
    assert concat_variants("adó-bírság") == ["adó-bírság", "adóbírság"]


def test_concat_variants_spaced():
    assert concat_variants("adó bírság") == ["adó bírság", "adóbírság"]


def test_concat_variants_already_concatenated():
    assert concat_variants("adóbírság") == ["adóbírság"]


# --- split_sentences ---------------------------------------------------------------


def test_split_plain_boundary():
    s = "A bíróság dönt. Az ítélet jogerős."
    spans = split_sentences(s)
    assert len(spans) == 2
    assert s[spans[0][0] : spans[0][1]] == "A bíróság dönt."


def test_split_keeps_decision_number_whole():
    # the identifier pre-scan masks the decision number's periods, so the
    # sentence does not shatter even when an uppercase word follows
    s = "A 4.K.27.207/2015/12. számú ítélet kötelez."
    assert split_sentences(s) == [(0, len(s))]
    s2 = "A 4.K.27.207/2015/12. Manapság ez kötelez."
    assert split_sentences(s2) == [(0, len(s2))]


def test_split_keeps_ab_date_parenthetical_whole():
    s = "A 12/2016. (VI. 13.) AB határozat szól. Másik mondat jön."
    spans = split_sentences(s)
    assert len(spans) == 2
    assert s[spans[0][0] : spans[0][1]].endswith("szól.")


def test_split_empty():
    assert split_sentences("") == []


def test_split_abbreviation_does_not_break():
    s = "A C-18/16. sz. Ügyben hozott ítélet. Második mondat."
    spans = split_sentences(s)
    assert len(spans) == 2


@given(hungarian_text)
def test_split_spans_partition_input(s):
    spans = split_sentences(s)
    if not s:
        assert spans == []
        return
    assert spans[0][0] == 0
    assert spans[-1][1] == len(s)
    for (a, b), (c, d) in zip(spans, spans[1:]):
        assert b == c
        assert a < b
    covered = "".join(s[a:b] for a, b in spans)
    assert covered == s


# --- stem -------------------------------------------------------------------------


@pytest.fixture(scope="module")
def table():
    return default_suffix_table()


def test_stem_single_strip(table):
    # derived from the shipped table: "nak" with min stem 3
    assert stem("bíróságnak", table) == "bíróság"


def test_stem_short_word_untouched(table):
    assert stem("ad", table) == "ad"


def test_stem_two_strips(table):
    # derived from the shipped table: "nak" then "ok"
    assert stem("bíróságoknak", table) == "bíróság"


def test_stem_preserves_original_casing_of_prefix(table):
    assert stem("BÍRÓSÁGNAK", table) == "BÍRÓSÁG"


def test_stem_folds_for_matching(table):
    # suffix matching is accent-insensitive; accented suffix in the word
    assert stem("bíróságért", table) == "bíróság"


def test_suffix_table_ordering_longest_first():
    t = SuffixTable.from_pairs([("a", 3), ("ba", 3), ("ab", 3)])
    assert [s for s, _ in t.rules] == ["ab", "ba", "a"]


def test_suffix_table_rejects_duplicates():
    with pytest.raises(ValueError):
        SuffixTable.from_pairs([("nak", 3), ("nak", 4)])


@given(st.text(alphabet="abcdefghiklmnoprstuvzáéíóöőúüű", min_size=1, max_size=25))
def test_stem_never_longer_and_never_empty(s):
    t = default_suffix_table()
    out = stem(s, t)
    assert len(out) <= len(s)
    assert out


@settings(max_examples=60)
@given(
    st.text(alphabet="bcdfgklmnprstvz", min_size=3, max_size=8),
    st.lists(st.sampled_from(["nak", "ok", "ban", "val", "ért", "ek", "nek"]), max_size=5),
)
def test_stem_three_applications_reach_fixpoint(base, suffixes):
    t = default_suffix_table()
    word = base + "".join(suffixes)
    three = stem(stem(stem(word, t), t), t)
    assert stem(three, t) == three
