import unicodedata

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from farsiplag.persian_text import (
    ZWNJ,
    Sentence,
    Token,
    TokenKind,
    is_punctuation,
    load_char_map,
    load_zwnj_affixes,
    normalize,
    segment_sentences,
    tokenize,
)
from farsiplag.errors import ResourceError

# strings biased toward the characters normalization cares about
persianish = st.text(
    alphabet=st.sampled_from(list("مینکیبوردالفرت ") + ["ي", "ك", "ـ", ZWNJ, "\t", "\n", "\r", "\u00a0", "۱", "7", ".", "،", "؟", " "]),
    max_size=40,
)


def test_verbal_prefix_gets_zwnj():
    assert normalize("می روم") == "می" + ZWNJ + "روم"
    assert normalize("نمی روم") == "نمی" + ZWNJ + "روم"


def test_empty_is_fixed_point():
    assert normalize("") == ""


def test_arabic_yeh_and_double_space():
    out = normalize("علي  رفت")
    assert [hex(ord(c)) for c in out] == ["0x639", "0x644", "0x6cc", "0x20", "0x631", "0x641", "0x62a"]


def test_kaf_and_kashida():
    assert normalize("كتاب") == "کتاب"
    assert normalize("کتـــاب") == "کتاب"


def test_prefix_only_before_letters():
    assert normalize("می ۱۲") == "می ۱۲"
    assert normalize("کمی روشن") == "کمی روشن"


def test_stray_zwnj_removed():
    assert normalize(ZWNJ + "الف " + ZWNJ + "ب" + ZWNJ) == "الف ب"
    assert normalize("الف" + ZWNJ * 3 + "ب") == "الف" + ZWNJ + "ب"


def test_newlines_survive_and_collapse():
    assert normalize("الف \n\n  ب") == "الف\nب"


def test_suffix_list_extends_zwnj_rule():
    assert normalize("کتاب ها", suffixes=("ها",)) == "کتاب" + ZWNJ + "ها"
    assert normalize("کتاب ها") == "کتاب ها"


@settings(max_examples=500)
@given(persianish)
def test_normalize_idempotent(text):
    once = normalize(text)
    assert normalize(once) == once


@settings(max_examples=300)
@given(st.text(max_size=30))
def test_normalize_idempotent_any_text(text):
    once = normalize(text)
    assert normalize(once) == once
    assert "  " not in once
    assert "ي" not in once and "ك" not in once


def test_char_map_file(tmp_path):
    p = tmp_path / "map.tsv"
    p.write_text("# comment\n0649\t06CC\n064B\tDELETE\n", encoding="utf-8")
    table = load_char_map(p)
    assert normalize("على", char_map=table) == "علی"
    assert normalize("کتاباً", char_map=table) == "کتابا"


def test_char_map_rejects_garbage(tmp_path):
    p = tmp_path / "map.tsv"
    p.write_text("zz\t06CC\n", encoding="utf-8")
    with pytest.raises(ResourceError, match=":1:"):
        load_char_map(p)


def test_affix_table(tmp_path):
    p = tmp_path / "affixes.tsv"
    p.write_text("می\tprefix\nها\tsuffix\n", encoding="utf-8")
    assert load_zwnj_affixes(p) == (("می",), ("ها",))


# -- segmentation ---------------------------------------------------------------

def test_segment_on_period():
    assert [s.text for s in segment_sentences("الف رفت. ب آمد")] == ["الف رفت", "ب آمد"]


@pytest.mark.parametrize("text,expected", [
    ("", []),
    ("سلام", ["سلام"]),
    ("چرا؟ چون! خب؛ باشد\nتمام", ["چرا", "چون", "خب", "باشد", "تمام"]),
    ("...", []),
])
def test_segment_cases(text, expected):
    sents = segment_sentences(text)
    assert [s.text for s in sents] == expected
    assert [s.index for s in sents] == list(range(len(expected)))


# -- tokenization ---------------------------------------------------------------

def test_tokenize_example():
    toks = tokenize(Sentence("می" + ZWNJ + "روم، حالا", 0))
    assert [(t.surface, t.kind) for t in toks] == [
        ("می" + ZWNJ + "روم", TokenKind.WORD),
        ("،", TokenKind.PUNCTUATION),
        ("حالا", TokenKind.WORD),
    ]


def test_tokenize_numbers():
    assert tokenize("۱۲۳") == [Token("۱۲۳", TokenKind.NUMBER)]
    assert [t.kind for t in tokenize("42 ٧ ۷")] == [TokenKind.NUMBER] * 3
    assert [t.surface for t in tokenize("سال۱۳۹۰")] == ["سال", "۱۳۹۰"]


def test_tokenize_empty():
    assert tokenize("") == []


def test_punctuation_each_own_token():
    assert [t.surface for t in tokenize("«سلام»!!")] == ["«", "سلام", "»", "!", "!"]


def test_token_requires_surface():
    with pytest.raises(ValueError):
        Token("")


def _digits_only(s):
    return all(c in "0123456789٠١٢٣٤٥٦٧٨٩۰۱۲۳۴۵۶۷۸۹" for c in s)


@settings(max_examples=300)
@given(persianish)
def test_every_nonspace_char_in_exactly_one_token(text):
    toks = tokenize(text)
    assert "".join(t.surface for t in toks) == "".join(text.split())
    for t in toks:
        assert (t.kind is TokenKind.NUMBER) == _digits_only(t.surface)


@settings(max_examples=300)
@given(persianish)
def test_character_conservation(text):
    # word/number surfaces re-joined equal the text minus punctuation, modulo
    # whitespace; ZWNJ counts as whitespace since re-joining can expose a prefix
    def squash(s):
        return "".join(s.replace(ZWNJ, " ").split())

    norm = normalize(text)
    kept = " ".join(t.surface for t in tokenize(norm) if t.kind is not TokenKind.PUNCTUATION)
    stripped = "".join(c for c in norm if not is_punctuation(c))
    assert squash(normalize(kept)) == squash(stripped)


@settings(max_examples=300)
@given(persianish)
def test_segmentation_preserves_word_tokens(text):
    norm = normalize(text)
    whole = [t.surface for t in tokenize(norm) if t.kind is not TokenKind.PUNCTUATION]
    pieces = [t.surface for s in segment_sentences(norm) for t in tokenize(s) if t.kind is not TokenKind.PUNCTUATION]
    assert sorted(pieces) == sorted(whole)
    joined = " ".join(s.text for s in segment_sentences(norm))
    assert [t.surface for t in tokenize(joined) if t.kind is not TokenKind.PUNCTUATION] == whole
