import json
from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from farsiplag.errors import ConfigError, ResourceMissing
from farsiplag.persian_text import DATA_DIR, ZWNJ, RawDocument, Token, TokenKind, normalize, segment_sentences, tokenize
from farsiplag.pipeline import PipelineConfig, Resources, StopWordMode, render_terms, run_pipeline
from farsiplag.similarity import LcsDivisor, MetricSpec, extract_ngrams

BARE = PipelineConfig(
    normalizing=False,
    sentence_segmentation=False,
    metric=MetricSpec.parse("2gram+jaccard"),
)
NORM_ONLY = replace(BARE, normalizing=True)

STEM_A = "این پردازنده ها می توانند پردازش سیگنال را انجام دهند"
STEM_B = "این نوع پردازنده توان پردازش سیگنال را دارند"


def doc(text, id="d"):
    return RawDocument(id, text)


def test_normalize_and_tokenize_only(resources):
    ts = run_pipeline(doc("می روم."), NORM_ONLY, resources)
    assert ts.terms == ("می" + ZWNJ + "روم",)


def test_empty_document(resources):
    assert run_pipeline(doc(""), PipelineConfig(), resources).terms == ()


def test_stemming_example_overlap(resources):
    # gram sets traced by hand: stemming maps می‌توانند and توان to one stem
    def shared(config):
        a = run_pipeline(doc(STEM_A, "a"), config, resources).terms
        b = run_pipeline(doc(STEM_B, "b"), config, resources).terms
        return extract_ngrams(a, 2).grams & extract_ngrams(b, 2).grams

    off = shared(NORM_ONLY)
    on = shared(replace(NORM_ONLY, stemming=True))
    assert off == {("پردازش", "سیگنال"), ("سیگنال", "را")}
    assert on == {("تو", "پرداز"), ("پرداز", "سیگنال"), ("سیگنال", "را")}
    assert len(on) > len(off)


def test_render_terms():
    cfg = replace(NORM_ONLY, stemming=True)
    assert render_terms([Token("پردازنده" + ZWNJ + "ها", stem="پردازنده")], cfg) == ["پردازنده"]
    cfg = replace(NORM_ONLY, pos_tagging=True)
    assert render_terms([Token("رفت", pos="V")], cfg) == ["رفت/V"]
    assert render_terms([Token("#", TokenKind.NUMBER, pos="NUM")], cfg) == ["#/NUM"]


def test_render_priority():
    tok = Token("x", stem="s", lemma="l", canonical="c")
    assert render_terms([tok], replace(BARE, stemming=True, lemmatization=True)) == ["s"]
    assert render_terms([tok], replace(BARE, lemmatization=True)) == ["l"]
    assert render_terms([tok], BARE) == ["c"]


def test_lemma_then_stem(resources):
    cfg = replace(NORM_ONLY, lemmatization=True, stemming=True)
    # the lemma رفتن is stemmed, not the surface
    assert run_pipeline(doc("می روم"), cfg, resources).terms == ("رفتن",)


def test_missing_resource():
    cfg = replace(NORM_ONLY, stemming=True)
    with pytest.raises(ResourceMissing, match="stems.tsv"):
        run_pipeline(doc("کتاب"), cfg, Resources())


def test_resources_from_partial_dir(tmp_path):
    (tmp_path / "stopwords_shallow.txt").write_text("از\n", encoding="utf-8")
    res = Resources.load(tmp_path)
    cfg = replace(NORM_ONLY, stop_word=StopWordMode.SHALLOW)
    assert run_pipeline(doc("از اینجا"), cfg, res).terms == ("اینجا",)
    with pytest.raises(ResourceMissing):
        run_pipeline(doc("x"), replace(cfg, stop_word=StopWordMode.DEEP), res)
    with pytest.raises(ResourceMissing):
        Resources.load(tmp_path / "nope")


def test_numbers_masked_across_documents(resources):
    cfg = replace(NORM_ONLY, number_replacement=True)
    a = run_pipeline(doc("در سال ۱۳۹۰ بیش از 50 شرکت"), cfg, resources)
    b = run_pipeline(doc("در سال ۱۳۹۲ بیش از 60 شرکت"), cfg, resources)
    assert a.terms == b.terms
    assert "#" in a.terms


def test_sentence_provenance(resources):
    ts = run_pipeline(doc("الف ب. ج"), PipelineConfig(), resources)
    assert ts.sentences == (0, 0, 1)
    assert run_pipeline(doc("الف ب. ج"), replace(PipelineConfig(), sentence_segmentation=False), resources).sentences is None


texts = st.text(alphabet=st.sampled_from(list("میکتابرونده ۱2.،؟") + [ZWNJ, "\n", "ي"]), max_size=40)


@settings(max_examples=150)
@given(texts)
def test_all_optional_stages_off(resources, text):
    cfg = PipelineConfig(metric=MetricSpec.parse("lcs"))
    expected = [t.surface for s in segment_sentences(normalize(text)) for t in tokenize(s)
                if t.kind is not TokenKind.PUNCTUATION]
    assert list(run_pipeline(doc(text), cfg, resources).terms) == expected


@settings(max_examples=100)
@given(texts)
def test_segmentation_does_not_change_terms(resources, text):
    on = PipelineConfig(stemming=True, synonym_recognition=True)
    off = replace(on, sentence_segmentation=False)
    assert run_pipeline(doc(text), on, resources).terms == run_pipeline(doc(text), off, resources).terms


@settings(max_examples=100)
@given(texts, st.sampled_from(sorted((DATA_DIR / "configs").glob("*.conf"))))
def test_deterministic(resources, text, path):
    cfg = PipelineConfig.load(path)
    first = run_pipeline(doc(text), cfg, resources)
    assert first == run_pipeline(doc(text), cfg, resources)
    assert all(first.terms)
    assert first.fingerprint == cfg.fingerprint


# -- config serialization ------------------------------------------------------------

TABLE_II = {
    # row: (stop, stem, lemma, numbers, pos, metric); normalizing/segmentation/tokens/synonyms are Y in every row
    1: ("deep", True, True, True, True, "3gram+jaccard"),
    2: ("deep", True, True, True, False, "2gram+jaccard"),
    3: ("shallow", True, True, False, True, "3gram+jaccard"),
    4: ("shallow", True, True, True, True, "2gram+jaccard"),
    5: ("deep", False, True, True, False, "3gram+clough"),
    6: ("deep", True, True, True, False, "2gram+clough"),
    7: ("shallow", False, True, True, False, "3gram+clough"),
    8: ("shallow", True, True, False, False, "2gram+clough"),
    9: ("deep", False, True, True, False, "lcs"),
    10: ("deep", True, True, True, True, "lcs"),
}


@pytest.mark.parametrize("row", sorted(TABLE_II))
def test_bundled_configs_match_table(row):
    cfg = PipelineConfig.load(DATA_DIR / "configs" / f"{row}.conf")
    stop, stem, lemma, numbers, pos, metric = TABLE_II[row]
    assert cfg.normalizing and cfg.sentence_segmentation and cfg.tokenization and cfg.synonym_recognition
    assert (cfg.stop_word.value, cfg.stemming, cfg.lemmatization, cfg.number_replacement, cfg.pos_tagging,
            str(cfg.metric)) == (stop, stem, lemma, numbers, pos, metric)


def test_kv_and_json_round_trip(tmp_path):
    cfg = PipelineConfig(stop_word=StopWordMode.DEEP, stemming=True, metric=MetricSpec.parse("3gram+clough"))
    assert PipelineConfig.from_kv(cfg.to_kv()) == cfg
    assert PipelineConfig.from_mapping(json.loads(json.dumps(cfg.to_dict()))) == cfg
    p = tmp_path / "c.json"
    p.write_text(json.dumps(cfg.to_dict()), encoding="utf-8")
    assert PipelineConfig.load(p) == cfg
    assert set(cfg.to_dict()) == {
        "normalizing", "stop_word", "sentence_segmentation", "tokenization", "stemming", "lemmatization",
        "number_replacement", "synonym_recognition", "pos_tagging", "metric",
    }


def test_lcs_divisor_key():
    cfg = PipelineConfig.from_kv("metric = lcs\nlcs_divisor = original\n")
    assert cfg.lcs_divisor is LcsDivisor.ORIGINAL
    assert PipelineConfig.from_kv(cfg.to_kv()) == cfg


def test_table_letters_accepted():
    cfg = PipelineConfig.from_kv("normalizing = Y\nstop_word = D\nstemming = N\nmetric = 2gram+clough")
    assert cfg.stop_word is StopWordMode.DEEP and not cfg.stemming


@pytest.mark.parametrize("text,match", [
    ("metric = lcs\ntokenization = no", "tokenization"),
    ("metric = lcs\ncolour = red", "unknown"),
    ("stemming = yes", "no metric"),
    ("metric = lcs\nstemming = maybe", "stemming"),
    ("metric = lcs\nstop_word = medium", "stop_word"),
    ("metric lcs", "key = value"),
])
def test_bad_configs(text, match):
    with pytest.raises(ConfigError, match=match):
        PipelineConfig.from_kv(text)


def test_fingerprint_distinguishes_configs():
    a = PipelineConfig()
    assert a.fingerprint == PipelineConfig().fingerprint
    assert a.fingerprint != replace(a, stemming=True).fingerprint
