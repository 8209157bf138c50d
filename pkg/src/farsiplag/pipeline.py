"""Configurable preprocessing: raw document in, comparison terms out."""

from __future__ import annotations

import enum
import hashlib
import json
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Mapping

from . import linguistic_stages as ls
from .errors import ConfigError, ResourceMissing
from .persian_text import (
    DATA_DIR,
    DEFAULT_PREFIXES,
    RawDocument,
    Sentence,
    Token,
    TokenKind,
    default_char_map,
    load_char_map,
    load_zwnj_affixes,
    normalize,
    segment_sentences,
    tokenize,
)
from .similarity import LcsDivisor, MetricSpec


class StopWordMode(enum.Enum):
    OFF = "off"
    SHALLOW = "shallow"
    DEEP = "deep"


_TRUE = {"y", "yes", "true", "1", "on"}
_FALSE = {"n", "no", "false", "0", "off"}
_STOP_ALIASES = {"n": "off", "none": "off", "s": "shallow", "d": "deep"}

BOOL_FIELDS = (
    "normalizing",
    "sentence_segmentation",
    "tokenization",
    "stemming",
    "lemmatization",
    "number_replacement",
    "synonym_recognition",
    "pos_tagging",
)


def _as_bool(key: str, value: Any) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in _TRUE:
        return True
    if text in _FALSE:
        return False
    raise ConfigError(f"{key}: expected a yes/no value, got {value!r}")


@dataclass(frozen=True)
class PipelineConfig:
    """Stage switches plus the similarity metric for one combination."""

    normalizing: bool = True
    stop_word: StopWordMode = StopWordMode.OFF
    sentence_segmentation: bool = True
    tokenization: bool = True
    stemming: bool = False
    lemmatization: bool = False
    number_replacement: bool = False
    synonym_recognition: bool = False
    pos_tagging: bool = False
    metric: MetricSpec = field(default_factory=lambda: MetricSpec.parse("2gram+jaccard"))
    lcs_divisor: LcsDivisor = LcsDivisor.MAX

    def __post_init__(self):
        if not self.tokenization:
            raise ConfigError("tokenization cannot be switched off")

    # -- serialization --------------------------------------------------------

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "normalizing": self.normalizing,
            "stop_word": self.stop_word.value,
            "sentence_segmentation": self.sentence_segmentation,
            "tokenization": self.tokenization,
            "stemming": self.stemming,
            "lemmatization": self.lemmatization,
            "number_replacement": self.number_replacement,
            "synonym_recognition": self.synonym_recognition,
            "pos_tagging": self.pos_tagging,
            "metric": str(self.metric),
        }
        if self.lcs_divisor is not LcsDivisor.MAX:
            out["lcs_divisor"] = self.lcs_divisor.value
        return out

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> PipelineConfig:
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
        kwargs: dict[str, Any] = {}
        for key, value in data.items():
            if key in BOOL_FIELDS:
                kwargs[key] = _as_bool(key, value)
            elif key == "stop_word":
                text = str(value).strip().lower()
                try:
                    kwargs[key] = StopWordMode(_STOP_ALIASES.get(text, text))
                except ValueError:
                    raise ConfigError(f"stop_word: expected off/shallow/deep, got {value!r}") from None
            elif key == "metric":
                kwargs[key] = MetricSpec.parse(str(value))
            elif key == "lcs_divisor":
                try:
                    kwargs[key] = LcsDivisor(str(value).strip().lower())
                except ValueError:
                    raise ConfigError(f"lcs_divisor: expected max/original, got {value!r}") from None
        if "metric" not in kwargs:
            raise ConfigError("config has no metric")
        return cls(**kwargs)

    def to_kv(self) -> str:
        return "".join(f"{k} = {_kv_value(v)}\n" for k, v in self.to_dict().items())

    @classmethod
    def from_kv(cls, text: str, source: str = "<config>") -> PipelineConfig:
        data: dict[str, str] = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ConfigError(f"{source}:{lineno}: expected 'key = value'")
            data[key.strip()] = value.strip()
        return cls.from_mapping(data)

    @classmethod
    def load(cls, path: str | Path) -> PipelineConfig:
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8-sig")
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
        if path.suffix == ".json" or text.lstrip().startswith("{"):
            try:
                return cls.from_mapping(json.loads(text))
            except json.JSONDecodeError as exc:
                raise ConfigError(f"{path}: invalid JSON ({exc.msg})") from None
        return cls.from_kv(text, str(path))

    @property
    def fingerprint(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:16]


def _kv_value(v: Any) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


# -- resources ----------------------------------------------------------------

@dataclass(frozen=True)
class Resources:
    """Loaded lexicons.  A ``None`` entry means the file was not provided."""

    char_map: Mapping[int, str | None] = field(default_factory=default_char_map)
    zwnj_prefixes: tuple[str, ...] = DEFAULT_PREFIXES
    zwnj_suffixes: tuple[str, ...] = ()
    stop_shallow: ls.StopWordTable | None = None
    stop_deep: ls.StopWordTable | None = None
    stems: ls.StemRuleSet | None = None
    lemmas: ls.LemmaLexicon | None = None
    synonyms: ls.SynonymLexicon | None = None
    pos: ls.PosLexicon | None = None

    FILES = {
        "stop_shallow": "stopwords_shallow.txt",
        "stop_deep": "stopwords_deep.txt",
        "stems": "stems.tsv",
        "lemmas": "lemmas.tsv",
        "synonyms": "synonyms.tsv",
        "pos": "pos.tsv",
    }

    @classmethod
    def load(cls, directory: str | Path) -> Resources:
        """Load whichever lexicon files exist in ``directory``."""
        d = Path(directory)
        if not d.is_dir():
            raise ResourceMissing(f"resource directory {d} does not exist")
        kw: dict[str, Any] = {}
        if (d / "charmap.tsv").is_file():
            kw["char_map"] = load_char_map(d / "charmap.tsv")
        if (d / "zwnj_affixes.tsv").is_file():
            kw["zwnj_prefixes"], kw["zwnj_suffixes"] = load_zwnj_affixes(d / "zwnj_affixes.tsv")
        loaders = {
            "stop_shallow": lambda p: ls.StopWordTable.from_file(p, ls.Depth.SHALLOW),
            "stop_deep": lambda p: ls.StopWordTable.from_file(p, ls.Depth.DEEP),
            "stems": ls.StemRuleSet.from_file,
            "lemmas": ls.LemmaLexicon.from_file,
            "synonyms": ls.SynonymLexicon.from_file,
            "pos": ls.PosLexicon.from_file,
        }
        for attr, name in cls.FILES.items():
            if (d / name).is_file():
                kw[attr] = loaders[attr](d / name)
        return cls(**kw)

    @classmethod
    def bundled(cls) -> Resources:
        return cls.load(DATA_DIR)

    def require(self, config: PipelineConfig) -> None:
        needed = {
            "stop_shallow": config.stop_word is StopWordMode.SHALLOW,
            "stop_deep": config.stop_word is StopWordMode.DEEP,
            "stems": config.stemming,
            "lemmas": config.lemmatization,
            "synonyms": config.synonym_recognition,
            "pos": config.pos_tagging,
        }
        missing = [self.FILES[k] for k, on in needed.items() if on and getattr(self, k) is None]
        if missing:
            raise ResourceMissing(f"enabled stages need missing lexicons: {', '.join(missing)}")


# -- running ------------------------------------------------------------------

@dataclass(frozen=True)
class TermSequence:
    terms: tuple[str, ...]
    source_id: str
    fingerprint: str
    sentences: tuple[int, ...] | None = None

    def __post_init__(self):
        if any(not t for t in self.terms):
            raise ValueError("empty term in sequence")


def render_terms(tokens: list[Token], config: PipelineConfig) -> list[str]:
    terms = []
    for tok in tokens:
        if config.stemming and tok.stem is not None:
            term = tok.stem
        elif config.lemmatization and tok.lemma is not None:
            term = tok.lemma
        else:
            term = tok.canonical or tok.surface
        if config.pos_tagging and tok.pos is not None:
            term = f"{term}/{tok.pos}"
        terms.append(term)
    return terms


def preprocess_tokens(doc: RawDocument, config: PipelineConfig, resources: Resources) -> list[Token]:
    """Run every enabled stage up to (not including) rendering."""
    resources.require(config)
    text = doc.text
    if config.normalizing:
        text = normalize(text, resources.char_map, resources.zwnj_prefixes, resources.zwnj_suffixes)
    if config.sentence_segmentation:
        sentences = segment_sentences(text)
    else:
        sentences = [Sentence(text, 0)] if text.strip() else []
    tokens = [tok for s in sentences for tok in tokenize(s)]

    if config.stop_word is StopWordMode.SHALLOW:
        tokens = ls.remove_stop_words(tokens, resources.stop_shallow)
    elif config.stop_word is StopWordMode.DEEP:
        tokens = ls.remove_stop_words(tokens, resources.stop_deep)
    if config.number_replacement:
        tokens = ls.replace_numbers(tokens)
    if config.synonym_recognition:
        tokens = ls.canonicalize_synonyms(tokens, resources.synonyms)
    if config.lemmatization:
        tokens = [_with(t, lemma=ls.lemmatize(t.canonical or t.surface, resources.lemmas)) for t in tokens]
    if config.stemming:
        tokens = [_with(t, stem=ls.stem(t.lemma or t.canonical or t.surface, resources.stems)) for t in tokens]
    if config.pos_tagging:
        tokens = ls.pos_tag(tokens, resources.pos)
    return tokens


def _with(tok: Token, **changes) -> Token:
    return replace(tok, **changes) if tok.kind is TokenKind.WORD else tok


def run_pipeline(doc: RawDocument, config: PipelineConfig, resources: Resources) -> TermSequence:
    tokens = [t for t in preprocess_tokens(doc, config, resources) if t.kind is not TokenKind.PUNCTUATION]
    provenance = tuple(t.sentence for t in tokens) if config.sentence_segmentation else None
    return TermSequence(tuple(render_terms(tokens, config)), doc.id, config.fingerprint, provenance)
