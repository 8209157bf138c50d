"""Lexicon-driven token transformations.

Stop-word removal, affix-stripping stemmer, lexicon lemmatizer, number
masking, synonym canonicalization and a lookup POS tagger.  All lexicons
are immutable once loaded, so every function here is pure.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from pathlib import Path
from types import MappingProxyType
from typing import Iterator, Mapping

from .errors import ResourceError
from .persian_text import ZWNJ, Token, TokenKind, normalize

NUMBER_MASK = "#"
TAG_INVENTORY = frozenset({"N", "V", "ADJ", "ADV", "PRO", "PREP", "CONJ", "NUM", "PUNC", "X"})


class Depth(enum.Enum):
    SHALLOW = "shallow"
    DEEP = "deep"


def _lexicon_lines(path: str | Path) -> Iterator[tuple[int, list[str]]]:
    text = Path(path).read_text(encoding="utf-8-sig")
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, [p.strip() for p in line.split("\t")]


def lexical_form(word: str) -> str:
    """Normalized lexicon key; inner spaces of multiword entries become ZWNJ."""
    return normalize(word).replace(" ", ZWNJ)


# -- stop words ---------------------------------------------------------------

@dataclass(frozen=True)
class StopWordTable:
    depth: Depth
    words: frozenset[str]

    @classmethod
    def from_file(cls, path, depth: Depth) -> StopWordTable:
        return cls(depth, frozenset(lexical_form(parts[0]) for _, parts in _lexicon_lines(path)))


def remove_stop_words(tokens: list[Token], table: StopWordTable) -> list[Token]:
    return [t for t in tokens if not (t.kind is TokenKind.WORD and t.surface in table.words)]


# -- stemming -----------------------------------------------------------------

@dataclass(frozen=True)
class StemRule:
    pattern: str
    replacement: str
    side: str  # "prefix" | "suffix"

    def matches(self, word: str) -> bool:
        return word.startswith(self.pattern) if self.side == "prefix" else word.endswith(self.pattern)

    def apply(self, word: str) -> str:
        if self.side == "prefix":
            out = self.replacement + word[len(self.pattern):]
        else:
            out = word[: len(word) - len(self.pattern)] + self.replacement
        return out.strip(ZWNJ)

    def extends(self, other: StemRule) -> bool:
        if self.side != other.side or self.pattern == other.pattern:
            return False
        if self.side == "prefix":
            return self.pattern.startswith(other.pattern)
        return self.pattern.endswith(other.pattern)


@dataclass(frozen=True)
class StemRuleSet:
    """Ordered affix rules; earlier rules win.

    A rule whose pattern extends an earlier rule's pattern on the same side
    could never fire, so construction rejects that ordering.
    """

    rules: tuple[StemRule, ...]
    min_stem_length: int = 2
    max_steps: int = 4

    def __post_init__(self):
        if self.min_stem_length < 1:
            raise ResourceError("minimum stem length must be positive")
        for i, later in enumerate(self.rules):
            if later.side not in ("prefix", "suffix") or not later.pattern:
                raise ResourceError(f"stem rule {i + 1}: bad side or empty pattern")
            for earlier in self.rules[:i]:
                if later.extends(earlier):
                    raise ResourceError(
                        f"stem rule {i + 1} ({later.pattern!r}) is shadowed by "
                        f"the shorter rule {earlier.pattern!r} listed before it"
                    )

    @classmethod
    def from_file(cls, path, min_stem_length: int = 2) -> StemRuleSet:
        rules = []
        for lineno, parts in _lexicon_lines(path):
            if len(parts) != 3:
                raise ResourceError(f"{path}:{lineno}: expected <pattern>\\t<replacement>\\t<side>")
            pattern, repl, side = parts
            rules.append(StemRule(normalize(pattern), "" if repl == "-" else normalize(repl), side))
        return cls(tuple(rules), min_stem_length)


def stem(word: str, rules: StemRuleSet) -> str:
    """Strip affixes, first matching rule per step, until nothing matches.

    A step that would leave fewer than ``min_stem_length`` characters is not
    taken; the form reached so far is returned.
    """
    current = word
    for _ in range(rules.max_steps):
        rule = next((r for r in rules.rules if r.matches(current)), None)
        if rule is None:
            break
        candidate = rule.apply(current)
        if len(candidate) < rules.min_stem_length or candidate == current:
            break
        current = candidate
    return current


# -- lemmas, synonyms, POS ----------------------------------------------------

@dataclass(frozen=True)
class LemmaLexicon:
    mapping: Mapping[str, str]

    @classmethod
    def from_file(cls, path) -> LemmaLexicon:
        mapping = {}
        for lineno, parts in _lexicon_lines(path):
            if len(parts) != 2 or not all(parts):
                raise ResourceError(f"{path}:{lineno}: expected <form>\\t<lemma>")
            mapping[lexical_form(parts[0])] = lexical_form(parts[1])
        return cls(MappingProxyType(mapping))


def lemmatize(word: str, lex: LemmaLexicon) -> str:
    return lex.mapping.get(word, word)


@dataclass(frozen=True)
class SynonymLexicon:
    """Word -> synset head.  Heads always map to themselves."""

    mapping: Mapping[str, str]
    max_words: int = field(default=1, compare=False)

    @classmethod
    def from_synsets(cls, synsets) -> SynonymLexicon:
        mapping: dict[str, str] = {}
        for synset in synsets:
            forms = [lexical_form(w) for w in synset if w.strip()]
            if not forms:
                continue
            head = forms[0]
            for form in forms:
                prev = mapping.get(form)
                if prev is not None and prev != head:
                    raise ResourceError(f"{form!r} belongs to two synsets ({prev!r}, {head!r})")
                mapping[form] = head
        longest = max((k.count(ZWNJ) + 1 for k in mapping), default=1)
        return cls(MappingProxyType(mapping), longest)

    @classmethod
    def from_file(cls, path) -> SynonymLexicon:
        return cls.from_synsets(parts for _, parts in _lexicon_lines(path))


def _merge_multiword(tokens: list[Token], lex: SynonymLexicon) -> list[Token]:
    """Join adjacent Word tokens whose ZWNJ-joined form is a lexicon key."""
    if lex.max_words < 2:
        return list(tokens)
    out: list[Token] = []
    i = 0
    while i < len(tokens):
        merged = None
        for width in range(min(lex.max_words, len(tokens) - i), 1, -1):
            window = tokens[i : i + width]
            if all(t.kind is TokenKind.WORD for t in window):
                joined = ZWNJ.join(t.surface for t in window)
                if joined in lex.mapping:
                    merged = (replace(window[0], surface=joined), width)
                    break
        if merged:
            out.append(merged[0])
            i += merged[1]
        else:
            out.append(tokens[i])
            i += 1
    return out


def canonicalize_synonyms(tokens: list[Token], lex: SynonymLexicon) -> list[Token]:
    out = []
    for tok in _merge_multiword(tokens, lex):
        if tok.kind is TokenKind.WORD and tok.surface in lex.mapping:
            tok = replace(tok, canonical=lex.mapping[tok.surface])
        out.append(tok)
    return out


@dataclass(frozen=True)
class PosLexicon:
    mapping: Mapping[str, str]
    default_tag: str = "N"

    def __post_init__(self):
        unknown = {t for t in self.mapping.values() if t not in TAG_INVENTORY}
        if self.default_tag not in TAG_INVENTORY:
            unknown.add(self.default_tag)
        if unknown:
            raise ResourceError(f"tags outside the inventory: {sorted(unknown)}")

    @classmethod
    def from_file(cls, path, default_tag: str = "N") -> PosLexicon:
        mapping = {}
        for lineno, parts in _lexicon_lines(path):
            if len(parts) != 2:
                raise ResourceError(f"{path}:{lineno}: expected <word>\\t<tag>")
            mapping[lexical_form(parts[0])] = parts[1]
        return cls(MappingProxyType(mapping), default_tag)


def pos_tag(tokens: list[Token], lex: PosLexicon) -> list[Token]:
    """Tag by lookup.  A synonym-canonicalized word is looked up by its head."""
    out = []
    for tok in tokens:
        if tok.kind is TokenKind.NUMBER:
            tag = "NUM"
        elif tok.kind is TokenKind.PUNCTUATION:
            tag = "PUNC"
        else:
            tag = lex.mapping.get(tok.canonical or tok.surface, lex.default_tag)
        out.append(replace(tok, pos=tag))
    return out


def replace_numbers(tokens: list[Token]) -> list[Token]:
    return [replace(t, surface=NUMBER_MASK) if t.kind is TokenKind.NUMBER else t for t in tokens]
