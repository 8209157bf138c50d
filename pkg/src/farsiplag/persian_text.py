"""Script-level Persian handling: normalization, sentence splitting, tokens."""

from __future__ import annotations

import enum
import functools
import re
import unicodedata
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

from .errors import ResourceError

ZWNJ = "\u200c"
DATA_DIR = Path(__file__).parent / "data"

SENTENCE_TERMINATORS = ".!?\u061f\u061b\n"  # . ! ? ؟ ؛ newline
DEFAULT_PREFIXES = ("نمی", "می")

_DIGIT_RANGES = ((0x30, 0x39), (0x660, 0x669), (0x6F0, 0x6F9))


class Role(enum.Enum):
    ORIGINAL = "original"
    SUSPICIOUS = "suspicious"


class TokenKind(enum.Enum):
    WORD = "word"
    NUMBER = "number"
    PUNCTUATION = "punct"


@dataclass(frozen=True)
class RawDocument:
    id: str
    text: str
    role: Role = Role.ORIGINAL


@dataclass(frozen=True)
class Sentence:
    text: str
    index: int


@dataclass(frozen=True)
class Token:
    """One token plus whatever annotations the enabled stages attached."""

    surface: str
    kind: TokenKind = TokenKind.WORD
    stem: str | None = None
    lemma: str | None = None
    pos: str | None = None
    canonical: str | None = None
    sentence: int = 0

    def __post_init__(self):
        if not self.surface:
            raise ValueError("token surface must be non-empty")


def is_digit(ch: str) -> bool:
    cp = ord(ch)
    return any(lo <= cp <= hi for lo, hi in _DIGIT_RANGES)


def is_punctuation(ch: str) -> bool:
    return unicodedata.category(ch)[0] in "PS"


# -- mapping tables -----------------------------------------------------------

def load_char_map(path: str | Path) -> dict[int, str | None]:
    """Read a ``<from-hex>\\t<to-hex|DELETE>`` table into a translate() map."""
    table: dict[int, str | None] = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8-sig").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise ResourceError(f"{path}:{lineno}: expected two tab-separated fields")
        src, dst = parts[0].strip(), parts[1].strip()
        try:
            key = int(src.removeprefix("U+").removeprefix("u+"), 16)
            if dst.upper() == "DELETE":
                table[key] = None
            else:
                table[key] = chr(int(dst.removeprefix("U+").removeprefix("u+"), 16))
        except ValueError as exc:
            raise ResourceError(f"{path}:{lineno}: bad codepoint ({exc})") from None
    return table


def load_zwnj_affixes(path: str | Path) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """Read ``<affix>\\t<prefix|suffix>`` lines; returns (prefixes, suffixes)."""
    prefixes: list[str] = []
    suffixes: list[str] = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8-sig").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2 or parts[1] not in ("prefix", "suffix"):
            raise ResourceError(f"{path}:{lineno}: expected '<affix>\\t<prefix|suffix>'")
        (prefixes if parts[1] == "prefix" else suffixes).append(parts[0])
    return tuple(prefixes), tuple(suffixes)


@functools.lru_cache(maxsize=None)
def default_char_map() -> Mapping[int, str | None]:
    return load_char_map(DATA_DIR / "charmap.tsv")


# -- normalization ------------------------------------------------------------

_NEWLINE_RUN = re.compile(r"\s*\n\s*")
_SPACE_RUN = re.compile(r"[^\S\n]+")
_ZWNJ_RUN = re.compile(ZWNJ + "+")
_LETTER = r"[^\W\d_]"
# ZWNJ is only meaningful between two letters (or Arabic-script combining marks)
_JOINABLE = rf"(?:{_LETTER}|[\u0610-\u061a\u064b-\u065f\u0670\u06d6-\u06ed])"
_ZWNJ_STRAY = re.compile(rf"(?<!{_JOINABLE}){ZWNJ}|{ZWNJ}(?!{_JOINABLE})")


@functools.lru_cache(maxsize=64)
def _affix_patterns(prefixes: tuple[str, ...], suffixes: tuple[str, ...]):
    pats = []
    if prefixes:
        alt = "|".join(re.escape(p) for p in sorted(prefixes, key=len, reverse=True))
        pats.append((re.compile(rf"(?<!\S)({alt}) (?={_LETTER})"), r"\1" + ZWNJ))
    if suffixes:
        alt = "|".join(re.escape(s) for s in sorted(suffixes, key=len, reverse=True))
        pats.append((re.compile(rf"(?<={_LETTER}) ({alt})(?!\S)"), ZWNJ + r"\1"))
    return pats


def normalize(
    text: str,
    char_map: Mapping[int, str | None] | None = None,
    prefixes: Iterable[str] = DEFAULT_PREFIXES,
    suffixes: Iterable[str] = (),
) -> str:
    """Normalize Persian orthography.

    Applies the character table (Arabic yeh/kaf to Persian, kashida removal by
    default), collapses whitespace runs, turns the space after a verbal prefix
    such as ``می`` into ZWNJ, and trims.  Idempotent.
    """
    if char_map is None:
        char_map = default_char_map()
    text = text.replace("\r\n", "\n").replace("\r", "\n")
    text = text.translate(char_map)
    text = _ZWNJ_RUN.sub(ZWNJ, text)
    text = _ZWNJ_STRAY.sub("", text)
    text = _NEWLINE_RUN.sub("\n", text)
    text = _SPACE_RUN.sub(" ", text)
    for pattern, repl in _affix_patterns(tuple(prefixes), tuple(suffixes)):
        text = pattern.sub(repl, text)
    return text.strip()


# -- segmentation and tokenization --------------------------------------------

_TERMINATOR_SPLIT = re.compile("[" + re.escape(SENTENCE_TERMINATORS) + "]")


def segment_sentences(text: str) -> list[Sentence]:
    out = []
    for piece in _TERMINATOR_SPLIT.split(text):
        piece = piece.strip()
        if piece:
            out.append(Sentence(piece, len(out)))
    return out


def _char_class(ch: str) -> TokenKind:
    if is_digit(ch):
        return TokenKind.NUMBER
    if is_punctuation(ch):
        return TokenKind.PUNCTUATION
    return TokenKind.WORD


def tokenize(sentence: Sentence | str) -> list[Token]:
    """Split on whitespace, then peel off punctuation and digit runs.

    Each punctuation character is its own token.  ZWNJ and combining marks
    stay inside words.
    """
    if isinstance(sentence, Sentence):
        text, idx = sentence.text, sentence.index
    else:
        text, idx = sentence, 0
    tokens: list[Token] = []
    for chunk in text.split():
        start = 0
        kind = _char_class(chunk[0])
        for i in range(1, len(chunk) + 1):
            nxt = _char_class(chunk[i]) if i < len(chunk) else None
            if nxt is kind and kind is not TokenKind.PUNCTUATION:
                continue
            tokens.append(Token(chunk[start:i], kind, sentence=idx))
            start, kind = i, nxt
    return tokens
