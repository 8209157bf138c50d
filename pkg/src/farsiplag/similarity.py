"""N-gram set overlap and word-level LCS."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .errors import ConfigError, ConfigMismatch, GramSizeMismatch, InvalidN


class MetricKind(enum.Enum):
    NGRAM_JACCARD = "jaccard"
    NGRAM_CLOUGH = "clough"
    LCS = "lcs"


class LcsDivisor(enum.Enum):
    MAX = "max"
    ORIGINAL = "original"


@dataclass(frozen=True)
class MetricSpec:
    kind: MetricKind
    n: int | None = None

    def __post_init__(self):
        if self.kind is MetricKind.LCS:
            if self.n is not None:
                raise ConfigError("LCS takes no gram size")
        elif self.n not in (2, 3):
            raise ConfigError(f"gram size must be 2 or 3, got {self.n!r}")

    @classmethod
    def parse(cls, text: str) -> MetricSpec:
        """Parse ``2gram+jaccard``, ``3gram+clough``, ``lcs`` and so on."""
        key = text.strip().lower().replace("-", "").replace(" ", "")
        if key == "lcs":
            return cls(MetricKind.LCS)
        gram, _, name = key.partition("+")
        kinds = {"jaccard": MetricKind.NGRAM_JACCARD, "clough": MetricKind.NGRAM_CLOUGH}
        if name not in kinds or not gram.endswith("gram") or not gram[:-4].isdigit():
            raise ConfigError(f"unknown metric {text!r}")
        return cls(kinds[name], int(gram[:-4]))

    def __str__(self) -> str:
        if self.kind is MetricKind.LCS:
            return "lcs"
        return f"{self.n}gram+{self.kind.value}"


@dataclass(frozen=True)
class NGramSet:
    grams: frozenset[tuple[str, ...]]
    n: int

    def __len__(self) -> int:
        return len(self.grams)


@dataclass(frozen=True)
class SimilarityScore:
    value: float
    metric: MetricSpec
    original_id: str = ""
    suspicious_id: str = ""

    def __post_init__(self):
        if not 0.0 <= self.value <= 1.0:
            raise ValueError(f"similarity {self.value} outside [0, 1]")


def extract_ngrams(terms: Sequence[str], n: int) -> NGramSet:
    if n < 1:
        raise InvalidN(f"n must be >= 1, got {n}")
    terms = tuple(terms)
    return NGramSet(frozenset(terms[i : i + n] for i in range(len(terms) - n + 1)), n)


def _check_n(sa: NGramSet, sb: NGramSet) -> None:
    if sa.n != sb.n:
        raise GramSizeMismatch(f"cannot compare {sa.n}-grams with {sb.n}-grams")


def jaccard(sa: NGramSet, sb: NGramSet) -> float:
    """|A & B| / |A | B|; 0 when both sets are empty."""
    _check_n(sa, sb)
    union = len(sa.grams | sb.grams)
    return len(sa.grams & sb.grams) / union if union else 0.0


def clough_stevenson(sa: NGramSet, sb: NGramSet) -> float:
    """Containment |A & B| / |A|, with ``sa`` the original's grams.

    Asymmetric; 0 when ``sa`` is empty.
    """
    _check_n(sa, sb)
    return len(sa.grams & sb.grams) / len(sa.grams) if sa.grams else 0.0


def lcs_length(a: Sequence[str], b: Sequence[str]) -> int:
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return 0
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0]
        for j, y in enumerate(b, 1):
            cur.append(prev[j - 1] + 1 if x == y else max(prev[j], cur[j - 1]))
        prev = cur
    return prev[-1]


def lcs_score(a: Sequence[str], b: Sequence[str], divisor: LcsDivisor = LcsDivisor.MAX) -> float:
    """LCS length scaled to [0, 1].

    ``divisor`` picks the denominator: the longer sequence (symmetric) or the
    original ``a``.
    """
    denom = max(len(a), len(b)) if divisor is LcsDivisor.MAX else len(a)
    return lcs_length(a, b) / denom if denom else 0.0


def compare(original, suspicious, metric: MetricSpec, lcs_divisor: LcsDivisor = LcsDivisor.MAX) -> SimilarityScore:
    """Score two TermSequences produced under the same configuration."""
    if original.fingerprint != suspicious.fingerprint:
        raise ConfigMismatch(
            f"{original.source_id} and {suspicious.source_id} were preprocessed "
            f"under different configs ({original.fingerprint} vs {suspicious.fingerprint})"
        )
    a, b = original.terms, suspicious.terms
    if metric.kind is MetricKind.LCS:
        value = lcs_score(a, b, lcs_divisor)
    else:
        sa, sb = extract_ngrams(a, metric.n), extract_ngrams(b, metric.n)
        fn = jaccard if metric.kind is MetricKind.NGRAM_JACCARD else clough_stevenson
        value = fn(sa, sb)
    return SimilarityScore(value, metric, original.source_id, suspicious.source_id)
