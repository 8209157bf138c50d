"""Verdicts, per-verdict score statistics, and combination ranking."""

from __future__ import annotations

import enum
import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import EmptyGroup, InsufficientData, MetricMismatch, NonMonotoneGroups
from .pipeline import PipelineConfig, Resources, TermSequence, run_pipeline
from .similarity import MetricSpec, SimilarityScore, compare


class Verdict(enum.IntEnum):
    CLEAN = 0
    HEAVY_REVISION = 1
    LIGHT_REVISION = 2
    NEAR_COPY = 3

    @property
    def label(self) -> str:
        return _LABELS[self]

    @classmethod
    def from_label(cls, text: str) -> Verdict:
        return _BY_LABEL[text.strip().lower()]


_LABELS = {
    Verdict.CLEAN: "clean",
    Verdict.HEAVY_REVISION: "heavy",
    Verdict.LIGHT_REVISION: "light",
    Verdict.NEAR_COPY: "copy",
}
_BY_LABEL = {v: k for k, v in _LABELS.items()}


@dataclass(frozen=True)
class VerdictThresholds:
    t1: float
    t2: float
    t3: float
    metric: MetricSpec

    def __post_init__(self):
        if not 0.0 <= self.t1 < self.t2 < self.t3 <= 1.0:
            raise ValueError(f"thresholds must satisfy 0 <= t1 < t2 < t3 <= 1, got {self.cuts}")

    @property
    def cuts(self) -> tuple[float, float, float]:
        return (self.t1, self.t2, self.t3)

    def to_dict(self) -> dict:
        return {"metric": str(self.metric), "t1": self.t1, "t2": self.t2, "t3": self.t3}

    @classmethod
    def from_dict(cls, data: dict) -> VerdictThresholds:
        return cls(float(data["t1"]), float(data["t2"]), float(data["t3"]), MetricSpec.parse(data["metric"]))


def classify(score: SimilarityScore, th: VerdictThresholds) -> Verdict:
    if score.metric != th.metric:
        raise MetricMismatch(f"thresholds calibrated for {th.metric}, score uses {score.metric}")
    return Verdict(sum(score.value >= t for t in th.cuts))


def calibrate_thresholds(labeled: Iterable[tuple[SimilarityScore, Verdict]]) -> VerdictThresholds:
    """Cut points at the midpoints between adjacent per-verdict mean scores."""
    groups: dict[Verdict, list[float]] = {v: [] for v in Verdict}
    metrics = set()
    for score, verdict in labeled:
        groups[Verdict(verdict)].append(score.value)
        metrics.add(score.metric)
    if len(metrics) > 1:
        raise MetricMismatch(f"calibration scores mix metrics: {sorted(map(str, metrics))}")
    empty = [v.label for v, xs in groups.items() if not xs]
    if empty:
        raise InsufficientData(f"no samples for verdict class(es): {', '.join(empty)}")
    means = [statistics.fmean(groups[v]) for v in Verdict]
    if any(a >= b for a, b in zip(means, means[1:])):
        shown = ", ".join(f"{v.label}={m:.4f}" for v, m in zip(Verdict, means))
        raise NonMonotoneGroups(f"group means do not increase with severity ({shown})")
    cuts = []
    for lo, hi in zip(means, means[1:]):
        mid = (lo + hi) / 2
        # the midpoint of two adjacent floats can round down onto ``lo``
        cuts.append(mid if mid > lo else hi)
    return VerdictThresholds(*cuts, metric=metrics.pop())


# -- statistics ---------------------------------------------------------------

@dataclass(frozen=True)
class GroupStats:
    verdict: Verdict
    mean: float
    variance: float
    dispersion: float | None  # None when the mean is zero
    count: int

    @property
    def dispersion_defined(self) -> bool:
        return self.dispersion is not None

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.label,
            "count": self.count,
            "mean": self.mean,
            "variance": self.variance,
            "dispersion": self.dispersion,
        }

    @classmethod
    def from_dict(cls, data: dict) -> GroupStats:
        return cls(Verdict.from_label(data["verdict"]), data["mean"], data["variance"], data["dispersion"], data["count"])


def group_stats(scores: Sequence[float], verdict: Verdict) -> GroupStats:
    """Mean, population variance and variance-to-mean ratio of one group."""
    if not scores:
        raise EmptyGroup(f"no scores for verdict {Verdict(verdict).label}")
    mu = statistics.fmean(scores)
    var = statistics.pvariance(scores, mu)
    return GroupStats(Verdict(verdict), mu, var, var / mu if mu > 0 else None, len(scores))


AGGREGATES = {"max": max, "min": min, "mean": statistics.fmean}


def aggregate_dispersion(stats: Iterable[GroupStats], how: str = "max") -> float:
    # an undefined ratio only occurs for an all-zero group, which has no spread
    return AGGREGATES[how]([s.dispersion if s.dispersion is not None else 0.0 for s in stats])


@dataclass(frozen=True)
class PairScore:
    original_id: str
    suspicious_id: str
    gold: Verdict
    value: float

    def to_dict(self) -> dict:
        return {"original": self.original_id, "suspicious": self.suspicious_id, "gold": self.gold.label, "score": self.value}


@dataclass(frozen=True)
class CombinationReport:
    label: str
    config: PipelineConfig
    stats: tuple[GroupStats, ...]
    worst_dispersion: float
    aggregate: str = "max"
    pairs: tuple[PairScore, ...] = ()

    def __post_init__(self):
        if [s.verdict for s in self.stats] != list(Verdict):
            raise ValueError("a report needs exactly one GroupStats per verdict, in severity order")

    def group(self, verdict: Verdict) -> GroupStats:
        return self.stats[int(verdict)]

    @property
    def separation(self) -> float:
        return self.group(Verdict.NEAR_COPY).mean - self.group(Verdict.CLEAN).mean

    @property
    def fingerprint(self) -> str:
        return self.config.fingerprint

    def to_dict(self) -> dict:
        return {
            "combination": self.label,
            "fingerprint": self.fingerprint,
            "config": self.config.to_dict(),
            "aggregate": self.aggregate,
            "worst_dispersion": self.worst_dispersion,
            "separation": self.separation,
            "groups": [s.to_dict() for s in self.stats],
            "pairs": [p.to_dict() for p in self.pairs],
        }

    @classmethod
    def from_dict(cls, data: dict) -> CombinationReport:
        return cls(
            label=data["combination"],
            config=PipelineConfig.from_mapping(data["config"]),
            stats=tuple(GroupStats.from_dict(g) for g in data["groups"]),
            worst_dispersion=data["worst_dispersion"],
            aggregate=data.get("aggregate", "max"),
            pairs=tuple(
                PairScore(p["original"], p["suspicious"], Verdict.from_label(p["gold"]), p["score"])
                for p in data.get("pairs", ())
            ),
        )


def score_pairs(corpus, config: PipelineConfig, resources: Resources, workers: int | None = None) -> list[PairScore]:
    """Score every labeled pair; output order follows the corpus, not completion."""
    resources.require(config)
    docs = {}
    for orig, susp, _ in corpus.pairs:
        docs.setdefault(orig.id, orig)
        docs.setdefault(susp.id, susp)

    def prep(doc) -> TermSequence:
        return run_pipeline(doc, config, resources)

    ids = list(docs)
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            seqs = dict(zip(ids, pool.map(prep, (docs[i] for i in ids))))
    else:
        seqs = {i: prep(docs[i]) for i in ids}

    def score(pair) -> PairScore:
        orig, susp, gold = pair
        s = compare(seqs[orig.id], seqs[susp.id], config.metric, config.lcs_divisor)
        return PairScore(orig.id, susp.id, gold, s.value)

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(score, corpus.pairs))
    return [score(p) for p in corpus.pairs]


def evaluate_combination(
    corpus,
    config: PipelineConfig,
    resources: Resources,
    label: str = "",
    aggregate: str = "max",
    workers: int | None = None,
) -> CombinationReport:
    pairs = score_pairs(corpus, config, resources, workers)
    by_verdict: dict[Verdict, list[float]] = {v: [] for v in Verdict}
    for p in pairs:
        by_verdict[p.gold].append(p.value)
    stats = tuple(group_stats(by_verdict[v], v) for v in Verdict)
    return CombinationReport(
        label=label or config.fingerprint,
        config=config,
        stats=stats,
        worst_dispersion=aggregate_dispersion(stats, aggregate),
        aggregate=aggregate,
        pairs=tuple(pairs),
    )


def rank_combinations(reports: Sequence[CombinationReport]) -> list[CombinationReport]:
    """Lowest aggregated dispersion first; wider clean-to-copy separation breaks ties."""
    return sorted(reports, key=lambda r: (r.worst_dispersion, -r.separation, r.fingerprint, r.label))
