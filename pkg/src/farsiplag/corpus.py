"""On-disk labeled corpus and report serialization.

A corpus directory holds ``originals/``, ``suspicious/`` and a
``labels.tsv`` whose rows read ``<suspicious-file>\\t<original-file>\\t<label>``
with label one of clean/heavy/light/copy.  Blank lines and ``#`` comments
are ignored.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Sequence

from .errors import BadLabel, DataError, DuplicateId, MissingFile
from .persian_text import RawDocument, Role
from .verdict_eval import CombinationReport, Verdict

ORIGINALS = "originals"
SUSPICIOUS = "suspicious"
LABELS = "labels.tsv"


@dataclass(frozen=True)
class LabeledCorpus:
    name: str
    pairs: tuple[tuple[RawDocument, RawDocument, Verdict], ...]

    def __len__(self) -> int:
        return len(self.pairs)

    def counts(self) -> dict[Verdict, int]:
        out = {v: 0 for v in Verdict}
        for *_, gold in self.pairs:
            out[gold] += 1
        return out


def _read_text(path: Path, where: str) -> str:
    try:
        return path.read_text(encoding="utf-8-sig")
    except FileNotFoundError:
        raise MissingFile(f"{where}: file not found: {path}") from None
    except UnicodeDecodeError as exc:
        raise DataError(f"{where}: {path} is not valid UTF-8 ({exc.reason})") from None


def load_corpus(root: str | Path) -> LabeledCorpus:
    root = Path(root)
    labels = root / LABELS
    text = _read_text(labels, str(root))
    originals: dict[str, RawDocument] = {}
    seen: dict[str, int] = {}
    pairs = []
    for lineno, line in enumerate(text.splitlines(), 1):
        where = f"{labels}:{lineno}"
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = [p.strip() for p in line.rstrip("\r\n").split("\t")]
        if len(parts) != 3:
            raise DataError(f"{where}: expected 3 tab-separated fields, got {len(parts)}")
        susp_name, orig_name, label = parts
        try:
            gold = Verdict.from_label(label)
        except KeyError:
            raise BadLabel(f"{where}: unknown label {label!r} (expected clean, heavy, light or copy)") from None
        susp_id = f"{SUSPICIOUS}/{susp_name}"
        if susp_id in seen:
            raise DuplicateId(f"{where}: {susp_id} already listed on line {seen[susp_id]}")
        seen[susp_id] = lineno
        orig_id = f"{ORIGINALS}/{orig_name}"
        if orig_id not in originals:
            originals[orig_id] = RawDocument(orig_id, _read_text(root / ORIGINALS / orig_name, where), Role.ORIGINAL)
        susp = RawDocument(susp_id, _read_text(root / SUSPICIOUS / susp_name, where), Role.SUSPICIOUS)
        pairs.append((originals[orig_id], susp, gold))
    return LabeledCorpus(root.name, tuple(pairs))


def format_labels(corpus: LabeledCorpus) -> str:
    rows = []
    for orig, susp, gold in corpus.pairs:
        rows.append(f"{susp.id.split('/', 1)[1]}\t{orig.id.split('/', 1)[1]}\t{gold.label}\n")
    return "".join(rows)


# -- reports ------------------------------------------------------------------

FORMATS = ("json", "csv", "tableI-csv", "dispersion-csv")


def _num(x: float | None) -> str:
    return "" if x is None else f"{x:.4f}"


def reports_to_json(reports: Sequence[CombinationReport], ranking: Sequence[CombinationReport] | None = None) -> str:
    doc = {"reports": [r.to_dict() for r in reports]}
    if ranking is not None:
        doc["ranking"] = [r.label for r in ranking]
    return json.dumps(doc, ensure_ascii=False, indent=2, sort_keys=False) + "\n"


def reports_from_json(text: str) -> list[CombinationReport]:
    return [CombinationReport.from_dict(d) for d in json.loads(text)["reports"]]


def _csv_text(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def table_i_csv(reports: Sequence[CombinationReport]) -> str:
    """Mean score per verdict, one row per combination."""
    rows = [
        [r.label, *(_num(s.mean) for s in r.stats), _num(r.worst_dispersion)]
        for r in reports
    ]
    return _csv_text(["combination", "clean", "heavy", "light", "copy", "worst_dispersion"], rows)


def dispersion_csv(reports: Sequence[CombinationReport]) -> str:
    rows = [[r.label, *(_num(s.dispersion) for s in r.stats), _num(r.worst_dispersion)] for r in reports]
    return _csv_text(["combination", "clean", "heavy", "light", "copy", "worst_dispersion"], rows)


def stats_csv(reports: Sequence[CombinationReport]) -> str:
    rows = []
    for r in reports:
        for s in r.stats:
            rows.append([r.label, r.fingerprint, str(r.config.metric), s.verdict.label, s.count,
                         _num(s.mean), _num(s.variance), _num(s.dispersion)])
    return _csv_text(["combination", "fingerprint", "metric", "verdict", "count", "mean", "variance", "dispersion"], rows)


def render_reports(reports: Sequence[CombinationReport], fmt: str, ranking=None) -> str:
    if not reports:
        raise DataError("no reports to write")
    if fmt == "json":
        return reports_to_json(reports, ranking)
    if fmt == "csv":
        return stats_csv(reports)
    if fmt.lower() == "tablei-csv":
        return table_i_csv(reports)
    if fmt == "dispersion-csv":
        return dispersion_csv(reports)
    raise ValueError(f"unknown report format {fmt!r}")


def write_reports(reports: Sequence[CombinationReport], fmt: str, dest: str | Path | IO[str], ranking=None) -> None:
    text = render_reports(reports, fmt, ranking)
    if hasattr(dest, "write"):
        dest.write(text)
        return
    Path(dest).write_bytes(text.encode("utf-8"))
