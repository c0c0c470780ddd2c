"""Model files, number formatting and run manifests."""
from __future__ import annotations

import csv
import datetime as _dt
import hashlib
import io
import json
import math
from dataclasses import asdict, dataclass
from pathlib import Path

from .distributions import HypothesisPair, make_pair, validate_distribution
from .errors import DomainError
from .logvalue import LogValue, format_sci_log10

MODEL_TOLERANCE = 1e-9


def read_model(path: str | Path) -> HypothesisPair:
    """Load ``{"labels": [...], "p": [...], "q": [...]}``; labels are optional."""
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise DomainError(f"{path}: not valid JSON ({exc})") from None
    return pair_from_doc(doc)


def pair_from_doc(doc: dict) -> HypothesisPair:
    if not isinstance(doc, dict) or "p" not in doc or "q" not in doc:
        raise DomainError("model must be an object with 'p' and 'q' arrays")
    labels = doc.get("labels")
    p = validate_distribution(doc["p"], MODEL_TOLERANCE, labels)
    q = validate_distribution(doc["q"], MODEL_TOLERANCE, labels)
    return make_pair(p, q)


def model_doc(pair: HypothesisPair) -> dict:
    doc = {}
    if pair.p.labels is not None:
        doc["labels"] = list(pair.p.labels)
    doc["p"] = [float(x) for x in pair.p.masses]
    doc["q"] = [float(x) for x in pair.q.masses]
    return doc


def write_model(pair: HypothesisPair, path: str | Path) -> None:
    Path(path).write_text(dumps(model_doc(pair)))


def model_hash(doc: dict) -> str:
    canon = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()


def fmt(x: float) -> str:
    """Six significant digits, scientific."""
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.5E}"


def fmt_log10(x: float) -> str:
    """Full-precision log10 column."""
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return repr(float(x))


def fmt_logvalue(v: LogValue) -> str:
    return format_sci_log10(v.log10)


def json_safe(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return "nan" if math.isnan(obj) else ("inf" if obj > 0 else "-inf")
    if isinstance(obj, dict):
        return {k: json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [json_safe(v) for v in obj]
    return obj


def dumps(obj) -> str:
    return json.dumps(json_safe(obj), indent=2) + "\n"


def csv_text(header: list[str], rows: list[list[str]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


@dataclass(frozen=True)
class RunManifest:
    command: str
    seed: int | None
    version: str
    model_hash: str
    backend: str
    timestamp: str

    @classmethod
    def create(cls, argv, seed, model_hash, version, backend) -> RunManifest:
        ts = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
        return cls(" ".join(["bht", *argv]), seed, version, model_hash, backend, ts)

    def write_beside(self, out: Path) -> Path:
        path = out.with_name(out.name + ".manifest.json")
        path.write_text(dumps(asdict(self)))
        return path
