from __future__ import annotations

import json
from collections import Counter
from typing import Dict, List, Literal, Mapping, Optional, Sequence, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from invariants.profile import ModuleProfile
from verify.outcome import CheckOutcome, Number, Status

TOOL_VERSION = "0.1.0"

ReportFormat = Literal["json", "markdown"]
ReportValue = Union[int, str]
StatusName = Literal["pass", "fail", "skip", "unknown", "agree", "counterexample"]


def report_value(value: Optional[Number]) -> Optional[ReportValue]:
    """無限大は "inf" / "-inf" の文字列にする。整数値の float は int に戻す。"""
    if value is None:
        return None
    if isinstance(value, float):
        if value == float("inf"):
            return "inf"
        if value == float("-inf"):
            return "-inf"
        return int(value)
    return int(value)


class WindowModel(BaseModel):
    lower: int
    upper: int


class WitnessModel(BaseModel):
    index: Optional[int] = None
    lhs: ReportValue
    rhs: ReportValue
    label: str = ""


class EntryModel(BaseModel):
    """1件の検査結果。FAIL は証拠を1つ以上持つ。"""

    module: str
    check: str
    status: StatusName
    window: Optional[WindowModel] = None
    witnesses: List[WitnessModel] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def _fail_needs_witness(self) -> "EntryModel":
        if self.status == "fail" and not self.witnesses:
            raise ValueError(f"{self.module}/{self.check}: FAIL に証拠がありません。")
        return self


class SummaryModel(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    passed: int = Field(0, alias="pass")
    fail: int = 0
    skip: int = 0
    unknown: int = 0
    agree: Optional[int] = None
    counterexample: Optional[int] = None

    def count(self, status: str) -> int:
        value = getattr(self, "passed" if status == "pass" else status)
        return int(value or 0)


class ReportDocument(BaseModel):
    """検査結果の文書。summary の各件数は entries の状態の数と一致する。"""

    version: str = TOOL_VERSION
    field: str
    bound: Optional[int] = None
    entries: List[EntryModel] = Field(default_factory=list)
    summary: SummaryModel = Field(default_factory=SummaryModel)

    @model_validator(mode="after")
    def _summary_matches(self) -> "ReportDocument":
        counts = Counter(entry.status for entry in self.entries)
        for status in ("pass", "fail", "skip", "unknown", "agree", "counterexample"):
            if self.summary.count(status) != counts.get(status, 0):
                raise ValueError(f"summary の {status} の件数が entries と一致しません。")
        return self

    @property
    def has_failure(self) -> bool:
        return bool(self.summary.fail or self.summary.counterexample)


def _entry(outcome: CheckOutcome) -> EntryModel:
    window = outcome.window
    return EntryModel(
        module=outcome.module_id,
        check=outcome.check_id,
        status=outcome.status.value,
        window=WindowModel(lower=window.lower, upper=window.upper) if window else None,
        witnesses=[
            WitnessModel(
                index=w.index,
                lhs=report_value(w.lhs) or 0,
                rhs=report_value(w.rhs) or 0,
                label=w.label,
            )
            for w in outcome.witnesses
        ],
        notes=list(outcome.notes),
    )


def build_report(outcomes: Sequence[CheckOutcome], field: str, bound: Optional[int] = None) -> ReportDocument:
    """結果を (module, check) 順に並べ、件数を数えて文書にする。

    Args:
        outcomes (Sequence[CheckOutcome]): 検査結果。
        field (str): 体の表記 (`prime 32003` など)。
        bound (Optional[int]): コマンドラインで与えた窓の上限。既定値を使った場合は None。
    """
    ordered = sorted(outcomes, key=lambda o: o.sort_key)
    counts = Counter(o.status for o in ordered)
    explored = bool(counts[Status.AGREE] or counts[Status.COUNTEREXAMPLE])
    summary = SummaryModel(
        passed=counts[Status.PASS],
        fail=counts[Status.FAIL],
        skip=counts[Status.SKIP],
        unknown=counts[Status.UNKNOWN],
        agree=counts[Status.AGREE] if explored else None,
        counterexample=counts[Status.COUNTEREXAMPLE] if explored else None,
    )
    return ReportDocument(field=field, bound=bound, entries=[_entry(o) for o in ordered], summary=summary)


def render_json(document: ReportDocument) -> str:
    data = document.model_dump(by_alias=True)
    data["summary"] = {k: v for k, v in data["summary"].items() if v is not None}
    return json.dumps(data, ensure_ascii=False, indent=2) + "\n"


def _profile_table(profile: ModuleProfile) -> List[str]:
    lines = ["| j | β_j | μ^j |", "|---|---|---|"]
    for j, (beta, mu) in enumerate(zip(profile.betti, profile.bass)):
        lines.append(f"| {j} | {beta} | {mu} |")
    return lines


def render_markdown(document: ReportDocument, profiles: Optional[Mapping[str, ModuleProfile]] = None) -> str:
    """人が読むための Markdown。加群ごとに Betti / Bass 表と各検査の判定を並べる。"""
    lines = [
        "# halg report",
        "",
        f"- version: {document.version}",
        f"- field: {document.field}",
        f"- bound: {document.bound if document.bound is not None else 'default (s + dim R + 4)'}",
    ]
    grouped: Dict[str, List[EntryModel]] = {}
    for entry in document.entries:
        grouped.setdefault(entry.module, []).append(entry)
    for module, entries in grouped.items():
        lines += ["", f"## {module}", ""]
        profile = (profiles or {}).get(module)
        if profile is not None:
            lines += [f"`{profile.summary()}`", ""] + _profile_table(profile) + [""]
        for entry in entries:
            window = f" ({entry.window.lower} <= j <= {entry.window.upper})" if entry.window else ""
            lines.append(f"- **{entry.check}**: {entry.status.upper()}{window}")
            for w in entry.witnesses:
                lines.append(f"  - j = {w.index}: {w.lhs} vs {w.rhs} [{w.label}]")
            for note in entry.notes:
                lines.append(f"  - {note}")
    lines += ["", "## summary", "", "| status | count |", "|---|---|"]
    for key, value in document.summary.model_dump(by_alias=True).items():
        if value is not None:
            lines.append(f"| {key} | {value} |")
    return "\n".join(lines) + "\n"


def write_report(
    outcomes: Sequence[CheckOutcome],
    report_format: ReportFormat = "json",
    *,
    field: str,
    bound: Optional[int] = None,
    profiles: Optional[Mapping[str, ModuleProfile]] = None,
) -> str:
    """検査結果を JSON または Markdown の文書にする。"""
    document = build_report(outcomes, field, bound)
    if report_format == "markdown":
        return render_markdown(document, profiles)
    return render_json(document)
