"""`.halg` コーパスの読み書きと検査レポートの出力。"""

from .parser import (
    CORPUS_SUFFIX,
    CorpusEntry,
    RingBlock,
    collect_corpus_files,
    parse_file,
    parse_input,
    parse_polynomial,
    render_corpus,
)
from .report import (
    TOOL_VERSION,
    EntryModel,
    ReportDocument,
    SummaryModel,
    build_report,
    render_json,
    render_markdown,
    write_report,
)

__all__ = [
    "CORPUS_SUFFIX",
    "CorpusEntry",
    "EntryModel",
    "ReportDocument",
    "RingBlock",
    "SummaryModel",
    "TOOL_VERSION",
    "build_report",
    "collect_corpus_files",
    "parse_file",
    "parse_input",
    "parse_polynomial",
    "render_corpus",
    "render_json",
    "render_markdown",
    "write_report",
]
