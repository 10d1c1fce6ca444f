from __future__ import annotations

import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence, TextIO, Tuple

from algebra.monomials import TermOrder
from algebra.ring import format_polynomial
from algebra.scalars import FieldMode
from app_logging.handlers import log_run_event
from corpus_io.parser import CorpusEntry, collect_corpus_files, parse_file
from corpus_io.report import ReportFormat, write_report
from exceptions import ConfigurationError, HalgError
from invariants.calculator import InvariantCalculator, ring_module
from invariants.profile import ModuleProfile, module_profile
from modcat.hilbert import INFINITE, MINUS_INFINITY, HilbertData
from oracle.degreewise import DegreewiseOracle
from resolve.betti import betti_table
from settings.model import SettingsModel
from verify.harness import run_explore, run_verify
from verify.outcome import CheckOutcome

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

# 検算器で調べる次数の幅。
ORACLE_DEGREES = 8
# S 上の Betti 表を検算器と比べる変数の個数の上限。
ORACLE_MAX_VARIABLES = 3


def _fmt(value: float) -> str:
    if value == INFINITE:
        return "inf"
    if value == MINUS_INFINITY:
        return "-inf"
    return str(int(value))


def _hilbert_line(data: HilbertData) -> str:
    numerator = " + ".join(f"{c}*t^{e}" for e, c in data.numerator) or "0"
    return f"H = ({numerator}) / (1-t)^{data.denominator_exponent}, dim = {_fmt(data.dimension)}, length = {_fmt(data.length)}"


def computed_expectations(profile: ModuleProfile) -> Dict[str, str]:
    """`expect_*` と突き合わせる計算値。"""
    flags = profile.flags
    values = {
        "depth": _fmt(profile.depth),
        "dim": _fmt(profile.dimension),
        "type": str(profile.type_value),
        "cm": str(flags.is_cohen_macaulay),
        "gcm": str(flags.is_generalized_cm),
        "ccm": str(flags.is_canonically_cm),
        "ci": str(flags.is_complete_intersection),
        "pd_finite": str(flags.pd.finite),
        "id_finite": str(flags.id.finite),
    }
    return {key: value.lower() for key, value in values.items()}


class CommandController:
    """CLI の各コマンドを実行し、結果をテキストで書き出すコントローラ。

    戻り値はすべて終了コード (0 = 成功, 1 = FAIL / COUNTEREXAMPLE あり)。
    """

    def __init__(
        self,
        *,
        settings_model: Optional[SettingsModel] = None,
        calculator: Optional[InvariantCalculator] = None,
        stream: Optional[TextIO] = None,
        logger: Optional[logging.Logger] = None,
    ) -> None:
        """依存オブジェクトを受け取り初期化する。

        Args:
            settings_model (Optional[SettingsModel]): 既定値の取得元。
            calculator (Optional[InvariantCalculator]): 不変量の計算器。コマンド間でキャッシュを共有する。
            stream (Optional[TextIO]): 出力先。省略時は標準出力。
            logger (Optional[logging.Logger]): ロガー。
        """
        self._settings = settings_model or SettingsModel()
        self._calculator = calculator or InvariantCalculator()
        self._stream = stream
        self._logger = logger or logging.getLogger("halg.cli")

    @property
    def settings(self) -> SettingsModel:
        return self._settings

    # ------------------------------------------------------------------ 共通処理

    def resolve_fields(self, field_flag: Optional[str]) -> Tuple[Optional[FieldMode], FieldMode]:
        """(コマンドラインの体指定, 既定の体) を返す。既定は環境変数 > 設定ファイル > F_32003。

        Raises:
            ConfigurationError: 書式が不正な場合。
        """
        override = FieldMode.parse(field_flag) if field_flag else None
        return override, FieldMode.parse(self._settings.default_field())

    def resolve_order(self, order_flag: Optional[str]) -> TermOrder:
        value = order_flag or self._settings.default_order()
        try:
            return TermOrder(value)
        except ValueError as exc:
            raise ConfigurationError(f"単項式順序を解釈できません: {value!r}") from exc

    def _write(self, text: str, output: Optional[Path] = None) -> None:
        if output is not None:
            output.parent.mkdir(parents=True, exist_ok=True)
            output.write_text(text, encoding="utf-8")
            self._logger.info("出力を書き出しました: %s", output)
            return
        stream = self._stream or sys.stdout
        stream.write(text)
        stream.flush()

    def _load(
        self, paths: Sequence[Path], field_flag: Optional[str], order_flag: Optional[str]
    ) -> Tuple[List[Path], List[CorpusEntry]]:
        override, default = self.resolve_fields(field_flag)
        order = self.resolve_order(order_flag)
        files = collect_corpus_files(paths)
        entries: List[CorpusEntry] = []
        for path in files:
            entries.extend(
                parse_file(path, field_override=override, default_field=default, order=order, logger=self._logger)
            )
        return files, entries

    def _field_label(self, entries: Sequence[CorpusEntry], field_flag: Optional[str]) -> str:
        override, default = self.resolve_fields(field_flag)
        if override is not None:
            return override.describe()
        modes = sorted({entry.block.field_mode.describe() for entry in entries})
        if len(modes) == 1:
            return modes[0]
        return ", ".join(modes) if modes else default.describe()

    # ------------------------------------------------------------------ コマンド

    def invariants(
        self,
        paths: Sequence[Path],
        *,
        field_flag: Optional[str] = None,
        order_flag: Optional[str] = None,
        bound: Optional[int] = None,
        output: Optional[Path] = None,
    ) -> int:
        """加群ごとに不変量のまとめ、不足加群の概要、コーパスの指定値との対応を出力する。"""
        _, entries = self._load(paths, field_flag, order_flag)
        calculator = self._calculator
        lines: List[str] = []
        for entry in entries:
            profile = module_profile(entry.module, calculator, bound, entry.equidimensional)
            family = calculator.deficiency_family(entry.module)
            flags = profile.flags
            lines.append(f"== {entry.key} over {entry.ring.describe()}")
            lines.append(profile.summary())
            lines.append(
                f"CM={flags.is_cohen_macaulay} GCM={flags.is_generalized_cm} CCM={flags.is_canonically_cm} "
                f"equidimensional={flags.equidimensional} serre={flags.serre_level} "
                f"pd={_fmt(flags.pd.value) if flags.pd.finite and flags.pd.value is not None else 'inf'} "
                f"id={_fmt(flags.id.value) if flags.id.finite and flags.id.value is not None else 'inf'}"
            )
            for j in family.indices():
                deficiency = family.modules[j]
                data = calculator.hilbert(deficiency)
                lines.append(
                    f"  K^{j}: generators={calculator.presentation(deficiency).num_generators} "
                    f"dim={_fmt(data.dimension)} length={_fmt(data.length)}"
                )
            computed = computed_expectations(profile)
            for key, expected in entry.expectations.items():
                actual = computed.get(key)
                mark = "" if actual is None or actual == expected.lower() else "  (不一致)"
                if mark:
                    self._logger.warning("%s: expect_%s=%s ですが計算値は %s です。", entry.key, key, expected, actual)
                lines.append(f"  expect_{key}={expected} computed={actual if actual is not None else '?'}{mark}")
        self._write("\n".join(lines) + ("\n" if lines else ""), output)
        return EXIT_OK

    def deficiency(
        self,
        path: Path,
        module_id: str,
        *,
        field_flag: Optional[str] = None,
        order_flag: Optional[str] = None,
        output: Optional[Path] = None,
    ) -> int:
        """指定した加群の各 K^j(M) の極小表示と Hilbert データを出力する。

        Raises:
            ConfigurationError: module_id がファイルにない場合。
        """
        _, entries = self._load([path], field_flag, order_flag)
        matches = [entry for entry in entries if entry.module_id == module_id]
        if not matches:
            raise ConfigurationError(f"no such module: {module_id}")
        entry = matches[0]
        calculator = self._calculator
        family = calculator.deficiency_family(entry.module)
        lines = [
            f"== {entry.key} over {entry.ring.describe()}",
            f"depth = {_fmt(family.depth)}, dim = {_fmt(family.dimension)}",
        ]
        for j in family.indices():
            presentation = calculator.presentation(family.modules[j])
            lines.append(f"K^{j}(M): twists = {list(presentation.generator_twists)}")
            for row in presentation.matrix.rows():
                lines.append("  [" + ", ".join(format_polynomial(f) for f in row) + "]")
            lines.append("  " + _hilbert_line(calculator.hilbert(family.modules[j])))
        self._write("\n".join(lines) + "\n", output)
        return EXIT_OK

    def _report(
        self,
        outcomes: Sequence[CheckOutcome],
        entries: Sequence[CorpusEntry],
        *,
        field_flag: Optional[str],
        bound: Optional[int],
        report_format: ReportFormat,
        output: Optional[Path],
    ) -> int:
        profiles: Optional[Dict[str, ModuleProfile]] = None
        if report_format == "markdown":
            profiles = {}
            for entry in entries:
                try:
                    profiles[entry.key] = module_profile(entry.module, self._calculator, bound, entry.equidimensional)
                except HalgError as exc:
                    self._logger.warning("%s: 表を作れませんでした: %s", entry.key, exc)
        text = write_report(
            outcomes,
            report_format,
            field=self._field_label(entries, field_flag),
            bound=bound,
            profiles=profiles,
        )
        self._write(text, output)
        failed = any(outcome.is_failure for outcome in outcomes)
        return EXIT_FAILURE if failed else EXIT_OK

    def verify(
        self,
        paths: Sequence[Path],
        *,
        checks: str = "all",
        field_flag: Optional[str] = None,
        order_flag: Optional[str] = None,
        bound: Optional[int] = None,
        report_format: ReportFormat = "json",
        output: Optional[Path] = None,
        jobs: Optional[int] = None,
    ) -> int:
        """検査を実行してレポートを書き出す。"""
        files, entries = self._load(paths, field_flag, order_flag)
        override, default = self.resolve_fields(field_flag)
        outcomes = run_verify(
            files,
            checks,
            field_override=override,
            default_field=default,
            order=self.resolve_order(order_flag),
            bound=bound,
            jobs=jobs if jobs is not None else self._settings.default_jobs(),
        )
        log_run_event("verify.finish", {"files": [str(f) for f in files], "outcomes": len(outcomes)})
        return self._report(
            outcomes, entries, field_flag=field_flag, bound=bound, report_format=report_format, output=output
        )

    def explore(
        self,
        paths: Sequence[Path],
        *,
        questions: Sequence[int] = (1, 2),
        field_flag: Optional[str] = None,
        order_flag: Optional[str] = None,
        bound: Optional[int] = None,
        report_format: ReportFormat = "json",
        output: Optional[Path] = None,
        jobs: Optional[int] = None,
    ) -> int:
        """2つの問いの両辺をコーパス全体で評価する。COUNTEREXAMPLE があれば 1 を返す。"""
        files, entries = self._load(paths, field_flag, order_flag)
        override, default = self.resolve_fields(field_flag)
        outcomes = run_explore(
            files,
            questions,
            field_override=override,
            default_field=default,
            order=self.resolve_order(order_flag),
            bound=bound,
            jobs=jobs if jobs is not None else self._settings.default_jobs(),
        )
        log_run_event("explore.finish", {"files": [str(f) for f in files], "outcomes": len(outcomes)})
        return self._report(
            outcomes, entries, field_flag=field_flag, bound=bound, report_format=report_format, output=output
        )

    def oracle(
        self,
        paths: Sequence[Path],
        *,
        field_flag: Optional[str] = None,
        order_flag: Optional[str] = None,
        output: Optional[Path] = None,
    ) -> int:
        """Gröbner 基底による計算と次数ごとの線形代数による検算を突き合わせる。

        Hilbert 関数、標準単項式の個数、深さ (Koszul ホモロジー)、S 上の Betti 表を比べる。
        """
        _, entries = self._load(paths, field_flag, order_flag)
        calculator = self._calculator
        oracle = DegreewiseOracle(self._logger)
        mismatches = 0
        lines: List[str] = []

        def compare(entry: CorpusEntry, label: str, computed: object, expected: object) -> None:
            nonlocal mismatches
            ok = computed == expected
            if not ok:
                mismatches += 1
                self._logger.error("%s: %s が検算と一致しません: %s != %s", entry.key, label, computed, expected)
            lines.append(f"  {label}: {'ok' if ok else 'MISMATCH'} ({computed} vs {expected})")

        for entry in entries:
            module = entry.module
            lines.append(f"== {entry.key}")
            start = min(module.generator_degrees, default=0)
            stop = start + ORACLE_DEGREES
            data = calculator.hilbert(module)
            compare(entry, "hilbert", data.values(range(start, stop + 1)), oracle.hilbert_values(module, start, stop))
            if entry.ring.is_quotient:
                ring_data = calculator.hilbert(ring_module(entry.ring))
                standard = [oracle.standard_monomial_count(entry.ring, d) for d in range(ORACLE_DEGREES + 1)]
                compare(entry, "standard monomials", ring_data.values(range(ORACLE_DEGREES + 1)), standard)
            compare(entry, "depth", _fmt(calculator.depth(module)), _fmt(calculator.koszul_depth(module)))
            if entry.ring.num_variables <= ORACLE_MAX_VARIABLES and not calculator.is_zero(module):
                table = betti_table(calculator.s_resolution(module))
                top = max(degree for _, degree in table.entries)
                expected = oracle.koszul_betti(module.lift(), top + 1, min(d for _, d in table.entries))
                compare(entry, "betti over S", dict(sorted(table.entries.items())), dict(sorted(expected.items())))
        self._write("\n".join(lines) + ("\n" if lines else ""), output)
        return EXIT_FAILURE if mismatches else EXIT_OK
