from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from tokenize import TokenError
from typing import Dict, Iterable, List, Literal, Optional, Sequence, Tuple

from sympy import Float, Integer, Poly, Rational, Symbol
from sympy.core.sympify import SympifyError
from sympy.parsing.sympy_parser import parse_expr, standard_transformations
from sympy.polys.domains import QQ
from sympy.polys.polyerrors import BasePolynomialError

from algebra.monomials import TermOrder
from algebra.polynomials import Polynomial, is_homogeneous, poly_degree
from algebra.ring import RingDescriptor, format_polynomial
from algebra.scalars import FieldMode
from exceptions import ConfigurationError, CorpusParseError, HalgError, InvariantDomainError
from groebner.engine import GroebnerEngine, polynomial_normal_form
from groebner.quotient import build_ring
from modcat.matrix import matrix_from_rows
from modcat.module import SubquotientModule, cokernel, free_module_as_subquotient

CORPUS_SUFFIX = ".halg"

_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_MODULE_ID = re.compile(r"[A-Za-z0-9_][A-Za-z0-9_.\-]*")
_POLY_CHARS = re.compile(r"[0-9A-Za-z_+\-*^/() ]*")
_GLOBALS = {"Integer": Integer, "Rational": Rational, "Symbol": Symbol, "Float": Float}

ModuleKind = Literal["ring", "coker"]


@dataclass(frozen=True, eq=False)
class RingBlock:
    """`vars` 行で始まる環の定義。"""

    index: int
    field_mode: FieldMode
    variables: Tuple[str, ...]
    ideal: Tuple[Polynomial, ...]
    ring: RingDescriptor
    line: int


@dataclass(frozen=True, eq=False)
class CorpusEntry:
    """コーパス中の1つの加群。

    Attributes:
        key (str): レポートで使う `ファイル名:id`。
        module_id (str): ファイル内の id。
        ring_id (str): 環ブロックの識別子 `ファイル名:ring<番号>`。
        block (RingBlock): 属する環ブロック。
        kind (ModuleKind): `ring` または `coker`。
        rows (Tuple[Tuple[Polynomial, ...], ...]): 余核表示の行 (零列は除去済み)。
        module (SubquotientModule): 構成した加群。
        metadata (Dict[str, str]): `meta` 行の指定値。計算結果は上書きしない。
    """

    key: str
    module_id: str
    ring_id: str
    block: RingBlock
    kind: ModuleKind
    rows: Tuple[Tuple[Polynomial, ...], ...]
    module: SubquotientModule
    metadata: Dict[str, str] = field(default_factory=dict)
    line: int = 0

    @property
    def ring(self) -> RingDescriptor:
        return self.block.ring

    @property
    def equidimensional(self) -> Optional[bool]:
        value = self.metadata.get("equidimensional")
        if value is None:
            return None
        return value.lower() in ("true", "yes", "1")

    @property
    def serre_k(self) -> Optional[int]:
        value = self.metadata.get("serre_k")
        return int(value) if value is not None and value.lstrip("-").isdigit() else None

    @property
    def expectations(self) -> Dict[str, str]:
        """`expect_` で始まる指定値 (接頭辞を除いた名前 -> 値)。"""
        return {k[len("expect_") :]: v for k, v in sorted(self.metadata.items()) if k.startswith("expect_")}

    def signature(self) -> Tuple[object, ...]:
        """往復比較に使う構造の要約。"""
        return (
            self.module_id,
            self.kind,
            self.ring.describe(),
            tuple(tuple(format_polynomial(f) for f in row) for row in self.rows),
            tuple(sorted(self.metadata.items())),
        )


def _pieces(text: str, separator: str, column: int) -> List[Tuple[str, int]]:
    """separator で区切り、各断片と1始まりの列番号を返す。"""
    result: List[Tuple[str, int]] = []
    offset = 0
    for raw in text.split(separator):
        stripped = raw.strip()
        lead = len(raw) - len(raw.lstrip())
        result.append((stripped, column + offset + lead))
        offset += len(raw) + len(separator)
    return result


def parse_polynomial(text: str, ring: RingDescriptor, line: int = 1, column: int = 1) -> Polynomial:
    """中置記法 (`x^2 + 3*x*y`) の多項式を ring の元として読む。

    Raises:
        CorpusParseError: 使えない文字、未知の変数、多項式でない式の場合。
    """
    if not text or not _POLY_CHARS.fullmatch(text):
        raise CorpusParseError(f"多項式として読めません: {text!r}", line, column)
    symbols = {name: Symbol(name) for name in ring.variables}
    try:
        expr = parse_expr(
            text.replace("^", "**"),
            local_dict=dict(symbols),
            global_dict=dict(_GLOBALS),
            transformations=standard_transformations,
        )
        unknown = sorted(str(s) for s in expr.free_symbols if str(s) not in symbols)
        if unknown:
            raise CorpusParseError(f"未知の変数です: {', '.join(unknown)}", line, column)
        poly = Poly(expr, *symbols.values(), domain=QQ)
        terms: Dict[Tuple[int, ...], object] = {}
        for monomial, coefficient in poly.terms():
            value = ring.field.convert(coefficient)
            if value:
                terms[tuple(monomial)] = value
    except CorpusParseError:
        raise
    except InvariantDomainError as exc:
        raise CorpusParseError(str(exc), line, column) from exc
    except (SympifyError, SyntaxError, TokenError, BasePolynomialError, TypeError, ValueError) as exc:
        raise CorpusParseError(f"多項式として読めません: {text!r}", line, column) from exc
    return ring.from_terms(terms)


def _infer_degrees(
    rows: Sequence[Sequence[Polynomial]], columns: Sequence[Sequence[int]], line: int
) -> Tuple[List[int], List[Optional[int]]]:
    """斉次性から行と列の次数を伝播で決める。各連結成分の最初の行を次数0とする。"""
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    degree = [[poly_degree(rows[r][c]) for c in range(ncols)] for r in range(nrows)]
    row_deg: List[Optional[int]] = [None] * nrows
    col_deg: List[Optional[int]] = [None] * ncols

    def conflict(r: int, c: int) -> CorpusParseError:
        return CorpusParseError("行列の成分の次数が整合しません (斉次でない表示)。", line, columns[r][c])

    for start in range(nrows):
        if row_deg[start] is not None:
            continue
        row_deg[start] = 0
        stack: List[Tuple[str, int]] = [("row", start)]
        while stack:
            kind, index = stack.pop()
            if kind == "row":
                base = row_deg[index]
                assert base is not None
                for c in range(ncols):
                    entry = degree[index][c]
                    if entry is None:
                        continue
                    want = base + entry
                    if col_deg[c] is None:
                        col_deg[c] = want
                        stack.append(("col", c))
                    elif col_deg[c] != want:
                        raise conflict(index, c)
            else:
                base = col_deg[index]
                assert base is not None
                for r in range(nrows):
                    entry = degree[r][index]
                    if entry is None:
                        continue
                    want = base - entry
                    if row_deg[r] is None:
                        row_deg[r] = want
                        stack.append(("row", r))
                    elif row_deg[r] != want:
                        raise conflict(r, index)
    return [d if d is not None else 0 for d in row_deg], col_deg


class _CorpusReader:
    """1ファイル分の行指向の読み取り状態。"""

    def __init__(
        self,
        stem: str,
        field_override: Optional[FieldMode],
        default_field: Optional[FieldMode],
        order: TermOrder,
        engine: Optional[GroebnerEngine],
        logger: logging.Logger,
    ) -> None:
        self._stem = stem
        self._field_override = field_override
        self._file_field: Optional[FieldMode] = None
        self._default_field = default_field or FieldMode()
        self._order = order
        self._engine = engine
        self._logger = logger
        self._blocks: List[RingBlock] = []
        self._pending: Optional[Tuple[Tuple[str, ...], int]] = None
        self._pending_ideal: List[Polynomial] = []
        self._ideal_line = 0
        self._entries: List[CorpusEntry] = []
        self._metadata: Dict[str, Tuple[Dict[str, str], int]] = {}

    # ------------------------------------------------------------------ 環ブロック

    @property
    def _field(self) -> FieldMode:
        return self._field_override or self._file_field or self._default_field

    def _ambient(self, variables: Tuple[str, ...]) -> RingDescriptor:
        return RingDescriptor(variables, self._field, self._order)

    def _current_block(self, line: int) -> RingBlock:
        if self._pending is not None:
            variables, start = self._pending
            try:
                ring = build_ring(variables, self._field, self._order, self._pending_ideal, self._engine, self._logger)
            except HalgError as exc:
                raise CorpusParseError(f"環を構成できません: {exc}", self._ideal_line or start) from exc
            block = RingBlock(len(self._blocks), self._field, variables, tuple(self._pending_ideal), ring, start)
            self._blocks.append(block)
            self._pending = None
            self._pending_ideal = []
        if not self._blocks:
            raise CorpusParseError("module の前に vars 行が必要です。", line)
        return self._blocks[-1]

    def _on_field(self, rest: str, line: int, column: int) -> None:
        try:
            mode = FieldMode.parse(rest)
        except ConfigurationError as exc:
            raise CorpusParseError(f"体の指定が不正です: {exc}", line, column) from exc
        if self._field_override is not None and self._field_override != mode:
            self._logger.info("コマンドラインの体指定をファイルの指定 %s より優先します。", mode.describe())
        self._file_field = mode

    def _on_vars(self, rest: str, line: int, column: int) -> None:
        if self._pending is not None:
            self._current_block(line)
        names: List[str] = []
        for name, col in _pieces(rest, " ", column):
            if not name:
                continue
            if not _NAME.fullmatch(name):
                raise CorpusParseError(f"変数名が不正です: {name!r}", line, col)
            if name in names:
                raise CorpusParseError(f"変数名が重複しています: {name}", line, col)
            names.append(name)
        if not names:
            raise CorpusParseError("変数が1つもありません。", line, column)
        self._pending = (tuple(names), line)
        self._pending_ideal = []

    def _on_ideal(self, rest: str, line: int, column: int) -> None:
        if self._pending is None:
            raise CorpusParseError("ideal は vars の直後 (module より前) に書いてください。", line)
        ambient = self._ambient(self._pending[0])
        for text, col in _pieces(rest, ",", column):
            f = parse_polynomial(text, ambient, line, col)
            if not f:
                continue
            if not is_homogeneous(f):
                raise CorpusParseError("斉次でない生成元です。", line, col)
            degree = poly_degree(f)
            if degree is not None and degree < 2:
                raise CorpusParseError("イデアルの生成元は次数2以上でなければなりません。", line, col)
            self._pending_ideal.append(f)
        self._ideal_line = line

    # ------------------------------------------------------------------ 加群

    def _on_module(self, rest: str, line: int, column: int) -> None:
        parts = rest.split(None, 2)
        if len(parts) < 2:
            raise CorpusParseError("module <id> ring または module <id> coker [...] の形式で書いてください。", line, column)
        module_id, kind = parts[0], parts[1]
        if not _MODULE_ID.fullmatch(module_id):
            raise CorpusParseError(f"加群の id が不正です: {module_id!r}", line, column)
        if any(e.module_id == module_id for e in self._entries):
            raise CorpusParseError(f"加群の id が重複しています: {module_id}", line, column)
        block = self._current_block(line)
        ring = block.ring
        if kind == "ring":
            if len(parts) > 2:
                raise CorpusParseError("module <id> ring の後ろに余分な記述があります。", line, column)
            module = free_module_as_subquotient(ring, (0,))
            self._add(module_id, block, "ring", (), module, line)
            return
        if kind != "coker":
            raise CorpusParseError(f"未知の加群の種類です: {kind}", line, column)
        body = parts[2].strip() if len(parts) > 2 else ""
        body_column = column + rest.find(body) if body else column + len(rest)
        if not (body.startswith("[") and body.endswith("]")):
            raise CorpusParseError("行列は [ ... ] で囲んでください。", line, body_column)
        rows, module = self._read_matrix(body[1:-1], ring, line, body_column + 1)
        self._add(module_id, block, "coker", rows, module, line)

    def _read_matrix(
        self, inner: str, ring: RingDescriptor, line: int, column: int
    ) -> Tuple[Tuple[Tuple[Polynomial, ...], ...], SubquotientModule]:
        raw_rows: List[List[Polynomial]] = []
        positions: List[List[int]] = []
        for row_text, row_col in _pieces(inner, ";", column):
            if not row_text:
                raise CorpusParseError("空の行があります。", line, row_col)
            row: List[Polynomial] = []
            cols: List[int] = []
            for text, col in _pieces(row_text, ",", row_col):
                f = polynomial_normal_form(parse_polynomial(text, ring.ambient, line, col), ring)
                if not is_homogeneous(f):
                    raise CorpusParseError("斉次でない成分です。", line, col)
                row.append(f)
                cols.append(col)
            if raw_rows and len(row) != len(raw_rows[0]):
                raise CorpusParseError("行の長さが揃っていません。", line, row_col)
            raw_rows.append(row)
            positions.append(cols)

        row_degrees, column_degrees = _infer_degrees(raw_rows, positions, line)
        kept = [c for c, d in enumerate(column_degrees) if d is not None]
        rows = tuple(tuple(row[c] for c in kept) for row in raw_rows)
        matrix = matrix_from_rows(ring, rows, row_degrees, [int(column_degrees[c] or 0) for c in kept])
        return rows, cokernel(matrix)

    def _add(
        self,
        module_id: str,
        block: RingBlock,
        kind: ModuleKind,
        rows: Tuple[Tuple[Polynomial, ...], ...],
        module: SubquotientModule,
        line: int,
    ) -> None:
        self._entries.append(
            CorpusEntry(
                key=f"{self._stem}:{module_id}",
                module_id=module_id,
                ring_id=f"{self._stem}:ring{block.index}",
                block=block,
                kind=kind,
                rows=rows,
                module=module,
                line=line,
            )
        )

    def _on_meta(self, rest: str, line: int, column: int) -> None:
        pieces = [p for p in _pieces(rest, " ", column) if p[0]]
        if not pieces:
            raise CorpusParseError("meta <id> key=value ... の形式で書いてください。", line, column)
        (module_id, _), assignments = pieces[0], pieces[1:]
        values, _ = self._metadata.setdefault(module_id, ({}, line))
        for text, col in assignments:
            key, sep, value = text.partition("=")
            if not sep or not key or not value:
                raise CorpusParseError(f"key=value の形式ではありません: {text!r}", line, col)
            values[key] = value

    # ------------------------------------------------------------------ 全体

    def read(self, text: str) -> List[CorpusEntry]:
        handlers = {
            "field": self._on_field,
            "vars": self._on_vars,
            "ideal": self._on_ideal,
            "module": self._on_module,
            "meta": self._on_meta,
        }
        for number, raw in enumerate(text.splitlines(), start=1):
            content = raw.split("#", 1)[0].rstrip()
            stripped = content.lstrip()
            if not stripped:
                continue
            indent = len(content) - len(stripped)
            keyword, _, rest = stripped.partition(" ")
            handler = handlers.get(keyword)
            if handler is None:
                raise CorpusParseError(f"未知のキーワードです: {keyword}", number, indent + 1)
            handler(rest, number, indent + len(keyword) + 2)

        known = {e.module_id for e in self._entries}
        for module_id, (_, line) in self._metadata.items():
            if module_id not in known:
                raise CorpusParseError(f"meta が未定義の加群を参照しています: {module_id}", line)
        return [
            CorpusEntry(
                key=e.key,
                module_id=e.module_id,
                ring_id=e.ring_id,
                block=e.block,
                kind=e.kind,
                rows=e.rows,
                module=e.module,
                metadata=dict(self._metadata.get(e.module_id, ({}, 0))[0]),
                line=e.line,
            )
            for e in self._entries
        ]


def parse_input(
    text: str,
    source: str = "input",
    *,
    field_override: Optional[FieldMode] = None,
    default_field: Optional[FieldMode] = None,
    order: TermOrder = TermOrder.DEGREVLEX,
    engine: Optional[GroebnerEngine] = None,
    logger: Optional[logging.Logger] = None,
) -> List[CorpusEntry]:
    """コーパスのテキストを読み、加群ごとの CorpusEntry を返す。

    体は field_override、ファイル内の `field` 行、default_field、F_32003 の順に優先する。

    Args:
        text (str): コーパスのテキスト。
        source (str): id の接頭辞に使う名前 (通常はファイル名の stem)。
        field_override (Optional[FieldMode]): コマンドラインでの体指定。
        default_field (Optional[FieldMode]): 環境変数・設定ファイル由来の既定の体。
        order (TermOrder): 単項式順序。
        engine (Optional[GroebnerEngine]): 剰余環の構成に使うエンジン。
        logger (Optional[logging.Logger]): ロガー。

    Returns:
        List[CorpusEntry]: ファイル内の出現順。

    Raises:
        CorpusParseError: 文法・斉次性・体の指定の誤り。行と列を保持する。
    """
    log = logger or logging.getLogger("halg.corpus")
    reader = _CorpusReader(source, field_override, default_field, order, engine, log)
    entries = reader.read(text)
    log.debug("%s から %d 個の加群を読み込みました。", source, len(entries))
    return entries


def parse_file(
    path: Path,
    *,
    field_override: Optional[FieldMode] = None,
    default_field: Optional[FieldMode] = None,
    order: TermOrder = TermOrder.DEGREVLEX,
    engine: Optional[GroebnerEngine] = None,
    logger: Optional[logging.Logger] = None,
) -> List[CorpusEntry]:
    """ファイルを読み、stem を id の接頭辞として parse_input に渡す。

    Raises:
        FileNotFoundError: ファイルが存在しない場合。
        CorpusParseError: 文法の誤り。
    """
    text = path.read_text(encoding="utf-8")
    return parse_input(
        text,
        path.stem,
        field_override=field_override,
        default_field=default_field,
        order=order,
        engine=engine,
        logger=logger,
    )


def collect_corpus_files(paths: Iterable[Path]) -> List[Path]:
    """ファイルはそのまま、ディレクトリは直下の `.halg` を名前順に集める。

    Raises:
        FileNotFoundError: 存在しないパスを含む場合。
    """
    files: List[Path] = []
    for path in paths:
        if path.is_dir():
            files.extend(sorted(p for p in path.iterdir() if p.suffix == CORPUS_SUFFIX))
        elif path.is_file():
            files.append(path)
        else:
            raise FileNotFoundError(f"no such file: {path}")
    return files


def render_corpus(entries: Sequence[CorpusEntry]) -> str:
    """CorpusEntry の列をコーパス書式に書き戻す。読み直すと同じ構造になる。"""
    lines: List[str] = []
    current: Optional[str] = None
    for entry in entries:
        if entry.ring_id != current:
            current = entry.ring_id
            block = entry.block
            if lines:
                lines.append("")
            lines.append(f"field {block.field_mode.describe()}")
            lines.append("vars " + " ".join(block.variables))
            if block.ideal:
                lines.append("ideal " + ", ".join(format_polynomial(f) for f in block.ideal))
        if entry.kind == "ring":
            lines.append(f"module {entry.module_id} ring")
        else:
            body = "; ".join(", ".join(format_polynomial(f) for f in row) or "0" for row in entry.rows)
            lines.append(f"module {entry.module_id} coker [{body}]")
        if entry.metadata:
            pairs = " ".join(f"{k}={v}" for k, v in sorted(entry.metadata.items()))
            lines.append(f"meta {entry.module_id} {pairs}")
    return "\n".join(lines) + "\n"
