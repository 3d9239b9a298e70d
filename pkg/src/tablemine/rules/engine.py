"""Candidate selection, context/unit resolution, and record assembly.

Three selection strategies populate extraction records:

- `cells`: a data cell is a candidate when a whitelist cue matches in
  its declared functional area and no blacklist cue matches; syntactic
  rules then decompose the cell content. Whitelist regular-expression
  cues with a capture group aimed at the caption or at headers run as
  direct routes instead: the captured number becomes the record value
  (counts quoted in captions or in `n = 120` style headers).
- `column-majority`: columns where most non-header cells carry a given
  semantic annotation are harvested whole (category values).
- `interaction-column` (extract_ddi): the column whose header passes the
  white/blacklist yields one record per cell, valued with the raw cell
  text and contextualized by the document's label drug.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from ..model import (
    Annotation,
    CellRole,
    ExtractionRecord,
    Provenance,
    TableGrid,
    normalize_whitespace,
)
from ..structural import cell_links, links_by_cell
from .cues import (
    AREA_CAPTION,
    AREA_HEADER,
    AREA_STUB,
    AREA_SUPER_ROW,
    AREA_TARGET_CELL,
    Cue,
    KIND_ANN_ID,
    KIND_ANN_TYPE,
    KIND_PATTERN,
    KIND_WORD,
    compiled_pattern,
    pattern_groups,
    word_in,
)
from .syntactic import (
    NoPatternMatch,
    SyntacticRule,
    apply_syntactic_rules,
    normalize_content,
)
from .varspec import (
    SELECTION_CELLS,
    SELECTION_COLUMN_MAJORITY,
    SELECTION_INTERACTION_COLUMN,
    VariableSpec,
)

LABEL_COMPONENTS = {
    "value": "Value",
    "count": "Count",
    "percentage": "Percentage",
    "pct": "Percentage",
    "mean": "Mean",
    "median": "Median",
    "sd": "SD",
    "range_min": "Range:Min",
    "min": "Range:Min",
    "range_max": "Range:Max",
    "max": "Range:Max",
    "category": "Category",
}

RULE_CAPTION_PATTERN = "caption-pattern"
RULE_HEADER_PATTERN = "header-pattern"
RULE_COLUMN_MAJORITY = "column-majority"
RULE_INTERACTION_COLUMN = "interaction-column"

ATC_SINGLE_DRUG_LENGTH = 7


class NoInteractionColumn(Exception):
    """No column header passed the interaction white/blacklist."""


@dataclass(frozen=True)
class Diagnostic:
    table_id: str
    cell: Optional[tuple[int, int]]
    kind: str
    message: str


@dataclass(frozen=True)
class CellSelection:
    cell: tuple[int, int]
    matched: tuple[str, ...]
    blocked: tuple[str, ...]
    selected: bool


@dataclass
class ExtractionResult:
    records: list[ExtractionRecord] = field(default_factory=list)
    diagnostics: list[Diagnostic] = field(default_factory=list)


AnnotationIndex = dict[tuple[int, int], list[Annotation]]


def annotation_index(annotations: Iterable[Annotation]) -> AnnotationIndex:
    index: AnnotationIndex = {}
    for annotation in annotations:
        index.setdefault(annotation.cell, []).append(annotation)
    return index


# ---------------------------------------------------------------------------
# cue matching over functional areas

# (coords or None for the caption, text) per area
AreaCells = dict[str, list[tuple[Optional[tuple[int, int]], str]]]


def _areas_for_cell(grid: TableGrid, link) -> AreaCells:
    areas: AreaCells = {area: [] for area in (
        AREA_CAPTION, AREA_HEADER, AREA_STUB, AREA_SUPER_ROW, AREA_TARGET_CELL
    )}
    if grid.caption:
        areas[AREA_CAPTION].append((None, grid.caption))
    for coords in link.headers:
        areas[AREA_HEADER].append((coords, grid.cell(*coords).content))
    if link.stub is not None:
        areas[AREA_STUB].append((link.stub, grid.cell(*link.stub).content))
    for coords in link.super_rows:
        areas[AREA_SUPER_ROW].append((coords, grid.cell(*coords).content))
    areas[AREA_TARGET_CELL].append((link.cell, grid.cell(*link.cell).content))
    return areas


def _cue_matches_text(cue: Cue, text: str) -> bool:
    if cue.kind == KIND_WORD:
        return word_in(cue.value, text)
    if cue.kind == KIND_PATTERN:
        return compiled_pattern(cue.value).search(normalize_content(text)) is not None
    return False


def _cue_matches_annotations(
    cue: Cue, coords: Optional[tuple[int, int]], index: AnnotationIndex
) -> bool:
    if coords is None:
        return False
    for annotation in index.get(coords, ()):
        if cue.kind == KIND_ANN_ID and annotation.concept_id == cue.value:
            return True
        if cue.kind == KIND_ANN_TYPE and annotation.semantic_type == cue.value:
            return True
    return False


def _cue_matches(cue: Cue, areas: AreaCells, index: AnnotationIndex) -> bool:
    for coords, text in areas.get(cue.target_area, ()):
        if cue.kind in (KIND_WORD, KIND_PATTERN):
            if _cue_matches_text(cue, text):
                return True
        elif _cue_matches_annotations(cue, coords, index):
            return True
    return False


def _cue_in_cell(
    cue: Cue, coords: Optional[tuple[int, int]], text: str, index: AnnotationIndex
) -> bool:
    """Area-agnostic test: does this cue occur in this one cell?"""
    if cue.kind in (KIND_WORD, KIND_PATTERN):
        return _cue_matches_text(cue, text)
    return _cue_matches_annotations(cue, coords, index)


def is_direct_route_cue(cue: Cue) -> bool:
    """Capturing patterns on caption/header extract values directly."""
    return (
        cue.kind == KIND_PATTERN
        and cue.target_area in (AREA_CAPTION, AREA_HEADER)
        and pattern_groups(cue.value) >= 1
    )


# ---------------------------------------------------------------------------
# selection


def select_cells_report(
    grid: TableGrid,
    links,
    annotations: Iterable[Annotation],
    spec: VariableSpec,
) -> list[CellSelection]:
    """Per data cell: which cues matched, which blocked, final verdict."""
    index = annotation_index(annotations)
    whitelist = [cue for cue in spec.whitelist if not is_direct_route_cue(cue)]
    report: list[CellSelection] = []
    for link in links:
        areas = _areas_for_cell(grid, link)
        matched = tuple(
            cue.describe() for cue in whitelist if _cue_matches(cue, areas, index)
        )
        blocked = tuple(
            cue.describe() for cue in spec.blacklist if _cue_matches(cue, areas, index)
        )
        report.append(
            CellSelection(
                cell=link.cell,
                matched=matched,
                blocked=blocked,
                selected=bool(matched) and not blocked,
            )
        )
    return report


def select_cells(
    grid: TableGrid,
    links,
    annotations: Iterable[Annotation],
    spec: VariableSpec,
) -> list[CellSelection]:
    return [s for s in select_cells_report(grid, links, annotations, spec) if s.selected]


# ---------------------------------------------------------------------------
# unit / context / subcategory resolution


def _path_cells(grid: TableGrid, link) -> list[tuple[tuple[int, int], str]]:
    """Navigational path cells, outermost first: headers, super-rows, stub."""
    out: list[tuple[tuple[int, int], str]] = []
    for coords in link.headers:
        out.append((coords, grid.cell(*coords).content))
    for coords in link.super_rows:
        out.append((coords, grid.cell(*coords).content))
    if link.stub is not None:
        out.append((link.stub, grid.cell(*link.stub).content))
    return out


def resolve_unit(grid: TableGrid, link, spec: VariableSpec) -> str:
    """First allowed unit found in cell, stub, headers, super-rows; else default."""
    scan: list[str] = [grid.cell(*link.cell).content]
    if link.stub is not None:
        scan.append(grid.cell(*link.stub).content)
    scan.extend(grid.cell(*coords).content for coords in link.headers)
    scan.extend(grid.cell(*coords).content for coords in link.super_rows)
    for text in scan:
        for unit in spec.units.allowed:
            if word_in(unit, text):
                return unit
    return spec.units.default


def resolve_context(
    grid: TableGrid,
    link,
    spec: VariableSpec,
    index: AnnotationIndex,
) -> str:
    """Path texts that carry no whitelist cue, outermost first, ' | ' joined."""
    parts: list[str] = []
    for coords, text in _path_cells(grid, link):
        if any(_cue_in_cell(cue, coords, text, index) for cue in spec.whitelist):
            continue
        parts.append(text)
    return " | ".join(parts)


def resolve_subcategory(
    grid: TableGrid,
    link,
    spec: VariableSpec,
    index: AnnotationIndex,
) -> str:
    """First declared subcategory whose cue occurs in the cell or its path."""
    cells = [(link.cell, grid.cell(*link.cell).content)] + _path_cells(grid, link)
    for label, cues in spec.subcategories:
        for cue in cues:
            if any(_cue_in_cell(cue, coords, text, index) for coords, text in cells):
                return label
    return ""


def _canonical_subcategory(label: str, spec: VariableSpec) -> str:
    for declared, _ in spec.subcategories:
        if declared.lower() == label.lower():
            return declared
    return label


def _map_label(label: str, spec: VariableSpec) -> tuple[str, Optional[str]]:
    """Rule label -> (value component, subcategory override)."""
    component = LABEL_COMPONENTS.get(label.lower())
    if component is not None:
        return component, None
    # labels outside the component vocabulary name a subcategory whose
    # captured number is a count (e.g. male/female splits)
    return "Count", _canonical_subcategory(label, spec)


def _as_float(value: str) -> Optional[float]:
    try:
        return float(value)
    except ValueError:
        return None


def _sanity_diagnostics(
    grid: TableGrid,
    cell: tuple[int, int],
    records: Sequence[ExtractionRecord],
) -> list[Diagnostic]:
    out: list[Diagnostic] = []
    bounds: dict[str, Optional[float]] = {}
    for record in records:
        if record.value_component == "Percentage":
            value = _as_float(record.value)
            if value is not None and not 0.0 <= value <= 100.0:
                out.append(
                    Diagnostic(
                        grid.table_id,
                        cell,
                        "pct_out_of_range",
                        f"percentage {record.value} outside [0, 100]",
                    )
                )
        if record.value_component in ("Range:Min", "Range:Max"):
            bounds[record.value_component] = _as_float(record.value)
    low, high = bounds.get("Range:Min"), bounds.get("Range:Max")
    if low is not None and high is not None and low > high:
        out.append(
            Diagnostic(
                grid.table_id,
                cell,
                "range_inverted",
                f"range minimum {low:g} exceeds maximum {high:g}",
            )
        )
    return out


# ---------------------------------------------------------------------------
# extraction routes


def _cells_route(
    grid: TableGrid,
    links,
    annotations: Iterable[Annotation],
    spec: VariableSpec,
    rules: Sequence[SyntacticRule],
    result: ExtractionResult,
) -> None:
    index = annotation_index(annotations)
    by_cell = links_by_cell(links)
    for selection in select_cells(grid, links, annotations, spec):
        link = by_cell[selection.cell]
        cell = grid.cell(*selection.cell)
        path_text = " | ".join(text for _, text in _path_cells(grid, link))
        try:
            rule_name, labels = apply_syntactic_rules(cell.content, path_text, rules)
        except NoPatternMatch:
            result.diagnostics.append(
                Diagnostic(
                    grid.table_id,
                    selection.cell,
                    "no_pattern_match",
                    f"no rule matches {cell.content!r}",
                )
            )
            continue
        unit = resolve_unit(grid, link, spec)
        context = resolve_context(grid, link, spec, index)
        default_subcategory = resolve_subcategory(grid, link, spec, index)
        cell_records: list[ExtractionRecord] = []
        for label, value in labels:
            component, label_subcategory = _map_label(label, spec)
            cell_records.append(
                ExtractionRecord(
                    variable_name=spec.name,
                    variable_subcategory=label_subcategory or default_subcategory,
                    value_component=component,
                    context=context,
                    value=value,
                    unit=unit,
                    provenance=Provenance(
                        doc_id=grid.doc_id,
                        table_id=grid.table_id,
                        row=selection.cell[0],
                        col=selection.cell[1],
                        rule=rule_name,
                    ),
                )
            )
        result.diagnostics.extend(_sanity_diagnostics(grid, selection.cell, cell_records))
        result.records.extend(cell_records)


def _remove_span(text: str, span: tuple[int, int]) -> str:
    remainder = text[: span[0]] + " " + text[span[1] :]
    remainder = re.sub(r"\(\s*\)|\[\s*\]", " ", remainder)
    return normalize_whitespace(remainder).strip(" ,;:-")


def _caption_route(
    grid: TableGrid, spec: VariableSpec, result: ExtractionResult
) -> None:
    cues = [
        cue
        for cue in spec.whitelist
        if is_direct_route_cue(cue) and cue.target_area == AREA_CAPTION
    ]
    if not cues or not grid.caption:
        return
    caption = normalize_content(grid.caption)
    if any(
        cue.target_area == AREA_CAPTION and _cue_matches_text(cue, caption)
        for cue in spec.blacklist
        if cue.kind in (KIND_WORD, KIND_PATTERN)
    ):
        return
    seen: set[str] = set()
    for cue in cues:
        for match in compiled_pattern(cue.value).finditer(caption):
            value = match.group(1)
            if value is None or value in seen:
                continue
            seen.add(value)
            result.records.append(
                ExtractionRecord(
                    variable_name=spec.name,
                    variable_subcategory="",
                    value_component="Value",
                    context="caption",
                    value=value,
                    unit=spec.units.default,
                    provenance=Provenance(
                        doc_id=grid.doc_id,
                        table_id=grid.table_id,
                        row=None,
                        col=None,
                        rule=RULE_CAPTION_PATTERN,
                    ),
                )
            )


def _header_route(
    grid: TableGrid,
    annotations: Iterable[Annotation],
    spec: VariableSpec,
    result: ExtractionResult,
) -> None:
    cues = [
        cue
        for cue in spec.whitelist
        if is_direct_route_cue(cue) and cue.target_area == AREA_HEADER
    ]
    if not cues:
        return
    index = annotation_index(annotations)
    header_blacklist = [c for c in spec.blacklist if c.target_area == AREA_HEADER]
    for cell in grid.iter_cells():
        if cell.role is not CellRole.HEADER or not cell.is_spanning_origin:
            continue
        if not cell.content:
            continue
        coords = (cell.row, cell.col)
        text = normalize_content(cell.content)
        if any(_cue_in_cell(cue, coords, text, index) for cue in header_blacklist):
            continue
        for cue in cues:
            match = compiled_pattern(cue.value).search(text)
            if match is None or match.group(1) is None:
                continue
            result.records.append(
                ExtractionRecord(
                    variable_name=spec.name,
                    variable_subcategory="",
                    value_component="Value",
                    context=_remove_span(text, match.span()),
                    value=match.group(1),
                    unit=spec.units.default,
                    provenance=Provenance(
                        doc_id=grid.doc_id,
                        table_id=grid.table_id,
                        row=cell.row,
                        col=cell.col,
                        rule=RULE_HEADER_PATTERN,
                    ),
                )
            )
            break  # one record per header cell


def select_column_by_semantic_majority(
    grid: TableGrid,
    annotations: Iterable[Annotation],
    semantic_types: Sequence[str],
) -> list[int]:
    """Columns where most non-empty non-header cells carry a typed annotation."""
    wanted = set(semantic_types)
    index = annotation_index(annotations)
    columns: list[int] = []
    for col in range(grid.cols):
        considered = 0
        annotated = 0
        for row in range(grid.rows):
            cell = grid.cell(row, col)
            if not cell.is_spanning_origin or not cell.content:
                continue
            if cell.role is CellRole.HEADER:
                continue
            considered += 1
            if any(a.semantic_type in wanted for a in index.get((row, col), ())):
                annotated += 1
        if considered and annotated * 2 > considered:
            columns.append(col)
    return columns


def _column_majority_route(
    grid: TableGrid,
    annotations: Iterable[Annotation],
    spec: VariableSpec,
    result: ExtractionResult,
) -> None:
    index = annotation_index(annotations)
    for col in select_column_by_semantic_majority(grid, annotations, spec.majority_types):
        for row in range(grid.rows):
            cell = grid.cell(row, col)
            if not cell.is_spanning_origin or not cell.content:
                continue
            if cell.role in (CellRole.HEADER, CellRole.SUPER_ROW, CellRole.EMPTY):
                continue
            link = cell_links(grid, row, col)
            result.records.append(
                ExtractionRecord(
                    variable_name=spec.name,
                    variable_subcategory=resolve_subcategory(grid, link, spec, index),
                    value_component="Category",
                    context=resolve_context(grid, link, spec, index),
                    value=cell.content,
                    unit=spec.units.default,
                    provenance=Provenance(
                        doc_id=grid.doc_id,
                        table_id=grid.table_id,
                        row=row,
                        col=col,
                        rule=RULE_COLUMN_MAJORITY,
                    ),
                )
            )


def _record_sort_key(record: ExtractionRecord):
    prov = record.provenance
    return (
        -1 if prov.row is None else prov.row,
        -1 if prov.col is None else prov.col,
    )


def extract_variable(
    grid: TableGrid,
    links,
    annotations: Iterable[Annotation],
    spec: VariableSpec,
    rules: Mapping[str, SyntacticRule],
    pragmatic_class: Optional[str] = None,
) -> ExtractionResult:
    """Run one variable spec over one analyzed table."""
    result = ExtractionResult()
    if (
        pragmatic_class is not None
        and spec.pragmatic_types
        and pragmatic_class not in spec.pragmatic_types
    ):
        return result
    annotations = tuple(annotations)
    if spec.selection == SELECTION_COLUMN_MAJORITY:
        _column_majority_route(grid, annotations, spec, result)
    elif spec.selection == SELECTION_INTERACTION_COLUMN:
        raise ValueError("interaction-column specs run through extract_ddi")
    else:
        ordered_rules: list[SyntacticRule] = []
        for name in spec.syntactic_rules:
            rule = rules.get(name)
            if rule is None:
                result.diagnostics.append(
                    Diagnostic(grid.table_id, None, "missing_rule", f"unknown rule {name!r}")
                )
            else:
                ordered_rules.append(rule)
        _cells_route(grid, links, annotations, spec, ordered_rules, result)
        _header_route(grid, annotations, spec, result)
        _caption_route(grid, spec, result)
    result.records.sort(key=_record_sort_key)
    return result


def _interaction_column(
    grid: TableGrid, annotations: Iterable[Annotation], spec: VariableSpec
) -> int:
    index = annotation_index(annotations)
    whitelist = [c for c in spec.whitelist if c.target_area == AREA_HEADER]
    blacklist = [c for c in spec.blacklist if c.target_area == AREA_HEADER]
    for col in range(grid.cols):
        header_cells = [
            ((cell.row, cell.col), cell.content)
            for cell in (grid.cell(r, col) for r in range(grid.rows))
            if cell.role is CellRole.HEADER and cell.content
        ]
        if not header_cells:
            continue
        matched = any(
            _cue_in_cell(cue, coords, text, index)
            for cue in whitelist
            for coords, text in header_cells
        )
        vetoed = any(
            _cue_in_cell(cue, coords, text, index)
            for cue in blacklist
            for coords, text in header_cells
        )
        if matched and not vetoed:
            return col
    raise NoInteractionColumn(f"table {grid.table_id}: no interaction column")


def _drug_subcategory(
    coords: tuple[int, int], index: AnnotationIndex
) -> str:
    for annotation in sorted(index.get(coords, ()), key=lambda a: a.start):
        code = annotation.concept_id
        if not code:
            continue
        if len(code) >= ATC_SINGLE_DRUG_LENGTH:
            return "drug"
        return "drug group"
    return ""


def extract_ddi(
    grid: TableGrid,
    links,
    annotations: Iterable[Annotation],
    spec: VariableSpec,
    drug_name: str,
) -> ExtractionResult:
    """One record per cell of the interaction column, minus navigation rows."""
    annotations = tuple(annotations)
    result = ExtractionResult()
    index = annotation_index(annotations)
    col = _interaction_column(grid, annotations, spec)
    for row in range(grid.rows):
        cell = grid.cell(row, col)
        if not cell.is_spanning_origin or not cell.content:
            continue
        if cell.role in (CellRole.HEADER, CellRole.SUPER_ROW, CellRole.EMPTY):
            continue
        if cell.span_rows > 1 or cell.span_cols > 1:
            continue
        result.records.append(
            ExtractionRecord(
                variable_name=spec.name,
                variable_subcategory=_drug_subcategory((row, col), index),
                value_component="Category",
                context=drug_name,
                value=cell.content,
                unit="",
                provenance=Provenance(
                    doc_id=grid.doc_id,
                    table_id=grid.table_id,
                    row=row,
                    col=col,
                    rule=RULE_INTERACTION_COLUMN,
                ),
            )
        )
    return result
