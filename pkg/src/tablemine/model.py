"""Normalized table representation shared by every pipeline stage.

A table is a rectangular grid of cells.  Spanning cells are expanded into
copies so that every (row, col) position is populated exactly once; each
copy points back at its origin coordinates.  All types are immutable after
construction and safe to share across parallel workers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, Optional, Sequence


class TableModelError(Exception):
    """Base class for table construction errors."""


class OverlappingSpans(TableModelError):
    """Two spanning origins claim the same grid position."""


class RaggedRows(TableModelError):
    """Input cells cannot be arranged into a non-empty rectangular grid."""


class CellRole(str, Enum):
    HEADER = "header"
    STUB = "stub"
    SUPER_ROW = "super_row"
    DATA = "data"
    CAPTION = "caption"
    FOOTER = "footer"
    EMPTY = "empty"


#: Emphasis flags a reader may attach to a cell.
EMPHASIS_BOLD = "bold"
EMPHASIS_ITALIC = "italic"
EMPHASIS_HEAD_BLOCK = "in_head_block"

#: Legal values for ExtractionRecord.value_component.
VALUE_COMPONENTS = frozenset(
    {"Value", "Percentage", "Mean", "Median", "SD", "Range:Min", "Range:Max", "Count", "Category"}
)

#: value_component labels whose value text must parse as a decimal number.
NUMERIC_COMPONENTS = frozenset(
    {"Value", "Percentage", "Mean", "Median", "SD", "Range:Min", "Range:Max", "Count"}
)


def normalize_whitespace(text: str) -> str:
    """Collapse whitespace runs (including non-breaking spaces) and trim."""
    return " ".join(text.split())


def normalize_numeric_text(text: str) -> str:
    """Canonicalize numeric punctuation: centered dot to '.', dash variants to '-'."""
    return (
        text.replace("·", ".")  # centered dot used as decimal separator
        .replace("–", "-")
        .replace("—", "-")
        .replace("−", "-")
    )


@dataclass(frozen=True)
class Cell:
    row: int
    col: int
    content: str
    is_spanning_origin: bool = True
    span_rows: int = 1
    span_cols: int = 1
    emphasis: frozenset[str] = field(default_factory=frozenset)
    role: Optional[CellRole] = None
    #: coordinates of the spanning origin; equals (row, col) for origin cells
    origin: tuple[int, int] = None  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.span_rows < 1 or self.span_cols < 1:
            raise RaggedRows(
                f"cell at ({self.row},{self.col}) has non-positive span "
                f"{self.span_rows}x{self.span_cols}"
            )
        if self.origin is None:
            object.__setattr__(self, "origin", (self.row, self.col))
        if not isinstance(self.emphasis, frozenset):
            object.__setattr__(self, "emphasis", frozenset(self.emphasis))

    @property
    def is_empty(self) -> bool:
        return not self.content.strip()

    def with_role(self, role: CellRole) -> "Cell":
        return replace(self, role=role)


@dataclass(frozen=True)
class TableGrid:
    table_id: str
    doc_id: str
    order_in_doc: int
    rows: int
    cols: int
    cells: tuple[tuple[Cell, ...], ...]
    caption: str = ""
    footer: str = ""
    referring_sentences: tuple[str, ...] = ()
    section_code: Optional[str] = None

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise RaggedRows(f"grid {self.table_id} must be at least 1x1")
        if len(self.cells) != self.rows or any(len(r) != self.cols for r in self.cells):
            raise RaggedRows(f"grid {self.table_id} is not {self.rows}x{self.cols}")
        for r, row in enumerate(self.cells):
            for c, cell in enumerate(row):
                if (cell.row, cell.col) != (r, c):
                    raise RaggedRows(
                        f"cell claims position ({cell.row},{cell.col}) "
                        f"but sits at ({r},{c}) in grid {self.table_id}"
                    )

    def cell(self, row: int, col: int) -> Cell:
        return self.cells[row][col]

    def iter_cells(self) -> Iterable[Cell]:
        for row in self.cells:
            yield from row

    def column(self, col: int) -> list[Cell]:
        return [row[col] for row in self.cells]

    def with_roles(self, roles: Sequence[Sequence[CellRole]]) -> "TableGrid":
        """Return a copy with the given rows x cols role matrix applied."""
        new_rows = tuple(
            tuple(cell.with_role(roles[r][c]) for c, cell in enumerate(row))
            for r, row in enumerate(self.cells)
        )
        return replace(self, cells=new_rows)

    def roles(self) -> list[list[Optional[CellRole]]]:
        return [[cell.role for cell in row] for row in self.cells]


@dataclass(frozen=True)
class NavigationalLinks:
    """Header/stub/super-row relationships owned by one data cell."""

    cell: tuple[int, int]
    headers: tuple[tuple[int, int], ...] = ()
    stub: Optional[tuple[int, int]] = None
    super_rows: tuple[tuple[int, int], ...] = ()


@dataclass(frozen=True)
class Annotation:
    """A concept span attached to cell content by a gazetteer."""

    cell: tuple[int, int]
    start: int
    end: int
    concept_id: str
    semantic_type: str
    source: str

    def __post_init__(self) -> None:
        if not (0 <= self.start < self.end):
            raise ValueError(f"annotation span [{self.start},{self.end}) is empty or negative")


@dataclass(frozen=True)
class Provenance:
    doc_id: str
    table_id: str
    #: cell coordinates; None for caption-scope records, which have no cell
    row: Optional[int]
    col: Optional[int]
    rule: str


@dataclass(frozen=True)
class ExtractionRecord:
    variable_name: str
    variable_subcategory: Optional[str]
    value_component: str
    context: str
    value: str
    unit: Optional[str]
    provenance: Provenance

    def __post_init__(self) -> None:
        if self.value_component not in VALUE_COMPONENTS:
            raise ValueError(f"unknown value component {self.value_component!r}")


@dataclass
class TableRecord:
    """A grid plus the stage outputs attached to it so far."""

    grid: TableGrid
    links: tuple[NavigationalLinks, ...] = ()
    annotations: tuple[Annotation, ...] = ()

    @property
    def table_id(self) -> str:
        return self.grid.table_id


@dataclass
class DocumentRecord:
    doc_id: str
    dialect: str
    metadata: dict[str, str]
    tables: list[TableRecord]


def empty_cell(row: int, col: int) -> Cell:
    return Cell(row=row, col=col, content="")


@dataclass(frozen=True)
class RawCell:
    """A reader-produced cell with explicit coordinates and span attributes."""

    row: int
    col: int
    content: str
    span_rows: int = 1
    span_cols: int = 1
    emphasis: frozenset[str] = field(default_factory=frozenset)


def expand_spans(
    raw_cells: Sequence[RawCell],
    *,
    table_id: str,
    doc_id: str,
    order_in_doc: int = 0,
    caption: str = "",
    footer: str = "",
    referring_sentences: Sequence[str] = (),
    section_code: Optional[str] = None,
) -> TableGrid:
    """Expand a sparse list of spanning cells into a rectangular grid.

    Every position covered by a span receives a copy of the origin cell's
    content with a back-reference to the origin coordinates.  Positions no
    cell claims are padded with empty cells; two origins claiming the same
    position raise :class:`OverlappingSpans`.
    """
    if not raw_cells:
        raise RaggedRows(f"table {table_id} contains no cells")
    n_rows = max(rc.row + rc.span_rows for rc in raw_cells)
    n_cols = max(rc.col + rc.span_cols for rc in raw_cells)
    occupancy: dict[tuple[int, int], Cell] = {}
    for rc in raw_cells:
        if rc.row < 0 or rc.col < 0:
            raise RaggedRows(f"cell at ({rc.row},{rc.col}) has negative coordinates")
        if rc.span_rows < 1 or rc.span_cols < 1:
            raise RaggedRows(f"cell at ({rc.row},{rc.col}) has non-positive span")
        content = normalize_whitespace(rc.content)
        for r in range(rc.row, rc.row + rc.span_rows):
            for c in range(rc.col, rc.col + rc.span_cols):
                if (r, c) in occupancy:
                    other = occupancy[(r, c)].origin
                    raise OverlappingSpans(
                        f"cells at {other} and ({rc.row},{rc.col}) both claim ({r},{c})"
                    )
                occupancy[(r, c)] = Cell(
                    row=r,
                    col=c,
                    content=content,
                    is_spanning_origin=(r == rc.row and c == rc.col),
                    span_rows=rc.span_rows,
                    span_cols=rc.span_cols,
                    emphasis=rc.emphasis,
                    origin=(rc.row, rc.col),
                )
    rows = tuple(
        tuple(occupancy.get((r, c), empty_cell(r, c)) for c in range(n_cols))
        for r in range(n_rows)
    )
    return TableGrid(
        table_id=table_id,
        doc_id=doc_id,
        order_in_doc=order_in_doc,
        rows=n_rows,
        cols=n_cols,
        cells=rows,
        caption=normalize_whitespace(caption),
        footer=normalize_whitespace(footer),
        referring_sentences=tuple(referring_sentences),
        section_code=section_code,
    )


# ---------------------------------------------------------------------------
# Canonical persistence format (JSON, UTF-8, sorted keys)
# ---------------------------------------------------------------------------


def _cell_to_json(cell: Cell) -> dict:
    return {
        "row": cell.row,
        "col": cell.col,
        "content": cell.content,
        "is_spanning_origin": cell.is_spanning_origin,
        "span_rows": cell.span_rows,
        "span_cols": cell.span_cols,
        "emphasis": sorted(cell.emphasis),
        "role": cell.role.value if cell.role is not None else None,
        "origin": list(cell.origin),
    }


def _cell_from_json(obj: dict) -> Cell:
    return Cell(
        row=obj["row"],
        col=obj["col"],
        content=obj["content"],
        is_spanning_origin=obj["is_spanning_origin"],
        span_rows=obj["span_rows"],
        span_cols=obj["span_cols"],
        emphasis=frozenset(obj["emphasis"]),
        role=CellRole(obj["role"]) if obj.get("role") else None,
        origin=tuple(obj["origin"]),
    )


def _links_to_json(link: NavigationalLinks) -> dict:
    return {
        "cell": list(link.cell),
        "headers": [list(h) for h in link.headers],
        "stub": list(link.stub) if link.stub is not None else None,
        "super_rows": [list(s) for s in link.super_rows],
    }


def _links_from_json(obj: dict) -> NavigationalLinks:
    return NavigationalLinks(
        cell=tuple(obj["cell"]),
        headers=tuple(tuple(h) for h in obj["headers"]),
        stub=tuple(obj["stub"]) if obj.get("stub") is not None else None,
        super_rows=tuple(tuple(s) for s in obj["super_rows"]),
    )


def _annotation_to_json(ann: Annotation) -> dict:
    return {
        "cell": list(ann.cell),
        "start": ann.start,
        "end": ann.end,
        "concept_id": ann.concept_id,
        "semantic_type": ann.semantic_type,
        "source": ann.source,
    }


def _annotation_from_json(obj: dict) -> Annotation:
    return Annotation(
        cell=tuple(obj["cell"]),
        start=obj["start"],
        end=obj["end"],
        concept_id=obj["concept_id"],
        semantic_type=obj["semantic_type"],
        source=obj["source"],
    )


def table_to_json(record: TableRecord) -> dict:
    grid = record.grid
    return {
        "table_id": grid.table_id,
        "doc_id": grid.doc_id,
        "order_in_doc": grid.order_in_doc,
        "caption": grid.caption,
        "footer": grid.footer,
        "referring_sentences": list(grid.referring_sentences),
        "section_code": grid.section_code,
        "rows": grid.rows,
        "cols": grid.cols,
        "cells": [_cell_to_json(cell) for cell in grid.iter_cells()],
        "links": [_links_to_json(link) for link in record.links],
        "annotations": [_annotation_to_json(ann) for ann in record.annotations],
    }


def table_from_json(obj: dict) -> TableRecord:
    n_rows, n_cols = obj["rows"], obj["cols"]
    by_pos = {(c["row"], c["col"]): _cell_from_json(c) for c in obj["cells"]}
    rows = tuple(tuple(by_pos[(r, c)] for c in range(n_cols)) for r in range(n_rows))
    grid = TableGrid(
        table_id=obj["table_id"],
        doc_id=obj["doc_id"],
        order_in_doc=obj["order_in_doc"],
        rows=n_rows,
        cols=n_cols,
        cells=rows,
        caption=obj["caption"],
        footer=obj["footer"],
        referring_sentences=tuple(obj["referring_sentences"]),
        section_code=obj.get("section_code"),
    )
    return TableRecord(
        grid=grid,
        links=tuple(_links_from_json(l) for l in obj.get("links", [])),
        annotations=tuple(_annotation_from_json(a) for a in obj.get("annotations", [])),
    )


def document_to_json(doc: DocumentRecord) -> dict:
    return {
        "doc_id": doc.doc_id,
        "dialect": doc.dialect,
        "metadata": dict(sorted(doc.metadata.items())),
        "tables": [table_to_json(t) for t in doc.tables],
    }


def document_from_json(obj: dict) -> DocumentRecord:
    return DocumentRecord(
        doc_id=obj["doc_id"],
        dialect=obj["dialect"],
        metadata=dict(obj["metadata"]),
        tables=[table_from_json(t) for t in obj["tables"]],
    )


def dumps(obj: dict) -> str:
    """Canonical byte-stable JSON text for any persistence object."""
    return json.dumps(obj, ensure_ascii=False, sort_keys=True, indent=1) + "\n"


def serialize_grid(record: TableRecord) -> str:
    return dumps(table_to_json(record))


def deserialize_grid(text: str) -> TableRecord:
    return table_from_json(json.loads(text))


def serialize_document(doc: DocumentRecord) -> str:
    return dumps(document_to_json(doc))


def deserialize_document(text: str) -> DocumentRecord:
    return document_from_json(json.loads(text))
