"""XML document readers that turn source tables into TableGrid objects.

Two dialects are supported: article XML in the PubMed Central style
(table-wrap elements with label/caption/footer wrappers) and drug-label
XML in the HL7 structured-product-label style (namespaced sections with
LOINC codes). Both share the row/cell markup conventions of HTML tables,
so grid construction is common; the dialects differ in how captions,
footers, emphasis, and section context are found.
"""

from __future__ import annotations

import logging
import re
import xml.etree.ElementTree as ET
from copy import deepcopy
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional

from .model import (
    EMPHASIS_BOLD,
    EMPHASIS_HEAD_BLOCK,
    EMPHASIS_ITALIC,
    DocumentRecord,
    RawCell,
    TableGrid,
    TableRecord,
    expand_spans,
    normalize_whitespace,
)

log = logging.getLogger(__name__)

SPL_NS = "urn:hl7-org:v3"

DIALECT_PMC = "pmc"
DIALECT_SPL = "spl"


class IngestError(ValueError):
    """Base class for document reading failures."""


class MalformedXml(IngestError):
    """The input is not well-formed XML."""


@dataclass(frozen=True)
class SourceDocument:
    """A raw input document plus the dialect used to read it."""

    doc_id: str
    dialect: str
    raw: str
    metadata: dict[str, str] = field(default_factory=dict)


@dataclass
class TableRegion:
    """One table element with its adjacent caption/label/footer context."""

    order: int
    table: ET.Element
    label: str = ""
    caption: str = ""
    footer: str = ""
    section_code: Optional[str] = None


def _local(tag: object) -> str:
    """Tag name without namespace."""
    if not isinstance(tag, str):
        return ""
    return tag.rsplit("}", 1)[-1]


def _text(elem: Optional[ET.Element]) -> str:
    if elem is None:
        return ""
    return normalize_whitespace("".join(elem.itertext()))


def _parse_xml(raw: str) -> ET.Element:
    try:
        return ET.fromstring(raw)
    except ET.ParseError as exc:
        raise MalformedXml(f"not well-formed XML: {exc}") from exc


def detect_dialect(raw: str) -> str:
    """Pick a reader from the root element: HL7 v3 documents are SPL."""
    root = _parse_xml(raw)
    if _local(root.tag) == "document" and root.tag.startswith(f"{{{SPL_NS}}}"):
        return DIALECT_SPL
    return DIALECT_PMC


def load_document(path: str | Path, dialect: Optional[str] = None) -> SourceDocument:
    path = Path(path)
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise IngestError(f"cannot read {path}: {exc}") from exc
    if dialect is None:
        dialect = detect_dialect(raw)
    if dialect not in (DIALECT_PMC, DIALECT_SPL):
        raise IngestError(f"unknown dialect {dialect!r}")
    doc = SourceDocument(doc_id=path.stem, dialect=dialect, raw=raw)
    return _with_metadata(doc)


def document_from_text(raw: str, doc_id: str, dialect: Optional[str] = None) -> SourceDocument:
    if dialect is None:
        dialect = detect_dialect(raw)
    return _with_metadata(SourceDocument(doc_id=doc_id, dialect=dialect, raw=raw))


def _with_metadata(doc: SourceDocument) -> SourceDocument:
    root = _parse_xml(doc.raw)
    metadata = dict(doc.metadata)
    if doc.dialect == DIALECT_SPL:
        name = _spl_drug_name(root)
        if name:
            metadata["drug_name"] = name
    else:
        title = root.find(".//article-title")
        if title is not None:
            metadata["title"] = _text(title)
    return SourceDocument(doc.doc_id, doc.dialect, doc.raw, metadata)


def _spl_drug_name(root: ET.Element) -> str:
    """The label's primary drug name from the document-level product element."""
    for elem in root.iter():
        if _local(elem.tag) != "manufacturedProduct":
            continue
        for child in elem.iter():
            if _local(child.tag) == "name":
                return _text(child)
    for child in root:
        if _local(child.tag) == "title":
            return _text(child)
    return ""


# ---------------------------------------------------------------------------
# table region detection


def detect_tables(doc: SourceDocument) -> list[TableRegion]:
    """All non-nested table elements in document order, with context."""
    root = _parse_xml(doc.raw)
    if doc.dialect == DIALECT_SPL:
        return _detect_spl(root)
    return _detect_pmc(root)


def _detect_pmc(root: ET.Element) -> list[TableRegion]:
    regions: list[TableRegion] = []
    parent_of = {child: parent for parent in root.iter() for child in parent}

    def enclosing_wrap(elem: ET.Element) -> Optional[ET.Element]:
        node = parent_of.get(elem)
        while node is not None:
            if _local(node.tag) == "table-wrap":
                return node
            node = parent_of.get(node)
        return node

    for table in _top_level_tables(root):
        region = TableRegion(order=len(regions), table=table)
        wrap = enclosing_wrap(table)
        if wrap is not None:
            region.label = _text(wrap.find("label"))
            region.caption = _text(wrap.find("caption"))
            region.footer = _text(wrap.find("table-wrap-foot"))
        regions.append(region)
    return regions


def _detect_spl(root: ET.Element) -> list[TableRegion]:
    regions: list[TableRegion] = []

    def walk(elem: ET.Element, code: Optional[str]) -> None:
        tag = _local(elem.tag)
        if tag == "section":
            code_elem = next(
                (c for c in elem if _local(c.tag) == "code" and c.get("code")), None
            )
            if code_elem is not None:
                code = code_elem.get("code")
        if tag == "table":
            caption = next((c for c in elem if _local(c.tag) == "caption"), None)
            regions.append(
                TableRegion(
                    order=len(regions),
                    table=elem,
                    caption=_text(caption),
                    section_code=code,
                )
            )
            return  # nested tables are flattened into cell text
        for child in elem:
            walk(child, code)

    walk(root, None)
    return regions


def _top_level_tables(root: ET.Element) -> list[ET.Element]:
    tables: list[ET.Element] = []

    def walk(elem: ET.Element) -> None:
        if _local(elem.tag) == "table":
            tables.append(elem)
            return
        for child in elem:
            walk(child)

    walk(root)
    return tables


# ---------------------------------------------------------------------------
# grid construction


def _cell_emphasis(cell: ET.Element, in_head: bool, table_id: str) -> frozenset[str]:
    flags = set()
    if in_head:
        flags.add(EMPHASIS_HEAD_BLOCK)
    for elem in cell.iter():
        tag = _local(elem.tag)
        style = (elem.get("styleCode") or "").lower()
        if tag == "bold" or "bold" in style:
            flags.add(EMPHASIS_BOLD)
        if tag == "italic" or "italic" in style:
            flags.add(EMPHASIS_ITALIC)
        if tag == "table" and elem is not cell:
            log.warning("table %s: nested table flattened into cell text", table_id)
    return frozenset(flags)


def _int_attr(elem: ET.Element, name: str) -> int:
    value = elem.get(name)
    if value is None:
        return 1
    try:
        parsed = int(value.strip())
    except ValueError:
        return 1
    return parsed if parsed >= 1 else 1


def _table_rows(table: ET.Element) -> tuple[list[tuple[ET.Element, bool]], str]:
    """Rows in source order, flagged head-block; plus tfoot text as footer."""
    rows: list[tuple[ET.Element, bool]] = []
    footer_parts: list[str] = []

    def collect(elem: ET.Element, in_head: bool) -> None:
        for child in elem:
            tag = _local(child.tag)
            if tag == "thead":
                collect(child, True)
            elif tag == "tbody":
                collect(child, in_head)
            elif tag == "tfoot":
                text = _text(child)
                if text:
                    footer_parts.append(text)
            elif tag == "tr":
                rows.append((child, in_head))

    collect(table, False)
    return rows, " ".join(footer_parts)


def build_grid(region: TableRegion, *, doc_id: str, table_id: str,
               referring_sentences: tuple[str, ...] = ()) -> Optional[TableGrid]:
    """Expand one region's row markup into a rectangular grid."""
    rows, tfoot_text = _table_rows(region.table)
    occupied: set[tuple[int, int]] = set()
    raw_cells: list[RawCell] = []
    for r, (tr, in_head) in enumerate(rows):
        c = 0
        for cell in tr:
            if _local(cell.tag) not in ("td", "th"):
                continue
            while (r, c) in occupied:
                c += 1
            span_rows = _int_attr(cell, "rowspan")
            span_cols = _int_attr(cell, "colspan")
            for rr in range(r, r + span_rows):
                for cc in range(c, c + span_cols):
                    occupied.add((rr, cc))
            raw_cells.append(
                RawCell(
                    row=r,
                    col=c,
                    content=_text(cell),
                    span_rows=span_rows,
                    span_cols=span_cols,
                    emphasis=_cell_emphasis(cell, in_head, table_id),
                )
            )
            c += span_cols
    if not raw_cells:
        return None
    footer = " ".join(part for part in (region.footer, tfoot_text) if part)
    return expand_spans(
        raw_cells,
        table_id=table_id,
        doc_id=doc_id,
        order_in_doc=region.order,
        caption=region.caption,
        footer=footer,
        referring_sentences=referring_sentences,
        section_code=region.section_code,
    )


# ---------------------------------------------------------------------------
# referring sentences

_ABBREVIATIONS = (
    "e.g", "i.e", "vs", "etc", "et al", "fig", "figs", "dr", "no",
    "approx", "ca", "cf", "resp",
)

_SENTENCE_END = re.compile(r"[.;!?]+\s+")


def split_sentences(text: str) -> list[str]:
    """Simple period/semicolon splitter with an abbreviation guard list."""
    text = normalize_whitespace(text)
    if not text:
        return []
    sentences: list[str] = []
    start = 0
    for match in _SENTENCE_END.finditer(text):
        before = text[start : match.start()]
        # the matched punctuation is not part of `before`, so compare the
        # last one and two words against the guard list directly
        tail = before.rsplit(" ", 1)[-1].lower()
        tail2 = " ".join(before.lower().rsplit(" ", 2)[-2:])
        if tail in _ABBREVIATIONS or tail2 in _ABBREVIATIONS:
            continue
        sentences.append(text[start : match.end()].strip())
        start = match.end()
    rest = text[start:].strip()
    if rest:
        sentences.append(rest)
    return sentences


def _pmc_body_sentences(root: ET.Element) -> list[str]:
    body = root.find("body")
    if body is None:
        return []
    body = deepcopy(body)
    parent_of = {child: parent for parent in body.iter() for child in parent}
    for wrap in [e for e in body.iter() if _local(e.tag) in ("table-wrap", "table")]:
        parent = parent_of.get(wrap)
        if parent is not None:
            parent.remove(wrap)
    return split_sentences(" ".join(body.itertext()))


def _referring_sentences(sentences: list[str], label: str) -> tuple[str, ...]:
    label = normalize_whitespace(label)
    if not label:
        return ()
    pattern = re.compile(r"\b" + re.escape(label) + r"\b", re.IGNORECASE)
    return tuple(s for s in sentences if pattern.search(s))


# ---------------------------------------------------------------------------
# inline captions (head rows that are really captions)

_INLINE_CAPTION = re.compile(r"\bTable\s+\d+", re.IGNORECASE)


def detect_inline_caption(grid: TableGrid) -> Optional[tuple[str, int]]:
    """Caption text hiding in the top row ("Table N ..."), if any.

    Returns the concatenated top-row text and the number of rows to strip;
    None when the top row does not carry the pattern or the grid would
    become empty.
    """
    if grid.rows < 2:
        return None
    # origins only: a spanning cell must contribute its text once
    top = [cell for cell in grid.cells[0] if cell.content and cell.is_spanning_origin]
    if not top or not any(_INLINE_CAPTION.search(cell.content) for cell in top):
        return None
    caption = normalize_whitespace(" ".join(cell.content for cell in top))
    return caption, 1


def strip_inline_caption(grid: TableGrid) -> TableGrid:
    """Apply detect_inline_caption: move the top row into the caption."""
    found = detect_inline_caption(grid)
    if found is None:
        return grid
    caption, strip = found
    raw_cells = []
    for row in grid.cells[strip:]:
        for cell in row:
            if not cell.is_spanning_origin:
                continue
            origin_row = cell.row - strip
            span_rows = min(cell.span_rows, grid.rows - strip - origin_row)
            raw_cells.append(
                RawCell(
                    row=origin_row,
                    col=cell.col,
                    content=cell.content,
                    span_rows=span_rows,
                    span_cols=cell.span_cols,
                    emphasis=cell.emphasis,
                )
            )
    # origins that lived in the stripped row keep their content via the copies
    for cell in grid.cells[strip]:
        if cell.origin[0] < strip and cell.origin == (cell.origin[0], cell.col):
            source = grid.cell(*cell.origin)
            raw_cells.append(
                RawCell(
                    row=0,
                    col=cell.col,
                    content=source.content,
                    span_rows=max(1, source.span_rows - strip),
                    span_cols=source.span_cols,
                    emphasis=source.emphasis,
                )
            )
    raw_cells.sort(key=lambda c: (c.row, c.col))
    combined = " | ".join(part for part in (grid.caption, caption) if part)
    return expand_spans(
        raw_cells,
        table_id=grid.table_id,
        doc_id=grid.doc_id,
        order_in_doc=grid.order_in_doc,
        caption=combined,
        footer=grid.footer,
        referring_sentences=grid.referring_sentences,
        section_code=grid.section_code,
    )


# ---------------------------------------------------------------------------
# dialect entry points


def _table_id(doc_id: str, order: int) -> str:
    return f"{doc_id}_t{order}"


def read_pmc(doc: SourceDocument) -> list[TableGrid]:
    if doc.dialect != DIALECT_PMC:
        raise IngestError(f"read_pmc called on {doc.dialect!r} document")
    root = _parse_xml(doc.raw)
    sentences = _pmc_body_sentences(root)
    grids: list[TableGrid] = []
    for region in detect_tables(doc):
        grid = build_grid(
            region,
            doc_id=doc.doc_id,
            table_id=_table_id(doc.doc_id, region.order),
            referring_sentences=_referring_sentences(sentences, region.label),
        )
        if grid is not None:
            grids.append(grid)
    return grids


def read_spl(doc: SourceDocument) -> list[TableGrid]:
    if doc.dialect != DIALECT_SPL:
        raise IngestError(f"read_spl called on {doc.dialect!r} document")
    grids: list[TableGrid] = []
    for region in detect_tables(doc):
        grid = build_grid(
            region,
            doc_id=doc.doc_id,
            table_id=_table_id(doc.doc_id, region.order),
        )
        if grid is None:
            continue
        if not grid.caption:
            grid = strip_inline_caption(grid)
        grids.append(grid)
    return grids


def read_document(doc: SourceDocument) -> DocumentRecord:
    """Dispatch on dialect and wrap grids into a document record."""
    reader = read_spl if doc.dialect == DIALECT_SPL else read_pmc
    tables = [TableRecord(grid=grid) for grid in reader(doc)]
    return DocumentRecord(
        doc_id=doc.doc_id, dialect=doc.dialect, metadata=dict(doc.metadata), tables=tables
    )


def read_paths(paths: Iterable[str | Path], dialect: Optional[str] = None) -> list[DocumentRecord]:
    """Read files or directories; per-document failures are logged, not fatal."""
    files: list[Path] = []
    for path in paths:
        path = Path(path)
        if path.is_dir():
            files.extend(sorted(p for p in path.rglob("*.xml") if p.is_file()))
        else:
            files.append(path)
    documents: list[DocumentRecord] = []
    for file in files:
        try:
            documents.append(read_document(load_document(file, dialect)))
        except IngestError as exc:
            log.error("skipping %s: %s", file, exc)
    return documents
