"""Shared helpers for the fixture builder: XML writers for both source
dialects, a grid assembler, and an independent link oracle that derives
navigational-link gold from hand-annotated role matrices (it must not
reuse the library's structural code, or the gold would be circular).
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from tablemine.model import (
    EMPHASIS_HEAD_BLOCK,
    ExtractionRecord,
    Provenance,
    RawCell,
    TableGrid,
    expand_spans,
)

SPL_NS = "urn:hl7-org:v3"

ET.register_namespace("", SPL_NS)


@dataclass
class C:
    """One source cell: text plus optional spans."""

    text: str
    rs: int = 1
    cs: int = 1


Row = Sequence[C | str]


def _as_cell(spec: C | str) -> C:
    return spec if isinstance(spec, C) else C(spec)


# ---------------------------------------------------------------------------
# article-style XML


def _rows_into(parent: ET.Element, rows: Sequence[Row], tag: str) -> None:
    for row in rows:
        tr = ET.SubElement(parent, "tr")
        for spec in row:
            cell = _as_cell(spec)
            elem = ET.SubElement(tr, tag)
            if cell.rs > 1:
                elem.set("rowspan", str(cell.rs))
            if cell.cs > 1:
                elem.set("colspan", str(cell.cs))
            elem.text = cell.text


@dataclass
class ArticleTable:
    label: str
    caption: str
    head: Sequence[Row] = ()
    body: Sequence[Row] = ()
    footer: str = ""


def article_xml(title: str, tables: Sequence[ArticleTable], paragraphs: Sequence[str] = ()) -> str:
    article = ET.Element("article")
    front = ET.SubElement(article, "front")
    meta = ET.SubElement(front, "article-meta")
    group = ET.SubElement(meta, "title-group")
    ET.SubElement(group, "article-title").text = title
    body = ET.SubElement(article, "body")
    for text in paragraphs:
        ET.SubElement(body, "p").text = text
    for i, table in enumerate(tables, 1):
        wrap = ET.SubElement(body, "table-wrap", id=f"T{i}")
        ET.SubElement(wrap, "label").text = table.label
        caption = ET.SubElement(wrap, "caption")
        ET.SubElement(caption, "p").text = table.caption
        telem = ET.SubElement(wrap, "table")
        if table.head:
            _rows_into(ET.SubElement(telem, "thead"), table.head, "th")
        _rows_into(ET.SubElement(telem, "tbody"), table.body, "td")
        if table.footer:
            foot = ET.SubElement(wrap, "table-wrap-foot")
            ET.SubElement(foot, "p").text = table.footer
    ET.indent(article)
    return ET.tostring(article, encoding="unicode", xml_declaration=True) + "\n"


# ---------------------------------------------------------------------------
# drug-label XML


@dataclass
class LabelTable:
    head: Sequence[Row] = ()
    body: Sequence[Row] = ()
    caption: Optional[str] = None


@dataclass
class LabelSection:
    code: str
    title: str
    tables: Sequence[LabelTable] = ()
    paragraphs: Sequence[str] = ()


def _spl(tag: str) -> str:
    return f"{{{SPL_NS}}}{tag}"


def label_xml(drug_name: str, sections: Sequence[LabelSection]) -> str:
    doc = ET.Element(_spl("document"))
    ET.SubElement(doc, _spl("title")).text = f"{drug_name} tablets, for oral use"
    outer = ET.SubElement(ET.SubElement(doc, _spl("component")), _spl("structuredBody"))

    product_section = ET.SubElement(ET.SubElement(outer, _spl("component")), _spl("section"))
    subject = ET.SubElement(product_section, _spl("subject"))
    wrapper = ET.SubElement(subject, _spl("manufacturedProduct"))
    product = ET.SubElement(wrapper, _spl("manufacturedProduct"))
    ET.SubElement(product, _spl("name")).text = drug_name

    for section_def in sections:
        section = ET.SubElement(ET.SubElement(outer, _spl("component")), _spl("section"))
        ET.SubElement(
            section,
            _spl("code"),
            code=section_def.code,
            codeSystem="2.16.840.1.113883.6.1",
        )
        ET.SubElement(section, _spl("title")).text = section_def.title
        text = ET.SubElement(section, _spl("text"))
        for paragraph in section_def.paragraphs:
            ET.SubElement(text, _spl("paragraph")).text = paragraph
        for table_def in section_def.tables:
            telem = ET.SubElement(text, _spl("table"))
            if table_def.caption is not None:
                ET.SubElement(telem, _spl("caption")).text = table_def.caption
            if table_def.head:
                _rows_into(ET.SubElement(telem, _spl("thead")), table_def.head, _spl("th"))
            _rows_into(ET.SubElement(telem, _spl("tbody")), table_def.body, _spl("td"))
    ET.indent(doc)
    return ET.tostring(doc, encoding="unicode", xml_declaration=True) + "\n"


# ---------------------------------------------------------------------------
# direct grid assembly (role-corpus tables skip the XML round trip)


def make_grid(
    rows: Sequence[Row],
    *,
    table_id: str,
    doc_id: str,
    head_rows: int = 0,
    caption: str = "",
    footer: str = "",
) -> TableGrid:
    raw: list[RawCell] = []
    occupied: set[tuple[int, int]] = set()
    for r, row in enumerate(rows):
        c = 0
        for spec in row:
            cell = _as_cell(spec)
            while (r, c) in occupied:
                c += 1
            for rr in range(r, r + cell.rs):
                for cc in range(c, c + cell.cs):
                    occupied.add((rr, cc))
            emphasis = frozenset({EMPHASIS_HEAD_BLOCK}) if r < head_rows else frozenset()
            raw.append(
                RawCell(
                    row=r, col=c, content=cell.text,
                    span_rows=cell.rs, span_cols=cell.cs, emphasis=emphasis,
                )
            )
            c += cell.cs
    return expand_spans(
        raw, table_id=table_id, doc_id=doc_id, caption=caption, footer=footer
    )


# ---------------------------------------------------------------------------
# link oracle over hand-annotated role matrices


def oracle_links(grid: TableGrid, roles: Sequence[Sequence[str]]) -> dict:
    """Gold links for every data cell, derived from a gold role matrix.

    Follows the written definition of navigational links directly:
    headers are the content-bearing header cells above in the same
    column (origins, deduplicated, top-down); the stub is the leftmost
    stub cell to the left in the same row; the governing super-row is
    the nearest one above, unless a header row intervenes.
    """
    gold: dict[str, dict] = {}
    for r in range(grid.rows):
        for c in range(grid.cols):
            cell = grid.cell(r, c)
            if roles[r][c] != "data" or not cell.is_spanning_origin:
                continue
            headers: list[list[int]] = []
            for hr in range(r):
                above = grid.cell(hr, c)
                if roles[hr][c] == "header" and above.content:
                    origin = list(above.origin)
                    if origin not in headers:
                        headers.append(origin)
            stub: Optional[list[int]] = None
            for sc in range(c):
                left = grid.cell(r, sc)
                if roles[r][sc] == "stub" and left.content:
                    stub = list(left.origin)
                    break
            supers: list[list[int]] = []
            for rr in range(r - 1, -1, -1):
                if any(roles[rr][cc] == "header" for cc in range(grid.cols)):
                    break
                hits = [cc for cc in range(grid.cols) if roles[rr][cc] == "super_row"]
                if hits:
                    supers.append(list(grid.cell(rr, hits[0]).origin))
                    break
            gold[f"{r},{c}"] = {"headers": headers, "stub": stub, "super_rows": supers}
    return gold


# ---------------------------------------------------------------------------
# gold records


def rec(
    variable: str,
    subcategory: str,
    component: str,
    context: str,
    value: str,
    unit: str,
    doc_id: str,
    table_id: str,
    row: Optional[int],
    col: Optional[int],
    rule: str,
) -> ExtractionRecord:
    return ExtractionRecord(
        variable_name=variable,
        variable_subcategory=subcategory,
        value_component=component,
        context=context,
        value=value,
        unit=unit,
        provenance=Provenance(doc_id=doc_id, table_id=table_id, row=row, col=col, rule=rule),
    )


def write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
