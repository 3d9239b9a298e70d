"""Shared construction and loading helpers for the test suite."""

from __future__ import annotations

from pathlib import Path

from tablemine.model import RawCell, TableGrid, expand_spans
from tablemine.store import records_from_tsv

FIXTURES = Path(__file__).parent / "fixtures"
PACKS = Path(__file__).parents[1] / "src" / "tablemine" / "packs"


def make_grid(
    rows: list[list],
    *,
    table_id: str = "t0",
    doc_id: str = "doc",
    caption: str = "",
    footer: str = "",
    referring_sentences: tuple[str, ...] = (),
    section_code: str | None = None,
    order_in_doc: int = 0,
) -> TableGrid:
    """Build a grid from per-row cell entries.

    An entry is a string, or a ``(content, span_rows, span_cols)`` tuple,
    or a dict with ``content`` plus optional ``span_rows``/``span_cols``/
    ``emphasis``.  Entries fill columns left to right, skipping positions
    claimed by spans from earlier rows.
    """
    raw: list[RawCell] = []
    taken: set[tuple[int, int]] = set()
    for r, entries in enumerate(rows):
        c = 0
        for entry in entries:
            while (r, c) in taken:
                c += 1
            if isinstance(entry, str):
                content, span_rows, span_cols, emphasis = entry, 1, 1, frozenset()
            elif isinstance(entry, tuple):
                content, span_rows, span_cols = entry
                emphasis = frozenset()
            else:
                content = entry["content"]
                span_rows = entry.get("span_rows", 1)
                span_cols = entry.get("span_cols", 1)
                emphasis = frozenset(entry.get("emphasis", ()))
            raw.append(
                RawCell(
                    row=r,
                    col=c,
                    content=content,
                    span_rows=span_rows,
                    span_cols=span_cols,
                    emphasis=emphasis,
                )
            )
            for rr in range(r, r + span_rows):
                for cc in range(c, c + span_cols):
                    taken.add((rr, cc))
            c += span_cols
    return expand_spans(
        raw,
        table_id=table_id,
        doc_id=doc_id,
        order_in_doc=order_in_doc,
        caption=caption,
        footer=footer,
        referring_sentences=referring_sentences,
        section_code=section_code,
    )


def load_gold(name: str) -> list[dict]:
    """Rows of a gold TSV under tests/fixtures, as dicts."""
    for sub in ("article_gold", "label_gold"):
        path = FIXTURES / sub / f"{name}.gold.tsv"
        if path.exists():
            return records_from_tsv(path.read_text(encoding="utf-8"))
    raise FileNotFoundError(name)


def load_labelled_cells() -> list[tuple[str, bool]]:
    lines = (FIXTURES / "headers" / "labelled_cells.tsv").read_text(encoding="utf-8")
    return [
        (line.rpartition("\t")[0], line.rpartition("\t")[2] == "header")
        for line in lines.splitlines()
        if line.strip()
    ]
