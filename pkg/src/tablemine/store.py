"""File-backed corpus store with one sub-store per pipeline stage.

Layout under the store root:

    documents.json          doc_id -> dialect, metadata, table ids
    grids/<table_id>.json   stage 1: grids as parsed
    analysis/<table_id>.json stage 2/3: roles matrix + links
    annotations/<table_id>.json stage 4: annotations
    classes.json            stage 5: table_id -> pragmatic class
    records.json / .tsv     extraction output (via record helpers)

Each stage owns its files and can rerun idempotently without touching
the others. All JSON is written in the canonical byte-stable form.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .model import (
    Annotation,
    CellRole,
    DocumentRecord,
    ExtractionRecord,
    NavigationalLinks,
    Provenance,
    TableGrid,
    dumps,
    table_from_json,
    table_to_json,
)

RECORD_COLUMNS = (
    "variable_name",
    "variable_subcategory",
    "value_component",
    "context",
    "value",
    "unit",
    "doc_id",
    "table_id",
    "row",
    "col",
    "rule",
)


class StoreIo(OSError):
    """Raised when store files are missing or unreadable."""


def record_to_json(record: ExtractionRecord) -> dict:
    prov = record.provenance
    return {
        "variable_name": record.variable_name,
        "variable_subcategory": record.variable_subcategory,
        "value_component": record.value_component,
        "context": record.context,
        "value": record.value,
        "unit": record.unit,
        "doc_id": prov.doc_id,
        "table_id": prov.table_id,
        "row": prov.row,
        "col": prov.col,
        "rule": prov.rule,
    }


def record_from_json(data: dict) -> ExtractionRecord:
    return ExtractionRecord(
        variable_name=data["variable_name"],
        variable_subcategory=data.get("variable_subcategory", ""),
        value_component=data["value_component"],
        context=data.get("context", ""),
        value=data["value"],
        unit=data.get("unit", ""),
        provenance=Provenance(
            doc_id=data.get("doc_id", ""),
            table_id=data.get("table_id", ""),
            row=data.get("row"),
            col=data.get("col"),
            rule=data.get("rule", ""),
        ),
    )


def records_to_tsv(records: Iterable[ExtractionRecord]) -> str:
    lines = ["\t".join(RECORD_COLUMNS)]
    for record in records:
        data = record_to_json(record)
        lines.append(
            "\t".join("" if data[c] is None else str(data[c]) for c in RECORD_COLUMNS)
        )
    return "\n".join(lines) + "\n"


def records_from_tsv(text: str) -> list[dict]:
    """Rows as dicts; header line names the columns."""
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        return []
    header = lines[0].split("\t")
    rows = []
    for line in lines[1:]:
        values = line.split("\t")
        row = {name: (values[i] if i < len(values) else "") for i, name in enumerate(header)}
        rows.append(row)
    return rows


def annotation_to_json(annotation: Annotation) -> dict:
    return {
        "cell": list(annotation.cell),
        "start": annotation.start,
        "end": annotation.end,
        "concept_id": annotation.concept_id,
        "semantic_type": annotation.semantic_type,
        "source": annotation.source,
    }


def annotation_from_json(data: dict) -> Annotation:
    return Annotation(
        cell=tuple(data["cell"]),
        start=data["start"],
        end=data["end"],
        concept_id=data["concept_id"],
        semantic_type=data["semantic_type"],
        source=data.get("source", ""),
    )


def link_to_json(link: NavigationalLinks) -> dict:
    return {
        "cell": list(link.cell),
        "headers": [list(c) for c in link.headers],
        "stub": list(link.stub) if link.stub is not None else None,
        "super_rows": [list(c) for c in link.super_rows],
    }


def link_from_json(data: dict) -> NavigationalLinks:
    return NavigationalLinks(
        cell=tuple(data["cell"]),
        headers=tuple(tuple(c) for c in data["headers"]),
        stub=tuple(data["stub"]) if data.get("stub") is not None else None,
        super_rows=tuple(tuple(c) for c in data["super_rows"]),
    )


class Store:
    def __init__(self, root: str | Path):
        self.root = Path(root)

    # -- layout ------------------------------------------------------------

    def _ensure(self, sub: str) -> Path:
        path = self.root / sub
        path.mkdir(parents=True, exist_ok=True)
        return path

    def _read_json(self, path: Path):
        try:
            return json.loads(path.read_text(encoding="utf-8"))
        except FileNotFoundError as exc:
            raise StoreIo(f"missing store file: {path}") from exc
        except (OSError, json.JSONDecodeError) as exc:
            raise StoreIo(f"unreadable store file {path}: {exc}") from exc

    def _write_json(self, path: Path, payload) -> None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(dumps(payload), encoding="utf-8")

    # -- documents and grids -------------------------------------------------

    def put_document(self, document: DocumentRecord) -> None:
        documents = self.documents()
        documents[document.doc_id] = {
            "dialect": document.dialect,
            "metadata": dict(sorted(document.metadata.items())),
            "tables": [record.table_id for record in document.tables],
        }
        self._write_json(self.root / "documents.json", dict(sorted(documents.items())))
        grids = self._ensure("grids")
        for record in document.tables:
            self._write_json(grids / f"{record.table_id}.json", table_to_json(record))

    def documents(self) -> dict:
        path = self.root / "documents.json"
        if not path.exists():
            return {}
        return self._read_json(path)

    def document_metadata(self, doc_id: str) -> dict[str, str]:
        return self.documents().get(doc_id, {}).get("metadata", {})

    def table_ids(self) -> list[str]:
        out: list[str] = []
        for doc_id in sorted(self.documents()):
            out.extend(self.documents()[doc_id]["tables"])
        return out

    def load_grid(self, table_id: str) -> TableGrid:
        payload = self._read_json(self.root / "grids" / f"{table_id}.json")
        return table_from_json(payload).grid

    # -- analysis (roles + links) -------------------------------------------

    def save_analysis(
        self, grid: TableGrid, links: Sequence[NavigationalLinks]
    ) -> None:
        payload = {
            "roles": [
                [cell.role.value if cell.role else None for cell in row]
                for row in grid.cells
            ],
            "links": [link_to_json(link) for link in links],
        }
        self._write_json(self._ensure("analysis") / f"{grid.table_id}.json", payload)

    def load_analysis(self, table_id: str) -> tuple[TableGrid, list[NavigationalLinks]]:
        grid = self.load_grid(table_id)
        data = self._read_json(self.root / "analysis" / f"{table_id}.json")
        roles = [
            [CellRole(value) if value else None for value in row]
            for row in data["roles"]
        ]
        links = [link_from_json(entry) for entry in data["links"]]
        return grid.with_roles(roles), links

    def has_analysis(self, table_id: str) -> bool:
        return (self.root / "analysis" / f"{table_id}.json").exists()

    # -- annotations ----------------------------------------------------------

    def save_annotations(self, table_id: str, annotations: Sequence[Annotation]) -> None:
        payload = [annotation_to_json(a) for a in annotations]
        self._write_json(self._ensure("annotations") / f"{table_id}.json", payload)

    def load_annotations(self, table_id: str) -> list[Annotation]:
        path = self.root / "annotations" / f"{table_id}.json"
        if not path.exists():
            return []
        return [annotation_from_json(entry) for entry in self._read_json(path)]

    # -- pragmatic classes ------------------------------------------------------

    def save_classes(self, classes: dict[str, dict]) -> None:
        self._write_json(self.root / "classes.json", dict(sorted(classes.items())))

    def load_classes(self) -> dict[str, dict]:
        path = self.root / "classes.json"
        if not path.exists():
            return {}
        return self._read_json(path)

    def table_class(self, table_id: str) -> Optional[str]:
        entry = self.load_classes().get(table_id)
        return entry.get("label") if entry else None


class RecordStore:
    """Queryable list of extraction records behind one JSON file."""

    def __init__(self, path: str | Path):
        self.path = Path(path)

    def write(self, records: Sequence[ExtractionRecord]) -> None:
        payload = [record_to_json(r) for r in records]
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self.path.write_text(dumps(payload), encoding="utf-8")

    def read(self) -> list[ExtractionRecord]:
        try:
            payload = json.loads(self.path.read_text(encoding="utf-8"))
        except FileNotFoundError as exc:
            raise StoreIo(f"missing record file: {self.path}") from exc
        except (OSError, json.JSONDecodeError) as exc:
            raise StoreIo(f"unreadable record file {self.path}: {exc}") from exc
        return [record_from_json(entry) for entry in payload]

    def query(
        self,
        *,
        doc_id: Optional[str] = None,
        table_id: Optional[str] = None,
        variable: Optional[str] = None,
    ) -> list[ExtractionRecord]:
        out = []
        for record in self.read():
            prov = record.provenance
            if doc_id is not None and prov.doc_id != doc_id:
                continue
            if table_id is not None and prov.table_id != table_id:
                continue
            if variable is not None and record.variable_name != variable:
                continue
            out.append(record)
        return out
