"""HTTP API over a store: read tables, preview rule edits, score records.

The API is read-only over the corpus. Preview endpoints parse the spec
and rule text from the request body and run the same engine code as the
CLI, so identical inputs give identical outputs; nothing is persisted.
Syntax errors in submitted spec or rule text come back as 400 with the
offending line (and column when known).
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from . import evaluation
from .pipeline import extract_tables
from .rules.cues import CueError
from .rules.engine import select_cells_report
from .rules.syntactic import RuleSyntaxError, parse_rule_file
from .rules.varspec import VarSpecError, parse_varspec
from .model import TableRecord, table_to_json
from .store import (
    Store,
    StoreIo,
    annotation_to_json,
    link_to_json,
    record_to_json,
    records_from_tsv,
)


class SelectRequest(BaseModel):
    spec: str
    table_id: Optional[str] = None


class ExtractRequest(BaseModel):
    spec: str
    rules: str = ""
    table_id: Optional[str] = None


class EvalRequest(BaseModel):
    records: list[dict]
    gold_id: str
    keys: Optional[list[str]] = None


def _bad_request(exc: Exception) -> HTTPException:
    detail = {"error": str(exc)}
    line = getattr(exc, "line", None)
    column = getattr(exc, "column", None)
    if line is not None:
        detail["line"] = line
    if column is not None:
        detail["column"] = column
    return HTTPException(status_code=400, detail=detail)


def create_app(store_root: str | Path) -> FastAPI:
    store = Store(store_root)
    app = FastAPI(title="tablemine", version="0.1.0")

    def _table_ids_or_404(table_id: Optional[str]) -> list[str]:
        ids = store.table_ids()
        if table_id is None:
            return ids
        if table_id not in ids:
            raise HTTPException(status_code=404, detail={"error": f"unknown table {table_id!r}"})
        return [table_id]

    def _parse_spec(text: str):
        try:
            return parse_varspec(text)
        except (VarSpecError, CueError) as exc:
            raise _bad_request(exc) from exc

    def _parse_rules(text: str):
        try:
            return parse_rule_file(text)
        except RuleSyntaxError as exc:
            raise _bad_request(exc) from exc

    @app.get("/tables")
    def list_tables(pragmatic_class: Optional[str] = None):
        classes = store.load_classes()
        out = []
        for table_id in store.table_ids():
            grid = store.load_grid(table_id)
            label = classes.get(table_id, {}).get("label")
            if pragmatic_class is not None and label != pragmatic_class:
                continue
            out.append(
                {
                    "table_id": table_id,
                    "doc_id": grid.doc_id,
                    "caption": grid.caption,
                    "rows": grid.rows,
                    "cols": grid.cols,
                    "pragmatic_class": label,
                }
            )
        return {"tables": out}

    @app.get("/tables/{table_id}")
    def get_table(table_id: str):
        if table_id not in store.table_ids():
            raise HTTPException(status_code=404, detail={"error": f"unknown table {table_id!r}"})
        if store.has_analysis(table_id):
            grid, links = store.load_analysis(table_id)
        else:
            grid, links = store.load_grid(table_id), []
        annotations = store.load_annotations(table_id)
        return {
            "grid": table_to_json(TableRecord(grid=grid)),
            "links": [link_to_json(link) for link in links],
            "annotations": [annotation_to_json(a) for a in annotations],
            "pragmatic_class": store.load_classes().get(table_id, {}).get("label"),
        }

    @app.post("/preview/select")
    def preview_select(request: SelectRequest):
        spec = _parse_spec(request.spec)
        selections: dict[str, list[dict]] = {}
        for table_id in _table_ids_or_404(request.table_id):
            if not store.has_analysis(table_id):
                continue
            grid, links = store.load_analysis(table_id)
            annotations = store.load_annotations(table_id)
            report = select_cells_report(grid, links, annotations, spec)
            selections[table_id] = [
                {
                    "cell": list(selection.cell),
                    "matched": list(selection.matched),
                    "blocked": list(selection.blocked),
                    "selected": selection.selected,
                }
                for selection in report
            ]
        return {"selections": selections}

    @app.post("/preview/extract")
    def preview_extract(request: ExtractRequest):
        spec = _parse_spec(request.spec)
        rules = _parse_rules(request.rules)
        table_ids = _table_ids_or_404(request.table_id)
        result = extract_tables(store, [spec], rules, table_ids=table_ids)
        return {
            "records": [record_to_json(r) for r in result.records],
            "diagnostics": [
                {
                    "table_id": d.table_id,
                    "cell": list(d.cell) if d.cell is not None else None,
                    "kind": d.kind,
                    "message": d.message,
                }
                for d in result.diagnostics
            ],
        }

    @app.post("/eval")
    def eval_records(request: EvalRequest):
        gold_path = store.root / "gold" / f"{request.gold_id}.tsv"
        if not gold_path.exists():
            raise HTTPException(
                status_code=404, detail={"error": f"unknown gold set {request.gold_id!r}"}
            )
        gold = records_from_tsv(gold_path.read_text(encoding="utf-8"))
        keys = tuple(request.keys) if request.keys else evaluation.DEFAULT_MATCH_KEYS
        try:
            result = evaluation.evaluate(request.records, gold, keys)
        except ValueError as exc:
            raise _bad_request(exc) from exc
        return result.to_json()

    @app.exception_handler(StoreIo)
    def _store_error(_request, exc: StoreIo):
        from fastapi.responses import JSONResponse

        return JSONResponse(status_code=500, content={"error": str(exc)})

    return app
