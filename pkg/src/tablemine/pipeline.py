"""Stage orchestration over a store: ingest, analyze, annotate, classify,
extract. Each stage reads the previous stage's sub-store and overwrites
only its own outputs, so stages rerun independently. Per-table problems
become diagnostics; a bad table never aborts the corpus run.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence

from . import ingest, pragmatic, semantic, structural
from .functional import HeaderModel, assign_roles
from .model import ExtractionRecord
from .pragmatic import PragmaticModel
from .rules.engine import (
    Diagnostic,
    ExtractionResult,
    NoInteractionColumn,
    extract_ddi,
    extract_variable,
)
from .rules.syntactic import SyntacticRule
from .rules.varspec import SELECTION_INTERACTION_COLUMN, VariableSpec
from .semantic import Gazetteer
from .store import Store

log = logging.getLogger(__name__)


def ingest_paths(
    store: Store, paths: Iterable[str | Path], dialect: Optional[str] = None
) -> int:
    """Parse documents into the store; returns the table count."""
    count = 0
    for document in ingest.read_paths(paths, dialect):
        store.put_document(document)
        count += len(document.tables)
    return count


def analyze_store(store: Store, header_model: Optional[HeaderModel] = None) -> int:
    for table_id in store.table_ids():
        grid = store.load_grid(table_id)
        grid = assign_roles(grid, header_model)
        links = structural.link_cells(grid)
        store.save_analysis(grid, links)
    return len(store.table_ids())


def annotate_store(store: Store, gazetteers: Sequence[Gazetteer]) -> int:
    total = 0
    for table_id in store.table_ids():
        grid = store.load_grid(table_id)
        annotations = semantic.annotate_grid(grid, gazetteers)
        store.save_annotations(table_id, annotations)
        total += len(annotations)
    return total


def classify_store(
    store: Store,
    model: Optional[PragmaticModel] = None,
    section_rules: Optional[Mapping[str, str]] = None,
) -> dict[str, dict]:
    classes: dict[str, dict] = {}
    for table_id in store.table_ids():
        grid, _links = store.load_analysis(table_id)
        label = None
        if section_rules:
            label = pragmatic.classify_by_section(grid, section_rules)
            if label is not None:
                classes[table_id] = {"label": label, "score": 1.0, "source": "section-rule"}
                continue
        if model is not None:
            features = pragmatic.extract_features(grid)
            label, score = pragmatic.classify_pragmatic(features, model)
            classes[table_id] = {"label": label, "score": score, "source": "model"}
    store.save_classes(classes)
    return classes


def extract_tables(
    store: Store,
    specs: Sequence[VariableSpec],
    rules: Mapping[str, SyntacticRule],
    table_ids: Optional[Sequence[str]] = None,
) -> ExtractionResult:
    """Run all specs over analyzed tables in stable corpus order."""
    combined = ExtractionResult()
    classes = store.load_classes()
    documents = store.documents()
    selected = set(table_ids) if table_ids is not None else None
    for doc_id in sorted(documents):
        entry = documents[doc_id]
        drug_name = entry.get("metadata", {}).get("drug_name", "")
        for table_id in entry["tables"]:
            if selected is not None and table_id not in selected:
                continue
            if not store.has_analysis(table_id):
                combined.diagnostics.append(
                    Diagnostic(table_id, None, "not_analyzed", "run analyze first")
                )
                continue
            grid, links = store.load_analysis(table_id)
            annotations = store.load_annotations(table_id)
            table_class = classes.get(table_id, {}).get("label")
            for spec in specs:
                if spec.selection == SELECTION_INTERACTION_COLUMN:
                    if (
                        table_class is not None
                        and spec.pragmatic_types
                        and table_class not in spec.pragmatic_types
                    ):
                        continue
                    try:
                        result = extract_ddi(grid, links, annotations, spec, drug_name)
                    except NoInteractionColumn as exc:
                        combined.diagnostics.append(
                            Diagnostic(table_id, None, "no_interaction_column", str(exc))
                        )
                        continue
                else:
                    result = extract_variable(
                        grid, links, annotations, spec, rules, table_class
                    )
                combined.records.extend(result.records)
                combined.diagnostics.extend(result.diagnostics)
    return combined


def sort_records(records: Sequence[ExtractionRecord]) -> list[ExtractionRecord]:
    """Stable (doc, table, row, col) corpus order."""
    return sorted(
        records,
        key=lambda r: (
            r.provenance.doc_id,
            r.provenance.table_id,
            -1 if r.provenance.row is None else r.provenance.row,
            -1 if r.provenance.col is None else r.provenance.col,
        ),
    )
