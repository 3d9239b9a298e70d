"""Functional analysis: assign a role to every cell of a grid.

The default path is heuristic, driven by head-block markup, cell position,
and content shape. For corpora whose tables carry no head-block markup, a
content classifier over cell text can propose header cells; its per-cell
votes are post-processed with a row-majority rule and a top-three-rows
constraint before the positional heuristics run.
"""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence

from . import naive_bayes
from .model import EMPHASIS_HEAD_BLOCK, CellRole, TableGrid
from .stemmer import stem

log = logging.getLogger(__name__)

CLASS_HEADER = "header"
CLASS_NON_HEADER = "non_header"

# rows this far down never become headers under the hybrid path
MAX_HEADER_ROWS = 3


class SingleClassTraining(ValueError):
    """Training data for the header model contains only one class."""


# ---------------------------------------------------------------------------
# content shape

_NUMERIC_CHARS = set("0123456789±.%–—-")

_TOKEN = re.compile(r"[a-z0-9]+")


def is_numeric_text(text: str) -> bool:
    """True when at least half the non-space characters are numeric-ish."""
    chars = [ch for ch in text if not ch.isspace()]
    if not chars:
        return False
    hits = sum(ch in _NUMERIC_CHARS for ch in chars)
    return hits * 2 >= len(chars)


def tokenize(text: str, *, stemmed: bool = False) -> list[str]:
    tokens = _TOKEN.findall(text.lower())
    if stemmed:
        tokens = [stem(t) for t in tokens]
    return tokens


# ---------------------------------------------------------------------------
# heuristic role assignment


def _head_block_rows(grid: TableGrid) -> list[int]:
    return [
        r
        for r in range(grid.rows)
        if any(
            EMPHASIS_HEAD_BLOCK in cell.emphasis and cell.content
            for cell in grid.cells[r]
        )
    ]


def _is_key_value_row(grid: TableGrid, r: int) -> bool:
    """A head row of the form `label | number`: not a real column header."""
    beyond_stub = [cell for cell in grid.cells[r][1:] if cell.content]
    if not beyond_stub:
        return False
    numeric = sum(is_numeric_text(cell.content) for cell in beyond_stub)
    return numeric * 2 > len(beyond_stub)


def _content_header_rows(grid: TableGrid) -> set[int]:
    """Top rows that read as text while the columns below read as numbers."""
    rows: set[int] = set()
    for r in range(min(grid.rows - 1, MAX_HEADER_ROWS)):
        non_empty = [cell for cell in grid.cells[r] if cell.content]
        if not non_empty:
            break
        textual = sum(not is_numeric_text(cell.content) for cell in non_empty)
        if textual * 2 <= len(non_empty):
            break
        columns = [cell.col for cell in non_empty if cell.col >= 1]
        below = [
            grid.cell(rr, c).content
            for c in columns
            for rr in range(r + 1, grid.rows)
            if grid.cell(rr, c).content
        ]
        if not below:
            break
        numeric_below = sum(is_numeric_text(text) for text in below)
        if numeric_below * 2 <= len(below):
            break
        rows.add(r)
    return rows


def header_rows_for(grid: TableGrid) -> set[int]:
    """Header rows by markup when present, by content shape otherwise."""
    marked = _head_block_rows(grid)
    if marked:
        if len(marked) == 1 and _is_key_value_row(grid, marked[0]):
            return set()
        return set(marked)
    return _content_header_rows(grid)


def _is_super_row(grid: TableGrid, r: int, header_rows: set[int]) -> bool:
    if grid.cols < 2 or r in header_rows:
        return False
    non_empty = [cell for cell in grid.cells[r] if cell.content]
    if not non_empty:
        return False
    origins = {cell.origin for cell in non_empty}
    if len(origins) != 1:
        return False
    origin = next(iter(origins))
    if origin[1] != 0:
        return False
    return not is_numeric_text(grid.cell(*origin).content)


def roles_for(grid: TableGrid, header_rows: set[int]) -> list[list[CellRole]]:
    roles: list[list[CellRole]] = []
    for r in range(grid.rows):
        is_super = _is_super_row(grid, r, header_rows)
        row_roles: list[CellRole] = []
        for cell in grid.cells[r]:
            if not cell.content:
                role = CellRole.EMPTY
            elif r in header_rows:
                role = CellRole.HEADER
            elif is_super:
                role = CellRole.SUPER_ROW
            elif cell.origin[1] == 0 and grid.cols >= 2:
                role = CellRole.STUB
            else:
                role = CellRole.DATA
            row_roles.append(role)
        roles.append(row_roles)
    return roles


def assign_roles(grid: TableGrid, model: Optional["HeaderModel"] = None) -> TableGrid:
    """Give every cell a role; total and deterministic.

    When a model is supplied and the grid carries no head-block markup,
    header rows come from the classifier (majority vote per row, top
    three rows only); positional heuristics fill in the rest.
    """
    if model is not None and not _head_block_rows(grid):
        votes = predict_header_cells(grid, model)
        header_rows = majority_header_rows(grid, votes)
    else:
        header_rows = header_rows_for(grid)
    return grid.with_roles(roles_for(grid, header_rows))


# ---------------------------------------------------------------------------
# learned header path


@dataclass(frozen=True)
class HeaderModel:
    """Content classifier for header cells plus its tokenizer settings."""

    model: naive_bayes.NaiveBayesModel
    lowercase: bool = True
    stemmed: bool = False

    def tokens(self, text: str) -> list[str]:
        if self.lowercase:
            text = text.lower()
        return tokenize(text, stemmed=self.stemmed)

    def predict_is_header(self, text: str) -> bool:
        return self.model.predict(self.tokens(text)) == CLASS_HEADER

    def header_probability(self, text: str) -> float:
        return self.model.predict_proba(self.tokens(text)).get(CLASS_HEADER, 0.0)

    def save(self, path: str | Path) -> None:
        data = {
            "tokenizer": {"lowercase": self.lowercase, "stemmed": self.stemmed},
            "model": self.model.to_json(),
        }
        text = json.dumps(data, ensure_ascii=False, sort_keys=True, indent=1) + "\n"
        Path(path).write_text(text, encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "HeaderModel":
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        tok = data.get("tokenizer", {})
        return cls(
            model=naive_bayes.NaiveBayesModel.from_json(data["model"]),
            lowercase=bool(tok.get("lowercase", True)),
            stemmed=bool(tok.get("stemmed", False)),
        )


def train_header_model(
    labelled: Iterable[tuple[str, bool]], *, stemmed: bool = False
) -> HeaderModel:
    examples = []
    for text, is_header in labelled:
        label = CLASS_HEADER if is_header else CLASS_NON_HEADER
        examples.append((tokenize(text, stemmed=stemmed), label))
    classes = {label for _, label in examples}
    if len(classes) < 2:
        raise SingleClassTraining(
            f"need both classes, got {sorted(classes) or 'no examples'}"
        )
    return HeaderModel(model=naive_bayes.train(examples), stemmed=stemmed)


def predict_header_cells(grid: TableGrid, model: HeaderModel) -> dict[tuple[int, int], bool]:
    """Per-cell header votes for every non-empty origin cell."""
    votes: dict[tuple[int, int], bool] = {}
    for cell in grid.iter_cells():
        if cell.is_spanning_origin and cell.content:
            votes[(cell.row, cell.col)] = model.predict_is_header(cell.content)
    return votes


def majority_header_rows(
    grid: TableGrid, votes: Mapping[tuple[int, int], bool]
) -> set[int]:
    """Rows where more than half the non-empty cells voted header.

    Rows at index MAX_HEADER_ROWS or deeper never qualify; a majority vote
    there is logged since it may indicate a repeated mid-table header.
    """
    rows: set[int] = set()
    for r in range(grid.rows):
        non_empty = [
            cell for cell in grid.cells[r] if cell.content and cell.is_spanning_origin
        ]
        if not non_empty:
            continue
        positive = sum(bool(votes.get((cell.row, cell.col))) for cell in non_empty)
        if positive * 2 > len(non_empty):
            if r >= MAX_HEADER_ROWS:
                log.warning(
                    "table %s: row %d looks like a header but is below the "
                    "top-%d limit; left unmarked",
                    grid.table_id,
                    r,
                    MAX_HEADER_ROWS,
                )
                continue
            rows.add(r)
    return rows


def postprocess_header_rows(
    grid: TableGrid, votes: Mapping[tuple[int, int], bool]
) -> TableGrid:
    """Turn per-cell header votes into roles (all-or-nothing per row)."""
    header_rows = majority_header_rows(grid, votes)
    return grid.with_roles(roles_for(grid, header_rows))


def header_cv_report(
    labelled: Sequence[tuple[str, bool]], k: int = 10, seed: int = 0
) -> naive_bayes.CrossValidationReport:
    examples = [
        (tokenize(text), CLASS_HEADER if is_header else CLASS_NON_HEADER)
        for text, is_header in labelled
    ]
    return naive_bayes.cross_validate(examples, k=k, seed=seed)
