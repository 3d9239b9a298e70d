"""Structural analysis: link each data cell to its navigational cells.

A data cell is interpreted through the header cells above it in its
column, the stub cell of its row, and the governing super-row; the
ordered concatenation of those cells is the cell's navigational path,
which later stages use as extraction context.
"""

from __future__ import annotations

from typing import Iterable, Optional

from .model import CellRole, NavigationalLinks, TableGrid


def _roles_required(grid: TableGrid) -> None:
    if any(cell.role is None for cell in grid.iter_cells()):
        raise ValueError(f"table {grid.table_id}: roles not assigned")


def _column_headers(grid: TableGrid, r: int, c: int) -> tuple[tuple[int, int], ...]:
    headers: list[tuple[int, int]] = []
    for hr in range(r):
        cell = grid.cell(hr, c)
        if cell.role is CellRole.HEADER and cell.content:
            origin = cell.origin
            if origin not in headers:
                headers.append(origin)
    return tuple(headers)


def _row_stub(grid: TableGrid, r: int, c: int) -> Optional[tuple[int, int]]:
    for cell in grid.cells[r]:
        if cell.col >= c:
            break
        if cell.role is CellRole.STUB and cell.content:
            return cell.origin
    return None


def _super_rows(grid: TableGrid, r: int) -> tuple[tuple[int, int], ...]:
    """Governing super-rows above row r, outermost first.

    Nesting is flat (indentation does not survive whitespace
    normalization), so the chain stops at the nearest super-row; header
    rows also terminate the scan.
    """
    for rr in range(r - 1, -1, -1):
        row = grid.cells[rr]
        if any(cell.role is CellRole.HEADER for cell in row):
            return ()
        super_cells = [cell for cell in row if cell.role is CellRole.SUPER_ROW]
        if super_cells:
            return (super_cells[0].origin,)
    return ()


def cell_links(grid: TableGrid, row: int, col: int) -> NavigationalLinks:
    """Navigational links for one cell (usable on any role)."""
    return NavigationalLinks(
        cell=(row, col),
        headers=_column_headers(grid, row, col),
        stub=_row_stub(grid, row, col),
        super_rows=_super_rows(grid, row),
    )


def link_cells(grid: TableGrid) -> list[NavigationalLinks]:
    """Links for every data cell, in (row, col) order."""
    _roles_required(grid)
    return [
        cell_links(grid, cell.row, cell.col)
        for cell in grid.iter_cells()
        if cell.role is CellRole.DATA and cell.is_spanning_origin
    ]


def links_by_cell(links: Iterable[NavigationalLinks]) -> dict[tuple[int, int], NavigationalLinks]:
    return {link.cell: link for link in links}


def navigational_path(
    grid: TableGrid, link: NavigationalLinks
) -> list[tuple[CellRole, str]]:
    """(role, text) pairs: headers outermost first, super-rows, then stub."""
    path: list[tuple[CellRole, str]] = []
    for coords in link.headers:
        path.append((CellRole.HEADER, grid.cell(*coords).content))
    for coords in link.super_rows:
        path.append((CellRole.SUPER_ROW, grid.cell(*coords).content))
    if link.stub is not None:
        path.append((CellRole.STUB, grid.cell(*link.stub).content))
    return path


def link_edges(links: Iterable[NavigationalLinks]) -> set[tuple]:
    """Flatten links to (cell, kind, target) edges for scoring."""
    edges: set[tuple] = set()
    for link in links:
        for target in link.headers:
            edges.add((link.cell, "header", target))
        if link.stub is not None:
            edges.add((link.cell, "stub", link.stub))
        for target in link.super_rows:
            edges.add((link.cell, "super_row", target))
    return edges
